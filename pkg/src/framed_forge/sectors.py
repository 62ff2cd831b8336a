"""Sector labels (d, c) with d.c = 0 and their fusion combinatorics.

A slot carries weight d_i/16 + c_i/2, so per slot the label is one of
0, 1/2, 1/16.  Fusion acts slotwise; the ambiguity of a product lives on the
common support d^1 d^2 and is parameterized by its subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .bitcode import Word


def _submasks(mask: int) -> Iterator[int]:
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


@dataclass(frozen=True, order=True)
class Sector:
    d: Word
    c: Word

    def __post_init__(self) -> None:
        self.d._check_split(self.c)
        if self.d.bits & self.c.bits:
            raise ValueError("sector labels need d.c = 0")

    @classmethod
    def from_strings(cls, d: str, c: str) -> "Sector":
        return cls(Word.from_string(d), Word.from_string(c))

    @classmethod
    def vacuum(cls, l: int, r: int) -> "Sector":
        return cls(Word.zero(l, r), Word.zero(l, r))

    @property
    def l(self) -> int:
        return self.d.l

    @property
    def r(self) -> int:
        return self.d.r

    def is_vacuum(self) -> bool:
        return self.d.is_zero() and self.c.is_zero()

    def slot(self, i: int) -> Fraction:
        """Conformal weight carried by coordinate i."""
        if self.d.bits >> i & 1:
            return Fraction(1, 16)
        if self.c.bits >> i & 1:
            return Fraction(1, 2)
        return Fraction(0)

    def weight(self) -> tuple[Fraction, Fraction, Fraction]:
        """(left weight, right weight, spin)."""
        lwt = Fraction(self.d.weight_left(), 16) + Fraction(self.c.weight_left(), 2)
        rwt = Fraction(self.d.weight_right(), 16) + Fraction(self.c.weight_right(), 2)
        return lwt, rwt, lwt - rwt

    def s(self) -> Fraction:
        """Signed weight s = |d|/16 + |c|/2; equals the spin."""
        return Fraction(self.d.weight(), 16) + Fraction(self.c.weight(), 2)

    def sign_s(self) -> int:
        """(-1)^s, defined when the spin is an integer."""
        s = self.s()
        if s.denominator != 1:
            raise ValueError(f"sector {self} has non-integer spin {s}")
        return -1 if s.numerator & 1 else 1

    def key(self) -> tuple[int, int]:
        return (self.d.bits, self.c.bits)

    def __str__(self) -> str:
        return f"({self.d}; {self.c})"


def weight(lam: Sector) -> tuple[Fraction, Fraction, Fraction]:
    return lam.weight()


def fuse(lam1: Sector, lam2: Sector) -> tuple[Sector, ...]:
    """All sectors of a product of vectors in lam1 and lam2, in lex bit order."""
    lam1.d._check_split(lam2.d)
    d = lam1.d + lam2.d
    base = (d.perp() * (lam1.c + lam2.c)).bits
    common = (lam1.d * lam2.d).bits
    out = []
    for gamma in _submasks(common):
        out.append(Sector(d, Word(base ^ gamma, d.l, d.r)))
    return tuple(sorted(out, key=Sector.key))


def intermediates(
    lam0: Sector, lam1: Sector, lam2: Sector, lam3: Sector
) -> tuple[Sector, ...]:
    """A(lam0; lam1, lam2, lam3): sectors lam of lam2 * lam3 with
    lam0 appearing in lam1 * lam."""
    out = []
    for lam in fuse(lam2, lam3):
        if lam0 in fuse(lam1, lam):
            out.append(lam)
    return tuple(out)


def sector_to_json(lam: Sector) -> dict:
    return {"d": str(lam.d), "c": str(lam.c)}


def sector_from_json(obj: dict) -> Sector:
    return Sector(Word.from_string(obj["d"]), Word.from_string(obj["c"]))
