"""Exact arithmetic in Z[zeta, 1/2] for zeta = exp(i pi / 8).

Elements are stored as 8 integer numerators over one positive denominator in
the basis 1, zeta, ..., zeta^7 with zeta^8 = -1.  Every constant the package
needs (i, sqrt(2), exp(-i pi/8), (1 +/- i)/2) lives in this ring, so equality
checks of connection matrices and partition vectors are exact.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Sequence

_ROOTS = tuple(cmath.exp(1j * cmath.pi * j / 8) for j in range(8))


class Cyclo:
    __slots__ = ("_n", "_d")

    def __init__(self, numerators: Sequence[int], denominator: int = 1):
        if len(numerators) != 8:
            raise ValueError("need exactly 8 coordinates")
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        if denominator < 0:
            numerators = [-x for x in numerators]
            denominator = -denominator
        g = denominator
        for x in numerators:
            g = gcd(g, x)
            if g == 1:
                break
        object.__setattr__(self, "_n", tuple(int(x) // g for x in numerators))
        object.__setattr__(self, "_d", denominator // g)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Cyclo":
        return _ZERO

    @classmethod
    def one(cls) -> "Cyclo":
        return _ONE

    @classmethod
    def integer(cls, k: int) -> "Cyclo":
        return cls((k, 0, 0, 0, 0, 0, 0, 0))

    @classmethod
    def rational(cls, value: Fraction | int) -> "Cyclo":
        f = Fraction(value)
        return cls((f.numerator, 0, 0, 0, 0, 0, 0, 0), f.denominator)

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Fraction]) -> "Cyclo":
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in coeffs]
        return cls(nums, den)

    @classmethod
    def zeta_pow(cls, k: int) -> "Cyclo":
        """zeta^k for any integer k, folding zeta^8 = -1."""
        k %= 16
        sign = 1
        if k >= 8:
            sign, k = -1, k - 8
        nums = [0] * 8
        nums[k] = sign
        return cls(nums)

    @classmethod
    def i_pow(cls, k: int) -> "Cyclo":
        return cls.zeta_pow(4 * k)

    # -- containers --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._d) for x in self._n)

    def __hash__(self) -> int:
        return hash((self._n, self._d))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __bool__(self) -> bool:
        return any(self._n)

    def is_zero(self) -> bool:
        return not any(self._n)

    def __repr__(self) -> str:
        return f"Cyclo{self.to_text()}"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Cyclo") -> "Cyclo":
        if not isinstance(other, Cyclo):
            return NotImplemented
        da, db = self._d, other._d
        return Cyclo(
            [x * db + y * da for x, y in zip(self._n, other._n)], da * db
        )

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        if not isinstance(other, Cyclo):
            return NotImplemented
        da, db = self._d, other._d
        return Cyclo(
            [x * db - y * da for x, y in zip(self._n, other._n)], da * db
        )

    def __neg__(self) -> "Cyclo":
        return Cyclo([-x for x in self._n], self._d)

    def __mul__(self, other: "Cyclo | int | Fraction") -> "Cyclo":
        if isinstance(other, int):
            return Cyclo([x * other for x in self._n], self._d)
        if isinstance(other, Fraction):
            return Cyclo(
                [x * other.numerator for x in self._n], self._d * other.denominator
            )
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._n, other._n
        nz_a = [j for j in range(8) if a[j]]
        nz_b = [j for j in range(8) if b[j]]
        out = [0] * 8
        if len(nz_a) > len(nz_b):
            a, b, nz_a, nz_b = b, a, nz_b, nz_a
        for ja in nz_a:
            ca = a[ja]
            for jb in nz_b:
                k = ja + jb
                if k < 8:
                    out[k] += ca * b[jb]
                else:
                    out[k - 8] -= ca * b[jb]
        return Cyclo(out, self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Cyclo":
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Cyclo":
        out = [0] * 8
        out[0] = self._n[0]
        for j in range(1, 8):
            out[8 - j] = -self._n[j]
        return Cyclo(out, self._d)

    def inverse(self) -> "Cyclo":
        """Exact inverse via the 8x8 multiplication matrix over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        cols = [self * Cyclo.zeta_pow(j) for j in range(8)]
        mat = [[Fraction(c._n[i], c._d) for c in cols] for i in range(8)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(8)]
        n = 8
        for col in range(n):
            piv = next(r for r in range(col, n) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            rhs[col] *= inv
            for r in range(n):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                    rhs[r] -= f * rhs[col]
        return Cyclo.from_fractions(rhs)

    def __truediv__(self, other: "Cyclo") -> "Cyclo":
        return self * other.inverse()

    # -- evaluation and io -------------------------------------------------

    def to_complex(self) -> complex:
        return sum(
            (x * root for x, root in zip(self._n, _ROOTS) if x), 0j
        ) / self._d

    def to_text(self) -> str:
        parts = []
        for x in self._n:
            parts.append(f"{x}/{self._d}" if self._d != 1 else str(x))
        return "(" + ", ".join(parts) + ")"

    @classmethod
    def from_text(cls, text: str) -> "Cyclo":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"bad ring literal {text!r}")
        coeffs = [Fraction(p.strip()) for p in body[1:-1].split(",")]
        if len(coeffs) != 8:
            raise ValueError("ring literal needs 8 coordinates")
        return cls.from_fractions(coeffs)


def mul(a: Cyclo, b: Cyclo) -> Cyclo:
    return a * b


def conj(a: Cyclo) -> Cyclo:
    return a.conj()


def to_complex(a: Cyclo) -> complex:
    return a.to_complex()


_ZERO = Cyclo((0,) * 8)
_ONE = Cyclo((1, 0, 0, 0, 0, 0, 0, 0))

ZERO = _ZERO
ONE = _ONE
I = Cyclo.zeta_pow(4)
SQRT2 = Cyclo((0, 0, 1, 0, 0, 0, -1, 0))
INV_SQRT2 = Cyclo((0, 0, 1, 0, 0, 0, -1, 0), 2)
HALF = Cyclo((1, 0, 0, 0, 0, 0, 0, 0), 2)
HALF_ONE_PLUS_I = Cyclo((1, 0, 0, 0, 1, 0, 0, 0), 2)
HALF_ONE_MINUS_I = Cyclo((1, 0, 0, 0, -1, 0, 0, 0), 2)
EXP_MINUS_PI_I_8 = Cyclo.zeta_pow(-1)
MINUS_ONE = Cyclo((-1, 0, 0, 0, 0, 0, 0, 0))
