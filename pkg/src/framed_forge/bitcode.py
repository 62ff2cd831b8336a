"""Binary words and linear codes over Z2 with split (left, right) coordinates.

Words are immutable bit sets: coordinate i of the string form is bit i of the
integer, so the leftmost character is the least significant bit.  A split word
carries l left and r right coordinates and serializes as "left|right"; a plain
code over Z2^n is the r = 0 case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_COORDS = 32


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class Word:
    """A vector in Z2^{l+r} stored as an integer bit set."""

    bits: int
    l: int
    r: int

    def __post_init__(self) -> None:
        n = self.l + self.r
        if not 0 < n <= MAX_COORDS:
            raise ValueError(f"word length {n} out of range 1..{MAX_COORDS}")
        if self.bits < 0 or self.bits >> n:
            raise ValueError("bits outside the declared coordinate range")

    @classmethod
    def from_string(cls, s: str, l: int | None = None, r: int | None = None) -> "Word":
        if "|" in s:
            left, right = s.split("|")
            if (l is not None and l != len(left)) or (r is not None and r != len(right)):
                raise ValueError(f"split of {s!r} does not match ({l},{r})")
            l, r = len(left), len(right)
            s = left + right
        else:
            if l is None:
                l, r = len(s), 0
            if r is None:
                r = len(s) - l
        if len(s) != l + r or set(s) - {"0", "1"}:
            raise ValueError(f"bad word literal {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(bits, l, r)

    @classmethod
    def zero(cls, l: int, r: int = 0) -> "Word":
        return cls(0, l, r)

    @classmethod
    def ones(cls, l: int, r: int = 0) -> "Word":
        return cls((1 << (l + r)) - 1, l, r)

    @property
    def n(self) -> int:
        return self.l + self.r

    @property
    def left_mask(self) -> int:
        return (1 << self.l) - 1

    @property
    def right_mask(self) -> int:
        return ((1 << self.n) - 1) ^ self.left_mask

    def __str__(self) -> str:
        s = "".join("1" if self.bits >> i & 1 else "0" for i in range(self.n))
        if self.r == 0:
            return s
        return s[: self.l] + "|" + s[self.l :]

    def _check_split(self, other: "Word") -> None:
        if (self.l, self.r) != (other.l, other.r):
            raise ValueError("mismatched splits")

    def __mul__(self, other: "Word") -> "Word":
        self._check_split(other)
        return Word(self.bits & other.bits, self.l, self.r)

    def __add__(self, other: "Word") -> "Word":
        self._check_split(other)
        return Word(self.bits ^ other.bits, self.l, self.r)

    def weight_left(self) -> int:
        return _popcount(self.bits & self.left_mask)

    def weight_right(self) -> int:
        return _popcount(self.bits & self.right_mask)

    def weight(self) -> int:
        """Signed weight |c| = |c|_l - |c|_r."""
        return self.weight_left() - self.weight_right()

    def weight_delta(self) -> int:
        """Plain coordinate count, written |g|_Delta for code words."""
        return _popcount(self.bits)

    def perp(self) -> "Word":
        """Complement word 1^{l+r} + self."""
        return Word(self.bits ^ ((1 << self.n) - 1), self.l, self.r)

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.bits >> i & 1)


def word_mul(a: Word, b: Word) -> Word:
    """Componentwise product a.b (intersection of supports)."""
    return a * b


def word_add(a: Word, b: Word) -> Word:
    """Componentwise sum a + b over Z2 (symmetric difference)."""
    return a + b


def weights(c: Word) -> tuple[int, int, int]:
    """Return (|c|_l, |c|_r, |c|) with |c| the signed weight."""
    return c.weight_left(), c.weight_right(), c.weight()


def delta_embed(g: Word) -> Word:
    """Diagonal embedding g -> (g, g) of Z2^r into Z2^{r+r}."""
    if g.r != 0:
        raise ValueError("delta_embed expects an unsplit word")
    return Word(g.bits | g.bits << g.l, g.l, g.l)


def dot(a: Word, b: Word) -> int:
    """Parity of |ab|, the pairing used for duals."""
    a._check_split(b)
    return _popcount(a.bits & b.bits) & 1


def _rref(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """Reduced row echelon form over GF(2); rows returned sorted by pivot."""
    rows = [x for x in rows if x]
    out: list[int] = []
    for col in range(n):
        src = next((i for i, x in enumerate(rows) if x >> col & 1), None)
        if src is None:
            continue
        piv = rows.pop(src)
        rows = [x ^ piv if x >> col & 1 else x for x in rows]
        out = [x ^ piv if x >> col & 1 else x for x in out]
        out.append(piv)
    return tuple(out)


@dataclass(frozen=True)
class Code:
    """A linear code over Z2^{l+r}, stored by its reduced echelon generators."""

    l: int
    r: int
    gens: tuple[int, ...]

    @classmethod
    def from_words(cls, words: Sequence[Word], l: int | None = None, r: int = 0) -> "Code":
        if words:
            l, r = words[0].l, words[0].r
            for w in words[1:]:
                words[0]._check_split(w)
        elif l is None:
            raise ValueError("empty generator list needs an explicit length")
        return cls(l, r, _rref([w.bits for w in words], l + r))

    @classmethod
    def from_strings(cls, strings: Sequence[str], l: int | None = None, r: int | None = None) -> "Code":
        return cls.from_words([Word.from_string(s, l, r) for s in strings])

    def __post_init__(self) -> None:
        if _rref(self.gens, self.n) != self.gens:
            raise ValueError("generators must be in reduced echelon form")

    @property
    def n(self) -> int:
        return self.l + self.r

    @property
    def dim(self) -> int:
        return len(self.gens)

    def __len__(self) -> int:
        return 1 << self.dim

    def _word(self, bits: int) -> Word:
        return Word(bits, self.l, self.r)

    def __iter__(self) -> Iterator[Word]:
        for combo in range(1 << self.dim):
            bits = 0
            c = combo
            i = 0
            while c:
                if c & 1:
                    bits ^= self.gens[i]
                c >>= 1
                i += 1
            yield self._word(bits)

    def __contains__(self, w: Word) -> bool:
        if (w.l, w.r) != (self.l, self.r):
            return False
        x = w.bits
        for g in self.gens:
            p = g & -g
            if x & p:
                x ^= g
        return x == 0

    def words(self) -> tuple[Word, ...]:
        return tuple(self)

    def span_with(self, extra: Sequence[Word]) -> "Code":
        return Code(self.l, self.r, _rref(list(self.gens) + [w.bits for w in extra], self.n))

    def dual_code(self) -> "Code":
        """Dual under the parity of |ab|; standard GF(2) null space."""
        pivots = [g & -g for g in self.gens]
        pivot_cols = [p.bit_length() - 1 for p in pivots]
        free_cols = [c for c in range(self.n) if c not in pivot_cols]
        basis = []
        for f in free_cols:
            v = 1 << f
            for g, pc in zip(self.gens, pivot_cols):
                if g >> f & 1:
                    v |= 1 << pc
            basis.append(v)
        return Code(self.l, self.r, _rref(basis, self.n))

    def enumerator(self) -> tuple[int, ...]:
        """Coefficients (N_0, ..., N_n) of the weight enumerator."""
        counts = [0] * (self.n + 1)
        for w in self:
            counts[w.weight_delta()] += 1
        return tuple(counts)

    def enumerator_at_half(self) -> tuple[int, int]:
        """P(1/2) as an exact fraction (num, den) with den a power of two."""
        counts = self.enumerator()
        den = 1 << self.n
        num = sum(c << (self.n - k) for k, c in enumerate(counts))
        from math import gcd

        g = gcd(num, den)
        return num // g, den // g

    def _basis_words_min_weight(self) -> list[int]:
        # Greedy spanning basis by (weight, bits); a basis word can never mix
        # two decomposition blocks, since its two halves are shorter and span it.
        order = sorted((x.bits for x in self if x.bits), key=lambda b: (_popcount(b), b))
        basis: list[int] = []
        reduced: list[int] = []
        for cand in order:
            x = cand
            for g in reduced:
                p = g & -g
                if x & p:
                    x ^= g
            if x:
                basis.append(cand)
                reduced = list(_rref(reduced + [cand], self.n))
            if len(basis) == self.dim:
                break
        return basis

    def is_indecomposable(self) -> bool:
        """True when no coordinate bipartition splits the code as a direct sum.

        A code that misses a coordinate entirely counts as decomposable
        (it splits off the zero code on that coordinate).
        """
        if self.dim == 0:
            return self.n == 0
        basis = self._basis_words_min_weight()
        used = 0
        for b in basis:
            used |= b
        if used != (1 << self.n) - 1:
            return False
        # union-find on coordinates, joined within each basis support
        parent = list(range(self.n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for b in basis:
            sup = [i for i in range(self.n) if b >> i & 1]
            for i in sup[1:]:
                parent[find(i)] = find(sup[0])
        roots = {find(i) for i in range(self.n)}
        return len(roots) == 1

    def is_indecomposable_exhaustive(self) -> bool:
        """Direct bipartition scan; oracle for the graph method."""
        if self.dim == 0:
            return self.n == 0
        full = (1 << self.n) - 1
        for mask in range(1, full):
            if mask > full ^ mask:
                continue  # complements give the same split
            dim_a = len(_rref([w.bits for w in self if w.bits & ~mask == 0], self.n))
            dim_b = len(_rref([w.bits for w in self if w.bits & mask == 0], self.n))
            if dim_a + dim_b == self.dim:
                return False
        return True

    def canonical_form(self) -> "Code":
        """Lexicographically minimal echelon generators over all column
        permutations.  Guard: at most 8 coordinates."""
        if self.n > 8:
            raise ValueError("canonical form is restricted to n <= 8")
        best: tuple[int, ...] | None = None
        for perm in itertools.permutations(range(self.n)):
            rows = []
            for g in self.gens:
                x = 0
                for i in range(self.n):
                    if g >> i & 1:
                        x |= 1 << perm[i]
                rows.append(x)
            cand = _rref(rows, self.n)
            if best is None or cand < best:
                best = cand
        return Code(self.l, self.r, best or ())

    def weight2_orthogonal_set(self) -> tuple[Word, ...]:
        """A maximum set of weight-2 codewords with pairwise disjoint supports.

        Exact search over the support-pair graph; deterministic tie-break by
        word order.
        """
        edges = sorted(w.bits for w in self if w.weight_delta() == 2)
        best: list[int] = []

        def extend(start: int, chosen: list[int], used: int) -> None:
            nonlocal best
            if len(chosen) > len(best):
                best = list(chosen)
            for k in range(start, len(edges)):
                e = edges[k]
                if e & used:
                    continue
                chosen.append(e)
                extend(k + 1, chosen, used | e)
                chosen.pop()

        extend(0, [], 0)
        return tuple(self._word(b) for b in best)


def code_to_json(code: Code) -> dict:
    if code.r != 0:
        raise ValueError("JSON literals are for unsplit codes")
    return {
        "r": code.n,
        "generators": [str(Word(g, code.l, 0)) for g in code.gens],
    }


def code_from_json(obj: dict) -> Code:
    n = int(obj["r"])
    gens = [Word.from_string(s, n, 0) for s in obj["generators"]]
    for g in gens:
        if g.n != n:
            raise ValueError("generator length disagrees with the r field")
    return Code.from_words(gens, l=n, r=0)
