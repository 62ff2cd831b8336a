"""Exact constructions from binary codes.

Builds the graded algebra attached to a code containing the all-ones word,
together with the bookkeeping around it: the sign cocycle on the even
doubled code, dimension counts, character vectors, the exact S-transform,
classification of indecomposable codes, weight-2 dual counts, and the three
q-series characters at central charge 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bitcode import Code, Word, delta_embed
from .connection import H0, H_16, H_HALF
from .cyclo16 import Cyclo, HALF, INV_SQRT2, MINUS_ONE, ONE
from .framed import FramedAlgebra
from .sectors import Sector


# ---------------------------------------------------------------------------
# cocycle on the even doubled code
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle:
    """Sign bilinear form on the even-weight words of the doubled cube.

    The ordered basis is (diagonal unit words, then the left-handed
    difference words e_i + e_{i+1}).  rows[i] holds row i of the bit matrix
    as an integer mask over that basis.
    """

    r: int
    rows: tuple[int, ...]

    @classmethod
    def standard(cls, r: int) -> "Cocycle":
        basis: list[Word] = []
        for i in range(r):
            basis.append(delta_embed(Word(1 << i, r, 0)))
        for i in range(r - 1):
            basis.append(Word((1 << i) | (1 << (i + 1)), r, r))
        # diagonal: signed half-weight parity; lower triangle: overlap parity
        n = 2 * r - 1
        words = basis
        rows = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if i == j:
                    s = words[i].weight()
                    bit = (s // 2) % 2
                elif i > j:
                    bit = (words[i] * words[j]).weight_delta() % 2
                else:
                    bit = 0
                if bit:
                    mask |= 1 << j
            rows.append(mask)
        return cls(r=r, rows=tuple(rows))

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = 2 * self.r - 1
        return tuple(
            tuple((self.rows[i] >> j) & 1 for j in range(n)) for i in range(n)
        )

    def coords(self, w: Word) -> int:
        """Coordinate mask of w in the ordered basis; rejects words outside
        the even span."""
        r = self.r
        if (w.l, w.r) != (r, r):
            raise ValueError(f"word {w} does not live on the doubled {r}-cube")
        if w.weight_delta() % 2:
            raise ValueError(f"odd-weight word {w} is outside the even span")
        lmask = (1 << r) - 1
        b = (w.bits >> r) & lmask
        x = (w.bits & lmask) ^ b
        mask = b
        cum = 0
        for j in range(r - 1):
            cum ^= (x >> j) & 1
            if cum:
                mask |= 1 << (r + j)
        return mask

    def pairing(self, a_mask: int, b_mask: int) -> int:
        p = 0
        i = 0
        a = a_mask
        while a:
            if a & 1:
                p ^= (self.rows[i] & b_mask).bit_count() & 1
            a >>= 1
            i += 1
        return p


def epsilon(cocycle: Cocycle, alpha: Word, beta: Word) -> int:
    """Sign of the pair (alpha, beta): (-1) to the bilinear-form pairing."""
    p = cocycle.pairing(cocycle.coords(alpha), cocycle.coords(beta))
    return -1 if p else 1


# ---------------------------------------------------------------------------
# the graded algebra of a code
# ---------------------------------------------------------------------------


def sg_label(g: Word, h: Word, m: Word) -> str:
    return f"{g};{h};{m}"


def _dual_bits(G: Code) -> list[int]:
    return sorted(w.bits for w in G.dual_code().words())


def _require_all_ones(G: Code) -> None:
    if G.r != 0:
        raise ValueError("expected an unsplit code")
    if Word.ones(G.n) not in G:
        raise ValueError("the all-ones word must belong to the code")


def build_SG(G: Code) -> FramedAlgebra:
    """Graded algebra on basis (g, h, m): g in G, h in the dual, m in the
    complement of g.  Structure constants are 0 or +-1; the unit is the
    (0, 0, 0) element.

    The product of two basis elements expands over the diagonal words
    supported on the overlap of the two g-parts; each summand is reduced to
    the transversal by splitting off its diagonal tail, so every summand
    lands on a single basis element with a cocycle sign.
    """
    _require_all_ones(G)
    r = G.n
    lmask = (1 << r) - 1
    full = lmask
    coc = Cocycle.standard(r)
    dual = _dual_bits(G)
    dual_set = set(dual)

    labels: list[str] = []
    sectors: list[Sector] = []
    index: dict[tuple[int, int, int], int] = {}
    gs = sorted(w.bits for w in G.words())
    for g in gs:
        comp = full & ~g
        subs = []
        m = 0
        while True:
            subs.append(m)
            if m == comp:
                break
            m = (m - comp) & comp
        for h in dual:
            for m in subs:
                idx = len(labels)
                index[(g, h, m)] = idx
                labels.append(
                    sg_label(Word(g, r, 0), Word(h, r, 0), Word(m, r, 0))
                )
                d = Word(g | (g << r), r, r)
                cl = ((h ^ m) & ~g) & lmask
                c = Word(cl | (m << r), r, r)
                sectors.append(Sector(d=d, c=c))

    def alpha_word(h: int, m: int) -> Word:
        return Word(((h ^ m) & lmask) | (m << r), r, r)

    def delta_word(bits: int) -> Word:
        return Word((bits & lmask) | ((bits & lmask) << r), r, r)

    product: dict[tuple[int, int], tuple[tuple[int, Cyclo], ...]] = {}
    keys = list(index)
    for g1, h1, m1 in keys:
        i1 = index[(g1, h1, m1)]
        a1 = alpha_word(h1, m1)
        d1 = delta_word(g1)
        for g2, h2, m2 in keys:
            i2 = index[(g2, h2, m2)]
            a2 = alpha_word(h2, m2)
            d2 = delta_word(g2)
            g0 = g1 ^ g2
            sgn = (d1 * d2.perp() * a1 * a2).weight_delta()
            sgn += (d1 * d2 * a2).weight_delta()
            s = (d1 * a2).weight()
            if s % 2:
                raise ValueError("half-weight sign is not an integer; dual mismatch")
            sgn += (s // 2) % 2
            base_sign = -1 if sgn % 2 else 1
            overlap = g1 & g2
            terms = []
            gam = 0
            a1c = coc.coords(a1)
            a2c = coc.coords(a2)
            while True:
                dg = delta_word(gam)
                beta = a1 + dg + a2
                coeff = base_sign
                dgc = coc.coords(dg)
                if coc.pairing(a1c, dgc):
                    coeff = -coeff
                if coc.pairing(a1c ^ dgc, a2c):
                    coeff = -coeff
                bl = beta.bits & lmask
                br = (beta.bits >> r) & lmask
                gamp = br & g0
                m0 = br & ~g0
                h0 = (bl ^ gamp) ^ m0
                if h0 not in dual_set:
                    raise ValueError("product left the transversal span")
                beta0 = alpha_word(h0, m0)
                if gamp:
                    if coc.pairing(coc.coords(beta0), coc.coords(delta_word(gamp))):
                        coeff = -coeff
                terms.append((index[(g0, h0, m0)], ONE if coeff > 0 else MINUS_ONE))
                if gam == overlap:
                    break
                gam = (gam - overlap) & overlap
            product[(i1, i2)] = tuple(sorted(terms))

    return FramedAlgebra(
        lr=(r, r),
        labels=tuple(labels),
        sectors=tuple(sectors),
        unit_index=index[(0, 0, 0)],
        product=product,
    )


def twisted_group_algebra(C: Code) -> FramedAlgebra:
    """Group algebra of an even split code twisted by the sign cocycle."""
    if C.l != C.r:
        raise ValueError("expected a split code with equal halves")
    r = C.l
    coc = Cocycle.standard(r)
    words = sorted(C.words(), key=lambda w: w.bits)
    for w in words:
        if w.weight_delta() % 2:
            raise ValueError(f"odd-weight word {w} in the code")
    index = {w.bits: i for i, w in enumerate(words)}
    labels = tuple(str(w) for w in words)
    zero = Word.zero(r, r)
    sectors = tuple(Sector(d=zero, c=w) for w in words)
    product = {}
    for i, a in enumerate(words):
        for j, b in enumerate(words):
            sign = epsilon(coc, a, b)
            product[(i, j)] = ((index[(a + b).bits], ONE if sign > 0 else MINUS_ONE),)
    return FramedAlgebra(
        lr=(r, r),
        labels=labels,
        sectors=sectors,
        unit_index=index[0],
        product=product,
    )


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------


def dims(G: Code) -> tuple[dict[Word, int], int]:
    """Per-sector-family and total dimension counts, by the closed formulas."""
    _require_all_ones(G)
    r = G.n
    k = G.dim
    per: dict[Word, int] = {}
    total = 0
    for g in G.words():
        n = 1 << (2 * r - k - g.weight_delta())
        per[delta_embed(g)] = n
        total += n
    num, den = G.enumerator_at_half()
    closed = (1 << (2 * r - k)) * num
    if closed % den:
        raise ValueError("enumerator total is not an integer")
    if closed // den != total:
        raise ValueError("per-part dimensions disagree with the enumerator total")
    return per, total


# ---------------------------------------------------------------------------
# character vectors and the S-transform
# ---------------------------------------------------------------------------


@dataclass
class CharacterVector:
    """Finitely supported vector over sector monomials with exact scalars."""

    lr: tuple[int, int]
    coeffs: dict[Sector, Cyclo]

    def clean(self) -> "CharacterVector":
        return CharacterVector(
            self.lr, {s: c for s, c in self.coeffs.items() if not c.is_zero()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterVector):
            return NotImplemented
        return self.lr == other.lr and self.clean().coeffs == other.clean().coeffs


def character(S: FramedAlgebra) -> CharacterVector:
    coeffs: dict[Sector, Cyclo] = {}
    for lam, n in S.sector_dimensions().items():
        coeffs[lam] = Cyclo.integer(n)
    return CharacterVector(lr=S.lr, coeffs=coeffs)


def theta_expansion(G: Code) -> CharacterVector:
    """Character of the code algebra assembled from pure tensor factors,
    without constructing the algebra itself: one term per pair of disjoint
    code words, expanded slot by slot."""
    _require_all_ones(G)
    r = G.n
    order = len(G)
    acc: dict[tuple[int, int], Fraction] = {}
    words = [w.bits for w in G.words()]
    for g in words:
        weight_factor = Fraction(1 << g.bit_count(), order)
        for h in words:
            if g & h:
                continue
            # expand one side: list of (d_bits, c_bits, sign)
            side = [(0, 0, 1)]
            for i in range(r):
                bit = 1 << i
                if g & bit:
                    side = [(d | bit, c, s) for d, c, s in side]
                elif h & bit:
                    side = [t for d, c, s in side for t in ((d, c, s), (d, c | bit, -s))]
                else:
                    side = [t for d, c, s in side for t in ((d, c, s), (d, c | bit, s))]
            for dl, cl, sl in side:
                for dr, cr, sr in side:
                    key = (dl | (dr << r), cl | (cr << r))
                    val = weight_factor * sl * sr
                    acc[key] = acc.get(key, Fraction(0)) + val
    coeffs: dict[Sector, Cyclo] = {}
    for (d_bits, c_bits), val in acc.items():
        if val == 0:
            continue
        lam = Sector(d=Word(d_bits, r, r), c=Word(c_bits, r, r))
        coeffs[lam] = Cyclo.rational(val)
    return CharacterVector(lr=(r, r), coeffs=coeffs)


_S_ROW = {
    0: ((0, HALF), (1, HALF), (2, INV_SQRT2)),
    1: ((0, HALF), (1, HALF), (2, MINUS_ONE * INV_SQRT2)),
    2: ((0, INV_SQRT2), (1, MINUS_ONE * INV_SQRT2)),
}


def s_transform(Z: CharacterVector) -> CharacterVector:
    """Apply the one-slot 3x3 transform to every slot in turn, exactly.

    The matrix is real, so the mirrored slots use the same entries.
    """
    l, r = Z.lr
    coeffs: dict[tuple[int, int], Cyclo] = {
        (lam.d.bits, lam.c.bits): c for lam, c in Z.clean().coeffs.items()
    }
    for slot in range(l + r):
        bit = 1 << slot
        nxt: dict[tuple[int, int], Cyclo] = {}
        for (d_bits, c_bits), c in coeffs.items():
            state = 2 if d_bits & bit else (1 if c_bits & bit else 0)
            base_d = d_bits & ~bit
            base_c = c_bits & ~bit
            for tgt, entry in _S_ROW[state]:
                nd = base_d | (bit if tgt == 2 else 0)
                nc = base_c | (bit if tgt == 1 else 0)
                key = (nd, nc)
                cur = nxt.get(key)
                add = c * entry
                nxt[key] = add if cur is None else cur + add
        coeffs = {k: v for k, v in nxt.items() if not v.is_zero()}
    out: dict[Sector, Cyclo] = {}
    for (d_bits, c_bits), c in coeffs.items():
        out[Sector(d=Word(d_bits, l, r), c=Word(c_bits, l, r))] = c
    return CharacterVector(lr=Z.lr, coeffs=out)


def verify_modular(G: Code) -> bool:
    """Exact fixed-point check of the character vector under the S-transform."""
    Z = theta_expansion(G)
    return s_transform(Z) == Z


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _echelon_subgroups(r: int):
    """All subgroups of the length-r bit cube, one echelon basis each."""
    yield ()
    for k in range(1, r + 1):
        for pivots in combinations(range(r), k):
            pivot_mask = 0
            for p in pivots:
                pivot_mask |= 1 << p
            free_cols = [
                [q for q in range(p + 1, r) if not (pivot_mask >> q) & 1]
                for p in pivots
            ]
            def rec(t: int, rows: tuple[int, ...]):
                if t == k:
                    yield rows
                    return
                base = 1 << pivots[t]
                cols = free_cols[t]
                for fill in range(1 << len(cols)):
                    row = base
                    for bi, q in enumerate(cols):
                        if (fill >> bi) & 1:
                            row |= 1 << q
                    yield from rec(t + 1, rows + (row,))
            yield from rec(0, ())


def classify_codes(r: int) -> list[Code]:
    """All indecomposable codes containing the all-ones word, one canonical
    representative per coordinate-permutation class."""
    if not 1 <= r <= 8:
        raise ValueError("rank out of range")
    ones = (1 << r) - 1
    seen: dict[tuple[int, ...], Code] = {}
    for rows in _echelon_subgroups(r):
        # membership of the all-ones word: eliminate on each row's pivot
        v = ones
        for row in sorted(rows):
            piv = row & -row
            if v & piv:
                v ^= row
        if v:
            continue
        code = Code.from_words([Word(b, r, 0) for b in rows], l=r, r=0)
        if not code.is_indecomposable():
            continue
        canon = code.canonical_form()
        seen.setdefault(canon.gens, canon)
    return sorted(seen.values(), key=lambda c: (c.dim, c.gens))


def currents(G: Code) -> int:
    """Number of weight-2 words in the dual code."""
    _require_all_ones(G)
    return sum(1 for w in G.dual_code().words() if w.weight_delta() == 2)


# ---------------------------------------------------------------------------
# q-series characters
# ---------------------------------------------------------------------------

_FAMILIES = {H0: (1, 7), H_HALF: (5, 11), H_16: (2, 10)}


def _partitions(K: int) -> list[int]:
    part = [0] * (K + 1)
    part[0] = 1
    for n in range(1, K + 1):
        for m in range(n, K + 1):
            part[m] += part[m - n]
    return part


def _char_units(a: int, b: int, kmax: int, cutoff: int, K: int) -> dict[int, int]:
    """Character series in units of 1/48: alternating square exponents
    divided by the eta product, truncated at the cutoff."""
    part = _partitions(K)
    theta: dict[int, int] = {}
    for k in range(-kmax, kmax + 1):
        for base, sgn in ((a, 1), (b, -1)):
            e = (24 * k + base) ** 2
            if e <= cutoff + 2:
                theta[e] = theta.get(e, 0) + sgn
    out: dict[int, int] = {}
    for e, c in theta.items():
        if c == 0:
            continue
        for m in range(K + 1):
            u = e - 2 + 48 * m
            if u <= cutoff:
                out[u] = out.get(u, 0) + c * part[m]
    return {u: c for u, c in sorted(out.items()) if c != 0}


def q_character(h: Fraction, N: int) -> list[tuple[Fraction, int]]:
    """First N nonzero coefficients of the weight-h character as
    (exponent, coefficient) pairs."""
    if N > 200:
        raise ValueError("requested series length out of range")
    if h not in _FAMILIES:
        raise ValueError(f"no character family for weight {h}")
    a, b = _FAMILIES[h]
    cutoff = 48 * (N + 2)
    kmax = int((cutoff ** 0.5 + 24) // 24) + 1
    series = _char_units(a, b, kmax, cutoff, N + 2)
    out = [(Fraction(u, 48), c) for u, c in series.items()]
    return out[:N]
