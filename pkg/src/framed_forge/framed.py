"""Sector-graded algebras with exact coefficients and executable axiom checks.

The container itself is deliberately dumb: a finite basis, one sector per
basis element, and a sparse product table.  Nothing about the grading or the
braiding data is assumed; the verifier functions re-derive every constraint
from the table and report violations with explicit witnesses.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field

from .bitcode import Code
from .connection import multi_B_closed
from .cyclo16 import Cyclo, ONE, ZERO
from .sectors import Sector, fuse, intermediates, sector_from_json, sector_to_json

Vec = dict[int, Cyclo]
SectorKey = tuple[int, int]

AXIOM_TAGS = ("FA1", "FA2", "FA3", "FA4", "Bilinear", "Simplicity")


@dataclass
class VerifierReport:
    """Outcome of one verification sweep.

    axiom names the sweep ("FA1-FA4" for a clean aggregate run, otherwise the
    first axiom that produced a violation).  Each violation is a triple
    (witness, expected, found): the witness starts with an axiom tag and lists
    the basis indices and sector labels involved; expected and found are
    sorted tuples of (basis index, coefficient text).  checked counts the
    comparisons that were actually performed.
    """

    axiom: str
    violations: list[tuple]
    checked: int

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return (
            f"{self.axiom}: {state} "
            f"({self.checked} checks, {len(self.violations)} violations)"
        )


def _vec_text(vec: Vec) -> tuple[tuple[int, str], ...]:
    return tuple((k, vec[k].to_text()) for k in sorted(vec))


def _clean(vec: Vec) -> Vec:
    return {k: c for k, c in vec.items() if not c.is_zero()}


def _scale(vec: Vec, coef: Cyclo | int) -> Vec:
    return _clean({k: c * coef for k, c in vec.items()})


@dataclass(eq=False)
class FramedAlgebra:
    """Finite basis, one sector per element, sparse product table.

    product maps (i, j) to a tuple of (k, coefficient) terms; absent pairs
    multiply to zero.  unit_index points at the basis element acting as 1.
    """

    lr: tuple[int, int]
    labels: tuple[str, ...]
    sectors: tuple[Sector, ...]
    unit_index: int
    product: dict[tuple[int, int], tuple[tuple[int, Cyclo], ...]]
    _psec: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        l, r = self.lr
        if len(self.labels) != len(self.sectors):
            raise ValueError("labels and sectors differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis ids")
        for lam in self.sectors:
            if (lam.l, lam.r) != (l, r):
                raise ValueError(f"sector split {lam} does not match lr={self.lr}")
        if not 0 <= self.unit_index < len(self.labels):
            raise ValueError("unit index out of range")
        for (i, j), terms in self.product.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise ValueError(f"product key {(i, j)} out of range")
            for k, _ in terms:
                if not 0 <= k < self.dim:
                    raise ValueError(f"product target {k} out of range")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def sector_of(self, i: int) -> Sector:
        return self.sectors[i]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def terms(self, i: int, j: int) -> tuple[tuple[int, Cyclo], ...]:
        return self.product.get((i, j), ())

    def vector(self, i: int, j: int) -> Vec:
        out: Vec = {}
        for k, c in self.terms(i, j):
            out[k] = out.get(k, ZERO) + c
        return _clean(out)

    def product_by_sector(self, i: int, j: int) -> dict[SectorKey, Vec]:
        """Product of basis elements i and j, split by output sector."""
        cached = self._psec.get((i, j))
        if cached is None:
            out: dict[SectorKey, Vec] = {}
            for k, c in self.vector(i, j).items():
                out.setdefault(self.sectors[k].key(), {})[k] = c
            self._psec[(i, j)] = cached = out
        return cached

    def act_split(self, i: int, vec: Vec) -> dict[SectorKey, Vec]:
        """Left-multiply vec by basis element i, split by output sector."""
        out: dict[SectorKey, Vec] = {}
        for k, c in vec.items():
            for key0, part in self.product_by_sector(i, k).items():
                tgt = out.setdefault(key0, {})
                for kk, cc in part.items():
                    tgt[kk] = tgt.get(kk, ZERO) + c * cc
        return {key0: v for key0, v in ((key0, _clean(v)) for key0, v in out.items()) if v}

    def act_right_split(self, vec: Vec, j: int) -> dict[SectorKey, Vec]:
        """Right-multiply vec by basis element j, split by output sector."""
        out: dict[SectorKey, Vec] = {}
        for k, c in vec.items():
            for key0, part in self.product_by_sector(k, j).items():
                tgt = out.setdefault(key0, {})
                for kk, cc in part.items():
                    tgt[kk] = tgt.get(kk, ZERO) + c * cc
        return {key0: v for key0, v in ((key0, _clean(v)) for key0, v in out.items()) if v}

    def sector_dimensions(self) -> dict[Sector, int]:
        out: dict[Sector, int] = {}
        for lam in self.sectors:
            out[lam] = out.get(lam, 0) + 1
        return out

    def basis_sector_map(self) -> dict[SectorKey, Sector]:
        return {lam.key(): lam for lam in self.sectors}

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        prods = []
        for i, j in sorted(self.product):
            terms = [
                {"k": k, "coeff": c.to_text()}
                for k, c in self.product[(i, j)]
                if not c.is_zero()
            ]
            if terms:
                prods.append({"i": i, "j": j, "terms": terms})
        return {
            "l": self.lr[0],
            "r": self.lr[1],
            "basis": [
                {"id": lab, "sector": sector_to_json(lam)}
                for lab, lam in zip(self.labels, self.sectors)
            ],
            "unit": self.labels[self.unit_index],
            "products": prods,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FramedAlgebra":
        labels = tuple(entry["id"] for entry in obj["basis"])
        sectors = tuple(sector_from_json(entry["sector"]) for entry in obj["basis"])
        product: dict[tuple[int, int], tuple[tuple[int, Cyclo], ...]] = {}
        for row in obj.get("products", ()):
            key = (int(row["i"]), int(row["j"]))
            product[key] = tuple(
                (int(t["k"]), Cyclo.from_text(t["coeff"])) for t in row["terms"]
            )
        return cls(
            lr=(int(obj["l"]), int(obj["r"])),
            labels=labels,
            sectors=sectors,
            unit_index=labels.index(obj["unit"]),
            product=product,
        )


# ---------------------------------------------------------------------------
# structural checks (FA1-FA3)
# ---------------------------------------------------------------------------


def _check_fa1(S: FramedAlgebra, violations: list) -> int:
    checked = 0
    for i, lam in enumerate(S.sectors):
        checked += 1
        if lam.s().denominator != 1:
            violations.append((("FA1", i, str(lam)), (), ()))
    return checked


def _check_fa2(S: FramedAlgebra, violations: list) -> int:
    checked = 1
    unit_sector = S.sectors[S.unit_index]
    if not unit_sector.is_vacuum():
        violations.append((("FA2", "unit-sector", S.unit_index, str(unit_sector)), (), ()))
    vac = [i for i, lam in enumerate(S.sectors) if lam.is_vacuum()]
    checked += 1
    if vac != [S.unit_index]:
        violations.append((("FA2", "vacuum-dimension", tuple(vac)), (), ()))
    u = S.unit_index
    for i in range(S.dim):
        expected = {i: ONE}
        for side, vec in (("left", S.vector(u, i)), ("right", S.vector(i, u))):
            checked += 1
            if vec != expected:
                violations.append(
                    (("FA2", f"unit-{side}", i), _vec_text(expected), _vec_text(vec))
                )
    return checked


def _check_fa3(S: FramedAlgebra, violations: list) -> int:
    checked = 0
    for (i, j), terms in sorted(S.product.items()):
        allowed = {lam.key() for lam in fuse(S.sectors[i], S.sectors[j])}
        for k, c in terms:
            if c.is_zero():
                continue
            checked += 1
            if S.sectors[k].key() not in allowed:
                violations.append(
                    (("FA3", i, j, k, str(S.sectors[k])), (), _vec_text({k: c}))
                )
    return checked


# ---------------------------------------------------------------------------
# FA4 scan
# ---------------------------------------------------------------------------


def _braid_coef(bcache: dict, lam0: Sector, lam1: Sector, lam2: Sector,
                lam3: Sector, lam: Sector, lamp: Sector) -> Cyclo:
    key = (lam0.key(), lam1.key(), lam2.key(), lam3.key(), lam.key(), lamp.key())
    val = bcache.get(key)
    if val is None:
        val = multi_B_closed(
            lam0.d, lam1.d, lam2.d, lam3.d,
            lam0.c, lam1.c, lam2.c, lam3.c,
            lam.c, lamp.c,
        )
        bcache[key] = val
    return val


def _fa4_triple(S: FramedAlgebra, key_map: dict[SectorKey, Sector], bcache: dict,
                i1: int, i2: int, i3: int, limit: int, violations: list) -> int:
    """Check the hexagon identity for the basis triple (i1, i2, i3).

    For each candidate output sector and each intermediate channel of the
    (i1*i3)-side, the channel component of i2*(i1*i3) must equal the braided
    sum over (i2*i3)-channels.  Candidate output sectors are the union of the
    supports of both sides; outside it both sides vanish identically.
    """
    lam1, lam2, lam3 = S.sectors[i1], S.sectors[i2], S.sectors[i3]
    lhs_by: dict[tuple[SectorKey, SectorKey], Vec] = {}
    cand0: set[SectorKey] = set()
    for kp, vec in S.product_by_sector(i1, i3).items():
        for k0, v in S.act_split(i2, vec).items():
            lhs_by[(k0, kp)] = v
            cand0.add(k0)
    rhs_parts: dict[SectorKey, dict[SectorKey, Vec]] = {}
    for km, vec in S.product_by_sector(i2, i3).items():
        parts = S.act_split(i1, vec)
        rhs_parts[km] = parts
        cand0.update(parts)
    checked = 0
    for k0 in sorted(cand0):
        lam0 = key_map[k0]
        dom_lam = intermediates(lam0, lam1, lam2, lam3)
        for lamp in intermediates(lam0, lam2, lam1, lam3):
            lhs = lhs_by.get((k0, lamp.key()), {})
            rhs: Vec = {}
            for lam in dom_lam:
                parts = rhs_parts.get(lam.key())
                if not parts:
                    continue
                v = parts.get(k0)
                if not v:
                    continue
                coef = _braid_coef(bcache, lam0, lam1, lam2, lam3, lam, lamp)
                for k, c in v.items():
                    rhs[k] = rhs.get(k, ZERO) + coef * c
            rhs = _clean(rhs)
            checked += 1
            if lhs != rhs and len(violations) < limit:
                violations.append(
                    (
                        ("FA4", i1, i2, i3, str(lam0), str(lamp)),
                        _vec_text(rhs),
                        _vec_text(lhs),
                    )
                )
    return checked


def _fa4_range(S: FramedAlgebra, lo: int, hi: int, limit: int) -> tuple[int, list]:
    """Scan flattened triple indices [lo, hi); t encodes ((i3*n)+i2)*n+i1."""
    n = S.dim
    key_map = S.basis_sector_map()
    bcache: dict = {}
    violations: list = []
    checked = 0
    for t in range(lo, hi):
        i1 = t % n
        i2 = (t // n) % n
        i3 = t // (n * n)
        checked += _fa4_triple(S, key_map, bcache, i1, i2, i3, limit, violations)
    return checked, violations


_FA4_STATE: FramedAlgebra | None = None


def _fa4_worker(args: tuple[int, int, int]) -> tuple[int, list]:
    lo, hi, limit = args
    assert _FA4_STATE is not None
    return _fa4_range(_FA4_STATE, lo, hi, limit)


def _check_fa4(S: FramedAlgebra, violations: list, limit: int, workers: int) -> int:
    global _FA4_STATE
    total = S.dim ** 3
    if workers <= 1 or total < 4096:
        checked, viols = _fa4_range(S, 0, total, limit)
        violations.extend(viols)
        return checked
    nchunks = workers * 4
    bounds = [total * i // nchunks for i in range(nchunks + 1)]
    jobs = [(bounds[i], bounds[i + 1], limit) for i in range(nchunks)]
    _FA4_STATE = S
    try:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            results = pool.map(_fa4_worker, jobs)
    finally:
        _FA4_STATE = None
    checked = 0
    for part_checked, part_viols in results:
        checked += part_checked
        for v in part_viols:
            if len(violations) < limit:
                violations.append(v)
    return checked


def verify_axioms(S: FramedAlgebra, fa4_limit: int = 10, workers: int = 1) -> VerifierReport:
    """Run the four axiom sweeps and aggregate the outcome.

    FA1: populated sectors carry integer spin.  FA2: the unit spans a
    one-dimensional vacuum sector and multiplies as the identity.  FA3: every
    product component lies in a fusion channel of its factors.  FA4: the
    braided reordering identity holds for every basis triple, every candidate
    output sector, and every intermediate channel (populated or not).
    """
    violations: list = []
    checked = _check_fa1(S, violations)
    checked += _check_fa2(S, violations)
    checked += _check_fa3(S, violations)
    fa1_ok = not any(v[0][0] == "FA1" for v in violations)
    if fa1_ok:
        checked += _check_fa4(S, violations, fa4_limit, workers)
    axiom = "FA1-FA4" if not violations else violations[0][0][0]
    return VerifierReport(axiom=axiom, violations=violations, checked=checked)


# ---------------------------------------------------------------------------
# bilinear form, simplicity, structure codes
# ---------------------------------------------------------------------------


def bilinear_form(S: FramedAlgebra) -> list[list[Cyclo]]:
    """Gram matrix (a_i, a_j) = sign(sector of a_i) * unit component of a_i a_j."""
    n = S.dim
    M = [[ZERO for _ in range(n)] for _ in range(n)]
    u = S.unit_index
    for (i, j), terms in S.product.items():
        acc = ZERO
        for k, c in terms:
            if k == u:
                acc = acc + c
        if not acc.is_zero():
            M[i][j] = acc * S.sectors[i].sign_s()
    return M


def _rank(rows: list[list[Cyclo]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [inv * x for x in m[rank]]
        for r in range(len(m)):
            if r != rank and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def is_simple(S: FramedAlgebra) -> bool:
    """Exact nondegeneracy of the Gram form, sector block by sector block."""
    M = bilinear_form(S)
    groups: dict[SectorKey, list[int]] = {}
    for i, lam in enumerate(S.sectors):
        groups.setdefault(lam.key(), []).append(i)
    cross = any(
        not M[i][j].is_zero()
        for i in range(S.dim)
        for j in range(S.dim)
        if S.sectors[i].key() != S.sectors[j].key()
    )
    if cross:
        return _rank(M) == S.dim
    for idxs in groups.values():
        block = [[M[i][j] for j in idxs] for i in idxs]
        if _rank(block) < len(idxs):
            return False
    return True


def structure_codes(S: FramedAlgebra) -> tuple[Code, Code]:
    """Codes spanned by the populated sector data: all d-words, and the
    c-words of sectors with d = 0.  Raises if either set fails to be a
    subgroup or breaks the evenness constraints."""
    l, r = S.lr
    d_words = {lam.d for lam in S.sectors}
    c_words = {lam.c for lam in S.sectors if lam.d.bits == 0}
    for name, ws in (("D", d_words), ("C", c_words)):
        for a in ws:
            for b in ws:
                if (a + b) not in ws:
                    raise ValueError(f"{name}-words are not closed under addition")
    for a in c_words:
        if a.weight_delta() % 2:
            raise ValueError(f"odd-weight word {a} in the C-code")
        for d in d_words:
            if (a * d).weight_delta() % 2:
                raise ValueError(f"odd overlap between {a} and {d}")
    D = Code.from_words(sorted(d_words, key=lambda w: w.bits), l=l, r=r)
    C = Code.from_words(sorted(c_words, key=lambda w: w.bits), l=l, r=r)
    if len(D) != len(d_words) or len(C) != len(c_words):
        raise ValueError("sector words do not span their own closure")
    return D, C


# ---------------------------------------------------------------------------
# commutativity and the quadratic associator sweep
# ---------------------------------------------------------------------------


def check_commutativity(S: FramedAlgebra) -> VerifierReport:
    """a_i a_j against a_j a_i with the sign fixed by the three spins."""
    violations: list = []
    checked = 0
    n = S.dim
    key_map = S.basis_sector_map()
    for i in range(n):
        si = S.sectors[i].sign_s()
        for j in range(n):
            sj = S.sectors[j].sign_s()
            pij = S.product_by_sector(i, j)
            pji = S.product_by_sector(j, i)
            for k0 in sorted(set(pij) | set(pji)):
                lam0 = key_map[k0]
                sign = lam0.sign_s() * si * sj
                lhs = pij.get(k0, {})
                rhs = _scale(pji.get(k0, {}), sign)
                checked += 1
                if lhs != rhs:
                    violations.append(
                        (("COMM", i, j, str(lam0)), _vec_text(rhs), _vec_text(lhs))
                    )
    return VerifierReport(axiom="COMM", violations=violations, checked=checked)


def associator_report(S: FramedAlgebra) -> VerifierReport:
    """Report-only sweep of the quadratic associator identity.

    For each triple and each channel mu' of the (i2*i3) product, compares
    i1*(i2*i3 restricted to mu') against the braided sum of (i1*i2)-channel
    products acting on i3.  The per-channel parity sign sits inside the sum;
    the overall sign is dropped when mu' is unpopulated (both sides must then
    vanish).  Violations are recorded, never raised.
    """
    violations: list = []
    checked = 0
    n = S.dim
    key_map = S.basis_sector_map()
    populated = set(key_map)
    bcache: dict = {}
    for i1 in range(n):
        lam1 = S.sectors[i1]
        for i2 in range(n):
            lam2 = S.sectors[i2]
            for i3 in range(n):
                lam3 = S.sectors[i3]
                lhs_by: dict[tuple[SectorKey, SectorKey], Vec] = {}
                cand0: set[SectorKey] = set()
                for kmp, vec in S.product_by_sector(i2, i3).items():
                    for k0, v in S.act_split(i1, vec).items():
                        lhs_by[(k0, kmp)] = v
                        cand0.add(k0)
                rhs_parts: dict[SectorKey, dict[SectorKey, Vec]] = {}
                for km, vec in S.product_by_sector(i1, i2).items():
                    parts = S.act_right_split(vec, i3)
                    rhs_parts[km] = parts
                    cand0.update(parts)
                for k0 in sorted(cand0):
                    lam0 = key_map[k0]
                    dom_mu = intermediates(lam0, lam3, lam1, lam2)
                    for mup in intermediates(lam0, lam1, lam2, lam3):
                        lhs = lhs_by.get((k0, mup.key()), {})
                        ssum: Vec = {}
                        for mu in dom_mu:
                            parts = rhs_parts.get(mu.key())
                            if not parts:
                                continue
                            v = parts.get(k0)
                            if not v:
                                continue
                            coef = _braid_coef(bcache, lam0, lam3, lam1, lam2, mu, mup)
                            coef = coef * mu.sign_s()
                            for k, c in v.items():
                                ssum[k] = ssum.get(k, ZERO) + coef * c
                        ssum = _clean(ssum)
                        checked += 1
                        if mup.key() in populated:
                            sign = mup.sign_s() * lam2.sign_s() * lam0.sign_s()
                            expected = _scale(ssum, sign)
                            if lhs != expected:
                                violations.append(
                                    (
                                        ("ASSOC2", i1, i2, i3, str(lam0), str(mup)),
                                        _vec_text(expected),
                                        _vec_text(lhs),
                                    )
                                )
                        elif lhs or ssum:
                            violations.append(
                                (
                                    ("ASSOC2", i1, i2, i3, str(lam0), str(mup)),
                                    _vec_text(ssum),
                                    _vec_text(lhs),
                                )
                            )
    return VerifierReport(axiom="ASSOC2", violations=violations, checked=checked)
