"""Connection (braiding) matrices for the c = 1/2 slot labels.

single_B is the transcribed case table for one slot; multi_B_product takes
slotwise products with conjugated right-moving factors; multi_B_closed is the
closed formula in terms of the code words.  The two multi-slot routes are
independent and are cross-validated in the tests, not collapsed.
"""

from __future__ import annotations

from fractions import Fraction

from . import cyclo16
from .bitcode import Word
from .cyclo16 import Cyclo
from .sectors import Sector, intermediates

H0 = Fraction(0)
H_HALF = Fraction(1, 2)
H_16 = Fraction(1, 16)
LABELS = (H0, H_HALF, H_16)


def fuse1(h1: Fraction, h2: Fraction) -> tuple[Fraction, ...]:
    """One-slot fusion set."""
    if h1 not in LABELS or h2 not in LABELS:
        raise ValueError(f"bad slot labels {h1}, {h2}")
    if h1 == H0:
        return (h2,)
    if h2 == H0:
        return (h1,)
    if h1 == h2 == H_HALF:
        return (H0,)
    if H_16 in (h1, h2) and H_HALF in (h1, h2):
        return (H_16,)
    return (H0, H_HALF)


def intermediates1(
    h0: Fraction, h1: Fraction, h2: Fraction, h3: Fraction
) -> tuple[Fraction, ...]:
    return tuple(h for h in fuse1(h2, h3) if h0 in fuse1(h1, h))


def _phase(q: Fraction) -> Cyclo:
    """exp(i pi q) for q a multiple of 1/8."""
    k = q * 8
    if k.denominator != 1:
        raise ValueError(f"phase exponent {q} is not a multiple of 1/8")
    return Cyclo.zeta_pow(k.numerator)


def single_B(
    h0: Fraction,
    h1: Fraction,
    h2: Fraction,
    h3: Fraction,
    h: Fraction,
    hp: Fraction,
) -> Cyclo:
    """One-slot connection coefficient B^{h,hp}_{h0,h1,h2,h3}."""
    if h not in intermediates1(h0, h1, h2, h3):
        raise ValueError(f"{h} is not an intermediate of ({h0},{h1},{h2},{h3})")
    if hp not in intermediates1(h0, h2, h1, h3):
        raise ValueError(f"{hp} is not a swapped intermediate of ({h0},{h1},{h2},{h3})")
    if h0 == H0:
        return _phase(h3 - h1 - h2)
    if h1 == H0 or h2 == H0:
        return cyclo16.ONE
    if h3 == H0:
        return _phase(h0 - h1 - h2)
    # all four labels nonzero from here on
    if (h1, h2) == (H_HALF, H_HALF):
        return cyclo16.MINUS_ONE
    if {h1, h2} == {H_HALF, H_16}:
        if H_HALF in (h0, h3):
            return cyclo16.I
        return -cyclo16.I
    # middle pair (1/16, 1/16)
    if h0 != H_16 and h3 != H_16:
        inner = cyclo16.ONE if h0 == h3 else cyclo16.I
    elif h0 == h3 == H_16:
        inner = cyclo16.HALF_ONE_PLUS_I if h == hp else cyclo16.HALF_ONE_MINUS_I
    else:
        raise ValueError(f"no connection rule for ({h0},{h1},{h2},{h3})")
    return cyclo16.EXP_MINUS_PI_I_8 * inner


def multi_B_product(
    lam0: Sector,
    lam1: Sector,
    lam2: Sector,
    lam3: Sector,
    lam: Sector,
    lamp: Sector,
) -> Cyclo:
    """Slotwise product route: left slots contribute single_B factors, right
    slots their conjugates."""
    if lam not in intermediates(lam0, lam1, lam2, lam3):
        raise ValueError("lam is not an intermediate sector")
    if lamp not in intermediates(lam0, lam2, lam1, lam3):
        raise ValueError("lamp is not a swapped intermediate sector")
    out = cyclo16.ONE
    l, n = lam0.l, lam0.l + lam0.r
    for i in range(n):
        factor = single_B(
            lam0.slot(i),
            lam1.slot(i),
            lam2.slot(i),
            lam3.slot(i),
            lam.slot(i),
            lamp.slot(i),
        )
        out = out * (factor if i < l else factor.conj())
    return out


def multi_B_closed(
    d0: Word,
    d1: Word,
    d2: Word,
    d3: Word,
    c0: Word,
    c1: Word,
    c2: Word,
    c3: Word,
    c: Word,
    cp: Word,
) -> Cyclo:
    """Closed formula route.  The intermediates are lam = (d2+d3, c) and
    lamp = (d1+d3, cp); signed weights throughout."""
    lam0, lam1 = Sector(d0, c0), Sector(d1, c1)
    lam2, lam3 = Sector(d2, c2), Sector(d3, c3)
    if d0 != d1 + d2 + d3:
        raise ValueError("need d0 = d1 + d2 + d3")
    lam = Sector(d2 + d3, c)
    lamp = Sector(d1 + d3, cp)
    if lam not in intermediates(lam0, lam1, lam2, lam3):
        raise ValueError("c does not label an intermediate sector")
    if lamp not in intermediates(lam0, lam2, lam1, lam3):
        raise ValueError("cp does not label a swapped intermediate sector")

    c03 = c0 + c3
    d12 = d1 * d2
    d123 = d12 * d3
    sign_exp = (c1 * c2).weight() + (d1 * c2 * c03).weight() + (d2 * c1 * c03).weight()
    i_exp = -(d1 * c2).weight() - (d2 * c1).weight() + (d12 * c03).weight()
    out = Cyclo.i_pow(i_exp)
    if sign_exp & 1:
        out = -out
    out = out * Cyclo.zeta_pow(-d12.weight())
    kl, kr = d123.weight_left(), d123.weight_right()
    if kl:
        out = out * cyclo16.HALF_ONE_PLUS_I ** kl
    if kr:
        out = out * cyclo16.HALF_ONE_MINUS_I ** kr
    out = out * Cyclo.i_pow(-(d123 * (c + cp)).weight())
    return out
