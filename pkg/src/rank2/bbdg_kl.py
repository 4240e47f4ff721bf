"""Decomposition multiplicities and the shifted stalk polynomials.

The multiplicity polynomial a(v, v'; w) is *defined* here through the
triangular-basis bridge: slice the weight at v', translate the slice to
a root (a1, a2) and a grid position (p, q), and read off the matching
coefficient of C[a1, a2] with the shift variable t standing for the
r-th power of v.  What keeps this honest is the collection of
non-circular identities tested downstream: the closed-form summation
over dominant pairs, the degree bounds, and the worked examples.
"""

from __future__ import annotations

from .errors import PreconditionViolated
from .laurent import LaurentPoly, ONE, ZERO, gauss_binomial
from .params import ExchangeParams
from .qtorus import TorusElement
from . import cluster_basis as cb
from .quiver_geometry import (DimV, WeightW, dims, dom_enumerate, fg_values,
                              is_l_dominant, nonempty_fiber, wperp)
from .support_region import is_imaginary_root, region_contains

_pminus_cache: dict[tuple, LaurentPoly] = {}


def clear_caches() -> None:
    _pminus_cache.clear()


def _params(r: int) -> ExchangeParams:
    if r < 1:
        raise PreconditionViolated("r must be a positive integer")
    return ExchangeParams.skew(r)


def a_poly(v, v_prime, w, r: int) -> LaurentPoly:
    """Multiplicity polynomial in t of the summand labelled v' in the
    decomposition attached to (v, w).

    The weight is sliced at v', the slice is translated to a root and a
    grid position, and the corresponding coefficient of the triangular
    basis element is pulled back along t -> v^r.  Zero when v' is not
    componentwise below v or the grid position falls outside the box.
    """
    params = _params(r)
    v = DimV(*v)
    v_prime = DimV(*v_prime)
    w = WeightW(*w)
    if not is_l_dominant(v_prime, w, r):
        raise PreconditionViolated(f"{tuple(v_prime)} is not dominant for {tuple(w)}")
    if v == v_prime:
        return ONE
    wp = wperp(w, v_prime, r)
    u1, u2 = v.v1 - v_prime.v1, v.v2 - v_prime.v2
    if u1 < 0 or u2 < 0:
        return ZERO
    a1 = wp.w1p - wp.w1
    a2 = r * max(a1, 0) + wp.w2p - wp.w2
    p, q = u2, max(a1, 0) - u1
    if q < 0:
        return ZERO
    table = cb.e_coefficients((a1, a2), params)
    coeff = table.get((p, q))
    if coeff is None:
        return ZERO
    # failure here would falsify the t = v^r structure; never masked
    return coeff.extract_power(r)


def closed_form(v, w, r: int) -> LaurentPoly:
    """The summation identity's closed right side:
    ``t^(d - d_tilde) [w2'+r*v1, v2]_t [w1', v1]_t``."""
    v1, v2 = v
    w1, w1p, w2, w2p = w
    dd = dims(v, w, r)
    out = gauss_binomial(w2p + r * v1, v2) * gauss_binomial(w1p, v1)
    return out.shift(dd.d - dd.d_tilde)


def p_minus(v, w, r: int) -> LaurentPoly:
    """Shifted stalk series at the origin for the stratum closure of
    (v, w); v must be dominant.

    Computed by the triangular recursion over dominant pairs below v:
    the closed form equals ``sum a(v, v'; w) P_-(v', w)``, and the v = v'
    term is isolated.  The minimal term is t^(-d_tilde) with coefficient 1.
    """
    v = DimV(*v)
    w = WeightW(*w)
    if not is_l_dominant(v, w, r):
        raise PreconditionViolated(f"{tuple(v)} is not dominant for {tuple(w)}")
    key = (tuple(v), tuple(w), r)
    got = _pminus_cache.get(key)
    if got is not None:
        return got
    if v == (0, 0):
        out = ONE
    else:
        out = closed_form(v, w, r)
        for vp in dom_enumerate(w, r):
            if vp == v or vp.v1 > v.v1 or vp.v2 > v.v2:
                continue
            a = a_poly(v, vp, w, r)
            if a:
                out = out - a * p_minus(vp, w, r)
    _pminus_cache[key] = out
    return out


def p_kl(v, w, r: int) -> LaurentPoly:
    """Polynomial normalization ``t^d_tilde * P_-``; nonnegative
    coefficients with constant term 1."""
    return p_minus(v, w, r).shift(dims(v, w, r).d_tilde)


def sum_ap_check(v, w, r: int) -> bool:
    """Exact comparison of ``sum over dominant v' of a(v,v';w) P_-(v',w)``
    against the closed form; v need not be dominant, only the
    nonemptiness bound is required."""
    v = DimV(*v)
    w = WeightW(*w)
    if not nonempty_fiber(v, w, r):
        raise PreconditionViolated(f"empty incidence variety for {tuple(v)}, {tuple(w)}")
    lhs = ZERO
    for vp in dom_enumerate(w, r):
        if vp.v1 > v.v1 or vp.v2 > v.v2:
            continue
        a = ONE if vp == v else a_poly(v, vp, w, r)
        if a:
            lhs = lhs + a * p_minus(vp, w, r)
    return lhs == closed_form(v, w, r)


def deg_ap_bound_check(v, w, r: int) -> bool:
    """Strict degree bound ``deg(a(v,v0;w) P_-(v0,w)) < f(v,w)`` for every
    nonzero dominant v0 below v; needs the framed shape w = (0,*,*,0),
    an imaginary (w1', w2) and f(v,w) >= 0."""
    v = DimV(*v)
    w = WeightW(*w)
    params = _params(r)
    if w.w1 or w.w2p:
        raise PreconditionViolated("weight must have shape (0, *, *, 0)")
    if not is_imaginary_root((w.w1p, w.w2), params):
        raise PreconditionViolated(f"({w.w1p}, {w.w2}) is not an imaginary root")
    f = fg_values(v, w, r).f
    if f < 0:
        raise PreconditionViolated("f(v, w) must be nonnegative")
    for v0 in dom_enumerate(w, r):
        if v0 == (0, 0) or v0.v1 > v.v1 or v0.v2 > v.v2:
            continue
        prod = a_poly(v, v0, w, r) * p_minus(v0, w, r)
        if prod and prod.degree() >= f:
            return False
    return True


def chi_M(w, r: int) -> TorusElement:
    """Torus-valued character of the standard object at w: the finite sum
    over v >= 0 of
    ``v^(r(d-d_tilde)) [w2'+r*v1, v2]_{v^r} [w1', v1]_{v^r}
    X^(w1-w1'+r*v2, w2-w2'-r*v1)``."""
    w = WeightW(*w)
    _params(r)
    out = TorusElement.zero()
    for v1 in range(w.w1p + 1):
        for v2 in range(w.w2p + r * v1 + 1):
            coeff = (gauss_binomial(w.w2p + r * v1, v2, r)
                     * gauss_binomial(w.w1p, v1, r))
            coeff = coeff.shift(-r * (w.w1 * v1 + w.w2 * v2))
            out = out + TorusElement.monomial(
                w.w1 - w.w1p + r * v2, w.w2 - w.w2p - r * v1, coeff)
    return out


def chi_L(w, r: int) -> TorusElement:
    """Torus-valued character of the simple object at w; by construction
    this is the triangular basis element at
    ``(w1'-w1, w2'-w2 + r*[w1'-w1]+)``."""
    w = WeightW(*w)
    params = _params(r)
    a1 = w.w1p - w.w1
    a2 = w.w2p - w.w2 + r * max(a1, 0)
    return cb.triangular_basis((a1, a2), params)


def chi_L_from_multiplicities(w, r: int) -> TorusElement:
    """Reassemble the simple character from multiplicity polynomials; agrees
    with :func:`chi_L` and exercises the full (v) <-> (p, q) dictionary."""
    w = WeightW(*w)
    out = TorusElement.zero()
    a1 = w.w1p - w.w1
    a2 = r * max(a1, 0) + w.w2p - w.w2
    for v1 in range(max(a1, 0) + 1):
        for v2 in range(max(a2, 0) + 1):
            a = a_poly((v1, v2), (0, 0), w, r)
            if a:
                out = out + TorusElement.monomial(
                    w.w1 - w.w1p + r * v2, w.w2 - w.w2p - r * v1,
                    a.substitute_power(r))
    return out


def weight_floor(w) -> WeightW:
    """The balanced part (min(w1,w1') twice, min(w2,w2') twice)."""
    w = WeightW(*w)
    m1, m2 = min(w.w1, w.w1p), min(w.w2, w.w2p)
    return WeightW(m1, m1, m2, m2)


def weight_reduced(w) -> WeightW:
    """The reduced part w - weight_floor(w); kills one entry of each pair."""
    w = WeightW(*w)
    fl = weight_floor(w)
    return WeightW(w.w1 - fl.w1, w.w1p - fl.w1p, w.w2 - fl.w2, w.w2p - fl.w2p)


def bbdg_support(v, w, v_prime, r: int) -> bool:
    """Support predicate for the summand labelled v': nonzero multiplicity
    iff v' is componentwise between 0 and v and the translated grid point
    lies in the support region of the translated root.

    Requires the framed shape w = (0, w1', w2, 0) with 0 <= v1 <= w1' and
    0 <= v2 <= r*v1.
    """
    params = _params(r)
    v = DimV(*v)
    w = WeightW(*w)
    vp = DimV(*v_prime)
    if w.w1 or w.w2p:
        raise PreconditionViolated("weight must have shape (0, *, *, 0)")
    if not (0 <= v.v1 <= w.w1p and 0 <= v.v2 <= r * v.v1):
        raise PreconditionViolated(f"{tuple(v)} outside the framed box of {tuple(w)}")
    if not (0 <= vp.v1 <= v.v1 and 0 <= vp.v2 <= v.v2):
        return False
    a1 = w.w1p - r * vp.v2
    a2 = r * max(a1, 0) + r * vp.v1 - w.w2
    p = v.v2 - vp.v2
    q = max(a1, 0) - v.v1 + vp.v1
    return region_contains((a1, a2), p, q, params)
