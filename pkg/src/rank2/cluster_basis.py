"""Cluster variables, standard monomials and the triangular basis.

The triangular basis element C[a] is pinned down by two properties: it
is bar-invariant, and it differs from the standard monomial M[a] by a
combination of lower standard monomials with coefficients in v*Z[v].
Uniqueness lets us construct it by the usual correction loop: repeatedly
cancel the maximal bar-defect of the current candidate against a
standard monomial.  For a outside the imaginary cone the element is a
cluster monomial and can be assembled directly from two adjacent
cluster variables; both routes must agree and are cross-checked in the
test suite.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading

from .errors import (CapExceeded, ConvergenceFailure, MalformedSupport,
                     NonTerminating, PreconditionViolated)
from .laurent import LaurentPoly, ONE, ZERO, gauss_binomial
from .params import ExchangeParams
from .qtorus import TorusElement
from .support_region import is_imaginary_root, real_decompose

RootVector = tuple[int, int]
StandardExpansion = dict[RootVector, LaurentPoly]

_EXPAND_STEP_LIMIT = 200_000
_KL_STEP_LIMIT = 100_000

_lock = threading.Lock()
_cluster_cache: dict[tuple, TorusElement] = {}
_power_cache: dict[tuple, TorusElement] = {}
_standard_cache: dict[tuple, TorusElement] = {}
_triangular_cache: dict[tuple, TorusElement] = {}
_etable_cache: dict[tuple, dict[tuple[int, int], LaurentPoly]] = {}


def clear_caches() -> None:
    with _lock:
        _cluster_cache.clear()
        _power_cache.clear()
        _standard_cache.clear()
        _triangular_cache.clear()
        _etable_cache.clear()


def _cache_get(cache, key):
    with _lock:
        return cache.get(key)


def _cache_put(cache, key, value):
    with _lock:
        cache[key] = value


def cluster_variable(m: int, params: ExchangeParams) -> TorusElement:
    """The m-th cluster variable expressed in the initial torus.

    X_1 = X^(1,0) and X_2 = X^(0,1); other indices are produced by exact
    division in the exchange relation
    ``X_{m+1} X_{m-1} = v^e X_m^e + 1`` (e = b for odd m, c for even m).
    """
    if abs(m) > params.m_cap:
        raise CapExceeded(f"cluster index {m} beyond cap {params.m_cap}")
    key = (params.b, params.c, m)
    got = _cache_get(_cluster_cache, key)
    if got is not None:
        return got
    if m == 1:
        out = TorusElement.monomial(1, 0)
    elif m == 2:
        out = TorusElement.monomial(0, 1)
    elif m >= 3:
        mid = m - 1
        e = params.b if mid % 2 == 1 else params.c
        f = cluster_power(mid, e, params).scale(LaurentPoly.term(1, e)) + 1
        out = f.div_right(cluster_variable(m - 2, params))
    else:
        mid = m + 1
        e = params.b if mid % 2 == 1 else params.c
        f = cluster_power(mid, e, params).scale(LaurentPoly.term(1, e)) + 1
        out = f.div_left(cluster_variable(m + 2, params))
    _cache_put(_cluster_cache, key, out)
    return out


def cluster_power(m: int, e: int, params: ExchangeParams) -> TorusElement:
    """Cached power of a cluster variable; the exchange recursion and the
    relation checks share this work."""
    key = (params.b, params.c, m, e)
    got = _cache_get(_power_cache, key)
    if got is None:
        got = cluster_variable(m, params) ** e
        _cache_put(_power_cache, key, got)
    return got


def cluster_monomial(n: int, s1: int, s2: int, params: ExchangeParams) -> TorusElement:
    """The bar-invariant monomial ``v^(s1*s2) X_n^s1 X_{n+1}^s2``."""
    if s1 < 0 or s2 < 0:
        raise ValueError("cluster monomial exponents must be nonnegative")
    out = cluster_variable(n, params) ** s1
    if s2:
        out = out * (cluster_variable(n + 1, params) ** s2)
    return out.scale(LaurentPoly.term(1, s1 * s2))


def standard_monomial(a: RootVector, params: ExchangeParams) -> TorusElement:
    """The standard (PBW-style) basis element at a = (a1, a2):

    ``v^(a1*a2) X_3^[a1]+ X_1^[-a1]+ X_2^[-a2]+ X_0^[a2]+``.

    Its minimal monomial is X^(-a1,-a2) with coefficient 1, and every
    monomial has the shape X^(b*p - a1, c*q - a2) with p, q >= 0.
    """
    a1, a2 = a
    key = (params.b, params.c, a1, a2)
    got = _cache_get(_standard_cache, key)
    if got is not None:
        return got
    m1, m2 = max(-a1, 0), max(-a2, 0)
    # bare product X_1^m1 X_2^m2 = v^(-m1*m2) X^(m1,m2)
    out = TorusElement.monomial(m1, m2, LaurentPoly.term(1, -m1 * m2))
    if a1 > 0:
        out = (cluster_variable(3, params) ** a1) * out
    if a2 > 0:
        out = out * (cluster_variable(0, params) ** a2)
    out = out.scale(LaurentPoly.term(1, a1 * a2))
    _cache_put(_standard_cache, key, out)
    return out


def expand_in_standard_basis(f: TorusElement, params: ExchangeParams) -> StandardExpansion:
    """Coordinates of ``f`` in the standard-monomial basis.

    Elimination from the top: the monomial X^(e1,e2) with maximal label
    (-e1,-e2) is matched against the standard monomial of that label,
    whose subtraction only introduces strictly smaller labels.
    """
    rem = f
    out: StandardExpansion = {}
    steps = 0
    while rem:
        steps += 1
        if steps > _EXPAND_STEP_LIMIT:
            raise NonTerminating("standard-basis elimination exceeded its step bound")
        e1, e2 = max((-k[0], -k[1]) for k in rem.support())
        coeff = rem.coeff(-e1, -e2)
        out[(e1, e2)] = coeff
        rem = rem - standard_monomial((e1, e2), params).scale(coeff)
    return out


def reconstruct_from_expansion(expansion: StandardExpansion,
                               params: ExchangeParams) -> TorusElement:
    out = TorusElement.zero()
    for a, coeff in expansion.items():
        out = out + standard_monomial(a, params).scale(coeff)
    return out


def _disk_cache_path(key: tuple) -> str | None:
    root = os.environ.get("RANK2_CACHE_DIR")
    if not root:
        return None
    digest = hashlib.sha256(json.dumps(key).encode()).hexdigest()
    return os.path.join(root, f"{digest}.json")


def triangular_basis(a: RootVector, params: ExchangeParams,
                     method: str = "auto") -> TorusElement:
    """The bar-invariant triangular basis element C[a].

    ``method`` picks the construction: "kl" runs the correction loop
    from the standard monomial, "monomial" requires a real root and
    builds the cluster monomial, "auto" dispatches on the root type.
    All routes yield the same element.
    """
    a1, a2 = a
    if abs(a1) > params.a_cap or abs(a2) > params.a_cap:
        raise CapExceeded(f"root {a} beyond cap {params.a_cap}")
    if method not in ("auto", "kl", "monomial"):
        raise ValueError(f"unknown method {method!r}")
    key = (params.b, params.c, a1, a2, method if method == "kl" else "auto")
    got = _cache_get(_triangular_cache, key)
    if got is not None:
        return got
    path = _disk_cache_path(key)
    if path and os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            out = TorusElement.from_json(json.load(fh))
        _cache_put(_triangular_cache, key, out)
        return out

    imaginary = is_imaginary_root(a, params)
    if method == "monomial" and imaginary:
        raise PreconditionViolated(f"{a} is imaginary; no cluster-monomial form")
    if method == "kl" or imaginary:
        out = _triangular_by_correction(a, params)
    else:
        try:
            out = cluster_monomial(*real_decompose(a, params), params)
        except CapExceeded:
            if method == "monomial":
                raise
            out = _triangular_by_correction(a, params)

    _cache_put(_triangular_cache, key, out)
    if path:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(out.to_json(), fh)
        os.replace(tmp, path)
    return out


def _triangular_by_correction(a: RootVector, params: ExchangeParams) -> TorusElement:
    cur = standard_monomial(a, params)
    steps = 0
    while True:
        delta = cur.bar() - cur
        if not delta:
            return cur
        steps += 1
        if steps > _KL_STEP_LIMIT:
            raise ConvergenceFailure(f"correction loop did not stabilize for {a}")
        # the lex-greatest label is maximal for the componentwise order
        label = max((-k[0], -k[1]) for k in delta.support())
        defect = delta.coeff(-label[0], -label[1])
        # bar-antisymmetry of the defect is structural; its positive part
        # gamma satisfies bar(gamma) - gamma = -defect
        gamma = defect.positive_part()
        if gamma - gamma.bar() != defect:
            raise ConvergenceFailure(f"non-antisymmetric defect at {label} for {a}")
        cur = cur + standard_monomial(label, params).scale(gamma)


def e_coefficients(a: RootVector, params: ExchangeParams,
                   method: str = "auto") -> dict[tuple[int, int], LaurentPoly]:
    """Coefficients e(p, q) of C[a] read off against the monomial grid
    ``X^(b*p - a1, c*q - a2)`` with 0 <= p <= [a2]+ and 0 <= q <= [a1]+."""
    a1, a2 = a
    key = (params.b, params.c, a1, a2)
    if method == "auto":
        got = _cache_get(_etable_cache, key)
        if got is not None:
            return got
    elem = triangular_basis(a, params, method=method)
    b, c = params.b, params.c
    out: dict[tuple[int, int], LaurentPoly] = {}
    for (e1, e2) in elem.support():
        num1, num2 = e1 + a1, e2 + a2
        if num1 % b or num2 % c:
            raise MalformedSupport(
                f"monomial X^({e1},{e2}) of C[{a1},{a2}] off the (b,c) grid")
        p, q = num1 // b, num2 // c
        if not (0 <= p <= max(a2, 0) and 0 <= q <= max(a1, 0)):
            raise MalformedSupport(
                f"index ({p},{q}) outside the support box of C[{a1},{a2}]")
        out[(p, q)] = elem.coeff(e1, e2)
    if method == "auto":
        _cache_put(_etable_cache, key, out)
    return out


def mstar(w, params: ExchangeParams) -> TorusElement:
    """The four-factor standard monomial
    ``v^((w1-w1')(w2'-w2)) X_2^w2 X_0^w2' X_1^w1 X_{-1}^w1'``
    attached to a weight tuple; needs b = c."""
    if not params.skew_symmetric:
        raise PreconditionViolated("mstar needs skew-symmetric parameters")
    w1, w1p, w2, w2p = w
    if min(w1, w1p, w2, w2p) < 0:
        raise ValueError("weight entries must be nonnegative")
    out = cluster_variable(2, params) ** w2
    out = out * (cluster_variable(0, params) ** w2p)
    out = out * (cluster_variable(1, params) ** w1)
    out = out * (cluster_variable(-1, params) ** w1p)
    return out.scale(LaurentPoly.term(1, (w1 - w1p) * (w2p - w2)))


def _series(coeffs: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
    return {k: v for k, v in coeffs.items() if v}


def _series_mul(x: dict[int, LaurentPoly], y: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
    out: dict[int, LaurentPoly] = {}
    for i, f in x.items():
        for j, g in y.items():
            k = i + j
            acc = out.get(k)
            total = f * g if acc is None else acc + f * g
            if total:
                out[k] = total
            elif k in out:
                del out[k]
    return out


def verify_sigma_relation(a: RootVector, p: int, params: ExchangeParams) -> bool:
    """Check the reflection identity linking the column p of C[a] with the
    column a2 - p of C[b*a2 - a1, a2].

    With E(t) = sum_q e(p,q) t^q and E'(t) the matching column of the
    reflected element, the identity reads E' = B * E for a1 <= b*p and
    B * E' = E for a1 >= b*p, where B is the binomial series of
    |a1 - b*p| in the c-scaled balanced binomials.  Only real roots are
    accepted; the imaginary case is not covered by the identity.
    """
    if is_imaginary_root(a, params):
        raise PreconditionViolated(f"{a} is an imaginary root")
    a1, a2 = a
    b, c = params.b, params.c
    aref = (b * a2 - a1, a2)
    e = e_coefficients(a, params)
    eref = e_coefficients(aref, params)
    pref = a2 - p
    col = _series({q: f for (pp, q), f in e.items() if pp == p})
    col_ref = _series({q: f for (pp, q), f in eref.items() if pp == pref})
    n = abs(a1 - b * p)
    binom = {l: gauss_binomial(n, l, c) for l in range(n + 1)}
    if a1 <= b * p:
        return col_ref == _series_mul(binom, col)
    return _series_mul(binom, col_ref) == col
