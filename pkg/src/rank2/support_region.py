"""Root classification, denominator vectors and support regions.

All geometry here is exact integer arithmetic: membership in a polygon
is decided by cross-product sign tests, never floating point, because
boundary lattice points are exactly the interesting cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import CapExceeded, NotFound, PreconditionViolated
from .params import ExchangeParams

RootVector = tuple[int, int]


class DenomVector(NamedTuple):
    d1: int
    d2: int


def is_imaginary_root(a: RootVector, params: ExchangeParams) -> bool:
    """True iff both coordinates are positive and the root quadratic form
    ``c*a1^2 - b*c*a1*a2 + b*a2^2`` is nonpositive."""
    a1, a2 = a
    if a1 <= 0 or a2 <= 0:
        return False
    b, c = params.b, params.c
    return c * a1 * a1 - b * c * a1 * a2 + b * a2 * a2 <= 0


def d_value(p: int, q: int, a: RootVector, params: ExchangeParams) -> int:
    """The quadratic support bound ``c*a1*q + b*a2*p - b*p^2 - b*c*p*q - c*q^2``."""
    a1, a2 = a
    b, c = params.b, params.c
    return c * a1 * q + b * a2 * p - b * p * p - b * c * p * q - c * q * q


_DVEC_CACHE: dict[tuple[int, int, int], DenomVector] = {}


def denominator_vector(n: int, params: ExchangeParams) -> DenomVector:
    """Denominator vector of the n-th cluster variable.

    Seeded by d_1 = (-1, 0), d_2 = (0, -1) and extended both ways by
    ``d_{n+1} + d_{n-1} = e [d_n]_+`` with e = b for odd n and e = c for
    even n.
    """
    if abs(n) > params.scan_cap + 2:
        raise CapExceeded(f"denominator vector index {n} beyond scan window")
    b, c = params.b, params.c
    key = (b, c, n)
    got = _DVEC_CACHE.get(key)
    if got is not None:
        return got
    if n == 1:
        out = DenomVector(-1, 0)
    elif n == 2:
        out = DenomVector(0, -1)
    elif n > 2:
        prev = denominator_vector(n - 1, params)
        prev2 = denominator_vector(n - 2, params)
        e = b if (n - 1) % 2 == 1 else c
        out = DenomVector(e * max(prev.d1, 0) - prev2.d1,
                          e * max(prev.d2, 0) - prev2.d2)
    else:
        nxt = denominator_vector(n + 1, params)
        nxt2 = denominator_vector(n + 2, params)
        e = b if (n + 1) % 2 == 1 else c
        out = DenomVector(e * max(nxt.d1, 0) - nxt2.d1,
                          e * max(nxt.d2, 0) - nxt2.d2)
    _DVEC_CACHE[key] = out
    return out


def real_decompose(a: RootVector, params: ExchangeParams) -> tuple[int, int, int]:
    """Write a real root as ``s1 d_n + s2 d_{n+1}`` with s1, s2 >= 0.

    Canonicalized so that s1 > 0 whenever a != (0, 0); a point on the ray
    of d_{n+1} is reported as (n+1, s, 0).  The window |n - 1| <= scan_cap
    is scanned outward from n = 1, so the smallest admissible |n - 1| wins.
    """
    if is_imaginary_root(a, params):
        raise PreconditionViolated(f"{a} is an imaginary root")
    a1, a2 = a
    if (a1, a2) == (0, 0):
        return (1, 0, 0)
    for off in _scan_offsets(params.scan_cap):
        n = 1 + off
        dn = denominator_vector(n, params)
        dn1 = denominator_vector(n + 1, params)
        # the 2x2 system has determinant d1_n*d2_{n+1} - d1_{n+1}*d2_n = 1
        s1 = a1 * dn1.d2 - a2 * dn1.d1
        s2 = dn.d1 * a2 - dn.d2 * a1
        if s1 > 0 and s2 >= 0:
            return (n, s1, s2)
    raise NotFound(f"no decomposition for {a} within the scan window")


def _scan_offsets(cap: int):
    yield 0
    for d in range(1, cap + 1):
        yield d
        yield -d


@dataclass(frozen=True)
class RegionDescription:
    """Support region of a basis element.

    ``vertices`` are lattice points listed counterclockwise starting at
    the origin; they are empty for the curved (imaginary-root) region,
    which is instead carried by ``params = (a1, a2, b, c)``.
    """

    kind: str  # point | segment-horizontal | segment-vertical | triangle | quadrilateral | curved
    vertices: tuple[tuple[int, int], ...]
    params: tuple[int, int, int, int] | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": [list(p) for p in self.vertices],
            "params": (None if self.params is None else
                       {"a1": self.params[0], "a2": self.params[1],
                        "b": self.params[2], "c": self.params[3]}),
        }


def region(a: RootVector, params: ExchangeParams) -> RegionDescription:
    """The region carrying the support of the basis element at ``a``."""
    a1, a2 = a
    if is_imaginary_root(a, params):
        return RegionDescription("curved", (), (a1, a2, params.b, params.c))
    n, s1, s2 = real_decompose(a, params)
    dn = denominator_vector(n, params)
    dn1 = denominator_vector(n + 1, params)
    pos = lambda x: max(x, 0)
    o = (0, 0)
    pa = (s1 * pos(dn.d2) + s2 * pos(dn1.d2), 0)
    pb = (s2 * pos(dn1.d2), s1 * pos(dn.d1))
    pc = (0, s1 * pos(dn.d1) + s2 * pos(dn1.d1))
    if pa == o and pc == o:
        return RegionDescription("point", (o,))
    if pc == o:
        return RegionDescription("segment-horizontal", (o, pa))
    if pa == o:
        return RegionDescription("segment-vertical", (o, pc))
    if pb == pc or pb == pa:
        return RegionDescription("triangle", (o, pa, pc))
    return RegionDescription("quadrilateral", (o, pa, pb, pc))


def region_contains(a: RootVector, p: int, q: int, params: ExchangeParams) -> bool:
    """Exact membership test of the lattice point (p, q) in the region."""
    if is_imaginary_root(a, params):
        return p >= 0 and q >= 0 and d_value(p, q, a, params) >= 0
    desc = region(a, params)
    if desc.kind == "point":
        return (p, q) == (0, 0)
    if desc.kind == "segment-horizontal":
        return q == 0 and 0 <= p <= desc.vertices[1][0]
    if desc.kind == "segment-vertical":
        return p == 0 and 0 <= q <= desc.vertices[1][1]
    verts = desc.vertices
    m = len(verts)
    for i in range(m):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % m]
        # left-of-edge test for the counterclockwise boundary
        if (x1 - x0) * (q - y0) - (y1 - y0) * (p - x0) < 0:
            return False
    return True
