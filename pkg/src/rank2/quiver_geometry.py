"""Combinatorial invariants of the graded quiver-variety picture.

Weights are 4-tuples w = (w1, w1', w2, w2'), dimension data are pairs
v = (v1, v2).  Nothing geometric is materialized; every operation is an
exact integer formula, so this module is safe everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import EmptyVariety, NegativeEntry, OutOfRange


class WeightW(NamedTuple):
    w1: int
    w1p: int
    w2: int
    w2p: int


class DimV(NamedTuple):
    v1: int
    v2: int


def _w(w) -> WeightW:
    w = WeightW(*map(int, w))
    if min(w) < 0:
        raise ValueError("weight entries must be nonnegative")
    return w


def _v(v) -> DimV:
    v = DimV(*map(int, v))
    if min(v) < 0:
        raise ValueError("dimension entries must be nonnegative")
    return v


def cq(v, r: int) -> tuple[int, int, int, int]:
    """Cartan-type pairing of a dimension pair: (v1-r*v2, v1, v2, v2-r*v1)."""
    v1, v2 = v
    return (v1 - r * v2, v1, v2, v2 - r * v1)


def is_l_dominant(v, w, r: int) -> bool:
    """All four entries of w - cq(v) are nonnegative."""
    v1, v2 = v
    w1, w1p, w2, w2p = w
    return (w1 - v1 + r * v2 >= 0 and w1p - v1 >= 0
            and w2 - v2 >= 0 and w2p - v2 + r * v1 >= 0)


def dom_enumerate(w, r: int) -> list[DimV]:
    """All dominant pairs for w, sorted lexicographically.

    Dominance forces v1 <= w1' and v2 <= w2, so the bounding box scan is
    exhaustive.
    """
    w = _w(w)
    out = []
    for v1 in range(w.w1p + 1):
        for v2 in range(w.w2 + 1):
            if is_l_dominant((v1, v2), w, r):
                out.append(DimV(v1, v2))
    return out


def wperp(w, v0, r: int) -> WeightW:
    """Slice weight w - cq(v0); raises if any entry is negative
    (equivalently, v0 is not dominant for w)."""
    w = _w(w)
    v1, v2 = _v(v0)
    out = (w.w1 - v1 + r * v2, w.w1p - v1, w.w2 - v2, w.w2p - v2 + r * v1)
    if min(out) < 0:
        raise NegativeEntry(f"slice of {tuple(w)} at {(v1, v2)} has a negative entry")
    return WeightW(*out)


def vbar(v, w, r: int) -> DimV:
    """Componentwise-minimum formula for the largest dominant pair below v:

    ``(min(v1, w1', w1+r*v2, w1+r*w2), min(v2, w2, w2'+r*v1, w2'+r*w1'))``.
    """
    v1, v2 = _v(v)
    w1, w1p, w2, w2p = _w(w)
    return DimV(min(v1, w1p, w1 + r * v2, w1 + r * w2),
                min(v2, w2, w2p + r * v1, w2p + r * w1p))


def nonempty_fiber(v, w, r: int) -> bool:
    """Nonemptiness of the incidence variety: 0 <= v1 <= w1' and
    0 <= v2 <= w2' + r*v1."""
    v1, v2 = v
    w1, w1p, w2, w2p = w
    return 0 <= v1 <= w1p and 0 <= v2 <= w2p + r * v1


@dataclass(frozen=True)
class Dims:
    d: int
    d_tilde: int
    dim_affine: int
    dim_g: int | None
    dim_g_tilde: int | None


def dims(v, w, r: int) -> Dims:
    """Dimension record of the incidence varieties over (v, w).

    ``d`` is the projective incidence dimension, ``d_tilde`` adds the
    vector-bundle rank w1*v1 + w2*v2, ``dim_affine`` is d_tilde at vbar,
    and the two Grassmannian-product entries exist only when v2 <= w2.
    """
    v = _v(v)
    w = _w(w)
    if not nonempty_fiber(v, w, r):
        raise EmptyVariety(f"empty incidence variety for v={tuple(v)}, w={tuple(w)}")
    v1, v2 = v
    w1, w1p, w2, w2p = w
    d = -v1 * v1 + r * v1 * v2 - v2 * v2 + v1 * w1p + v2 * w2p
    d_tilde = d + w1 * v1 + w2 * v2
    vb = vbar(v, w, r)
    dim_affine = (-vb.v1 ** 2 + r * vb.v1 * vb.v2 - vb.v2 ** 2
                  + vb.v1 * (w1 + w1p) + vb.v2 * (w2 + w2p))
    if v2 <= w2:
        dim_g = v1 * (w1p - v1) + v2 * (w2 - v2)
        dim_g_tilde = dim_g + w1 * v1 + w2p * v2 + r * v1 * v2
    else:
        dim_g = dim_g_tilde = None
    return Dims(d, d_tilde, dim_affine, dim_g, dim_g_tilde)


def swap(v, w) -> tuple[DimV, WeightW]:
    v1, v2 = v
    w1, w1p, w2, w2p = w
    return DimV(v2, v1), WeightW(w2p, w2, w1p, w1)


@dataclass(frozen=True)
class FG:
    f: int
    f_swap: int
    g: int


def fg_values(v, w, r: int) -> FG:
    """Degree-bound quantities attached to (v, w):

    f = 2d - d_tilde, f_swap is f after the coordinate swap, and g is the
    analogue coming from the Grassmannian-product desingularization.
    """
    v1, v2 = _v(v)
    w1, w1p, w2, w2p = _w(w)
    quad = -v1 * v1 + r * v1 * v2 - v2 * v2
    f = quad + v1 * (w1p - w1) + v2 * (w2p - w2)
    f_swap = quad + v1 * (w1 - w1p) + v2 * (w2 - w2p)
    g = (-v1 * v1 - r * v1 * v2 - v2 * v2
         + v1 * (w1p - w1) + v2 * (w2 - w2p))
    return FG(f, f_swap, g)


def _gr(k: int, n: int) -> tuple[tuple[int, int], int | None]:
    if k < 0 or n < 0 or k > n:
        return (k, n), None
    return (k, n), k * (n - k)


@dataclass(frozen=True)
class FiberDims:
    """Grassmannian fiber data of the desingularization maps over one
    stratum; each entry is ((k, n), dim) with dim None for an empty
    Grassmannian."""

    pi_base: tuple[tuple[int, int], int | None]
    pi_fiber: tuple[tuple[int, int], int | None]
    pi_total: int | None
    p1: tuple[tuple[int, int], int | None]
    p2: tuple[tuple[int, int], int | None]
    p2_prime: tuple[tuple[int, int], int | None]


def fiber_dims(v, w, r: int, stratum) -> FiberDims:
    """Fibers over the stratum labelled by v' = (s, t):

    the full projection fibers in a Gr(v2-t, w2'+r*v1-t)-bundle over
    Gr(v1-s, w1'-s); the two-step factorizations contribute
    Gr(v1-s, w1'-s), Gr(v2-t, w2'+r*v1-t) and Gr(v2-t, w2-t).
    """
    v1, v2 = _v(v)
    w1, w1p, w2, w2p = _w(w)
    s, t = _v(stratum)
    if s > v1 or t > v2:
        raise OutOfRange(f"stratum {(s, t)} not below v = {(v1, v2)}")
    base = _gr(v1 - s, w1p - s)
    fiber = _gr(v2 - t, w2p + r * v1 - t)
    total = None if base[1] is None or fiber[1] is None else base[1] + fiber[1]
    return FiberDims(
        pi_base=base,
        pi_fiber=fiber,
        pi_total=total,
        p1=_gr(v1 - s, w1p - s),
        p2=_gr(v2 - t, w2p + r * v1 - t),
        p2_prime=_gr(v2 - t, w2 - t),
    )
