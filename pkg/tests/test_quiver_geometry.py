import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_dominant
from rank2 import quiver_geometry as qg
from rank2.errors import EmptyVariety, NegativeEntry, OutOfRange

weights = st.tuples(*[st.integers(0, 5)] * 4)
dimpairs = st.tuples(st.integers(0, 6), st.integers(0, 6))
ranks = st.integers(1, 4)


def test_l_dominant_examples():
    assert qg.is_l_dominant((2, 2), (0, 4, 4, 0), 3)
    assert qg.is_l_dominant((0, 0), (1, 0, 2, 5), 2)
    assert not qg.is_l_dominant((1, 2), (0, 1, 1, 0), 2)


def test_cq_examples():
    assert qg.cq((1, 1), 3) == (-2, 1, 1, -2)
    assert qg.cq((0, 0), 5) == (0, 0, 0, 0)
    assert qg.cq((1, 2), 3) == (-5, 1, 2, -1)


def test_dom_enumerate_examples():
    assert qg.dom_enumerate((0, 1, 1, 0), 2) == [(0, 0), (1, 1)]
    assert qg.dom_enumerate((0, 1, 1, 0), 3) == [(0, 0), (1, 1)]
    assert qg.dom_enumerate((0, 0, 0, 0), 2) == [(0, 0)]
    got = qg.dom_enumerate((0, 4, 4, 0), 3)
    below = [v for v in got if v <= (2, 2)]
    assert below == [(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]


@given(weights, ranks)
def test_dom_enumerate_matches_oracle(w, r):
    assert [tuple(v) for v in qg.dom_enumerate(w, r)] == brute_dominant(w, r)


def test_wperp_examples():
    assert qg.wperp((0, 4, 4, 0), (1, 1), 3) == (2, 3, 3, 2)
    assert qg.wperp((1, 2, 3, 4), (0, 0), 2) == (1, 2, 3, 4)
    for r in (2, 3, 5):
        assert qg.wperp((0, 1, 1, 0), (1, 1), r) == (r - 1, 0, 0, r - 1)


@given(weights, dimpairs, ranks)
def test_wperp_nonnegativity_iff_dominant(w, v0, r):
    if qg.is_l_dominant(v0, w, r):
        assert min(qg.wperp(w, v0, r)) >= 0
    else:
        with pytest.raises(NegativeEntry):
            qg.wperp(w, v0, r)


def test_vbar_examples():
    assert qg.vbar((5, 5), (0, 4, 4, 0), 3) == (4, 4)
    assert qg.vbar((2, 2), (0, 4, 4, 0), 3) == (2, 2)
    # the framed family collapse: w2 <= v2 <= r v1, v1 <= w1'
    for r in (2, 3):
        w = (0, 4, 2, 0)
        for v1 in range(1, 5):
            for v2 in range(2, r * v1 + 1):
                assert qg.vbar((v1, v2), w, r) == (v1, 2)


@given(weights, dimpairs, ranks)
def test_vbar_is_max_of_dominated(v, w, r):
    vb = qg.vbar(v, w, r)
    assert qg.is_l_dominant(vb, w, r)
    assert vb[0] <= v[0] and vb[1] <= v[1]
    for u in brute_dominant(w, r):
        if u[0] <= v[0] and u[1] <= v[1]:
            assert u[0] <= vb[0] and u[1] <= vb[1], (v, w, r, u, vb)
    if qg.is_l_dominant(v, w, r):
        assert vb == v


def test_dims_examples():
    d = qg.dims((2, 2), (0, 4, 4, 0), 3)
    assert d.d == 12 and d.d_tilde == 20
    z = qg.dims((0, 0), (1, 2, 3, 4), 2)
    assert (z.d, z.d_tilde, z.dim_affine, z.dim_g, z.dim_g_tilde) == (0, 0, 0, 0, 0)
    assert qg.dims((1, 1), (0, 1, 1, 0), 2).d_tilde == 2
    with pytest.raises(EmptyVariety):
        qg.dims((3, 0), (0, 2, 4, 4), 2)


@given(weights, dimpairs, ranks)
def test_dims_monotonicity(v, w, r):
    if not qg.nonempty_fiber(v, w, r):
        return
    d = qg.dims(v, w, r)
    if qg.is_l_dominant(v, w, r):
        assert d.d_tilde >= d.d >= 0
        assert d.dim_affine == d.d_tilde


def test_fg_examples():
    assert qg.fg_values((2, 2), (0, 4, 4, 0), 3) == qg.FG(4, 4, -4)
    assert qg.fg_values((0, 0), (3, 1, 4, 1), 2) == qg.FG(0, 0, 0)
    for r in (2, 3, 4):
        assert qg.fg_values((1, 1), (0, 1, 1, 0), r).g == -r


@given(weights, dimpairs, ranks)
def test_fg_identities(v, w, r):
    fg = qg.fg_values(v, w, r)
    if qg.nonempty_fiber(v, w, r):
        d = qg.dims(v, w, r)
        assert fg.f == 2 * d.d - d.d_tilde
    sv, sw = qg.swap(v, w)
    assert fg.f_swap == qg.fg_values(sv, sw, r).f
    assert fg.f == qg.fg_values(sv, sw, r).f_swap


@given(st.tuples(st.integers(0, 5), st.integers(0, 6)), dimpairs, ranks)
def test_slice_difference_formula(v, v0, r):
    # f(v, w) - f(v - v0, wperp) agrees with the explicit quadratic for
    # framed weights, wherever the slice exists
    w1p, w2 = 4, 5
    w = (0, w1p, w2, 0)
    if not qg.is_l_dominant(v0, w, r):
        return
    if not (v0[0] <= v[0] and v0[1] <= v[1]):
        return
    wp = qg.wperp(w, v0, r)
    vperp = (v[0] - v0[0], v[1] - v0[1])
    lhs = qg.fg_values(v, w, r).f - qg.fg_values(vperp, wp, r).f
    q0 = v0[0] ** 2 - r * v0[0] * v0[1] + v0[1] ** 2
    d1 = q0 + (w1p - 2 * v[0]) * v0[0] + (2 * r * v[0] - 2 * v[1] - w2) * v0[1]
    assert lhs == d1


def test_fiber_dims_examples():
    # over the top stratum the fiber collapses to a point
    fd = qg.fiber_dims((2, 2), (0, 4, 4, 0), 3, (2, 2))
    assert fd.pi_total == 0 and fd.p2[1] == 0
    # framed family: fiber is Gr(v2 - w2, r v1 - w2) over a point
    r, w = 3, (0, 4, 2, 0)
    v = (2, 4)
    fd = qg.fiber_dims(v, w, r, (2, 2))
    assert fd.pi_base == ((0, 2), 0)
    assert fd.pi_fiber[0] == (2, 4) and fd.pi_fiber[1] == 4
    with pytest.raises(OutOfRange):
        qg.fiber_dims((1, 1), (0, 4, 4, 0), 3, (2, 0))


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        qg.dims((-1, 0), (0, 1, 1, 0), 2)
    with pytest.raises(ValueError):
        qg.dom_enumerate((0, -1, 1, 0), 2)
