import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank2 import bbdg_kl as bk
from rank2 import cluster_basis as cb
from rank2 import quiver_geometry as qg
from rank2.errors import PreconditionViolated
from rank2.laurent import LaurentPoly, ONE, ZERO, gauss_binomial
from rank2.params import ExchangeParams
from rank2.qtorus import TorusElement

W44 = (0, 4, 4, 0)


def test_a_poly_worked_example():
    rows = {
        (0, 0): LaurentPoly({4: 1, 2: 2, 0: 4, -2: 2, -4: 1}),
        (1, 1): LaurentPoly({1: 1, -1: 1}),
        (1, 2): ZERO,
        (2, 1): LaurentPoly({1: 1, -1: 1}),
        (2, 2): ONE,
    }
    for vp, want in rows.items():
        assert bk.a_poly((2, 2), vp, W44, 3) == want, vp


def test_a_poly_identity_and_zero():
    for w in [(0, 1, 1, 0), (1, 2, 2, 1), (2, 0, 3, 1)]:
        for v in qg.dom_enumerate(w, 2):
            assert bk.a_poly(v, v, w, 2) == ONE
    # above the box the multiplicity vanishes
    assert bk.a_poly((3, 0), (0, 0), (0, 1, 1, 0), 2) == ZERO
    with pytest.raises(PreconditionViolated):
        bk.a_poly((1, 1), (0, 1), (0, 1, 1, 0), 2)


def test_a_poly_binomial_family():
    for r in (2, 3, 4):
        for i in range(r + 1):
            assert bk.a_poly((1, i), (0, 0), (0, 1, 1, 0), r) \
                == gauss_binomial(r - 1, i), (r, i)


def test_a_poly_bar_symmetry():
    for r in (2, 3):
        for w in [(0, 2, 2, 0), (0, 3, 3, 0), (1, 2, 3, 0)]:
            for v1 in range(4):
                for v2 in range(4):
                    for vp in qg.dom_enumerate(w, r):
                        a = bk.a_poly((v1, v2), vp, w, r)
                        assert a.bar() == a


def test_p_minus_examples():
    assert bk.p_minus((1, 1), (0, 1, 1, 0), 2) == LaurentPoly({-2: 1})
    assert bk.p_minus((0, 0), (3, 1, 4, 2), 3) == ONE
    want = LaurentPoly({-20: 1, -18: 2, -16: 5, -14: 6, -12: 8,
                        -10: 6, -8: 5, -6: 2, -4: 1})
    assert bk.p_minus((2, 2), W44, 3) == want
    with pytest.raises(PreconditionViolated):
        bk.p_minus((1, 2), (0, 1, 1, 0), 2)


def test_p_minus_min_degree_is_dim():
    for r in (2, 3):
        for w in [(0, 1, 2, 0), (0, 3, 3, 0), (1, 1, 2, 2)]:
            for v in qg.dom_enumerate(w, r):
                pm = bk.p_minus(v, w, r)
                dt = qg.dims(v, w, r).d_tilde
                assert pm.valuation() == -dt, (v, w, r)
                assert pm.coeff(-dt) == 1


def test_p_kl_examples():
    assert bk.p_kl((1, 1), (0, 2, 3, 0), 3) == LaurentPoly({0: 1, 2: 2, 4: 2})
    assert bk.p_kl((0, 0), (2, 2, 2, 2), 2) == ONE
    want = LaurentPoly({0: 1, 2: 2, 4: 5, 6: 6, 8: 8, 10: 6, 12: 5, 14: 2, 16: 1})
    assert bk.p_kl((2, 2), W44, 3) == want


def test_p_kl_positivity_and_degree_bound():
    for r in (2, 3):
        for w1p in range(4):
            for w2 in range(4):
                w = (0, w1p, w2, 0)
                for v in qg.dom_enumerate(w, r):
                    pk = bk.p_kl(v, w, r)
                    assert pk.coeff(0) == 1
                    assert pk.valuation() >= 0
                    assert all(c > 0 for _, c in pk.terms())
                    if pk != ONE:
                        fg = qg.fg_values(v, w, r)
                        bound = qg.dims(v, w, r).d_tilde + min(-1, fg.f, fg.f_swap, fg.g)
                        assert pk.degree() <= bound, (v, w, r)


def test_sum_ap_examples():
    assert bk.sum_ap_check((2, 2), W44, 3)
    assert bk.closed_form((2, 2), W44, 3) \
        == (gauss_binomial(6, 2) * gauss_binomial(4, 2)).shift(-8)
    assert bk.sum_ap_check((0, 0), (1, 1, 1, 1), 2)
    # a non-dominant dimension pair
    assert not qg.is_l_dominant((1, 2), (0, 1, 1, 0), 2)
    assert bk.sum_ap_check((1, 2), (0, 1, 1, 0), 2)
    with pytest.raises(PreconditionViolated):
        bk.sum_ap_check((5, 0), (0, 1, 1, 0), 2)


def test_deg_ap_bound_example():
    assert bk.deg_ap_bound_check((2, 2), W44, 3)
    assert bk.deg_ap_bound_check((2, 2), (0, 3, 3, 0), 3)
    with pytest.raises(PreconditionViolated):
        bk.deg_ap_bound_check((1, 1), (0, 1, 2, 0), 2)


def test_chi_m_examples():
    for r in (2, 3):
        assert bk.chi_M((0, 0, 0, 0), r) == TorusElement.one()
    # four-term expansion at the smallest framed weight
    got = bk.chi_M((0, 1, 1, 0), 2)
    want = (TorusElement.monomial(-1, 1) + TorusElement.monomial(-1, -1)
            + TorusElement.monomial(1, -1, LaurentPoly({0: 1, -4: 1}))
            + TorusElement.monomial(3, -1, LaurentPoly.term(1, -4)))
    assert got == want


def test_chi_m_bar_is_mstar():
    for r in (2, 3):
        params = ExchangeParams.skew(r)
        for w in [(0, 1, 1, 0), (1, 0, 0, 1), (1, 2, 1, 0), (2, 2, 2, 2), (0, 2, 3, 1)]:
            assert bk.chi_M(w, r).bar() == cb.mstar(w, params), (w, r)


def test_chi_l_examples():
    for r in (2, 3, 4):
        params = ExchangeParams.skew(r)
        chi = bk.chi_L((0, 1, 1, 0), r)
        assert chi == cb.triangular_basis((1, r - 1), params)
        spec = chi.specialize_classical()
        want = {(-1, 1): 1}
        for i in range(r):
            want[(r * i - 1, 1 - r)] = math.comb(r - 1, i)
        assert spec == want
    # balanced weights give the unit
    for r in (2, 3):
        for k, m in [(1, 1), (2, 0), (0, 3)]:
            assert bk.chi_L((k, k, m, m), r) == TorusElement.one()


def test_chi_l_reduction_invariance():
    for r in (2, 3):
        for w in [(1, 2, 3, 1), (2, 0, 1, 2), (3, 3, 0, 2)]:
            assert bk.chi_L(w, r) == bk.chi_L(bk.weight_reduced(w), r)
            assert bk.chi_L(bk.weight_floor(w), r) == TorusElement.one()


def test_chi_l_reassembles_from_multiplicities():
    for r in (2, 3):
        for w in [(0, 1, 1, 0), (0, 2, 1, 0), (1, 2, 0, 1), (0, 2, 3, 0)]:
            assert bk.chi_L(w, r) == bk.chi_L_from_multiplicities(w, r), (w, r)


def test_bbdg_support_examples():
    assert bk.bbdg_support((2, 2), W44, (2, 2), 3)
    assert not bk.bbdg_support((2, 2), W44, (1, 2), 3)
    assert bk.bbdg_support((2, 2), W44, (1, 1), 3)
    # the framed closed-form family stratum
    assert bk.bbdg_support((2, 4), (0, 4, 2, 0), (2, 2), 3)
    with pytest.raises(PreconditionViolated):
        bk.bbdg_support((5, 0), W44, (0, 0), 3)
    with pytest.raises(PreconditionViolated):
        bk.bbdg_support((1, 1), (1, 1, 1, 1), (0, 0), 2)


def test_bbdg_support_matches_a_poly():
    for r in (2, 3):
        w = (0, 3, 3, 0)
        for v1 in range(4):
            for v2 in range(r * v1 + 1):
                for vp in qg.dom_enumerate(w, r):
                    if vp[0] > v1 or vp[1] > v2:
                        continue
                    pred = bk.bbdg_support((v1, v2), w, vp, r)
                    assert pred == bool(bk.a_poly((v1, v2), vp, w, r)), \
                        ((v1, v2), vp, r)
