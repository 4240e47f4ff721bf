import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank2.errors import InexactDivision
from rank2.laurent import LaurentPoly, ONE
from rank2.qtorus import TorusElement

coeffs = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=3).map(LaurentPoly)
keys = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
elements = st.dictionaries(keys, coeffs, max_size=3).map(TorusElement)


def units(draw_key=keys):
    return st.tuples(draw_key, st.integers(-3, 3), st.sampled_from((1, -1))).map(
        lambda t: TorusElement.monomial(*t[0], LaurentPoly.term(t[2], t[1])))


@st.composite
def pointed_elements(draw):
    lead = draw(keys)
    k = draw(st.integers(-3, 3))
    sign = draw(st.sampled_from((1, -1)))
    g = TorusElement.monomial(*lead, LaurentPoly.term(sign, k))
    tail = draw(elements)
    for (e1, e2) in tail.support():
        if (e1, e2) < lead:
            g = g + TorusElement.monomial(e1, e2, tail.coeff(e1, e2))
    return g


def test_monomial_multiplication_rule():
    x1 = TorusElement.monomial(1, 0)
    x2 = TorusElement.monomial(0, 1)
    assert x2 * x1 == TorusElement.monomial(1, 1, LaurentPoly.term(1, 1))
    assert x1 * x2 == TorusElement.monomial(1, 1, LaurentPoly.term(1, -1))
    # the defining commutation: X_2 X_1 = v^2 X_1 X_2
    assert x2 * x1 == (x1 * x2).scale(LaurentPoly.term(1, 2))


def test_power_examples():
    x = TorusElement({(0, -1): ONE, (2, -1): ONE})
    assert x ** 1 == x
    assert TorusElement.monomial(1, 0) ** 5 == TorusElement.monomial(5, 0)
    # frozen two-term expansion worked out by the monomial rule
    sq = TorusElement({(0, -2): ONE, (2, -2): LaurentPoly({2: 1, -2: 1}), (4, -2): ONE})
    assert x ** 2 == sq
    assert x ** 0 == TorusElement.one()


def test_bar_examples():
    e = TorusElement.monomial(1, 1, LaurentPoly.term(1, 1))
    assert e.bar() == TorusElement.monomial(1, 1, LaurentPoly.term(1, -1))
    mono = TorusElement.monomial(2, -3)
    assert mono.bar() == mono


@given(elements, elements)
def test_bar_antiautomorphism(f, g):
    assert (f * g).bar() == g.bar() * f.bar()


@given(elements)
def test_bar_involution(f):
    assert f.bar().bar() == f


@given(elements, elements, elements)
def test_mul_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


@given(elements, elements)
def test_specialize_is_ring_map(f, g):
    def mul_classical(x, y):
        out = {}
        for (a1, a2), c1 in x.items():
            for (b1, b2), c2 in y.items():
                k = (a1 + b1, a2 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return {k: v for k, v in out.items() if v}

    assert (f * g).specialize_classical() == mul_classical(
        f.specialize_classical(), g.specialize_classical())


def test_specialize_examples():
    assert TorusElement.monomial(1, 1).specialize_classical() == {(1, 1): 1}
    assert TorusElement.monomial(0, 0, LaurentPoly.term(1, 3)).specialize_classical() == {(0, 0): 1}


def test_division_example():
    # (v^c X_2^c + 1) / X_1 for c = 4
    c = 4
    f = (TorusElement.monomial(0, 1) ** c).scale(LaurentPoly.term(1, c)) + 1
    q = f.div_right(TorusElement.monomial(1, 0))
    assert q == TorusElement({(-1, c): ONE, (-1, 0): ONE})
    assert q * TorusElement.monomial(1, 0) == f


def test_division_inexact():
    f = TorusElement.monomial(0, 0) + TorusElement.monomial(1, 1)
    g = TorusElement.monomial(2, 0) + TorusElement.monomial(0, 1)
    with pytest.raises(InexactDivision):
        f.div_right(g)


def test_division_requires_pointed():
    g = TorusElement.monomial(1, 0, LaurentPoly({0: 2}))
    with pytest.raises(ValueError):
        TorusElement.monomial(2, 0).div_right(g)
    with pytest.raises(ValueError):
        TorusElement.monomial(2, 0).div_right(TorusElement.zero())


@given(elements, pointed_elements())
def test_division_round_trip(h, g):
    assert (h * g).div_right(g) == h
    assert (g * h).div_left(g) == h


def test_packed_paths_agree_with_dict_paths():
    import rank2.qtorus as qt
    from rank2 import cluster_basis as cb
    from rank2.params import ExchangeParams
    params = ExchangeParams(3, 3)
    x5 = cb.cluster_variable(5, params)
    x6 = cb.cluster_variable(6, params)
    old = qt._PACK_THRESHOLD
    try:
        qt._PACK_THRESHOLD = 10 ** 18
        dict_prod = x5 * x6
        dict_quot = dict_prod.div_right(x6)
        qt._PACK_THRESHOLD = 1
        packed_prod = x5 * x6
        packed_quot = dict_prod.div_right(x6)
    finally:
        qt._PACK_THRESHOLD = old
    assert dict_prod == packed_prod
    assert dict_quot == packed_quot == x5


def test_json_round_trip_and_order():
    e = TorusElement({(1, -2): LaurentPoly({3: 5}), (-1, 4): ONE})
    data = e.to_json()
    assert [d["e1"] for d in data] == [-1, 1]
    assert TorusElement.from_json(data) == e


def test_leading_and_pointed():
    e = TorusElement({(1, 2): LaurentPoly({0: 1, 2: 1}), (2, -5): LaurentPoly.term(-1, 3)})
    assert e.leading_exponent() == (2, -5)
    assert e.is_pointed()
    assert not TorusElement({(0, 0): LaurentPoly({0: 2})}).is_pointed()
