import pytest
from hypothesis import given, strategies as st

from qcapelli.exterior import (ExtElement, MixedElement, coaction_products, exterior_checks,
                               ext_monomial_product, omega, partial_coaction, phi_power)
from qcapelli.qmatrix import QuantumMatrixAlgebra
from qcapelli.scalars import Params, q_factorial

from conftest import failures


def test_generator_relations():
    P = Params(3)
    x = [None] + [ExtElement.gen(P, "q", i) for i in range(1, 4)]
    y = [None] + [ExtElement.gen(P, "p", i) for i in range(1, 4)]
    assert not x[2] * x[2]
    assert x[3] * x[1] == x[1] * x[3] * (-P.q(1, 3))
    assert y[3] * y[2] == y[2] * y[3] * (-P.p(2, 3))


def test_monomial_product_sign():
    P = Params(3)
    c, m = ext_monomial_product(P, "q", (2, 3), (1,))
    assert m == (1, 2, 3) and c == P.q(1, 2) * P.q(1, 3)
    assert ext_monomial_product(P, "q", (1, 2), (2,))[1] is None
    with pytest.raises(ValueError):
        ext_monomial_product(P, "r", (), ())


def test_mixed_sides_do_not_combine():
    P = Params(2)
    with pytest.raises(ValueError):
        ExtElement.gen(P, "q", 1) + ExtElement.gen(P, "p", 1)


def test_coaction_top_degree_is_det(alg2):
    assert coaction_products(alg2, (1, 2)).coefficient((), (1, 2)) == alg2.det()
    assert not coaction_products(alg2, (1, 1))


def test_phi_top_power(alg2):
    expect = MixedElement.term(alg2, (1, 2), alg2.det() * q_factorial(2, alg2.params.u ** 2), (1, 2))
    assert phi_power(alg2, 2) == expect
    with pytest.raises(ValueError):
        phi_power(alg2, 3)


def test_omega_commutation(alg2):
    u = alg2.params.u
    w1, w2 = omega(alg2, 1), omega(alg2, 2)
    assert w2 * w1 == w1 * w2 * u ** 2
    assert not w1 * w1


def test_partial_coaction_gives_column_minors(alg2):
    prod = partial_coaction(alg2, 1) * partial_coaction(alg2, 2)
    assert prod.coefficient((1, 2), ()) == alg2.det("column")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exterior_checks(n):
    rep = exterior_checks(QuantumMatrixAlgebra(Params(n)))
    assert rep.ok, failures(rep)


@given(st.lists(st.integers(1, 4), max_size=4), st.lists(st.integers(1, 4), max_size=4),
       st.lists(st.integers(1, 4), max_size=4))
def test_exterior_associative(a, b, c):
    P = _P
    def mono(ws):
        e = ExtElement.unit(P, "q")
        for i in ws:
            e = e * ExtElement.gen(P, "q", i)
        return e
    x, y, z = mono(a), mono(b), mono(c)
    assert (x * y) * z == x * (y * z)


@given(st.permutations(range(1, 5)))
def test_exterior_reordering_weight(sigma):
    """x_s1 ... x_s4 equals the q inversion weight of sigma times x_1 x_2 x_3 x_4."""
    from qcapelli.scalars import inversion_weight

    P = _P
    e = ExtElement.unit(P, "q")
    for i in sigma:
        e = e * ExtElement.gen(P, "q", i)
    assert e.terms == {(1, 2, 3, 4): inversion_weight("q", sigma, P)}


_P = Params(4)
