from math import comb

import pytest
from hypothesis import given, strategies as st

from qcapelli.exterior import coaction_products
from qcapelli.qmatrix import (LocalizedElement, QuantumMatrixAlgebra, TensorSquareElement,
                              antipode_check, bialgebra_check, confluence_check, det_commutation_check,
                              hilbert_check, laplace_check, relation_discrepancies, render_terms, shuffles)
from qcapelli.scalars import Params, render_q

from conftest import failures


def test_rewrite_rules_n2(alg2):
    t = alg2.t
    # hand expansion of the RTT relations at n = 2
    assert render_terms(alg2, (t(2, 2) * t(1, 1)).terms, render_q) == \
        "t11*t22 + (-q12 + u^(-2)*q12)*t12*t21"
    P = alg2.params
    assert t(1, 1) * t(1, 2) == t(1, 2) * t(1, 1) * P.q(1, 2)
    assert t(1, 1) * t(2, 1) == t(2, 1) * t(1, 1) * P.p(1, 2)
    assert t(1, 2) * t(2, 1) * P.q(1, 2) == t(2, 1) * t(1, 2) * P.p(1, 2)


def test_detq_strings(alg2, alg3):
    assert render_terms(alg2, alg2.det().terms, render_q) == "t11*t22 - q12*t12*t21"
    d3 = alg3.det()
    assert len(d3.terms) == 6
    assert render_terms(alg3, d3.terms, render_q).startswith("t11*t22*t33 - q23*t11*t23*t32")


def test_row_and_column_det_agree(alg2, alg3):
    assert alg2.det("row") == alg2.det("column")
    assert alg3.det("row") == alg3.det("column")


def test_det_matches_coaction_oracle(alg3):
    """det_q read off from delta_1 delta_2 delta_3 in the exterior algebra."""
    prod = coaction_products(alg3, (1, 2, 3))
    assert prod.coefficient((), (1, 2, 3)) == alg3.det()


def test_listed_relations_and_wrong_variants(alg2):
    assert relation_discrepancies(alg2) == []
    assert relation_discrepancies(alg2, "p_rows") == [("diagonal", 1, 2, 1, 2)]
    assert relation_discrepancies(alg2, "one")


def test_hilbert_counts(alg2, alg3):
    assert [alg3.hilbert_count(d) for d in range(5)] == [1, 9, 45, 165, 495]
    for alg in (alg2, alg3):
        n = alg.n
        for d in range(5):
            assert alg.hilbert_count(d) == comb(n * n + d - 1, d)


def test_overlaps_resolve(alg3):
    amb = list(alg3.overlap_ambiguities())
    assert len(amb) == 84
    assert all(l == r for _, l, r in amb)


def test_shuffles():
    assert shuffles(3, 1) == [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
    assert len(shuffles(4, 2)) == comb(4, 2)


def test_counit_and_coproduct(alg2):
    t = alg2.t
    assert alg2.counit(t(1, 1)) == 1 and alg2.counit(t(1, 2)) == 0
    expect = TensorSquareElement.tensor(t(1, 1), t(1, 2)) + TensorSquareElement.tensor(t(1, 2), t(2, 2))
    assert alg2.coproduct(t(1, 2)) == expect


def test_coproduct_is_multiplicative(alg2):
    t = alg2.t
    expect = TensorSquareElement(alg2, {})
    for k in (1, 2):
        for l in (1, 2):
            expect = expect + TensorSquareElement.tensor(t(2, k) * t(1, l), t(k, 1) * t(l, 2))
    assert alg2.coproduct(t(2, 1) * t(1, 2)) == expect


def test_antipode_entry_n2(alg2):
    P = alg2.params
    s12 = alg2.antipode_entry(1, 2)
    assert s12 == LocalizedElement(alg2.t(1, 2) * (-1 / P.q(1, 2)), 1)


def test_localized_cancellation(alg2):
    x = alg2.localized(alg2.t(1, 1), 1) * alg2.localized(alg2.det(), 0)
    assert x == alg2.localized(alg2.t(1, 1), 0)
    assert alg2.right_divide(alg2.t(1, 1) * alg2.det(), alg2.det()) == alg2.t(1, 1)


def test_det_commutation_scalars(alg2):
    P = alg2.params
    assert alg2.det_commutation_scalar(1, 2) == P.p(1, 2) / P.q(1, 2)
    assert alg2.det_commutation_scalar(1, 1) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_checks_pass_symbolic(n):
    alg = QuantumMatrixAlgebra(Params(n))
    for rep in (bialgebra_check(alg), laplace_check(alg), det_commutation_check(alg),
                antipode_check(alg), hilbert_check(alg, 3), confluence_check(alg, 100, 4)):
        assert rep.ok, failures(rep)


@given(st.lists(st.integers(0, 3), max_size=5))
def test_normal_form_is_strategy_independent(word):
    alg = _shared()
    a = alg.reduce_word(word, "left")
    assert a == alg.reduce_word(word, "right")
    assert a == alg.normal_form(word)


@given(st.lists(st.integers(0, 3), max_size=3), st.lists(st.integers(0, 3), max_size=3),
       st.lists(st.integers(0, 3), max_size=3))
def test_product_is_associative(a, b, c):
    alg = _shared()
    x, y, z = alg.normal_form(a), alg.normal_form(b), alg.normal_form(c)
    assert (x * y) * z == x * (y * z)


@given(st.integers(0, 3), st.integers(0, 3))
def test_det_commutation_property(g, h):
    alg = _shared()
    d = alg.det()
    for w in ((g,), (g, h)):
        x = alg.normal_form(w)
        assert x * d == d * x * alg.word_det_scalar(w)


_ALG = {}


def _shared():
    if "a" not in _ALG:
        _ALG["a"] = QuantumMatrixAlgebra(Params(2))
    return _ALG["a"]
