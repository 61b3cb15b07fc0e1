from math import factorial

import pytest
from hypothesis import given, strategies as st

from qcapelli.pfaffian import (BMixedElement, b_entry, b_gen, block_permutations, congruence,
                               congruence_column, congruence_entries, inv_weight, omega_oracle,
                               omega_oracle_check, pf, pf_expansion_check, pf_formal, render_b,
                               z_element_eigen_check)
from qcapelli.qmatrix import QuantumMatrixAlgebra
from qcapelli.scalars import Params, render_q

from conftest import SEEDS, failures


@pytest.fixture(scope="module")
def alg4():
    return QuantumMatrixAlgebra(Params(4))


def test_pf_n2_is_b12(alg2):
    assert render_b(pf_formal(alg2, 2, 2), render_q) == "b12"


def test_pf_n4_terms(alg4):
    s = render_b(pf_formal(alg4, 2, 4), render_q)
    assert s.startswith("b12*b34 - q23*b13*b24 + q24*q34*b14*b23")
    assert s.count("b") == 12
    # both block orders are present
    assert "b34*b12" in s


def test_inv_weight_example(alg4):
    P = alg4.params
    assert inv_weight(P, (1, 3), (2, 4)) == -P.q(2, 3)
    assert inv_weight(P, (1, 2), (3, 4)) == 1


def test_b_entry_antisymmetry(alg2):
    P = alg2.params
    assert b_entry(alg2, 2, 1) == b_gen(alg2, (1, 2)) * (-P.p(1, 2))
    assert b_entry(alg2, 2, 1, "q") == b_gen(alg2, (1, 2)) * (-P.q(1, 2))
    assert not b_entry(alg2, 1, 1)
    with pytest.raises(ValueError):
        b_gen(alg2, (2, 1))


def test_hyper_identity_term():
    alg = QuantumMatrixAlgebra(Params.specialized(6, 1))
    h = pf_formal(alg, 3, 6)
    assert len(h.terms) == 20
    assert h.terms[(((1, 2, 3), (4, 5, 6)), ())] == alg.one()


def test_shape_errors(alg2):
    with pytest.raises(ValueError):
        pf_formal(alg2, 2, 3)
    with pytest.raises(ValueError):
        pf(alg2, lambda I: b_gen(alg2, I), 1, (1, 2))


@given(st.sampled_from([(2, 2), (2, 4), (2, 6), (3, 3), (3, 6)]))
def test_block_permutation_count(mN):
    m, N = mN
    perms = list(block_permutations(range(1, N + 1), m))
    assert len(perms) == factorial(N) // factorial(m) ** (N // m)
    assert len(set(perms)) == len(perms)
    for s in perms:
        assert all(list(s[k:k + m]) == sorted(s[k:k + m]) for k in range(0, N, m))


def test_expansion_n4(alg4):
    for kind in "qp":
        rep = pf_expansion_check(alg4, 2, 4, weight_kind=kind)
        assert rep.ok and len(rep) == 3, failures(rep)


def test_omega_oracle(alg4):
    assert omega_oracle(alg4, 4) == pf_formal(alg4, 2, 4)
    assert omega_oracle_check(alg4, 4, "p").ok


def test_congruence_n2_entries(alg2):
    c = congruence_entries(alg2, 2)
    assert c[(1, 2)] == b_gen(alg2, (1, 2)) * alg2.det()


@pytest.mark.parametrize("n", [2, 4])
def test_congruence_symbolic(n):
    alg = QuantumMatrixAlgebra(Params(n))
    rep = congruence(alg, 2)
    rep.extend(congruence_column(alg, 2))
    assert rep.ok, failures(rep)


@pytest.mark.parametrize("seed", SEEDS)
def test_congruence_specialized_n4(seed):
    alg = QuantumMatrixAlgebra(Params.specialized(4, seed))
    rep = congruence(alg, 2)
    rep.extend(congruence_column(alg, 2))
    rep.extend(z_element_eigen_check(alg))
    assert rep.ok, failures(rep)


def test_wrong_weight_breaks_congruence():
    """Pairing the row congruence with p weights must fail."""
    alg = QuantumMatrixAlgebra(Params.specialized(4, 3))
    C = congruence_entries(alg, 2)
    lhs = pf(alg, lambda I: C[I], 2, range(1, 5), "p")
    rhs = pf(alg, lambda I: b_gen(alg, I), 2, range(1, 5), "p") * alg.det()
    assert lhs != rhs


def test_z_eigen_n2(alg2):
    rep = z_element_eigen_check(alg2)
    assert rep.ok, failures(rep)


def test_bmixed_arithmetic(alg2):
    b = b_gen(alg2, (1, 2))
    t = alg2.t(1, 1)
    assert b * t == BMixedElement.monomial(alg2, ((1, 2),), t)
    assert (b + b) - b == b
    assert b * 0 == BMixedElement(alg2)
    assert (b * b).terms == {(((1, 2), (1, 2)), ()): alg2.one()}
