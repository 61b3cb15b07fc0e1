import numpy as np
import pytest
from gmpy2 import mpq

from qcapelli.rmatrix import (TensorOperator, antisymmetrizer, antisymmetrizer_a, antisymmetrizer_check,
                              antisymmetrizer_scalar, build, fusion_check, fusion_m_diagonal, hecke_check,
                              r_matrix, r_minus, r_plus, rtt_consistency_check, yang_baxter_check)
from qcapelli.scalars import Params

from conftest import SEEDS, failures


def _dense(op):
    return np.array(op.dense(), dtype=object)


def _legs(M, n, pos):
    """M on legs pos of (C^n)^3 built with Kronecker products and a swap."""
    I = np.identity(n, dtype=object) * mpq(1)
    if pos == (1, 2):
        return np.kron(M, I)
    if pos == (2, 3):
        return np.kron(I, M)
    # legs (1, 3): conjugate the (1, 2) copy by the swap of legs 2 and 3
    S = np.zeros((n * n, n * n), dtype=object)
    for a in range(n):
        for b in range(n):
            S[b * n + a, a * n + b] = mpq(1)
    S23 = np.kron(I, S)
    return S23 @ np.kron(M, I) @ S23


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("n", [2, 3])
def test_ybe_dense_oracle(n, seed):
    """Yang-Baxter with plain Kronecker products, independent of TensorOperator.embed."""
    P = Params.specialized(n, seed)
    R = _dense(r_matrix(P))
    lhs = _legs(R, n, (1, 2)) @ _legs(R, n, (1, 3)) @ _legs(R, n, (2, 3))
    rhs = _legs(R, n, (2, 3)) @ _legs(R, n, (1, 3)) @ _legs(R, n, (1, 2))
    assert (lhs == rhs).all()


def test_r_matrix_entries_n2():
    P = Params(2)
    u = P.u
    R = r_matrix(P)
    assert R.entry((1, 1), (1, 1)) == u
    assert R.entry((1, 2), (1, 2)) == P.q(1, 2) / u
    assert R.entry((2, 1), (2, 1)) == P.p(1, 2) / u
    assert R.entry((2, 1), (1, 2)) == u - 1 / u
    assert R.entry((1, 2), (2, 1)) == 0
    assert R.nonzero_count() == 5


def test_r_plus_minus_inverse():
    P = Params(3)
    I = TensorOperator.identity(P, 2)
    assert r_matrix(P) @ r_minus(P) == I
    assert r_minus(P) @ r_matrix(P) == I
    assert build("Rplus", P) == build("P", P) @ build("R", P) @ build("P", P)


def test_build_errors():
    P = Params(2)
    with pytest.raises(ValueError):
        build("Rlambda", P)
    with pytest.raises(ValueError):
        build("nope", P)


@pytest.mark.parametrize("n", [2, 3])
def test_r_suite_symbolic(n):
    P = Params(n)
    for rep in (yang_baxter_check(P), hecke_check(P), antisymmetrizer_check(P), fusion_check(P),
                rtt_consistency_check(P)):
        assert rep.ok, failures(rep)


def test_antisymmetrizer_is_rank_one_projector():
    P = Params.specialized(3, 4)
    A = antisymmetrizer_a(P)
    M = _dense(A)
    assert (M @ M == M).all()
    # trace of a projector is its rank
    assert sum(M[i, i] for i in range(27)) == 1


def test_s_form_and_scalar_n2():
    P = Params(2)
    u = P.u
    assert antisymmetrizer_scalar(P) == u ** 2 - u ** -2
    assert antisymmetrizer(P, 2, "s") == antisymmetrizer(P).scale(antisymmetrizer_scalar(P))


def test_fusion_diagonal_n1():
    P = Params(1)
    x = P.sym("x")
    assert fusion_m_diagonal(P, x) == [x * P.u - 1 / (x * P.u)]
