"""Acceptance criteria 1-17, each with its wall-clock budget.

Every criterion prints one PASS/FAIL line; the lines are also collected in
the terminal summary.  Statements that hold only in corrected form are
checked in that form here, and their literal forms are strict xfails below.
"""

import json
import time
from math import comb

import pytest
from click.testing import CliRunner

from qcapelli import cli
from qcapelli.dualaction import (DualAction, antipode_intertwining_check, capelli_check, det_power_check,
                                 quasicentral_check, sample_elements, tables_check, zeta_relations_check)
from qcapelli.pfaffian import (congruence, congruence_column, omega_oracle_check, pf_expansion_check,
                               z_element_eigen_check)
from qcapelli.qmatrix import (QuantumMatrixAlgebra, antipode_check, bialgebra_check, confluence_check,
                              det_commutation_check, hilbert_check, laplace_check)
from qcapelli.quasidet import factorization_check, nontrivial_pairs, quasi_minor_check, recursion_check_small
from qcapelli.report import Report, check
from qcapelli.rmatrix import (antisymmetrizer_a, antisymmetrizer_check, antisymmetrizer_s,
                              antisymmetrizer_scalar_literal, fusion_check, fusion_m_diagonal_literal,
                              fusion_sides, diagonal_operator, hecke_check, r_minus, r_plus,
                              rtt_consistency_check, yang_baxter_check)
from qcapelli.scalars import Params

from conftest import ACCEPTANCE, SEEDS, failures


def alg(n, seed=None):
    return QuantumMatrixAlgebra(Params(n) if seed is None else Params.specialized(n, seed))


def run_criterion(num, title, budget, build):
    start = time.perf_counter()
    rep = build()
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < budget
    line = (f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  "
            f"({len(rep)} checks, {elapsed:.1f}s, budget {budget}s)")
    ACCEPTANCE[num] = line
    print(line)
    assert rep.ok, failures(rep)
    assert elapsed < budget, f"{elapsed:.1f}s exceeds {budget}s"
    return rep


def test_criterion_01_rdet_cdet():
    def build():
        rep = Report()
        for n in (2, 3):
            rep.extend(bialgebra_check(alg(n)))
        for n in (4, 5):
            for s in SEEDS:
                a = alg(n, s)
                rep.add(check(f"rdet_cdet_n{n}_s{s}", "row det equals column det",
                              a.det("row") == a.det("column")))
        return rep

    run_criterion(1, "rdet = cdet (symbolic n=2,3; specialized n=4,5)", 10, build)


def test_criterion_02_rtt():
    run_criterion(2, "RTT consistency n=2,3", 5,
                  lambda: rtt_consistency_check(Params(2)).extend(rtt_consistency_check(Params(3))))


def test_criterion_03_confluence_hilbert():
    def build():
        a3 = alg(3)
        rep = confluence_check(a3, 1000, 5, seed=2024)
        for n in (1, 2, 3):
            a = alg(n)
            rep.extend(hilbert_check(a, 4))
            rep.add(check(f"hilbert_binomial_n{n}", "counts equal binomial(n^2+d-1, d)",
                          all(a.hilbert_count(d) == comb(n * n + d - 1, d) for d in range(5))))
        return rep

    run_criterion(3, "confluence (1000 words, deg<=5, n=3) and Hilbert counts", 30, build)


def test_criterion_04_laplace():
    run_criterion(4, "Laplace expansions n=3, t=1,2, row and column", 10,
                  lambda: laplace_check(alg(3), (1, 2)))


def test_criterion_05_det_commutation():
    run_criterion(5, "det_q commutation scalars and one-parameter centrality", 5,
                  lambda: det_commutation_check(alg(2)).extend(det_commutation_check(alg(3))))


def test_criterion_06_antipode():
    run_criterion(6, "T S(T) = S(T) T = I, n=2,3", 10,
                  lambda: antipode_check(alg(2)).extend(antipode_check(alg(3))))


def test_criterion_07_quasideterminants():
    def build():
        a2, a3 = alg(2), alg(3)
        rep = recursion_check_small(a2)
        rep.extend(quasi_minor_check(a3))
        rep.extend(factorization_check(a3))
        for s, t in nontrivial_pairs(3):
            rep.extend(factorization_check(a3, s, t))
        return rep

    rep = run_criterion(7, "quasideterminant recursion, commutation, factorizations", 20, build)
    ids = {c.id for c in rep}
    assert {"quasidet.recursion", "quasidet.principal_commute", "quasidet.telescoping_321_123",
            "quasidet.telescoping_123_321", "quasidet.telescoping_321_321"} <= ids


def test_criterion_08_rmatrix():
    def build():
        rep = Report()
        for n in (1, 2, 3):
            rep.extend(yang_baxter_check(Params(n))).extend(hecke_check(Params(n)))
        return rep

    run_criterion(8, "YBE (constant, spectral), braid, Hecke, n<=3", 20, build)


def test_criterion_09_antisymmetrizer_fusion():
    def build():
        rep = Report()
        for n in (2, 3):
            rep.extend(antisymmetrizer_check(Params(n))).extend(fusion_check(Params(n)))
        return rep

    run_criterion(9, "antisymmetrizer and fusion, corrected normalization and M(x)", 30, build)


def test_criterion_10_tables():
    def build():
        rep = Report()
        for n in (2, 3):
            rep.extend(tables_check(DualAction(alg(n))))
        return rep

    run_criterion(10, "pairing and action tables, corrected matrix forms", 10, build)


def test_criterion_11_intertwining_zeta():
    def build():
        rep = Report()
        for n in (2, 3):
            act = DualAction(alg(n))
            phis = sample_elements(act.alg, 0)
            rep.extend(antipode_intertwining_check(act, phis)).extend(zeta_relations_check(act, phis))
        return rep

    run_criterion(11, "antipode intertwining and zeta/eta relations, n=2,3", 20, build)


def test_criterion_12_quasicentral():
    def build():
        rep = quasicentral_check(DualAction(alg(2)), 2)
        for s in SEEDS:
            rep.extend(quasicentral_check(DualAction(alg(3, s)), 1))
        return rep

    rep = run_criterion(12, "z(x) quasicentrality (deg<=2 n=2 symbolic; deg<=1 n=3 specialized)", 60, build)
    assert all("verified on degree <=" in c.detail for c in rep)


def test_criterion_13_capelli():
    def build():
        rep = Report()
        a2 = DualAction(alg(2))
        rep.extend(capelli_check(a2, sample_elements(a2.alg, 0)))
        for s in SEEDS:
            a3 = DualAction(alg(3, s))
            rep.extend(capelli_check(a3, sample_elements(a3.alg, s), routes=False))
        for n in (1, 2):
            rep.extend(det_power_check(DualAction(alg(n))))
        rep.extend(det_power_check(DualAction(alg(3, SEEDS[0]))))
        return rep

    run_criterion(13, "Capelli identity and the difference-operator determinant on det_q^s", 120, build)


def test_criterion_14_pfaffian():
    def build():
        a4 = alg(4)
        rep = pf_expansion_check(a4, 2, 4).extend(pf_expansion_check(a4, 2, 4, weight_kind="p"))
        rep.extend(omega_oracle_check(a4, 4, "q")).extend(omega_oracle_check(a4, 4, "p"))
        a2 = alg(2)
        rep.extend(congruence(a2)).extend(congruence_column(a2))
        for s in SEEDS:
            a = alg(4, s)
            rep.extend(congruence(a)).extend(congruence_column(a))
        return rep

    run_criterion(14, "Pfaffian expansion, congruence (+ literal T^t B T), column analog, Omega oracle",
                  60, build)


def test_criterion_15_z_eigen():
    def build():
        rep = z_element_eigen_check(alg(2))
        for s in SEEDS:
            rep.extend(z_element_eigen_check(alg(4, s)))
        return rep

    run_criterion(15, "z-element eigen-equations N=2 symbolic, N=4 specialized", 60, build)


def test_criterion_16_hyperpfaffian():
    def build():
        rep = pf_expansion_check(alg(6, SEEDS[0]), 3, 6)
        for s in SEEDS:
            a = alg(6, s)
            rep.extend(congruence(a, 3)).extend(congruence_column(a, 3))
        return rep

    run_criterion(16, "hyper-Pfaffian expansion and congruences m=3 N=6, 3 seeds", 120, build)


def test_criterion_17_cli():
    def build():
        runner = CliRunner()
        args = ["run", "--suite", "rmatrix", "--n", "2", "--mode", "specialized", "--seed", "9"]
        a, b = runner.invoke(cli.main, args), runner.invoke(cli.main, args)
        rep = Report()
        rep.add(check("cli.deterministic", "identical configs give identical bytes",
                      a.stdout_bytes == b.stdout_bytes and json.loads(a.stdout)["pass"]))
        rep.add(check("cli.exit_pass", "exit code 0 on pass", a.exit_code == 0))
        original = cli.RUNNERS["rmatrix"]
        cli.RUNNERS["rmatrix"] = lambda p, c: Report([check("forced", "forced failure", False)])
        try:
            bad = runner.invoke(cli.main, args)
        finally:
            cli.RUNNERS["rmatrix"] = original
        rep.add(check("cli.exit_fail", "exit code 1 on failure", bad.exit_code == 1))
        return rep

    run_criterion(17, "CLI determinism and exit codes", 5, build)


# ---------------------------------------------------------------------------
# literal forms that do not hold; see the decisions ledger

def _literal_action_forms_hold(n):
    a = alg(n)
    act = DualAction(a)
    P, I = a.params, range(1, n + 1)
    ok = True
    for sign, R in (("+", r_plus(P)), ("-", r_minus(P))):
        for x in I:
            for y in I:
                for c in I:
                    for d in I:
                        left = act.act_generator(sign, x, y, "left", c, d)
                        right = act.act_generator(sign, x, y, "right", c, d)
                        # L_1 . T_2 = R T_2 and T_1 . L_2 = T_1 R, entry by entry
                        rt2 = sum((a.t(f, d) * R.entry((x, c), (y, f)) for f in I), a.zero())
                        t1r = sum((a.t(c, f) * R.entry((f, x), (d, y)) for f in I), a.zero())
                        ok = ok and left == rt2 and right == t1r
    return ok


@pytest.mark.xfail(strict=True, reason="literal matrix forms of the action do not match the tables")
@pytest.mark.parametrize("n", [2, 3])
def test_literal_action_matrix_forms(n):
    assert _literal_action_forms_hold(n)


@pytest.mark.xfail(strict=True, reason="literal antisymmetrizer normalization is not a projector")
@pytest.mark.parametrize("n", [2, 3])
def test_literal_antisymmetrizer(n):
    P = Params(n)
    A = antisymmetrizer_a(P, "literal")
    assert A @ A == A
    assert antisymmetrizer_s(P, n) == A.scale(antisymmetrizer_scalar_literal(P))


@pytest.mark.xfail(strict=True, reason="literal fusion diagonal does not satisfy the fusion identity")
@pytest.mark.parametrize("n", [2, 3])
def test_literal_fusion_diagonal(n):
    P = Params(n)
    x = P.sym("x")
    lhs, _, _ = fusion_sides(P, x)
    A = antisymmetrizer_a(P).embed(tuple(range(2, n + 2)), n + 1)
    M = diagonal_operator(P, fusion_m_diagonal_literal(P, x)).embed((1,), n + 1)
    assert lhs == M @ A
