"""Quasideterminants of the generating matrix T and of its square submatrices.

A quasi-minor is kept in the form scalar * det_q(T_RC) * det_q(T_RC minus row i, col j)^-1
and is never evaluated: every check clears the inverse first and compares
polynomials in normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from .qmatrix import AlgebraElement, QuantumMatrixAlgebra
from .report import Check, Report, check
from .scalars import inversion_weight

__all__ = [
    "QuasiMinor", "quasi_minor", "quasi_minor_check", "factorization_check",
    "recursion_check_small", "ratio", "nontrivial_pairs",
]

Index = Tuple[int, ...]


@dataclass(frozen=True)
class QuasiMinor:
    """|T_RC|_ij = scalar * det_q(T_RC) * det_q(T_{R-i, C-j})^-1.

    ``rows`` and ``cols`` are the surviving index sets, ``i`` and ``j`` lie in them.
    """

    rows: Index
    cols: Index
    i: int
    j: int
    scalar: object

    @property
    def num(self) -> Tuple[Index, Index]:
        return self.rows, self.cols

    @property
    def den(self) -> Tuple[Index, Index]:
        return (tuple(r for r in self.rows if r != self.i),
                tuple(c for c in self.cols if c != self.j))

    def num_minor(self, alg: QuantumMatrixAlgebra) -> AlgebraElement:
        return alg.minor(*self.num)

    def den_minor(self, alg: QuantumMatrixAlgebra) -> AlgebraElement:
        return alg.minor(*self.den)

    def __str__(self) -> str:
        r = "".join(map(str, self.rows))
        c = "".join(map(str, self.cols))
        return f"|T[{r};{c}]|_{self.i}{self.j}"


def quasi_minor(alg: QuantumMatrixAlgebra, i: int, j: int,
                deleted_rows: Sequence[int] = (), deleted_cols: Sequence[int] = ()) -> QuasiMinor:
    """The (i, j) quasi-minor of T with the given rows and columns removed.

    The scalar is prod_{l<i} (-q_li) / prod_{l<j} (-q_lj), with l running
    over the surviving rows and columns respectively.
    """
    n, P = alg.n, alg.params
    if len(deleted_rows) != len(deleted_cols):
        raise ValueError("deleted row and column sets must have equal size")
    rows = tuple(k for k in range(1, n + 1) if k not in set(deleted_rows))
    cols = tuple(k for k in range(1, n + 1) if k not in set(deleted_cols))
    if i not in rows or j not in cols:
        raise ValueError(f"({i}, {j}) is not a position of the submatrix")
    c = P.one
    for l in rows:
        if l < i:
            c = c * -P.q(l, i)
    for l in cols:
        if l < j:
            c = c / -P.q(l, j)
    return QuasiMinor(rows, cols, i, j, c)


def ratio(a: AlgebraElement, b: AlgebraElement):
    """Scalar c with a == c * b, or None."""
    if not b.terms:
        return None
    w, cb = next(iter(b.terms.items()))
    ca = a.terms.get(w)
    if ca is None:
        return None
    c = ca / cb
    return c if a == b * c else None


def _inverse_row(alg: QuantumMatrixAlgebra, rows: Index, cols: Index, i: int, r: int) -> AlgebraElement:
    """sum_c t_rc * scalar(i, c)^-1 * det_q(T_{R-i, C-c}); should be delta_ri det_q(T_RC)."""
    deleted_r = [k for k in range(1, alg.n + 1) if k not in rows]
    deleted_c = [k for k in range(1, alg.n + 1) if k not in cols]
    out = alg.zero()
    for c in cols:
        qm = quasi_minor(alg, i, c, deleted_r, deleted_c)
        out = out + alg.t(r, c) * qm.den_minor(alg) * (1 / qm.scalar)
    return out


def _q_prefactor(P, rows: Index, cols: Index, i: int, j: int):
    """prod_{l<j} (-q_lj) / prod_{l<i} (-q_li) over surviving columns and rows."""
    num, den = P.one, P.one
    for l in cols:
        if l < j:
            num = num * -P.q(l, j)
    for l in rows:
        if l < i:
            den = den * -P.q(l, i)
    return num / den


def _p_prefactor(P, rows: Index, cols: Index, i: int, j: int):
    """prod_{l>i} (-p_il) / prod_{l>j} (-p_jl) over surviving rows and columns."""
    c = P.one
    for l in rows:
        if l > i:
            c = c * -P.p(i, l)
    for l in cols:
        if l > j:
            c = c / -P.p(j, l)
    return c


def quasi_minor_check(alg: QuantumMatrixAlgebra, max_deleted: Optional[int] = None) -> Report:
    """Inverse-matrix property and both clearing identities for every quasi-minor.

    With Y_ci = scalar(i, c)^-1 det_q(T_{R-i,C-c}) det_q(T_RC)^-1 one needs
    T_RC Y = I, which is the polynomial identity
    sum_c t_rc scalar(i, c)^-1 det_q(T_{R-i,C-c}) = delta_ri det_q(T_RC).
    The left-handed form det_q(T^ij) |T|_ij = p-prefactor^-1 det_q(T) follows from
    det_q(T^ij) det_q(T) = kappa det_q(T) det_q(T^ij), checked in normal form.
    """
    n, P = alg.n, alg.params
    top = n - 1 if max_deleted is None else max_deleted
    rep = Report()
    bad_inv, bad_q, bad_p = [], [], []
    for k in range(0, top + 1):
        for dr in combinations(range(1, n + 1), k):
            for dc in combinations(range(1, n + 1), k):
                rows = tuple(x for x in range(1, n + 1) if x not in dr)
                cols = tuple(x for x in range(1, n + 1) if x not in dc)
                full = alg.minor(rows, cols)
                for i in rows:
                    for r in rows:
                        exp = full if r == i else alg.zero()
                        if _inverse_row(alg, rows, cols, i, r) != exp:
                            bad_inv.append((rows, cols, i, r))
                    for j in cols:
                        qm = quasi_minor(alg, i, j, dr, dc)
                        # q-form: [prod_{l<j}(-q_lj) / prod_{l<i}(-q_li)] |T|_ij det(T^ij) = det(T)
                        if _q_prefactor(P, rows, cols, i, j) * qm.scalar != P.one:
                            bad_q.append(str(qm))
                        den = qm.den_minor(alg)
                        kappa = ratio(den * full, full * den)
                        pp = _p_prefactor(P, rows, cols, i, j)
                        if kappa is None or pp * qm.scalar * kappa != P.one:
                            bad_p.append(str(qm))
    rep.add(check("quasidet.inverse", "quasi-minors invert the entries of the inverse matrix",
                  not bad_inv, f"n={n}", bad_inv[:3] or None))
    rep.add(check("quasidet.clear_q", "q-prefactor * |T|_ij * det_q(T^ij) = det_q(T)",
                  not bad_q, counterexample=bad_q[:3] or None))
    rep.add(check("quasidet.clear_p", "p-prefactor * det_q(T^ij) * |T|_ij = det_q(T)",
                  not bad_p, counterexample=bad_p[:3] or None))
    return rep


def _chain(alg: QuantumMatrixAlgebra, sigma: Sequence[int], tau: Sequence[int]):
    out = []
    for k in range(len(sigma)):
        out.append(quasi_minor(alg, sigma[k], tau[k], sigma[:k], tau[:k]))
    return out


def factorization_check(alg: QuantumMatrixAlgebra, sigma: Sequence[int] = None,
                        tau: Sequence[int] = None) -> Report:
    """det_q(T) = (-q)_tau / (-q)_sigma * |T|_{s1 t1} |T^{s1 t1}|_{s2 t2} ... t_{sn tn}.

    Telescoping: the denominator of each factor must be the numerator of the
    next, so the product collapses to (prod of scalars) * det_q(T).
    Commutation: det_q of the nested trailing principal submatrices commute.
    """
    n, P = alg.n, alg.params
    sigma = tuple(sigma or range(1, n + 1))
    tau = tuple(tau or range(1, n + 1))
    rep = Report()
    chain = _chain(alg, sigma, tau)
    matched = all(chain[k].den == chain[k + 1].num for k in range(n - 1)) and chain[-1].den == ((), ())
    label = f"sigma={sigma} tau={tau}"
    cid = "quasidet.telescoping_" + "".join(map(str, sigma)) + "_" + "".join(map(str, tau))
    if not matched:
        rep.add(Check(cid, "matched minors cancel along the chain", "unsupported", label))
        return rep
    scal = P.one
    for qm in chain:
        scal = scal * qm.scalar
    w = inversion_weight("q", tau, P) / inversion_weight("q", sigma, P)
    rep.add(check(cid, "ordered quasi-minor product equals det_q(T)",
                  w * scal == P.one and chain[0].num_minor(alg) == alg.det(), label))
    if sigma == tuple(range(1, n + 1)) and tau == sigma:
        ds = [alg.minor(tuple(range(s + 1, n + 1)), tuple(range(s + 1, n + 1))) for s in range(n)]
        bad = [(a, b) for a in range(n) for b in range(a + 1, n) if ds[a] * ds[b] != ds[b] * ds[a]]
        rep.add(check("quasidet.principal_commute", "nested principal minors commute",
                      not bad, f"n={n}", bad or None))
        # the last factor is the single entry t_nn
        rep.add(check("quasidet.last_entry", "the last factor is t_nn",
                      chain[-1].num_minor(alg) == alg.t(n, n) and chain[-1].scalar == P.one))
    return rep


def _recursion_times_pivot(alg: QuantumMatrixAlgebra, i: int, j: int, inverse: bool) -> AlgebraElement:
    """(t_ij - t_ij' X t_i'j) t_i'j' at n = 2, X = t_i'j'^-1 (inverse) or t_i'j' (literal).

    With the inverse, t_i'j'^-1 t_i'j t_i'j' = c t_i'j where t_i'j t_i'j' = c t_i'j' t_i'j.
    Returns None when that commutation is not scalar.
    """
    i2, j2 = 3 - i, 3 - j
    pivot = alg.t(i2, j2)
    if inverse:
        c = ratio(alg.t(i2, j) * pivot, pivot * alg.t(i2, j))
        if c is None:
            return None
        return alg.t(i, j) * pivot - alg.t(i, j2) * alg.t(i2, j) * c
    return alg.t(i, j) * pivot - alg.t(i, j2) * pivot * alg.t(i2, j) * pivot


def recursion_check_small(alg: QuantumMatrixAlgebra) -> Report:
    """The expansion |T|_ij = t_ij - t_ij' |T^ij|_i'j'^-1 t_i'j at n = 2.

    Both sides are multiplied on the right by the pivot t_i'j' and compared
    with scalar * det_q(T).  The variant without the inverse is shown to fail.
    """
    if alg.n != 2:
        raise ValueError("the recursion check is implemented for n = 2 only")
    rep = Report()
    bad, unsupported, literal_ok = [], [], []
    for i in (1, 2):
        for j in (1, 2):
            qm = quasi_minor(alg, i, j)
            target = alg.det() * qm.scalar
            v = _recursion_times_pivot(alg, i, j, inverse=True)
            if v is None:
                unsupported.append((i, j))
            elif v != target:
                bad.append((i, j))
            if _recursion_times_pivot(alg, i, j, inverse=False) == target:
                literal_ok.append((i, j))
    if unsupported:
        rep.add(Check("quasidet.recursion", "recursive expansion agrees with the minor formula",
                      "unsupported", "non-scalar commutation", str(unsupported)))
    else:
        rep.add(check("quasidet.recursion", "recursive expansion agrees with the minor formula",
                      not bad, "all four positions", bad or None))
    rep.add(check("quasidet.recursion_literal_fails",
                  "expansion without the inner inverse disagrees (expected discrepancy)",
                  not literal_ok, counterexample=literal_ok or None))
    return rep


def nontrivial_pairs(n: int):
    """Three (sigma, tau) pairs built from the identity and the reversal."""
    ident = tuple(range(1, n + 1))
    rev = ident[::-1]
    return [(rev, ident), (ident, rev), (rev, rev)]
