"""Sparse tensor operators and the multiparameter R-matrices.

Operators act on the m-fold tensor power of an n-dimensional space.  Basis
vectors are tuples of 1-based indices.  An operator stores its columns: for
each input basis vector, the sparse image vector.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Dict, Iterable, Optional, Sequence

from .linalg import echelon, same_span
from .report import Report, check
from .scalars import Params, inversion_weight, q_factorial

__all__ = [
    "TensorOperator", "build", "r_matrix", "r_plus", "r_minus", "r_spectral",
    "permutation_operator", "rhat", "rhat_spectral", "antisymmetrizer_s",
    "antisymmetrizer_a", "antisymmetrizer", "antisymmetrizer_scalar",
    "antisymmetrizer_scalar_literal", "fusion_m_diagonal", "fusion_m_diagonal_literal",
    "diagonal_operator", "fusion_sides", "yang_baxter_check", "hecke_check",
    "exterior_relations_from_hecke", "antisymmetrizer_check", "fusion_check",
    "rtt_consistency_check",
]


class TensorOperator:
    """Sparse linear operator on (C^n)^{tensor m} with exact coefficients."""

    __slots__ = ("n", "legs", "cols", "params")

    def __init__(self, params: Params, legs: int, cols: Optional[Dict[tuple, Dict[tuple, object]]] = None):
        self.params = params
        self.n = params.n
        self.legs = legs
        self.cols = cols if cols is not None else {}

    # -- constructors
    @classmethod
    def from_entries(cls, params: Params, legs: int, entries: Iterable):
        """entries: iterable of (out_index, in_index, coefficient)."""
        op = cls(params, legs)
        for out, inp, c in entries:
            op._add_entry(tuple(out), tuple(inp), c)
        return op

    @classmethod
    def identity(cls, params: Params, legs: int):
        one = params.one
        return cls(params, legs, {b: {b: one} for b in basis(params.n, legs)})

    def _add_entry(self, out, inp, c) -> None:
        if not c:
            return
        col = self.cols.setdefault(inp, {})
        s = col.get(out, 0) + c
        if s:
            col[out] = s
        else:
            del col[out]
            if not col:
                del self.cols[inp]

    def entry(self, out, inp):
        return self.cols.get(tuple(inp), {}).get(tuple(out), self.params.zero)

    def entries(self):
        for inp, col in self.cols.items():
            for out, c in col.items():
                yield out, inp, c

    def apply(self, vec: Dict[tuple, object]) -> Dict[tuple, object]:
        out: Dict[tuple, object] = {}
        for b, c in vec.items():
            for o, a in self.cols.get(b, {}).items():
                s = out.get(o, 0) + a * c
                if s:
                    out[o] = s
                else:
                    out.pop(o, None)
        return out

    def column(self, inp) -> Dict[tuple, object]:
        return dict(self.cols.get(tuple(inp), {}))

    # -- algebra
    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        assert self.legs == other.legs
        res = TensorOperator(self.params, self.legs)
        for inp, col in other.cols.items():
            img = self.apply(col)
            if img:
                res.cols[inp] = img
        return res

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        res = TensorOperator(self.params, self.legs, {k: dict(v) for k, v in self.cols.items()})
        for out, inp, c in other.entries():
            res._add_entry(out, inp, c)
        return res

    def __neg__(self) -> "TensorOperator":
        return self.scale(-1)

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self + (-other)

    def scale(self, c) -> "TensorOperator":
        res = TensorOperator(self.params, self.legs)
        if not c:
            return res
        for inp, col in self.cols.items():
            newcol = {o: a * c for o, a in col.items()}
            newcol = {o: a for o, a in newcol.items() if a}
            if newcol:
                res.cols[inp] = newcol
        return res

    def is_zero(self) -> bool:
        return not any(self.cols.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def nonzero_count(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def embed(self, positions: Sequence[int], legs: int) -> "TensorOperator":
        """Act with this operator on the given (1-based) legs of a ``legs``-fold space."""
        pos = [p - 1 for p in positions]
        assert len(pos) == self.legs
        res = TensorOperator(self.params, legs)
        for b in basis(self.n, legs):
            sub = tuple(b[p] for p in pos)
            col = self.cols.get(sub)
            if not col:
                continue
            img = {}
            for o, c in col.items():
                nb = list(b)
                for p, v in zip(pos, o):
                    nb[p] = v
                img[tuple(nb)] = c
            res.cols[b] = img
        return res

    def dense(self):
        """Nested list of entries (rows = outputs) in lexicographic basis order."""
        bs = basis(self.n, self.legs)
        return [[self.entry(r, c) for c in bs] for r in bs]

    def __repr__(self) -> str:
        return f"TensorOperator(n={self.n}, legs={self.legs}, nnz={self.nonzero_count()})"


def basis(n: int, legs: int):
    return list(product(range(1, n + 1), repeat=legs))


# ---------------------------------------------------------------------------
# the R-matrix family

def r_matrix(params: Params) -> TensorOperator:
    """R = u sum e_ii(x)e_ii + u^-1 sum_{i>j} p_ji e_ii(x)e_jj
    + u^-1 sum_{i<j} q_ij e_ii(x)e_jj + (u-u^-1) sum_{i>j} e_ij(x)e_ji."""
    n, u = params.n, params.u
    ents = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                ents.append(((i, i), (i, i), u))
            elif i > j:
                ents.append(((i, j), (i, j), params.p(j, i) / u))
                ents.append(((i, j), (j, i), u - 1 / u))
            else:
                ents.append(((i, j), (i, j), params.q(i, j) / u))
    return TensorOperator.from_entries(params, 2, ents)


def r_plus(params: Params) -> TensorOperator:
    n, u = params.n, params.u
    ents = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                ents.append(((i, i), (i, i), u))
            elif i < j:
                ents.append(((i, j), (i, j), params.p(i, j) / u))
                ents.append(((i, j), (j, i), u - 1 / u))
            else:
                ents.append(((i, j), (i, j), params.q(j, i) / u))
    return TensorOperator.from_entries(params, 2, ents)


def r_minus(params: Params) -> TensorOperator:
    n, u = params.n, params.u
    ents = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                ents.append(((i, i), (i, i), 1 / u))
            elif i > j:
                ents.append(((i, j), (i, j), u / params.p(j, i)))
                ents.append(((i, j), (j, i), 1 / u - u))
            else:
                ents.append(((i, j), (i, j), u / params.q(i, j)))
    return TensorOperator.from_entries(params, 2, ents)


def permutation_operator(params: Params) -> TensorOperator:
    one = params.one
    return TensorOperator.from_entries(
        params, 2, [((j, i), (i, j), one) for i, j in basis(params.n, 2)]
    )


def r_spectral(params: Params, lam) -> TensorOperator:
    """R(lam) = lam R^+ - lam^-1 R^-."""
    return r_plus(params).scale(lam) - r_minus(params).scale(1 / lam)


def rhat(params: Params) -> TensorOperator:
    return permutation_operator(params) @ r_matrix(params)


def rhat_spectral(params: Params, lam) -> TensorOperator:
    return permutation_operator(params) @ r_spectral(params, lam)


def build(kind: str, params: Params, lam=None) -> TensorOperator:
    """Build one of R, Rplus, Rminus, Rlambda, P, Rhat, Rhat_lambda.

    ``lam`` is a spectral value (a scalar or a symbol name).
    """
    if isinstance(lam, str):
        lam = params.sym(lam)
    table = {
        "R": lambda: r_matrix(params),
        "Rplus": lambda: r_plus(params),
        "Rminus": lambda: r_minus(params),
        "P": lambda: permutation_operator(params),
        "Rhat": lambda: rhat(params),
        "Rlambda": lambda: r_spectral(params, lam),
        "Rhat_lambda": lambda: rhat_spectral(params, lam),
    }
    if kind not in table:
        raise ValueError(f"unknown operator kind {kind!r}")
    if kind in ("Rlambda", "Rhat_lambda") and lam is None:
        raise ValueError(f"{kind} needs a spectral value")
    return table[kind]()


# ---------------------------------------------------------------------------
# antisymmetrizers and the fusion diagonal

def antisymmetrizer_s(params: Params, k: int) -> TensorOperator:
    """s_2 = Rhat_12(u^-1); s_{j+1} = Rhat_12(u^-1) Rhat_23(u^-2) ... Rhat_{j,j+1}(u^-j) s_j,
    realized on k legs."""
    if k < 2:
        raise ValueError("k must be at least 2")
    u = params.u
    cache = {}

    def rh(m):
        if m not in cache:
            cache[m] = rhat_spectral(params, u ** (-m))
        return cache[m]

    s = rh(1).embed((1, 2), k)
    for j in range(2, k):
        chain = rh(1).embed((1, 2), k)
        for m in range(2, j + 1):
            chain = chain @ rh(m).embed((m, m + 1), k)
        s = chain @ s
    return s


def antisymmetrizer_a(params: Params, normalization: str = "idempotent") -> TensorOperator:
    """Normalized antisymmetrizer on n legs,
    N * sum_{sigma,tau} (-q)_sigma^-1 (-p)_tau^-1 e_{s1 t1} (x) ... (x) e_{sn tn}.

    With ``normalization="idempotent"`` N = 1/[n]_{u^-2}!, which makes the
    operator a projector.  ``"literal"`` uses N = 1/[n]_{u^2}!, an alternative
    value; that operator squares to u^{n(n-1)} times itself.
    """
    n = params.n
    perms = list(permutations(range(1, n + 1)))
    wq = {s: 1 / inversion_weight("q", s, params) for s in perms}
    wp = {s: 1 / inversion_weight("p", s, params) for s in perms}
    if normalization == "idempotent":
        norm = 1 / q_factorial(n, params.u ** -2)
    elif normalization == "literal":
        norm = 1 / q_factorial(n, params.u ** 2)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    ents = []
    for s in perms:
        for t in perms:
            ents.append((s, t, norm * wq[s] * wp[t]))
    return TensorOperator.from_entries(params, n, ents)


def antisymmetrizer(params: Params, k: Optional[int] = None, form: str = "A"):
    """s_k by the R-hat recursion (form "s") or the projector A (form "A", k = n)."""
    k = params.n if k is None else k
    if form == "s":
        return antisymmetrizer_s(params, k)
    if form == "A":
        if k != params.n:
            raise ValueError("the projector form is defined on n legs")
        return antisymmetrizer_a(params)
    raise ValueError(f"unknown form {form!r}")


def antisymmetrizer_scalar(params: Params):
    """c_n with s_n = c_n A: prod_{m=1}^{n-1} (u^{m+1} - u^{-m-1})^{n-m}."""
    n, u = params.n, params.u
    c = params.one
    for m in range(1, n):
        c = c * (u ** (m + 1) - u ** (-m - 1)) ** (n - m)
    return c


def antisymmetrizer_scalar_literal(params: Params):
    """(u - u^-1)^{n(n-1)/2} [n]_{u^2}!, an alternative constant that fails."""
    n, u = params.n, params.u
    return (u - 1 / u) ** (n * (n - 1) // 2) * q_factorial(n, u ** 2)


def fusion_m_diagonal(params: Params, x):
    """Diagonal entries M_ii(x), i = 1..n, of the fusion identity:
    u^{1-n} (xu - x^-1 u^-1) prod_{m=1}^{n-1} (x u^-m - x^-1 u^m)
    prod_{j<i} q_ji prod_{j>i} p_ij."""
    n, u = params.n, params.u
    base = u ** (1 - n) * (x * u - 1 / (x * u))
    for m in range(1, n):
        base = base * (x * u ** (-m) - u ** m / x)
    out = []
    for i in range(1, n + 1):
        val = base
        for j in range(1, i):
            val = val * params.q(j, i)
        for j in range(i + 1, n + 1):
            val = val * params.p(i, j)
        out.append(val)
    return out


def fusion_m_diagonal_literal(params: Params, x):
    """M_ii(x) with the product over j != i of (x u^{2-j} - x^-1 u^{j-2}), the literal variant, which fails."""
    n, u = params.n, params.u
    out = []
    for i in range(1, n + 1):
        val = u ** (1 - n) * (x * u - 1 / (x * u))
        for j in range(1, n + 1):
            if j != i:
                val = val * (x * u ** (2 - j) - u ** (j - 2) / x)
        for j in range(1, i):
            val = val * params.q(j, i)
        for j in range(i + 1, n + 1):
            val = val * params.p(i, j)
        out.append(val)
    return out


def diagonal_operator(params: Params, diag: Sequence) -> TensorOperator:
    return TensorOperator.from_entries(
        params, 1, [((i + 1,), (i + 1,), d) for i, d in enumerate(diag)]
    )


# ---------------------------------------------------------------------------
# verification routines

def _spectral(params: Params, name: str):
    return params.sym(name)


def yang_baxter_check(params: Params, spectral: bool = True) -> Report:
    """Constant and spectral Yang-Baxter equations, braid form, and R R^- = 1, R^+ = PRP."""
    rep = Report()
    n = params.n
    R, Rm, P = r_matrix(params), r_minus(params), permutation_operator(params)
    I2 = TensorOperator.identity(params, 2)
    rep.add(check("rmatrix.inverse", "R times R^- is the identity", R @ Rm == I2 and Rm @ R == I2))
    rep.add(check("rmatrix.rplus", "R^+ equals PRP", P @ R @ P == r_plus(params)))
    e = lambda op, a, b: op.embed((a, b), 3)
    lhs = e(R, 1, 2) @ e(R, 1, 3) @ e(R, 2, 3)
    rhs = e(R, 2, 3) @ e(R, 1, 3) @ e(R, 1, 2)
    rep.add(check("rmatrix.ybe", "constant Yang-Baxter equation", lhs == rhs, f"n={n}"))
    if spectral:
        lam, mu = _spectral(params, "lam"), _spectral(params, "mu")
        Rl, Rm_, Rlm = r_spectral(params, lam), r_spectral(params, mu), r_spectral(params, lam / mu)
        lhs = e(Rlm, 1, 2) @ e(Rl, 1, 3) @ e(Rm_, 2, 3)
        rhs = e(Rm_, 2, 3) @ e(Rl, 1, 3) @ e(Rlm, 1, 2)
        rep.add(check("rmatrix.ybe_spectral", "spectral Yang-Baxter equation", lhs == rhs,
                      "symbolic in lam, mu" if params.symbolic else "specialized"))
        Hl, Hm, Hlm = (P @ Rl), (P @ Rm_), (P @ Rlm)
        lhs = e(Hlm, 1, 2) @ e(Hl, 2, 3) @ e(Hm, 1, 2)
        rhs = e(Hm, 2, 3) @ e(Hl, 1, 2) @ e(Hlm, 2, 3)
        rep.add(check("rmatrix.braid", "spectral braid relation", lhs == rhs))
    return rep


def exterior_relations_from_hecke(params: Params):
    """Quadratic relations cut out by f = Rhat + u^-1.

    Returns (x_side, y_side): the row space of f (relations of the column
    vector algebra) and its column space (relations of the row vector
    algebra), each as a list of dicts keyed by index pairs.
    """
    f = rhat(params) + TensorOperator.identity(params, 2).scale(1 / params.u)
    rows: Dict[tuple, dict] = {}
    for out, inp, c in f.entries():
        rows.setdefault(out, {})[inp] = c
    x_side = list(echelon(rows.values()).values())
    y_side = list(echelon(f.cols.values()).values())
    return x_side, y_side


def hecke_check(params: Params) -> Report:
    rep = Report()
    u = params.u
    H = rhat(params)
    I2 = TensorOperator.identity(params, 2)
    q = (H - I2.scale(u)) @ (H + I2.scale(1 / u))
    rep.add(check("rmatrix.hecke", "Hecke quadratic relation of Rhat", q.is_zero()))
    n = params.n
    one = params.one
    exp_x, exp_y = [], []
    for i in range(1, n + 1):
        exp_x.append({(i, i): one})
        exp_y.append({(i, i): one})
        for j in range(i + 1, n + 1):
            exp_x.append({(j, i): one, (i, j): params.q(i, j)})
            exp_y.append({(j, i): one, (i, j): params.p(i, j)})
    xs, ys = exterior_relations_from_hecke(params)
    rep.add(check("rmatrix.hecke_x_relations", "Hecke image gives the q-exterior relations",
                  same_span(xs, exp_x)))
    rep.add(check("rmatrix.hecke_y_relations", "Hecke image gives the p-exterior relations",
                  same_span(ys, exp_y)))
    return rep


def antisymmetrizer_check(params: Params) -> Report:
    """Idempotency of A, s_n = c_n A, annihilation of repeated indices, and
    the failure of the literal normalization and constant."""
    rep = Report()
    n = params.n
    A = antisymmetrizer_a(params)
    s = antisymmetrizer_s(params, n) if n >= 2 else A
    rep.add(check("antisym.idempotent", "A is idempotent", A @ A == A))
    if n >= 2:
        rep.add(check("antisym.s_vs_A", "s_n equals c_n A", s == A.scale(antisymmetrizer_scalar(params))))
        rep_ok = all(not A.column(b) for b in basis(n, n) if len(set(b)) < n)
        rep.add(check("antisym.repeated", "A kills basis vectors with a repeated index", rep_ok))
        lit = antisymmetrizer_a(params, "literal")
        rep.add(check("antisym.literal_not_idempotent",
                      "literal normalization is not idempotent (expected discrepancy)",
                      not (lit @ lit == lit)))
        rep.add(check("antisym.literal_constant_fails",
                      "literal s_n constant fails (expected discrepancy)",
                      not (s == lit.scale(antisymmetrizer_scalar_literal(params)))))
    return rep


def fusion_sides(params: Params, x):
    """(lhs, middle, rhs) of the fusion identity on n+1 legs, auxiliary leg first."""
    n, u = params.n, params.u
    legs = n + 1
    A = antisymmetrizer_a(params).embed(tuple(range(2, n + 2)), legs)
    lhs = A
    for k in range(n, 0, -1):
        lhs = lhs @ r_spectral(params, x * u ** (-(k - 1))).embed((1, k + 1), legs)
    mid = TensorOperator.identity(params, legs)
    for k in range(n, 0, -1):
        mid = mid @ r_spectral(params, x * u ** (-(n - k))).embed((1, k + 1), legs)
    mid = mid @ A
    M = diagonal_operator(params, fusion_m_diagonal(params, x)).embed((1,), legs)
    return lhs, mid, M @ A


def fusion_check(params: Params) -> Report:
    rep = Report()
    x = _spectral(params, "x")
    lhs, mid, rhs = fusion_sides(params, x)
    rep.add(check("fusion.first", "fusion: reversed spectral chain", lhs == mid))
    rep.add(check("fusion.diagonal", "fusion: diagonal M(x) times A", lhs == rhs))
    n = params.n
    if n >= 2:
        legs = n + 1
        A = antisymmetrizer_a(params).embed(tuple(range(2, n + 2)), legs)
        Ml = diagonal_operator(params, fusion_m_diagonal_literal(params, x)).embed((1,), legs)
        rep.add(check("fusion.literal_fails", "literal M(x) fails (expected discrepancy)",
                      not (lhs == Ml @ A)))
    return rep


def rtt_consistency_check(params: Params, alg=None) -> Report:
    """R T1 T2 - T2 T1 R normal-forms to zero entrywise."""
    from .qmatrix import QuantumMatrixAlgebra

    alg = alg or QuantumMatrixAlgebra(params)
    bad = []
    entries = alg.rtt_entries()
    for key, row in sorted(entries.items()):
        if alg.element_from_words(row.items()):
            bad.append(key)
    return Report([check("rtt.consistency", "RTT relation holds entrywise", not bad,
                         f"{len(entries)} entries", bad[:3] or None)])
