"""Quantum Pfaffians and hyper-Pfaffians of formal (hyper)matrices.

Entries are free noncommuting generators b_I (I strictly increasing) that
commute with the t_ij.  A ``BMixedElement`` stores, for each b-word and
exterior monomial, the t-part as an ``AlgebraElement``; b-words sit on the
left, then the t-part, then the exterior monomial.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .exterior import ext_monomial_product
from .qmatrix import AlgebraElement, QuantumMatrixAlgebra
from .report import Report, check
from .scalars import Params, inversion_weight

__all__ = [
    "BMixedElement", "b_gen", "b_entry", "block_permutations", "pf", "pf_formal", "inv_weight",
    "pf_expansion_check", "omega_oracle", "omega_oracle_check", "congruence_entries",
    "literal_congruence_entries", "congruence", "congruence_column", "z_element_eigen_check",
    "render_b",
]

BWord = Tuple[Tuple[int, ...], ...]
Mono = Tuple[int, ...]


class BMixedElement:
    """Sum of b-word * t-polynomial * exterior monomial."""

    __slots__ = ("alg", "side", "terms")

    def __init__(self, alg: QuantumMatrixAlgebra, terms: Dict[Tuple[BWord, Mono], AlgebraElement] = None,
                 side: str = "q"):
        self.alg = alg
        self.side = side
        self.terms = terms or {}

    @classmethod
    def unit(cls, alg: QuantumMatrixAlgebra, side: str = "q") -> "BMixedElement":
        return cls(alg, {((), ()): alg.one()}, side)

    @classmethod
    def monomial(cls, alg, bword: BWord = (), tpart: AlgebraElement = None, xmono: Mono = (),
                 side: str = "q") -> "BMixedElement":
        tpart = alg.one() if tpart is None else tpart
        return cls(alg, {(tuple(bword), tuple(xmono)): tpart} if tpart else {}, side)

    @staticmethod
    def _acc(d, k, v) -> None:
        if k in d:
            s = d[k] + v
            if s:
                d[k] = s
            else:
                del d[k]
        elif v:
            d[k] = v

    def __add__(self, other: "BMixedElement") -> "BMixedElement":
        d = dict(self.terms)
        for k, v in other.terms.items():
            self._acc(d, k, v)
        return BMixedElement(self.alg, d, self.side)

    def __neg__(self) -> "BMixedElement":
        return BMixedElement(self.alg, {k: -v for k, v in self.terms.items()}, self.side)

    def __sub__(self, other: "BMixedElement") -> "BMixedElement":
        return self + (-other)

    def __mul__(self, other) -> "BMixedElement":
        if isinstance(other, AlgebraElement):
            return BMixedElement(self.alg, {k: v * other for k, v in self.terms.items()}, self.side) \
                if other.terms else BMixedElement(self.alg, {}, self.side)
        if not isinstance(other, BMixedElement):
            if not other:
                return BMixedElement(self.alg, {}, self.side)
            return BMixedElement(self.alg, {k: v * other for k, v in self.terms.items()}, self.side)
        P = self.alg.params
        out: dict = {}
        for (ba, xa), a in self.terms.items():
            for (bb, xb), b in other.terms.items():
                c, xm = ext_monomial_product(P, self.side, xa, xb)
                if xm is None:
                    continue
                self._acc(out, (ba + bb, xm), (a * b) * c)
        return BMixedElement(self.alg, out, self.side)

    def __rmul__(self, c) -> "BMixedElement":
        if isinstance(c, AlgebraElement):
            # t's commute with b's and exterior generators
            return BMixedElement(self.alg, {k: c * v for k, v in self.terms.items()}, self.side)
        return self * c

    def __pow__(self, k: int) -> "BMixedElement":
        out = BMixedElement.unit(self.alg, self.side)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BMixedElement) and not (self - other).terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, xmono: Mono) -> "BMixedElement":
        """The part attached to the exterior monomial ``xmono``, with that monomial dropped."""
        return BMixedElement(self.alg, {(bw, ()): v for (bw, xm), v in self.terms.items()
                                        if xm == tuple(xmono)}, self.side)

    def map_t(self, f: Callable[[AlgebraElement], AlgebraElement]) -> "BMixedElement":
        out: dict = {}
        for k, v in self.terms.items():
            self._acc(out, k, f(v))
        return BMixedElement(self.alg, out, self.side)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (bw, xm), v in sorted(self.terms.items()):
            b = "*".join("b" + "".join(map(str, g)) for g in bw) or "1"
            x = "*".join(f"x{i}" for i in xm)
            parts.append(f"{b}*({v})" + (f"*{x}" if x else ""))
        return " + ".join(parts)

    __repr__ = __str__


def b_gen(alg: QuantumMatrixAlgebra, idx: Sequence[int], side: str = "q") -> BMixedElement:
    idx = tuple(idx)
    if list(idx) != sorted(set(idx)):
        raise ValueError(f"b-generator indices must be strictly increasing, got {idx}")
    return BMixedElement.monomial(alg, (idx,), side=side)


def b_entry(alg: QuantumMatrixAlgebra, i: int, j: int, kind: str = "p", side: str = "q") -> BMixedElement:
    """Entry (i, j) of an antisymmetric B: b_ji = -c_ij b_ij for i < j, with c = p or q."""
    if i == j:
        return BMixedElement(alg, {}, side)
    if i < j:
        return b_gen(alg, (i, j), side)
    return b_gen(alg, (j, i), side) * (-alg.params.param(kind, j, i))


def block_permutations(indices: Sequence[int], m: int) -> Iterator[Tuple[int, ...]]:
    """All arrangements of ``indices`` into consecutive ascending m-blocks (every block order)."""
    indices = tuple(sorted(indices))
    if len(indices) % m:
        raise ValueError(f"{len(indices)} indices do not split into blocks of {m}")
    if not indices:
        yield ()
        return
    for first in combinations(indices, m):
        rest = tuple(i for i in indices if i not in first)
        for tail in block_permutations(rest, m):
            yield first + tail


def _weight(P: Params, kind: str, seq: Sequence[int]):
    return inversion_weight(kind, seq, P, check=False)


def pf(alg: QuantumMatrixAlgebra, entry: Callable[[Tuple[int, ...]], BMixedElement], m: int,
       indices: Sequence[int], weight_kind: str = "q", side: str = "q") -> BMixedElement:
    """sum over block permutations sigma of (-c)_sigma entry(block_1) ... entry(block_k)."""
    if m < 2:
        raise ValueError("arity must be at least 2")
    indices = tuple(indices)
    if len(indices) % m:
        raise ValueError(f"shape mismatch: {len(indices)} indices, arity {m}")
    P = alg.params
    out = BMixedElement(alg, {}, side)
    for sigma in block_permutations(indices, m):
        term = BMixedElement.unit(alg, side)
        for k in range(0, len(sigma), m):
            term = term * entry(sigma[k:k + m])
            if not term:
                break
        out = out + term * _weight(P, weight_kind, sigma)
    return out


def pf_formal(alg: QuantumMatrixAlgebra, m: int, N: int, weight_kind: str = "q") -> BMixedElement:
    """Pf of the formal (hyper)matrix of generators b_I on indices 1..N."""
    if N < 0 or N % m:
        raise ValueError(f"shape mismatch: size {N} is not a multiple of {m}")
    return pf(alg, lambda I: b_gen(alg, I), m, range(1, N + 1), weight_kind)


def inv_weight(P: Params, I: Sequence[int], J: Sequence[int], kind: str = "q"):
    """prod over i in I, j in J with i > j of (-c_ji)."""
    w = P.one
    for i in I:
        for j in J:
            if i > j:
                w = w * -P.param(kind, j, i)
    return w


def pf_expansion_check(alg: QuantumMatrixAlgebra, m: int, N: int, t: int = None,
                       weight_kind: str = "q") -> Report:
    """Pf(B) = sum_I inv(I, I^c) Pf(B_I) Pf(B_{I^c}) over |I| = m t, for every t (or the given one)."""
    P = alg.params
    full = range(1, N + 1)
    entry = lambda I: b_gen(alg, I)
    whole = pf(alg, entry, m, full, weight_kind)
    ts = range(0, N // m + 1) if t is None else [t]
    rep = Report()
    for s in ts:
        rhs = BMixedElement(alg)
        for I in combinations(full, m * s):
            J = tuple(k for k in full if k not in I)
            rhs = rhs + pf(alg, entry, m, I, weight_kind) * pf(alg, entry, m, J, weight_kind) \
                * inv_weight(P, I, J, weight_kind)
        rep.add(check(f"pfaffian.expansion_m{m}_N{N}_t{s}", "Pfaffian expansion over index subsets",
                      rhs == whole, f"m={m} N={N} t={s}"))
    return rep


def omega_oracle(alg: QuantumMatrixAlgebra, N: int, weight_kind: str = "q") -> BMixedElement:
    """Top coefficient of Omega^{N/2}, Omega = sum over all i, j of b_ij x_i x_j, divided by (1 + u^2)^{N/2}.

    The exterior algebra is the one whose sign matches ``weight_kind``; B is
    antisymmetric with the other parameter family.
    """
    P = alg.params
    anti = "p" if weight_kind == "q" else "q"
    om = BMixedElement(alg, {}, weight_kind)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            x = BMixedElement.monomial(alg, (), None, (i,), weight_kind) * \
                BMixedElement.monomial(alg, (), None, (j,), weight_kind)
            om = om + b_entry(alg, i, j, anti, weight_kind) * x
    top = (om ** (N // 2)).coefficient(tuple(range(1, N + 1)))
    return BMixedElement(alg, top.terms, "q") * (1 / (1 + P.u ** 2) ** (N // 2))


def omega_oracle_check(alg: QuantumMatrixAlgebra, N: int, weight_kind: str = "q") -> Report:
    got = omega_oracle(alg, N, weight_kind)
    exp = pf_formal(alg, 2, N, weight_kind)
    return Report([check(f"pfaffian.omega_oracle_{weight_kind}_N{N}",
                         "top power of the two-form gives (1+u^2)^n times the Pfaffian", got == exp,
                         f"N={N}")])


def congruence_entries(alg: QuantumMatrixAlgebra, m: int, column: bool = False) -> Dict[Tuple[int, ...], BMixedElement]:
    """c_I = sum_J det_q(T with rows J, cols I) b_J, or rows I, cols J for the column analog."""
    N = alg.n
    blocks = list(combinations(range(1, N + 1), m))
    out = {}
    for I in blocks:
        c = BMixedElement(alg)
        for J in blocks:
            minor = alg.minor(I, J) if column else alg.minor(J, I)
            if minor.terms:
                c = c + b_gen(alg, J) * minor
        out[I] = c
    return out


def literal_congruence_entries(alg: QuantumMatrixAlgebra, column: bool = False) -> Dict[Tuple[int, int], BMixedElement]:
    """All entries of T^t B T (or T B T^t for the column analog) with antisymmetric B."""
    N = alg.n
    kind = "q" if column else "p"
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            c = BMixedElement(alg)
            for k in range(1, N + 1):
                for l in range(1, N + 1):
                    b = b_entry(alg, k, l, kind)
                    if not b:
                        continue
                    tp = alg.t(i, k) * alg.t(j, l) if column else alg.t(k, i) * alg.t(l, j)
                    c = c + b * tp
            out[(i, j)] = c
    return out


def _congruence(alg: QuantumMatrixAlgebra, m: int, column: bool) -> Report:
    N, P = alg.n, alg.params
    if N % m:
        raise ValueError(f"shape mismatch: size {N} is not a multiple of {m}")
    tag = "column_" if column else ""
    kind = "p" if column else "q"
    anti = "q" if column else "p"
    rep = Report()
    C = congruence_entries(alg, m, column)
    if m == 2:
        lit = literal_congruence_entries(alg, column)
        rep.add(check(f"pfaffian.{tag}minor_sum", "entries of the congruent matrix as sums of 2-minors",
                      all(lit[I] == C[I] for I in C), f"N={N}"))
        rep.add(check(f"pfaffian.{tag}diagonal_zero", "diagonal of the congruent matrix vanishes",
                      all(not lit[(i, i)] for i in range(1, N + 1))))
        bad = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)
               if lit[(j, i)] != lit[(i, j)] * (-P.param(anti, i, j))]
        rep.add(check(f"pfaffian.{tag}antisymmetry", "congruent matrix keeps the antisymmetry",
                      not bad, counterexample=bad or None))
    lhs = pf(alg, lambda I: C[I], m, range(1, N + 1), kind)
    rhs = pf(alg, lambda I: b_gen(alg, I), m, range(1, N + 1), kind) * alg.det()
    rep.add(check(f"pfaffian.{tag}congruence_m{m}", "Pf(C) = det_q(T) Pf(B)", lhs == rhs,
                  f"m={m} N={N} mode={P.mode}"))
    return rep


def congruence(alg: QuantumMatrixAlgebra, m: int = 2) -> Report:
    """Pf_q(C) = det_q(T) Pf_q(B) with c_I = sum_J det_q(T^J_I) b_J (C = T^t B T when m = 2)."""
    return _congruence(alg, m, column=False)


def congruence_column(alg: QuantumMatrixAlgebra, m: int = 2) -> Report:
    """Pf_p(C) = det_q(T) Pf_p(B) with c_I = sum_J det_q(T^I_J) b_J (C = T B T^t when m = 2)."""
    return _congruence(alg, m, column=True)


def _eigen_table(P: Params, N: int, k: int, sign: str):
    u = P.u
    c = P.one
    if sign == "+":
        c = u ** (2 - N) if N <= 2 else 1 / u ** (N - 2)
        for j in range(1, k):
            c = c * P.q(j, k)
        for j in range(k + 1, N + 1):
            c = c * P.p(k, j)
        return c
    c = u ** (N - 2) if N >= 2 else 1 / u ** (2 - N)
    for j in range(1, k):
        c = c / P.p(j, k)
    for j in range(k + 1, N + 1):
        c = c / P.q(k, j)
    return c


def z_element_eigen_check(alg: QuantumMatrixAlgebra) -> Report:
    """Pf_q(z^l) and Pf_p(z^r) are eigenvectors of the diagonal l^pm_kk and killed by the rest."""
    from .dualaction import DualAction

    N, P = alg.n, alg.params
    if N % 2:
        raise ValueError("the z-elements need an even size")
    action = DualAction(alg)
    zl = congruence_entries(alg, 2, column=False)
    zr = congruence_entries(alg, 2, column=True)
    pfl = pf(alg, lambda I: zl[I], 2, range(1, N + 1), "q")
    pfr = pf(alg, lambda I: zr[I], 2, range(1, N + 1), "p")
    rep = Report()
    for side, elem in (("left", pfl), ("right", pfr)):
        bad_diag, bad_off = [], []
        for sign in "+-":
            for a in range(1, N + 1):
                for b in range(1, N + 1):
                    if not action.valid_generator(sign, a, b):
                        continue
                    got = elem.map_t(lambda v: action.act_matrix_poly(sign, side, v).get((a, b), alg.zero()))
                    if a == b:
                        if got != elem * _eigen_table(P, N, a, sign):
                            bad_diag.append((sign, a))
                    elif got:
                        bad_off.append((sign, a, b))
        name = "Pf_q(z^l)" if side == "left" else "Pf_p(z^r)"
        rep.add(check(f"pfaffian.z_{side}_diagonal", f"diagonal generators scale {name}",
                      not bad_diag, f"N={N}", bad_diag or None))
        rep.add(check(f"pfaffian.z_{side}_offdiagonal", f"off-diagonal generators annihilate {name}",
                      not bad_off, counterexample=bad_off[:3] or None))
    return rep


def render_b(elem: BMixedElement, fmt=str) -> str:
    """Readable form of a Pfaffian of formal generators: scalar*b_I*b_J..., terms sorted by b-word."""
    if not elem.terms:
        return "0"
    parts = []
    for (bw, xm), v in sorted(elem.terms.items(), key=lambda kv: kv[0]):
        c = v.terms.get((), None) if set(v.terms) <= {()} else None
        name = "*".join("b" + "".join(map(str, g)) for g in bw) or "1"
        if c is None:
            parts.append(("+", f"({v})*{name}"))
            continue
        cs = fmt(c)
        if cs == "1":
            parts.append(("+", name))
        elif cs == "-1":
            parts.append(("-", name))
        elif cs.startswith("-") and " " not in cs.strip():
            parts.append(("-", f"{cs[1:]}*{name}"))
        else:
            parts.append(("+", f"({cs})*{name}" if " " in cs else f"{cs}*{name}"))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
