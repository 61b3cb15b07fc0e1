"""Quantum exterior algebras on x (q-side) and y (p-side), and mixed elements.

On the q-side x_j x_i = -q_ij x_i x_j and x_i^2 = 0; on the p-side the same
with p.  A ``MixedElement`` lives in (y-algebra) (x) M (x) (x-algebra): each
term pairs a y-monomial and an x-monomial with an algebra coefficient.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Dict, Sequence, Tuple

from .qmatrix import AlgebraElement, QuantumMatrixAlgebra, TensorSquareElement
from .report import Report, check
from .scalars import Params, inversion_weight, q_factorial

__all__ = [
    "ExtElement", "MixedElement", "ext_multiply", "ext_monomial_product",
    "coaction_products", "phi", "phi_power", "omega", "omega_relation_check",
    "partial_coaction", "exterior_checks",
]

Mono = Tuple[int, ...]


def ext_monomial_product(params: Params, side: str, a: Mono, b: Mono):
    """(coefficient, monomial) of the product of two sorted exterior monomials."""
    if side not in ("q", "p"):
        raise ValueError(f"unknown side {side!r}")
    par = params.q if side == "q" else params.p
    coef = params.one
    cur = list(a)
    for k in b:
        if k in cur:
            return params.zero, None
        # move k left past every larger index already present
        for j in cur:
            if j > k:
                coef = -coef * par(k, j)
        cur.append(k)
        cur.sort()
    return coef, tuple(cur)


class ExtElement:
    """Element of one of the two exterior algebras."""

    __slots__ = ("params", "side", "terms")

    def __init__(self, params: Params, side: str, terms: Dict[Mono, object] = None):
        if side not in ("q", "p"):
            raise ValueError(f"unknown side {side!r}")
        self.params = params
        self.side = side
        self.terms = terms or {}

    @classmethod
    def gen(cls, params: Params, side: str, i: int) -> "ExtElement":
        if not 1 <= i <= params.n:
            raise IndexError(i)
        return cls(params, side, {(i,): params.one})

    @classmethod
    def unit(cls, params: Params, side: str) -> "ExtElement":
        return cls(params, side, {(): params.one})

    def __add__(self, other: "ExtElement") -> "ExtElement":
        _same_side(self, other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return ExtElement(self.params, self.side, d)

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.params, self.side, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def __mul__(self, other) -> "ExtElement":
        if isinstance(other, ExtElement):
            return ext_multiply(self, other)
        return ExtElement(self.params, self.side,
                          {m: c * other for m, c in self.terms.items() if other})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtElement) and self.side == other.side and not (self - other).terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        v = "x" if self.side == "q" else "y"
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*" + ("*".join(f"{v}{i}" for i in m) or "1")
                          for m, c in sorted(self.terms.items()))


def _same_side(a: ExtElement, b: ExtElement) -> None:
    if a.side != b.side:
        raise ValueError("cannot combine elements of different exterior algebras")


def ext_multiply(a: ExtElement, b: ExtElement) -> ExtElement:
    _same_side(a, b)
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c, m = ext_monomial_product(a.params, a.side, m1, m2)
            if m is None:
                continue
            s = out.get(m, 0) + c * c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return ExtElement(a.params, a.side, out)


class MixedElement:
    """Sum of y_A (x) body (x) x_B; bodies are algebra or localized elements."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: QuantumMatrixAlgebra, terms: Dict[Tuple[Mono, Mono], object] = None):
        self.alg = alg
        self.terms = terms or {}

    @classmethod
    def unit(cls, alg: QuantumMatrixAlgebra) -> "MixedElement":
        return cls(alg, {((), ()): alg.one()})

    @classmethod
    def term(cls, alg, ymono: Mono, body, xmono: Mono) -> "MixedElement":
        return cls(alg, {(tuple(ymono), tuple(xmono)): body} if body else {})

    def _acc(self, d, k, v) -> None:
        if k in d:
            s = d[k] + v
            if s:
                d[k] = s
            else:
                del d[k]
        elif v:
            d[k] = v

    def __add__(self, other: "MixedElement") -> "MixedElement":
        d = dict(self.terms)
        for k, v in other.terms.items():
            self._acc(d, k, v)
        return MixedElement(self.alg, d)

    def __neg__(self) -> "MixedElement":
        return MixedElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "MixedElement") -> "MixedElement":
        return self + (-other)

    def __mul__(self, other) -> "MixedElement":
        if not isinstance(other, MixedElement):
            return MixedElement(self.alg, {k: v * other for k, v in self.terms.items() if other})
        P = self.alg.params
        out: dict = {}
        for (ya, xa), a in self.terms.items():
            for (yb, xb), b in other.terms.items():
                cy, ym = ext_monomial_product(P, "p", ya, yb)
                if ym is None:
                    continue
                cx, xm = ext_monomial_product(P, "q", xa, xb)
                if xm is None:
                    continue
                self._acc(out, (ym, xm), (a * b) * (cy * cx))
        return MixedElement(self.alg, out)

    def __rmul__(self, c) -> "MixedElement":
        return MixedElement(self.alg, {k: v * c for k, v in self.terms.items() if c})

    def __pow__(self, k: int) -> "MixedElement":
        out = MixedElement.unit(self.alg)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MixedElement) and not (self - other).terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, ymono: Sequence[int] = (), xmono: Sequence[int] = ()):
        return self.terms.get((tuple(ymono), tuple(xmono)), self.alg.zero())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (ym, xm), b in sorted(self.terms.items()):
            y = "*".join(f"y{i}" for i in ym) or "1"
            x = "*".join(f"x{i}" for i in xm) or "1"
            parts.append(f"{y} (x) ({b}) (x) {x}")
        return " + ".join(parts)


def delta(alg: QuantumMatrixAlgebra, i: int) -> MixedElement:
    """delta_i = sum_j t_ij (x) x_j."""
    return MixedElement(alg, {((), (j,)): alg.t(i, j) for j in range(1, alg.n + 1)})


def partial_coaction(alg: QuantumMatrixAlgebra, i: int) -> MixedElement:
    """The right-coaction vector entry sum_j y_j (x) t_ji."""
    return MixedElement(alg, {((j,), ()): alg.t(j, i) for j in range(1, alg.n + 1)})


def coaction_products(alg: QuantumMatrixAlgebra, rows: Sequence[int]) -> MixedElement:
    """delta_{i_1} ... delta_{i_t}."""
    out = MixedElement.unit(alg)
    for i in rows:
        out = out * delta(alg, i)
    return out


def phi(alg: QuantumMatrixAlgebra) -> MixedElement:
    n = alg.n
    return MixedElement(alg, {((i,), (j,)): alg.t(i, j)
                              for i in range(1, n + 1) for j in range(1, n + 1)})


def phi_power(alg: QuantumMatrixAlgebra, k: int) -> MixedElement:
    if not 0 <= k <= alg.n:
        raise ValueError("exponent must lie in 0..n")
    return phi(alg) ** k


def omega(alg: QuantumMatrixAlgebra, i: int) -> MixedElement:
    """omega_i = y_i (x) delta_i."""
    return MixedElement(alg, {((i,), (j,)): alg.t(i, j) for j in range(1, alg.n + 1)})


def omega_relation_check(alg: QuantumMatrixAlgebra) -> Report:
    rep = Report()
    n, u = alg.n, alg.params.u
    om = [omega(alg, i) for i in range(1, n + 1)]
    rep.add(check("exterior.omega_square", "omega_i squared vanishes",
                  all(not (w * w) for w in om), f"n={n}"))
    bad = [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)
           if om[j] * om[i] != om[i] * om[j] * u ** 2]
    rep.add(check("exterior.omega_commute", "omega_j omega_i = u^2 omega_i omega_j",
                  not bad, f"{n * (n - 1) // 2} pairs", bad or None))
    return rep


def exterior_checks(alg: QuantumMatrixAlgebra) -> Report:
    """Dimension counts, coaction products against minors, shuffle signs,
    the top power of Phi, and coassociativity of the coaction on minors."""
    P, n = alg.params, alg.n
    rep = Report()
    for side in ("q", "p"):
        seen = set()
        for t in range(n + 1):
            for combo in permutations(range(1, n + 1), t):
                e = ExtElement.unit(P, side)
                for i in combo:
                    e = e * ExtElement.gen(P, side, i)
                seen.update(e.terms)
        top = [m for m in seen if len(m) == n]
        rep.add(check(f"exterior.dimension_{side}", "exterior algebra has dimension 2^n",
                      len(seen) == 2 ** n and len(top) == 1))
    ok = True
    for t in range(1, n + 1):
        for rows in combinations(range(1, n + 1), t):
            prod = coaction_products(alg, rows)
            for cols in combinations(range(1, n + 1), t):
                if prod.coefficient((), cols) != alg.minor(rows, cols):
                    ok = False
    rep.add(check("exterior.coaction_minors", "coaction products give quantum minors", ok))
    rep.add(check("exterior.coaction_repeated", "repeated rows in a coaction product vanish",
                  all(not coaction_products(alg, (i, i)) for i in range(1, n + 1))))
    from .qmatrix import shuffles

    full = coaction_products(alg, range(1, n + 1))
    ok = all(coaction_products(alg, s) == full * inversion_weight("q", s, P)
             for t in range(n + 1) for s in shuffles(n, t))
    rep.add(check("exterior.shuffle_sign", "shuffled coaction products pick up (-q) weights", ok))
    top = phi_power(alg, n)
    expect = MixedElement.term(alg, tuple(range(1, n + 1)),
                               alg.det() * q_factorial(n, P.u ** 2), tuple(range(1, n + 1)))
    rep.add(check("exterior.phi_power", "top power of Phi is [n]_{u^2}! det_q", top == expect))
    ok = True
    for t in range(1, n + 1):
        ks = list(combinations(range(1, n + 1), t))
        for rows in ks:
            for cols in ks:
                lhs = alg.coproduct(alg.minor(rows, cols))
                rhs = TensorSquareElement(alg, {})
                for k in ks:
                    rhs = rhs + TensorSquareElement.tensor(alg.minor(rows, k), alg.minor(k, cols))
                if lhs != rhs:
                    ok = False
    rep.add(check("exterior.minor_coproduct", "coproduct of a minor is a sum over minors", ok))
    rep.extend(omega_relation_check(alg))
    return rep
