"""Exact coefficient field for the multiparameter quantum group.

Elements are fractions of Laurent polynomials in ``u``, the ``p_ij``
(``i < j``) and a handful of spectral symbols, with rational coefficients.
Denominators are kept in factored form over a registry of "atoms"; no
multivariate gcd is ever computed.  Equality is decided by subtracting and
testing the numerator for zero, so it is exact regardless of how well a
fraction has been reduced.

A second coefficient mode is plain :class:`gmpy2.mpq`; every routine in the
package only uses ``+ - * /``, negation and truthiness on coefficients, so a
:class:`Params` object decides which mode a computation runs in.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, Mapping, Optional, Tuple

from gmpy2 import mpq

__all__ = [
    "U", "pvar", "spectral", "Poly", "ScalarFraction", "Params",
    "SpecializationError", "inversion_weight", "inversions", "q_factorial",
    "q_integer", "specialize", "param", "random_assignment", "render_q",
]


class SpecializationError(ArithmeticError):
    """A random specialization hit a forbidden value or a zero denominator."""


# ---------------------------------------------------------------------------
# variables and monomials

# Variables are small tuples so that their natural ordering is the fixed
# total order u < p(1,2) < p(1,3) < ... < p(2,3) < ... < spectral symbols.
U = (0, 0, 0, "")


def pvar(i: int, j: int):
    if not i < j:
        raise ValueError("p(i,j) is stored only for i < j")
    return (1, i, j, "")


def spectral(name: str):
    return (2, 0, 0, name)


def var_name(v) -> str:
    kind, i, j, name = v
    if kind == 0:
        return "u"
    if kind == 1:
        return f"p{i}{j}" if i < 10 and j < 10 else f"p{i}_{j}"
    return name


ONE_MONO: tuple = ()


@lru_cache(maxsize=1 << 18)
def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_inv(a: tuple) -> tuple:
    return tuple((v, -e) for v, e in a)


def mono_pow(a: tuple, k: int) -> tuple:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in a)


def mono_degree(a: tuple) -> int:
    return sum(e for _, e in a)


def mono_key(a: tuple):
    """Graded lexicographic sort key (larger key = larger monomial)."""
    return (mono_degree(a), a)


# ---------------------------------------------------------------------------
# Laurent polynomials

_ZERO = mpq(0)
_ONE = mpq(1)


class Poly:
    """Laurent polynomial: dict monomial -> nonzero mpq."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[tuple, mpq]] = None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def const(c) -> "Poly":
        c = mpq(c)
        return Poly({ONE_MONO: c} if c else {})

    @staticmethod
    def mono(m: tuple, c=1) -> "Poly":
        return Poly({m: mpq(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(ONE_MONO) == 1

    def constant_value(self):
        """The value if this is a constant, else None."""
        if not self.terms:
            return _ZERO
        if len(self.terms) == 1 and ONE_MONO in self.terms:
            return self.terms[ONE_MONO]
        return None

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, _ZERO) + c
            if s:
                d[m] = s
            else:
                del d[m]
        return Poly(d)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) == 1 and ONE_MONO in a:
            c = a[ONE_MONO]
            return Poly({m: c * v for m, v in b.items()}) if c != 1 else other
        if len(b) == 1 and ONE_MONO in b:
            c = b[ONE_MONO]
            return Poly({m: c * v for m, v in a.items()}) if c != 1 else self
        d: Dict[tuple, mpq] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = d.get(m, _ZERO) + c1 * c2
                if s:
                    d[m] = s
                else:
                    del d[m]
        return Poly(d)

    def scale(self, c, m: tuple = ONE_MONO) -> "Poly":
        if not c:
            return Poly()
        return Poly({mono_mul(k, m): v * c for k, v in self.terms.items()})

    def pow(self, k: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def leading(self):
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def content_monomial(self) -> tuple:
        """Componentwise minimum exponent over all terms."""
        vs = {v for m in self.terms for v, _ in m}
        low = {}
        for m in self.terms:
            md = dict(m)
            for v in vs:
                e = md.get(v, 0)
                if v not in low or e < low[v]:
                    low[v] = e
        return tuple(sorted((v, e) for v, e in low.items() if e))

    def normalized(self):
        """Return (monomial, coefficient, primitive) with
        ``self == coefficient * monomial * primitive`` and ``primitive`` a
        true polynomial with no monomial factor and leading coefficient 1."""
        m = self.content_monomial()
        lm, lc = self.leading()
        inv = mono_inv(m)
        prim = Poly({mono_mul(k, inv): v / lc for k, v in self.terms.items()})
        return m, lc, prim

    def exact_div(self, other: "Poly") -> Optional["Poly"]:
        """Quotient if ``other`` divides ``self`` in the Laurent ring, else None.

        Both sides are first shifted to monomial-free polynomials; then
        ordinary multivariate division by leading terms is exact-or-fail.
        """
        if not self.terms:
            return Poly()
        ma, ca, pa = self.normalized()
        mb, cb, pb = other.normalized()
        q = _poly_exact_div(pa, pb)
        if q is None:
            return None
        return q.scale(ca / cb, mono_mul(ma, mono_inv(mb)))

    def evaluate(self, values: Mapping) -> mpq:
        total = _ZERO
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                try:
                    x = values[v]
                except KeyError:
                    raise SpecializationError(f"no value for {var_name(v)}") from None
                t = t * (x ** e if e > 0 else 1 / x ** (-e))
            total += t
        return total

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]), reverse=True)

    def __str__(self) -> str:
        return render_poly(self)

    __repr__ = __str__


def _divides(a: tuple, b: tuple) -> Optional[tuple]:
    """Polynomial divisibility of monomials (nonnegative exponents)."""
    q = mono_mul(b, mono_inv(a))
    if any(e < 0 for _, e in q):
        return None
    return q


def _poly_exact_div(a: Poly, b: Poly) -> Optional[Poly]:
    if b.is_one():
        return a
    lmb, lcb = b.leading()
    rem = dict(a.terms)
    quot: Dict[tuple, mpq] = {}
    while rem:
        lmr = max(rem, key=mono_key)
        qm = _divides(lmb, lmr)
        if qm is None:
            return None
        qc = rem[lmr] / lcb
        quot[qm] = qc
        for m, c in b.terms.items():
            k = mono_mul(m, qm)
            s = rem.get(k, _ZERO) - qc * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return Poly(quot)


def _fmt_coeff(c) -> str:
    return str(c)


def render_mono(m: tuple) -> str:
    parts = []
    for v, e in m:
        name = var_name(v)
        parts.append(name if e == 1 else f"{name}^{e}" if e > 0 else f"{name}^({e})")
    return "*".join(parts)


def render_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        ms = render_mono(m)
        if not ms:
            body = _fmt_coeff(a)
        elif a == 1:
            body = ms
        else:
            body = f"{_fmt_coeff(a)}*{ms}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# atoms: registered irreducible-ish denominator factors

_ATOMS: list = []
_ATOM_INDEX: Dict[Poly, int] = {}


def _atom_id(p: Poly) -> int:
    idx = _ATOM_INDEX.get(p)
    if idx is None:
        idx = len(_ATOMS)
        _ATOMS.append(p)
        _ATOM_INDEX[p] = idx
    return idx


@lru_cache(maxsize=4096)
def _atom_power(idx: int, e: int) -> Poly:
    return _ATOMS[idx].pow(e)


def _den_poly(den: tuple) -> Poly:
    out = Poly.const(1)
    for idx, e in den:
        out = out * _atom_power(idx, e)
    return out


def _factor_into_atoms(p: Poly):
    """Split a nonzero Laurent polynomial as c * m * prod(atom^e)."""
    m, c, prim = p.normalized()
    exps: Dict[int, int] = {}
    if not prim.is_one():
        for idx, atom in enumerate(_ATOMS):
            while True:
                q = _poly_exact_div(prim, atom)
                if q is None:
                    break
                exps[idx] = exps.get(idx, 0) + 1
                prim = q
                if prim.is_one():
                    break
            if prim.is_one():
                break
        if not prim.is_one():
            idx = _atom_id(prim)
            exps[idx] = exps.get(idx, 0) + 1
    return c, m, tuple(sorted(exps.items()))


class ScalarFraction:
    """num / den with den a product of registered atoms.

    Immutable; every operation returns a new value.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: tuple = ()):
        self.num = num
        self.den = den if num.terms else ()
        self._hash = None

    # -- construction
    @staticmethod
    def coerce(x) -> "ScalarFraction":
        if isinstance(x, ScalarFraction):
            return x
        if isinstance(x, Poly):
            return ScalarFraction(x)
        return ScalarFraction(Poly.const(x))

    @staticmethod
    def var(v, e: int = 1) -> "ScalarFraction":
        return ScalarFraction(Poly.mono(((v, e),) if e else ONE_MONO))

    def is_laurent(self) -> bool:
        return not self.den

    # -- reduction
    def _cancel(self) -> "ScalarFraction":
        if not self.den or not self.num.terms:
            return ScalarFraction(self.num) if self.den and not self.num.terms else self
        num = self.num
        den = dict(self.den)
        changed = False
        for idx in list(den):
            while den[idx]:
                q = num.exact_div(_ATOMS[idx])
                if q is None:
                    break
                num = q
                den[idx] -= 1
                changed = True
            if not den[idx]:
                del den[idx]
        if not changed:
            return self
        return ScalarFraction(num, tuple(sorted(den.items())))

    # -- arithmetic
    def __add__(self, other) -> "ScalarFraction":
        if not isinstance(other, ScalarFraction):
            if isinstance(other, (int, type(_ZERO))):
                if not other:
                    return self
            other = ScalarFraction.coerce(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return ScalarFraction(self.num + other.num, self.den)._cancel()
        da, db = dict(self.den), dict(other.den)
        lcm = {k: max(da.get(k, 0), db.get(k, 0)) for k in set(da) | set(db)}
        fa = tuple(sorted((k, e - da.get(k, 0)) for k, e in lcm.items() if e - da.get(k, 0)))
        fb = tuple(sorted((k, e - db.get(k, 0)) for k, e in lcm.items() if e - db.get(k, 0)))
        num = self.num * _den_poly(fa) + other.num * _den_poly(fb)
        return ScalarFraction(num, tuple(sorted(lcm.items())))._cancel()

    __radd__ = __add__

    def __neg__(self) -> "ScalarFraction":
        return ScalarFraction(-self.num, self.den)

    def __sub__(self, other) -> "ScalarFraction":
        return self + (-ScalarFraction.coerce(other))

    def __rsub__(self, other) -> "ScalarFraction":
        return ScalarFraction.coerce(other) + (-self)

    def __mul__(self, other) -> "ScalarFraction":
        if not isinstance(other, ScalarFraction):
            if isinstance(other, Poly):
                other = ScalarFraction(other)
            else:
                c = mpq(other)
                if not c:
                    return ZERO
                if c == 1:
                    return self
                return ScalarFraction(self.num.scale(c), self.den)
        if not self.num.terms or not other.num.terms:
            return ZERO
        num = self.num * other.num
        if not self.den and not other.den:
            return ScalarFraction(num)
        d = dict(self.den)
        for k, e in other.den:
            d[k] = d.get(k, 0) + e
        return ScalarFraction(num, tuple(sorted(d.items())))._cancel()

    __rmul__ = __mul__

    def inverse(self) -> "ScalarFraction":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        c, m, atoms = _factor_into_atoms(self.num)
        num = _den_poly(self.den).scale(1 / c, mono_inv(m))
        return ScalarFraction(num, atoms)._cancel()

    def __truediv__(self, other) -> "ScalarFraction":
        return self * ScalarFraction.coerce(other).inverse()

    def __rtruediv__(self, other) -> "ScalarFraction":
        return ScalarFraction.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "ScalarFraction":
        if k < 0:
            return self.inverse() ** (-k)
        if not self.den:
            return ScalarFraction(self.num.pow(k))
        return ScalarFraction(self.num.pow(k), tuple((i, e * k) for i, e in self.den))

    # -- predicates
    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ScalarFraction) and self.den == other.den:
            return self.num == other.num
        try:
            return not (self - other)
        except TypeError:
            return NotImplemented

    def __ne__(self, other) -> bool:
        return not self == other

    def __hash__(self) -> int:
        # Must agree with the cross-multiplication equality, so hash the value
        # at a fixed point modulo a prime.
        if self._hash is None:
            self._hash = _modular_hash(self)
        return self._hash

    def variables(self) -> set:
        vs = self.num.variables()
        for idx, _ in self.den:
            vs |= _ATOMS[idx].variables()
        return vs

    def numerator_denominator(self) -> Tuple[Poly, Poly]:
        return self.num, _den_poly(self.den)

    def __str__(self) -> str:
        return render_fraction(self)

    __repr__ = __str__


ZERO = ScalarFraction(Poly())
ONE = ScalarFraction(Poly.const(1))

_HASH_PRIME = (1 << 61) - 1


def _var_hash_value(v) -> int:
    return (hash(v) % (_HASH_PRIME - 3)) + 2


def _poly_mod(p: Poly) -> int:
    total = 0
    for m, c in p.terms.items():
        t = int(c.numerator) * pow(int(c.denominator), -1, _HASH_PRIME)
        for v, e in m:
            t = t * pow(_var_hash_value(v), e, _HASH_PRIME)
        total = (total + t) % _HASH_PRIME
    return total


def _modular_hash(s: ScalarFraction) -> int:
    num, den = s.numerator_denominator()
    dv = _poly_mod(den)
    if dv == 0:
        return 0
    return (_poly_mod(num) * pow(dv, -1, _HASH_PRIME)) % _HASH_PRIME


def render_fraction(s: ScalarFraction) -> str:
    """Canonical string: sorted terms, explicit exponents."""
    num = render_poly(s.num)
    if not s.den:
        return num
    den = "*".join(
        f"({render_poly(_ATOMS[i])})" + (f"^{e}" if e != 1 else "") for i, e in s.den
    )
    return f"({num})/{den}"


def _render_q_mono(m: tuple) -> str:
    """Rewrite p_ij^-e as q_ij^e u^-2e and render u, p and q factors."""
    ue, ps, qs, rest = 0, [], [], []
    for v, e in m:
        if v == U:
            ue += e
        elif v[0] == 1:
            if e < 0:
                qs.append((v, -e))
                ue += 2 * e
            else:
                ps.append((v, e))
        else:
            rest.append((v, e))
    parts = []

    def fmt(name, e):
        return name if e == 1 else f"{name}^{e}" if e > 0 else f"{name}^({e})"

    if ue:
        parts.append(fmt("u", ue))
    parts += [fmt(var_name(v), e) for v, e in ps]
    parts += [fmt("q" + var_name(v)[1:], e) for v, e in qs]
    parts += [fmt(var_name(v), e) for v, e in rest]
    return "*".join(parts)


def render_q(c) -> str:
    """Like ``str`` but writes u^2/p_ij as q_ij; falls back to ``str`` when a denominator remains."""
    if not isinstance(c, ScalarFraction) or c.den:
        return str(c)
    if not c.num.terms:
        return "0"
    out = []
    for m, k in c.num.sorted_terms():
        sign = "-" if k < 0 else "+"
        a = abs(k)
        ms = _render_q_mono(m)
        body = str(a) if not ms else ms if a == 1 else f"{a}*{ms}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# specialization

def specialize(s, assignment: Mapping) -> mpq:
    """Exact rational value of ``s`` under ``assignment`` (variable -> rational)."""
    if not isinstance(s, ScalarFraction):
        return mpq(s)
    _check_assignment(assignment)
    num, den = s.numerator_denominator()
    d = den.evaluate(assignment)
    if not d:
        raise SpecializationError("denominator vanishes at this specialization")
    return num.evaluate(assignment) / d


def _check_assignment(assignment: Mapping) -> None:
    for v, x in assignment.items():
        if not x:
            raise SpecializationError(f"{var_name(v)} must be nonzero")
        if v == U and x in (1, -1):
            raise SpecializationError("u must avoid 0, 1 and -1")


def random_assignment(n: int, seed: int, spectral_names: Iterable[str] = ("x", "lam", "mu")):
    """Seeded rationals a/b with a, b uniform in [2, 97] for u, p_ij and spectra."""
    rng = random.Random(seed)

    def draw():
        return mpq(rng.randint(2, 97), rng.randint(2, 97))

    values = {}
    u = draw()
    while u == 1:
        u = draw()
    values[U] = u
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            values[pvar(i, j)] = draw()
    for name in spectral_names:
        values[spectral(name)] = draw()
    return values


# ---------------------------------------------------------------------------
# parameter context

class Params:
    """Source of the deformation parameters for an ``n``-dimensional setting.

    ``Params(n)`` is fully symbolic; ``Params.specialized(n, seed)`` yields
    exact rationals.  Spectral symbols are looked up by name.
    """

    def __init__(self, n: int, values: Optional[Mapping] = None, seed: Optional[int] = None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.values = dict(values) if values is not None else None
        self.seed = seed
        self._cache: dict = {}

    @classmethod
    def specialized(cls, n: int, seed: int) -> "Params":
        return cls(n, random_assignment(n, seed), seed=seed)

    @property
    def symbolic(self) -> bool:
        return self.values is None

    @property
    def mode(self) -> str:
        return "symbolic" if self.symbolic else "specialized"

    def _var(self, v):
        if self.values is None:
            return ScalarFraction.var(v)
        try:
            return self.values[v]
        except KeyError:
            raise SpecializationError(f"no value for {var_name(v)}") from None

    def scalar(self, c):
        """Coerce a rational constant into this context's coefficient type."""
        return ScalarFraction.coerce(c) if self.values is None else mpq(c)

    @property
    def one(self):
        return self.scalar(1)

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def u(self):
        key = ("u",)
        if key not in self._cache:
            self._cache[key] = self._var(U)
        return self._cache[key]

    def sym(self, name: str):
        key = ("s", name)
        if key not in self._cache:
            self._cache[key] = self._var(spectral(name))
        return self._cache[key]

    def _check(self, *idx: int) -> None:
        for i in idx:
            if not 1 <= i <= self.n:
                raise IndexError(f"index {i} out of range 1..{self.n}")

    def p(self, i: int, j: int):
        self._check(i, j)
        key = ("p", i, j)
        if key not in self._cache:
            if i == j:
                val = self.one
            elif i < j:
                val = self._var(pvar(i, j))
            else:
                val = 1 / self.p(j, i)
            self._cache[key] = val
        return self._cache[key]

    def q(self, i: int, j: int):
        """q_ij, always synthesized from the (p,u)-condition p_ij q_ij = u^2."""
        self._check(i, j)
        key = ("q", i, j)
        if key not in self._cache:
            if i == j:
                val = self.one
            elif i < j:
                val = self.u ** 2 / self.p(i, j)
            else:
                val = 1 / self.q(j, i)
            self._cache[key] = val
        return self._cache[key]

    def param(self, kind: str, i: int, j: int):
        if kind == "p":
            return self.p(i, j)
        if kind == "q":
            return self.q(i, j)
        if kind in ("p_inverse", "pinv"):
            return 1 / self.p(i, j)
        if kind in ("q_inverse", "qinv"):
            return 1 / self.q(i, j)
        raise ValueError(f"unknown parameter kind {kind!r}")

    def specialize(self, s):
        """Map a symbolic scalar into this context (identity when symbolic)."""
        if self.values is None:
            return ScalarFraction.coerce(s)
        return specialize(s, self.values)

    def __repr__(self) -> str:
        if self.symbolic:
            return f"Params(n={self.n}, symbolic)"
        return f"Params(n={self.n}, seed={self.seed})"


def param(kind: str, i: int, j: int, n: Optional[int] = None):
    """Symbolic p_ij or q_ij as a Laurent monomial."""
    return Params(n if n is not None else max(i, j)).param(kind, i, j)


# ---------------------------------------------------------------------------
# combinatorial weights

def inversions(sigma) -> list:
    """Pairs (sigma_i, sigma_j) with i < j and sigma_i > sigma_j."""
    s = list(sigma)
    return [(s[a], s[b]) for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] > s[b]]


def _check_perm(sigma) -> None:
    s = list(sigma)
    if sorted(s) != list(range(1, len(s) + 1)):
        raise ValueError(f"{tuple(s)} is not a permutation of 1..{len(s)}")


def inversion_weight(kind: str, sigma, params: Optional[Params] = None, check: bool = True):
    """(-1)^{l(sigma)} * prod over inversions of c_{sigma_j sigma_i}.

    ``sigma`` may also be any sequence of distinct indices (used for minors
    and shuffles); pass ``check=False`` for that.
    """
    if check:
        _check_perm(sigma)
    if params is None:
        params = Params(max(list(sigma) + [1]))
    w = params.one
    for big, small in inversions(sigma):
        w = w * (-params.param(kind, small, big))
    return w


def q_integer(m: int, base):
    out = base * 0 + 1
    power = base * 0 + 1
    for _ in range(m - 1):
        power = power * base
        out = out + power
    return out


def q_factorial(m: int, base):
    """[1]_v [2]_v ... [m]_v at v = base."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = base * 0 + 1
    for k in range(1, m + 1):
        out = out * q_integer(k, base)
    return out


def all_permutations(m: int):
    return list(permutations(range(1, m + 1)))
