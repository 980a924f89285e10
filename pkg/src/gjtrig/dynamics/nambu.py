"""Nambu brackets of order 3 and 4 and checks of the Takhtajan axioms.

Fields are anything with ``grad(x)`` (and ``__call__`` for the Leibniz
check). ``Poly`` is a small exact multivariate polynomial type so that
nested brackets can be formed symbolically for the fundamental identity.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np

from ..multivec import det


def _perm_sign(p) -> int:
    sign, p = 1, list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


class Poly:
    """Sparse polynomial in ``n`` variables: {exponent tuple: coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        for e, c in (terms or {}).items():
            if c != 0:
                self.terms[tuple(e)] = self.terms.get(tuple(e), 0.0) + c

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1.0})

    @classmethod
    def const(cls, n: int, c: float) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def quadratic(cls, coeffs) -> "Poly":
        """0.5 * sum c_i x_i^2."""
        n = len(coeffs)
        return cls(n, {tuple(2 if j == i else 0 for j in range(n)): 0.5 * c for i, c in enumerate(coeffs)})

    @classmethod
    def random(cls, n: int, degree: int, rng: np.random.Generator) -> "Poly":
        terms = {}
        for e in itertools.product(range(degree + 1), repeat=n):
            if sum(e) <= degree:
                terms[e] = float(rng.normal())
        return cls(n, terms)

    def _coerce(self, other):
        return other if isinstance(other, Poly) else Poly.const(self.n, float(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = defaultdict(float, self.terms)
        for e, c in other.terms.items():
            out[e] += c
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        out = defaultdict(float)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly(self.n, out)

    def __call__(self, x) -> float:
        x = np.asarray(x)
        total = 0.0
        for e, c in self.terms.items():
            total += c * np.prod([x[i] ** p for i, p in enumerate(e) if p])
        return total

    def grad(self, x) -> np.ndarray:
        return np.array([self.diff(i)(x) for i in range(self.n)])

    def coef_scale(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)


def _bracket(fields, x) -> float:
    n = len(fields)
    x = np.asarray(x, dtype=float)
    if len(x) != n:
        raise ValueError(f"an order-{n} bracket needs a point in R^{n}")
    return det(np.array([f.grad(x) for f in fields]))


def nambu3_bracket(F, G, H, x) -> float:
    """det of the Jacobian of (F, G, H) at x in R^3."""
    return _bracket((F, G, H), x)


def nambu4_bracket(F, G, H, I, x) -> float:
    """eps^{ijkl} dF_i dG_j dH_k dI_l at x in R^4."""
    return _bracket((F, G, H, I), x)


def poly_bracket(*polys: Poly) -> Poly:
    """The bracket as a polynomial, by the Leibniz expansion of the Jacobian."""
    n = len(polys)
    if any(p.n != n for p in polys):
        raise ValueError("order-n bracket needs n polynomials in n variables")
    d = [[p.diff(j) for j in range(n)] for p in polys]
    out = Poly(n)
    for perm in itertools.permutations(range(n)):
        term = Poly.const(n, float(_perm_sign(perm)))
        for r, c in enumerate(perm):
            term = term * d[r][c]
        out = out + term
    return out


def skew_residual(fields, x) -> float:
    """max |{A_p} - sign(p) {A}| over all permutations."""
    base = _bracket(fields, x)
    return max(abs(_bracket([fields[i] for i in p], x) - _perm_sign(p) * base)
               for p in itertools.permutations(range(len(fields))))


def leibniz_residual(A1: Poly, A2: Poly, rest, x) -> tuple[float, float]:
    """{A1 A2, rest...} - A1 {A2, rest...} - {A1, rest...} A2, and a magnitude scale."""
    lhs = _bracket([A1 * A2, *rest], x)
    t1 = A1(x) * _bracket([A2, *rest], x)
    t2 = _bracket([A1, *rest], x) * A2(x)
    return abs(lhs - t1 - t2), max(1.0, abs(lhs), abs(t1), abs(t2))


def fundamental_identity_residual(f, g, x) -> tuple[float, float]:
    """{f_1..f_{n-1}, {g_1..g_n}} = sum_i {g_1, .., {f_1..f_{n-1}, g_i}, .., g_n}.

    ``f`` has n - 1 polynomials and ``g`` has n. For n = 3 this is the
    identity with A1, A2 = f and A3, A4, A5 = g.
    """
    n = len(g)
    if len(f) != n - 1:
        raise ValueError("need n-1 outer and n inner polynomials")
    lhs = poly_bracket(*f, poly_bracket(*g))(x)
    terms = []
    for i in range(n):
        gi = list(g)
        gi[i] = poly_bracket(*f, g[i])
        terms.append(poly_bracket(*gi)(x))
    rhs = sum(terms)
    return abs(lhs - rhs), max(1.0, abs(lhs), *map(abs, terms))
