"""The graded enveloping algebra U of the Lie algebra e, f, h with [e,f]=h central.

Elements are stored in the PBW basis f^a h^b e^c (degree a + 2b + c) with
coefficients in F_p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np
import sympy

from .linalg_fp import rank


@dataclass
class UElem:
    terms: dict = field(default_factory=dict)
    p: int = 7

    def __post_init__(self):
        self.terms = {k: v % self.p for k, v in self.terms.items() if v % self.p}

    @classmethod
    def mono(cls, a: int, b: int, c: int, p: int, coeff: int = 1) -> "UElem":
        return cls({(a, b, c): coeff}, p)

    def __add__(self, other: "UElem") -> "UElem":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return UElem(out, self.p)

    def __neg__(self) -> "UElem":
        return UElem({k: -v for k, v in self.terms.items()}, self.p)

    def __sub__(self, other: "UElem") -> "UElem":
        return self + (-other)

    def scale(self, c: int) -> "UElem":
        return UElem({k: c * v for k, v in self.terms.items()}, self.p)

    def __mul__(self, other: "UElem") -> "UElem":
        return u_mul(self, other)

    def __pow__(self, n: int) -> "UElem":
        out = UElem.mono(0, 0, 0, self.p)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, UElem) and self.p == other.p and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {a + 2 * b + c for a, b, c in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("not homogeneous")
        return ds.pop()

    def weight(self) -> int:
        """H-weight as a power of alpha: e counts +1, f counts -1."""
        ws = {c - a for a, b, c in self.terms}
        if len(ws) != 1:
            raise ValueError("not a weight vector")
        return ws.pop()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in sorted(self.terms.items()):
            mono = "".join(s if n == 1 else f"{s}^{n}" for s, n in (("f", a), ("h", b), ("e", c)) if n)
            parts.append(f"{v}*{mono or '1'}")
        return " + ".join(parts)


def gens(p: int):
    """(e, f, h)."""
    return UElem.mono(0, 0, 1, p), UElem.mono(1, 0, 0, p), UElem.mono(0, 1, 0, p)


def _mono_mul(m1, m2, p: int) -> dict:
    # e^c f^a' = sum_k k! C(c,k) C(a',k) f^(a'-k) h^k e^(c-k)
    a, b, c = m1
    a2, b2, c2 = m2
    out = {}
    for k in range(min(c, a2) + 1):
        coef = factorial(k) * comb(c, k) * comb(a2, k)
        key = (a + a2 - k, b + b2 + k, c - k + c2)
        out[key] = (out.get(key, 0) + coef) % p
    return out


def u_mul(x: UElem, y: UElem) -> UElem:
    out = {}
    for m1, v1 in x.terms.items():
        for m2, v2 in y.terms.items():
            for k, v in _mono_mul(m1, m2, x.p).items():
                out[k] = out.get(k, 0) + v1 * v2 * v
    return UElem(out, x.p)


def monomials(n: int) -> list:
    """PBW monomials (a, b, c) of degree n."""
    out = []
    for b in range(n // 2 + 1):
        for a in range(n - 2 * b + 1):
            out.append((a, b, n - 2 * b - a))
    return out


def graded_dim(n: int) -> int:
    return len(monomials(n)) if n >= 0 else 0


# --- Hilbert series -------------------------------------------------------

T = sympy.Symbol("t")


@dataclass
class HilbertSeries:
    """numerator(t) / prod_d (1 - t^d)."""

    numerator: sympy.Poly
    denominator: tuple

    @classmethod
    def of_free(cls, shifts, denominator=(1, 1, 2)) -> "HilbertSeries":
        num = sum((T ** a for a in shifts), sympy.Integer(0))
        return cls(sympy.Poly(num, T), tuple(denominator))

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        if self.denominator != other.denominator:
            raise ValueError("denominators differ")
        return HilbertSeries(self.numerator + other.numerator, self.denominator)

    def __neg__(self) -> "HilbertSeries":
        return HilbertSeries(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        return HilbertSeries(self.numerator * other.numerator,
                             tuple(sorted(self.denominator + other.denominator)))

    def as_expr(self):
        den = sympy.Integer(1)
        for d in self.denominator:
            den *= 1 - T ** d
        return sympy.cancel(self.numerator.as_expr() / den)

    def pole_order(self) -> int:
        """Order of the pole at t = 1 (negative for a zero)."""
        num = self.numerator
        if num.is_zero:
            return -10 ** 9
        k = 0
        one = sympy.Poly(T - 1, T)
        while num.eval(1) == 0:
            num = sympy.div(num, one)[0]
            k += 1
        return len(self.denominator) - k

    def coefficients(self, N: int) -> list:
        """Series coefficients up to t^N by long division."""
        num = [0] * (N + 1)
        for (e,), c in self.numerator.terms():
            if e <= N:
                num[e] += int(c)
        series = num
        for d in self.denominator:
            # divide by (1 - t^d): s_n += s_{n-d}
            out = list(series)
            for n in range(d, N + 1):
                out[n] += out[n - d]
            series = out
        return series


def hilbert_U() -> HilbertSeries:
    return HilbertSeries.of_free([0])


# --- quotients by left ideals ---------------------------------------------

def _vec(x: UElem, basis_index: dict) -> np.ndarray:
    v = np.zeros(len(basis_index), dtype=np.int64)
    for k, c in x.terms.items():
        v[basis_index[k]] = c
    return v


def quotient_dims(generators, N: int, p: int) -> list:
    """dim (U / U.generators)_n for n = 0..N."""
    gs = [g for g in generators if not g.is_zero()]
    out = []
    for n in range(N + 1):
        basis = monomials(n)
        idx = {m: i for i, m in enumerate(basis)}
        rows = []
        for g in gs:
            d = g.degree()
            if d > n:
                continue
            for m in monomials(n - d):
                rows.append(_vec(u_mul(UElem.mono(*m, p), g), idx))
        r = rank(np.array(rows), p) if rows else 0
        out.append(len(basis) - r)
    return out
