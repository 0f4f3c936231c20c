"""Explicit free complexes over U and their exactness checks.

Convention: the differential d_l : G_l -> G_{l-1} sends a row vector v to
v * A_l, so a composite d_l d_{l+1} has matrix A_{l+1} A_l.
Decorations record, for each free summand U_chi(-a), the alpha-exponent
vector of chi (one entry per embedding), the shift a, and whether the
summand belongs to the Koszul subcomplex.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import sympy

from .enveloping import T, HilbertSeries, UElem, gens, monomials, quotient_dims, u_mul
from .linalg_fp import rank
from .weights import HChar, alpha

KINDS = ("koszul_e", "koszul_f", "koszul_0", "type_e", "type_f", "type_0")


class CharacterCollision(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    twist: tuple
    shift: int
    koszul: bool = True

    def to_json(self) -> dict:
        return {"twist": list(self.twist), "shift": self.shift, "koszul": self.koszul}


@dataclass
class GradedComplex:
    name: str
    p: int
    f: int
    modules: list                      # modules[l] = list of Summand
    diffs: dict = field(default_factory=dict)   # l -> matrix (rows G_l, cols G_{l-1})

    @property
    def length(self) -> int:
        return max(l for l, m in enumerate(self.modules) if m)

    def ranks(self) -> list:
        return [len(m) for m in self.modules]

    def char(self, s: Summand) -> HChar:
        out = HChar(0, 0, self.p, self.f)
        for i, k in enumerate(s.twist):
            out = out * alpha(i, self.p, self.f) ** k
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "p": self.p, "f": self.f,
                "modules": [[s.to_json() for s in m] for m in self.modules]}


# --- the six complexes ------------------------------------------------------

def _matrices(kind: str, p: int):
    e, f, h = gens(p)
    n = lambda x: -x
    if kind == "koszul_e":
        return {1: [[e], [h]], 2: [[n(h), e]]}, [[True], [True, True], [True]]
    if kind == "koszul_f":
        return {1: [[f], [h]], 2: [[n(h), f]]}, [[True], [True, True], [True]]
    if kind == "koszul_0":
        return ({1: [[e * f], [f * e]], 2: [[n(f * e), e * f]]},
                [[True], [True, True], [True]])
    if kind in ("type_e", "type_f"):
        a, b = (e, f) if kind == "type_e" else (f, e)
        c = -3 if kind == "type_e" else 3
        d1 = [[a], [h], [b ** 3]]
        d2 = [[n(h), a, UElem({}, p)],
              [n(b ** 3), (b ** 2).scale(c), a],
              [UElem({}, p), b ** 3, n(h)]]
        d3 = [[n(b ** 3), h, a]]
        return ({1: d1, 2: d2, 3: d3},
                [[True], [True, True, False], [True, False, False], [False]])
    if kind == "type_0":
        z = UElem({}, p)
        d1 = [[e ** 3], [e * f], [f * e], [f ** 3]]
        d2 = [[h, n(e ** 3), e ** 3, z],
              [f, (e ** 2).scale(2), (e ** 2).scale(-3), z],
              [z, n(f * e), e * f, z],
              [z, (f ** 2).scale(-3), (f ** 2).scale(2), e],
              [z, n(f ** 3), f ** 3, h]]
        d3 = [[f, n(h), n(e ** 2), z, z],
              [z, z, n(f ** 2), n(h), e]]
        return ({1: d1, 2: d2, 3: d3},
                [[True], [False, True, True, False],
                 [False, False, True, False, False], [False, False]])
    raise ValueError(f"unknown complex kind {kind!r}")


def _decorate(diffs: dict, flags: list, i: int, f: int, twist: int):
    """Shift and alpha_i-weight of every summand, from the matrix entries."""
    base = [0] * f
    base[i] = twist
    mods = [[Summand(tuple(base), 0, flags[0][0])]]
    for l in range(1, len(flags)):
        prev = mods[-1]
        cur = []
        for r, row in enumerate(diffs[l]):
            seen = set()
            for j, x in enumerate(row):
                if x.is_zero():
                    continue
                w = list(prev[j].twist)
                w[i] += x.weight()
                seen.add((tuple(w), prev[j].shift + x.degree()))
            if len(seen) != 1:
                raise ValueError(f"row {r} of d_{l} is not homogeneous")
            tw, sh = seen.pop()
            cur.append(Summand(tw, sh, flags[l][r]))
        mods.append(cur)
    return mods


def build_complex(kind: str, p: int = 7, i: int = 0, f: int = 1, twist: int = 0) -> GradedComplex:
    """One of the six complexes for embedding i, optionally twisted by alpha_i^twist."""
    diffs, flags = _matrices(kind, p)
    mods = _decorate(diffs, flags, i, f, twist)
    return GradedComplex(kind, p, f, mods, diffs)


def koszul_part(C: GradedComplex) -> GradedComplex:
    """The subcomplex spanned by Koszul summands (matrices restricted)."""
    keep = [[k for k, s in enumerate(m) if s.koszul] for m in C.modules]
    mods = [[m[k] for k in ks] for m, ks in zip(C.modules, keep)]
    while mods and not mods[-1]:
        mods.pop()
    diffs = {}
    for l in range(1, len(mods)):
        if l in C.diffs:
            diffs[l] = [[C.diffs[l][r][c] for c in keep[l - 1]] for r in keep[l]]
    return GradedComplex(C.name + "'", C.p, C.f, mods, diffs)


def is_subcomplex(C: GradedComplex) -> bool:
    """Koszul rows map into Koszul columns only."""
    for l, A in C.diffs.items():
        for r, row in enumerate(A):
            if not C.modules[l][r].koszul:
                continue
            for c, x in enumerate(row):
                if not C.modules[l - 1][c].koszul and not x.is_zero():
                    return False
    return True


def _matmul(A, B, p):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = []
    for r in range(n):
        row = []
        for c in range(k):
            acc = UElem({}, p)
            for j in range(m):
                acc = acc + u_mul(A[r][j], B[j][c])
            row.append(acc)
        out.append(row)
    return out


def composites_vanish(C: GradedComplex) -> bool:
    for l in range(2, C.length + 1):
        prod = _matmul(C.diffs[l], C.diffs[l - 1], C.p)
        if any(not x.is_zero() for row in prod for x in row):
            return False
    return True


# --- degreewise exactness ----------------------------------------------------

def _basis(mod: list, n: int) -> list:
    return [(k, m) for k, s in enumerate(mod) for m in monomials(n - s.shift)]


def _degree_matrix(C: GradedComplex, l: int, n: int) -> np.ndarray:
    src = _basis(C.modules[l], n)
    tgt = _basis(C.modules[l - 1], n)
    idx = {b: j for j, b in enumerate(tgt)}
    M = np.zeros((len(src), len(tgt)), dtype=np.int64)
    for r, (k, m) in enumerate(src):
        mono = UElem.mono(*m, C.p)
        for c, x in enumerate(C.diffs[l][k]):
            if x.is_zero():
                continue
            for key, v in u_mul(mono, x).terms.items():
                M[r, idx[(c, key)]] += v
    return M % C.p


def check_exact(C: GradedComplex, N: int = 12) -> dict:
    n_len = len(C.modules) - 1
    degrees = []
    exact = True
    euler_ok = True
    series = euler_series(C).coefficients(N)
    for n in range(N + 1):
        dims = [len(_basis(m, n)) for m in C.modules]
        ranks = [0] * (n_len + 2)
        for l in range(1, n_len + 1):
            M = _degree_matrix(C, l, n)
            ranks[l] = rank(M, C.p) if M.size else 0
        hom = [dims[l] - ranks[l] - ranks[l + 1] for l in range(n_len + 1)]
        if any(hom[1:]):
            exact = False
        if sum((-1) ** l * x for l, x in enumerate(hom)) != series[n]:
            euler_ok = False
        degrees.append({"n": n, "ranks": ranks[1:n_len + 1], "homology_dims": hom})
    return {"complex": C.name, "cutoff": N, "degrees": degrees, "exact": exact,
            "hilbert_check": euler_ok}


def h0_dims(C: GradedComplex, N: int) -> list:
    gens_ = [row[0] for row in C.diffs[1]]
    return quotient_dims(gens_, N, C.p)


def euler_series(C: GradedComplex) -> HilbertSeries:
    num = sum(((-1) ** l * T ** s.shift for l, m in enumerate(C.modules) for s in m),
              sympy.Integer(0))
    return HilbertSeries(sympy.Poly(num, T), (1, 1, 2) * 1)


def pole_criterion(C: GradedComplex) -> dict:
    n = C.length
    order = euler_series(C).pole_order() if n > 0 else 0
    return {"length": n, "pole_order": order, "expected": 3 - n, "ok": order == 3 - n}


# --- minimality and tensor products ---------------------------------------

def minimality_shift_check(C: GradedComplex) -> bool:
    """Summands with equal characters in adjacent degrees have strictly growing shifts."""
    prev = {}
    for l, m in enumerate(C.modules):
        low, high = {}, {}
        for s in m:
            c = C.char(s)
            low[c] = min(low.get(c, s.shift), s.shift)
            high[c] = max(high.get(c, s.shift), s.shift)
        if any(c in prev and low[c] <= prev[c] for c in low):
            return False
        prev = high
    return True


def tensor_complexes(factors: list) -> GradedComplex:
    """Total complex (decorations only) of a tensor product across embeddings."""
    p, f = factors[0].p, factors[0].f
    n = sum(len(C.modules) - 1 for C in factors)
    mods = [[] for _ in range(n + 1)]
    for combo in itertools.product(*[list(enumerate(C.modules)) for C in factors]):
        l = sum(c[0] for c in combo)
        for parts in itertools.product(*[c[1] for c in combo]):
            tw = tuple(sum(s.twist[i] for s in parts) for i in range(f))
            mods[l].append(Summand(tw, sum(s.shift for s in parts),
                                   all(s.koszul for s in parts)))
    name = "(x)".join(C.name for C in factors)
    return GradedComplex(name, p, f, mods)


def shift_law_ok(C: GradedComplex) -> bool:
    """For each character, a_{l,chi} - 2l is constant over all occurrences."""
    seen = {}
    for l, m in enumerate(C.modules):
        for s in m:
            key = C.char(s)
            v = s.shift - 2 * l
            if seen.setdefault(key, v) != v:
                return False
    return True


def separation_check(C: GradedComplex, raise_on_fail: bool = True) -> bool:
    """chi'' chi'^-1 is never alpha_j^{+-1} for chi' Koszul and chi'' not."""
    ks = {C.char(s) for m in C.modules for s in m if s.koszul}
    others = {C.char(s) for m in C.modules for s in m if not s.koszul}
    bad = set()
    for j in range(C.f):
        a = alpha(j, C.p, C.f)
        bad |= {a, a.inv()}
    for c1 in ks:
        for c2 in others:
            if c2 * c1.inv() in bad:
                if raise_on_fail:
                    raise CharacterCollision(f"{c2} / {c1} is a simple root character")
                return False
    return True


def tauJ_factors(J, eps: dict, p: int, f: int) -> list:
    """Per-embedding factors resolving gr of tau_{J,eps} (twisted)."""
    out = []
    for i in range(f):
        if i not in J:
            out.append(build_complex("type_0", p, i, f))
        elif eps.get(i, 1) == 1:
            out.append(build_complex("type_e", p, i, f))
        else:
            out.append(build_complex("type_f", p, i, f, twist=1))
    return out


def h0_polynomial(C: GradedComplex, N: int = 8):
    dims = h0_dims(C, N)
    return sum((d * T ** n for n, d in enumerate(dims)), sympy.Integer(0))


def euler_matches_product(factors: list) -> bool:
    """Euler characteristic of the tensor complex equals the product of H_0 series."""
    tot = tensor_complexes(factors)
    num = sum(((-1) ** l * T ** s.shift for l, m in enumerate(tot.modules) for s in m),
              sympy.Integer(0))
    den = ((1 - T) ** 2 * (1 - T ** 2)) ** len(factors)
    lhs = sympy.cancel(num / den)
    rhs = sympy.Integer(1)
    for C in factors:
        rhs *= h0_polynomial(C)
    return sympy.simplify(lhs - sympy.expand(rhs)) == 0


def convolved_ranks(factors: list) -> list:
    out = [1]
    for C in factors:
        r = C.ranks()
        new = [0] * (len(out) + len(r) - 1)
        for a, x in enumerate(out):
            for b, y in enumerate(r):
                new[a + b] += x * y
        out = new
    return out
