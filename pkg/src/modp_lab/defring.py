"""Truncated power-series algebra: Le's relation table, tangent spaces, ideal lemmas.

Complete local rings F[[x_1..x_n]] are modelled by F_p[x]/(x)^N.  Every
statement checked here only involves m/m^2 or finite-length quotients, so a
cutoff N >= 2 (tangent spaces) or the artinian ring itself (cyclicity) is exact.
Relations over O are written with a symbol p, sent to 0 when reducing mod p.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np
import sympy

from .linalg_fp import rank, rref


class InvalidCell(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


# --- truncated polynomial rings --------------------------------------------

@dataclass
class TruncatedRing:
    variables: tuple
    N: int = 4
    p: int = 7
    _monos: list = field(default=None, repr=False)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        n = len(self.variables)
        monos = [m for d in range(self.N) for m in _exps(n, d)]
        self._monos = monos
        self.index = {m: k for k, m in enumerate(monos)}

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def dim(self) -> int:
        return len(self._monos)

    def monomials(self, min_deg: int = 0) -> list:
        return [m for m in self._monos if sum(m) >= min_deg]

    def var(self, name) -> dict:
        k = self.variables.index(name)
        return {tuple(int(j == k) for j in range(self.n)): 1}

    def reduce(self, poly: dict) -> dict:
        return {m: c % self.p for m, c in poly.items() if sum(m) < self.N and c % self.p}

    def mul(self, a: dict, b: dict) -> dict:
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                if sum(m) < self.N:
                    out[m] = out.get(m, 0) + c1 * c2
        return self.reduce(out)

    def add(self, a: dict, b: dict, cb: int = 1) -> dict:
        out = dict(a)
        for m, c in b.items():
            out[m] = out.get(m, 0) + cb * c
        return self.reduce(out)

    def vec(self, poly: dict) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for m, c in self.reduce(poly).items():
            v[self.index[m]] = c
        return v

    def from_sympy(self, expr, symbols, p_symbol=None) -> dict:
        """Convert a polynomial expression; p_symbol is sent to 0."""
        if p_symbol is not None:
            expr = expr.subs(p_symbol, 0)
        expr = sympy.expand(expr)
        if expr == 0:
            return {}
        poly = sympy.Poly(expr, *symbols)
        return self.reduce({tuple(int(e) for e in m): int(c) for m, c in poly.terms()})

    def linear_part(self, poly: dict) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        for m, c in poly.items():
            if sum(m) == 1:
                v[m.index(1)] = c
        return v % self.p

    def constant(self, poly: dict) -> int:
        return poly.get((0,) * self.n, 0) % self.p


def _exps(n: int, d: int):
    for c in itertools.combinations_with_replacement(range(n), d):
        m = [0] * n
        for k in c:
            m[k] += 1
        yield tuple(m)


@dataclass
class IdealPresentation:
    ring: TruncatedRing
    generators: list

    def __post_init__(self):
        self.generators = [self.ring.reduce(g) for g in self.generators]

    def span(self) -> np.ndarray:
        """Row basis of the ideal as a subspace of the truncated ring."""
        R = self.ring
        rows = [R.vec(R.mul({m: 1}, g)) for g in self.generators for m in R.monomials()]
        return _basis(rows, R.dim, R.p)

    def linear_parts(self) -> np.ndarray:
        R = self.ring
        rows = [R.linear_part(g) for g in self.generators]
        return np.array(rows, dtype=np.int64).reshape(len(rows), R.n)

    def in_max_ideal(self) -> bool:
        return all(self.ring.constant(g) == 0 for g in self.generators)


def _basis(rows, ncols: int, p: int) -> np.ndarray:
    if not len(rows):
        return np.zeros((0, ncols), dtype=np.int64)
    A, piv = rref(np.array(rows, dtype=np.int64), p)
    return A[:len(piv)]


def _dim(rows, p: int) -> int:
    return rank(rows, p) if len(rows) and np.asarray(rows).size else 0


def _stack(*blocks):
    bl = [b for b in blocks if b.size]
    if not bl:
        return np.zeros((0, 0), dtype=np.int64)
    return np.vstack(bl)


def contains(big: np.ndarray, small: np.ndarray, p: int) -> bool:
    return _dim(_stack(big, small), p) == _dim(big, p)


def same_subspace(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    return contains(a, b, p) and contains(b, a, p)


def ideal_sum(I1: IdealPresentation, I2: IdealPresentation) -> IdealPresentation:
    return IdealPresentation(I1.ring, I1.generators + I2.generators)


# --- Le's table -------------------------------------------------------------

P = sympy.Symbol("p")


def le_symbols(f: int) -> tuple:
    xs = sympy.symbols(f"X0:{f}")
    ys = sympy.symbols(f"Y0:{f}")
    return xs, ys


def le_cell(i: int, J, I, S, f: int) -> tuple:
    """(row, column) of the table governing g_i: index is omega^(f-1-i).

    row: 'none', '+' (omega in I) or '-' (-omega in I);
    column: 'out' (not in S), 'S-J' or 'J'.
    """
    k = (f - 1 - i) % f
    plus, minus = (k, 1) in I, (k, -1) in I
    if plus and minus:
        raise InvalidCell(f"both +omega^({k}) and -omega^({k}) in I")
    row = "+" if plus else "-" if minus else "none"
    col = "J" if k in J else "S-J" if k in S else "out"
    return row, col


def le_entry(row: str, col: str, X, Y):
    table = {
        ("none", "out"): Y * (Y - P), ("none", "S-J"): Y * (X * Y - P), ("none", "J"): X * (X * Y - P),
        ("+", "out"): Y, ("+", "S-J"): Y, ("+", "J"): X * Y - P,
        ("-", "out"): Y - P, ("-", "S-J"): X * Y - P, ("-", "J"): X,
    }
    try:
        return table[(row, col)]
    except KeyError:
        raise InvalidCell(f"no table entry for {(row, col)}") from None


def _check_sets(J, I, S, f):
    J, S = set(J), set(S)
    if not J <= S:
        raise InvalidCell("J must be a subset of S")
    if not S <= set(range(f)):
        raise InvalidCell("S must be a subset of range(f)")
    for k, s in I:
        if s not in (1, -1) or not 0 <= k < f:
            raise InvalidCell(f"bad element {(k, s)} of I")


def le_relations(J, I, S, f: int) -> list:
    """The f relations g_i(J, I) as sympy expressions in X_i, Y_i, p."""
    _check_sets(J, I, S, f)
    xs, ys = le_symbols(f)
    out = []
    for i in range(f):
        row, col = le_cell(i, set(J), set(I), set(S), f)
        out.append(le_entry(row, col, xs[i], ys[i]))
    return out


def _divides(a, b, gens) -> bool:
    q, r = sympy.div(sympy.Poly(b, *gens), sympy.Poly(a, *gens))
    return r.is_zero


def le_divisibility(J, I, I2, S, f: int) -> bool:
    """For I contained in I2: g_i(J, I2) divides g_i(J, I) for every i."""
    if not set(I) <= set(I2):
        raise ValueError("I must be contained in I2")
    xs, ys = le_symbols(f)
    gens = tuple(xs) + tuple(ys) + (P,)
    g, g2 = le_relations(J, I, S, f), le_relations(J, I2, S, f)
    return all(_divides(b, a, gens) for a, b in zip(g, g2))


def le_cell_divisibility() -> list:
    """Every compatible pair of rows (row contained in row2) in each column."""
    X, Y = sympy.symbols("X Y")
    gens = (X, Y, P)
    rows = {"none": set(), "+": {1}, "-": {-1}}
    out = []
    for col in ("out", "S-J", "J"):
        for r1, r2 in itertools.product(rows, repeat=2):
            if rows[r1] <= rows[r2]:
                ok = _divides(le_entry(r2, col, X, Y), le_entry(r1, col, X, Y), gens)
                out.append({"col": col, "row": r1, "row2": r2, "divides": ok})
    return out


def le_ring(f: int, n_formal: int = 4, N: int = 3, p: int = 7) -> TruncatedRing:
    names = [f"X{i}" for i in range(f)] + [f"Y{i}" for i in range(f)]
    names += [f"Z{k}" for k in range(n_formal)]
    return TruncatedRing(tuple(names), N, p)


def le_presentation(J, I, S, f: int, n_formal: int = 4, N: int = 3, p: int = 7) -> IdealPresentation:
    R = le_ring(f, n_formal, N, p)
    xs, ys = le_symbols(f)
    syms = tuple(xs) + tuple(ys) + tuple(sympy.symbols(f"Z0:{n_formal}")) if n_formal else tuple(xs) + tuple(ys)
    gens = [R.from_sympy(g, syms, P) for g in le_relations(J, I, S, f)]
    return IdealPresentation(R, gens)


# --- tangent spaces ---------------------------------------------------------

def tangent_dim(pres: IdealPresentation) -> int:
    """dim Hom(R/I, F[eps]) = #variables - rank of the linear parts (p -> 0)."""
    L = pres.linear_parts()
    return pres.ring.n - _dim(L, pres.ring.p)


def le_tangent_dims(f: int, S, J, p: int = 7) -> dict:
    I_empty = ()
    I_J = tuple((k, 1) for k in sorted(J))
    return {
        "empty": tangent_dim(le_presentation(J, I_empty, S, f, p=p)),
        "J": tangent_dim(le_presentation(J, I_J, S, f, p=p)),
        "expected": 2 * f + 4,
    }


def randomize_generators(pres: IdealPresentation, rng: random.Random) -> IdealPresentation:
    """Replace generators by an invertible combination with ring coefficients."""
    R, gens = pres.ring, pres.generators
    k = len(gens)
    p = R.p
    while True:
        A = np.array([[rng.randrange(p) for _ in range(k)] for _ in range(k)], dtype=np.int64)
        if rank(A, p) == k:
            break
    new = []
    for row in A:
        g = {}
        for c, h in zip(row, gens):
            g = R.add(g, h, int(c))
        # add a multiple of another generator by a non-unit
        if k > 1:
            j = rng.randrange(k)
            m = rng.choice(R.monomials(1))
            g = R.add(g, R.mul({m: 1}, gens[j]))
        new.append(g)
    return IdealPresentation(R, new)


# --- regular parameters modulo minimal primes -------------------------------

def regular_params_mod_primes(k: int, params: str = "sum") -> dict:
    """F[[X_j, Y_j]]/(X_j Y_j), j < k: check the U_j form a regular system of
    parameters of R/P for each minimal prime P (a choice of X_j or Y_j per j).

    params 'sum' uses U_j = X_j + Y_j, 'x' uses U_j = X_j (a control).
    """
    results = []
    for choice in itertools.product("XY", repeat=k):
        # R/P = F[[surviving variables]]; surviving is the other one of each pair
        survive = [("Y" if c == "X" else "X", j) for j, c in enumerate(choice)]
        rows = []
        for j in range(k):
            img = {("X", j): 1, ("Y", j): 1} if params == "sum" else {("X", j): 1}
            rows.append([img.get(v, 0) for v in survive])
        ok = rank(np.array(rows, dtype=np.int64).reshape(k, k), 2) == k if k else True
        results.append({"prime": "".join(f"{c}{j}" for j, c in enumerate(choice)), "ok": ok})
    return {"k": k, "params": params, "n_primes": len(results),
            "primes": results, "ok": all(r["ok"] for r in results)}


# --- tangent-ideal lemma and cyclicity lemma --------------------------------

def _check_nested(I0, I1, I2):
    p = I0.ring.p
    if not I0.in_max_ideal():
        raise ValueError("I_0 must lie in the maximal ideal")
    s0 = I0.span()
    if not (contains(s0, I1.span(), p) and contains(s0, I2.span(), p)):
        raise ValueError("I_1 and I_2 must be contained in I_0")


def is_regular_quotient(I0: IdealPresentation) -> bool:
    """R/I_0 regular: I_0 is generated by elements with independent linear parts.

    We pick combinations of the generators whose linear parts form a basis of
    the linear parts of I_0 and test that they generate I_0 (mod the cutoff).
    """
    R, p = I0.ring, I0.ring.p
    L = I0.linear_parts()
    if not L.size:
        return not I0.generators or all(not g for g in I0.generators)
    k = _dim(L, p)
    # row-reduce [L | id] to find combinations realising independent rows
    aug = np.hstack([L, np.eye(len(L), dtype=np.int64)])
    A, piv = rref(aug, p)
    combos = [A[r, R.n:] for r in range(len(piv)) if piv[r] < R.n][:k]
    sub = []
    for c in combos:
        g = {}
        for coef, h in zip(c, I0.generators):
            g = R.add(g, h, int(coef))
        sub.append(g)
    return contains(IdealPresentation(R, sub).span(), I0.span(), p)


def tangent_ideal_equiv(I0: IdealPresentation, I1: IdealPresentation, I2: IdealPresentation) -> tuple:
    """(tangent spaces: T(R/I1) cap T(R/I2) == T(R/I0), I1 + I2 == I0)."""
    _check_nested(I0, I1, I2)
    if not is_regular_quotient(I0):
        raise HypothesisViolated("R/I_0 is not regular")
    p = I0.ring.p
    lin12 = _stack(I1.linear_parts(), I2.linear_parts())
    tangent = same_subspace(_basis(list(lin12), I0.ring.n, p), I0.linear_parts(), p)
    sums = same_subspace(ideal_sum(I1, I2).span(), I0.span(), p)
    return tangent, sums


def cyclicity_check(I0: IdealPresentation, I1: IdealPresentation, I2: IdealPresentation) -> tuple:
    """(minimal number of generators of ker(R/I1 + R/I2 -> R/I0), is cyclic).

    Works in the artinian ring R itself: M = {(a, b) : a - b in I0} modulo
    I1 + I2 (direct sum), and mu(M) = dim M / (m M + I1 + I2).
    """
    _check_nested(I0, I1, I2)
    R, p, D = I0.ring, I0.ring.p, I0.ring.dim
    s0, s1, s2 = I0.span(), I1.span(), I2.span()
    zero = np.zeros((0, D), dtype=np.int64)

    def pair(a, b):
        a = a if a.size else zero
        b = b if b.size else zero
        return np.hstack([a, np.zeros((len(a), D), dtype=np.int64)]), np.hstack(
            [np.zeros((len(b), D), dtype=np.int64), b])

    eye = np.eye(D, dtype=np.int64)
    diag = np.hstack([eye, eye])
    a0, _ = pair(s0, zero)
    M = _basis(list(_stack(diag, a0)), 2 * D, p)
    b1, _ = pair(s1, zero)
    _, b2 = pair(zero, s2)
    base = _stack(b1, b2)
    # m M: multiply each basis vector of M by each variable
    mult = []
    for k in range(R.n):
        x = R.var(R.variables[k])
        for v in M:
            a = _poly_of(R, v[:D])
            b = _poly_of(R, v[D:])
            mult.append(np.concatenate([R.vec(R.mul(x, a)), R.vec(R.mul(x, b))]))
    mM = np.array(mult, dtype=np.int64).reshape(len(mult), 2 * D)
    n_gens = _dim(M, p) - _dim(_stack(mM, base), p)
    return n_gens, n_gens == 1


def _poly_of(R: TruncatedRing, v) -> dict:
    return {m: int(c) for m, c in zip(R.monomials(), v) if c}


def random_ideal(R: TruncatedRing, rng: random.Random, n_gens: int, min_deg: int = 1,
                 density: float = 0.3) -> IdealPresentation:
    monos = R.monomials(min_deg)
    gens = []
    for _ in range(n_gens):
        g = {m: rng.randrange(1, R.p) for m in monos if rng.random() < density}
        if not g:
            g = {rng.choice(monos): 1}
        gens.append(g)
    return IdealPresentation(R, gens)


def random_cyclic_instance(rng: random.Random, n_vars: int = 3, N: int = 4, p: int = 7):
    """Random (I0, I1, I2) with I1, I2 inside I0 inside m.

    I0 is random; I1, I2 are generated by random combinations of I0's
    generators, so I1 + I2 = I0 happens with positive frequency.
    """
    R = TruncatedRing(tuple(f"x{k}" for k in range(n_vars)), N, p)
    I0 = random_ideal(R, rng, rng.randint(1, 3), min_deg=rng.choice([1, 1, 2]))

    def sub():
        gens = []
        for _ in range(rng.randint(0, 3)):
            g = {}
            for h in I0.generators:
                c = {m: rng.randrange(p) for m in rng.sample(R.monomials(), 2)}
                g = R.add(g, R.mul(c, h))
            gens.append(g)
        return IdealPresentation(R, gens)

    return R, I0, sub(), sub()


def _subsets(xs):
    xs = list(xs)
    return [c for k in range(len(xs) + 1) for c in itertools.combinations(xs, k)]


def _valid_I(f):
    """All I meeting each {+omega^(k), -omega^(k)} at most once."""
    out = []
    for choice in itertools.product((0, 1, -1), repeat=f):
        out.append(tuple((k, s) for k, s in enumerate(choice) if s))
    return out


def structured_instances(f: int, N: int = 4, p: int = 7):
    """(label, I0, I1, I2) from Le's relations with p -> 0: I0 = (g(J, I)) and
    I1, I2 = (g(J, I1)), (g(J, I2)) for I1, I2 contained in I (so I_k lies in I_0)."""
    for S in _subsets(range(f)):
        for J in _subsets(S):
            for I in _valid_I(f):
                subs = [Is for Is in _valid_I(f) if set(Is) <= set(I)]
                for I1, I2 in itertools.combinations_with_replacement(subs, 2):
                    pres = [le_presentation(J, X, S, f, n_formal=0, N=N, p=p) for X in (I, I1, I2)]
                    yield {"S": S, "J": J, "I0": I, "I1": I1, "I2": I2}, pres[0], pres[1], pres[2]
