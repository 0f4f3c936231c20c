"""The truncation A = (tensor_i U_i) / (degree >= 3) and the module lambda_chi.

A models gr of F[[I_1/Z_1]]/m^3.  lambda_chi is the quotient of A (generated
in weight chi^dual) by the degree-2 vectors of nontrivial relative weight.
Characters are tracked as alpha-exponent vectors relative to the generator.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .enveloping import _mono_mul
from .linalg_fp import in_span, nullspace, rank
from .weights import HChar, char_n_generic


def _deg(m) -> int:
    return sum(a + 2 * b + c for a, b, c in m)


@lru_cache(maxsize=None)
def basis_A(f: int, top: int = 2) -> tuple:
    per = [(a, b, c) for a in range(top + 1) for b in range(top // 2 + 1)
           for c in range(top + 1) if a + 2 * b + c <= top]
    out = [m for m in itertools.product(per, repeat=f) if _deg(m) <= top]
    out.sort(key=lambda m: (_deg(m), m))
    return tuple(out)


def weight_of(m) -> tuple:
    return tuple(c - a for a, b, c in m)


def mul_A(m1, m2, p: int, top: int = 2) -> dict:
    """Product of basis monomials in A, truncated above degree top."""
    if _deg(m1) + _deg(m2) > top:
        return {}
    out = {(): 1}
    for x, y in zip(m1, m2):
        fac = _mono_mul(x, y, p)
        new = {}
        for k, v in out.items():
            for k2, v2 in fac.items():
                key = k + (k2,)
                new[key] = (new.get(key, 0) + v * v2) % p
        out = new
    return {k: v for k, v in out.items() if v}


def _unit(f):
    return ((0, 0, 0),) * f


def _gen(f, i, kind):
    m = [(0, 0, 0)] * f
    m[i] = {"e": (0, 0, 1), "f": (1, 0, 0)}[kind]
    return tuple(m)


def lambda_basis(f: int) -> list:
    """Monomials spanning lambda: degree <= 1 plus e_i f_i and f_i e_i.

    The degree-2 part of weight zero in A is spanned by f_i e_i and h_i;
    we use (f_i e_i, h_i) as PBW coordinates and x_i = f_i e_i + h_i.
    """
    out = [m for m in basis_A(f) if _deg(m) <= 1]
    for i in range(f):
        for mono in ((1, 0, 1), (0, 1, 0)):
            m = [(0, 0, 0)] * f
            m[i] = mono
            out.append(tuple(m))
    return out


def mod_m3_module_calc(f: int, chi: HChar) -> dict:
    p = chi.p
    A = basis_A(f)
    lam = lambda_basis(f)
    lidx = {m: k for k, m in enumerate(lam)}
    n = len(lam)

    def act(a, v):
        """a (monomial of A) applied to vector v in lambda."""
        out = np.zeros(n, dtype=np.int64)
        for k, c in enumerate(v):
            if not c:
                continue
            for key, val in mul_A(a, lam[k], p).items():
                if key in lidx:
                    out[lidx[key]] += c * val
                # other degree-2 monomials are killed in lambda
        return out % p

    def unit_vec(m):
        v = np.zeros(n, dtype=np.int64)
        v[lidx[m]] = 1
        return v

    # x_i = e_i f_i = f_i e_i + h_i, y_i = f_i e_i, as elements of A
    xs, ys = [], []
    for i in range(f):
        fe = [(0, 0, 0)] * f
        fe[i] = (1, 0, 1)
        hh = [(0, 0, 0)] * f
        hh[i] = (0, 1, 0)
        xs.append({tuple(fe): 1, tuple(hh): 1})
        ys.append({tuple(fe): 1})

    def act_elem(el, v):
        out = np.zeros(n, dtype=np.int64)
        for m, c in el.items():
            out = out + c * act(m, v)
        return out % p

    def mul_elem(el, m2):
        out = {}
        for m, c in el.items():
            for k, v in mul_A(m, m2, p).items():
                out[k] = (out.get(k, 0) + c * v) % p
        return {k: v for k, v in out.items() if v}

    # centrality of x_i, y_i in A and (x, y)^2 = 0
    central = True
    for el in xs + ys:
        for m in A:
            left = mul_elem(el, m)
            right = {}
            for k, c in el.items():
                for kk, v in mul_A(m, k, p).items():
                    right[kk] = (right.get(kk, 0) + c * v) % p
            right = {k: v for k, v in right.items() if v}
            if left != right:
                central = False
    square_zero = all(_deg(k1) + _deg(k2) > 2 for a in xs + ys for b in xs + ys
                      for k1 in a for k2 in b)

    # End(lambda): images v of the generator with ann(1) . v = 0 and weight 0
    one = unit_vec(_unit(f))
    ann = []
    for m in A:
        if m not in lidx or _deg(m) == 2 and weight_of(m) != (0,) * f:
            ann.append(m)
    zero_w = [k for k, m in enumerate(lam) if weight_of(m) == (0,) * f]
    rows = []
    for a in ann:
        M = np.zeros((n, len(zero_w)), dtype=np.int64)
        for j, k in enumerate(zero_w):
            M[:, j] = act(a, unit_vec(lam[k]))
        rows.append(M)
    cond = np.vstack(rows) if rows else np.zeros((0, len(zero_w)), dtype=np.int64)
    end_dim = len(nullspace(cond, p)) if cond.size else len(zero_w)

    # weight spaces of lambda as R-modules; chi' -> weight of chi'^dual
    def module_type(w):
        ks = [k for k, m in enumerate(lam) if weight_of(m) == w]
        if not ks:
            return "0"
        if len(ks) == 1:
            v = unit_vec(lam[ks[0]])
            killed = all(not act_elem(el, v).any() for el in xs + ys)
            return "F" if killed else "?"
        # free of rank one iff generated by one vector with R.v of full size
        for k in ks:
            v = unit_vec(lam[k])
            span = [v] + [act_elem(el, v) for el in xs + ys]
            if rank(np.array(span), p) == len(ks) == 2 * f + 1:
                return "R"
        return "?"

    table = {}
    targets = {"chi": (0,) * f}
    for i in range(f):
        for s in (1, -1):
            w = [0] * f
            w[i] = s
            targets[f"chi*alpha_{i}^{s:+d}"] = tuple(w)
    for i, j in itertools.combinations_with_replacement(range(f), 2):
        w = [0] * f
        w[i] += 1
        w[j] += 1
        targets[f"chi*alpha_{i}alpha_{j}"] = tuple(w)
    for name, w in targets.items():
        # Hom(P_chi', lambda_chi^dual)^dual lives in weight (chi')^dual of lambda,
        # i.e. relative weight -w
        table[name] = module_type(tuple(-x for x in w))

    # t_{chi'} for chi' in E(chi): degree-1 vector times the opposite generator
    ts = []
    for i in range(f):
        for kind, other in (("e", "f"), ("f", "e")):
            v = unit_vec(_gen(f, i, kind))
            ts.append(act(_gen(f, i, other), v))
    m_R = [act_elem(el, one) for el in xs + ys]
    t_basis = (rank(np.array(ts), p) == 2 * f
               and all(in_span(np.array(m_R), t, p) for t in ts))

    mult_chi = len(zero_w)
    return {
        "f": f, "p": p, "chi": chi.to_json(),
        "two_generic": char_n_generic(chi, 2),
        "dim_A": len(A), "dim_lambda": n,
        "x_y_central": central, "square_zero": square_zero,
        "dim_End": end_dim, "mult_chi": mult_chi,
        "hom_table": table, "t_basis_of_mR": t_basis,
        "ok": (central and square_zero and end_dim == 2 * f + 1
               and mult_chi == 2 * f + 1 and table["chi"] == "R"
               and all(table[k] == "F" for k in table if "^" in k)
               and all(table[k] == "0" for k in table if "alpha_" in k and "^" not in k)
               and t_basis),
    }
