"""Weights and characters attached to a reducible generic Galois parameter.

A parameter is recorded by its inertial exponents r, the subset J_rho and
whether it is split.  From these we build D(rho), the JH sets of D_0 and
its Gamma-tilde version, the characters of D_1 and the length function.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .gamma import (
    TildeTuple, all_tilde, enumerate_I, find_lambda, ideal_tilde, tilde_eval,
    tilde_length, _exceptional,
)
from .principal import J_in_ind, jh_ind
from .weights import (
    HChar, NonIntegralExponent, SerreWeight, char_of_weight, cyc, e_of,
    evaluate, ftuple, is_prime, term, weight,
)


class NotGeneric(ValueError):
    pass


class NotInD(ValueError):
    pass


class Unreachable(ValueError):
    pass


@dataclass(frozen=True)
class RhoData:
    r: tuple
    J_rho: frozenset
    split: bool
    p: int

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(self.r))
        J = frozenset(self.J_rho)
        if self.split:
            J = frozenset(range(len(self.r)))
        if not J <= set(range(len(self.r))):
            raise ValueError("J_rho must be a subset of {0..f-1}")
        object.__setattr__(self, "J_rho", J)

    @property
    def f(self) -> int:
        return len(self.r)

    def generic(self) -> bool:
        p = self.p
        if not is_prime(self.p):
            return False
        if not all(0 <= x <= p - 3 for x in self.r):
            return False
        return not (all(x == 0 for x in self.r) or all(x == p - 3 for x in self.r))

    def strongly_generic(self) -> bool:
        return all(2 <= x <= self.p - 5 for x in self.r)

    def sigma0(self) -> SerreWeight:
        return weight(self.r, 0, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "r": list(self.r), "J_rho": sorted(self.J_rho),
                "split": self.split}


def rho(r, J_rho=(), split=False, p=11) -> RhoData:
    return RhoData(tuple(r), frozenset(J_rho), split, p)


# --- the set RD -----------------------------------------------------------

RD_VALUES = ("x", "x+1", "p-2-x", "p-3-x")
PD_VALUES = ("x", "x+1", "x+2", "p-3-x", "p-2-x", "p-1-x")
PD_SUCC = {
    "x": ("x", "x+2", "p-2-x"), "x+1": ("x", "x+2", "p-2-x"),
    "x+2": ("x", "x+2", "p-2-x"),
    "p-1-x": ("p-1-x", "p-3-x", "x+1"), "p-2-x": ("p-1-x", "p-3-x", "x+1"),
    "p-3-x": ("p-1-x", "p-3-x", "x+1"),
}
J_VALUES_RD = ("p-3-x", "x+1")
J_VALUES_PD = ("p-3-x", "x+2")


def load_rd_rules() -> dict:
    text = resources.files("modp_lab").joinpath("data/rd_rules.json").read_text()
    data = json.loads(text)
    return {k: tuple(v) for k, v in data["successors"].items()}


def _chains(values, succ, f):
    out = []
    for combo in itertools.product(values, repeat=f):
        if all(combo[cyc(i + 1, f)] in succ[combo[i]] for i in range(f)):
            out.append(combo)
    return out


def search_rd_rules(p: int = 13, fmax: int = 3) -> list:
    """All successor maps on RD_VALUES meeting the defining constraints.

    (a) 2^f distinct, defined weights at every strongly generic r, f <= fmax;
    (b) e(lambda) integral; (c) the f = 2 list is sigma_0, mu_0^+, mu_1^+ and
    (p-3-x, p-3-x); (d) the J filter leaves 2^|J| tuples; (e) every tuple
    lies in PD with J = S.
    """
    target2 = {("x", "x"), ("x+1", "p-2-x"), ("p-2-x", "x+1"), ("p-3-x", "p-3-x")}
    subs = [tuple(c) for k in range(5) for c in itertools.combinations(RD_VALUES, k)]
    found = []
    for choice in itertools.product(subs, repeat=4):
        succ = dict(zip(RD_VALUES, choice))
        if set(_chains(RD_VALUES, succ, 2)) != target2:
            continue
        if _rd_candidate_ok(succ, p, fmax):
            found.append({k: sorted(v) for k, v in succ.items()})
    return found


def _rd_candidate_ok(succ, p, fmax) -> bool:
    for f in range(1, fmax + 1):
        ts = _chains(RD_VALUES, succ, f)
        if len(ts) != 2 ** f:
            return False
        try:
            for t in ts:
                e_of(ftuple(*t), p)
        except NonIntegralExponent:
            return False
        pd = set(_chains(PD_VALUES, PD_SUCC, f))
        if not set(ts) <= pd:
            return False
        for r in itertools.product(range(2, p - 4), repeat=f):
            ws = [evaluate(ftuple(*t), weight(r, 0, p)) for t in ts]
            if None in ws or len(set(ws)) != len(ws):
                return False
        for k in range(f + 1):
            for J in itertools.combinations(range(f), k):
                n = sum(1 for t in ts
                        if all(j in J for j in range(f) if t[j] in J_VALUES_RD))
                if n != 2 ** k:
                    return False
    return True


@lru_cache(maxsize=None)
def enumerate_RD(f: int) -> tuple:
    succ = load_rd_rules()
    return tuple(ftuple(*c) for c in _chains(RD_VALUES, succ, f))


def _check(rh: RhoData):
    if not rh.generic():
        raise NotGeneric(f"r={rh.r} is not generic at p={rh.p}")


def _j_ok(combo_terms, J, jvals) -> bool:
    bad = {term(n) for n in jvals}
    return all(i in J for i, t in enumerate(combo_terms) if t in bad)


def D_of_rho_ss(rh: RhoData) -> list:
    _check(rh)
    s0 = rh.sigma0()
    return [evaluate(lam, s0) for lam in enumerate_RD(rh.f)]


def RD_of_rho(rh: RhoData) -> list:
    return [lam for lam in enumerate_RD(rh.f) if _j_ok(lam, rh.J_rho, J_VALUES_RD)]


def D_of_rho(rh: RhoData) -> list:
    _check(rh)
    s0 = rh.sigma0()
    return [evaluate(lam, s0) for lam in RD_of_rho(rh)]


# --- PD, D_1 characters and J^max ------------------------------------------

def enumerate_PD(rh: RhoData) -> list:
    _check(rh)
    out = []
    for c in _chains(PD_VALUES, PD_SUCC, rh.f):
        lam = ftuple(*c)
        if _j_ok(lam, rh.J_rho, J_VALUES_PD):
            out.append(lam)
    return out


def psi_of(rh: RhoData, lam) -> HChar:
    """The character attached to lam (the convention with psi = chi^s)."""
    return char_of_weight(evaluate(lam, rh.sigma0()))


def chars_D1(rh: RhoData) -> dict:
    """{chi: lam} for chi in JH(D_1); chi = psi^s with psi attached to lam."""
    return {psi_of(rh, lam).conj(): lam for lam in enumerate_PD(rh)}


def Jmax(lam, J_rho) -> frozenset:
    f = len(lam)
    pre = set()
    for i, t in enumerate(lam):
        if t in (term("p-3-x"), term("x")):
            continue
        if t == term("p-2-x") and i not in J_rho:
            continue
        pre.add(i)
    return frozenset(cyc(i - 1, f) for i in pre)


def tau_of_char(rh: RhoData, chi: HChar) -> SerreWeight:
    """The weight tau in D(rho) with chi in D_{1,tau}."""
    lam = chars_D1(rh)[chi]
    return jh_ind(chi)[Jmax(lam, rh.J_rho)]


def J_of_tau(rh: RhoData, chi: HChar) -> frozenset:
    return J_in_ind(chi, tau_of_char(rh, chi))


# --- D_0 and its tilde version ---------------------------------------------

def jh_D0_sigma(rh: RhoData, sigma: SerreWeight, tilde: bool = True) -> set:
    D = D_of_rho(rh)
    if sigma not in D:
        raise NotInD(f"{sigma} is not in D(rho)")
    forbidden = set(D) - {sigma}
    cands = all_tilde(rh.f) if tilde else [TildeTuple(l) for l in enumerate_I(rh.f)]
    out = set()
    for t in cands:
        w = tilde_eval(t, sigma)
        if w is None:
            continue
        if any(w2 in forbidden for _, w2, _ in ideal_tilde(sigma, t)):
            continue
        out.add(w)
    return out


def jh_D0(rh: RhoData, tilde: bool = True) -> list:
    """Concatenated JH lists of the summands, kept as a list to expose repeats."""
    out = []
    for s in D_of_rho(rh):
        out.extend(sorted(jh_D0_sigma(rh, s, tilde)))
    return out


@lru_cache(maxsize=4096)
def ell_table(sigma: SerreWeight) -> dict:
    """{tau: Loewy length of I(sigma, tau)} over the constituents of Inj sigma."""
    out = {}
    for t in all_tilde(sigma.f):
        w = tilde_eval(t, sigma)
        if w is None:
            continue
        ln = (2 if _exceptional(sigma, t) else tilde_length(t)) + 1
        out[w] = min(out.get(w, math.inf), ln)
    return out


def ell_sigma_tau(sigma: SerreWeight, tau: SerreWeight):
    """Loewy length of I(sigma, tau) over Gamma-tilde, or math.inf."""
    return ell_table(sigma).get(tau, math.inf)


def ell_rho(rh: RhoData, tau: SerreWeight):
    return min(ell_sigma_tau(s, tau) for s in D_of_rho(rh))


def argmin_sigma(rh: RhoData, tau: SerreWeight) -> SerreWeight:
    vals = [(ell_sigma_tau(s, tau), s) for s in D_of_rho(rh)]
    m = min(v for v, _ in vals)
    if m == math.inf:
        raise Unreachable(f"{tau} is not reachable from D(rho)")
    hits = [s for v, s in vals if v == m]
    if len(hits) != 1:
        raise ValueError(f"{len(hits)} minimizers for {tau}")
    return hits[0]


def minimizers(rh: RhoData, tau: SerreWeight) -> list:
    vals = [(ell_sigma_tau(s, tau), s) for s in D_of_rho(rh)]
    m = min(v for v, _ in vals)
    return [s for v, s in vals if v == m and m != math.inf]


# --- the dagger subset ---------------------------------------------------

DAGGER_VALUES = ("x", "x+2", "p-1-x", "p-3-x")


def in_dagger(lam) -> bool:
    allowed = {term(n) for n in DAGGER_VALUES}
    return all(t in allowed for t in lam)


def enumerate_PD_dagger(rh: RhoData) -> list:
    return [lam for lam in enumerate_PD(rh) if in_dagger(lam)]


def is_dagger(rh: RhoData, chi: HChar) -> bool:
    lam = chars_D1(rh).get(chi)
    if lam is None:
        raise KeyError(f"{chi} is not a D_1 character")
    return in_dagger(lam)


def n_chi_is_one(rh: RhoData, chi: HChar) -> bool:
    """chi and chi^s are both D_1 characters attached to the same weight."""
    chars = chars_D1(rh)
    if chi not in chars or chi.conj() not in chars:
        return False
    return tau_of_char(rh, chi) == tau_of_char(rh, chi.conj())
