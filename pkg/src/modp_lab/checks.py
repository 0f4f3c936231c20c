"""Registry of checks, one per lemma id, grouped into suites.

Each check takes a Context and returns (verdict, witness, params).  verdict is
"pass", "fail" or "skip" (preconditions of the lemma not met by the config).
Witnesses of failures are minimal counterexamples where one is available.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional

from . import defring, gamma, gen_koszul, iwahori, koszul, mod_m3, principal, rho, weights
from .enveloping import graded_dim, hilbert_U
from .weights import HChar, char_of_weight, ftuple, weight


@dataclass(frozen=True)
class Context:
    p: int
    f: int
    r: tuple
    jrho: tuple
    ss: bool
    seed: int
    cutoff: int

    def rng(self, check_id: str) -> random.Random:
        return random.Random(f"{self.seed}:{check_id}")

    @property
    def rho(self) -> rho.RhoData:
        return rho.rho(self.r, self.jrho, self.ss, self.p)

    def rho_ok(self) -> bool:
        rh = self.rho
        return rh.generic() and rh.strongly_generic()


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    fn: Callable


REGISTRY: list = []


def check(check_id: str, suite: str):
    def deco(fn):
        REGISTRY.append(Check(check_id, suite, fn))
        return fn
    return deco


SUITES = ("weights", "gamma", "d0", "iwahori", "koszul", "defring")


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _random_weights(ctx: Context, tag: str, n: int, lo: int = 2, hi_off: int = 4) -> list:
    """n seeded weights with lo <= r_i <= p - hi_off (empty if the range is empty)."""
    hi = ctx.p - hi_off
    if hi < lo:
        return []
    rng = ctx.rng(tag)
    return [weight(tuple(rng.randint(lo, hi) for _ in range(ctx.f)), rng.randrange(ctx.p - 1), ctx.p)
            for _ in range(n)]


# --- weights ----------------------------------------------------------------

# rows lambda_i, columns lambda'_i; entry lambda_i(lambda'_i(x))
COMPOSE_COLS = ("x", "x-1", "x+1", "p-2-x", "p-1-x", "p-3-x")
COMPOSE_TABLE = {
    "x": ("x", "x-1", "x+1", "p-2-x", "p-1-x", "p-3-x"),
    "x-1": ("x-1", "x-2", "x", "p-3-x", "p-2-x", "p-4-x"),
    "x+1": ("x+1", "x", "x+2", "p-1-x", "p-x", "p-2-x"),
    "p-2-x": ("p-2-x", "p-1-x", "p-3-x", "x", "x-1", "x+1"),
    "p-1-x": ("p-1-x", "p-x", "p-2-x", "x+1", "x", "x+2"),
    "p-3-x": ("p-3-x", "p-2-x", "p-4-x", "x-1", "x-2", "x"),
}


def compose_table_mismatches() -> list:
    bad = []
    for row, vals in COMPOSE_TABLE.items():
        for col, want in zip(COMPOSE_COLS, vals):
            got = weights.compose(ftuple(row), ftuple(col))[0]
            if got != weights.term(want):
                bad.append({"row": row, "col": col, "want": want, "got": str(got)})
    return bad


@check("L-compose-table", "weights")
def _compose_table(ctx):
    bad = compose_table_mismatches()
    return _verdict(not bad), {"mismatches": bad[:1]}, {"entries": 36}


@check("L-invert", "weights")
def _invert(ctx):
    for lam in gamma.enumerate_I(ctx.f):
        inv = weights.invert(lam)
        if weights.compose(lam, inv) != weights.identity(ctx.f) or weights.S_of(inv) != weights.S_of(lam):
            return "fail", {"lambda": weights.tuple_label(lam)}, {"f": ctx.f}
    return "pass", None, {"f": ctx.f}


@check("P-I-count", "weights")
def _i_count(ctx):
    n = len(gamma.enumerate_I(ctx.f))
    return _verdict(n == 3 ** ctx.f), {"size": n}, {"f": ctx.f}


@check("L-genericity-distinct", "weights")
def _genericity(ctx):
    sig = _random_weights(ctx, "L-genericity-distinct", 3, 2, 4)
    if not sig:
        return "skip", None, {"reason": "no 2-generic weights"}
    lams = gamma.enumerate_I(ctx.f)
    for s in sig:
        ws = [weights.evaluate(l, s) for l in lams]
        if None in ws or len(set(ws)) != len(ws):
            return "fail", {"sigma": s.to_json()}, {"n_sigma": len(sig)}
    return "pass", None, {"n_sigma": len(sig)}


@check("L-sigma-empty", "weights")
def _sigma_empty(ctx):
    sig = _random_weights(ctx, "L-sigma-empty", 10, 2, 4)
    if not sig:
        return "skip", None, {"reason": "no 2-generic weights"}
    lam = principal.lambda_J(ctx.f, frozenset())
    for s in sig:
        tot = sum(ctx.p ** i * x for i, x in enumerate(s.r))
        want = weight(tuple(ctx.p - 1 - x for x in s.r), s.twist + tot, ctx.p)
        chi = char_of_weight(s)
        got = principal.jh_ind(chi)[frozenset()]
        ok = (got == want == weights.sigma_chi(chi.conj())
              and weights.evaluate(lam, got) == got)
        if not ok:
            return "fail", {"sigma": s.to_json()}, {"n_sigma": len(sig)}
    return "pass", None, {"n_sigma": len(sig)}


# --- gamma ------------------------------------------------------------------

def _gamma_sample(ctx, tag):
    out = _random_weights(ctx, tag, 2, 2, 4)
    if ctx.rho.strongly_generic() and all(2 <= x <= ctx.p - 4 for x in ctx.r):
        out.insert(0, ctx.rho.sigma0())
    return out


@check("P-I-tilde-multifree", "gamma")
def _tilde_multifree(ctx):
    sig = _gamma_sample(ctx, "P-I-tilde-multifree")
    if not sig:
        return "skip", None, {"reason": "no generic weights"}
    n = 0
    for s in sig:
        for t in gamma.all_tilde(ctx.f):
            if gamma.tilde_eval(t, s) is None:
                continue
            n += 1
            if not gamma.is_multiplicity_free(gamma.jh_I_tilde(s, t)):
                return "fail", {"sigma": s.to_json(), "tilde": t.label()}, {"n": n}
    return "pass", None, {"n": n}


def ses_failures(s: weights.SerreWeight, limit: int = 1) -> tuple:
    """JH(I(s,tau)) = JH(I(s,tau_!)) + JH(I(delta,tau)) for every new tau."""
    f = s.f
    n, bad = 0, []
    for i, sg in gamma.pairs(f):
        d = weights.evaluate(gamma.delta(i, sg, f), s)
        if d is None:
            continue
        for lam in gamma.enumerate_I(f):
            if not gamma.satisfies_new(lam, i, sg):
                continue
            t = gamma.TildeTuple(lam, (i, sg))
            tau = gamma.tilde_eval(t, s)
            if tau is None or gamma._exceptional(s, gamma.TildeTuple(lam, (i, sg))):
                continue
            if f == 1 and s.r[0] == 2 and sg == -1:
                continue
            n += 1
            lhs = Counter(gamma.jh_I_tilde(s, t))
            ls = gamma.lambda_shriek(lam, i, sg)
            rhs = Counter(w for w in (weights.evaluate(l, s) for l in gamma.ideal_below(ls)) if w)
            rhs += Counter(gamma.jh_I_gamma(d, tau))
            if lhs != rhs:
                bad.append({"sigma": s.to_json(), "tilde": t.label()})
                if len(bad) >= limit:
                    return n, bad
    return n, bad


@check("L-I-tilde-ses", "gamma")
def _tilde_ses(ctx):
    sig = _gamma_sample(ctx, "L-I-tilde-ses")
    if not sig:
        return "skip", None, {"reason": "no generic weights"}
    tot = 0
    for s in sig:
        n, bad = ses_failures(s)
        tot += n
        if bad:
            return "fail", bad[0], {"n": tot}
    return "pass", None, {"n": tot}


@check("L-lambda-shriek", "gamma")
def _shriek(ctx):
    n = 0
    for lam in gamma.enumerate_I(ctx.f):
        for i, s in gamma.pairs(ctx.f):
            if gamma.satisfies_new(lam, i, s):
                n += 1
                if gamma.lambda_shriek(lam, i, s) != gamma.lambda_shriek_closed(lam, i, s):
                    return "fail", {"lambda": weights.tuple_label(lam), "i": i, "sign": s}, {"n": n}
    return "pass", None, {"n": n}


@check("L-E-size", "gamma")
def _e_size(ctx):
    sig = _random_weights(ctx, "L-E-size", 5, 2, 4)
    if not sig:
        return "skip", None, {"reason": "no 2-generic weights"}
    for s in sig:
        E = gamma.E_of(s)
        if len(set(E.values())) != 2 * ctx.f:
            return "fail", {"sigma": s.to_json(), "size": len(set(E.values()))}, {}
    return "pass", None, {"n_sigma": len(sig)}


# --- d0 (rho-weights) ---------------------------------------------------------

def _rho_gate(fn):
    def wrapped(ctx):
        if not ctx.rho_ok():
            return "skip", None, {"reason": "rho not strongly generic", "r": list(ctx.r)}
        return fn(ctx)
    wrapped.__name__ = fn.__name__
    return wrapped


def f2_reference_list(rh: rho.RhoData) -> set:
    s0 = rh.sigma0()
    return {s0, weights.evaluate(gamma.mu(0, 1, 2), s0), weights.evaluate(gamma.mu(1, 1, 2), s0),
            weights.evaluate(ftuple("p-3-x", "p-3-x"), s0)}


@check("T-D-count", "d0")
@_rho_gate
def _d_count(ctx):
    rh = ctx.rho
    ss = rho.D_of_rho_ss(rh)
    D = rho.D_of_rho(rh)
    ok = len(set(ss)) == 2 ** ctx.f and len(set(D)) == 2 ** len(rh.J_rho) and set(D) <= set(ss)
    wit = {"n_ss": len(set(ss)), "n_D": len(set(D))}
    if ctx.f == 2:
        match = set(ss) == f2_reference_list(rh)
        ok = ok and match
        wit["f2_list_matches"] = match
    return _verdict(ok), wit, {"J_rho": sorted(rh.J_rho)}


@check("T-tD-multifree", "d0")
@_rho_gate
def _td_multifree(ctx):
    L = rho.jh_D0(ctx.rho, True)
    return _verdict(len(L) == len(set(L))), {"n_jh": len(L)}, {}


@check("L-ell-minimizer", "d0")
@_rho_gate
def _ell_min(ctx):
    rh = ctx.rho
    taus = set()
    for s in rho.D_of_rho(rh):
        taus |= gamma.jh_inj_tilde(s)
    for tau in sorted(taus):
        m = rho.minimizers(rh, tau)
        if len(m) != 1:
            return "fail", {"tau": tau.to_json(), "n_minimizers": len(m)}, {"n_tau": len(taus)}
    return "pass", None, {"n_tau": len(taus)}


@check("L-Jmax-tau", "d0")
@_rho_gate
def _jmax(ctx):
    rh = ctx.rho
    D = set(rho.D_of_rho(rh))
    chars = rho.chars_D1(rh)
    for chi in sorted(chars):
        tau = rho.tau_of_char(rh, chi)
        if tau not in D or weights.sigma_chi(chi) not in rho.jh_D0_sigma(rh, tau, False):
            return "fail", {"chi": chi.to_json()}, {"n_chars": len(chars)}
    return "pass", None, {"n_chars": len(chars)}


@check("L-D1-J-subset", "d0")
@_rho_gate
def _d1_subset(ctx):
    rh = ctx.rho
    chars = rho.chars_D1(rh)
    base = char_of_weight(rh.sigma0()).conj()
    for J in principal.subsets(ctx.f):
        chi = base
        for j in J:
            chi = chi * weights.alpha(j, ctx.p, ctx.f).inv()
        if (chi in chars) != (J <= rh.J_rho):
            return "fail", {"J": sorted(J)}, {}
    return "pass", None, {}


# --- iwahori --------------------------------------------------------------------

def _generic_chars(ctx, tag, n) -> list:
    sig = _random_weights(ctx, tag, n, 2, 4)
    return [char_of_weight(s) for s in sig]


@check("L-ext-neighbors", "iwahori")
def _ext_nbrs(ctx):
    chis = _generic_chars(ctx, "L-ext-neighbors", 5)
    if not chis:
        return "skip", None, {"reason": "no 2-generic characters"}
    for c in chis:
        nb = iwahori.ext_neighbors(c)
        if len(nb) != 2 * ctx.f or not all(c in iwahori.ext_neighbors(c2) for c2 in nb):
            return "fail", {"chi": c.to_json()}, {}
    return "pass", None, {"n_chi": len(chis)}


@check("L-Wbar3-socle", "iwahori")
def _wbar3(ctx):
    chis = _generic_chars(ctx, "L-Wbar3-socle", 3)
    if not chis:
        return "skip", None, {"reason": "no 2-generic characters"}
    f = ctx.f
    for c in chis:
        wb = iwahori.Wbar3_profile(c)
        w3 = iwahori.W_profile(c, 3)
        ok = (wb.sizes() == [2 * f, 2 * f, 1] and wb.multiset()[c] == 2 * f + 1
              and len(w3.layers[0]) == 2 * f + f * (f + 1) + f * (f - 1)
              and sorted(w3.layers[1]) == sorted(iwahori.ext_neighbors(c)))
        if not ok:
            return "fail", {"chi": c.to_json()}, {}
    return "pass", None, {"n_chi": len(chis)}


@check("L-ind-W2-multifree", "iwahori")
def _indw2(ctx):
    chis = _generic_chars(ctx, "L-ind-W2-multifree", 5)
    if not chis:
        return "skip", None, {"reason": "no 2-generic characters"}
    for c in chis:
        ind = principal.jh_ind(c)
        w = iwahori.ind_W2_jh(c)
        if len(set(ind.values())) != 2 ** ctx.f or len(w) != len(set(w)):
            return "fail", {"chi": c.to_json()}, {}
    return "pass", None, {"n_chi": len(chis)}


@check("L-ext-occurrence", "iwahori")
def _ext_occ(ctx):
    chis = _generic_chars(ctx, "L-ext-occurrence", 4)
    if not chis:
        return "skip", None, {"reason": "no 2-generic characters"}
    n = 0
    for c in chis:
        for c2 in sorted(iwahori.ext_neighbors(c)):
            for t in principal.jh_ind(c).values():
                for t2 in principal.jh_ind(c2).values():
                    n += 1
                    if iwahori.ext_occurrence(c, c2, t, t2) != iwahori.ext_gamma(t2, t):
                        return "fail", {"chi": c.to_json(), "chi2": c2.to_json(),
                                        "tau": t.to_json(), "tau2": t2.to_json()}, {"n": n}
    return "pass", None, {"n": n}


@check("L-PD-set", "iwahori")
@_rho_gate
def _pd_set(ctx):
    rep = iwahori.pd_set_check(ctx.rho)
    wit = None if rep["ok"] else {"failures": rep["failures"][:1], "crowded": rep["crowded"][:1]}
    return _verdict(rep["ok"]), wit, {"n_pairs": rep["n_pairs"]}


@check("P-Theta-twoparts", "iwahori")
def _theta(ctx):
    sig = _random_weights(ctx, "P-Theta-twoparts", 5, 2, 4)
    if not sig:
        return "skip", None, {"reason": "no 2-generic weights"}
    for s in sig:
        prof = iwahori.theta_profile(s)
        if not iwahori.theta_sequence_ok(s) or sum(prof.sizes()) != 4 * ctx.f + 1:
            return "fail", {"tau": s.to_json()}, {}
    return "pass", None, {"n_tau": len(sig)}


def tauJ_report(chi: HChar, J) -> dict:
    spec = iwahori.TauJSpec(chi, frozenset(J))
    L = iwahori.tauJ_jh_list(spec)
    f = chi.f
    want = 2 ** len(J) * 3 ** len(J) * 5 ** (f - len(J))
    soc = iwahori.tauJ_socle(spec)
    expect_soc = set()
    for sub in principal.subsets(f):
        if sub <= frozenset(J):
            c = chi
            for j in sub:
                c = c * weights.alpha(j, chi.p, f).inv()
            expect_soc.add(c)
    return {"J": sorted(J), "n_jh": len(L), "expected": want,
            "multiplicity_free": len(set(L)) == len(L), "socle_ok": soc == expect_soc,
            "ok": len(L) == want and len(set(L)) == len(L) and soc == expect_soc}


@check("L-socle-tauJ", "iwahori")
def _tauj(ctx):
    if ctx.p <= 5:
        return "skip", None, {"reason": "requires p > 5"}
    chis = _generic_chars(ctx, "L-socle-tauJ", 2)
    if not chis:
        return "skip", None, {"reason": "no 2-generic characters"}
    for c in chis:
        for J in principal.subsets(ctx.f):
            rep = tauJ_report(c, J)
            if not rep["ok"]:
                return "fail", {"chi": c.to_json(), **rep}, {}
    return "pass", None, {"n_chi": len(chis)}


@check("P-tau-rho", "iwahori")
@_rho_gate
def _tau_rho(ctx):
    rep = iwahori.tau_rho_consistency(ctx.rho)
    bad = sorted(k for k, v in rep["checks"].items() if not v)
    return _verdict(rep["ok"]), (None if rep["ok"] else {"failed": bad}), {
        "n_socle": rep["n_socle"], "n_jh": rep["n_jh"]}


# --- koszul ---------------------------------------------------------------------

def _p_gate(ctx):
    return ctx.p > 5


@check("P-hilbert-U", "koszul")
def _hilbert(ctx):
    N = max(30, ctx.cutoff)
    coeffs = hilbert_U().coefficients(N)
    ok = coeffs == [graded_dim(n) for n in range(N + 1)]
    return _verdict(ok), None, {"N": N}


def complex_report(kind: str, p: int, N: int) -> dict:
    C = koszul.build_complex(kind, p)
    ex = koszul.check_exact(C, N)
    gens_h0 = koszul.h0_dims(C, N)
    h0 = [d["homology_dims"][0] for d in ex["degrees"]]
    pole = koszul.pole_criterion(C)
    out = {
        "kind": kind, "p": p, "cutoff": N, "ranks": C.ranks(),
        "d_squared_zero": koszul.composites_vanish(C),
        "exact": ex["exact"], "hilbert_check": ex["hilbert_check"],
        "h0_matches_quotient": gens_h0 == h0,
        "pole_order": pole["pole_order"], "pole_ok": pole["ok"],
        "pole_agrees_with_rank_engine": pole["ok"] == ex["exact"],
        "subcomplex": koszul.is_subcomplex(C),
        "minimal_shift": koszul.minimality_shift_check(C),
    }
    out["ok"] = all(out[k] for k in ("d_squared_zero", "exact", "hilbert_check",
                                     "h0_matches_quotient", "pole_ok", "subcomplex",
                                     "minimal_shift"))
    return out


def _complex_check(kind):
    def fn(ctx):
        if not _p_gate(ctx):
            return "skip", None, {"reason": "requires p > 5"}
        rep = complex_report(kind, ctx.p, ctx.cutoff)
        wit = None if rep["ok"] else {k: v for k, v in rep.items() if v is False}
        return _verdict(rep["ok"]), wit, {"cutoff": ctx.cutoff, "ranks": rep["ranks"]}
    return fn


for _kind in koszul.KINDS:
    check(f"L-complex-{_kind}", "koszul")(_complex_check(_kind))


def eps_choices(J):
    J = sorted(J)
    for signs in itertools.product((1, -1), repeat=len(J)):
        yield dict(zip(J, signs))


def resolution_report(J, eps, p: int, f: int) -> dict:
    factors = koszul.tauJ_factors(J, eps, p, f)
    tot = koszul.tensor_complexes(factors)
    kranks = [sum(1 for s in m if s.koszul) for m in tot.modules]
    want = [comb(2 * f, l) for l in range(len(tot.modules))]
    sep = koszul.separation_check(tot, raise_on_fail=False)
    rep = {"J": sorted(J), "eps": {str(k): v for k, v in sorted(eps.items())},
           "koszul_ranks": kranks, "koszul_ranks_ok": kranks == want,
           "shift_law": koszul.shift_law_ok(tot), "minimal_shift": koszul.minimality_shift_check(tot),
           "separation": sep}
    rep["ok"] = rep["koszul_ranks_ok"] and rep["shift_law"] and rep["minimal_shift"] and sep
    return rep


@check("P-resolution-tauJ", "koszul")
def _resolution(ctx):
    if not _p_gate(ctx):
        return "skip", None, {"reason": "requires p > 5"}
    n = 0
    for J in principal.subsets(ctx.f):
        for eps in eps_choices(J):
            n += 1
            rep = resolution_report(J, eps, ctx.p, ctx.f)
            if not rep["ok"]:
                return "fail", rep, {"n": n}
    return "pass", None, {"n": n}


@check("P-module-Pchi", "koszul")
def _pchi(ctx):
    if ctx.f > 2:
        return "skip", None, {"reason": "run for f <= 2"}
    chis = [c for c in _generic_chars(ctx, "P-module-Pchi", 1)]
    if not chis:
        return "skip", None, {"reason": "no 2-generic characters"}
    rep = mod_m3.mod_m3_module_calc(ctx.f, chis[0])
    wit = None if rep["ok"] else {"hom_table": rep["hom_table"], "dim_End": rep["dim_End"]}
    return _verdict(rep["ok"]), wit, {"dim_End": rep["dim_End"]}


@check("L-gen-koszul", "koszul")
def _gen_koszul(ctx):
    p = ctx.p
    inst, phis, b = gen_koszul.example_instance(p)
    ex = gen_koszul.generalized_koszul_check(inst, phis, b)
    ok = ex["phibar_iso"] and ex["J_equals_Jb"] and ex["serre_lemma"]
    if not ok:
        return "fail", {"example": ex}, {}
    ins = gen_koszul.random_instances(ctx.seed, 20, p)
    for inst, phis, b in ins:
        r = gen_koszul.generalized_koszul_check(inst, phis, b)
        if not r["serre_lemma"]:
            return "fail", {"n": inst.n, "m": inst.m, "injective": r["injective"]}, {}
    return "pass", None, {"n_random": len(ins)}


# --- defring --------------------------------------------------------------------

@check("T-Le-divisibility", "defring")
def _le_div(ctx):
    cells = defring.le_cell_divisibility()
    bad = [c for c in cells if not c["divides"]]
    if bad:
        return "fail", bad[0], {}
    n = 0
    f = ctx.f
    for S in defring._subsets(range(f)):
        for J in defring._subsets(S):
            for I2 in defring._valid_I(f):
                for I in defring._valid_I(f):
                    if set(I) <= set(I2):
                        n += 1
                        if not defring.le_divisibility(J, I, I2, S, f):
                            return "fail", {"S": S, "J": J, "I": I, "I2": I2}, {"n": n}
    return "pass", None, {"n_cells": len(cells), "n": n}


@check("C-Le-tangent-dim", "defring")
def _le_tangent(ctx):
    f = ctx.f
    n = 0
    for S in defring._subsets(range(f)):
        for J in defring._subsets(S):
            d = defring.le_tangent_dims(f, S, J, p=ctx.p)
            n += 1
            if not d["empty"] == d["J"] == d["expected"]:
                return "fail", {"S": S, "J": J, **d}, {"n": n}
    return "pass", None, {"n": n, "expected": 2 * f + 4}


@check("L-Uj-regular-params", "defring")
def _uj(ctx):
    for k in range(1, ctx.f + 1):
        good = defring.regular_params_mod_primes(k, "sum")
        control = defring.regular_params_mod_primes(k, "x")
        if not good["ok"] or control["ok"]:
            return "fail", {"k": k, "sum_ok": good["ok"], "control_ok": control["ok"]}, {}
    return "pass", None, {"kmax": ctx.f}


def _cyclic_corpus(ctx, tag, n_random):
    rng = ctx.rng(tag)
    for k in range(n_random):
        R, I0, I1, I2 = defring.random_cyclic_instance(rng, p=ctx.p)
        yield {"random": k}, I0, I1, I2
    for lab, I0, I1, I2 in defring.structured_instances(1, p=ctx.p):
        yield lab, I0, I1, I2


@check("L-cyclic-CA", "defring")
def _cyclic(ctx):
    n = 0
    for lab, I0, I1, I2 in _cyclic_corpus(ctx, "L-cyclic-CA", 30):
        n += 1
        count, cyc = defring.cyclicity_check(I0, I1, I2)
        s = defring.same_subspace(defring.ideal_sum(I1, I2).span(), I0.span(), I0.ring.p)
        if cyc != s:
            return "fail", {"instance": _jsonable(lab), "n_gens": count}, {"n": n}
    return "pass", None, {"n": n}


@check("L-tang-ideal-relation", "defring")
def _tang(ctx):
    n = applicable = 0
    for lab, I0, I1, I2 in _cyclic_corpus(ctx, "L-tang-ideal-relation", 30):
        n += 1
        try:
            a, b = defring.tangent_ideal_equiv(I0, I1, I2)
        except defring.HypothesisViolated:
            continue
        applicable += 1
        if a != b:
            return "fail", {"instance": _jsonable(lab)}, {"n": n}
    return "pass", None, {"n": n, "n_regular": applicable}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return x


def checks_for(suite: str) -> list:
    if suite == "all":
        return list(REGISTRY)
    if suite not in SUITES:
        raise KeyError(suite)
    return [c for c in REGISTRY if c.suite == suite]


def lemma_ids() -> list:
    return [c.id for c in REGISTRY]


def run_check(c: Check, ctx: Context) -> dict:
    """Run one check; module errors become failed records."""
    try:
        verdict, witness, params = c.fn(ctx)
    except Exception as exc:  # surfaced as a record, not a crash
        verdict, witness, params = "fail", {"error": type(exc).__name__, "message": str(exc)}, {}
    return {"id": c.id, "suite": c.suite, "params": _jsonable(params),
            "verdict": verdict, "witness": _jsonable(witness)}


def get(check_id: str) -> Optional[Check]:
    for c in REGISTRY:
        if c.id == check_id:
            return c
    return None
