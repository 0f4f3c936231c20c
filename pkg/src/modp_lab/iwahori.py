"""Iwahori characters: the Ext graph, W_{chi,n}, Theta_tau and tau_J.

Profiles are layered multisets (layer 0 is the socle).  Only layer data is
modelled; the maps between layers are not.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .gamma import E_of, LayeredProfile, mu, pairs, two_generic
from .principal import J_in_ind, jh_ind, subsets
from .rho import RhoData, chars_D1
from .weights import (
    HChar, SerreWeight, alpha, char_n_generic, char_of_weight, cyc, evaluate,
)


def ext_neighbors(chi: HChar) -> set:
    out = set()
    for i in range(chi.f):
        a = alpha(i, chi.p, chi.f)
        out.add(chi * a)
        out.add(chi * a.inv())
    return out


def _alpha_prod(chi: HChar, b) -> HChar:
    out = chi
    for i, k in enumerate(b):
        out = out * alpha(i, chi.p, chi.f) ** k
    return out


# --- W_{chi,n} ----------------------------------------------------------

def W3_socle(chi: HChar) -> list:
    """soc_I(W_{chi,3}) as a list (repeats kept)."""
    f, p = chi.f, chi.p
    a = [alpha(i, p, f) for i in range(f)]
    out = [chi] * (2 * f)
    for i, j in itertools.combinations_with_replacement(range(f), 2):
        out.append(chi * a[i] * a[j])
        out.append(chi * a[i].inv() * a[j].inv())
    for i, j in itertools.permutations(range(f), 2):
        out.append(chi * a[i] * a[j].inv())
    return out


def W_profile(chi: HChar, n: int) -> LayeredProfile:
    if n == 1:
        return LayeredProfile([[chi]])
    nb = sorted(ext_neighbors(chi))
    if n == 2:
        return LayeredProfile([nb, [chi]])
    if n == 3:
        return LayeredProfile([W3_socle(chi), nb, [chi]])
    raise ValueError("n must be 1, 2 or 3")


def Wbar3_profile(chi: HChar) -> LayeredProfile:
    return LayeredProfile([[chi] * (2 * chi.f), sorted(ext_neighbors(chi)), [chi]])


# --- principal series and Ext occurrence ---------------------------------

def ext_gamma(tau2: SerreWeight, tau: SerreWeight) -> bool:
    """Ext^1_Gamma(tau2, tau) != 0, read off the set E(tau)."""
    return tau2 in E_of(tau).values()


def ext_occurrence(chi: HChar, chi2: HChar, tau: SerreWeight, tau2: SerreWeight) -> bool:
    """Condition (ii) of the occurrence lemmas for tau in Ind chi, tau2 in Ind chi2."""
    f, p = chi.f, chi.p
    J = J_in_ind(chi, tau)
    J2 = J_in_ind(chi2, tau2)
    for j in range(f):
        a = alpha(j, p, f)
        k = cyc(j - 1, f)
        if chi2 == chi * a.inv():
            if k not in J and J2 == J | {k}:
                return True
        elif chi2 == chi * a:
            if k not in J2 and J == J2 | {k}:
                return True
    return False


def ind_W2_jh(chi: HChar) -> list:
    out = list(jh_ind(chi).values())
    for c in sorted(ext_neighbors(chi)):
        out.extend(jh_ind(c).values())
    return out


# --- Theta_tau ------------------------------------------------------------

def _mu_minus(tau: SerreWeight) -> list:
    out = []
    for i in range(tau.f):
        w = evaluate(mu(i, -1, tau.f), tau)
        if w is None:
            raise ValueError(f"mu_{i}^- undefined at {tau}")
        out.append(w)
    return out


def _E_list(tau: SerreWeight) -> list:
    E = E_of(tau)
    if len(E) != 2 * tau.f:
        raise ValueError(f"{tau} is not generic enough for E(tau)")
    return [E[k] for k in pairs(tau.f)]


def theta_profile(tau: SerreWeight) -> LayeredProfile:
    return LayeredProfile([[tau] * (2 * tau.f), _E_list(tau), [tau]])


def theta_ord_profile(tau: SerreWeight) -> LayeredProfile:
    return LayeredProfile([[tau] * tau.f, _mu_minus(tau), [tau]])


def theta_K1_profiles(tau: SerreWeight) -> tuple:
    """((Theta_tau)_{K_1}, (Theta_tau^ord)_{K_1})."""
    return (LayeredProfile([[tau] * tau.f, _E_list(tau), [tau]]),
            LayeredProfile([_mu_minus(tau), [tau]]))


def theta_sequence_ok(tau: SerreWeight) -> bool:
    """Multiset consequence of 0 -> Th -> Th^ord + Th_K1 -> Th^ord_K1 -> 0."""
    th = theta_profile(tau).multiset()
    ordp = theta_ord_profile(tau).multiset()
    k1, ordk1 = (x.multiset() for x in theta_K1_profiles(tau))
    return th + ordk1 == ordp + k1


# --- tau_J ----------------------------------------------------------------

@dataclass(frozen=True)
class TauJSpec:
    chi: HChar
    J: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(self.J))
        if not self.J <= set(range(self.chi.f)):
            raise ValueError("J must be a subset of {0..f-1}")


def _ranges(spec: TauJSpec, Jsub: frozenset) -> list:
    out = []
    for i in range(spec.chi.f):
        if i not in spec.J:
            out.append(range(-2, 3))
        elif i not in Jsub:
            out.append(range(0, 3))
        else:
            out.append(range(-3, 0))
    return out


def tauJ_exponents(spec: TauJSpec) -> list:
    """[(J, b)] for every JH factor, J a subset of spec.J."""
    out = []
    for Jsub in subsets(spec.chi.f):
        if not Jsub <= spec.J:
            continue
        for b in itertools.product(*_ranges(spec, Jsub)):
            out.append((Jsub, b))
    return out


def tauJ_jh_list(spec: TauJSpec) -> list:
    return [_alpha_prod(spec.chi, b) for _, b in tauJ_exponents(spec)]


def tauJ_jh(spec: TauJSpec) -> set:
    return set(tauJ_jh_list(spec))


def tauJ_socle(spec: TauJSpec) -> set:
    f = spec.chi.f
    return {_alpha_prod(spec.chi, [-1 if i in Jsub else 0 for i in range(f)])
            for Jsub in subsets(f) if Jsub <= spec.J}


def _in_m2(Jsub, b) -> bool:
    loud = 0
    for i, k in enumerate(b):
        if i in Jsub:
            if not -2 <= k <= -1:
                return False
            loud += k == -2
        else:
            if abs(k) > 1:
                return False
            loud += abs(k) == 1
    return loud <= 1


def tauJ_m2(spec: TauJSpec) -> set:
    return {_alpha_prod(spec.chi, b) for Jsub, b in tauJ_exponents(spec)
            if _in_m2(Jsub, b)}


def tau_rho_spec(rh: RhoData) -> TauJSpec:
    chi0s = char_of_weight(rh.sigma0()).conj()
    return TauJSpec(chi0s, rh.J_rho)


def tau_rho_consistency(rh: RhoData) -> dict:
    if not rh.generic() or not rh.strongly_generic():
        return {"applicable": False}
    spec = tau_rho_spec(rh)
    jh = tauJ_jh(spec)
    soc = tauJ_socle(spec)
    m2 = tauJ_m2(spec)
    d1 = set(chars_D1(rh))
    f, p = rh.f, rh.p
    chi_f = _alpha_prod(spec.chi, [-1] * f)
    nbrs_ok = all(n in m2 for s in soc for n in ext_neighbors(s))
    checks = {
        "socle_is_overlap": (jh & d1) == soc,
        "multiplicity_free": len(tauJ_jh_list(spec)) == len(jh),
        "chi_f_in": chi_f in jh,
        "chi_f_conj_out": chi_f.conj() not in jh,
        "socle_neighbors_in_m2": nbrs_ok,
    }
    return {"applicable": True, "checks": checks, "ok": all(checks.values()),
            "n_socle": len(soc), "n_jh": len(jh)}


def pd_set_check(rh: RhoData) -> dict:
    """J-set relations between tau, tau' for Ext-adjacent chi, chi' in D_1,
    plus Ext^1_Gamma(tau, tau') != 0.

    The at-most-one property is read per index: for each j, at most one of
    chi*alpha_j, chi*alpha_j^-1 lies in D_1 (several j can occur at once).
    """
    from .rho import J_of_tau, chars_D1, tau_of_char
    D1 = chars_D1(rh)
    f, p = rh.f, rh.p
    n_pairs, bad, crowded = 0, [], []
    for chi in sorted(D1):
        hits = [c for c in ext_neighbors(chi) if c in D1]
        for j in range(f):
            a = alpha(j, p, f)
            if chi * a in D1 and chi * a.inv() in D1:
                crowded.append({"chi": chi.to_json(), "j": j})
        for chi2 in hits:
            n_pairs += 1
            J, J2 = J_of_tau(rh, chi), J_of_tau(rh, chi2)
            tau, tau2 = tau_of_char(rh, chi), tau_of_char(rh, chi2)
            ok = False
            for j in range(f):
                a = alpha(j, p, f)
                k = cyc(j - 1, f)
                if chi2 == chi * a.inv():
                    ok = ok or (k not in J and J2 == J | {k})
                elif chi2 == chi * a:
                    ok = ok or (k not in J2 and J == J2 | {k})
            ok = ok and ext_gamma(tau2, tau)
            if not ok:
                bad.append({"chi": chi.to_json(), "chi2": chi2.to_json()})
    return {"n_chars": len(D1), "n_pairs": n_pairs, "failures": bad[:3],
            "crowded": crowded[:3], "ok": not bad and not crowded}
