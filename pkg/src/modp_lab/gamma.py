"""Jordan-Hoelder sets of injective envelopes over Gamma and Gamma-tilde.

Everything here works at the level of f-tuples: a representation is
recorded by the poset of tuples whose evaluations are its constituents.
Gamma is GL_2(F_q); Gamma-tilde is its lift modulo the square of the
maximal ideal of the first congruence subgroup.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .weights import (
    FTuple, SerreWeight, S_of, compose, cyc, evaluate, identity, is_compatible,
    leq, n_generic, term, tuple_label, tuple_to_json, weights_isomorphic,
)


class TauNotInInjective(ValueError):
    pass


class NotNewWeight(ValueError):
    pass


class IncompatibleAt(ValueError):
    def __init__(self, index, msg=""):
        super().__init__(msg or f"incompatible at index {index}")
        self.index = index


SIGNS = (1, -1)

X_TYPE = ("x", "x-1", "x+1")
P_TYPE = ("p-2-x", "p-3-x", "p-1-x")


@lru_cache(maxsize=None)
def enumerate_I(f: int) -> tuple:
    """The set I of f-tuples, in a fixed lexicographic order."""
    if f == 1:
        return tuple((term(n),) for n in ("x", "p-1-x", "p-3-x"))
    out = []
    values = X_TYPE + P_TYPE
    for combo in itertools.product(values, repeat=f):
        ok = True
        for i in range(f):
            nxt = combo[cyc(i + 1, f)]
            if combo[i] in X_TYPE:
                ok = nxt in ("x", "p-2-x")
            else:
                ok = nxt in ("x-1", "x+1", "p-3-x", "p-1-x")
            if not ok:
                break
        if ok:
            out.append(tuple(term(n) for n in combo))
    return tuple(out)


def in_I(lam) -> bool:
    return tuple(lam) in set(enumerate_I(len(lam)))


def _sgn(sign) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"bad sign {sign!r}")


def mu(i: int, sign, f: int) -> FTuple:
    s = _sgn(sign)
    if f == 1:
        return (term("p-3-x") if s == 1 else term("p-1-x"),)
    lam = list(identity(f))
    i = cyc(i, f)
    lam[i] = term("x+1") if s == 1 else term("x-1")
    lam[cyc(i - 1, f)] = term("p-2-x")
    return tuple(lam)


def delta(i: int, sign, f: int) -> FTuple:
    s = _sgn(sign)
    if f == 1:
        return compose(mu(i, -s, f), mu(i, s, f))
    return compose(mu(i, s, f), mu(i, s, f))


def pairs(f: int):
    return [(i, s) for i in range(f) for s in SIGNS]


def Delta_of(sigma: SerreWeight) -> dict:
    """{(i, sign): delta_i^sign(sigma)} for the defined ones."""
    out = {}
    for i, s in pairs(sigma.f):
        w = evaluate(delta(i, s, sigma.f), sigma)
        if w is not None:
            out[(i, s)] = w
    return out


def E_of(sigma: SerreWeight) -> dict:
    out = {}
    for i, s in pairs(sigma.f):
        w = evaluate(mu(i, s, sigma.f), sigma)
        if w is not None:
            out[(i, s)] = w
    return out


def find_lambda(sigma: SerreWeight, tau: SerreWeight) -> Optional[FTuple]:
    for lam in enumerate_I(sigma.f):
        w = evaluate(lam, sigma)
        if w is not None and weights_isomorphic(w, tau):
            return lam
    return None


def jh_inj_gamma(sigma: SerreWeight) -> list:
    out = []
    for lam in enumerate_I(sigma.f):
        w = evaluate(lam, sigma)
        if w is not None:
            out.append(w)
    return out


def ideal_below(lam) -> list:
    return [l2 for l2 in enumerate_I(len(lam)) if leq(l2, lam)]


def jh_I_gamma(sigma: SerreWeight, tau: SerreWeight) -> list:
    lam = find_lambda(sigma, tau)
    if lam is None:
        raise TauNotInInjective(f"{tau} is not a constituent of Inj {sigma}")
    out = []
    for l2 in ideal_below(lam):
        w = evaluate(l2, sigma)
        if w is not None:
            out.append(w)
    return out


# --- new weights and lambda_! ------------------------------------------

def new_values(sign) -> tuple:
    s = _sgn(sign)
    if s == 1:
        return (term("x"), term("x+1"), term("p-2-x"), term("p-3-x"))
    return (term("x"), term("x-1"), term("p-2-x"), term("p-1-x"))


def satisfies_new(lam, i: int, sign) -> bool:
    return lam[i] in new_values(sign)


def is_new(sigma: SerreWeight, lam, i: int, sign) -> bool:
    """Whether (lam o delta_i^sign)(sigma) is a new constituent of Inj sigma.

    Decided on the weight itself: the value must not be any evaluation of I
    at sigma.  The closed-form condition satisfies_new is checked against
    this in the tests.
    """
    d = evaluate(delta(i, sign, sigma.f), sigma)
    if d is None:
        raise ValueError("delta undefined at sigma")
    tau = evaluate(lam, d)
    if tau is None:
        raise ValueError("evaluation undefined")
    return find_lambda(sigma, tau) is None


def unique_delta(sigma: SerreWeight, tau: SerreWeight) -> tuple:
    """The unique (i, sign) with tau a constituent of Inj delta_i^sign(sigma)."""
    if find_lambda(sigma, tau) is not None:
        raise NotNewWeight(f"{tau} already occurs in Inj {sigma}")
    hits = [key for key, d in Delta_of(sigma).items()
            if find_lambda(d, tau) is not None]
    if len(hits) != 1:
        raise NotNewWeight(f"{len(hits)} candidate deltas for {tau}")
    return hits[0]


@lru_cache(maxsize=None)
def lambda_shriek(lam, i: int, sign) -> FTuple:
    """The element of I with support S(lam)+{i}, compatible with lam."""
    f = len(lam)
    if not satisfies_new(lam, i, sign):
        raise NotNewWeight(f"{tuple_label(lam)} fails the condition at {i}")
    target = S_of(lam) | {i}
    hits = [l2 for l2 in enumerate_I(f)
            if S_of(l2) == target and is_compatible(l2, lam)
            and satisfies_new(l2, i, sign)]
    if len(hits) != 1:
        raise NotNewWeight(f"{len(hits)} candidates for lambda_!")
    return hits[0]


def lambda_shriek_closed(lam, i: int, sign) -> FTuple:
    """Closed form: lam itself, or mu_i^{+-*} o lam."""
    f = len(lam)
    s = _sgn(sign)
    if not satisfies_new(lam, i, sign):
        raise NotNewWeight("condition fails")
    if i in S_of(lam):
        return tuple(lam)
    if lam[i] == term("x"):
        return compose(mu(i, s, f), lam)
    if lam[i] == term("p-2-x"):
        return compose(mu(i, -s, f), lam)
    raise NotNewWeight("unexpected value")


# --- the tilde poset ------------------------------------------------------

@dataclass(frozen=True)
class TildeTuple:
    lam: tuple
    tag: Optional[tuple] = None  # None or (i, sign)

    def to_json(self) -> dict:
        tag = None if self.tag is None else {"i": self.tag[0], "sign": self.tag[1]}
        return {"lambda": tuple_to_json(self.lam), "tag": tag}

    def label(self) -> str:
        t = "" if self.tag is None else f"[{self.tag[0]}{'+' if self.tag[1] == 1 else '-'}]"
        return tuple_label(self.lam) + t


@dataclass
class LayeredProfile:
    """Layers of a socle (or radical) filtration; layer 0 is the socle."""

    layers: list = field(default_factory=list)

    def flatten(self) -> list:
        return [w for layer in self.layers for w in layer]

    def sizes(self) -> list:
        return [len(layer) for layer in self.layers]

    def multiset(self) -> Counter:
        return Counter(self.flatten())

    def to_json(self) -> dict:
        return {"layers": [[w.to_json() for w in sorted(layer)] for layer in self.layers]}


def tilde_set(f: int, i: int, sign) -> list:
    s = _sgn(sign)
    out = [TildeTuple(lam) for lam in enumerate_I(f)]
    out += [TildeTuple(lam, (i, s)) for lam in enumerate_I(f) if satisfies_new(lam, i, s)]
    return out


def tilde_leq(a: TildeTuple, b: TildeTuple) -> bool:
    """a <= b in the tilde order attached to b's tag."""
    if a.tag == b.tag:
        return leq(a.lam, b.lam)
    if a.tag is None and b.tag is not None:
        i, s = b.tag
        return leq(a.lam, lambda_shriek(b.lam, i, s))
    return False


def tilde_length(t: TildeTuple) -> int:
    return len(S_of(t.lam)) + (0 if t.tag is None else 2)


def tilde_eval(t: TildeTuple, sigma: SerreWeight) -> Optional[SerreWeight]:
    if t.tag is None:
        return evaluate(t.lam, sigma)
    i, s = t.tag
    d = evaluate(delta(i, s, sigma.f), sigma)
    if d is None:
        return None
    return evaluate(t.lam, d)


def _exceptional(sigma: SerreWeight, t: TildeTuple) -> bool:
    return (sigma.f == 1 and sigma.r[0] == 2 and t.tag == (0, -1)
            and t.lam == mu(0, -1, 1))


@lru_cache(maxsize=None)
def _ideal_struct(t: TildeTuple) -> tuple:
    """The tuples below t with their lengths; independent of sigma."""
    f = len(t.lam)
    if t.tag is None:
        cands = [TildeTuple(l) for l in enumerate_I(f)]
    else:
        cands = tilde_set(f, *t.tag)
    return tuple((c, tilde_length(c)) for c in cands if tilde_leq(c, t))


def ideal_tilde(sigma: SerreWeight, t: TildeTuple) -> list:
    """[(t', weight, length)] for the defined t' <= t, with the f=1 convention."""
    exc = _exceptional(sigma, t)
    out = []
    for c, ln in _ideal_struct(t):
        if exc and c == TildeTuple(identity(1), (0, -1)):
            continue
        w = tilde_eval(c, sigma)
        if w is None:
            continue
        if exc and c == t:
            ln = 2
        out.append((c, w, ln))
    return out


def socle_filtration_I_tilde(sigma: SerreWeight, t: TildeTuple) -> LayeredProfile:
    if tilde_eval(t, sigma) is None:
        raise TauNotInInjective("tilde tuple undefined at sigma")
    items = ideal_tilde(sigma, t)
    top = max(ln for _, _, ln in items)
    layers = [[] for _ in range(top + 1)]
    for _, w, ln in items:
        layers[ln].append(w)
    return LayeredProfile(layers)


def jh_I_tilde(sigma: SerreWeight, t: TildeTuple) -> list:
    return [w for _, w, _ in ideal_tilde(sigma, t)]


@lru_cache(maxsize=None)
def all_tilde(f: int) -> tuple:
    """Every tilde tuple for every (i, sign), untagged ones listed once."""
    out = [TildeTuple(lam) for lam in enumerate_I(f)]
    for i, s in pairs(f):
        out += [TildeTuple(lam, (i, s)) for lam in enumerate_I(f) if satisfies_new(lam, i, s)]
    return tuple(out)


def jh_inj_tilde(sigma: SerreWeight) -> set:
    """Support of Inj over Gamma-tilde: Inj_Gamma sigma plus Inj_Gamma delta."""
    out = set(jh_inj_gamma(sigma))
    for key, d in Delta_of(sigma).items():
        out.update(jh_inj_gamma(d))
    if sigma.f == 1 and sigma.r[0] == 2:
        extra = tilde_eval(TildeTuple(mu(0, -1, 1), (0, -1)), sigma)
        out.add(extra)
    return out


def h1_tensor_jh(sigma: SerreWeight) -> list:
    """JH multiset of sigma tensor H^1(K_1/Z_1): sigma^f plus Delta(sigma)."""
    if not all(0 <= x <= sigma.p - 3 for x in sigma.r):
        raise ValueError("requires 0 <= r_i <= p-3")
    return [sigma] * sigma.f + sorted(Delta_of(sigma).values())


def meet_on_subset(lam, lam2, sub) -> FTuple:
    """The unique element of I supported on sub and below both lam and lam2."""
    sub = frozenset(sub)
    common = S_of(lam) & S_of(lam2)
    for j in sorted(sub):
        if j not in common:
            raise IncompatibleAt(j, f"{j} not in the common support")
        if not is_compatible(lam, lam2, at=j):
            raise IncompatibleAt(j)
    hits = [l for l in enumerate_I(len(lam))
            if S_of(l) == sub and is_compatible(l, lam) and is_compatible(l, lam2)]
    if len(hits) != 1:
        raise IncompatibleAt(-1, f"{len(hits)} candidates")
    return hits[0]


def is_multiplicity_free(ws) -> bool:
    ws = list(ws)
    return len(set(ws)) == len(ws)


def two_generic(sigma: SerreWeight) -> bool:
    return n_generic(sigma, 2)
