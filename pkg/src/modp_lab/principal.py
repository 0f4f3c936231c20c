"""Principal series Ind_I^K chi: the set P and its subset parametrization."""
from __future__ import annotations

import itertools
from functools import lru_cache

from .gamma import enumerate_I
from .weights import HChar, evaluate, sigma_empty, term

P_VALUES = ("x", "x-1", "p-2-x", "p-1-x")


@lru_cache(maxsize=None)
def enumerate_P(f: int) -> tuple:
    if f == 1:
        return ((term("x"),), (term("p-1-x"),))
    allowed = {term(n) for n in P_VALUES}
    return tuple(lam for lam in enumerate_I(f) if all(t in allowed for t in lam))


def J_of(lam) -> frozenset:
    return frozenset(i for i, t in enumerate(lam) if t.sign == -1)


@lru_cache(maxsize=None)
def lambda_J(f: int, J: frozenset):
    hits = [lam for lam in enumerate_P(f) if J_of(lam) == frozenset(J)]
    if len(hits) != 1:
        raise ValueError(f"no unique element of P for J={sorted(J)}")
    return hits[0]


def subsets(f: int):
    for k in range(f + 1):
        for c in itertools.combinations(range(f), k):
            yield frozenset(c)


def jh_ind(chi: HChar) -> dict:
    """{J: sigma_J} with sigma_J = lambda_J(sigma_empty)."""
    base = sigma_empty(chi)
    out = {}
    for J in subsets(chi.f):
        w = evaluate(lambda_J(chi.f, J), base)
        if w is not None:
            out[J] = w
    return out


def J_in_ind(chi: HChar, tau) -> frozenset:
    for J, w in jh_ind(chi).items():
        if w == tau:
            return J
    raise KeyError(f"{tau} is not a constituent of Ind {chi}")
