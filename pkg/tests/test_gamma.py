import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modp_lab import gamma
from modp_lab.checks import ses_failures
from modp_lab.gamma import TildeTuple
from modp_lab.weights import (S_of, compose, evaluate, ftuple, identity, is_compatible, term,
                              weight)


def _weights(p, f, lo=2, hi_off=4):
    for r in itertools.product(range(lo, p - hi_off + 1), repeat=f):
        yield weight(r, 0, p)


def test_enumerate_I_f1():
    assert set(gamma.enumerate_I(1)) == {ftuple("x"), ftuple("p-1-x"), ftuple("p-3-x")}


def test_enumerate_I_f2_brute_force():
    names = gamma.X_TYPE + gamma.P_TYPE
    brute = set()
    for a, b in itertools.product(names, repeat=2):
        ok = all((u in gamma.X_TYPE and v in ("x", "p-2-x"))
                 or (u in gamma.P_TYPE and v in ("x-1", "x+1", "p-3-x", "p-1-x"))
                 for u, v in ((a, b), (b, a)))
        if ok:
            brute.add(ftuple(a, b))
    I2 = gamma.enumerate_I(2)
    assert len(I2) == 9 == len(set(I2))
    assert set(I2) == brute


def test_mu_shape_f2_and_f3():
    for f in (2, 3):
        for i in range(f):
            m = gamma.mu(i, 1, f)
            assert m[i] == term("x+1")
            assert m[(i - 1) % f] == term("p-2-x")
            assert all(m[j] == term("x") for j in range(f) if j not in (i, (i - 1) % f))
    assert gamma.mu(0, 1, 1) == ftuple("p-3-x")


def test_delta_definition():
    for f in (2, 3):
        for i, s in gamma.pairs(f):
            assert gamma.delta(i, s, f) == compose(gamma.mu(i, s, f), gamma.mu(i, s, f))
            # x_i +- 2 at position i
            assert gamma.delta(i, s, f)[i] == term("x+2" if s == 1 else "x-2")
    assert gamma.delta(0, 1, 1) == compose(gamma.mu(0, -1, 1), gamma.mu(0, 1, 1))


def test_E_size_one_generic():
    for f in (1, 2, 3):
        s = weight((3,) * f, 0, 11)
        assert len(set(gamma.E_of(s).values())) == 2 * f


def test_jh_I_gamma_examples():
    s = weight((4,), 0, 11)
    assert gamma.jh_I_gamma(s, s) == [s]
    tau = evaluate(ftuple("p-3-x"), s)
    assert set(gamma.jh_I_gamma(s, tau)) == {s, tau}
    s2 = weight((4, 5), 0, 11)
    lam = [l for l in gamma.enumerate_I(2) if S_of(l) == {0, 1}][0]
    assert len(gamma.jh_I_gamma(s2, evaluate(lam, s2))) == 4
    with pytest.raises(gamma.TauNotInInjective):
        gamma.jh_I_gamma(s, weight((0,), 0, 11))


def test_lambda_shriek_examples():
    for f in (2, 3):
        for i, s in gamma.pairs(f):
            assert gamma.lambda_shriek(identity(f), i, s) == gamma.mu(i, s, f)
        for lam in gamma.enumerate_I(f):
            for i, s in gamma.pairs(f):
                if i in S_of(lam) and gamma.satisfies_new(lam, i, s):
                    assert gamma.lambda_shriek(lam, i, s) == lam


def test_lambda_shriek_closed_form_exhaustive():
    for f in (1, 2, 3):
        for lam in gamma.enumerate_I(f):
            for i, s in gamma.pairs(f):
                if gamma.satisfies_new(lam, i, s):
                    got = gamma.lambda_shriek(lam, i, s)
                    assert got == gamma.lambda_shriek_closed(lam, i, s)
                    assert S_of(got) == S_of(lam) | {i}


def test_new_weight_condition_matches_weight_level_test():
    # closed-form membership condition against the weight-level definition
    for f in (1, 2):
        for s in list(_weights(13, f))[::3]:
            for lam in gamma.enumerate_I(f):
                for i, sg in gamma.pairs(f):
                    d = evaluate(gamma.delta(i, sg, f), s)
                    if d is None or evaluate(lam, d) is None:
                        continue
                    if gamma.satisfies_new(lam, i, sg):
                        assert gamma.is_new(s, lam, i, sg)


def test_unique_delta_exhaustive_f2():
    s = weight((4, 6), 0, 13)
    n = 0
    for (i, sg), d in gamma.Delta_of(s).items():
        for lam in gamma.enumerate_I(2):
            if gamma.satisfies_new(lam, i, sg):
                tau = evaluate(lam, d)
                assert gamma.unique_delta(s, tau) == (i, sg)
                n += 1
    assert n > 0
    with pytest.raises(gamma.NotNewWeight):
        gamma.unique_delta(s, s)


def test_disjointness_of_delta_neighbourhoods():
    for f, p in ((1, 11), (2, 11), (2, 13)):
        for s in _weights(p, f):
            I = gamma.enumerate_I(f)
            for l1, l2 in itertools.combinations(I, 2):
                if not is_compatible(l1, l2):
                    continue
                s1, s2 = evaluate(l1, s), evaluate(l2, s)
                n1 = {s1} | set(gamma.Delta_of(s1).values())
                n2 = {s2} | set(gamma.Delta_of(s2).values())
                assert not n1 & n2


def test_socle_filtration_f1_length_three():
    s = weight((4,), 0, 11)
    t = TildeTuple(identity(1), (0, 1))
    prof = gamma.socle_filtration_I_tilde(s, t)
    assert prof.sizes() == [1, 1, 1]
    assert prof.layers[0] == [s]
    assert prof.layers[1] == [evaluate(gamma.mu(0, 1, 1), s)]
    assert prof.layers[2] == [evaluate(gamma.delta(0, 1, 1), s)]


def test_untagged_filtration_reduces_to_gamma():
    s = weight((3, 5), 0, 11)
    for lam in gamma.enumerate_I(2):
        t = TildeTuple(lam)
        prof = gamma.socle_filtration_I_tilde(s, t)
        assert len(prof.layers) == len(S_of(lam)) + 1
        assert sorted(prof.flatten()) == sorted(gamma.jh_I_gamma(s, evaluate(lam, s)))


def test_tilde_multiplicity_free_and_ses():
    for f, p in ((1, 11), (2, 11)):
        for s in _weights(p, f):
            for t in gamma.all_tilde(f):
                if gamma.tilde_eval(t, s) is not None:
                    assert gamma.is_multiplicity_free(gamma.jh_I_tilde(s, t))
            n, bad = ses_failures(s)
            assert not bad and n > 0


def test_h1_tensor_jh_count():
    for f in (1, 2, 3):
        s = weight((3,) * f, 0, 11)
        assert len(gamma.h1_tensor_jh(s)) == f + 2 * f
    with pytest.raises(ValueError):
        gamma.h1_tensor_jh(weight((10,), 0, 11))


def test_meet_on_subset():
    I = gamma.enumerate_I(2)
    for a, b in itertools.product(I, repeat=2):
        assert gamma.meet_on_subset(a, b, ()) == identity(2)
        common = S_of(a) & S_of(b)
        if is_compatible(a, b) and common:
            m = gamma.meet_on_subset(a, b, common)
            assert gamma.leq(m, a) and gamma.leq(m, b)
    lam = [l for l in I if S_of(l) == {0}][0]
    with pytest.raises(gamma.IncompatibleAt):
        gamma.meet_on_subset(lam, identity(2), {0})


def test_lemma_index_implication_brute_force():
    # lambda' = mu o lambda with i outside S(lambda) lands in S(lambda') and S(mu)
    f = 2
    for lam in gamma.enumerate_I(f):
        for i, s in gamma.pairs(f):
            m = gamma.mu(i, s, f)
            lam2 = compose(m, lam)
            if lam2 in gamma.enumerate_I(f) and i not in S_of(lam) and lam[i] == term("x"):
                assert i in S_of(lam2) and i in S_of(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9))
def test_tilde_layer_count_matches_length(r0, r1):
    s = weight((r0, r1), 0, 13)
    for t in gamma.all_tilde(2):
        if gamma.tilde_eval(t, s) is None:
            continue
        prof = gamma.socle_filtration_I_tilde(s, t)
        assert len(prof.layers) == gamma.tilde_length(t) + 1
        assert Counter(prof.flatten()) == Counter(gamma.jh_I_tilde(s, t))
