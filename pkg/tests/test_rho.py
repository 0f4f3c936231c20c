import itertools
import json
from importlib import resources

import pytest

from modp_lab import gamma, rho
from modp_lab.checks import f2_reference_list
from modp_lab.weights import char_of_weight, evaluate, ftuple, weight


def _strong(p, f):
    return itertools.product(range(2, p - 4), repeat=f)


def test_rd_rules_regenerate_from_search():
    data = json.loads(resources.files("modp_lab").joinpath("data/rd_rules.json").read_text())
    found = rho.search_rd_rules()
    assert len(found) == 1
    assert found[0] == {k: sorted(v) for k, v in data["successors"].items()}


def test_genericity_flags():
    assert rho.rho((3, 4), p=11).generic()
    assert not rho.rho((0, 0), p=11).generic()
    assert not rho.rho((8, 8), p=11).generic()
    assert rho.rho((2, 6), p=11).strongly_generic()
    assert not rho.rho((1, 6), p=11).strongly_generic()
    with pytest.raises(rho.NotGeneric):
        rho.D_of_rho(rho.rho((10,), p=11))


def test_D_counts_exhaustive_f2_p13():
    for r in _strong(13, 2):
        for J in ((), (0,), (1,), (0, 1)):
            rh = rho.rho(r, J, p=13)
            ss, D = set(rho.D_of_rho_ss(rh)), set(rho.D_of_rho(rh))
            assert len(ss) == 4 and len(D) == 2 ** len(J) and D <= ss
        assert set(rho.D_of_rho_ss(rho.rho(r, p=13))) == f2_reference_list(rho.rho(r, p=13))


def test_D_nonsplit_empty_J_is_sigma0():
    rh = rho.rho((3, 5, 4), (), p=13)
    assert rho.D_of_rho(rh) == [rh.sigma0()]
    assert len(rho.D_of_rho_ss(rho.rho((3, 5, 4), split=True, p=13))) == 8


def test_D_ss_size_f4():
    rh = rho.rho((3, 4, 5, 6), split=True, p=13)
    assert len(set(rho.D_of_rho_ss(rh))) == 16


def test_PD_f1_empty_J():
    rh = rho.rho((4,), (), p=11)
    assert set(rho.enumerate_PD(rh)) == {ftuple("x"), ftuple("p-1-x")}
    assert len(rho.chars_D1(rh)) == 2


def test_Jmax_examples():
    assert rho.Jmax(ftuple("x", "x", "x"), frozenset()) == frozenset()
    assert rho.Jmax(ftuple("p-1-x"), frozenset()) == frozenset({0})


def test_jh_D0_sigma_f1_nonsplit_is_all_of_I():
    rh = rho.rho((4,), (), p=11)
    s0 = rh.sigma0()
    assert rho.jh_D0_sigma(rh, s0, tilde=False) == {evaluate(l, s0) for l in gamma.enumerate_I(1)}
    with pytest.raises(rho.NotInD):
        rho.jh_D0_sigma(rh, weight((5,), 0, 11))


def test_D0_inclusion_and_multiplicity_free():
    for p, f in ((11, 1), (11, 2)):
        for r in _strong(p, f):
            rh = rho.rho(r, split=True, p=p)
            for s in rho.D_of_rho(rh):
                small = rho.jh_D0_sigma(rh, s, False)
                assert s in small and small <= rho.jh_D0_sigma(rh, s, True)
            L = rho.jh_D0(rh, True)
            assert len(L) == len(set(L))


def test_ell_and_argmin():
    rh = rho.rho((3, 4), split=True, p=11)
    s0 = rh.sigma0()
    assert rho.ell_rho(rh, s0) == 1
    assert rho.argmin_sigma(rh, s0) == s0
    with pytest.raises(rho.Unreachable):
        rho.argmin_sigma(rh, weight((0, 0), 0, 11))


def test_argmin_lies_below_other_sigmas():
    rh = rho.rho((3, 4), split=True, p=13)
    D = rho.D_of_rho(rh)
    taus = set().union(*(gamma.jh_inj_tilde(s) for s in D))
    for tau in taus:
        best = rho.argmin_sigma(rh, tau)
        for s in D:
            if s == best or rho.ell_sigma_tau(s, tau) == float("inf"):
                continue
            below = set()
            for t in gamma.all_tilde(2):
                if gamma.tilde_eval(t, s) == tau:
                    below |= set(gamma.jh_I_tilde(s, t))
            assert best in below


def test_dagger_examples():
    rh = rho.rho((4,), (), p=11)
    assert len(rho.enumerate_PD_dagger(rh)) == 2
    assert not rho.in_dagger(ftuple("x+1", "p-2-x"))


def test_dagger_implies_n_chi_one():
    for r, J in (((4,), ()), ((4,), (0,)), ((3, 5), (0,)), ((3, 5), (0, 1)), ((3, 4, 5), (1,))):
        rh = rho.rho(r, J, p=13)
        for chi in rho.chars_D1(rh):
            if rho.is_dagger(rh, chi):
                assert rho.n_chi_is_one(rh, chi)


def test_n_chi_one_converse_fails_off_dagger():
    # only one direction holds: (x+1, x+2, p-2-x) has n_chi = 1 but is not dagger
    rh = rho.rho((3, 4, 5), (1,), p=13)
    lam = ftuple("x+1", "x+2", "p-2-x")
    chi = [c for c, l in rho.chars_D1(rh).items() if l == lam][0]
    assert rho.n_chi_is_one(rh, chi) and not rho.is_dagger(rh, chi)


def test_dagger_stable_under_conjugation():
    for r, J in (((4,), (0,)), ((3, 5), (0, 1)), ((3, 4, 5), (0, 2))):
        rh = rho.rho(r, J, p=13)
        chars = rho.chars_D1(rh)
        dag = {c for c in chars if rho.is_dagger(rh, c)}
        assert {c.conj() for c in dag} == dag


def test_tau_maximal_subset():
    from modp_lab.principal import J_in_ind, jh_ind
    rh = rho.rho((3, 5), (0, 1), p=13)
    D = set(rho.D_of_rho(rh))
    for chi in rho.chars_D1(rh):
        Jt = rho.J_of_tau(rh, chi)
        for J, w in jh_ind(chi).items():
            if w in D:
                assert J <= Jt


def test_support_of_D0_characters():
    rh = rho.rho((3, 5), (0,), p=13)
    D0 = set(rho.jh_D0(rh, False))
    for chi in rho.chars_D1(rh):
        assert rho.tau_of_char(rh, chi) in D0
