from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modp_lab import iwahori, principal, rho
from modp_lab.checks import tauJ_report
from modp_lab.weights import (HChar, alpha, char_of_weight, identity, sigma_chi, sigma_empty,
                              weight)


def _chi(r, p=13, twist=0):
    return char_of_weight(weight(r, twist, p))


def test_enumerate_P_and_lambda_J():
    for f in (1, 2, 3):
        P = principal.enumerate_P(f)
        assert len(P) == 2 ** f
        assert principal.lambda_J(f, frozenset()) == identity(f)
        assert {principal.J_of(l) for l in P} == set(principal.subsets(f))


def test_jh_ind_socle_and_cosocle():
    for r in ((4,), (3, 6), (3, 5, 7)):
        chi = _chi(r)
        jh = principal.jh_ind(chi)
        f = len(r)
        assert len(set(jh.values())) == 2 ** f
        assert jh[frozenset()] == sigma_empty(chi)
        assert jh[frozenset(range(f))] == sigma_chi(chi)
        for J, w in jh.items():
            assert principal.J_in_ind(chi, w) == J
    with pytest.raises(KeyError):
        principal.J_in_ind(_chi((4,)), weight((0,), 0, 13))


def test_ext_neighbors_symmetric():
    chi = _chi((3, 6))
    nb = iwahori.ext_neighbors(chi)
    assert len(nb) == 4
    assert all(chi in iwahori.ext_neighbors(c) for c in nb)


def test_wbar3_and_w3_profiles():
    for f in (1, 2, 3):
        chi = _chi((4,) * f)
        wb = iwahori.Wbar3_profile(chi)
        assert wb.sizes() == [2 * f, 2 * f, 1]
        assert wb.multiset()[chi] == 2 * f + 1
        w3 = iwahori.W_profile(chi, 3)
        assert len(w3.layers[0]) == 2 * f + f * (f + 1) + f * (f - 1)
    with pytest.raises(ValueError):
        iwahori.W_profile(_chi((4,)), 4)


def test_ind_W2_multiplicity_free():
    for r in ((4,), (3, 6), (3, 5, 7)):
        L = iwahori.ind_W2_jh(_chi(r))
        assert len(L) == len(set(L))


def test_ext_occurrence_equals_ext_gamma():
    for r in ((4,), (3, 6)):
        chi = _chi(r)
        for c2 in iwahori.ext_neighbors(chi):
            for t in principal.jh_ind(chi).values():
                for t2 in principal.jh_ind(c2).values():
                    assert iwahori.ext_occurrence(chi, c2, t, t2) == iwahori.ext_gamma(t2, t)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.data())
def test_theta_multiset_identity(f, data):
    p = 13
    r = tuple(data.draw(st.integers(2, p - 4)) for _ in range(f))
    tau = weight(r, data.draw(st.integers(0, 50)), p)
    assert iwahori.theta_sequence_ok(tau)
    assert iwahori.theta_profile(tau).sizes() == [2 * f, 2 * f, 1]


def test_theta_rejects_non_generic():
    with pytest.raises(ValueError):
        iwahori.theta_profile(weight((12,), 0, 13))


def test_tauJ_counts_all_J():
    for f in (1, 2, 3):
        chi = _chi((4,) * f)
        for J in principal.subsets(f):
            rep = tauJ_report(chi, J)
            assert rep["ok"], rep
            assert rep["n_jh"] == 2 ** len(J) * 3 ** len(J) * 5 ** (f - len(J))


def test_tauJ_spec_validation():
    with pytest.raises(ValueError):
        iwahori.TauJSpec(_chi((4,)), {1})


def test_pd_set_check_f_le_3():
    for r, J in (((4,), (0,)), ((3, 6), (0, 1)), ((3, 6), (1,)), ((3, 5, 7), (0, 1, 2)),
                 ((4, 4, 4), (0, 2))):
        rep = iwahori.pd_set_check(rho.rho(r, J, p=13))
        assert rep["ok"], rep


def test_pd_set_global_at_most_one_reading_fails():
    # several j can carry a neighbour simultaneously once |J_rho| >= 2
    rh = rho.rho((3, 6), (0, 1), p=13)
    D1 = rho.chars_D1(rh)
    multi = [c for c in D1 if sum(n in D1 for n in iwahori.ext_neighbors(c)) >= 2]
    assert multi


def test_tau_rho_consistency_interior():
    rep = iwahori.tau_rho_consistency(rho.rho((4, 5), (0,), p=13))
    assert rep["applicable"] and rep["ok"], rep


def test_tau_rho_boundary_failure_is_reported():
    rep = iwahori.tau_rho_consistency(rho.rho((2, 2), (0, 1), p=13))
    assert rep["applicable"] and not rep["checks"]["socle_is_overlap"]
    assert not iwahori.tau_rho_consistency(rho.rho((1, 5), p=13))["applicable"]
