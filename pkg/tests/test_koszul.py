import pytest

from modp_lab import koszul
from modp_lab.checks import complex_report, eps_choices, resolution_report
from modp_lab.enveloping import UElem, gens
from modp_lab.koszul import GradedComplex, Summand
from modp_lab.principal import subsets


@pytest.mark.parametrize("kind", koszul.KINDS)
def test_complex_report_p7(kind):
    rep = complex_report(kind, 7, 12)
    assert rep["ok"], rep
    assert rep["pole_agrees_with_rank_engine"]


def test_ranks_and_shifts():
    C = koszul.build_complex("type_0", 7)
    assert C.ranks() == [1, 4, 5, 2]
    assert [s.shift for s in C.modules[2]] == [5, 4, 4, 4, 5]
    E = koszul.build_complex("type_e", 7)
    assert E.ranks() == [1, 3, 3, 1]
    assert E.modules[3][0].shift == 6 and E.modules[3][0].twist == (-2,)
    assert koszul.build_complex("koszul_e", 7).ranks() == [1, 2, 1]


def test_koszul_e_euler_series():
    C = koszul.build_complex("koszul_e", 7)
    from modp_lab.enveloping import T
    import sympy
    assert sympy.simplify(koszul.euler_series(C).as_expr() - 1 / (1 - T)) == 0
    assert koszul.pole_criterion(C)["pole_order"] == 1


def test_h0_lengths():
    for kind, total in (("type_e", 3), ("type_f", 3), ("type_0", 5)):
        dims = koszul.h0_dims(koszul.build_complex(kind, 7), 8)
        assert sum(dims) == total and all(d == 0 for d in dims[3:])


def test_row_vector_convention():
    # d_1 sends the generator of G_1 summand k to the k-th row entry
    C = koszul.build_complex("koszul_e", 7)
    e, f, h = gens(7)
    assert C.diffs[1][0][0] == e and C.diffs[1][1][0] == h
    assert koszul.composites_vanish(C)


def test_zero_complex_is_exact():
    C = GradedComplex("zero", 7, 1, [[Summand((0,), 0)]], {})
    assert koszul.check_exact(C, 4)["degrees"][0]["homology_dims"] == [1]


def test_minimality_detects_identity_component():
    one = UElem.mono(0, 0, 0, 7)
    C = GradedComplex("bad", 7, 1, [[Summand((0,), 0)], [Summand((0,), 0)]], {1: [[one]]})
    assert not koszul.minimality_shift_check(C)


def test_unknown_kind():
    with pytest.raises(ValueError):
        koszul.build_complex("type_x", 7)


def test_tensor_ranks_convolve_and_euler():
    factors = [koszul.build_complex("type_0", 7, 0, 2), koszul.build_complex("type_e", 7, 1, 2)]
    tot = koszul.tensor_complexes(factors)
    assert tot.ranks() == koszul.convolved_ranks(factors)
    assert koszul.euler_matches_product(factors)


@pytest.mark.parametrize("f", [1, 2])
def test_resolution_all_J(f):
    for J in subsets(f):
        for eps in eps_choices(J):
            rep = resolution_report(J, eps, 7, f)
            assert rep["ok"], rep


def test_f1_type_e_resolution_ranks():
    tot = koszul.tensor_complexes(koszul.tauJ_factors({0}, {0: 1}, 7, 1))
    assert tot.ranks() == [1, 3, 3, 1]


def test_separation_fails_at_p5():
    for f in (1, 2):
        found = False
        for J in subsets(f):
            for eps in eps_choices(J):
                tot = koszul.tensor_complexes(koszul.tauJ_factors(J, eps, 5, f))
                if not koszul.separation_check(tot, raise_on_fail=False):
                    found = True
                    with pytest.raises(koszul.CharacterCollision):
                        koszul.separation_check(tot)
        assert found
