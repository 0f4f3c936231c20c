import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from modp_lab import defring
from modp_lab.defring import IdealPresentation, TruncatedRing


def _ring():
    return TruncatedRing(("x", "y", "z"), 4, 7)


polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                        st.integers(0, 6), max_size=4)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_truncated_mul_matches_sympy(a, b):
    R = _ring()
    x, y, z = sympy.symbols("x y z")
    expr = lambda d: sum((c * x ** m[0] * y ** m[1] * z ** m[2] for m, c in d.items()), sympy.Integer(0))
    want = R.from_sympy(sympy.expand(expr(a) * expr(b)), (x, y, z))
    assert R.mul(R.reduce(a), R.reduce(b)) == want


def test_ring_dimension():
    # monomials of degree < 4 in 3 variables
    assert _ring().dim == 1 + 3 + 6 + 10


def test_le_relations_shape():
    for f in (1, 2, 3):
        assert len(defring.le_relations((), (), (), f)) == f
    X, Y = defring.le_symbols(1)
    g = defring.le_relations((0,), ((0, 1),), (0,), 1)[0]
    assert sympy.expand(g - (X[0] * Y[0] - defring.P)) == 0


def test_le_index_convention():
    # g_i is governed by omega^(f-1-i)
    assert defring.le_cell(0, {2}, {(2, 1)}, {2}, 3) == ("+", "J")
    assert defring.le_cell(2, set(), {(0, -1)}, set(), 3) == ("-", "out")


def test_invalid_cells():
    with pytest.raises(defring.InvalidCell):
        defring.le_relations((0,), (), (), 1)
    with pytest.raises(defring.InvalidCell):
        defring.le_relations((), ((0, 1), (0, -1)), (0,), 1)
    with pytest.raises(defring.InvalidCell):
        defring.le_relations((), ((3, 1),), (), 2)


def test_cell_divisibility_all_compatible_pairs():
    cells = defring.le_cell_divisibility()
    assert len(cells) == 15 and all(c["divides"] for c in cells)


def test_divisibility_f2_exhaustive():
    f = 2
    for S in defring._subsets(range(f)):
        for J in defring._subsets(S):
            for I2 in defring._valid_I(f):
                for I in defring._valid_I(f):
                    if set(I) <= set(I2):
                        assert defring.le_divisibility(J, I, I2, S, f)
    with pytest.raises(ValueError):
        defring.le_divisibility((), ((0, 1),), (), (0,), 1)


@pytest.mark.parametrize("f", [1, 2])
def test_tangent_dims(f):
    for S in defring._subsets(range(f)):
        for J in defring._subsets(S):
            d = defring.le_tangent_dims(f, S, J)
            assert d["empty"] == d["J"] == d["expected"] == 2 * f + 4


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2))
def test_tangent_dim_invariant_under_generator_change(seed, f):
    rng = random.Random(seed)
    S = tuple(range(f))
    J = tuple(k for k in S if rng.random() < 0.5)
    I = tuple((k, rng.choice((1, -1))) for k in range(f) if rng.random() < 0.5)
    pres = defring.le_presentation(J, I, S, f)
    assert defring.tangent_dim(defring.randomize_generators(pres, rng)) == defring.tangent_dim(pres)


def test_regular_params():
    for k in range(1, 4):
        assert defring.regular_params_mod_primes(k, "sum")["ok"]
        assert not defring.regular_params_mod_primes(k, "x")["ok"]
        assert defring.regular_params_mod_primes(k)["n_primes"] == 2 ** k


def test_cyclicity_known_cases():
    R = _ring()
    x, y = R.var("x"), R.var("y")
    I0 = IdealPresentation(R, [x, y])
    zero = IdealPresentation(R, [])
    assert defring.cyclicity_check(I0, I0, I0) == (1, True)
    assert defring.cyclicity_check(I0, IdealPresentation(R, [x]), IdealPresentation(R, [y]))[1]
    n, cyc = defring.cyclicity_check(I0, zero, zero)
    assert not cyc and n == 3  # (1,1), (x,0), (y,0)


def test_tangent_ideal_lemma_and_hypothesis():
    R = _ring()
    x, y = R.var("x"), R.var("y")
    I0 = IdealPresentation(R, [x, y])
    assert defring.tangent_ideal_equiv(I0, IdealPresentation(R, [x]), IdealPresentation(R, [y])) == (True, True)
    sq = IdealPresentation(R, [R.mul(x, x)])
    with pytest.raises(defring.HypothesisViolated):
        defring.tangent_ideal_equiv(sq, sq, sq)
    with pytest.raises(ValueError):
        defring.cyclicity_check(IdealPresentation(R, [x]), IdealPresentation(R, [y]), IdealPresentation(R, []))


def test_random_corpus_verdicts_agree():
    rng = random.Random(3)
    regular = 0
    for _ in range(40):
        R, I0, I1, I2 = defring.random_cyclic_instance(rng)
        _, cyc = defring.cyclicity_check(I0, I1, I2)
        assert cyc == defring.same_subspace(defring.ideal_sum(I1, I2).span(), I0.span(), R.p)
        try:
            t, s = defring.tangent_ideal_equiv(I0, I1, I2)
        except defring.HypothesisViolated:
            continue
        regular += 1
        assert t == s
    assert regular > 0


def test_structured_f1_verdicts_agree():
    n = 0
    for lab, I0, I1, I2 in defring.structured_instances(1):
        n += 1
        _, cyc = defring.cyclicity_check(I0, I1, I2)
        assert cyc == defring.same_subspace(defring.ideal_sum(I1, I2).span(), I0.span(), 7)
    assert n == 21
