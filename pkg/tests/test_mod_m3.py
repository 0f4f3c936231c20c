import pytest

from modp_lab import mod_m3
from modp_lab.weights import char_of_weight, weight


@pytest.mark.parametrize("f", [1, 2])
def test_module_calc_table(f):
    chi = char_of_weight(weight((4,) * f, 0, 11))
    rep = mod_m3.mod_m3_module_calc(f, chi)
    assert rep["ok"], rep
    assert rep["dim_End"] == 2 * f + 1 == rep["mult_chi"]
    assert rep["x_y_central"] and rep["square_zero"] and rep["t_basis_of_mR"]
    table = rep["hom_table"]
    assert table["chi"] == "R"
    assert all(v == "F" for k, v in table.items() if "^" in k)
    assert all(v == "0" for k, v in table.items() if "alpha_" in k and "^" not in k)


def test_basis_A_dimensions():
    # degree <= 2 truncation of U for one embedding: 1 + 2 + 4 monomials
    assert len(mod_m3.basis_A(1)) == 7
    assert len(mod_m3.basis_A(2)) == 1 + 4 + 8 + 4


def test_mul_A_truncates():
    e = mod_m3._gen(1, 0, "e")
    f = mod_m3._gen(1, 0, "f")
    assert mod_m3.mul_A(e, f, 11) == {((1, 0, 1),): 1, ((0, 1, 0),): 1}
    assert mod_m3.mul_A(((1, 0, 1),), e, 11) == {}
