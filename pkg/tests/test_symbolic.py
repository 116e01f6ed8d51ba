from fractions import Fraction as F

import pytest

from gl3bethe.errors import HigherOrderPole
from gl3bethe.symbolic import Expr, VariableSpace


@pytest.fixture
def space():
    return VariableSpace(["z", "w"])


def test_simple_pole_in_a_later_variable(space):
    z, w = space.vars(["z", "w"])
    f = 1 / ((z - 2) * (z - w))
    r = f.residue("z", F(2))
    assert r.evaluate([0, F(7)]) == 1 / (F(2) - 7)


def test_moving_pole(space):
    z, w = space.vars(["z", "w"])
    f = z / ((z - 2) * (z - w * 3))
    r = f.residue("z", w * 3)
    for wv in (F(5), F(-1, 4)):
        assert r.evaluate([0, wv]) == 3 * wv / (3 * wv - 2)


def test_double_pole_uses_taylor_term(space):
    z, w = space.vars(["z", "w"])
    f = 1 / ((z - 2) * (z - 2) * (z - w))
    assert f.pole_order("z", F(2)) == 2
    r = f.residue("z", F(2))
    assert r.evaluate([0, F(9)]) == -1 / (F(2) - 9) ** 2
    with pytest.raises(HigherOrderPole):
        f.residue("z", F(2), max_order=1)


def test_sum_of_residues_vanishes_for_decaying_function(space):
    z, w = space.vars(["z", "w"])
    f = (z + 1) / ((z - 2) * (z + 3) * (z - w))
    total = Expr(space, {})
    for p in f.candidate_poles("z"):
        total = total + f.residue("z", p)
    assert total.evaluate([0, F(11, 3)]) == 0


def test_constant_value(space):
    z, w = space.vars(["z", "w"])
    f = 1 / ((z - 2) * (w - 5))
    g = f.residue("z", F(2)).residue("w", F(5))
    assert g.constant_value() == 1
    with pytest.raises(ValueError):
        f.constant_value()
