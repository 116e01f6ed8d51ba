from fractions import Fraction as F

import pytest

from gl3bethe.errors import BackendMismatch, EvaluationAtPole, HigherOrderPole, NotAPole
from gl3bethe.field import (
    UnivariateRationalFunction as URF,
    common_backend,
    fit_rational_function,
    from_json,
    pole_order,
    poly_gcd,
    rf_eval,
    rf_residue,
    scalar,
    to_json,
)


def test_scalar_coercion_and_json_round_trip():
    x = scalar("-3/7")
    assert x == F(-3, 7)
    assert from_json(to_json(x)) == x
    z = scalar("1/4", "float")
    assert z == complex(0.25)
    assert from_json(to_json(z)) == z


def test_backends_never_mix():
    with pytest.raises(BackendMismatch):
        common_backend([F(1), 1j])
    with pytest.raises(BackendMismatch):
        scalar(0.5, "rational")


def test_normalize_cancels_common_factor():
    # (z-1)(z-2) / ((z-1)(z+3)) -> (z-2)/(z+3)
    f = URF.make((F(2), F(-3), F(1)), (F(-3), F(2), F(1)))
    assert f.den == (F(3), F(1))
    assert rf_eval(f, F(5)) == F(3, 8)


def test_gcd_is_monic():
    g = poly_gcd((F(-2), F(2)), (F(-3), F(0), F(3)))
    assert g == (F(-1), F(1))


def test_residue_simple_pole():
    # 1/(z (z - 2)) has residue 1/2 at z = 2 and -1/2 at 0
    f = URF.make((F(1),), (F(0), F(-2), F(1)))
    assert rf_residue(f, F(2)) == F(1, 2)
    assert rf_residue(f, F(0)) == F(-1, 2)


def test_residue_errors():
    f = URF.make((F(1),), (F(1), F(-2), F(1)))  # 1/(z-1)^2
    assert pole_order(f, F(1)) == 2
    with pytest.raises(HigherOrderPole):
        rf_residue(f, F(1))
    with pytest.raises(NotAPole):
        rf_residue(f, F(3))


def test_evaluation_at_pole_raises():
    f = URF.linear_fractional(F(1), F(0), F(1), F(-4))
    with pytest.raises(EvaluationAtPole):
        rf_eval(f, F(4))


def test_fit_recovers_rational_function():
    target = URF.make((F(3), F(0), F(-1)), (F(5), F(7), F(0), F(2)))
    fitted = fit_rational_function(lambda z: rf_eval(target, z), (F(k, 3) for k in range(1, 100)))
    for z in (F(11, 5), F(-9, 4)):
        assert rf_eval(fitted, z) == rf_eval(target, z)
