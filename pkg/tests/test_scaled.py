import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.dynamics.scaled import ONE, ZERO, ScaledComplex, to_complex_point, to_scaled_point, wrap_arg

moderate = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)


def test_zero_is_canonical():
    z = ScaledComplex(-math.inf, 2.0)
    assert z.arg == 0.0
    assert z.is_zero
    assert ScaledComplex.from_complex(0) == ZERO


@pytest.mark.parametrize("bad, error", [
    ((math.nan, 0.0), ValueError),
    ((0.0, math.nan), ValueError),
    ((math.inf, 0.0), OverflowError),
])
def test_rejects_invalid_components(bad, error):
    with pytest.raises(error):
        ScaledComplex(*bad)


def test_wrap_arg_range():
    assert wrap_arg(math.pi) == math.pi
    assert wrap_arg(-math.pi) == math.pi
    assert wrap_arg(4.0) == pytest.approx(4.0 - 2.0 * math.pi)


def test_products_far_below_double_range():
    a = ScaledComplex(-800.0, 1.0)
    b = ScaledComplex(-800.0, 2.0)
    product = a * b
    assert product.log_mod == -1600.0
    assert product.arg == pytest.approx(3.0)
    assert product.to_complex() == 0j


def test_integer_powers():
    x = ScaledComplex(-3.0, 0.5)
    assert (x ** 4).log_mod == -12.0
    assert (x ** 4).arg == pytest.approx(2.0)
    assert x ** 0 == ONE
    assert ZERO ** 0 == ONE
    assert ZERO ** 3 == ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO ** -1
    with pytest.raises(TypeError):
        x ** 0.5


def test_addition_drops_summands_past_underflow_gap():
    big = ScaledComplex(0.0, 0.3)
    tiny = ScaledComplex(-800.0, 1.0)
    assert big + tiny == big
    assert tiny + big == big
    assert big + ZERO == big
    assert ZERO + tiny == tiny


def test_modulus_and_conversion_overflow():
    huge = ScaledComplex(1000.0, 0.0)
    assert huge.modulus() == math.inf
    with pytest.raises(OverflowError):
        huge.to_complex()


def test_point_helpers():
    point = to_scaled_point((0.5, -2j))
    assert point[0].log_mod == pytest.approx(math.log(0.5))
    assert to_complex_point(point) == (pytest.approx(0.5), pytest.approx(-2j))


@given(moderate, moderate)
def test_product_matches_complex_arithmetic(a, b):
    result = (ScaledComplex.from_complex(a) * ScaledComplex.from_complex(b)).to_complex()
    assert cmath.isclose(result, a * b, rel_tol=1e-12)


@given(moderate, moderate)
def test_sum_matches_complex_arithmetic(a, b):
    result = (ScaledComplex.from_complex(a) + ScaledComplex.from_complex(b)).to_complex()
    assert abs(result - (a + b)) <= 1e-12 * (abs(a) + abs(b))


@given(moderate, moderate)
def test_difference_matches_complex_arithmetic(a, b):
    result = (ScaledComplex.from_complex(a) - b).to_complex()
    assert abs(result - (a - b)) <= 1e-12 * (abs(a) + abs(b))
