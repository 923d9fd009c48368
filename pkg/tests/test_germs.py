import cmath
import math

import numpy as np
import pytest

from src.dynamics.germs import (
    IntermediateGerm,
    Polynomial,
    eval,
    eval_log,
    iterate,
    parse_word,
    point_from_logs,
    validate,
)
from src.dynamics.scaled import ScaledComplex, to_scaled_point
from src.errors import DomainViolation, ValidationError


@pytest.mark.parametrize("raw", [
    {"family": "enoki", "alpha": 0.5, "s": 1, "Q": [1.0]},
    {"family": "enoki", "alpha": [0.3, 0.4], "s": 2, "Q": []},
    {"family": "intermediate", "p": 2, "s": 1, "lambda": 1.0, "low": [1.0]},
    {"family": "intermediate", "p": 2, "s": 1, "lambda": 1.0, "low": [1.0], "a": 0.3},
    {"family": "intermediate", "p": 3, "s": 2, "lambda": [0.0, 2.0], "low": [0.0, 1.0]},
    {"family": "ih", "word": "SST"},
])
def test_valid_specs(raw):
    germ = validate(raw)
    assert germ.family == raw["family"]


@pytest.mark.parametrize("raw, codes", [
    ({"family": "enoki", "alpha": 1.5, "s": 1, "Q": [0, 0, 1]}, {"AlphaOutOfDisc", "DegreeTooHigh"}),
    ({"family": "enoki", "alpha": 0.0, "s": 1, "Q": []}, {"AlphaOutOfDisc"}),
    ({"family": "intermediate", "p": 2, "s": 2, "lambda": 1.0, "low": [0, 1]}, {"GcdCondition"}),
    ({"family": "intermediate", "p": 2, "s": 2, "lambda": 1.0, "low": []}, {"GcdCondition"}),
    ({"family": "ih", "word": "TT"}, {"NoSFactor"}),
    ({"family": "ih", "word": "SX"}, {"InvalidParameter"}),
    ({"family": "lattes"}, {"InvalidParameter"}),
    ({"family": "enoki", "alpha": "half", "s": 1}, {"InvalidParameter", "AlphaOutOfDisc"}),
    ({"family": "intermediate", "p": 1, "s": 1, "lambda": 1.0, "low": [1]}, {"InvalidParameter"}),
])
def test_invalid_specs(raw, codes):
    with pytest.raises(ValidationError) as excinfo:
        validate(raw)
    assert set(excinfo.value.codes) == codes


def test_every_violation_is_reported():
    raw = {"family": "intermediate", "p": 3, "s": 1, "lambda": 2.0, "low": [1.0], "a": 0.5}
    with pytest.raises(ValidationError) as excinfo:
        validate(raw)
    assert excinfo.value.codes.count("ForbiddenA") == 2
    assert "NonIntegerExponent" in excinfo.value.codes


def test_non_mapping_spec():
    with pytest.raises(ValidationError):
        validate(["enoki"])


def test_polynomial_degree_ignores_trailing_zeros():
    Q = Polynomial((1.0, 0.0, 0.0))
    assert Q.length == 3
    assert Q.degree == 1
    assert Polynomial().degree == 0
    assert Q(0) == 0


def test_intermediate_top_coefficient():
    germ = validate({"family": "intermediate", "p": 2, "s": 1, "lambda": 1.0, "low": [1.0], "a": 0.3})
    assert germ.top_exponent == 2
    assert germ.Q.coeffs == (1.0, 0.3)


@pytest.mark.parametrize("raw, point, expected", [
    ({"family": "enoki", "alpha": 0.5, "s": 1, "Q": [1.0]}, (0.5, 1.0), (0.25, 1.0)),
    ({"family": "ih", "word": "S"}, (0.5, 0.5), (0.5, 0.25)),
    ({"family": "intermediate", "p": 2, "s": 1, "lambda": 1.0, "low": [1.0]}, (0.5, 1.0), (0.25, 1.0)),
])
def test_eval_examples(raw, point, expected):
    image = eval(validate(raw), point)
    assert image[0] == pytest.approx(expected[0])
    assert image[1] == pytest.approx(expected[1])


@pytest.mark.parametrize("raw", [
    {"family": "enoki", "alpha": 0.5, "s": 1, "Q": [1.0]},
    {"family": "enoki", "alpha": [0.3, -0.6], "s": 3, "Q": [[0.2, 1.0], [0.0, 0.0], [-1.5, 0.4]]},
    {"family": "intermediate", "p": 2, "s": 1, "lambda": 1.0, "low": [1.0], "a": 0.3},
    {"family": "intermediate", "p": 3, "s": 2, "lambda": [0.0, 2.0], "low": [0.5, 1.0]},
    {"family": "ih", "word": "S"},
    {"family": "ih", "word": "SST"},
])
def test_scaled_eval_matches_plain(raw):
    germ = validate(raw)
    rng = np.random.default_rng(5)
    for _ in range(200):
        z = cmath.rect(rng.uniform(0.05, 0.95), rng.uniform(-math.pi, math.pi))
        w = cmath.rect(rng.uniform(0.1, 3.0), rng.uniform(-math.pi, math.pi))
        plain = eval(germ, (z, w))
        scaled = eval(germ, to_scaled_point((z, w)))
        for exact, value in zip(plain, scaled):
            assert value.to_complex() == pytest.approx(exact, rel=1e-12)


def test_intermediate_outside_unit_disc(intermediate_germ):
    with pytest.raises(DomainViolation):
        eval(intermediate_germ, (1.0, 0.0))
    with pytest.raises(DomainViolation):
        eval(intermediate_germ, point_from_logs(0.1, 0.0))


@pytest.mark.parametrize("word, logs, expected", [
    ("S", (-1.0, -1.0), (-1.0, -2.0)),
    ("S", (-math.inf, -1.0), (-1.0, -math.inf)),
    ("SS", (-1.0, 0.0), (-1.0, -1.0)),
])
def test_eval_log_examples(word, logs, expected):
    z, w = eval_log(parse_word(word), point_from_logs(*logs))
    assert (z.log_mod, w.log_mod) == expected


def test_iterate_enoki_by_hand(enoki_germ):
    trajectory = iterate(enoki_germ, (1.0, 0.0), 2)
    assert len(trajectory) == 3
    assert trajectory[0] == (1.0, 0.0)
    for (z, w), (ez, ew) in zip(trajectory[1:], [(0.5, 1.0), (0.25, 1.0)]):
        assert z == pytest.approx(ez)
        assert w == pytest.approx(ew)


def test_iterate_zero_steps(golden_germ):
    assert iterate(golden_germ, (0.2, 0.3), 0) == [(0.2, 0.3)]
    with pytest.raises(ValueError):
        iterate(golden_germ, (0.2, 0.3), -1)


def test_iterate_ih_log_moduli_grow_like_fibonacci(golden_germ):
    trajectory = iterate(golden_germ, point_from_logs(-1.0, -1.0), 3)
    logs = [(z.log_mod, w.log_mod) for z, w in trajectory]
    assert logs == [(-1.0, -1.0), (-1.0, -2.0), (-2.0, -3.0), (-3.0, -5.0)]


def test_long_orbits_stay_representable(enoki_germ, intermediate_germ):
    z, _ = iterate(enoki_germ, point_from_logs(0.0, 0.0), 60)[-1]
    assert z.log_mod == pytest.approx(60 * math.log(0.5))
    z, w = iterate(intermediate_germ, point_from_logs(math.log(0.5), 0.0), 12)[-1]
    assert z.log_mod == pytest.approx(2 ** 12 * math.log(0.5))
    assert math.isfinite(w.log_mod)


@pytest.mark.parametrize("word", ["S", "ST"])
def test_ih_iterates_follow_matrix_powers(word):
    germ = parse_word(word)
    start = (-0.75, -1.25)
    trajectory = iterate(germ, point_from_logs(*start), 30)
    for n, (z, w) in enumerate(trajectory):
        power = germ.matrix.power(n)
        expected = (power.a * start[0] + power.b * start[1], power.c * start[0] + power.d * start[1])
        assert abs(z.log_mod - expected[0]) <= 1e-10
        assert abs(w.log_mod - expected[1]) <= 1e-10


def test_ih_iterates_follow_matrix_powers_from_any_point(golden_germ):
    rng = np.random.default_rng(21)
    for _ in range(20):
        start = (rng.uniform(-3.0, -0.1), rng.uniform(-3.0, -0.1))
        z, w = iterate(golden_germ, point_from_logs(*start), 30)[-1]
        power = golden_germ.matrix.power(30)
        assert z.log_mod == pytest.approx(power.a * start[0] + power.b * start[1], rel=1e-12)
        assert w.log_mod == pytest.approx(power.c * start[0] + power.d * start[1], rel=1e-12)


def test_plain_orbits_leave_the_double_range_without_error(golden_germ, enoki_germ):
    power = golden_germ.matrix.power(40)
    trajectory = iterate(golden_germ, (3 + 0j, 3 + 0j), 40)
    assert trajectory[0] == (3 + 0j, 3 + 0j)
    assert trajectory[2][1] == pytest.approx(27.0)
    z, w = trajectory[-1]
    assert isinstance(z, ScaledComplex) and isinstance(w, ScaledComplex)
    assert z.log_mod == pytest.approx((power.a + power.b) * math.log(3.0), rel=1e-12)
    assert w.log_mod == pytest.approx((power.c + power.d) * math.log(3.0), rel=1e-12)

    z, w = iterate(golden_germ, (0.5, 0.5), 40)[-1]
    assert isinstance(z, ScaledComplex) and not z.is_zero
    assert z.log_mod == pytest.approx((power.a + power.b) * math.log(0.5), rel=1e-12)

    trajectory = iterate(enoki_germ, (1.0, 0.5), 1100)
    assert isinstance(trajectory[100][0], complex)
    assert isinstance(trajectory[1100][0], ScaledComplex)
    assert trajectory[1100][0].log_mod == pytest.approx(1100 * math.log(0.5))


@pytest.mark.parametrize("raw", [
    {"family": "enoki", "alpha": [0.3, 0.4], "s": 2, "Q": [[1.0, 0.0], [0.0, -2.0]]},
    {"family": "intermediate", "p": 3, "s": 2, "lambda": [0.0, 2.0], "low": [[0.0, 0.0], [1.0, 0.0]]},
    {"family": "ih", "word": "STS"},
])
def test_to_spec_is_accepted_by_validate(raw):
    germ = validate(raw)
    assert validate(germ.to_spec()) == germ


def test_first_projection_commutes(enoki_germ, intermediate_germ):
    point = (0.3 - 0.2j, 0.7j)
    for germ in (enoki_germ, intermediate_germ):
        assert germ.first_projection()(point[0]) == pytest.approx(germ.eval(point)[0])


def test_dz_pullback_factor(enoki_germ):
    germ = IntermediateGerm(p=3, s=1, lam=1.0, low_coeffs=(1.0,))
    assert enoki_germ.dz_pullback_factor(0.4) == 0.5
    assert germ.dz_pullback_factor(0.5) == pytest.approx(0.75)
