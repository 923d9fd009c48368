import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.dynamics.germs import parse_word, point_from_logs
from src.dynamics.matrix_analysis import (
    IntMatrix2,
    TraceClass,
    box_bounds,
    eigen_data,
    eigen_residual,
    from_leaf_coordinates,
    is_cyclic_rotation,
    is_perfect_square,
    leaf_coordinates,
    logs_from_phis,
    phi,
    random_words,
    trace_dichotomy,
    verify_phi_equivariance,
    word_to_matrix,
)
from src.errors import DegenerateSpectrum, MatrixOverflow, ZeroCoordinate
from src.verification import sampling

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

words = st.text(alphabet="ST", min_size=1, max_size=12).filter(lambda w: "S" in w)


@pytest.mark.parametrize("word, rows", [
    ("S", [[0, 1], [1, 1]]),
    ("SS", [[1, 1], [1, 2]]),
    ("TS", [[1, 2], [1, 1]]),
    ("SST", [[1, 2], [1, 3]]),
])
def test_word_to_matrix(word, rows):
    assert word_to_matrix(word).to_list() == rows


def test_matrix_power():
    m = word_to_matrix("S")
    assert m.power(0) == IntMatrix2(1, 0, 0, 1)
    assert m.power(5) == word_to_matrix("SSSSS")


def test_long_words_overflow():
    with pytest.raises(MatrixOverflow):
        word_to_matrix("S" * 95)


@pytest.mark.parametrize("word, lambda1, det", [
    ("S", GOLDEN, -1),
    ("SS", (3.0 + math.sqrt(5.0)) / 2.0, 1),
    ("TS", 1.0 + math.sqrt(2.0), -1),
])
def test_eigen_data_examples(word, lambda1, det):
    ed = eigen_data(word_to_matrix(word))
    assert ed.lambda1 == pytest.approx(lambda1, rel=1e-12)
    assert ed.det == det
    assert ed.alpha == ed.alpha2 == 1.0
    assert ed.gap > 0


def test_golden_eigenvectors():
    ed = eigen_data(word_to_matrix("S"))
    assert ed.beta == pytest.approx(GOLDEN, rel=1e-12)
    assert ed.lambda2 == pytest.approx(1.0 - GOLDEN, rel=1e-12)
    assert ed.beta2 == pytest.approx(1.0 - GOLDEN, rel=1e-12)


def test_degenerate_spectrum():
    with pytest.raises(DegenerateSpectrum):
        eigen_data(IntMatrix2(1, 1, 0, 1))
    with pytest.raises(DegenerateSpectrum):
        eigen_data(IntMatrix2(2, 0, 0, 2))


@pytest.mark.parametrize("word, expected", [
    ("S", TraceClass.LISTED_EXCEPTION),
    ("ST", TraceClass.LISTED_EXCEPTION),
    ("SS", TraceClass.STRICTLY_EXPANDING),
    ("TS", TraceClass.CYCLIC_EXCEPTION),
    ("SST", TraceClass.STRICTLY_EXPANDING),
])
def test_trace_dichotomy(word, expected):
    assert trace_dichotomy(word) is expected


def test_cyclic_rotation():
    assert is_cyclic_rotation("STT", "TST")
    assert not is_cyclic_rotation("STT", "SST")
    assert not is_cyclic_rotation("ST", "STS")


@pytest.mark.parametrize("index, point, expected", [
    (1, (math.exp(-1), math.exp(-1)), -(1.0 + GOLDEN)),
    (2, (math.exp(-1), math.exp(-1)), -1.0 + (GOLDEN - 1.0)),
    (1, (1.0, 1.0), 0.0),
])
def test_phi_examples(index, point, expected):
    ed = eigen_data(word_to_matrix("S"))
    assert phi(ed, index, point) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_phi_on_axes():
    ed = eigen_data(word_to_matrix("S"))
    with pytest.raises(ZeroCoordinate):
        phi(ed, 1, (0.0, 0.5))
    assert phi(ed, 1, point_from_logs(-math.inf, -1.0)) == -math.inf
    assert phi(ed, 2, point_from_logs(-1.0, -math.inf)) == math.inf


@pytest.mark.parametrize("word", ["S", "SST"])
def test_phi_equivariance(word):
    germ = parse_word(word)
    ed = eigen_data(germ.matrix)
    samples = sampling.sample_family(sampling.make_rng(7), "ih", 1000, eigen=ed)
    report = verify_phi_equivariance(germ, ed, samples)
    assert report.passed
    assert report.value <= 1e-11


def test_perturbed_eigenvector_breaks_equivariance():
    germ = parse_word("S")
    ed = eigen_data(germ.matrix)
    samples = sampling.sample_family(sampling.make_rng(7), "ih", 1000, eigen=ed)
    report = verify_phi_equivariance(germ, ed.perturbed(d_beta=0.01), samples)
    assert not report.passed
    assert report.value > 1e-3


def test_leaf_coordinates_diagonalize_the_monomial_map():
    germ = parse_word("SST")
    ed = eigen_data(germ.matrix)
    m = germ.matrix
    zeta, omega = complex(-0.7, 0.3), complex(0.2, -1.1)
    xi, tau = leaf_coordinates(ed, zeta, omega)
    image = leaf_coordinates(ed, m.a * zeta + m.b * omega, m.c * zeta + m.d * omega)
    assert image[0] == pytest.approx(ed.lambda1 * xi)
    assert image[1] == pytest.approx(ed.lambda2 * tau)
    back = from_leaf_coordinates(ed, xi, tau)
    assert back[0] == pytest.approx(zeta)
    assert back[1] == pytest.approx(omega)


def test_logs_from_phis_inverts_phi():
    ed = eigen_data(word_to_matrix("STT"))
    log_z, log_w = logs_from_phis(ed, np.array([-2.0]), np.array([0.5]))
    point = point_from_logs(float(log_z[0]), float(log_w[0]))
    assert phi(ed, 1, point) == pytest.approx(-2.0)
    assert phi(ed, 2, point) == pytest.approx(0.5)


def test_box_bounds_grow_with_n():
    ed = eigen_data(word_to_matrix("S"))
    b0, b3 = box_bounds(ed, 1.0, math.e, 1.0, 0), box_bounds(ed, 1.0, math.e, 1.0, 3)
    assert b0.log_z_min < b0.log_z_max
    assert b0.log_w_min < b0.log_w_max
    assert b3.log_r_sq < b0.log_r_sq


def test_random_words_contain_s():
    produced = list(random_words(np.random.default_rng(1), 50, 6))
    assert len(produced) == 50
    assert all("S" in w and len(w) <= 6 for w in produced)


@given(words)
def test_eigen_structure(word):
    m = word_to_matrix(word)
    assert abs(m.det) == 1
    disc = m.trace ** 2 - 4 * m.det
    assert disc > 0 and not is_perfect_square(disc)
    ed = eigen_data(m)
    assert ed.lambda1 > 1.0 + 1e-9
    assert ed.alpha * ed.beta > 0
    assert ed.alpha2 * ed.beta2 < 0
    assert eigen_residual(m, ed) <= 1e-12
