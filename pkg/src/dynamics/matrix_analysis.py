"""Integer and spectral analysis of Inoue-Hirzebruch matrices.

A word over {S, T} multiplies out (left to right) to a nonnegative integer
matrix A with det A = +-1. The transpose A^t has two real irrational
eigenvalues lambda1 > 1 > |lambda2|, and the eigenvectors give the
potentials phi_i = alpha_i log|z| + beta_i log|w| with phi_i o f = lambda_i phi_i.
"""
import enum
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from src.errors import DegenerateSpectrum, MatrixOverflow, ZeroCoordinate
from src.verification.reports import VerificationReport, report_timer

logger = logging.getLogger(__name__)

INT63_MAX = 2 ** 63 - 1

LETTER_MATRICES = {
    "S": (0, 1, 1, 1),
    "T": (1, 1, 0, 1),
}


@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def as_array(self) -> np.ndarray:
        return np.array(self.rows(), dtype=float)

    def to_list(self):
        return [[self.a, self.b], [self.c, self.d]]

    def power(self, n: int) -> "IntMatrix2":
        result = IntMatrix2(1, 0, 0, 1)
        for _ in range(n):
            result = result @ self
        return result


IDENTITY = IntMatrix2(1, 0, 0, 1)


def _letters(word) -> str:
    return word.letters if hasattr(word, "letters") else str(word)


def word_to_matrix(word) -> IntMatrix2:
    """Exact product M(letter_1) M(letter_2) ... of the word's letter matrices."""
    letters = _letters(word)
    result = IDENTITY
    for letter in letters:
        result = result @ IntMatrix2(*LETTER_MATRICES[letter])
        if max(result.a, result.b, result.c, result.d) > INT63_MAX:
            raise MatrixOverflow(f"matrix entries of word {letters!r} exceed the 63-bit range")
    return result


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    root = math.isqrt(n)
    return root * root == n


@dataclass(frozen=True)
class EigenData:
    lambda1: float
    lambda2: float
    v1: Tuple[float, float]
    v2: Tuple[float, float]
    det: int
    disc: int

    @property
    def alpha(self) -> float:
        return self.v1[0]

    @property
    def beta(self) -> float:
        return self.v1[1]

    @property
    def alpha2(self) -> float:
        return self.v2[0]

    @property
    def beta2(self) -> float:
        return self.v2[1]

    @property
    def gap(self) -> float:
        """Delta = alpha2 beta1 - alpha1 beta2, positive by the sign convention."""
        return self.alpha2 * self.beta - self.alpha * self.beta2

    def eigenvalue(self, index: int) -> float:
        return self.lambda1 if index == 1 else self.lambda2

    def vector(self, index: int) -> Tuple[float, float]:
        return self.v1 if index == 1 else self.v2

    def perturbed(self, d_beta: float = 0.0, d_beta2: float = 0.0) -> "EigenData":
        """Copy with shifted eigenvector components, for falsification runs."""
        return EigenData(
            lambda1=self.lambda1,
            lambda2=self.lambda2,
            v1=(self.v1[0], self.v1[1] + d_beta),
            v2=(self.v2[0], self.v2[1] + d_beta2),
            det=self.det,
            disc=self.disc,
        )

    def to_dict(self):
        return {
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "v1": [self.v1[0], self.v1[1]],
            "v2": [self.v2[0], self.v2[1]],
            "det": self.det,
            "disc": self.disc,
        }


def eigen_data(matrix: IntMatrix2) -> EigenData:
    """Eigenvalues and alpha = alpha2 = 1 normalized eigenvectors of A^t."""
    tr, det = matrix.trace, matrix.det
    disc = tr * tr - 4 * det
    if disc <= 0 or is_perfect_square(disc):
        raise DegenerateSpectrum(f"trace {tr}, det {det}: discriminant {disc} gives no irrational real pair")
    root = math.sqrt(disc)
    lambda1 = (tr + root) / 2.0
    # lambda1 * lambda2 = det; avoids cancellation in (tr - root) / 2
    lambda2 = det / lambda1
    if lambda1 <= 1.0:
        raise DegenerateSpectrum(f"leading eigenvalue {lambda1} is not expanding")

    # A^t = [[a, c], [b, d]]; (A^t - lam) v = 0 with v = (1, beta):
    # a + c beta = lam  =>  beta = (lam - a) / c
    # b + d beta = lam beta => beta = b / (lam - d)
    def beta_for(lam: float) -> float:
        if matrix.c != 0:
            return (lam - matrix.a) / matrix.c
        return matrix.b / (lam - matrix.d)

    v1 = (1.0, beta_for(lambda1))
    v2 = (1.0, beta_for(lambda2))
    if not (v1[1] > 0 and v2[1] < 0):
        raise DegenerateSpectrum(f"eigenvector signs {v1}, {v2} violate the Inoue-Hirzebruch convention")
    return EigenData(lambda1=lambda1, lambda2=lambda2, v1=v1, v2=v2, det=det, disc=disc)


def eigen_residual(matrix: IntMatrix2, ed: EigenData) -> float:
    """Max-norm residual of A^t v_i - lambda_i v_i over both eigenpairs."""
    at = matrix.as_array().T
    residuals = []
    for index in (1, 2):
        v = np.array(ed.vector(index))
        residuals.append(np.max(np.abs(at @ v - ed.eigenvalue(index) * v)))
    return float(max(residuals))


class TraceClass(str, enum.Enum):
    STRICTLY_EXPANDING = "StrictlyExpanding"
    LISTED_EXCEPTION = "ListedException"
    CYCLIC_EXCEPTION = "CyclicException"


LISTED_EXCEPTIONS = (IntMatrix2(0, 1, 1, 1), IntMatrix2(0, 1, 1, 2))
LISTED_WORDS = ("S", "ST")


def is_cyclic_rotation(word_a, word_b) -> bool:
    a, b = _letters(word_a), _letters(word_b)
    return len(a) == len(b) and a in (b + b)


def trace_dichotomy(word) -> TraceClass:
    matrix = word_to_matrix(word)
    if matrix.trace > 2:
        return TraceClass.STRICTLY_EXPANDING
    if matrix in LISTED_EXCEPTIONS:
        return TraceClass.LISTED_EXCEPTION
    if any(is_cyclic_rotation(word, listed) for listed in LISTED_WORDS):
        return TraceClass.CYCLIC_EXCEPTION
    # every S/T word with an S and trace <= 2 is a rotation of "S" or "ST"
    logger.warning("word %r has trace %d outside the known exception list", _letters(word), matrix.trace)
    return TraceClass.CYCLIC_EXCEPTION


def phi(ed: EigenData, index: int, point) -> float:
    """phi_i = alpha_i log|z| + beta_i log|w|.

    Plain complex coordinates must be nonzero; log-polar coordinates are used
    as given, so a zero coordinate yields -inf for index 1.
    """
    alpha_i, beta_i = ed.vector(index)
    z, w = point
    if hasattr(z, "log_mod"):
        lz, lw = z.log_mod, w.log_mod
    else:
        if z == 0 or w == 0:
            raise ZeroCoordinate("phi needs nonzero coordinates; use the log-polar path for axis points")
        lz, lw = math.log(abs(z)), math.log(abs(w))
    return phi_from_logs(alpha_i, beta_i, lz, lw)


def phi_from_logs(alpha_i: float, beta_i: float, lz: float, lw: float) -> float:
    terms = []
    for coef, value in ((alpha_i, lz), (beta_i, lw)):
        if value == -math.inf:
            terms.append(-math.inf if coef > 0 else math.inf)
        else:
            terms.append(coef * value)
    return sum(terms)


def leaf_coordinates(ed: EigenData, zeta: complex, omega: complex) -> Tuple[complex, complex]:
    """(xi, tau) = (alpha zeta + beta omega, alpha2 zeta + beta2 omega); A acts as (lambda1 xi, lambda2 tau)."""
    return ed.alpha * zeta + ed.beta * omega, ed.alpha2 * zeta + ed.beta2 * omega


def from_leaf_coordinates(ed: EigenData, xi: complex, tau: complex) -> Tuple[complex, complex]:
    det = ed.alpha * ed.beta2 - ed.beta * ed.alpha2
    zeta = (ed.beta2 * xi - ed.beta * tau) / det
    omega = (ed.alpha * tau - ed.alpha2 * xi) / det
    return zeta, omega


def logs_from_phis(ed: EigenData, phi1: np.ndarray, phi2: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Invert (phi1, phi2) to (log|z|, log|w|)."""
    gap = ed.gap
    log_z = (phi2 * ed.beta - phi1 * ed.beta2) / gap
    log_w = (ed.alpha2 * phi1 - ed.alpha * phi2) / gap
    return log_z, log_w


@dataclass(frozen=True)
class BoxBounds:
    """Log-modulus bounds on f^n(D(c1, delta, c2))."""

    n: int
    log_z_min: float
    log_z_max: float
    log_w_min: float
    log_w_max: float
    log_r_sq: float


def box_bounds(ed: EigenData, c1: float, delta: float, c2: float, n: int) -> BoxBounds:
    grow = ed.lambda1 ** n
    shrink = abs(ed.lambda2) ** n
    k1, k2 = grow * c1, shrink * c2
    gap = ed.gap
    log_z_min = (k1 * delta * ed.beta2 - k2 * ed.beta) / gap
    log_z_max = (k1 * ed.beta2 + k2 * ed.beta) / gap
    log_w_min = (-k1 * delta * ed.alpha2 - k2 * ed.alpha) / gap
    log_w_max = (-k1 * ed.alpha2 + k2 * ed.alpha) / gap
    log_r_sq = float(np.logaddexp(2.0 * log_z_max, 2.0 * log_w_max))
    return BoxBounds(n, log_z_min, log_z_max, log_w_min, log_w_max, log_r_sq)


def verify_phi_equivariance(germ, ed: EigenData, samples: Sequence, seed=None):
    """Max over samples and i of |phi_i(f(x)) - lambda_i phi_i(x)|."""
    with report_timer() as clock:
        worst = 0.0
        for point in samples:
            image = germ.eval_scaled(point)
            for index in (1, 2):
                lhs = phi(ed, index, image)
                rhs = ed.eigenvalue(index) * phi(ed, index, point)
                worst = max(worst, abs(lhs - rhs))
    return VerificationReport(
        check="phi_equivariance",
        germ=germ.to_spec(),
        n_samples=len(samples),
        seed=seed,
        value=worst,
        value_kind="max_residual",
        tolerance=1e-10,
        passed=worst <= 1e-10,
        runtime=clock.elapsed,
    )


def random_words(rng: np.random.Generator, count: int, max_length: int) -> Iterable[str]:
    """Random valid words (at least one S) of length 1..max_length."""
    produced = 0
    while produced < count:
        length = int(rng.integers(1, max_length + 1))
        letters = "".join(rng.choice(["S", "T"], size=length))
        if "S" in letters:
            produced += 1
            yield letters
