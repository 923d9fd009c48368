"""Normal forms of contracting germs: Enoki, intermediate, Inoue-Hirzebruch.

    enoki         f(z, w) = (alpha z, w z^s + Q(z))
    intermediate  f(z, w) = (z^p, lambda w z^s + Q(z)),  Q = sum a_m z^m + a z^(ps/(p-1))
    ih            f(z, w) = (z^a w^b, z^c w^d)

Every germ evaluates on plain complex pairs and on ScaledComplex pairs; the
latter never under- or overflows, so long orbits are iterated there.
"""
import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Dict, List, Mapping, Tuple, Union

from src.dynamics.matrix_analysis import IntMatrix2, word_to_matrix
from src.dynamics.scaled import (
    ZERO,
    ScaledComplex,
    ScaledPoint,
    is_representable_point,
    is_scaled_point,
    to_complex_point,
    to_scaled_point,
)
from src.errors import DomainViolation, ValidationError, Violation

logger = logging.getLogger(__name__)

ComplexPoint = Tuple[complex, complex]
AnyPoint = Union[ComplexPoint, ScaledPoint]


@dataclass(frozen=True)
class Polynomial:
    """Q(z) = sum_m coeffs[m-1] z^m; no constant term, so Q(0) = 0."""

    coeffs: Tuple[complex, ...] = ()

    @property
    def length(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        nonzero = [m for m, c in enumerate(self.coeffs, start=1) if c != 0]
        return max(nonzero) if nonzero else 0

    def nonzero_terms(self) -> List[Tuple[int, complex]]:
        return [(m, c) for m, c in enumerate(self.coeffs, start=1) if c != 0]

    def __call__(self, z: complex) -> complex:
        total = 0j
        for m, c in self.nonzero_terms():
            total += c * z ** m
        return total

    def eval_scaled(self, z: ScaledComplex) -> ScaledComplex:
        total = ZERO
        for m, c in self.nonzero_terms():
            total = total + ScaledComplex.from_complex(c) * z ** m
        return total

    def divided_by_z(self, z: complex) -> complex:
        """Q(z)/z, holomorphic on the closed disc."""
        total = 0j
        for m, c in self.nonzero_terms():
            total += c * z ** (m - 1)
        return total

    def to_spec(self):
        return [[c.real, c.imag] for c in self.coeffs]


@dataclass(frozen=True)
class EnokiGerm:
    alpha: complex
    s: int
    Q: Polynomial
    family = "enoki"

    def eval(self, point: ComplexPoint) -> ComplexPoint:
        z, w = point
        return self.alpha * z, w * z ** self.s + self.Q(z)

    def eval_scaled(self, point: ScaledPoint) -> ScaledPoint:
        z, w = point
        return ScaledComplex.from_complex(self.alpha) * z, w * z ** self.s + self.Q.eval_scaled(z)

    def first_projection(self) -> Callable[[complex], complex]:
        return lambda z: self.alpha * z

    def dz_pullback_factor(self, z: complex) -> complex:
        """f*(dz) = alpha dz."""
        return self.alpha

    def to_spec(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "alpha": [self.alpha.real, self.alpha.imag],
            "s": self.s,
            "Q": self.Q.to_spec(),
        }


@dataclass(frozen=True)
class IntermediateGerm:
    p: int
    s: int
    lam: complex
    low_coeffs: Tuple[complex, ...]
    a: complex = 0j
    family = "intermediate"

    @property
    def top_exponent(self) -> int:
        """ps/(p-1) when it is an integer, else 0 (then a must vanish)."""
        num, den = self.p * self.s, self.p - 1
        return num // den if num % den == 0 else 0

    @property
    def Q(self) -> Polynomial:
        coeffs = list(self.low_coeffs)
        if self.a != 0:
            top = self.top_exponent
            coeffs.extend([0j] * (top - len(coeffs)))
            coeffs[top - 1] += self.a
        return Polynomial(tuple(coeffs))

    def _check_domain(self, modulus_below_one: bool):
        if not modulus_below_one:
            raise DomainViolation("intermediate germs are defined on the unit disc times C: need |z| < 1")

    def eval(self, point: ComplexPoint) -> ComplexPoint:
        z, w = point
        self._check_domain(abs(z) < 1.0)
        return z ** self.p, self.lam * w * z ** self.s + self.Q(z)

    def eval_scaled(self, point: ScaledPoint) -> ScaledPoint:
        z, w = point
        self._check_domain(z.log_mod < 0.0)
        lam = ScaledComplex.from_complex(self.lam)
        return z ** self.p, lam * w * z ** self.s + self.Q.eval_scaled(z)

    def first_projection(self) -> Callable[[complex], complex]:
        return lambda z: z ** self.p

    def dz_pullback_factor(self, z: complex) -> complex:
        """f*(dz) = p z^(p-1) dz."""
        return self.p * z ** (self.p - 1)

    def to_spec(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "p": self.p,
            "s": self.s,
            "lambda": [self.lam.real, self.lam.imag],
            "low": [[c.real, c.imag] for c in self.low_coeffs],
            "a": [self.a.real, self.a.imag],
        }


@dataclass(frozen=True)
class IHWord:
    letters: str

    def __str__(self):
        return self.letters


@dataclass(frozen=True)
class IHGerm:
    word: IHWord
    matrix: IntMatrix2
    family = "ih"

    def eval(self, point: ComplexPoint) -> ComplexPoint:
        z, w = point
        m = self.matrix
        return z ** m.a * w ** m.b, z ** m.c * w ** m.d

    def eval_scaled(self, point: ScaledPoint) -> ScaledPoint:
        z, w = point
        m = self.matrix
        return z ** m.a * w ** m.b, z ** m.c * w ** m.d

    def to_spec(self) -> Dict[str, Any]:
        return {"family": self.family, "word": self.word.letters}


Germ = Union[EnokiGerm, IntermediateGerm, IHGerm]


# ----------------------------------------------------------------- validation

def _complex_field(raw: Mapping, key: str, violations: List[Violation], default=None) -> complex:
    value = raw.get(key, default)
    if value is None:
        violations.append(Violation("InvalidParameter", f"missing field {key!r}"))
        return 0j
    try:
        if isinstance(value, (list, tuple)):
            number = complex(float(value[0]), float(value[1]))
        else:
            number = complex(value)
    except (TypeError, ValueError, IndexError):
        violations.append(Violation("InvalidParameter", f"field {key!r} is not a number or [re, im] pair"))
        return 0j
    if not (math.isfinite(number.real) and math.isfinite(number.imag)):
        violations.append(Violation("InvalidParameter", f"field {key!r} is not finite"))
        return 0j
    return number


def _complex_list(raw: Mapping, key: str, violations: List[Violation]) -> Tuple[complex, ...]:
    values = raw.get(key, [])
    if not isinstance(values, (list, tuple)):
        violations.append(Violation("InvalidParameter", f"field {key!r} must be a list"))
        return ()
    return tuple(_complex_field({key: value}, key, violations) for value in values)


def _int_field(raw: Mapping, key: str, minimum: int, violations: List[Violation]) -> int:
    value = raw.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            violations.append(Violation("InvalidParameter", f"field {key!r} must be an integer"))
            return minimum
    if value < minimum:
        violations.append(Violation("InvalidParameter", f"field {key!r} must be >= {minimum}, got {value}"))
        return minimum
    return value


def _validate_enoki(raw: Mapping, violations: List[Violation]) -> EnokiGerm:
    alpha = _complex_field(raw, "alpha", violations)
    s = _int_field(raw, "s", 1, violations)
    Q = Polynomial(_complex_list(raw, "Q", violations))
    if not 0.0 < abs(alpha) < 1.0:
        violations.append(Violation("AlphaOutOfDisc", f"|alpha| = {abs(alpha)!r} is not in (0, 1)"))
    if Q.degree > s:
        violations.append(Violation("DegreeTooHigh", f"deg Q = {Q.degree} exceeds s = {s}"))
    return EnokiGerm(alpha=alpha, s=s, Q=Q)


def _validate_intermediate(raw: Mapping, violations: List[Violation]) -> IntermediateGerm:
    p = _int_field(raw, "p", 2, violations)
    s = _int_field(raw, "s", 1, violations)
    lam = _complex_field(raw, "lambda", violations)
    low = _complex_list(raw, "low", violations)
    a = _complex_field(raw, "a", violations, default=[0.0, 0.0])
    if lam == 0:
        violations.append(Violation("InvalidParameter", "lambda must be nonzero"))

    low_poly = Polynomial(low)
    if low_poly.degree > s:
        violations.append(Violation("DegreeTooHigh", f"low part has degree {low_poly.degree} > s = {s}"))
    support = [m for m, _ in low_poly.nonzero_terms()]
    g = reduce(math.gcd, support, p)
    if g != 1:
        violations.append(Violation("GcdCondition", f"gcd{{p, m | a_m != 0}} = {g}"))
    if a != 0:
        divides = s % (p - 1) == 0
        if not divides:
            violations.append(Violation("ForbiddenA", f"a != 0 but (p - 1) = {p - 1} does not divide s = {s}"))
            violations.append(Violation("NonIntegerExponent", f"ps/(p-1) = {p * s}/{p - 1} is not an integer"))
        if lam != 1:
            violations.append(Violation("ForbiddenA", f"a != 0 requires lambda = 1, got {lam!r}"))
    return IntermediateGerm(p=p, s=s, lam=lam, low_coeffs=low, a=a)


def _validate_ih(raw: Mapping, violations: List[Violation]) -> IHGerm:
    letters = raw.get("word")
    if not isinstance(letters, str) or not letters:
        violations.append(Violation("InvalidParameter", "field 'word' must be a nonempty string over {S, T}"))
        return None
    letters = letters.strip().upper()
    bad = sorted(set(letters) - {"S", "T"})
    if bad:
        violations.append(Violation("InvalidParameter", f"word contains letters {bad} outside {{S, T}}"))
        return None
    if "S" not in letters:
        violations.append(Violation("NoSFactor", f"word {letters!r} has no factor S = [[0,1],[1,1]]"))
        return None
    matrix = word_to_matrix(letters)
    if abs(matrix.det) != 1:
        violations.append(Violation("InvalidParameter", f"det = {matrix.det} is not +-1"))
    if min(matrix.a, matrix.b, matrix.c, matrix.d) < 0:
        violations.append(Violation("InvalidParameter", "matrix has negative entries"))
    return IHGerm(word=IHWord(letters), matrix=matrix)


_VALIDATORS = {
    "enoki": _validate_enoki,
    "intermediate": _validate_intermediate,
    "ih": _validate_ih,
}


def validate(raw_params: Mapping[str, Any]) -> Germ:
    """Build a germ from a JSON-style record, reporting every violated condition."""
    if not isinstance(raw_params, Mapping):
        raise ValidationError([Violation("InvalidParameter", "germ spec must be a JSON object")])
    family = raw_params.get("family")
    validator = _VALIDATORS.get(family)
    if validator is None:
        raise ValidationError([Violation("InvalidParameter", f"unknown family {family!r}")])
    violations: List[Violation] = []
    germ = validator(raw_params, violations)
    if violations:
        logger.info("germ spec rejected: %s", [v.code for v in violations])
        raise ValidationError(violations)
    return germ


# ----------------------------------------------------------------- dynamics

def eval(germ: Germ, point: AnyPoint) -> AnyPoint:  # noqa: A001 - mirrors the operation name
    if is_scaled_point(point):
        return germ.eval_scaled(point)
    return germ.eval(point)


def eval_log(germ: IHGerm, point: ScaledPoint) -> ScaledPoint:
    """Monomial map on log-polar coordinates: log-moduli transform by A."""
    return germ.eval_scaled(to_scaled_point(point))


def iterate(germ: Germ, point: AnyPoint, n: int) -> List[AnyPoint]:
    """Trajectory [x, f(x), ..., f^n(x)], computed in log-polar arithmetic.

    A ScaledComplex input gets a ScaledComplex trajectory. A plain input
    gets plain pairs wherever both coordinates fit a normal double; points
    outside that range stay ScaledComplex pairs rather than rounding to 0 or
    overflowing.
    """
    if n < 0:
        raise ValueError(f"iteration count must be nonnegative, got {n}")
    scaled_input = is_scaled_point(point)
    current = to_scaled_point(point)
    trajectory = [current]
    for _ in range(n):
        current = germ.eval_scaled(current)
        trajectory.append(current)
    if scaled_input:
        return trajectory
    return [tuple(point)] + [to_complex_point(p) if is_representable_point(p) else p for p in trajectory[1:]]


def point_from_logs(log_z: float, log_w: float, arg_z: float = 0.0, arg_w: float = 0.0) -> ScaledPoint:
    return ScaledComplex(log_z, arg_z), ScaledComplex(log_w, arg_w)


def parse_word(letters: str) -> IHGerm:
    return validate({"family": "ih", "word": letters})


__all__ = [
    "EnokiGerm",
    "Germ",
    "IHGerm",
    "IHWord",
    "IntermediateGerm",
    "Polynomial",
    "eval",
    "eval_log",
    "iterate",
    "parse_word",
    "point_from_logs",
    "validate",
]
