"""Extended-range complex numbers stored as (log-modulus, argument).

Orbits of contracting germs leave the double range quickly: moduli decay
like |alpha|^(n(n-1)/2) or r^(p^n). Storing log|x| directly keeps every
iterate representable; only conversion back to a plain complex can fail.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Tuple, Union

# exp(-745) is the last double above zero.
UNDERFLOW_GAP = 745.0
# log-moduli whose exp is a normal, finite double
LOG_NORMAL_MIN = math.log(2.2250738585072014e-308)
LOG_FINITE_MAX = math.log(1.7976931348623157e308)
TWO_PI = 2.0 * math.pi

Number = Union[int, float, complex]


def wrap_arg(arg: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    wrapped = math.remainder(arg, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


@dataclass(frozen=True)
class ScaledComplex:
    log_mod: float
    arg: float = 0.0

    def __post_init__(self):
        if math.isnan(self.log_mod) or math.isnan(self.arg):
            raise ValueError("ScaledComplex components must not be NaN")
        if self.log_mod == math.inf:
            raise OverflowError("ScaledComplex modulus is infinite")
        if self.log_mod == -math.inf:
            object.__setattr__(self, "arg", 0.0)
        else:
            object.__setattr__(self, "arg", wrap_arg(float(self.arg)))
        object.__setattr__(self, "log_mod", float(self.log_mod))

    @classmethod
    def from_complex(cls, value: Number) -> "ScaledComplex":
        value = complex(value)
        if value == 0:
            return ZERO
        return cls(math.log(abs(value)), cmath.phase(value))

    @classmethod
    def coerce(cls, value) -> "ScaledComplex":
        if isinstance(value, ScaledComplex):
            return value
        return cls.from_complex(value)

    @property
    def is_zero(self) -> bool:
        return self.log_mod == -math.inf

    def modulus(self) -> float:
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.log_mod)
        except OverflowError:
            return math.inf

    @property
    def is_representable(self) -> bool:
        """True when to_complex loses neither range nor precision."""
        return self.is_zero or LOG_NORMAL_MIN <= self.log_mod < LOG_FINITE_MAX

    def to_complex(self) -> complex:
        """Convert back to a plain complex; raises OverflowError past the double range."""
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_mod), self.arg)

    def __mul__(self, other) -> "ScaledComplex":
        other = ScaledComplex.coerce(other)
        if self.is_zero or other.is_zero:
            return ZERO
        return ScaledComplex(self.log_mod + other.log_mod, self.arg + other.arg)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ScaledComplex":
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are exact in log-polar form")
        if exponent == 0:
            return ONE
        if self.is_zero:
            if exponent < 0:
                raise ZeroDivisionError("zero raised to a negative power")
            return ZERO
        return ScaledComplex(self.log_mod * exponent, self.arg * exponent)

    def __neg__(self) -> "ScaledComplex":
        if self.is_zero:
            return ZERO
        return ScaledComplex(self.log_mod, self.arg + math.pi)

    def __add__(self, other) -> "ScaledComplex":
        other = ScaledComplex.coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        big, small = (self, other) if self.log_mod >= other.log_mod else (other, self)
        gap = small.log_mod - big.log_mod
        if gap < -UNDERFLOW_GAP:
            return big
        # rescale both summands to the larger modulus before adding
        total = cmath.rect(1.0, big.arg) + cmath.rect(math.exp(gap), small.arg)
        if total == 0:
            return ZERO
        return ScaledComplex(big.log_mod + math.log(abs(total)), big.arg + cmath.phase(total))

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-ScaledComplex.coerce(other))

    def __repr__(self):
        return f"ScaledComplex(log_mod={self.log_mod!r}, arg={self.arg!r})"


ZERO = ScaledComplex(-math.inf, 0.0)
ONE = ScaledComplex(0.0, 0.0)

ScaledPoint = Tuple[ScaledComplex, ScaledComplex]


def to_scaled_point(point) -> ScaledPoint:
    z, w = point
    return ScaledComplex.coerce(z), ScaledComplex.coerce(w)


def to_complex_point(point: ScaledPoint) -> Tuple[complex, complex]:
    return point[0].to_complex(), point[1].to_complex()


def is_representable_point(point: ScaledPoint) -> bool:
    return point[0].is_representable and point[1].is_representable


def is_scaled_point(point) -> bool:
    return isinstance(point[0], ScaledComplex) and isinstance(point[1], ScaledComplex)
