"""
Complex scalars with two numeric backends.

``"exact"`` values are :class:`GaussianRational` instances (a pair of
:class:`fractions.Fraction`); ``"float"`` values are plain Python ``complex``.
Exact arithmetic never rounds, and an exact value refuses to combine with a
float one: mixing backends raises :class:`BackendError` instead of coercing.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "EXACT",
    "FLOAT",
    "BACKENDS",
    "BackendError",
    "GaussianRational",
    "Scalar",
    "backend_of",
    "as_scalar",
    "zero",
    "one",
    "is_zero",
    "abs2",
    "conj",
    "to_complex",
    "scalar_to_json",
    "scalar_from_json",
    "real_to_json",
    "real_from_json",
    "format_fraction",
]

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)


class BackendError(TypeError):
    """Raised when exact and float values meet in one computation."""


def _exact_operand(value) -> "GaussianRational":
    if isinstance(value, GaussianRational):
        return value
    # bool is an int subclass; both are rationals and therefore fine
    if isinstance(value, Rational):
        return GaussianRational(Fraction(value))
    if isinstance(value, (float, complex)):
        raise BackendError(
            f"cannot mix exact scalar with {type(value).__name__} value {value!r}"
        )
    return NotImplemented


class GaussianRational:
    """Complex number ``re + i*im`` with rational parts.

    Instances are immutable and hashable. Integers and fractions are accepted
    as operands; floats and complex numbers raise :class:`BackendError`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, (float, complex)) or isinstance(im, (float, complex)):
            raise BackendError("GaussianRational parts must be rational, not float")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = _exact_operand(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _exact_operand(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _exact_operand(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _exact_operand(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if b == 0 and d == 0:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _exact_operand(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational._raw((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = _exact_operand(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


Scalar = Union[GaussianRational, complex]

_ZERO_EXACT = GaussianRational(0)
_ONE_EXACT = GaussianRational(1)


def backend_of(z) -> str:
    if isinstance(z, GaussianRational):
        return EXACT
    if isinstance(z, (float, complex)):
        return FLOAT
    if isinstance(z, Rational):
        # bare ints/fractions are backend-neutral; callers decide
        raise BackendError(f"backend of bare rational {z!r} is ambiguous")
    raise TypeError(f"not a scalar: {z!r}")


def as_scalar(value, backend: str) -> Scalar:
    """Coerce ``value`` into a scalar of ``backend``.

    Rationals (int, Fraction, GaussianRational) are accepted by both
    backends. Floats and complex numbers are accepted only by ``"float"``.
    """
    if backend == EXACT:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, Rational):
            return GaussianRational(Fraction(value))
        raise BackendError(f"exact backend cannot hold {type(value).__name__} {value!r}")
    if backend == FLOAT:
        if isinstance(value, GaussianRational):
            return complex(value)
        return complex(value)
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def zero(backend: str) -> Scalar:
    if backend == EXACT:
        return _ZERO_EXACT
    if backend == FLOAT:
        return 0j
    raise ValueError(f"unknown backend {backend!r}")


def one(backend: str) -> Scalar:
    if backend == EXACT:
        return _ONE_EXACT
    if backend == FLOAT:
        return 1 + 0j
    raise ValueError(f"unknown backend {backend!r}")


def is_zero(z: Scalar) -> bool:
    return not z


def abs2(z: Scalar):
    """|z|^2: a Fraction for exact scalars, a float otherwise."""
    if isinstance(z, GaussianRational):
        return z.abs2()
    return z.real * z.real + z.imag * z.imag


def conj(z: Scalar) -> Scalar:
    return z.conjugate()


def to_complex(z) -> complex:
    return complex(z)


# --- serialization -------------------------------------------------------


def format_fraction(q: Fraction) -> str:
    """Always ``"num/den"``, including integers (``"2/1"``)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"exact component must be a 'num/den' string or int, got {text!r}")


def scalar_to_json(z: Scalar):
    if isinstance(z, GaussianRational):
        return [format_fraction(z.re), format_fraction(z.im)]
    z = complex(z)
    return [z.real, z.imag]


def scalar_from_json(obj, backend: str) -> Scalar:
    """Parse ``[re, im]`` or a single real (number or ``"p/q"``)."""
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"complex scalar must be [re, im], got {obj!r}")
        re, im = obj
    else:
        re, im = obj, 0
    if backend == EXACT:
        return GaussianRational._raw(_parse_rational(re), _parse_rational(im))
    if backend == FLOAT:
        return complex(_as_float(re), _as_float(im))
    raise ValueError(f"unknown backend {backend!r}")


def _as_float(x) -> float:
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    if isinstance(x, bool):
        raise ValueError("booleans are not scalars")
    return float(x)


def real_to_json(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    return float(value)


def real_from_json(obj, backend: str):
    if backend == EXACT:
        return _parse_rational(obj)
    return _as_float(obj)
