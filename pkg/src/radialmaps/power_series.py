"""Truncated one-variable complex power series.

A :class:`TruncatedSeries` holds ``c_0 .. c_d`` and stands for the class of
every series agreeing with it through ``zeta**d``. Binary operations keep the
smaller truncation degree of their operands, so no coefficient is ever
reported beyond what the inputs determine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import DegreeUnderflow, DivisionByZeroAtOrigin, NonOriginPreservingInner

DEFAULT_DEGREE = 32

ArithKind = Literal["add", "sub", "mul", "div"]


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``c_0..c_d`` of a complex power series, truncated at ``d``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex], degree: int | None = None) -> "TruncatedSeries":
        """Build a series, zero-padding or cutting ``coeffs`` to ``degree``."""
        c = np.array(list(coeffs), dtype=complex)
        if degree is not None:
            if degree < 0:
                raise ValueError("degree must be >= 0")
            out = np.zeros(degree + 1, dtype=complex)
            k = min(degree + 1, c.size)
            out[:k] = c[:k]
            c = out
        return cls(c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        return f"TruncatedSeries(degree={self.degree}, coeffs={np.array2string(self.coeffs, precision=6)})"

    def truncate(self, degree: int) -> "TruncatedSeries":
        if degree > self.degree:
            raise ValueError(f"cannot extend a degree-{self.degree} series to degree {degree}")
        return TruncatedSeries(self.coeffs[: degree + 1])

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by ``zeta**k``; the truncation degree grows by ``k``."""
        return TruncatedSeries(np.concatenate([np.zeros(k, dtype=complex), self.coeffs]))

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (scalar or array) by Horner."""
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self.coeffs[-1], dtype=complex)
        for c in self.coeffs[-2::-1]:
            acc = acc * z + c
        return acc if acc.ndim else complex(acc)

    def equals(self, other: "TruncatedSeries", atol: float = 0.0) -> bool:
        if self.degree != other.degree:
            return False
        return bool(np.all(np.abs(self.coeffs - other.coeffs) <= atol))

    def __add__(self, other):
        return arith(self, _coerce(other, self.degree), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return arith(self, _coerce(other, self.degree), "sub")

    def __rsub__(self, other):
        return arith(_coerce(other, self.degree), self, "sub")

    def __mul__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(self.coeffs * complex(other))
        return arith(self, other, "mul")

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(self.coeffs / complex(other))
        return arith(self, other, "div")

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def derivative(self) -> "TruncatedSeries":
        return derivative(self)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, inner)

    def scale_argument(self, c: complex) -> "TruncatedSeries":
        return scale_argument(self, c)


def _coerce(x, degree: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.from_coeffs([complex(x)], degree)


def arith(a: TruncatedSeries, b: TruncatedSeries, kind: ArithKind) -> TruncatedSeries:
    """Exact add/sub/mul/div truncated at ``min(a.degree, b.degree)``.

    ``div`` is the Cauchy quotient and requires ``b[0] != 0``.
    """
    d = min(a.degree, b.degree)
    x = a.coeffs[: d + 1]
    y = b.coeffs[: d + 1]
    if kind == "add":
        return TruncatedSeries(x + y)
    if kind == "sub":
        return TruncatedSeries(x - y)
    if kind == "mul":
        return TruncatedSeries(np.convolve(x, y)[: d + 1])
    if kind == "div":
        if y[0] == 0:
            raise DivisionByZeroAtOrigin("series division needs a nonzero constant term in the divisor")
        q = np.zeros(d + 1, dtype=complex)
        for k in range(d + 1):
            # q_k = (x_k - sum_{j=1..k} y_j q_{k-j}) / y_0
            q[k] = (x[k] - np.dot(y[1 : k + 1], q[:k][::-1])) / y[0]
        return TruncatedSeries(q)
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Formal derivative; the result has degree ``d - 1``."""
    if a.degree < 1:
        raise DegreeUnderflow("derivative of a degree-0 truncated series is undetermined")
    k = np.arange(1, a.degree + 1)
    return TruncatedSeries(a.coeffs[1:] * k)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(zeta))`` for ``inner(0) = 0``, by Horner nesting on series."""
    if inner.coeffs[0] != 0:
        raise NonOriginPreservingInner("composition is only defined for inner series vanishing at 0")
    d = min(outer.degree, inner.degree)
    g = inner.coeffs[: d + 1]
    acc = np.zeros(d + 1, dtype=complex)
    acc[0] = outer.coeffs[d]
    for c in outer.coeffs[d - 1 :: -1] if d else ():
        acc = np.convolve(acc, g)[: d + 1]
        acc[0] += c
    return TruncatedSeries(acc)


def scale_argument(a: TruncatedSeries, c: complex) -> TruncatedSeries:
    """Series of ``a(c * zeta)``: coefficient ``k`` is multiplied by ``c**k``."""
    if c == 0:
        powers = np.zeros(a.degree + 1, dtype=complex)
        powers[0] = 1.0
    else:
        powers = np.power(complex(c), np.arange(a.degree + 1))
    return TruncatedSeries(a.coeffs * powers)


def geometric(degree: int = DEFAULT_DEGREE) -> TruncatedSeries:
    """``1/(1 - t)`` truncated."""
    return TruncatedSeries(np.ones(degree + 1, dtype=complex))


def koebe_profile(degree: int = DEFAULT_DEGREE) -> TruncatedSeries:
    """``1/(1 - t)**2 = sum (k+1) t**k``."""
    return TruncatedSeries(np.arange(1, degree + 2, dtype=complex))


def koebe_function(degree: int = DEFAULT_DEGREE) -> TruncatedSeries:
    """``zeta/(1 - zeta)**2 = sum k zeta**k``."""
    return TruncatedSeries(np.arange(degree + 1, dtype=complex))


def monomial(k: int, degree: int = DEFAULT_DEGREE, coeff: complex = 1.0) -> TruncatedSeries:
    c = np.zeros(degree + 1, dtype=complex)
    if k <= degree:
        c[k] = coeff
    return TruncatedSeries(c)
