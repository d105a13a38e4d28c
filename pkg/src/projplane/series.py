"""Truncated formal power series over the rationals.

Coefficients are :class:`fractions.Fraction` throughout; nothing here ever
touches a float.  A series of order ``n`` stores the coefficients of
``t**0 .. t**n`` and binary operations truncate to the smaller order.

The two genus series are built from the exponential series in an auxiliary
variable ``x`` and then reindexed by ``t = x**2``::

    >>> l_genus_series(4).coefficients
    (Fraction(1, 1), Fraction(1, 3), Fraction(-1, 45), Fraction(2, 945), Fraction(-1, 4725))
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import NonInvertibleSeriesError, NotAGenusSeriesError, TruncationError

Rational = Fraction
Number = Union[int, Fraction, str]

DEFAULT_ORDER = 8


def as_rational(value: Number) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class PowerSeries:
    """Immutable truncated power series ``c0 + c1*t + ... + cn*t**n``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Number]):
        coeffs = tuple(as_rational(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a power series needs at least the constant coefficient")
        object.__setattr__(self, "_coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def constant(cls, value: Number, order: int) -> PowerSeries:
        return cls([value] + [0] * order)

    @classmethod
    def monomial(cls, degree: int, order: int, coefficient: Number = 1) -> PowerSeries:
        if degree > order:
            raise TruncationError(f"t^{degree} does not fit in order {order}")
        coeffs = [0] * (order + 1)
        coeffs[degree] = coefficient
        return cls(coeffs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise TruncationError(f"coefficient t^{k} lies outside order {self.order}")
        return self._coeffs[k]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"PowerSeries({[format_rational(c) for c in self._coeffs]!r})"

    def __str__(self) -> str:
        return render_series(self)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return PowerSeries(self._coeffs[: order + 1])

    def __neg__(self) -> PowerSeries:
        return PowerSeries(-c for c in self._coeffs)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return series_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return series_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return PowerSeries(c * other for c in self._coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return series_div(self, other)
        if isinstance(other, (int, Fraction)):
            return PowerSeries(c / other for c in self._coeffs)
        return NotImplemented


def series_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    return PowerSeries(a[k] + b[k] for k in range(n + 1))


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order)
    ac, bc = a.coefficients, b.coefficients
    return PowerSeries(sum((ac[i] * bc[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1))


def series_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Return ``q`` with ``q * b == a`` up to the smaller order."""
    if b[0] == 0:
        raise NonInvertibleSeriesError("non-invertible series: constant term of divisor is 0")
    n = min(a.order, b.order)
    bc = b.coefficients
    q: list[Fraction] = []
    for k in range(n + 1):
        acc = a[k] - sum((q[i] * bc[k - i] for i in range(k)), Fraction(0))
        q.append(acc / bc[0])
    return PowerSeries(q)


def series_derivative(a: PowerSeries) -> PowerSeries:
    # an order-0 series differentiates to the zero constant, not to an empty series
    if a.order == 0:
        return PowerSeries([0])
    return PowerSeries(k * a[k] for k in range(1, a.order + 1))


def series_integrate(a: PowerSeries, constant: Number = 0) -> PowerSeries:
    return PowerSeries([as_rational(constant)] + [a[k] / (k + 1) for k in range(a.order + 1)])


def shift_down(a: PowerSeries) -> PowerSeries:
    """Divide by ``t``; the constant term must vanish."""
    if a[0] != 0:
        raise ValueError("series is not divisible by t")
    if a.order == 0:
        raise TruncationError("nothing left after dividing an order-0 series by t")
    return PowerSeries(a.coefficients[1:])


def shift_up(a: PowerSeries) -> PowerSeries:
    """Multiply by ``t``; the order grows by one because no coefficient is lost."""
    return PowerSeries((Fraction(0),) + a.coefficients)


def exp_series(scale: Number, order: int) -> PowerSeries:
    """Coefficients of ``exp(scale * x)`` up to ``x**order``."""
    c = as_rational(scale)
    return PowerSeries(c**k / factorial(k) for k in range(order + 1))


def even_part_in_t(a: PowerSeries) -> PowerSeries:
    """Reindex an even series in ``x`` by ``t = x**2``.

    Refuses if any odd coefficient is nonzero.
    """
    odd = [k for k in range(1, a.order + 1, 2) if a[k] != 0]
    if odd:
        raise ValueError(f"series is not even: nonzero coefficient at x^{odd[0]}")
    return PowerSeries(a.coefficients[0::2])


@lru_cache(maxsize=None)
def l_genus_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sqrt(t)/tanh(sqrt(t))`` to ``t**order``.

    Built as ``x/tanh(x) = (e^{2x} + 1) / ((e^{2x} - 1)/x)`` in ``x`` and
    reindexed; the ``x``-series needs degree ``2*order``, and dividing by
    ``x`` costs one more term of the exponential.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    xdeg = 2 * order
    e2x = exp_series(2, xdeg + 1)
    one = PowerSeries.constant(1, xdeg + 1)
    numerator = (e2x + one).truncate(xdeg)
    denominator = shift_down(e2x - one)
    return even_part_in_t(numerator / denominator)


@lru_cache(maxsize=None)
def a_hat_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``(sqrt(t)/2)/sinh(sqrt(t)/2)`` to ``t**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    xdeg = 2 * order
    # sinh(x/2) = (e^{x/2} - e^{-x/2}) / 2
    sinh_half = (exp_series(Fraction(1, 2), xdeg + 1) - exp_series(Fraction(-1, 2), xdeg + 1)) / 2
    numerator = PowerSeries.constant(Fraction(1, 2), xdeg)
    return even_part_in_t(numerator / shift_down(sinh_half))


def dual_series(f: PowerSeries) -> PowerSeries:
    """``f(t) * d/dt (t / f(t))``, with constant term 1.

    The result keeps the order of ``f``: ``t/f`` is known exactly through
    ``t**(order+1)``, so its derivative is exact through ``t**order``.
    """
    if f[0] != 1:
        raise NotAGenusSeriesError("not a genus series: constant term must be 1")
    one = PowerSeries.constant(1, f.order)
    t_over_f = shift_up(one / f)
    return f * series_derivative(t_over_f)


def s_numbers(f: PowerSeries, kmax: int) -> tuple[Fraction, ...]:
    """``(s_1, ..., s_kmax)`` where ``dual_series(f) = sum (-1)^k s_k t^k``."""
    if kmax > f.order:
        raise TruncationError(f"s_{kmax} needs a series of order >= {kmax}, got {f.order}")
    dual = dual_series(f)
    return tuple((-1) ** k * dual[k] for k in range(1, kmax + 1))


def render_series(a: PowerSeries, var: str = "t") -> str:
    parts: list[str] = []
    for k, c in enumerate(a.coefficients):
        if c == 0 and k > 0:
            continue
        mag = format_rational(abs(c))
        if k == 0:
            term = format_rational(c)
        elif k == 1:
            term = f"{mag}*{var}"
        else:
            term = f"{mag}*{var}^{k}"
        if not parts:
            parts.append(term if (k == 0 or c > 0) else "-" + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts)


def coefficient_list(a: PowerSeries | Sequence[Fraction]) -> str:
    return ", ".join(format_rational(c) for c in a)
