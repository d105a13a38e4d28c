"""Multiplicative sequences in the Pontrjagin classes.

Given a genus series ``f`` with ``f(0) = 1``, the weight-``n`` part of
``f(x_1) * ... * f(x_n)`` is symmetric in the ``x_i``; rewriting it in the
elementary symmetric functions and renaming ``sigma_j -> p_{4j}`` gives the
polynomial ``K_n(p_4, ..., p_{4n})``.

Symbols are named by cohomological degree (``p4``, ``p8``, ...), and a
monomial is stored as its exponent vector ``(e_1, e_2, ...)`` meaning
``p4**e_1 * p8**e_2 * ...`` with trailing zeros stripped.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .errors import NotAGenusSeriesError, SymmetryViolationError, TruncationError, UnboundSymbolError
from .series import Number, PowerSeries, as_rational, format_rational, s_numbers

Monomial = tuple[int, ...]

_SYMBOL = re.compile(r"^p(\d+)$")


def symbol_name(k: int) -> str:
    return f"p{4 * k}"


def symbol_index(name: str) -> int:
    """``'p12' -> 3``."""
    m = _SYMBOL.match(name.strip())
    if not m or int(m.group(1)) == 0 or int(m.group(1)) % 4:
        raise ValueError(f"not a Pontrjagin symbol: {name!r}")
    return int(m.group(1)) // 4


def _strip(mono: Monomial) -> Monomial:
    end = len(mono)
    while end and mono[end - 1] == 0:
        end -= 1
    return tuple(mono[:end])


def monomial_weight(mono: Monomial) -> int:
    return sum((k + 1) * e for k, e in enumerate(mono))


class GradedPoly:
    """Homogeneous polynomial in ``p4, p8, ...`` with rational coefficients.

    ``weight(p_{4k}) = k``; every stored monomial has the declared weight and
    zero coefficients are dropped.
    """

    __slots__ = ("weight", "_terms")

    def __init__(self, weight: int, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = as_rational(c)
            if c == 0:
                continue
            mono = _strip(tuple(mono))
            if monomial_weight(mono) != weight:
                raise ValueError(f"monomial {mono} has weight {monomial_weight(mono)}, expected {weight}")
            clean[mono] = clean.get(mono, Fraction(0)) + c
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "_terms", {m: c for m, c in clean.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("GradedPoly is immutable")

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def symbols(self) -> set[str]:
        return {symbol_name(k + 1) for mono in self._terms for k, e in enumerate(mono) if e}

    def coeff(self, **powers: int) -> Fraction:
        """Coefficient of a monomial given as keyword powers, e.g. ``coeff(p4=2)``."""
        size = max((symbol_index(s) for s in powers), default=0)
        mono = [0] * size
        for s, e in powers.items():
            mono[symbol_index(s) - 1] = e
        return self._terms.get(_strip(tuple(mono)), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPoly):
            return self.weight == other.weight and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.weight, frozenset(self._terms.items())))

    def __add__(self, other: GradedPoly) -> GradedPoly:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        if other.weight != self.weight:
            raise ValueError("cannot add polynomials of different weight")
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return GradedPoly(self.weight, terms)

    def __neg__(self) -> GradedPoly:
        return GradedPoly(self.weight, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: GradedPoly) -> GradedPoly:
        return self + (-other)

    def scale(self, c: Number) -> GradedPoly:
        c = as_rational(c)
        return GradedPoly(self.weight, {m: c * v for m, v in self._terms.items()})

    def substitute_zero(self, *names: str) -> GradedPoly:
        """Set the named symbols to zero."""
        drop = {symbol_index(n) - 1 for n in names}
        keep = {m: c for m, c in self._terms.items() if not any(m[k] for k in drop if k < len(m))}
        return GradedPoly(self.weight, keep)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order: higher symbols first (``p8`` before ``p4^2``)."""
        width = max((len(m) for m in self._terms), default=0)
        return sorted(
            self._terms.items(),
            key=lambda mc: tuple(reversed(mc[0] + (0,) * (width - len(mc[0])))),
            reverse=True,
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        items = self.sorted_terms()
        return " + ".join(f"({format_rational(c)})*{_render_monomial(m)}" if any(m) else f"({format_rational(c)})" for m, c in items)

    def __repr__(self) -> str:
        return f"GradedPoly({self.weight}, {str(self)!r})"


def _render_monomial(mono: Monomial) -> str:
    factors = []
    for k, e in enumerate(mono):
        if e == 1:
            factors.append(symbol_name(k + 1))
        elif e > 1:
            factors.append(f"{symbol_name(k + 1)}^{e}")
    return "*".join(factors)


class SymmetricExpansion:
    """Polynomial in ``x_1..x_n`` keyed by exponent tuples of length ``n``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Number]):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for mono, c in terms.items():
            if len(mono) != nvars:
                raise ValueError(f"exponent tuple {mono} does not have {nvars} entries")
            c = as_rational(c)
            if c:
                self.terms[tuple(mono)] = self.terms.get(tuple(mono), Fraction(0)) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def product_of(cls, f: PowerSeries, n: int, max_degree: int | None = None) -> SymmetricExpansion:
        """``f(x_1) * ... * f(x_n)`` truncated at total degree ``max_degree`` (default ``n``)."""
        cap = n if max_degree is None else max_degree
        if f.order < cap:
            raise TruncationError(f"series of order {f.order} cannot resolve total degree {cap}")
        poly: dict[tuple[int, ...], Fraction] = {(0,) * n: Fraction(1)}
        for i in range(n):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for mono, c in poly.items():
                room = cap - sum(mono)
                for k in range(room + 1):
                    fk = f[k]
                    if fk == 0:
                        continue
                    m2 = mono[:i] + (k,) + mono[i + 1:]
                    nxt[m2] = nxt.get(m2, Fraction(0)) + c * fk
            poly = nxt
        return cls(n, poly)

    def homogeneous_part(self, degree: int) -> SymmetricExpansion:
        return SymmetricExpansion(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == degree})

    def is_symmetric(self) -> bool:
        # adjacent transpositions generate the symmetric group
        for i in range(self.nvars - 1):
            for mono, c in self.terms.items():
                swapped = mono[:i] + (mono[i + 1], mono[i]) + mono[i + 2:]
                if self.terms.get(swapped) != c:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if isinstance(other, SymmetricExpansion):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __repr__(self) -> str:
        return f"SymmetricExpansion({self.nvars}, {self.terms!r})"


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _elementary(j: int, n: int) -> dict:
    terms = {}
    for subset in combinations(range(n), j):
        mono = [0] * n
        for i in subset:
            mono[i] = 1
        terms[tuple(mono)] = 1
    return terms


@lru_cache(maxsize=None)
def _elementary_power_product(exps: tuple[int, ...], n: int) -> dict:
    """Expansion of ``prod_j sigma_j ** exps[j-1]`` in ``n`` variables."""
    result = {(0,) * n: 1}
    for j, e in enumerate(exps, start=1):
        if e and j > n:
            return {}
        for _ in range(e):
            result = _poly_mul(result, _elementary(j, n))
    return result


def elementary_symmetric_decompose(expansion: SymmetricExpansion) -> GradedPoly:
    """Rewrite a homogeneous symmetric polynomial in ``sigma_j -> p_{4j}``.

    Repeatedly strips the lexicographically leading monomial ``x^lambda`` by
    subtracting the product of elementary functions whose leading term it is.
    """
    if not expansion.is_symmetric():
        raise SymmetryViolationError("expansion is not invariant under permutation of variables")
    degrees = {sum(m) for m in expansion.terms}
    if len(degrees) > 1:
        raise ValueError(f"expansion is not homogeneous (degrees {sorted(degrees)})")
    weight = degrees.pop() if degrees else 0
    n = expansion.nvars
    remaining = dict(expansion.terms)
    out: dict[Monomial, Fraction] = {}
    while remaining:
        lead = max(remaining)
        c = remaining[lead]
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise SymmetryViolationError(f"leading exponent {lead} is not a partition")
        exps = tuple(lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n))
        out[exps] = out.get(exps, Fraction(0)) + c
        for m, v in _elementary_power_product(exps, n).items():
            nv = remaining.get(m, Fraction(0)) - c * v
            if nv:
                remaining[m] = nv
            else:
                remaining.pop(m, None)
    return GradedPoly(weight, out)


def expand_in_variables(poly: GradedPoly, n: int) -> SymmetricExpansion:
    """Substitute ``p_{4j} -> sigma_j(x_1..x_n)``; symbols beyond ``n`` vanish."""
    total: dict[tuple[int, ...], Fraction] = {}
    for mono, c in poly.terms.items():
        for m, v in _elementary_power_product(mono, n).items():
            total[m] = total.get(m, Fraction(0)) + c * v
    return SymmetricExpansion(n, total)


@lru_cache(maxsize=None)
def genus_polynomial(f: PowerSeries, n: int) -> GradedPoly:
    """The multiplicative-sequence polynomial ``K_n`` of ``f``."""
    if f[0] != 1:
        raise NotAGenusSeriesError("not a genus series: constant term must be 1")
    if n < 0:
        raise ValueError("weight must be non-negative")
    if f.order < n:
        raise TruncationError(f"K_{n} needs a series of order >= {n}, got {f.order}")
    if n == 0:
        return GradedPoly(0, {(): 1})
    top = SymmetricExpansion.product_of(f, n).homogeneous_part(n)
    return elementary_symmetric_decompose(top)


def two_point_genus(f: PowerSeries, k: int) -> tuple[Fraction, Fraction]:
    """Coefficients of ``p_{8k}`` and ``p_{4k}^2`` in ``K_{2k}`` when all other classes vanish."""
    if k < 1:
        raise ValueError("k must be positive")
    s = s_numbers(f, 2 * k)
    s_k, s_2k = s[k - 1], s[2 * k - 1]
    return s_2k, (s_k * s_k - s_2k) / 2


def evaluate_genus(poly: GradedPoly, assignment: Mapping[str, Number]) -> Fraction:
    values = {symbol_index(name): as_rational(v) for name, v in assignment.items()}
    missing = sorted(poly.symbols() - {symbol_name(k) for k in values}, key=symbol_index)
    if missing:
        raise UnboundSymbolError(f"unbound symbol(s): {', '.join(missing)}")
    total = Fraction(0)
    for mono, c in poly.terms.items():
        term = c
        for k, e in enumerate(mono, start=1):
            if e:
                term *= values[k] ** e
        total += term
    return total
