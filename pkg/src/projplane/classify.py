"""Invariants and classification of the models ``M_{r,s}``.

A model is the Thom space of an ``R^m``-bundle over ``S^m`` with absolute
Euler number 1, ``m`` in {2, 4, 8}.  For ``m = 4`` the bundle has
``p_4 = 2r`` and Kirby-Siebenmann number ``s`` in Z/2; for ``m = 8`` it has
``p_8 = 6r/7`` and exotic class ``s`` in Z/4; ``r`` is always odd.  In
dimension 4 there is one model (``CP^2``) plus the Chern manifold, which is
not a Thom space and is carried as a separate descriptor kind.

Numbers are computed rather than stored: the top Pontrjagin number comes
from the signature theorem, and the smoothability residues from A-hat
integrality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

from . import tables
from .abgroup import (
    EmbedsIn,
    FgAbGroup,
    GroupMap,
    OrderAtMost,
    TensorIsomorphic,
    TRIVIAL,
    Z,
    is_exact,
    solve_torsion_constraints,
    tensor_cyclic,
)
from .errors import DimensionError
from .msq import GradedPoly, evaluate_genus, genus_polynomial, two_point_genus
from .series import Number, a_hat_series, as_rational, l_genus_series, s_numbers

# Overall sign applied to A-hat values of models.  Only integrality and
# vanishing are used downstream; -1 makes the model values read
# -t(1+t)/56 and -u(1+u)/16256.
A_HAT_SIGN = -1


class Kind(str, enum.Enum):
    MODEL = "model"
    CHERN = "chern"


def exotic_modulus(m: int) -> int:
    """Size of the group holding ``ks`` (m = 2, 4) or ``kappa`` (m = 8)."""
    _check_dimension(m)
    return 4 if m == 8 else 2


def _check_dimension(m: int) -> None:
    if m not in tables.DIMENSIONS:
        raise DimensionError(f"m must be one of {tables.DIMENSIONS}, got {m}")


@dataclass(frozen=True)
class ModelDescriptor:
    """A model ``M_{r,s}`` in dimension ``2m``, or the Chern manifold."""

    m: int
    r: int = 1
    s: int = 0
    kind: Kind = Kind.MODEL

    def __post_init__(self):
        _check_dimension(self.m)
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "s", self.s % exotic_modulus(self.m))
        if self.r % 2 == 0:
            raise ValueError(f"r must be odd, got {self.r}")
        if self.kind is Kind.CHERN:
            if self.m != 2 or self.r != 1 or self.s != 1:
                raise ValueError("the Chern manifold is the descriptor (m=2, r=1, s=1)")
        elif self.m == 2 and (self.r != 1 or self.s != 0):
            raise ValueError("in dimension 4 the only model is CP^2 = (m=2, r=1, s=0)")

    @classmethod
    def chern(cls) -> ModelDescriptor:
        return cls(2, 1, 1, Kind.CHERN)

    @classmethod
    def cp2(cls) -> ModelDescriptor:
        return cls(2, 1, 0)

    @property
    def t(self) -> int:
        """``r = 1 + 2t``."""
        return (self.r - 1) // 2

    @property
    def name(self) -> Optional[str]:
        if self.kind is Kind.CHERN:
            return "Ch^4"
        if self.m == 2:
            return "CP^2"
        if self.m == 4 and abs(self.r) == 1 and self.s == 0:
            return "HP^2"
        if self.m == 8 and abs(self.r) == 7 and self.s == 0:
            return "OP^2"
        return None

    def __str__(self) -> str:
        if self.kind is Kind.CHERN:
            return "Ch^4"
        return f"M_{{{self.r},{self.s}}} (m={self.m})"


@dataclass(frozen=True)
class BundleDescriptor:
    """Oriented ``R^m``-bundle over ``S^m`` given by its characteristic numbers.

    ``p_class`` is ``<p_m, [S^m]>`` (unused for m = 2); ``exotic`` is ``w_2``,
    ``ks`` or ``kappa`` for m = 2, 4, 8.
    """

    m: int
    euler: int
    p_class: Optional[Fraction] = None
    exotic: int = 0

    def __post_init__(self):
        _check_dimension(self.m)
        if self.p_class is not None:
            object.__setattr__(self, "p_class", as_rational(self.p_class))
        if not 0 <= self.exotic < exotic_modulus(self.m):
            raise ValueError(f"exotic datum {self.exotic} out of range for m={self.m}")
        if self.m != 2 and self.p_class is None:
            raise ValueError("a Pontrjagin number is required for m = 4, 8")


def bundle_admissible(b: BundleDescriptor) -> bool:
    """Whether a bundle with these characteristic numbers exists."""
    if b.m == 2:
        return True
    e = abs(b.euler)
    if b.m == 4:
        p = b.p_class
        return p.denominator == 1 and p.numerator % 2 == 0 and (p.numerator + 2 * e) % 4 == 0
    # m == 8: p in (6/7)Z and (7/3) p + 2|e| = 0 mod 4
    q = b.p_class * Fraction(7, 6)
    return q.denominator == 1 and (2 * q.numerator + 2 * e) % 4 == 0


def model_bundle(d: ModelDescriptor) -> BundleDescriptor:
    """The bundle whose Thom space is the model."""
    if d.kind is Kind.CHERN:
        raise ValueError("the Chern manifold is not a Thom space")
    if d.m == 2:
        return BundleDescriptor(2, 1, None, 1)
    return BundleDescriptor(d.m, 1, pm_coefficient(d), d.s)


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class CohomologyReport:
    m: int
    abs_euler: int
    epsilon: int
    relation: str
    euler_characteristic: Optional[int]
    signature: Optional[int]
    stiefel_whitney: Optional[str]
    wu_class: Optional[str]


def thom_cohomology(m: int, e: int) -> CohomologyReport:
    """Cohomology ring data of the Thom space of an ``R^m``-bundle with Euler number ``e``.

    ``y_{2m}`` is oriented so that the sign in ``y_m^2 = +-|e| y_{2m}`` is
    ``+1``.  Manifold data appear only for ``|e| = 1``.
    """
    _check_dimension(m)
    a = abs(e)
    y, top = f"y{m}", f"y{2 * m}"
    if a == 0:
        relation = f"{y}^2 = 0"
    elif a == 1:
        relation = f"{y}^2 = {top}"
    else:
        relation = f"{y}^2 = {a}*{top}"
    if a != 1:
        return CohomologyReport(m, a, 1, relation, None, None, None, None)
    total = f"1 + {y} + {y}^2"
    return CohomologyReport(m, a, 1, relation, 3, 1, total, total)


# ---------------------------------------------------------------------------
# characteristic numbers


def pm_coefficient(d: ModelDescriptor) -> Optional[Fraction]:
    """Coefficient of ``y_m`` in ``p_m(M)``; there is no ``p_2`` when m = 2."""
    if d.m == 2:
        return None
    if d.m == 4:
        return Fraction(2 * d.r)
    return Fraction(6 * d.r, 7)


def p2m_from_signature(m: int, pm: Optional[Fraction]) -> Fraction:
    """Solve ``<L_{2m}(p_m, p_{2m}), [M]> = 1`` for the ``p_{2m}`` coefficient."""
    ell = l_genus_series()
    if m == 2:
        (s1,) = s_numbers(ell, 1)
        return 1 / s1
    top, square = two_point_genus(ell, m // 4)
    return (1 - square * pm * pm) / top


@lru_cache(maxsize=None)
def l_class(m: int) -> GradedPoly:
    """``L_{2m}`` restricted to spaces with rational cohomology in degrees 0, m, 2m."""
    return _restricted(genus_polynomial(l_genus_series(), m // 2), m)


@lru_cache(maxsize=None)
def a_hat_class(m: int) -> GradedPoly:
    return _restricted(genus_polynomial(a_hat_series(), m // 2), m).scale(A_HAT_SIGN)


def _restricted(poly: GradedPoly, m: int) -> GradedPoly:
    keep = {f"p{m}", f"p{2 * m}"}
    return poly.substitute_zero(*(f"p{4 * k}" for k in range(1, m // 2 + 1) if f"p{4 * k}" not in keep))


def _assignment(m: int, pm: Optional[Fraction], p2m: Fraction) -> dict[str, Fraction]:
    if m == 2:
        return {"p4": p2m}
    return {f"p{m}": pm, f"p{2 * m}": p2m}


def a_hat_value(m: int, pm: Optional[Fraction], p2m: Fraction) -> Fraction:
    return evaluate_genus(a_hat_class(m), _assignment(m, pm, p2m))


def signature_value(m: int, pm: Optional[Fraction], p2m: Fraction) -> Fraction:
    return evaluate_genus(l_class(m), _assignment(m, pm, p2m))


# ---------------------------------------------------------------------------
# smoothability


@dataclass(frozen=True)
class DiffResidues:
    """Residues of the smoothing parameter for which A-hat is integral."""

    m: int
    modulus: int
    residues: frozenset[int]


def _smoothing_parameter_model(m: int, u: int) -> ModelDescriptor:
    # m = 4: r = 1 + 2t;  m = 8: r = 7(1 + 2u)
    return ModelDescriptor(m, (1 + 2 * u) * (1 if m == 4 else 7), 0)


def a_hat_of_parameter(m: int, u: int) -> Fraction:
    d = _smoothing_parameter_model(m, u)
    pm = pm_coefficient(d)
    return a_hat_value(m, pm, p2m_from_signature(m, pm))


@lru_cache(maxsize=None)
def diff_residues(m: int) -> DiffResidues:
    """Derive the residues ``u mod N`` with ``A-hat[M]`` integral.

    ``A-hat`` is a quadratic polynomial in the parameter; ``N`` is the lcm of
    its coefficient denominators, which makes integrality ``N``-periodic.
    The interpolant is confirmed against direct evaluation at extra points,
    and the residue set against the closed form ``u(u+1) = 0 mod N``.
    """
    if m not in (4, 8):
        raise DimensionError("smoothability residues exist for m = 4, 8")
    v0, v1, v2 = (a_hat_of_parameter(m, u) for u in (0, 1, 2))
    # Newton interpolation through u = 0, 1, 2
    c2 = (v2 - 2 * v1 + v0) / 2
    c1 = v1 - v0 - c2

    def quadratic(u: int) -> Fraction:
        return v0 + c1 * u + c2 * u * u

    if any(quadratic(u) != a_hat_of_parameter(m, u) for u in (-3, 5, 101)):
        raise ArithmeticError("A-hat is not quadratic in the smoothing parameter")
    modulus = 1
    for c in (v0, c1, c2):
        modulus = modulus * c.denominator // gcd(modulus, c.denominator)
    residues = frozenset(u for u in range(modulus) if quadratic(u).denominator == 1)
    closed_form = frozenset(u for u in range(modulus) if u * (u + 1) % modulus == 0)
    if residues != closed_form:
        raise ArithmeticError(f"A-hat integrality residues disagree with u(u+1) = 0 mod {modulus}")
    return DiffResidues(m, modulus, residues)


@dataclass(frozen=True)
class StructureCount:
    admits: bool
    count: int


def pl_structure(d: ModelDescriptor) -> StructureCount:
    if d.kind is Kind.CHERN:
        return StructureCount(False, 0)
    if d.m == 4 and d.s != 0:
        return StructureCount(False, 0)
    # m = 2: CP^2 has its standard structure; further ones are not excluded
    return StructureCount(True, 1)


def diff_structure(d: ModelDescriptor) -> StructureCount:
    """Existence of a smooth structure and the bound ``|Theta_{2m}|`` on their number."""
    if d.kind is Kind.CHERN:
        return StructureCount(False, 0)
    if d.m == 2:
        return StructureCount(True, 1)
    if d.s != 0:
        return StructureCount(False, 0)
    if d.m == 8 and d.r % 14 != 7:
        return StructureCount(False, 0)
    u = d.t if d.m == 4 else (d.r // 7 - 1) // 2
    res = diff_residues(d.m)
    if u % res.modulus not in res.residues:
        return StructureCount(False, 0)
    return StructureCount(True, tables.exotic_sphere_group(d.m).order)


# ---------------------------------------------------------------------------
# equivalence relations


def _same_dimension(a: ModelDescriptor, b: ModelDescriptor) -> None:
    if a.m != b.m:
        raise DimensionError(f"cannot compare models of dimension {2 * a.m} and {2 * b.m}")


def homeomorphic(a: ModelDescriptor, b: ModelDescriptor) -> bool:
    _same_dimension(a, b)
    if a.m == 2:
        return a.kind == b.kind
    if a.m == 4:
        return abs(a.r) == abs(b.r) and a.s == b.s
    mod = exotic_modulus(8)
    return (a.r, a.s) == (b.r, b.s) or (a.r, a.s) == (-b.r, (-b.s) % mod)


def homotopy_modulus(m: int) -> int:
    return tables.stable_j_group(m).order


def homotopy_invariant(d: ModelDescriptor) -> int:
    """Canonical representative of ``r + (N/|exotic|) s`` mod ``N`` up to sign, ``N = |pi_m(BG)|``.

    That is ``r + 12s mod 24`` for m = 4 and ``r + 60s mod 240`` for m = 8.
    """
    if d.m == 2:
        return 0
    n = homotopy_modulus(d.m)
    v = (d.r + n // exotic_modulus(d.m) * d.s) % n
    return min(v, (-v) % n)


def homotopy_equivalent(a: ModelDescriptor, b: ModelDescriptor) -> bool:
    _same_dimension(a, b)
    return homotopy_invariant(a) == homotopy_invariant(b)


def bordism_invariants(d: ModelDescriptor) -> tuple:
    """Oriented bordism numbers separating the models.

    m = 2: ``(p_4[M], ks[M])``; m = 4: ``(p_4^2[M], ks^2[M])``;
    m = 8: ``(p_8^2[M], q_8 kappa[M])`` with ``q_8 = (7/6) p_8 = r y_8``.
    """
    if d.m == 2:
        return (p2m_from_signature(2, None), 1 if d.kind is Kind.CHERN else 0)
    pm = pm_coefficient(d)
    if d.m == 4:
        return (pm * pm, d.s * d.s % 2)
    return (pm * pm, d.r * d.s % 4)


# ---------------------------------------------------------------------------
# homotopy-type counting


def _involution_orbits(k: int) -> int:
    """Orbits of ``j -> -1 - j`` on Z/k."""
    seen: set[int] = set()
    orbits = 0
    for j in range(k):
        if j in seen:
            continue
        orbits += 1
        seen |= {j, (-1 - j) % k}
    return orbits


def homotopy_type_counts(m: int) -> tuple[int, int]:
    """(orbit count, distinct invariant count) for dimension ``2m``.

    Attaching maps of Hopf invariant one are ``eta + j*delta`` with ``j`` in
    the torsion ``Z/k`` of ``pi_{2m-1}(S^m)``; a degree -1 self-map of
    ``S^m`` sends ``eta`` to ``eta - delta`` and ``delta`` to ``-delta``, so
    ``j -> -1 - j``.
    """
    _check_dimension(m)
    torsion = tables.unstable_group(m).torsion
    k = torsion[-1] if torsion else 1
    orbits = _involution_orbits(k)
    if m == 2:
        models = [ModelDescriptor.cp2(), ModelDescriptor.chern()]
    else:
        n = homotopy_modulus(m)
        models = [ModelDescriptor(m, r, s) for r in range(1, 2 * n, 2) for s in range(exotic_modulus(m))]
    return orbits, len({homotopy_invariant(d) for d in models})


def count_homotopy_types(m: int) -> int:
    orbits, classes = homotopy_type_counts(m)
    if orbits != classes:
        raise ArithmeticError(f"orbit count {orbits} disagrees with invariant count {classes} for m={m}")
    return orbits


# ---------------------------------------------------------------------------
# stable bundles: torsion groups, Pontrjagin lattices, splitting


def torsion_constraints(m: int) -> list:
    """Constraints pinning the torsion ``T_m`` of ``pi_m(BTOP)``.

    ``T_m`` injects into ``pi_{m-1}(TOP/O)`` and into ``pi_m(BG)``, hence into
    the cyclic group of order the gcd ``a``; tensoring with ``Z/a`` keeps the
    horizontal sequence exact, forcing ``T_m (x) Z/a = Z/a``.
    """
    if m not in (4, 8):
        raise DimensionError("torsion deductions are for m = 4, 8")
    a = gcd(tables.top_o_group(m).order, tables.stable_j_group(m).order)
    return [EmbedsIn(a), TensorIsomorphic(a, FgAbGroup(torsion=(a,))), OrderAtMost(64)]


def torsion_of_btop(m: int) -> FgAbGroup:
    solutions = solve_torsion_constraints(torsion_constraints(m))
    if len(solutions) != 1:
        raise ArithmeticError(f"torsion constraints for m={m} do not have a unique solution: {solutions}")
    return solutions[0]


class Category(str, enum.Enum):
    VECT = "VECT"
    TOP = "TOP"


@dataclass(frozen=True)
class RationalLattice:
    """The subgroup ``generator * Z`` of Q."""

    generator: Fraction

    def __contains__(self, value: Number) -> bool:
        q = as_rational(value) / self.generator
        return q.denominator == 1

    def __str__(self) -> str:
        g = self.generator
        return f"{g}Z" if g.denominator == 1 else f"({g})Z"


def pontrjagin_range(k: int, category: Category | str) -> RationalLattice:
    """Realizable values of ``<p_{4k}, [S^{4k}]>`` for stable bundles."""
    category = Category(category)
    if k not in (1, 2):
        raise DimensionError(f"Pontrjagin ranges are available for k = 1, 2, got {k}")
    d_k = 2 if k % 2 else 1
    fact = 1
    for i in range(2, 2 * k):
        fact *= i
    vect = Fraction(d_k * fact)
    if category is Category.VECT:
        return RationalLattice(vect)
    # cokernel of pi_{4k}(BO) -> pi_{4k}(BTOP)/T_{4k}
    m = 4 * k
    index = tables.top_o_group(m).order // torsion_of_btop(m).order
    return RationalLattice(vect / index)


def splitting_sequence(m: int, iota_image: tuple[int, int] = tables.IOTA_IMAGE) -> list[GroupMap]:
    """``0 -> Z -> Z + Z/k -> Z/2k -> 0`` with ``(a, b) -> a + 2b``."""
    if m not in (4, 8):
        raise DimensionError("the splitting sequence is for m = 4, 8")
    middle = tables.unstable_group(m)
    quotient = tables.stable_j_group(m)
    inc = GroupMap.from_images(Z(), middle, [iota_image])
    proj = GroupMap.from_images(middle, quotient, [(1,), (2,)])
    return [GroupMap.zero(TRIVIAL, Z()), inc, proj, GroupMap.zero(quotient, TRIVIAL)]


def verify_splitting(m: int, iota_image: tuple[int, int] = tables.IOTA_IMAGE) -> bool:
    """Exactness of the bottom row before and after tensoring with ``Z/(m/2)``."""
    seq = splitting_sequence(m, iota_image)
    if not is_exact(seq):
        return False
    return is_exact([tensor_cyclic(f, m // 2) for f in seq])


# ---------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class InvariantReport:
    model: ModelDescriptor
    p_m: Optional[Fraction]
    p_2m: Fraction
    pm_squared: Optional[Fraction]
    a_hat: Fraction
    ks_or_kappa: int
    q8_kappa: Optional[int]
    homotopy_class: int
    pl: StructureCount
    diff: StructureCount
    psc: Optional[bool]
    bordism: tuple
    cohomology: CohomologyReport
    caveats: tuple[str, ...] = field(default=())

    @property
    def name(self) -> Optional[str]:
        return self.model.name


def model_invariants(d: ModelDescriptor) -> InvariantReport:
    pm = pm_coefficient(d)
    p2m = p2m_from_signature(d.m, pm)
    a_hat = a_hat_value(d.m, pm, p2m)
    pl = pl_structure(d)
    diff = diff_structure(d)
    caveats: list[str] = []
    if d.m == 2:
        psc = None if d.kind is Kind.MODEL else False
        if d.kind is Kind.MODEL:
            caveats += [
                "PL/DIFF count on CP^2 is unknown; 1 is a lower bound",
                "psc not decided by A-hat: CP^2 is not spin",
            ]
    else:
        psc = diff.admits and a_hat == 0
    return InvariantReport(
        model=d,
        p_m=pm,
        p_2m=p2m,
        pm_squared=None if pm is None else pm * pm,
        a_hat=a_hat,
        ks_or_kappa=d.s,
        q8_kappa=d.r * d.s % 4 if d.m == 8 else None,
        homotopy_class=homotopy_invariant(d),
        pl=pl,
        diff=diff,
        psc=psc,
        bordism=bordism_invariants(d),
        cohomology=thom_cohomology(d.m, 1),
        caveats=tuple(caveats),
    )


@dataclass
class Enumeration:
    rows: list[InvariantReport]
    rejected: list[tuple[int, str]]


def enumerate_models(m: int, r_values: Iterable[int] = ()) -> Enumeration:
    """Reports for every ``(r, s)`` with ``r`` from ``r_values``, ordered by ``(r, s)``.

    Even ``r`` are rejected individually.  For m = 2 the two manifolds are
    returned and ``r_values`` is ignored.
    """
    _check_dimension(m)
    if m == 2:
        return Enumeration([model_invariants(ModelDescriptor.cp2()), model_invariants(ModelDescriptor.chern())], [])
    rows, rejected = [], []
    for r in sorted(set(r_values)):
        if r % 2 == 0:
            rejected.append((r, f"r={r} rejected: r must be odd"))
            continue
        rows += [model_invariants(ModelDescriptor(m, r, s)) for s in range(exotic_modulus(m))]
    return Enumeration(rows, rejected)
