"""Finitely generated abelian groups and homomorphisms between them.

A group is stored canonically as ``Z^rank + Z/d_1 + ... + Z/d_k`` with
``d_1 | d_2 | ... | d_k`` and every ``d_i >= 2``.  Elements are integer
vectors with the free coordinates first, then the torsion coordinates.

Subgroups are handled through their preimage lattice in ``Z^n`` (the span
of the generators plus the relations of the group), brought to Hermite
normal form so that two subgroups are equal exactly when their lattices
have identical HNF bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Sequence, Union

from .errors import CoordinateError, ShapeError, WellDefinednessError

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# integer matrix kernels


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(len(b))) for j in range(cols)] for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], tuple[Matrix, Matrix]]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns ``(divisors, (U, V))`` with ``U @ A @ V`` diagonal, the diagonal
    being ``divisors`` (length ``min(rows, cols)``, non-negative, each
    dividing the next, zeros last).  ``ncols`` is only needed for a matrix
    with no rows.
    """
    a = [list(map(int, r)) for r in matrix]
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    divisors = [a[i][i] for i in range(min(m, n))]
    return divisors, (u, v)


def hermite_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form basis of the lattice spanned by ``vectors``.

    Pivots are positive and the entries above each pivot are reduced into
    ``[0, pivot)``, which makes the basis unique for the lattice.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    basis: list[list[int]] = []
    for col in range(dim):
        # every row still in play vanishes on the columns before `col`
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            survivors = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    survivors.append(r2)
                elif any(r2):
                    rest.append(r2)
            live = survivors
        if live:
            piv = live[0]
            basis.append(piv if piv[col] > 0 else [-x for x in piv])
        rows = rest
    for i, row in enumerate(basis):
        p = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            q = basis[k][p] // row[p]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], row)]
    return [tuple(r) for r in basis]


def integer_nullspace(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A basis of ``{x in Z^ncols : A x = 0}``."""
    divisors, (_, v) = smith_normal_form(matrix, ncols=ncols)
    rank = sum(1 for d in divisors if d)
    return [[v[i][j] for i in range(ncols)] for j in range(rank, ncols)]


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^rank + Z/torsion[0] + ...`` in invariant-factor form."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion orders must be >= 2, got {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisor chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> FgAbGroup:
        """Canonical form of a direct sum of cyclic groups; ``0`` stands for ``Z``."""
        orders = [abs(int(d)) for d in orders]
        if not orders:
            return cls()
        divisors, _ = smith_normal_form([[d if i == j else 0 for j in range(len(orders))] for i, d in enumerate(orders)])
        return cls(rank=sum(1 for d in divisors if d == 0), torsion=tuple(d for d in divisors if d > 1))

    @classmethod
    def parse(cls, text: str) -> FgAbGroup:
        """Read ``"Z^2 + Z/2 + Z/4"``, ``"Z + Z/12"`` or ``"0"``."""
        text = text.replace(" ", "")
        if text in ("", "0", "trivial"):
            return cls()
        orders: list[int] = []
        for part in re.split(r"[+(),]|⊕", text):
            if not part:
                continue
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                orders += [0] * int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)", part)
            if m:
                orders.append(int(m.group(1)))
                continue
            raise ValueError(f"cannot parse group summand {part!r}")
        return cls.from_cyclic_orders(orders)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Coordinate moduli, ``0`` for a free coordinate."""
        return (0,) * self.rank + self.torsion

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` when infinite."""
        return None if self.rank else prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_cyclic(self) -> bool:
        return self.ngens <= 1

    def reduce(self, element: Sequence[int]) -> tuple[int, ...]:
        if len(element) != self.ngens:
            raise CoordinateError(f"element {tuple(element)} needs {self.ngens} coordinates for {self}")
        return tuple(x % d if d else int(x) for x, d in zip(element, self.moduli))

    def relations(self) -> list[tuple[int, ...]]:
        n = self.ngens
        return [tuple(d if i == j else 0 for j in range(n)) for i, d in enumerate(self.moduli) if d]

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def Z(rank: int = 1) -> FgAbGroup:
    return FgAbGroup(rank=rank)


def Zmod(*orders: int) -> FgAbGroup:
    return FgAbGroup.from_cyclic_orders(orders)


TRIVIAL = FgAbGroup()


def subgroup_lattice(group: FgAbGroup, generators: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """HNF basis of the preimage in ``Z^n`` of the subgroup generated by ``generators``."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != group.ngens:
            raise CoordinateError(f"generator {g} needs {group.ngens} coordinates")
    return hermite_basis(gens + group.relations(), group.ngens)


def lattice_quotient(basis: Sequence[Sequence[int]], sub: Iterable[Sequence[int]]) -> FgAbGroup:
    """``L / S`` for lattices ``S <= L``; ``basis`` must be an HNF basis of ``L``."""
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    presentation = []
    for g in sub:
        rest = list(g)
        coords = []
        for row, p in zip(basis, pivots):
            q, r = divmod(rest[p], row[p])
            if r:
                raise ValueError(f"{tuple(g)} is not in the lattice")
            coords.append(q)
            rest = [x - q * y for x, y in zip(rest, row)]
        if any(rest):
            raise ValueError(f"{tuple(g)} is not in the lattice")
        presentation.append(coords)
    r = len(basis)
    if not presentation:
        return FgAbGroup(rank=r)
    divisors, _ = smith_normal_form(presentation, ncols=r)
    nonzero = [d for d in divisors if d]
    return FgAbGroup(rank=r - len(nonzero), torsion=tuple(d for d in nonzero if d > 1))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupMap:
    """Homomorphism given by an integer matrix (one column per source generator).

    Entries in a torsion row are stored reduced into ``[0, d)``.  The matrix
    is checked at construction: a generator of order ``d`` must be sent to an
    element killed by ``d``.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        rows, cols = self.target.ngens, self.source.ngens
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(mat) != rows or any(len(row) != cols for row in mat):
            raise ShapeError(f"matrix must be {rows}x{cols} for {self.source} -> {self.target}")
        mat = tuple(tuple(x % d if d else x for x in row) for row, d in zip(mat, self.target.moduli))
        for j, dj in enumerate(self.source.moduli):
            if not dj:
                continue
            for i, di in enumerate(self.target.moduli):
                image = dj * mat[i][j]
                if (di == 0 and image != 0) or (di and image % di):
                    raise WellDefinednessError(
                        f"generator {j} of order {dj} maps to an element of infinite or incompatible order in {self.target}"
                    )
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> GroupMap:
        return cls(source, target, tuple((0,) * source.ngens for _ in range(target.ngens)))

    @classmethod
    def from_images(cls, source: FgAbGroup, target: FgAbGroup, images: Sequence[Sequence[int]]) -> GroupMap:
        """Build from the image of each source generator."""
        if len(images) != source.ngens:
            raise ShapeError(f"need one image per generator of {source}")
        mat = tuple(tuple(images[j][i] for j in range(source.ngens)) for i in range(target.ngens))
        return cls(source, target, mat)

    def __call__(self, element: Sequence[int]) -> tuple[int, ...]:
        x = self.source.reduce(element)
        return self.target.reduce([sum(a * b for a, b in zip(row, x)) for row in self.matrix])

    def compose(self, before: GroupMap) -> GroupMap:
        """``self o before``."""
        if before.target != self.source:
            raise ShapeError(f"cannot compose {before.source}->{before.target} with {self.source}->{self.target}")
        inner, cols = self.source.ngens, before.source.ngens
        mat = tuple(
            tuple(sum(row[t] * before.matrix[t][j] for t in range(inner)) for j in range(cols))
            for row in self.matrix
        )
        return GroupMap(before.source, self.target, mat)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def image_lattice(self) -> list[tuple[int, ...]]:
        cols = [tuple(row[j] for row in self.matrix) for j in range(self.source.ngens)]
        return subgroup_lattice(self.target, cols)

    def kernel_lattice(self) -> list[tuple[int, ...]]:
        """HNF basis of ``{x in Z^n : f(x) = 0}`` (contains the relations of the source)."""
        n = self.source.ngens
        if n == 0:
            return []
        tm = self.target.moduli
        # solve M x - diag(tm) y = 0 and keep the x-part
        aug = [list(row) + [(-d if i == k else 0) for k, d in enumerate(tm) if d] for i, (row, d) in enumerate(zip(self.matrix, tm))]
        extra = sum(1 for d in tm if d)
        if not aug:
            return hermite_basis(identity(n), n)
        null = integer_nullspace(aug, n + extra)
        return hermite_basis([vec[:n] for vec in null] + self.source.relations(), n)


def kernel(f: GroupMap) -> FgAbGroup:
    basis = f.kernel_lattice()
    return lattice_quotient(basis, f.source.relations())


def image(f: GroupMap) -> FgAbGroup:
    return lattice_quotient(f.image_lattice(), f.target.relations())


def cokernel(f: GroupMap) -> FgAbGroup:
    n = f.target.ngens
    return lattice_quotient(hermite_basis(identity(n), n), f.image_lattice())


def is_exact(sequence: Sequence[GroupMap]) -> bool:
    """True iff image equals kernel at every interior node.

    ``[0 -> A, A -> B, B -> C, C -> 0]`` checks a short exact sequence.
    """
    for f, g in zip(sequence, sequence[1:]):
        if f.target != g.source:
            raise ShapeError(f"map into {f.target} cannot be followed by a map out of {g.source}")
    for f, g in zip(sequence, sequence[1:]):
        if not g.compose(f).is_zero():
            return False
        if f.image_lattice() != g.kernel_lattice():
            return False
    return True


# ---------------------------------------------------------------------------
# tensoring with Z/n


def _tensor_layout(group: FgAbGroup, n: int) -> tuple[list[int], list[int]]:
    """Coordinate order and moduli of ``group (x) Z/n`` in canonical form."""
    torsion_coords = [group.rank + i for i, d in enumerate(group.torsion) if gcd(d, n) > 1]
    keep = torsion_coords + (list(range(group.rank)) if n > 1 else [])
    moduli = [gcd(group.moduli[c], n) if group.moduli[c] else n for c in keep]
    return keep, moduli


def tensor_cyclic(obj: Union[FgAbGroup, GroupMap], n: int):
    """``obj (x) Z/n`` for a group or a homomorphism."""
    if n < 2:
        raise ValueError("tensoring needs n >= 2")
    if isinstance(obj, FgAbGroup):
        _, moduli = _tensor_layout(obj, n)
        return FgAbGroup(torsion=tuple(moduli))
    src_keep, _ = _tensor_layout(obj.source, n)
    tgt_keep, _ = _tensor_layout(obj.target, n)
    mat = tuple(tuple(obj.matrix[i][j] for j in src_keep) for i in tgt_keep)
    return GroupMap(tensor_cyclic(obj.source, n), tensor_cyclic(obj.target, n), mat)


def tensor_element(group: FgAbGroup, element: Sequence[int], n: int) -> tuple[int, ...]:
    x = group.reduce(element)
    keep, moduli = _tensor_layout(group, n)
    return tuple(x[c] % d for c, d in zip(keep, moduli))


def element_order(group: FgAbGroup, element: Sequence[int]) -> int | None:
    """Order of an element, ``None`` if infinite."""
    x = group.reduce(element)
    orders = []
    for xi, d in zip(x, group.moduli):
        if d == 0:
            if xi:
                return None
            continue
        orders.append(d // gcd(xi, d))
    return lcm(*orders) if orders else 1


def element_order_after_tensor(f: Union[GroupMap, FgAbGroup], element: Sequence[int], n: int) -> int:
    """Order of ``element`` (in the target of ``f``) after tensoring with ``Z/n``."""
    group = f.target if isinstance(f, GroupMap) else f
    t = tensor_element(group, element, n)
    return element_order(tensor_cyclic(group, n), t)


# ---------------------------------------------------------------------------
# enumeration and the constraint solver


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_groups_of_order(n: int) -> list[FgAbGroup]:
    """All abelian groups of order ``n``, one per isomorphism class."""
    fac = sorted(_factor(n).items())
    choices = [[(p, part) for part in _partitions(e)] for p, e in fac]
    groups = []
    for combo in product(*choices):
        width = max((len(part) for _, part in combo), default=0)
        # invariant factors: i-th largest parts of every prime multiply together
        factors = [prod(p ** (part[i] if i < len(part) else 0) for p, part in combo) for i in range(width)]
        groups.append(FgAbGroup(torsion=tuple(sorted(d for d in factors if d > 1))))
    return groups


def finite_abelian_groups(bound: int) -> list[FgAbGroup]:
    return [g for n in range(1, bound + 1) for g in abelian_groups_of_order(n)]


@dataclass(frozen=True)
class EmbedsIn:
    """The group is isomorphic to a subgroup of ``Z/a``."""

    a: int

    def holds(self, g: FgAbGroup) -> bool:
        return g.rank == 0 and g.is_cyclic() and self.a % (g.order or 1) == 0


@dataclass(frozen=True)
class TensorIsomorphic:
    """``T (x) Z/n`` is isomorphic to ``H``."""

    n: int
    h: FgAbGroup

    def holds(self, g: FgAbGroup) -> bool:
        return tensor_cyclic(g, self.n) == self.h


@dataclass(frozen=True)
class OrderAtMost:
    bound: int

    def holds(self, g: FgAbGroup) -> bool:
        return g.order is not None and g.order <= self.bound


DEFAULT_ORDER_BOUND = 64

Constraint = Union[EmbedsIn, TensorIsomorphic, OrderAtMost]


def solve_torsion_constraints(constraints: Sequence[Constraint]) -> list[FgAbGroup]:
    """Finite abelian groups satisfying every constraint, in enumeration order.

    The search runs over all groups of order at most the ``OrderAtMost``
    bound (``DEFAULT_ORDER_BOUND`` if none is given).
    """
    if not constraints:
        raise ValueError("refusing an empty constraint list: the search would be unbounded")
    bounds = [c.bound for c in constraints if isinstance(c, OrderAtMost)]
    bound = min(bounds) if bounds else DEFAULT_ORDER_BOUND
    return [g for g in finite_abelian_groups(bound) if all(c.holds(g) for c in constraints)]


def parse_constraint(text: str) -> Constraint:
    """``embeds-in:4``, ``tensor-iso:2:Z/2`` or ``max-order:64``."""
    kind, _, rest = text.partition(":")
    if kind == "embeds-in":
        return EmbedsIn(int(rest))
    if kind == "tensor-iso":
        n, _, h = rest.partition(":")
        return TensorIsomorphic(int(n), FgAbGroup.parse(h))
    if kind == "max-order":
        return OrderAtMost(int(rest))
    raise ValueError(f"unknown constraint {text!r}")
