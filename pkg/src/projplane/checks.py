"""The reproduction suite behind ``projplane verify``.

Each check recomputes an arithmetic consequence of the classification and
compares it with the expected value exactly.  None of them proves a
theorem; they are consequence checks only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as F
from itertools import product
from typing import Callable, Iterable

from . import classify as C
from .abgroup import (
    EmbedsIn,
    OrderAtMost,
    TensorIsomorphic,
    Zmod,
    TRIVIAL,
    determinant,
    matmul,
    smith_normal_form,
    solve_torsion_constraints,
)
from .msq import GradedPoly, genus_polynomial, two_point_genus
from .series import PowerSeries, a_hat_series, dual_series, l_genus_series

KIND = "consequence check"

SERIES_TABLE = {
    "L": ("1", "1/3", "-1/45", "2/945", "-1/4725"),
    "Ahat": ("1", "-1/24", "7/5760", "-31/967680", "127/154828800"),
    "Ldual": ("1", "-1/3", "7/45", "-62/945", "127/4725"),
    "Ahatdual": ("1", "1/24", "-1/1440", "1/60480", "-1/2419200"),
}


def named_series(which: str, order: int) -> PowerSeries:
    if which == "L":
        return l_genus_series(order)
    if which == "Ahat":
        return a_hat_series(order)
    if which == "Ldual":
        return dual_series(l_genus_series(order))
    if which == "Ahatdual":
        return dual_series(a_hat_series(order))
    raise ValueError(f"unknown series {which!r}")


@dataclass(frozen=True)
class Check:
    criterion: int
    label: str
    run: Callable[[], bool]


@dataclass(frozen=True)
class Outcome:
    criterion: int
    label: str
    passed: bool
    detail: str = ""


def _poly(weight: int, terms: dict) -> GradedPoly:
    return GradedPoly(weight, {k: F(v) for k, v in terms.items()})


def check_series_tables() -> bool:
    return all(
        named_series(which, 4).coefficients == tuple(F(c) for c in expected)
        for which, expected in SERIES_TABLE.items()
    )


def genus_table() -> list[tuple[str, GradedPoly, GradedPoly]]:
    ell, ahat = l_genus_series(), a_hat_series()
    return [
        ("L4", genus_polynomial(ell, 1), _poly(1, {(1,): F(1, 3)})),
        ("Ahat4", genus_polynomial(ahat, 1), _poly(1, {(1,): F(-1, 24)})),
        ("L8", genus_polynomial(ell, 2), _poly(2, {(0, 1): F(7, 45), (2,): F(-1, 45)})),
        ("Ahat8", genus_polynomial(ahat, 2), _poly(2, {(0, 1): F(-4, 5760), (2,): F(7, 5760)})),
        (
            "L16",
            genus_polynomial(ell, 4).substitute_zero("p4", "p12"),
            _poly(4, {(0, 0, 0, 1): F(381, 14175), (0, 2): F(-19, 14175)}),
        ),
        (
            "Ahat16",
            genus_polynomial(ahat, 4).substitute_zero("p4", "p12"),
            _poly(4, {(0, 0, 0, 1): F(-12, 29030400), (0, 2): F(13, 29030400)}),
        ),
    ]


def check_genus_table() -> bool:
    return all(got == want for _, got, want in genus_table())


def random_genus_series(rng: random.Random, order: int = 4) -> PowerSeries:
    return PowerSeries([1] + [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)])


def two_point_agrees(f: PowerSeries, k: int) -> bool:
    full = genus_polynomial(f, 2 * k)
    others = [f"p{4 * j}" for j in range(1, 2 * k + 1) if j not in (k, 2 * k)]
    sparse = full.substitute_zero(*others)
    top, square = two_point_genus(f, k)
    return sparse == GradedPoly(2 * k, {(0,) * (2 * k - 1) + (1,): top, (0,) * (k - 1) + (2,): square})


def check_two_point(samples: int = 20, seed: int = 1) -> bool:
    rng = random.Random(seed)
    return all(two_point_agrees(random_genus_series(rng), k) for _ in range(samples) for k in (1, 2))


def check_torsion() -> bool:
    t4 = solve_torsion_constraints([EmbedsIn(2), TensorIsomorphic(2, Zmod(2)), OrderAtMost(64)])
    t8 = solve_torsion_constraints([EmbedsIn(4), TensorIsomorphic(4, Zmod(4)), OrderAtMost(64)])
    trivial = solve_torsion_constraints([EmbedsIn(1), OrderAtMost(64)])
    derived = [C.torsion_of_btop(4), C.torsion_of_btop(8)]
    return t4 == [Zmod(2)] and t8 == [Zmod(4)] and trivial == [TRIVIAL] and derived == [Zmod(2), Zmod(4)]


def check_splitting() -> bool:
    return C.verify_splitting(4) and C.verify_splitting(8) and not C.verify_splitting(4, (2, 0))


def check_residues() -> bool:
    return (
        C.diff_residues(4) == C.DiffResidues(4, 56, frozenset({0, 7, 48, 55}))
        and C.diff_residues(8) == C.DiffResidues(8, 16256, frozenset({0, 127, 16128, 16255}))
    )


def check_homotopy_counts() -> bool:
    for m, expected in ((2, 1), (4, 6), (8, 60)):
        orbits, classes = C.homotopy_type_counts(m)
        if not orbits == classes == expected == C.count_homotopy_types(m):
            return False
    return True


def check_spot_models() -> bool:
    hp2 = C.model_invariants(C.ModelDescriptor(4, 1, 0))
    op2 = C.model_invariants(C.ModelDescriptor(8, 7, 0))
    ok = (
        (hp2.p_m, hp2.p_2m, hp2.a_hat) == (2, 7, 0)
        and hp2.diff == C.StructureCount(True, 2)
        and hp2.psc is True
        and (op2.p_m, op2.p_2m, op2.a_hat) == (6, 39, 0)
        and op2.psc is True
    )
    rows = C.enumerate_models(2).rows
    names = [r.name for r in rows]
    chern = rows[1] if len(rows) == 2 else None
    return ok and names == ["CP^2", "Ch^4"] and chern is not None and not chern.diff.admits


def model_grid() -> list[C.ModelDescriptor]:
    """400 models: 200 in each of m = 4 and m = 8."""
    grid = [C.ModelDescriptor(4, r, s) for r in range(-99, 100, 2) for s in range(2)]
    grid += [C.ModelDescriptor(8, r, s) for r in range(-49, 50, 2) for s in range(4)]
    return grid


def check_signature_closure(grid: Iterable[C.ModelDescriptor] | None = None) -> bool:
    for d in grid if grid is not None else model_grid():
        rep = C.model_invariants(d)
        if C.signature_value(d.m, rep.p_m, rep.p_2m) != 1:
            return False
    return True


def _same_m_pairs(grid):
    for a, b in product(grid, repeat=2):
        if a.m == b.m:
            yield a, b


def check_bordism_separation(grid=None) -> bool:
    grid = grid if grid is not None else model_grid()
    inv = {d: C.bordism_invariants(d) for d in grid}
    return all(C.homeomorphic(a, b) or inv[a] != inv[b] for a, b in _same_m_pairs(grid))


def check_snf(samples: int = 200, seed: int = 7) -> bool:
    rng = random.Random(seed)
    for _ in range(samples):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        divisors, (u, v) = smith_normal_form(a)
        d = matmul(matmul(u, a), v)
        diag = [[divisors[i] if i == j and i < len(divisors) else 0 for j in range(cols)] for i in range(rows)]
        if d != diag or abs(determinant(u)) != 1 or abs(determinant(v)) != 1:
            return False
        nz = [x for x in divisors if x]
        if any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)) or divisors[len(nz):] != [0] * (len(divisors) - len(nz)):
            return False
    return True


def is_equivalence(items, related) -> bool:
    """Reflexive, symmetric and transitive, checked in O(n^2).

    Transitivity is tested by grouping each item with the first earlier
    item it relates to; a transitive relation must then relate every pair
    inside a group and no pair across groups.
    """
    items = list(items)
    reps: list = []
    group_of = {}
    for x in items:
        if not related(x, x):
            return False
        for i, rep in enumerate(reps):
            if related(x, rep):
                group_of[x] = i
                break
        else:
            group_of[x] = len(reps)
            reps.append(x)
    for a, b in product(items, repeat=2):
        if related(a, b) != related(b, a):
            return False
        if related(a, b) != (group_of[a] == group_of[b]):
            return False
    return True


def check_equivalence_axioms(grid=None) -> bool:
    grid = grid if grid is not None else model_grid()
    inv = {d: C.bordism_invariants(d) for d in grid}
    relations = (C.homeomorphic, C.homotopy_equivalent, lambda a, b: inv[a] == inv[b])
    for m in (4, 8):
        sub = [d for d in grid if d.m == m]
        if not all(is_equivalence(sub, rel) for rel in relations):
            return False
    return True


def check_property_suites() -> bool:
    grid = model_grid()
    return (
        check_signature_closure(grid)
        and check_bordism_separation(grid)
        and check_snf()
        and check_equivalence_axioms(grid)
    )


CHECKS: tuple[Check, ...] = (
    Check(1, "genus series and dual series coefficients to t^4", check_series_tables),
    Check(2, "L and A-hat polynomials in weights 1, 2 and sparse weight 4", check_genus_table),
    Check(3, "two-class formula agrees with the full polynomial on random series", check_two_point),
    Check(4, "torsion of pi_4(BTOP) and pi_8(BTOP) from embedding and tensor constraints", check_torsion),
    Check(5, "splitting row exact before and after tensoring; mutated map rejected", check_splitting),
    Check(6, "A-hat integrality residues mod 56 and mod 16256", check_residues),
    Check(7, "homotopy-type counts 1, 6, 60 by orbits and by invariants", check_homotopy_counts),
    Check(8, "HP^2, OP^2 and the two 4-dimensional manifolds", check_spot_models),
    Check(9, "signature closure, bordism separation, SNF and equivalence axioms", check_property_suites),
)


def run_checks(selected: Iterable[Check] | None = None) -> list[Outcome]:
    outcomes = []
    for c in CHECKS if selected is None else selected:
        try:
            passed, detail = bool(c.run()), ""
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        outcomes.append(Outcome(c.criterion, f"{KIND}: {c.label}", passed, detail))
    return outcomes


def format_table(outcomes: Iterable[Outcome]) -> str:
    lines = []
    for o in outcomes:
        line = f"[{'PASS' if o.passed else 'FAIL'}] {o.criterion:>2}  {o.label}"
        if o.detail:
            line += f"  ({o.detail})"
        lines.append(line)
    return "\n".join(lines)
