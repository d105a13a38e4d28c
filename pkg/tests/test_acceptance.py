"""Acceptance criteria, each checked exactly (no tolerances).

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import random
from fractions import Fraction as F
from itertools import product

import pytest

from projplane import classify as C
from projplane.abgroup import (
    EmbedsIn,
    OrderAtMost,
    TensorIsomorphic,
    Zmod,
    determinant,
    matmul,
    smith_normal_form,
    solve_torsion_constraints,
)
from projplane.checks import CHECKS, is_equivalence, model_grid, run_checks
from projplane.msq import GradedPoly, genus_polynomial, two_point_genus
from projplane.series import PowerSeries, a_hat_series, dual_series, l_genus_series

criterion = pytest.mark.criterion


def fr(*items):
    return tuple(F(x) for x in items)


@criterion(1, "series tables of L, A-hat and their duals to order 4")
def test_series_tables():
    ell, ahat = l_genus_series(4), a_hat_series(4)
    assert ell.coefficients == fr(1, "1/3", "-1/45", "2/945", "-1/4725")
    assert ahat.coefficients == fr(1, "-1/24", "7/5760", "-31/967680", "127/154828800")
    assert dual_series(ell).coefficients == fr(1, "-1/3", "7/45", "-62/945", "127/4725")
    assert dual_series(ahat).coefficients == fr(1, "1/24", "-1/1440", "1/60480", "-1/2419200")


@criterion(2, "six genus polynomials in weights 1, 2 and sparse weight 4")
def test_genus_table():
    ell, ahat = l_genus_series(), a_hat_series()
    p4, p8, p4sq, p16, p8sq = (1,), (0, 1), (2,), (0, 0, 0, 1), (0, 2)
    assert genus_polynomial(ell, 1) == GradedPoly(1, {p4: F(1, 3)})
    assert genus_polynomial(ahat, 1) == GradedPoly(1, {p4: F(-1, 24)})
    assert genus_polynomial(ell, 2) == GradedPoly(2, {p8: F(7, 45), p4sq: F(-1, 45)})
    assert genus_polynomial(ahat, 2) == GradedPoly(2, {p8: F(-4, 5760), p4sq: F(7, 5760)})
    l16 = genus_polynomial(ell, 4).substitute_zero("p4", "p12")
    a16 = genus_polynomial(ahat, 4).substitute_zero("p4", "p12")
    assert l16 == GradedPoly(4, {p16: F(381, 14175), p8sq: F(-19, 14175)})
    assert a16 == GradedPoly(4, {p16: F(-12, 29030400), p8sq: F(13, 29030400)})


@criterion(3, "two-class formula equals the zero-substituted full polynomial on 20 random series")
def test_two_point_formula():
    rng = random.Random(2024)
    for _ in range(20):
        f = PowerSeries([1] + [F(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(4)])
        for k in (1, 2):
            full = genus_polynomial(f, 2 * k)
            sparse = full.substitute_zero(*(f"p{4 * j}" for j in range(1, 2 * k + 1) if j not in (k, 2 * k)))
            top, square = two_point_genus(f, k)
            expected = {(0,) * (2 * k - 1) + (1,): top, (0,) * (k - 1) + (2,): square}
            assert sparse == GradedPoly(2 * k, expected)


@criterion(4, "torsion constraint solver gives exactly Z/2 and Z/4")
def test_torsion_deductions():
    t4 = solve_torsion_constraints([EmbedsIn(2), TensorIsomorphic(2, Zmod(2)), OrderAtMost(64)])
    t8 = solve_torsion_constraints([EmbedsIn(4), TensorIsomorphic(4, Zmod(4)), OrderAtMost(64)])
    assert t4 == [Zmod(2)]
    assert t8 == [Zmod(4)]


@criterion(5, "splitting rows exact for m = 4, 8; mutated map rejected")
def test_splitting():
    assert C.verify_splitting(4) is True
    assert C.verify_splitting(8) is True
    assert C.verify_splitting(4, (2, 0)) is False


@criterion(6, "smoothability residues mod 56 and mod 16256")
def test_residues():
    r4, r8 = C.diff_residues(4), C.diff_residues(8)
    assert (r4.modulus, r4.residues) == (56, {0, 7, 48, 55})
    assert (r8.modulus, r8.residues) == (16256, {0, 127, 16128, 16255})
    # the same sets straight from the congruence
    assert {t for t in range(56) if t * (t + 1) % 56 == 0} == {0, 7, 48, 55}
    assert {u for u in range(16256) if u * (u + 1) % 16256 == 0} == {0, 127, 16128, 16255}


@criterion(7, "homotopy-type counts 1, 6, 60 with both methods agreeing")
def test_homotopy_counts():
    for m, expected in ((2, 1), (4, 6), (8, 60)):
        orbits, classes = C.homotopy_type_counts(m)
        assert orbits == classes == expected
        assert C.count_homotopy_types(m) == expected


@criterion(8, "spot checks on HP^2, OP^2 and the 4-dimensional manifolds")
def test_model_spot_checks():
    hp2 = C.model_invariants(C.ModelDescriptor(4, 1, 0))
    assert (hp2.p_m, hp2.p_2m) == (2, 7)
    assert hp2.a_hat == 0
    assert hp2.diff.admits and hp2.diff.count == 2
    assert hp2.psc is True
    op2 = C.model_invariants(C.ModelDescriptor(8, 7, 0))
    assert (op2.p_m, op2.p_2m) == (6, 39)
    assert op2.a_hat == 0 and op2.psc is True
    rows = C.enumerate_models(2).rows
    assert [(r.model.kind, r.name) for r in rows] == [(C.Kind.MODEL, "CP^2"), (C.Kind.CHERN, "Ch^4")]
    assert rows[1].diff.admits is False


GRID = model_grid()


@criterion(9, "property suites: signature closure, bordism separation, SNF, equivalence axioms")
def test_signature_closure_on_grid():
    assert len(GRID) == 400
    for d in GRID:
        rep = C.model_invariants(d)
        assert C.signature_value(d.m, rep.p_m, rep.p_2m) == 1


@criterion(9, "property suites: signature closure, bordism separation, SNF, equivalence axioms")
def test_bordism_separation_on_grid():
    inv = {d: C.bordism_invariants(d) for d in GRID}
    for a, b in product(GRID, repeat=2):
        if a.m == b.m and not C.homeomorphic(a, b):
            assert inv[a] != inv[b]


@criterion(9, "property suites: signature closure, bordism separation, SNF, equivalence axioms")
def test_snf_on_random_matrices():
    rng = random.Random(99)
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        divisors, (u, v) = smith_normal_form(a)
        diag = [[divisors[i] if i == j else 0 for j in range(cols)] for i in range(rows)]
        assert matmul(matmul(u, a), v) == diag
        assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
        nz = [d for d in divisors if d]
        assert all(y % x == 0 for x, y in zip(nz, nz[1:]))


@criterion(9, "property suites: signature closure, bordism separation, SNF, equivalence axioms")
def test_equivalence_axioms_on_grid():
    inv = {d: C.bordism_invariants(d) for d in GRID}
    for m in (4, 8):
        sub = [d for d in GRID if d.m == m]
        assert is_equivalence(sub, C.homeomorphic)
        assert is_equivalence(sub, C.homotopy_equivalent)
        assert is_equivalence(sub, lambda a, b: inv[a] == inv[b])


@criterion(10, "verify reports consequence checks only, never proofs")
def test_verify_labels():
    outcomes = run_checks()
    assert len(outcomes) == len(CHECKS)
    assert {o.criterion for o in outcomes} == set(range(1, 10))
    for o in outcomes:
        assert o.label.startswith("consequence check:")
        assert "proof" not in o.label.lower() and "theorem" not in o.label.lower()
        assert o.passed, o.label
