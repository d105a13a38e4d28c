from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from projplane import classify as C
from projplane.checks import is_equivalence, model_grid
from projplane.errors import DimensionError

M = C.ModelDescriptor
odd = st.integers(-500, 500).map(lambda k: 2 * k + 1)


def p2m_closed_form(m, pm):
    return (45 + pm * pm) / 7 if m == 4 else (14175 + 19 * pm * pm) / 381


# ---- descriptors ----------------------------------------------------------


def test_descriptor_validation():
    with pytest.raises(ValueError):
        M(4, 2, 0)
    with pytest.raises(ValueError):
        M(2, 3, 0)
    with pytest.raises(ValueError):
        M(4, 1, 0, C.Kind.CHERN)
    with pytest.raises(DimensionError):
        M(6, 1, 0)
    assert M(8, 7, 5).s == 1


def test_names():
    assert M(4, 1, 0).name == M(4, -1, 0).name == "HP^2"
    assert M(8, 7, 0).name == "OP^2"
    assert M(2).name == "CP^2" and M.chern().name == "Ch^4"
    assert M(4, 3, 0).name is None


# ---- cohomology and bundles -----------------------------------------------


def test_thom_cohomology():
    rep = C.thom_cohomology(4, 1)
    assert (rep.relation, rep.euler_characteristic, rep.signature) == ("y4^2 = y8", 3, 1)
    assert rep.stiefel_whitney == "1 + y4 + y4^2"
    empty = C.thom_cohomology(4, 0)
    assert empty.relation == "y4^2 = 0" and empty.signature is None and empty.euler_characteristic is None
    assert C.thom_cohomology(8, -1) == C.thom_cohomology(8, 1)
    assert C.thom_cohomology(2, 3).relation == "y2^2 = 3*y4"


@pytest.mark.parametrize(
    "bundle, expected",
    [
        (C.BundleDescriptor(4, 1, 2, 0), True),
        (C.BundleDescriptor(4, 1, 4, 0), False),
        (C.BundleDescriptor(8, 1, 6, 0), True),
        (C.BundleDescriptor(8, 1, F(6, 7), 0), True),
        (C.BundleDescriptor(8, 1, 1, 0), False),
        (C.BundleDescriptor(2, 5, None, 1), True),
    ],
)
def test_bundle_admissible(bundle, expected):
    assert C.bundle_admissible(bundle) is expected


@settings(max_examples=100, deadline=None)
@given(odd, st.sampled_from([4, 8]), st.integers(0, 3))
def test_model_bundles_are_admissible(r, m, s):
    d = M(m, r, s)
    assert C.bundle_admissible(C.model_bundle(d))


def test_pontrjagin_ranges():
    assert C.pontrjagin_range(1, "VECT").generator == 2
    assert C.pontrjagin_range(2, "VECT").generator == 6
    assert C.pontrjagin_range(1, "TOP").generator == 2
    assert C.pontrjagin_range(2, "TOP").generator == F(6, 7)
    assert F(12, 7) in C.pontrjagin_range(2, "TOP") and 3 not in C.pontrjagin_range(2, "VECT")
    with pytest.raises(DimensionError):
        C.pontrjagin_range(3, "VECT")


# ---- invariants -----------------------------------------------------------


def test_quaternionic_plane():
    rep = C.model_invariants(M(4, 1, 0))
    assert (rep.p_m, rep.p_2m, rep.a_hat, rep.psc) == (2, 7, 0, True)
    assert rep.diff == C.StructureCount(True, 2)


def test_octonionic_plane():
    rep = C.model_invariants(M(8, 7, 0))
    assert (rep.p_m, rep.p_2m, rep.a_hat, rep.psc) == (6, 39, 0, True)


def test_complex_plane_and_chern():
    cp2, ch = C.model_invariants(M(2)), C.model_invariants(M.chern())
    assert cp2.p_2m == ch.p_2m == 3
    assert cp2.p_m is None
    assert ch.pl == ch.diff == C.StructureCount(False, 0)
    assert ch.psc is False and ch.ks_or_kappa == 1
    assert cp2.caveats and cp2.psc is None
    assert C.homotopy_equivalent(M(2), M.chern()) and not C.homeomorphic(M(2), M.chern())


def test_non_smoothable_model():
    rep = C.model_invariants(M(4, 3, 0))
    assert rep.a_hat == F(-1, 28)
    assert not rep.diff.admits


@settings(max_examples=150, deadline=None)
@given(odd, st.integers(0, 3))
def test_p2m_matches_closed_forms(r, s):
    for m in (4, 8):
        rep = C.model_invariants(M(m, r, s))
        assert rep.p_2m == p2m_closed_form(m, rep.p_m)
        assert C.signature_value(m, rep.p_m, rep.p_2m) == 1


@pytest.mark.parametrize("t", range(-200, 201))
def test_a_hat_closed_form(t):
    m4 = C.model_invariants(M(4, 1 + 2 * t, 0))
    assert m4.a_hat == F(-t * (1 + t), 56)
    assert m4.diff.admits == (m4.a_hat.denominator == 1)
    m8 = C.model_invariants(M(8, 7 * (1 + 2 * t), 0))
    assert m8.a_hat == F(-t * (1 + t), 16256)
    assert m8.diff.admits == (m8.a_hat.denominator == 1)


def test_diff_residues():
    assert C.diff_residues(4).residues == {0, 7, 48, 55} and C.diff_residues(4).modulus == 56
    assert C.diff_residues(8).residues == {0, 127, 16128, 16255} and C.diff_residues(8).modulus == 16256


def test_structures():
    assert C.pl_structure(M(4, 5, 1)) == C.StructureCount(False, 0)
    assert C.pl_structure(M(8, 9, 3)) == C.StructureCount(True, 1)
    assert C.pl_structure(M.chern()) == C.StructureCount(False, 0)
    assert C.diff_structure(M(4, 15, 0)) == C.StructureCount(True, 2)
    assert C.diff_structure(M(4, 3, 0)) == C.StructureCount(False, 0)
    assert C.diff_structure(M(8, 7, 0)) == C.StructureCount(True, 2)
    # r not of the form 7(1 + 2u): no vector bundle structure
    assert C.diff_structure(M(8, 9, 0)) == C.StructureCount(False, 0)


def test_q8_kappa_and_bordism():
    assert C.model_invariants(M(8, 7, 1)).q8_kappa == 3
    assert C.bordism_invariants(M(4, 1, 0)) == (4, 0)
    assert C.bordism_invariants(M(8, 7, 0)) == (36, 0)
    assert C.bordism_invariants(M(8, 7, 2)) == C.bordism_invariants(M(8, 7, 2))
    # (6r/7)^2 = (36/49) r^2
    assert C.bordism_invariants(M(8, 3, 0))[0] == F(36, 49) * 9


# ---- equivalences ---------------------------------------------------------


def test_homeomorphism_examples():
    assert C.homeomorphic(M(4, 1, 0), M(4, -1, 0))
    assert C.homeomorphic(M(8, 7, 1), M(8, -7, 3))
    assert not C.homeomorphic(M(4, 1, 0), M(4, 1, 1))
    assert not C.homeomorphic(M(8, 7, 1), M(8, -7, 1))
    with pytest.raises(DimensionError):
        C.homeomorphic(M(4), M(8, 7))


def test_homotopy_examples():
    assert C.homotopy_equivalent(M(4, 1, 0), M(4, 25, 0))
    assert C.homotopy_equivalent(M(4, 1, 0), M(4, 11, 1))
    assert not C.homotopy_equivalent(M(8, 7, 0), M(8, 7, 1))


def homotopy_congruence(a, b):
    """The defining congruence, written out independently."""
    n, c = (24, 12) if a.m == 4 else (240, 60)
    x, y = (a.r + c * a.s) % n, (b.r + c * b.s) % n
    return x == y or x == (-y) % n


def test_homotopy_predicate_matches_congruence():
    grid = model_grid()
    for a, b in product(grid, repeat=2):
        if a.m == b.m:
            assert C.homotopy_equivalent(a, b) == homotopy_congruence(a, b)


def test_homotopy_counts():
    assert [C.count_homotopy_types(m) for m in (2, 4, 8)] == [1, 6, 60]
    for m in (4, 8):
        orbits, classes = C.homotopy_type_counts(m)
        assert orbits == classes


def brute_orbits(k):
    """Orbits of j -> -1 - j on Z/k via union of explicit pairs."""
    return len({frozenset({j, (-1 - j) % k}) for j in range(k)})


@pytest.mark.parametrize("k, expected", [(1, 1), (12, 6), (120, 60), (7, 4)])
def test_orbit_counting(k, expected):
    assert C._involution_orbits(k) == brute_orbits(k) == expected


def test_grid_implications():
    grid = model_grid()
    for a, b in product(grid, repeat=2):
        if a.m != b.m:
            continue
        if C.homeomorphic(a, b):
            assert C.homotopy_equivalent(a, b)
        if C.homotopy_equivalent(a, b):
            assert C.thom_cohomology(a.m, 1) == C.thom_cohomology(b.m, 1)
        if not C.homeomorphic(a, b):
            assert C.bordism_invariants(a) != C.bordism_invariants(b)


def test_equivalence_relations():
    grid = model_grid()
    for m in (4, 8):
        sub = [d for d in grid if d.m == m]
        assert is_equivalence(sub, C.homeomorphic)
        assert is_equivalence(sub, C.homotopy_equivalent)
        assert is_equivalence(sub, lambda a, b: C.bordism_invariants(a) == C.bordism_invariants(b))


def test_is_equivalence_detects_failures():
    items = [0, 1, 2]
    assert not is_equivalence(items, lambda a, b: abs(a - b) <= 1)  # not transitive
    assert not is_equivalence(items, lambda a, b: a <= b)  # not symmetric
    assert not is_equivalence(items, lambda a, b: a != b)  # not reflexive


# ---- enumeration and splitting --------------------------------------------


def test_enumeration():
    rows = C.enumerate_models(4, [1, 3]).rows
    assert [(r.model.r, r.model.s) for r in rows] == [(1, 0), (1, 1), (3, 0), (3, 1)]
    eight = C.enumerate_models(8, [7]).rows
    assert len(eight) == 4 and {r.pm_squared for r in eight} == {36}
    two = C.enumerate_models(2)
    assert [r.name for r in two.rows] == ["CP^2", "Ch^4"]
    rejected = C.enumerate_models(4, [1, 2, 3]).rejected
    assert [r for r, _ in rejected] == [2]


def test_splitting():
    assert C.verify_splitting(4) and C.verify_splitting(8)
    assert not C.verify_splitting(4, (2, 0))
    assert not C.verify_splitting(8, (2, 0))


def test_torsion_of_btop():
    assert str(C.torsion_of_btop(4)) == "Z/2"
    assert str(C.torsion_of_btop(8)) == "Z/4"
