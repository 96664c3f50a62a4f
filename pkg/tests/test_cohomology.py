import numpy as np
import pytest

from doublet.cohomology import (Cochain1, Cocycle2, classes_up_to_symmetry, coboundary, commutator_character,
                                homomorphisms_to_roots, is_coboundary, schur_multiplier_order,
                                second_cohomology, zero_cocycle)
from doublet.groups import build_group, subgroup_classes
from doublet.products import product_group


@pytest.mark.parametrize("name,structure", [
    ("C1", ()), ("C2", ()), ("C4", ()), ("S3", ()), ("Q8", ()),
    ("C2xC2", (2,)), ("D4", (2,)), ("A4", (2,)), ("S4", (2,)),
    ("C2xC2xC2", (2, 2, 2)), ("C4xC4", (4,)), ("C3xC3", (3,)), ("C2xC4", (2,)),
])
def test_schur_multipliers(name, structure):
    G = build_group(name)
    H = second_cohomology(G.whole())
    assert H.structure == structure
    assert schur_multiplier_order(G) == int(np.prod(structure)) if structure else 1


def test_representatives_are_cocycles_and_distinct():
    G = build_group("C2xC2xC2")
    H = second_cohomology(G.whole())
    reps = H.representatives
    assert len(reps) == 8 and reps[0].is_zero()
    seen = set()
    for gamma in reps:
        assert gamma.is_cocycle() and gamma.is_normalised()
        seen.add(H.class_of(gamma))
    assert len(seen) == 8


def test_coboundaries_are_trivial():
    G = build_group("D4")
    S = G.whole()
    rng = np.random.default_rng(0)
    vals = rng.integers(0, 64, size=8)
    vals[0] = 0
    db = coboundary(Cochain1(S, 64, vals))
    assert db.is_cocycle()
    H = second_cohomology(S)
    assert H.class_of(db) == (0,)
    gamma = H.representatives[1]
    assert H.class_of(gamma + db) == H.class_of(gamma)
    assert is_coboundary(db) is not None
    assert is_coboundary(gamma) is None


def test_coboundary_witness_needs_square_modulus():
    G = build_group("C2")
    t = np.zeros((2, 2), dtype=np.int64)
    t[1, 1] = 1  # gamma(a, a) = -1
    gamma = Cocycle2(G.whole(), 2, t)
    assert gamma.is_cocycle()
    c = is_coboundary(gamma)
    assert c is not None and c.modulus == 4
    assert coboundary(c).same_values(gamma)


def test_commutator_pairing_of_nontrivial_class():
    G = build_group("C2xC2")
    gamma = second_cohomology(G.whole()).representatives[1]
    chi = commutator_character(gamma, 1)
    assert any(v != 0 for v in chi.values())


def test_homomorphisms_to_roots():
    G = build_group("S3")
    assert len(homomorphisms_to_roots(G.whole(), 6)) == 2
    assert len(homomorphisms_to_roots(build_group("C2xC2").whole(), 2)) == 4


def test_s3xs3_subgroup_cohomology():
    G = build_group("S3")
    GQ = product_group(G, G)
    nontrivial = [(U.order, second_cohomology(U).order) for U in subgroup_classes(GQ)
                  if second_cohomology(U).order > 1]
    assert sorted(nontrivial) == [(4, 2), (9, 3), (12, 2), (12, 2), (18, 3), (36, 2)]


def test_symmetry_orbits():
    G = build_group("S3")
    GQ = product_group(G, G)
    by_order = {}
    for U in subgroup_classes(GQ):
        by_order.setdefault(U.order, []).append(U)
    A3xA3 = by_order[9][0]
    assert [len(o) for _, o in classes_up_to_symmetry(A3xA3)] == [1, 2]
    C2xC2 = by_order[4][0]
    assert [len(o) for _, o in classes_up_to_symmetry(C2xC2)] == [1, 1]


def test_zero_cocycle():
    S = build_group("S3").whole()
    z = zero_cocycle(S)
    assert z.is_zero() and z.is_cocycle() and z.modulus == 6
