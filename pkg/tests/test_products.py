import numpy as np
import pytest

from doublet.algebras import check_datum, identify_algebra
from doublet.groups import build_group
from doublet.modular import s_matrix, t_matrix
from doublet.cyclotomic import CycloMatrix
from doublet.products import build_parent_graph, maximal_algebras, product_group, ribbon_equivalences


def invariant_commutes(G, Q, m):
    M = CycloMatrix.from_entries(m)
    SG, SQ = s_matrix(G), s_matrix(Q)
    TG, TQ = t_matrix(G), t_matrix(Q)
    if not SG @ M == M @ SQ:
        return False
    return all(TG[i] == TQ[j] for i, row in enumerate(m) for j, v in enumerate(row) if v)


@pytest.fixture(scope="module")
def s3_algebras():
    G = build_group("S3")
    return G, maximal_algebras(G, G)


def test_count_and_parents_are_valid(s3_algebras):
    G, algs = s3_algebras
    assert len(algs) == 28
    for a in algs:
        assert check_datum(a.left_parent) == [] and check_datum(a.right_parent) == []


def test_invariants_commute_with_modular_data(s3_algebras):
    G, algs = s3_algebras
    for a in algs:
        m = a.invariant.m
        assert m[0][0] == 1
        assert invariant_commutes(G, G, m), a.label


def test_diagonal_gives_identity(s3_algebras):
    _, algs = s3_algebras
    d = [a for a in algs if a.label == "δ(S3)"]
    assert len(d) == 1
    assert np.array_equal(np.array(d[0].invariant.m), np.eye(8, dtype=int))


def test_labels_unique(s3_algebras):
    _, algs = s3_algebras
    labels = [a.label for a in algs]
    assert len(set(labels)) == len(labels)


def test_parent_graph_s3():
    G = build_group("S3")
    g = build_parent_graph(G, G)
    assert len(g.vertices) == 8 and len(g.edges) == 28
    assert g.components == [[0, 1, 3, 5], [2, 6], [4], [7]]
    assert [v.label for v in g.vertices] == ["(e,e)", "(C2,C2)", "(C2,e)", "(A3,A3)", "(A3,e)",
                                             "(S3,S3)", "(S3,A3)", "(S3,e)"]


def test_parent_graph_mixed_sides():
    G, Q = build_group("C2"), build_group("C3")
    g = build_parent_graph(G, Q)
    assert {v.side for v in g.vertices} == {"G", "Q"}
    assert len(g.edges) == len(maximal_algebras(G, Q))
    for e in g.edges:
        assert g.vertices[e.source].side == "G" and g.vertices[e.target].side == "Q"


def test_equivalences():
    C2 = build_group("C2")
    assert [e.label for e in ribbon_equivalences(C2, C2)] == ["δ(C2)", "(C2×C2,γ)"]
    assert len(maximal_algebras(C2, C2)) == 6
    S3 = build_group("S3")
    assert [e.label for e in ribbon_equivalences(S3, S3)] == ["δ(S3)", "(δ(C2)(A3×A3),γ)"]
    assert ribbon_equivalences(build_group("C4"), build_group("C2xC2")) == []
    assert ribbon_equivalences(C2, build_group("C3")) == []


def test_equivalence_invariants_are_permutations():
    S3 = build_group("S3")
    for e in ribbon_equivalences(S3, S3):
        from doublet.algebras import modular_invariant
        m = np.array(modular_invariant(e.U, e.gamma).m)
        assert (m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 1).all()


def test_product_group_cached():
    G = build_group("S3")
    assert product_group(G, G) is product_group(G, G)


@pytest.mark.parametrize("a,b", [("S3", "S3"), ("C4", "C4"), ("C4", "C2xC2"), ("D4", "Q8"), ("C2xC2", "C2xC2")])
def test_onto_subgroups_match_full_lattice(a, b):
    from doublet.groups import kernels, projections, subgroup_classes
    from doublet.products import _onto_subgroups
    G, Q = build_group(a), build_group(b)
    want = []
    for U in subgroup_classes(product_group(G, Q)):
        M, N = projections(U)
        K1, K2 = kernels(U)
        if (M.order == G.order and N.order == Q.order and K1.order == K2.order
                and K1.as_group.is_abelian() and K2.as_group.is_abelian()):
            want.append(U)
    got = _onto_subgroups(G, Q)
    assert [U.members for U in got] == [U.members for U in want]


def test_a4_equivalences_beyond_product_cap():
    # |A4 x A4| = 144 exceeds the enumeration cap; the equivalence search never needs it
    A4 = build_group("A4")
    labels = [e.label for e in ribbon_equivalences(A4, A4)]
    assert len(labels) == 12 and len(set(labels)) == 12
    assert labels[:4] == ["δ(A4)", "(δ(A4),γ)", "δ_φ(A4)", "(δ_φ(A4),γ)"]
    assert sum(l.startswith("(δ_φ(A3)") for l in labels) == 4
