import pytest

from doublet.groups import (CATALOG_NAMES, CapExceeded, GroupError, build_group, centralizer, check_cap,
                            commuting_pairs, conjugacy_classes, cycle_string, diagonal, find_conjugator,
                            goursat_compose, goursat_decompose, kernels, normalizer, parse_permutation,
                            product_subgroup, projections, subgroup_classes, subgroups_of)
from doublet.products import product_group


def test_s3_element_order_and_classes():
    G = build_group("S3")
    assert [G.label(g) for g in range(6)] == ["e", "(123)", "(12)", "(132)", "(23)", "(13)"]
    reps = [G.label(g) for g, _ in conjugacy_classes(G)]
    assert reps == ["e", "(123)", "(12)"]
    assert [len(m) for _, m in conjugacy_classes(G)] == [1, 2, 3]


@pytest.mark.parametrize("name,order,classes", [
    ("C1", 1, 1), ("C2", 2, 2), ("C3", 3, 3), ("C4", 4, 4), ("A3", 3, 3), ("C2xC2", 4, 4),
    ("S3", 6, 3), ("D4", 8, 5), ("Q8", 8, 5), ("A4", 12, 4), ("S4", 24, 5),
])
def test_catalog(name, order, classes):
    G = build_group(name)
    assert G.order == order
    assert len(conjugacy_classes(G)) == classes
    assert G.check_associative()


def test_catalog_names_all_build():
    for name in CATALOG_NAMES:
        assert build_group(name).order >= 1


def test_metacyclic_and_perm_descriptors():
    assert build_group("C3:2").order == 6
    assert build_group("C4:3").order == 8
    assert build_group("C5:2").order == 20
    G = build_group("perm: (1 2 3), (1 2)")
    assert G.order == 6 and not G.is_abelian()
    with pytest.raises(GroupError):
        build_group("Q7")
    with pytest.raises(GroupError):
        build_group("C4:2")


def test_product_descriptor():
    G = build_group("S3xC2")
    assert G.order == 12 and G.factors is not None


def test_permutation_parsing_round_trip():
    p = parse_permutation("(1 3)(2 4)")
    assert p == (2, 3, 0, 1)
    assert cycle_string(p) == "(13)(24)"


def test_centralizers_and_normalizers():
    G = build_group("S3")
    assert centralizer(G, 1).order == 3
    assert centralizer(G, 2).order == 2
    A3 = [S for S in subgroup_classes(G) if S.order == 3][0]
    assert normalizer(A3).order == 6
    C2 = [S for S in subgroup_classes(G) if S.order == 2][0]
    assert normalizer(C2).order == 2


def test_commuting_pairs_count():
    # |{(f,g) : fg = gf}| = |G| * (number of classes)
    for name in ("S3", "D4", "Q8", "A4"):
        G = build_group(name)
        assert len(commuting_pairs(G)) == G.order * len(conjugacy_classes(G))


@pytest.mark.parametrize("name,count", [("S3", 4), ("D4", 8), ("Q8", 6), ("A4", 5), ("S4", 11), ("C2xC2", 5)])
def test_subgroup_class_counts(name, count):
    assert len(subgroup_classes(build_group(name))) == count


def test_subgroups_of_and_conjugators():
    G = build_group("S3")
    assert len(subgroups_of(G.whole())) == 6
    a = G.subgroup([0, 2])
    b = G.subgroup([0, 4])
    x = find_conjugator(a, b)
    assert x is not None and a.conjugate(x) == b
    assert find_conjugator(a, G.subgroup([0, 1, 3])) is None


def test_goursat_round_trip_s3xs3():
    G = build_group("S3")
    GQ = product_group(G, G)
    classes = subgroup_classes(GQ)
    assert len(classes) == 22
    for U in classes:
        d = goursat_decompose(U)
        assert goursat_compose(d, GQ) == U
        M, N = projections(U)
        K1, K2 = kernels(U)
        assert U.order == M.order * K2.order == N.order * K1.order


def test_diagonal_and_product_subgroups():
    G = build_group("S3")
    GQ = product_group(G, G)
    D = diagonal(GQ, G.whole())
    assert D.order == 6 and kernels(D)[0].order == 1
    P = product_subgroup(GQ, G.whole(), G.trivial_subgroup())
    assert P.order == 6 and projections(P)[1].order == 1


def test_caps():
    with pytest.raises(CapExceeded) as e:
        check_cap("thing", 65, 64)
    assert e.value.cap == 64
    check_cap("thing", 64, 64)


def test_env_cap(monkeypatch):
    from doublet.groups import enumeration_cap
    monkeypatch.setenv("DOUBLET_SIZE_CAP", "100")
    assert enumeration_cap() == 100
