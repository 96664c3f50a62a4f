import pytest

from doublet.algebras import (AlgebraDatum, check_datum, classify_algebras, decompose, group_name,
                              identify_algebra, is_trivialising, algebra_character, trivialising_algebras,
                              twist_check)
from doublet.groups import build_group


def test_s3_classification():
    G = build_group("S3")
    algs = classify_algebras(G)
    assert [a.label for a in algs] == ["e⊳e", "C2⊳C2", "C2⊳e", "A3⊳A3", "A3⊳e", "S3⊳S3", "S3⊳A3", "S3⊳e"]
    assert [is_trivialising(a) for a in algs] == [True, True, False, True, False, True, False, False]
    for a in algs:
        assert check_datum(a) == []
        assert twist_check(a)


@pytest.mark.parametrize("name,count", [("C1", 1), ("C2", 3), ("S3", 8), ("C2xC2", 16), ("D4", 38)])
def test_algebra_counts(name, count):
    assert len(classify_algebras(build_group(name))) == count


def test_identify_is_conjugation_invariant():
    G = build_group("S3")
    for i, a in enumerate(classify_algebras(G)):
        for x in range(G.order):
            assert identify_algebra(a.conjugate(x)) == i


def test_trivialising_characters_decompose():
    G = build_group("S3")
    for a in trivialising_algebras(G):
        mult = decompose(algebra_character(a.H, a.gamma))
        assert mult[0] == 1  # connected
        assert all(m >= 0 for m in mult)


def test_broken_datum_reported():
    G = build_group("S3")
    a = classify_algebras(G)[6]  # S3⊳A3
    eps = a.eps.copy()
    eps[1, 1] = (eps[1, 1] + 1) % a.modulus
    bad = AlgebraDatum(a.H, a.F, a.gamma, eps, a.modulus)
    assert check_datum(bad) != []


@pytest.mark.parametrize("name,label", [("C1", "e"), ("C2", "C2"), ("C3", "C3"), ("S3", "S3"),
                                        ("C2xC2", "C2xC2"), ("Q8", "Q8"), ("D4", "D4"), ("A4", "A4")])
def test_group_names(name, label):
    assert group_name(build_group(name)) == label
    assert group_name(build_group("C3"), nonabelian_ambient=True) == "A3"
