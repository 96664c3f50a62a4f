import pytest

from doublet.chartable import character_table, inner_product
from doublet.cyclotomic import Cyclotomic
from doublet.groups import build_group, conjugacy_classes
from doublet.products import product_group

GROUPS = ["C1", "C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8", "A4", "S4", "C5:2", "C3:2"]


@pytest.mark.parametrize("name", GROUPS)
def test_orthonormal_rows(name):
    G = build_group(name)
    t = character_table(G)
    assert len(t) == len(conjugacy_classes(G))
    assert sum(d * d for d in t.degrees) == G.order
    for i, a in enumerate(t.rows):
        for j, b in enumerate(t.rows):
            assert inner_product(G, a, b) == (1 if i == j else 0)


def test_s3_table():
    t = character_table(build_group("S3"))
    assert [[v.display() for v in r] for r in t.rows] == [["1", "1", "1"], ["1", "1", "-1"], ["2", "-1", "0"]]


def test_c3_row_order():
    t = character_table(build_group("C3"))
    w = Cyclotomic.root(1, 3)
    assert t.rows[0] == (1, 1, 1)
    assert t.rows[1][1] == w and t.rows[2][1] == w * w


def test_product_table():
    G = build_group("S3")
    GQ = product_group(G, build_group("C2"))
    t = character_table(GQ)
    assert len(t) == 6 and sorted(t.degrees) == [1, 1, 1, 1, 2, 2]


def test_first_column_is_degree():
    for name in ("A4", "S4", "Q8"):
        t = character_table(build_group(name))
        for row, d in zip(t.rows, t.degrees):
            assert row[0] == d
