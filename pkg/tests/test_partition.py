import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublet.partition import PartitionSyntaxError, parse, rank_one_terms, render


def test_render_examples():
    m = np.eye(3, dtype=int)
    assert render(m) == "|χ0|^2+|χ1|^2+|χ2|^2"
    m = np.zeros((4, 4), dtype=int)
    m[2, 3] = 2
    assert render(m) == "2χ2χ3^*"
    m = np.zeros((3, 3), dtype=int)
    m[0, 0] = m[0, 1] = m[1, 0] = m[1, 1] = 1
    assert render(m) == "|χ0+χ1|^2"


def test_parse_examples():
    m = parse("(χ0+χ3)(χ0+2χ2)^*+|χ6|^2", 8)
    assert m[0, 0] == 1 and m[0, 2] == 2 and m[3, 2] == 2 and m[6, 6] == 1
    assert m.sum() == 1 + 2 + 1 + 2 + 1
    assert np.array_equal(parse("chi1 chi2^*", 3), parse("χ1χ2^*", 3))


@pytest.mark.parametrize("bad", ["|χ0", "χ9", "(χ0)(χ1", "χ0+", "x"])
def test_parse_errors(bad):
    with pytest.raises(PartitionSyntaxError):
        parse(bad, 8)


def test_rank_one_terms_sum_back():
    m = parse("|χ0+χ3|^2+(χ1+χ3)χ6^*+χ6(χ1+χ3)^*+|χ7|^2", 8)
    total = np.zeros_like(m)
    for c, a, b in rank_one_terms(m):
        for i, x in a.items():
            for j, y in b.items():
                total[i, j] += c * x * y
    assert np.array_equal(total, m)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_round_trip(rows):
    m = np.array(rows)
    text = render(m)
    if m.any():
        assert np.array_equal(parse(text, 4), m)
