from fractions import Fraction

import numpy as np
import pytest

from doublet.cyclotomic import Cyclotomic
from doublet.groups import build_group
from doublet.modular import (conjugation_permutation, dual_permutation, global_dimension, modular_matrices,
                             s_matrix, simple_objects, t_matrix, verify_modularity)


@pytest.mark.parametrize("name", ["C1", "C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8", "A4"])
def test_modularity(name):
    G = build_group(name)
    rep = verify_modularity(modular_matrices(G))
    assert rep.ok, rep.failures
    assert global_dimension(G) == G.order ** 2


def test_s3_simples():
    G = build_group("S3")
    dims = [X.dimension for X in simple_objects(G)]
    assert dims == [1, 1, 2, 2, 2, 2, 3, 3]
    assert [t.display() for t in t_matrix(G)] == ["1", "1", "1", "1", "ω", "ω^-1", "1", "-1"]
    row0 = [x.to_fraction() for x in s_matrix(G).entries()[0]]
    assert row0 == [Fraction(d, 6) for d in dims]


def test_s3_duality_versus_conjugation():
    G = build_group("S3")
    assert dual_permutation(G) == tuple(range(8))
    assert conjugation_permutation(G) == (0, 1, 2, 3, 5, 4, 6, 7)


def test_s_matrix_independent_of_seed():
    G = build_group("D4")
    ref = s_matrix(G)
    for seed in range(4):
        assert s_matrix(G, np.random.default_rng(seed)) == ref


def test_abelian_s_matrix_is_pairing():
    G = build_group("C3")
    S = s_matrix(G)
    assert S.shape == (9, 9)
    for v in S.entries()[0]:
        assert v == Cyclotomic.rational(Fraction(1, 3))
