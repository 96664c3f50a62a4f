"""Structural properties that must hold for every catalog group.

These use no reference numbers: each is a theorem about Z(G) checked
exactly over the whole catalog (every group there has order at most 36).
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublet.algebras import (DecompositionError, algebra_character, classify_algebras, decompose,
                              trivialising_algebras, twist_check)
from doublet.cyclotomic import CycloMatrix
from doublet.groups import CATALOG_NAMES, build_group
from doublet.modular import (PairFunction, character_matrix, global_dimension, modular_matrices,
                             pair_inner_product, s_matrix, simple_characters, sl2_act, verify_modularity)

CATALOG = [n for n in CATALOG_NAMES if build_group(n).order <= 36]


@pytest.mark.parametrize("name", CATALOG)
def test_a_modular_relations(name):
    rep = verify_modularity(modular_matrices(build_group(name)))
    assert rep.s4_identity and rep.projective_relation, rep.failures
    assert rep.ok


@pytest.mark.parametrize("name", CATALOG)
def test_b_simple_characters_orthonormal(name):
    chars = simple_characters(build_group(name))
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            assert pair_inner_product(a, b) == (1 if i == j else 0)


@pytest.mark.parametrize("name", CATALOG)
def test_c_trivialising_characters_are_modular_invariant(name):
    G = build_group(name)
    for a in trivialising_algebras(G):
        chi = algebra_character(a.H, a.gamma)
        assert sl2_act("S", chi) == chi, a.label
        assert sl2_act("T", chi) == chi, a.label


@pytest.mark.parametrize("name", CATALOG)
def test_d_decompositions_reconstruct(name):
    G = build_group(name)
    X = character_matrix(G)
    for a in classify_algebras(G):
        chi = algebra_character(a.H, a.gamma if a.H == a.F else None)
        mult = decompose(chi)
        assert all(isinstance(m, int) and m >= 0 for m in mult)
        assert CycloMatrix.from_entries([mult]) @ X == chi.row


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8"]), st.data())
def test_d_decompose_rejects_non_characters(name, data):
    G = build_group(name)
    chars = simple_characters(G)
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=len(chars), max_size=len(chars)))
    chi = PairFunction.zero(G)
    for c, x in zip(coeffs, chars):
        chi = chi + x.scale(c)
    if min(coeffs) >= 0:
        assert decompose(chi) == coeffs
    else:
        with pytest.raises(DecompositionError):
            decompose(chi)


@pytest.mark.parametrize("name", CATALOG)
def test_e_global_dimension(name):
    G = build_group(name)
    assert global_dimension(G) == G.order ** 2


@pytest.mark.parametrize("name", CATALOG)
def test_f_twists_trivial(name):
    for a in classify_algebras(build_group(name)):
        assert twist_check(a), a.label


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "S4"])
def test_g_s_matrix_independent_of_witnesses(name):
    G = build_group(name)
    ref = s_matrix(G)
    for seed in range(10):
        assert s_matrix(G, np.random.default_rng(seed)) == ref
