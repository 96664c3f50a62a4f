"""transfer_character against explicitly induced modules (S3 and its subgroups)."""
import pytest

from doublet.algebras import decompose, transfer_character
from doublet.groups import build_group, subgroup_classes
from doublet.modular import PairFunction, pair_index

from induced_oracle import base_modules, induce

TOL = 1e-9


def _s3_subgroups():
    G = build_group("S3")
    return {f"order{S.order}": S for S in subgroup_classes(G)}


@pytest.mark.parametrize("name", ["order1", "order2", "order3", "order6"])
def test_transfer_matches_induced_module(name):
    H = _s3_subgroups()[name]
    G, L = H.parent, H.as_group
    for label, V in base_modules(L.mult, L.inv):
        V.check()
        chi_V = PairFunction.from_values(L, [V.trace_exact(int(f), int(g)) for f, g in pair_index(L).pairs])
        ind = induce(G.mult, G.inv, list(H.members), V)
        ind.check()
        got = transfer_character(H, chi_V)
        for (f, g), value in zip(pair_index(G).pairs.tolist(), got.values()):
            assert value == ind.trace_exact(f, g), (name, label, f, g)
            assert abs(complex(value) - ind.trace_dense(f, g)) < TOL
        assert all(m >= 0 for m in decompose(got))


def test_oracle_detects_a_wrong_character():
    H = _s3_subgroups()["order3"]
    G, L = H.parent, H.as_group
    _, V = base_modules(L.mult, L.inv)[0]
    ind = induce(G.mult, G.inv, list(H.members), V)
    # the adjoint module of an abelian group has character 1 everywhere; 2 is wrong
    wrong = PairFunction.from_values(L, [2] * len(pair_index(L).pairs))
    got = transfer_character(H, wrong)
    assert any(v != ind.trace_exact(f, g) for (f, g), v in zip(pair_index(G).pairs.tolist(), got.values()))
