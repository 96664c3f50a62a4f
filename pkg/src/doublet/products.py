"""Maximal algebras in Z(G x Q), their parents, and ribbon equivalences.

A maximal indecomposable commutative separable algebra in Z(G x Q) is a
trivialising algebra A(U, γ) with U a subgroup of G x Q.  Taking invariants
on one side gives an algebra in the other factor (its *parent*).  When both
projections of U are onto and γ pairs the two kernels of U perfectly, A(U, γ)
is the graph of an equivalence Z(G) -> Z(Q).
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .algebras import (AlgebraDatum, InvariantMatrix, check_datum, classify_algebras, group_name,
                       identify_algebra, modular_invariant, subgroup_name)
from .cohomology import Cocycle2, classes_up_to_symmetry
from .groups import (FiniteGroup, Subgroup, check_cap, closure, conjugate_mask, direct_product,
                     generating_set, goursat_decompose, kernels, mask_elements, projections, subgroup_classes)


def product_group(G: FiniteGroup, Q: FiniteGroup) -> FiniteGroup:
    """``G x Q``, built once per pair so that per-group caches are shared."""
    check_cap(f"{G.name}x{Q.name}", G.order * Q.order)
    return _cached_product(G, Q)


@functools.lru_cache(maxsize=None)
def _cached_product(G: FiniteGroup, Q: FiniteGroup) -> FiniteGroup:
    return direct_product(G, Q)


def subgroup_label(U: Subgroup) -> str:
    """Goursat-style name: ``A×B``, ``δ(M)`` or ``δ(P)(K1×K2)``.

    When both factors are the same group and some ``y`` carries ``(M, K1)``
    onto ``(N, K2)``, ``δ_φ`` marks an identification ``M/K1 -> N/K2`` that
    no such conjugation induces.
    """
    d = goursat_decompose(U)
    K1, K2 = kernels(U)
    if d.P.order == 1:
        return f"{subgroup_name(d.M)}×{subgroup_name(d.N)}"
    G, Q = U.parent.factors
    tag = "δ_φ" if G is Q and _outer_graph(U, d.M, d.N, K1, K2) else "δ"
    if K1.order == 1 and K2.order == 1:
        return f"{tag}({subgroup_name(d.M)})"
    nonab = not (d.M.as_group.is_abelian() and d.N.as_group.is_abelian())
    p = group_name(d.P, nonab)
    return f"{tag}({p})({subgroup_name(K1)}×{subgroup_name(K2)})"


def _outer_graph(U: Subgroup, M: Subgroup, N: Subgroup, K1: Subgroup, K2: Subgroup) -> bool:
    """Some ``y`` has ``y M y^-1 = N`` and ``y K1 y^-1 = K2``, but none has
    ``y a y^-1 ≡ b`` modulo K2 for every ``(a, b)`` in U."""
    G = U.parent.factors[0]
    m = G.order
    pairs = [divmod(u, m) for u in U.members]
    kernel = set(K2.members)
    aligned = [y for y in range(G.order) if M.conjugate(y) == N and K1.conjugate(y) == K2]
    if not aligned:
        return False
    return not any(all(G.mul(G.inv[G.conj(y, a)], b) in kernel for a, b in pairs) for y in aligned)


@dataclass(frozen=True, eq=False)
class MaximalAlgebra:
    """A(U, γ); ``twist`` numbers the γ orbit (0 for the trivial class)."""

    U: Subgroup
    gamma: Cocycle2
    index: int = 0
    twist: int = 0
    twists: int = 1

    @property
    def group(self) -> FiniteGroup:
        return self.U.parent

    @property
    def label(self) -> str:
        base = subgroup_label(self.U)
        if self.twist == 0:
            return base
        return f"({base},γ)" if self.twists == 2 else f"({base},γ{self.twist})"

    @functools.cached_property
    def left_parent(self) -> AlgebraDatum:
        return parent_left(self.U, self.gamma)

    @functools.cached_property
    def right_parent(self) -> AlgebraDatum:
        return parent_right(self.U, self.gamma)

    @functools.cached_property
    def invariant(self) -> InvariantMatrix:
        return modular_invariant(self.U, self.gamma)

    def is_twisted(self) -> bool:
        return self.twist != 0


def maximal_algebras(G: FiniteGroup, Q: FiniteGroup) -> list[MaximalAlgebra]:
    """Every (U, γ): U up to conjugacy in G x Q, γ up to the normaliser action."""
    GQ = product_group(G, Q)
    out = []
    for U in subgroup_classes(GQ):
        orbits = classes_up_to_symmetry(U)
        for k, (gamma, _) in enumerate(orbits):
            out.append(MaximalAlgebra(U, gamma, len(out), k, len(orbits)))
    return out


# -- parents ---------------------------------------------------------------------

def _parent(U: Subgroup, gamma: Cocycle2, side: int) -> AlgebraDatum:
    """Parent in the factor ``side`` (0 for G, 1 for Q)."""
    GQ = U.parent
    G, Q = GQ.factors
    m = Q.order
    target = (G, Q)[side]
    if gamma.domain != U:
        raise ValueError("cocycle must live on U")

    def comp(u: int) -> int:
        return u // m if side == 0 else u % m

    def embed(x: int) -> int:
        return x * m if side == 0 else x

    H = projections(U)[side]
    mine, other = kernels(U)[side], kernels(U)[1 - side]
    other_in_U = [x * m if side == 1 else x for x in other.members]
    N = gamma.modulus
    K = Subgroup(target, tuple(v for v in mine.members
                               if all(gamma.pairing(w, embed(v)) == 0 for w in other_in_U)))
    kidx = [gamma.domain.index[embed(v)] for v in K.members]
    gK = Cocycle2(K, N, gamma.table[np.ix_(kidx, kidx)])

    lifts: dict[int, list[int]] = {}
    for u in U.members:
        lifts.setdefault(comp(u), []).append(u)
    eps = np.zeros((H.order, K.order), dtype=np.int64)
    for i, q in enumerate(H.members):
        for j, v in enumerate(K.members):
            ve = embed(v)
            vals = {(gamma(u, ve) - gamma(GQ.conj(u, ve), u)) % N for u in lifts[q]}
            if len(vals) != 1:
                raise AssertionError(f"ε depends on the lift of {target.label(q)} (values {sorted(vals)})")
            eps[i, j] = vals.pop()
    a = AlgebraDatum(H, K, gK, eps, N)
    bad = check_datum(a)
    if bad:
        raise AssertionError(f"parent datum violates {bad}")
    return a


def parent_right(U: Subgroup, gamma: Cocycle2) -> AlgebraDatum:
    """Invariants on the G side: an algebra ``A(pr2(U), K, γ|K, ε)`` in Z(Q)."""
    return _parent(U, gamma, 1)


def parent_left(U: Subgroup, gamma: Cocycle2) -> AlgebraDatum:
    return _parent(U, gamma, 0)


# -- equivalences ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EquivalenceDatum:
    U: Subgroup
    gamma: Cocycle2
    label: str = ""


def _kernels_compatible(U: Subgroup) -> bool:
    K1, K2 = kernels(U)
    return K1.order == K2.order and K1.as_group.is_abelian() and K2.as_group.is_abelian()


def pairing_is_nondegenerate(U: Subgroup, gamma: Cocycle2) -> bool:
    """Whether ``γ(-|-)`` identifies each kernel of U with the dual of the other.

    Both maps ``K1 -> K2^`` and ``K2 -> K1^`` must be injective; together
    that forces ``|K1| = |K2|`` and both maps bijective.
    """
    if not _kernels_compatible(U):
        return False
    m = U.parent.factors[1].order
    K1, K2 = kernels(U)
    P = np.array([[gamma.pairing(x * m, y) for y in K2.members] for x in K1.members], dtype=np.int64)
    return len({tuple(r) for r in P}) == K1.order and len({tuple(c) for c in P.T}) == K2.order


def _onto_subgroups(G: FiniteGroup, Q: FiniteGroup) -> list[Subgroup]:
    """Subgroups of G x Q that could carry an equivalence, one per conjugacy class.

    These are the U with both projections onto and abelian kernels of equal
    order.  By Goursat such a U is the preimage of the graph of an isomorphism
    ``G/K1 -> Q/K2``, so it is generated by ``K1 x K2`` together with one
    pair ``(g, y)`` per generator ``g`` of G.  Building them that way needs
    the subgroup lattices of G and Q only, never that of G x Q.
    """
    GQ = _cached_product(G, Q)
    m = Q.order
    gens = generating_set(G.whole())

    def abelian_normal(X: FiniteGroup) -> list[Subgroup]:
        return [S for S in subgroup_classes(X) if S.is_normal_in(X.whole()) and S.as_group.is_abelian()]

    right = abelian_normal(Q)
    seen: set[int] = set()
    reps: list[int] = []
    for K1 in abelian_normal(G):
        for K2 in right:
            if K2.order != K1.order:
                continue
            base = 0
            for a in K1.members:
                for b in K2.members:
                    base |= 1 << (a * m + b)
            for images in itertools.product(range(m), repeat=len(gens)):
                mask = closure(GQ, base | sum(1 << (g * m + y) for g, y in zip(gens, images)))
                if mask in seen or bin(mask).count("1") != G.order * K2.order:
                    continue
                U = Subgroup.from_mask(GQ, mask)
                if kernels(U) != (K1, K2) or projections(U)[1].order != m:
                    continue
                orbit = {conjugate_mask(GQ, mask, x) for x in range(GQ.order)}
                seen |= orbit
                reps.append(min(orbit, key=mask_elements))
    subs = [Subgroup.from_mask(GQ, r) for r in reps]
    subs.sort(key=lambda S: (S.order, S.members))
    return subs


def ribbon_equivalences(G: FiniteGroup, Q: FiniteGroup) -> list[EquivalenceDatum]:
    """All (U, γ) giving a braided equivalence Z(G) -> Z(Q), one per class.

    The size cap applies to G, Q and each candidate U, not to G x Q, whose
    subgroups are never enumerated.
    """
    if G.order != Q.order:
        return []
    check_cap(G.name, G.order)
    check_cap(Q.name, Q.order)
    out = []
    for U in _onto_subgroups(G, Q):
        orbits = classes_up_to_symmetry(U)
        for k, (gamma, _) in enumerate(orbits):
            if pairing_is_nondegenerate(U, gamma):
                out.append(EquivalenceDatum(U, gamma, MaximalAlgebra(U, gamma, 0, k, len(orbits)).label))
    return out


# -- the parent graph ----------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    side: str  # "G", "Q", or "GQ" when both factors are the same group
    index: int
    label: str


@dataclass(frozen=True)
class Edge:
    source: int  # vertex position
    target: int
    label: str
    algebra: int  # position in maximal_algebras


@dataclass
class ParentGraph:
    vertices: list[Vertex]
    edges: list[Edge]
    components: list[list[int]] = field(default_factory=list)

    def loops(self, v: int) -> list[Edge]:
        return [e for e in self.edges if e.source == v and e.target == v]


def _vertex_label(a: AlgebraDatum) -> str:
    return f"({subgroup_name(a.H)},{subgroup_name(a.F)})"


def build_parent_graph(G: FiniteGroup, Q: FiniteGroup) -> ParentGraph:
    """Algebras of Z(G) and Z(Q) as vertices, maximal algebras as edges left -> right."""
    shared = G is Q
    left = classify_algebras(G)
    right = left if shared else classify_algebras(Q)
    vertices = [Vertex("GQ" if shared else "G", i, _vertex_label(a)) for i, a in enumerate(left)]
    offset = 0 if shared else len(left)
    if not shared:
        vertices += [Vertex("Q", j, _vertex_label(a)) for j, a in enumerate(right)]
    edges = []
    for alg in maximal_algebras(G, Q):
        s = identify_algebra(alg.left_parent)
        t = identify_algebra(alg.right_parent) + offset
        edges.append(Edge(s, t, alg.label, alg.index))
    n = len(vertices)
    adj = sp.coo_matrix((np.ones(len(edges)), ([e.source for e in edges], [e.target for e in edges])),
                        shape=(n, n))
    count, lab = connected_components(adj, directed=False)
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(int(lab[v]), []).append(v)
    components = sorted(comps.values(), key=lambda c: (-sum(1 for e in edges if e.source in c), c))
    return ParentGraph(vertices, edges, components)
