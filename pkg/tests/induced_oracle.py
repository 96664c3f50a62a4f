"""Independent oracle for induced characters.

Objects of Z(L) are built as explicit monomial modules: a basis, each basis
vector carrying a degree in L, and each group element acting by a monomial
matrix whose nonzero entries are roots of unity.  Induction to G is done on
coset representatives, ``k(G) ⊗_H V``, and the character at a commuting pair
``(f, g)`` is the trace of ``g`` on the degree-``f`` part.  Nothing here calls
into the transfer formula of the library.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from doublet.cyclotomic import Cyclotomic

N = 12  # phases are 12th roots of unity, enough for every group used here


@dataclass
class MonomialModule:
    order: int  # of the acting group
    mult: np.ndarray
    inv: np.ndarray
    degree: np.ndarray  # (dim,) group element per basis vector
    perm: np.ndarray  # (order, dim): g sends basis b to perm[g, b]
    phase: np.ndarray  # (order, dim): ... times zeta_N ** phase[g, b]

    @property
    def dim(self) -> int:
        return len(self.degree)

    def dense(self, g: int) -> np.ndarray:
        M = np.zeros((self.dim, self.dim), dtype=complex)
        z = np.exp(2j * np.pi * self.phase[g] / N)
        M[self.perm[g], np.arange(self.dim)] = z
        return M

    def check(self) -> None:
        """Representation axioms and equivariance of the grading, on dense matrices."""
        mats = [self.dense(g) for g in range(self.order)]
        for a in range(self.order):
            for b in range(self.order):
                if not np.allclose(mats[a] @ mats[b], mats[self.mult[a, b]], atol=1e-12):
                    raise AssertionError("not a representation")
        for g in range(self.order):
            for v in range(self.dim):
                want = self.mult[self.mult[g, self.degree[v]], self.inv[g]]
                if self.degree[self.perm[g, v]] != want:
                    raise AssertionError("grading is not equivariant")

    def trace_exact(self, f: int, g: int) -> Cyclotomic:
        total = Cyclotomic.zero()
        for v in range(self.dim):
            if self.degree[v] == f and self.perm[g, v] == v:
                total = total + Cyclotomic.root(int(self.phase[g, v]), N)
        return total

    def trace_dense(self, f: int, g: int) -> complex:
        sel = np.nonzero(self.degree == f)[0]
        return complex(np.trace(self.dense(g)[np.ix_(sel, sel)]))


def linear_characters(mult: np.ndarray) -> list[np.ndarray]:
    """All homomorphisms to Z/N, by brute force over all functions."""
    n = mult.shape[0]
    out = []
    for vals in itertools.product(range(N), repeat=n - 1):
        lam = np.array((0,) + vals)
        if all((lam[a] + lam[b] - lam[mult[a, b]]) % N == 0 for a in range(n) for b in range(n)):
            out.append(lam)
    return out


def adjoint_module(mult, inv, lam) -> MonomialModule:
    """Basis ``{x}`` in degree ``x``; ``h x = λ(h) h x h^-1``."""
    n = mult.shape[0]
    perm = np.array([[mult[mult[h, x], inv[h]] for x in range(n)] for h in range(n)])
    phase = np.array([[lam[h]] * n for h in range(n)]) % N
    return MonomialModule(n, mult, inv, np.arange(n), perm, phase)


def pair_module(mult, inv, lam) -> MonomialModule:
    """Basis ``{(a, b)}`` in degree ``a``; ``h (a, b) = λ(h) (h a h^-1, h b)``."""
    n = mult.shape[0]
    basis = [(a, b) for a in range(n) for b in range(n)]
    pos = {ab: i for i, ab in enumerate(basis)}
    perm = np.array([[pos[mult[mult[h, a], inv[h]], mult[h, b]] for a, b in basis] for h in range(n)])
    phase = np.array([[lam[h]] * len(basis) for h in range(n)]) % N
    return MonomialModule(n, mult, inv, np.array([a for a, _ in basis]), perm, phase)


def induce(G_mult, G_inv, members: list[int], V: MonomialModule) -> MonomialModule:
    """``k(G) ⊗_H V`` for H given by its (sorted) members; V indexed locally."""
    nG = G_mult.shape[0]
    loc = {h: i for i, h in enumerate(members)}
    reps, seen = [], set()
    for x in range(nG):
        if x in seen:
            continue
        coset = {int(G_mult[x, h]) for h in members}
        seen |= coset
        reps.append(min(coset))
    rep_of = {}
    for i, r in enumerate(reps):
        for h in members:
            rep_of[int(G_mult[r, h])] = i
    dim = len(reps) * V.dim
    degree = np.zeros(dim, dtype=np.int64)
    for i, r in enumerate(reps):
        for b in range(V.dim):
            d = members[V.degree[b]]
            degree[i * V.dim + b] = G_mult[G_mult[r, d], G_inv[r]]
    perm = np.zeros((nG, dim), dtype=np.int64)
    phase = np.zeros((nG, dim), dtype=np.int64)
    for g in range(nG):
        for i, r in enumerate(reps):
            gr = int(G_mult[g, r])
            k = rep_of[gr]
            h = loc[int(G_mult[G_inv[reps[k]], gr])]
            for b in range(V.dim):
                perm[g, i * V.dim + b] = k * V.dim + V.perm[h, b]
                phase[g, i * V.dim + b] = V.phase[h, b]
    return MonomialModule(nG, G_mult, G_inv, degree, perm, phase)


def base_modules(mult, inv) -> list[tuple[str, MonomialModule]]:
    """Adjoint and pair modules twisted by every linear character."""
    out = []
    for k, lam in enumerate(linear_characters(mult)):
        out.append((f"adjoint·λ{k}", adjoint_module(mult, inv, lam)))
        out.append((f"pairs·λ{k}", pair_module(mult, inv, lam)))
    return out
