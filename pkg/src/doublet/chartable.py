"""Ordinary character tables via Dixon's modular method.

The class-sum structure constants give commuting matrices whose common
eigenvectors, taken modulo a prime ``p = 1 (mod exp G)``, are the central
characters.  Each character value is a sum of ``exp G``-th roots of unity,
and its multiplicities are recovered exactly by a discrete Fourier
transform mod ``p``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .cyclotomic import Cyclotomic
from .groups import FiniteGroup, GroupError, check_cap, class_index, conjugacy_classes


class CharacterTableError(GroupError):
    """Dixon's method failed for every prime that was tried."""


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: tuple[tuple[int, tuple[int, ...]], ...]
    rows: tuple[tuple[Cyclotomic, ...], ...]
    degrees: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def value(self, i: int, g: int) -> Cyclotomic:
        """Value of row ``i`` at the element ``g``."""
        return self.rows[i][int(class_index(self.group)[g])]

    @functools.cached_property
    def element_values(self) -> tuple[tuple[Cyclotomic, ...], ...]:
        idx = class_index(self.group)
        return tuple(tuple(row[c] for c in idx) for row in self.rows)


def inner_product(G: FiniteGroup, chi, psi) -> Cyclotomic:
    """``(1/|G|) sum_g chi(g) conj(psi(g))`` for class functions given per class."""
    classes = conjugacy_classes(G)
    if len(chi) != len(classes) or len(psi) != len(classes):
        raise GroupError("class functions must be given on the classes of the same group")
    total = Cyclotomic.zero()
    for (_, members), a, b in zip(classes, chi, psi):
        total = total + Cyclotomic.coerce(a) * Cyclotomic.coerce(b).conj() * len(members)
    return total * Fraction(1, G.order)


# -- modular linear algebra over a prime field -----------------------------

def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` mod ``p`` as columns."""
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.nonzero(A[:, c])[0]
        for i in others:
            if i != r:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, c in enumerate(pivots):
            basis[c, j] = (-A[i, f]) % p
    return basis


def _charpoly(M: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial mod ``p`` (Faddeev-LeVerrier), highest degree first."""
    n = M.shape[0]
    coeffs = [1]
    Mk = np.zeros_like(M)
    ident = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        Mk = (M @ (Mk + coeffs[-1] * ident)) % p
        c = (-int(np.trace(Mk)) * pow(k, -1, p)) % p
        coeffs.append(c)
    return coeffs


def _roots(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in poly:
        val = (val * xs + c) % p
    return [int(x) for x in np.nonzero(val == 0)[0]]


def _structure_constants(G: FiniteGroup, classes) -> np.ndarray:
    """``a[k, j, i] = #{x in C_k : x^-1 g_i in C_j}`` for class reps ``g_i``."""
    idx = class_index(G)
    r = len(classes)
    a = np.zeros((r, r, r), dtype=np.int64)
    everything = np.arange(G.order)
    for i, (g, _) in enumerate(classes):
        y = G.mult[G.inv[everything], g]
        np.add.at(a, (idx[everything], idx[y], i), 1)
    return a


def _candidate_primes(G: FiniteGroup):
    from sympy import isprime
    e = G.exponent
    bound = max(2 * isqrt(G.order) * e + 2 * e, G.order + 1)
    p = (bound // e + 1) * e + 1
    while True:
        if isprime(p):
            yield p
        p += e


def _dixon(G: FiniteGroup, p: int):
    classes = conjugacy_classes(G)
    r = len(classes)
    e = G.exponent
    sizes = [len(m) for _, m in classes]
    idx = class_index(G)
    a = _structure_constants(G, classes)

    # split F_p^r into common eigenspaces of the class matrices
    spaces = [np.eye(r, dtype=np.int64)]
    for k in range(1, r):
        if all(s.shape[1] == 1 for s in spaces):
            break
        # omega_k w_j = sum_i a[k, j, i] w_i
        M = a[k] % p
        lams = _roots(_charpoly(M, p), p)
        refined = []
        for B in spaces:
            if B.shape[1] == 1:
                refined.append(B)
                continue
            got = 0
            for lam in lams:
                C = ((M - lam * np.eye(r, dtype=np.int64)) @ B) % p
                ker = _nullspace(C, p)
                if ker.shape[1]:
                    refined.append((B @ ker) % p)
                    got += ker.shape[1]
            if got != B.shape[1]:
                return None
        spaces = refined
    if any(s.shape[1] != 1 for s in spaces) or len(spaces) != r:
        return None

    from sympy import primitive_root

    inv_class = [int(idx[G.inv[g]]) for g, _ in classes]
    root = pow(primitive_root(p), (p - 1) // e, p)
    inv_e = pow(e, -1, p)
    # powers of each class representative, as class indices
    power_classes = []
    for g, _ in classes:
        seq, x = [], 0
        for _ in range(e):
            seq.append(int(idx[x]))
            x = int(G.mult[x, g])
        power_classes.append(seq)

    rows, degrees = [], []
    for B in spaces:
        w = B[:, 0] % p
        if w[0] == 0:
            return None
        w = w * pow(int(w[0]), -1, p) % p
        s = sum(int(w[j]) * int(w[inv_class[j]]) * pow(sizes[j], -1, p) for j in range(r)) % p
        if s == 0:
            return None
        d2 = G.order * pow(s, -1, p) % p
        d = isqrt(d2)
        if d * d != d2 or d == 0:
            return None
        chi_p = [d * int(w[j]) * pow(sizes[j], -1, p) % p for j in range(r)]
        row = []
        for j in range(r):
            counts = {}
            for l in range(e):
                m = sum(chi_p[power_classes[j][k]] * pow(root, (-k * l) % e, p) for k in range(e))
                m = m * inv_e % p
                if m > d:
                    return None
                if m:
                    counts[l] = m
            if sum(counts.values()) != d:
                return None
            row.append(Cyclotomic.from_exponents(counts, e))
        rows.append(tuple(row))
        degrees.append(d)
    if sum(d * d for d in degrees) != G.order:
        return None
    return rows, degrees


@functools.lru_cache(maxsize=None)
def character_table(G: FiniteGroup, max_primes: int = 8) -> CharacterTable:
    """Irreducible characters of ``G``, ordered by degree then by values.

    Values are compared entrywise with key (-Re, -Im), so the trivial row is
    first and, for a cyclic group of order 3, the row ``(1, ω, ω^2)`` comes
    before its conjugate.
    """
    check_cap("character table", G.order)
    classes = conjugacy_classes(G)
    primes = _candidate_primes(G)
    for _ in range(max_primes):
        p = next(primes)
        got = _dixon(G, p)
        if got is None:
            continue
        rows, degrees = got
        order = sorted(range(len(rows)),
                       key=lambda i: (degrees[i], tuple(v.sort_key() for v in rows[i])))
        return CharacterTable(G, classes, tuple(rows[i] for i in order),
                              tuple(degrees[i] for i in order))
    raise CharacterTableError(f"Dixon's method failed for {G!r} after {max_primes} primes")
