"""Commutative separable algebras in Z(G) and their characters.

An indecomposable algebra is described by a quadruple (H, F, γ, ε):
a subgroup H, a normal subgroup F of H, a 2-cocycle γ on F and a map
ε: H x F -> k*, subject to

    (eps1)  ε_{gh}(f) = ε_g(h f h^-1) ε_h(f)
    (eps2)  γ(f,g) ε_h(fg) = ε_h(f) ε_h(g) γ(hfh^-1, hgh^-1)
    (eps3)  γ(f,g) = ε_f(g) γ(f g f^-1, f)

All of these are linear in the exponents, so ε is found by solving a
linear system over Z/N.  Two quadruples with the same (H, F) are isomorphic
when they differ by a cochain c on F, which moves γ by ``-dc`` and ε by
``c(h f h^-1) - c(f)``, or by conjugation inside G.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np
import scipy.sparse as sp

from .cohomology import (Cocycle2, classes_up_to_symmetry, homomorphisms_to_roots, is_coboundary,
                         second_cohomology, zero_cocycle)
from .cyclotomic import CycloMatrix, Cyclotomic
from .groups import (FiniteGroup, GroupError, Subgroup, generating_set, normalizer, subgroup_classes,
                     subgroups_of)
from .modlinalg import solve_mod
from .modular import (PairFunction, character_matrix, conjugation_permutation, pair_index, simple_objects,
                      sl2_act)


class DecompositionError(ValueError):
    """The input is not the character of an object."""


# -- data --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraDatum:
    """A quadruple (H, F, γ, ε); ``eps[i, j]`` is ε at ``H.members[i]``, ``F.members[j]``."""

    H: Subgroup
    F: Subgroup
    gamma: Cocycle2
    eps: np.ndarray
    modulus: int

    def __post_init__(self):
        e = np.asarray(self.eps, dtype=np.int64) % self.modulus
        e.setflags(write=False)
        object.__setattr__(self, "eps", e)

    @property
    def group(self) -> FiniteGroup:
        return self.H.parent

    def epsilon(self, h: int, f: int) -> int:
        return int(self.eps[self.H.index[h], self.F.index[f]])

    @property
    def label(self) -> str:
        return f"{subgroup_name(self.H)}⊳{subgroup_name(self.F)}"

    def eps_key(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(v), self.modulus) for v in self.eps.ravel())

    def conjugate(self, x: int) -> "AlgebraDatum":
        """Transport along ``g -> x g x^-1``."""
        G = self.group
        H2, F2 = self.H.conjugate(x), self.F.conjugate(x)
        xi = int(G.inv[x])
        hi = [self.H.index[G.conj(xi, h)] for h in H2.members]
        fi = [self.F.index[G.conj(xi, f)] for f in F2.members]
        return AlgebraDatum(H2, F2, self.gamma.conjugate(x), self.eps[np.ix_(hi, fi)], self.modulus)


def is_trivialising(a: AlgebraDatum) -> bool:
    return a.F == a.H


def twist_check(a: AlgebraDatum) -> bool:
    """``ε_f(f) = 1`` for every ``f`` in F, so the twist of the algebra is trivial."""
    return all(a.epsilon(f, f) == 0 for f in a.F.members)


def _eps_system(H: Subgroup, F: Subgroup, gamma: Cocycle2, N: int):
    """Sparse matrix and right-hand side of (eps1)-(eps3) over Z/N."""
    G = H.parent
    nH, nF = H.order, F.order
    hm = np.array(H.members)
    fm = np.array(F.members)
    hloc = np.full(G.order, -1, dtype=np.int64)
    hloc[hm] = np.arange(nH)
    floc = np.full(G.order, -1, dtype=np.int64)
    floc[fm] = np.arange(nF)
    mult, inv = G.mult, G.inv
    gt = gamma.rescale(N).table if N % gamma.modulus == 0 else None
    if gt is None:
        raise ValueError("ε modulus must be a multiple of the cocycle modulus")

    def u(h, f):
        return hloc[h] * nF + floc[f]

    def conj(h, f):
        return mult[mult[h, f], inv[h]]

    blocks_r, blocks_c, blocks_d, rhs = [], [], [], []
    row0 = 0

    def add(cols_signs, b):
        nonlocal row0
        k = b.size
        rows = np.arange(row0, row0 + k)
        for cols, sign in cols_signs:
            blocks_r.append(rows)
            blocks_c.append(cols)
            blocks_d.append(np.full(k, sign, dtype=np.int64))
        rhs.append(b % N)
        row0 += k

    # (eps1) over g, h in H and f in F
    g, h, f = (a.ravel() for a in np.meshgrid(hm, hm, fm, indexing="ij"))
    add([(u(mult[g, h], f), 1), (u(g, conj(h, f)), -1), (u(h, f), -1)], np.zeros(g.size, dtype=np.int64))
    # (eps2) over h in H and f, g in F
    h, f, g = (a.ravel() for a in np.meshgrid(hm, fm, fm, indexing="ij"))
    b = gt[floc[conj(h, f)], floc[conj(h, g)]] - gt[floc[f], floc[g]]
    add([(u(h, mult[f, g]), 1), (u(h, f), -1), (u(h, g), -1)], b)
    # (eps3) over f, g in F
    f, g = (a.ravel() for a in np.meshgrid(fm, fm, indexing="ij"))
    b = gt[floc[f], floc[g]] - gt[floc[conj(f, g)], floc[f]]
    add([(u(f, g), 1)], b)

    A = sp.csr_matrix((np.concatenate(blocks_d), (np.concatenate(blocks_r), np.concatenate(blocks_c))),
                      shape=(row0, nH * nF), dtype=np.int64)
    return A, np.concatenate(rhs)


def eps_modulus(H: Subgroup, gamma: Cocycle2) -> int:
    return lcm(H.order, gamma.modulus)


def solve_epsilon(H: Subgroup, F: Subgroup, gamma: Cocycle2) -> list[np.ndarray]:
    """Every ε satisfying (eps1)-(eps3), as ``|H| x |F|`` exponent tables mod ``lcm(|H|, modulus)``."""
    if not F.is_normal_in(H):
        raise GroupError("F must be a normal subgroup of H")
    N = eps_modulus(H, gamma)
    A, b = _eps_system(H, F, gamma, N)
    sol = solve_mod(A, b, N)
    return [x.reshape(H.order, F.order) for x in sol.elements()]


def check_datum(a: AlgebraDatum) -> list[str]:
    """Names of the violated conditions (empty when the datum is valid)."""
    bad = []
    if not a.F.is_normal_in(a.H):
        bad.append("F not normal in H")
    if not a.gamma.is_cocycle() or not a.gamma.is_normalised():
        bad.append("γ not a normalised cocycle")
    N = a.modulus
    if N % a.gamma.modulus:
        bad.append("modulus mismatch")
        return bad
    A, b = _eps_system(a.H, a.F, a.gamma, N)
    res = (A @ a.eps.ravel() - b) % N
    if res.any():
        bad.append("ε equations")
    return bad


# -- naming ------------------------------------------------------------------------

def group_name(L: FiniteGroup, nonabelian_ambient: bool = False) -> str:
    """Name of a small group by isomorphism type, falling back to ``order<n>``."""
    n = L.order
    if n == 1:
        return "e"
    orders = [L.element_order(g) for g in range(n)]
    if L.is_abelian():
        if max(orders) == n:
            return "A3" if n == 3 and nonabelian_ambient else f"C{n}"
        if n == 4:
            return "C2xC2"
        if n == 9 and max(orders) == 3:
            return "C3xC3"
        if n == 8:
            return "C4xC2" if max(orders) == 4 else "C2xC2xC2"
        return f"order{n}"
    if n == 6:
        return "S3"
    if n == 8:
        return "Q8" if orders.count(2) == 1 else "D4"
    if n == 12 and orders.count(2) == 3 and 6 not in orders and 4 not in orders:
        return "A4"
    if n == 24 and max(orders) == 4 and orders.count(2) == 9:
        return "S4"
    return f"order{n}"


def subgroup_name(S: Subgroup) -> str:
    if S.order == S.parent.order and S.parent.name:
        return S.parent.name
    return group_name(S.as_group, not S.parent.is_abelian())


# -- classification ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class _Slot:
    """Algebras over one (H, F, γ) up to isomorphism."""

    H: Subgroup
    F: Subgroup
    gamma: Cocycle2
    gamma_orbit: tuple
    stab: tuple[int, ...]
    N: int
    orbit_of: dict  # eps tuple -> orbit id
    reps: tuple[np.ndarray, ...]


def _normal_subgroup_reps(H: Subgroup, acting: Subgroup) -> list[Subgroup]:
    out, seen = [], set()
    for F in subgroups_of(H):
        if F.members in seen or not F.is_normal_in(H):
            continue
        orbit = {F.conjugate(x).members for x in acting.members}
        seen |= orbit
        out.append(Subgroup(H.parent, min(orbit)))
    out.sort(key=lambda s: (-s.order, s.members))
    return out


def _stabiliser(G: FiniteGroup, H: Subgroup, F: Subgroup) -> Subgroup:
    return Subgroup(G, tuple(x for x in normalizer(H).members if F.conjugate(x) == F))


def _cochain_shift(c_vals: dict[int, int] | np.ndarray, H: Subgroup, F: Subgroup, modulus: int) -> np.ndarray:
    """Table of ``c(h f h^-1) - c(f)`` over H x F (``c`` given on F.members)."""
    G = H.parent
    out = np.zeros((H.order, F.order), dtype=np.int64)
    fi = F.index
    for i, h in enumerate(H.members):
        for j, f in enumerate(F.members):
            out[i, j] = c_vals[fi[G.conj(h, f)]] - c_vals[j]
    return out % modulus


def _align_to(a: AlgebraDatum, gamma0: Cocycle2, N: int) -> np.ndarray:
    """ε of an isomorphic datum with cocycle exactly ``gamma0``, as a table mod N."""
    diff = a.gamma - gamma0
    c = is_coboundary(diff)
    if c is None:
        raise AssertionError("cocycles were expected to be cohomologous")
    # γ0 = γ - dc, so ε moves by c(hfh^-1) - c(f); work in Q/Z via a common modulus
    big = lcm(c.modulus, a.modulus, N)
    eps = a.eps * (big // a.modulus) + _cochain_shift(c.values * (big // c.modulus), a.H, a.F, big)
    eps %= big
    step = big // N
    if np.any(eps % step):
        raise AssertionError("aligned ε does not take values in μ_N")
    return eps // step


@functools.lru_cache(maxsize=None)
def _slots(G: FiniteGroup) -> tuple[_Slot, ...]:
    slots = []
    for H in subgroup_classes(G):
        NH = normalizer(H)
        for F in _normal_subgroup_reps(H, NH):
            stab = _stabiliser(G, H, F)
            for gamma0, orbit in classes_up_to_symmetry(F, second_cohomology(F), stab):
                slots.append(_make_slot(G, H, F, gamma0, orbit, stab))
    return tuple(slots)


def _make_slot(G, H, F, gamma0, orbit, stab) -> _Slot:
    coh = second_cohomology(F)
    cls0 = coh.class_of(gamma0)
    N = eps_modulus(H, gamma0)
    sols = solve_epsilon(H, F, gamma0)
    keys = [tuple(int(v) for v in s.ravel()) for s in sols]
    parent = {k: k for k in keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if keys.index(rb) < keys.index(ra):
                ra, rb = rb, ra
            parent[rb] = ra

    # moves by characters c: F -> k*
    homs = homomorphisms_to_roots(F, N)
    shifts = [_cochain_shift(c, H, F, N) for c in homs]
    # moves by conjugation with elements preserving the class of γ0
    fixers = [x for x in stab.members if coh.class_of(gamma0.conjugate(x)) == cls0]
    fix_gens = generating_set(Subgroup(G, tuple(fixers)))
    for s, k in zip(sols, keys):
        for sh in shifts:
            union(k, tuple(int(v) for v in ((s + sh) % N).ravel()))
        for x in fix_gens:
            moved = AlgebraDatum(H, F, gamma0, s, N).conjugate(x)
            e2 = _align_to(moved, gamma0, N)
            union(k, tuple(int(v) for v in e2.ravel()))
    roots = []
    orbit_of = {}
    for k in keys:
        r = find(k)
        if r not in roots:
            roots.append(r)
        orbit_of[k] = roots.index(r)
    reps = tuple(np.array(r, dtype=np.int64).reshape(H.order, F.order) for r in roots)
    return _Slot(H, F, gamma0, tuple(orbit), tuple(stab.members), N, orbit_of, reps)


@functools.lru_cache(maxsize=None)
def classify_algebras(G: FiniteGroup) -> tuple[AlgebraDatum, ...]:
    """One datum per isomorphism class of indecomposable commutative separable algebras.

    Ordered by the subgroup class of H, then F (larger first), then the γ orbit
    and the ε orbit.
    """
    out = []
    for slot in _slots(G):
        for eps in slot.reps:
            out.append(AlgebraDatum(slot.H, slot.F, slot.gamma, eps, slot.N))
    return tuple(out)


def identify_algebra(a: AlgebraDatum) -> int:
    """Position of ``a`` in :func:`classify_algebras` of its group."""
    G = a.group
    slots = _slots(G)
    base = 0
    for slot in slots:
        if slot.H.order != a.H.order or slot.F.order != a.F.order:
            base += len(slot.reps)
            continue
        hit = _match_slot(a, slot)
        if hit is not None:
            return base + hit
        base += len(slot.reps)
    raise AssertionError("algebra datum not found in the classification")


def _match_slot(a: AlgebraDatum, slot: _Slot) -> int | None:
    G = a.group
    for x in range(G.order):
        if a.H.conjugate(x) != slot.H or a.F.conjugate(x) != slot.F:
            continue
        b = a.conjugate(x)
        coh = second_cohomology(slot.F)
        cls = coh.class_of(b.gamma)
        if cls not in slot.gamma_orbit:
            return None
        target = coh.class_of(slot.gamma)
        for y in slot.stab:
            c = b.conjugate(y)
            if coh.class_of(c.gamma) != target:
                continue
            eps = _align_to(c, slot.gamma, slot.N)
            return slot.orbit_of[tuple(int(v) for v in eps.ravel())]
        raise AssertionError("no stabiliser element returns γ to its orbit representative")
    return None


def trivialising_algebras(G: FiniteGroup) -> list[AlgebraDatum]:
    return [a for a in classify_algebras(G) if is_trivialising(a)]


# -- characters ------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def conjugation_table(G: FiniteGroup) -> np.ndarray:
    """``C[x, g] = x g x^-1``."""
    return G.mult[G.mult, G.inv[:, None]]


def _pairing_exponents(gamma: Cocycle2) -> np.ndarray:
    t = gamma.table
    return (t - t.T) % gamma.modulus


def algebra_character(H: Subgroup, gamma: Cocycle2 | None = None) -> PairFunction:
    """``χ(f,g) = (1/|H|) sum over x with xfx^-1, xgx^-1 in H of γ(xfx^-1 | xgx^-1)``."""
    G = H.parent
    gamma = gamma or zero_cocycle(H)
    if gamma.domain != H:
        raise ValueError("cocycle must live on H")
    M = gamma.modulus
    n = lcm(G.exponent, 1)
    pair_exp = _pairing_exponents(gamma)
    # γ(a|b) has order dividing gcd(|a|, |b|), hence dividing exp(G)
    scale_num = n
    idx = pair_index(G)
    f, g = idx.pairs[:, 0], idx.pairs[:, 1]
    loc = np.full(G.order, -1, dtype=np.int64)
    loc[list(H.members)] = np.arange(H.order)
    C = conjugation_table(G)
    counts = np.zeros((len(f), n), dtype=np.int64)
    for x in range(G.order):
        a, b = loc[C[x, f]], loc[C[x, g]]
        ok = (a >= 0) & (b >= 0)
        t = pair_exp[a[ok], b[ok]] * scale_num
        if np.any(t % M):
            raise AssertionError("commutator pairing value outside μ_exp(G)")
        np.add.at(counts, (np.nonzero(ok)[0], (t // M) % n), 1)
    return PairFunction.from_exponent_counts(G, counts, n, H.order)


def transfer_character(H: Subgroup, chi: PairFunction) -> PairFunction:
    """Induce a pair function on ``H.as_group`` up to ``H.parent``."""
    G = H.parent
    if chi.group is not H.as_group:
        raise GroupError("character must live on H.as_group")
    n = G.exponent
    row = chi.row.embed(lcm(chi.row.n, n))
    idxG = pair_index(G)
    idxH = pair_index(H.as_group)
    f, g = idxG.pairs[:, 0], idxG.pairs[:, 1]
    loc = np.full(G.order, -1, dtype=np.int64)
    loc[list(H.members)] = np.arange(H.order)
    C = conjugation_table(G)
    total = np.zeros((row.coeffs.shape[0], len(f)), dtype=object)
    for x in range(G.order):
        a, b = loc[C[x, f]], loc[C[x, g]]
        ok = np.nonzero((a >= 0) & (b >= 0))[0]
        p = idxH.pid[a[ok], b[ok]]
        total[:, ok] += row.coeffs[:, 0, p]
    out = CycloMatrix(row.n, total.reshape(row.coeffs.shape[0], 1, -1), row.den * H.order)
    return PairFunction(G, out)


def pairing_function(gamma: Cocycle2) -> PairFunction:
    """``(x, y) -> γ(x|y)`` on the commuting pairs of ``gamma.domain.as_group``."""
    L = gamma.domain.as_group
    idx = pair_index(L)
    pe = _pairing_exponents(gamma)
    n = gamma.modulus
    counts = np.zeros((len(idx.pairs), n), dtype=np.int64)
    counts[np.arange(len(idx.pairs)), pe[idx.pairs[:, 0], idx.pairs[:, 1]]] = 1
    return PairFunction.from_exponent_counts(L, counts, n)


def decompose(chi: PairFunction) -> list[int]:
    """Multiplicities of the simple objects; raises if ``chi`` is not a character."""
    G = chi.group
    X = character_matrix(G)
    m = (chi.row @ X.conj().T).scale(Fraction(1, G.order))
    mult = []
    for v in m.entries()[0]:
        if not v.is_integer() or v.to_fraction() < 0:
            raise DecompositionError(f"multiplicity {v} is not a nonnegative integer")
        mult.append(int(v.to_fraction()))
    coeffs = CycloMatrix.from_entries([mult])
    if not (coeffs @ X) == chi.row:
        raise DecompositionError("multiplicities do not reconstruct the character")
    return mult


# -- modular invariants ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InvariantMatrix:
    """``m[i][j]`` is the coefficient of ``χ_i χ_j*`` in the partition function."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    m: tuple[tuple[int, ...], ...]
    raw: tuple[tuple[int, ...], ...]  # coefficients of χ_i ⊗ χ_j before conjugating


@functools.lru_cache(maxsize=None)
def _product_pair_map(GQ: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    """For each commuting pair of G x Q, the indices of its G- and Q-components."""
    G, Q = GQ.factors
    m = Q.order
    pairs = pair_index(GQ).pairs
    a, b = np.divmod(pairs[:, 0], m)
    c, d = np.divmod(pairs[:, 1], m)
    return pair_index(G).pid[a, c], pair_index(Q).pid[b, d]


def product_decomposition(chi: PairFunction) -> list[list[int]]:
    """Coefficients of ``χ_i ⊗ χ_j`` for a character on a direct product."""
    GQ = chi.group
    if GQ.factors is None:
        raise GroupError("pair function does not live on a direct product")
    G, Q = GQ.factors
    pg, pq = _product_pair_map(GQ)
    PG, PQ = len(pair_index(G).pairs), len(pair_index(Q).pairs)
    row = chi.row
    A = np.zeros((row.coeffs.shape[0], PG, PQ), dtype=object)
    A[:, pg, pq] = row.coeffs[:, 0, :]
    Amat = CycloMatrix(row.n, A, row.den)
    m = (character_matrix(G).conj() @ Amat @ character_matrix(Q).conj().T).scale(Fraction(1, GQ.order))
    out = []
    for r in m.entries():
        line = []
        for v in r:
            if not v.is_integer() or v.to_fraction() < 0:
                raise DecompositionError(f"product multiplicity {v} is not a nonnegative integer")
            line.append(int(v.to_fraction()))
        out.append(line)
    return out


def modular_invariant(U: Subgroup, gamma: Cocycle2 | None = None) -> InvariantMatrix:
    """Invariant matrix of the trivialising algebra (U, γ) in Z(G x Q)."""
    GQ = U.parent
    G, Q = GQ.factors
    raw = product_decomposition(algebra_character(U, gamma))
    # Z = sum m[i][j] χ_i conj(χ_j), and conj(χ_j) is the character of c(j)
    c = conjugation_permutation(Q)
    m = [[row[c[j]] for j in range(len(row))] for row in raw]
    return InvariantMatrix(tuple(x.label for x in simple_objects(G)),
                           tuple(x.label for x in simple_objects(Q)),
                           tuple(map(tuple, m)), tuple(map(tuple, raw)))


@dataclass
class InvarianceReport:
    s_fixed: bool
    t_fixed: bool

    @property
    def ok(self) -> bool:
        return self.s_fixed and self.t_fixed


def verify_invariance(chi: PairFunction) -> InvarianceReport:
    return InvarianceReport(sl2_act("S", chi) == chi, sl2_act("T", chi) == chi)
