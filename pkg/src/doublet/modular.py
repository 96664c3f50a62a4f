"""Modular data of the Drinfeld double Z(G).

Simple objects are pairs (class representative g, irreducible character of
C_G(g)).  Characters of objects are functions on commuting pairs, stored as
one row of a :class:`CycloMatrix` whose columns follow
:func:`groups.commuting_pairs`.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chartable import CharacterTable, character_table
from .cyclotomic import CycloMatrix, Cyclotomic, phi, power_table
from .groups import FiniteGroup, GroupError, Subgroup, centralizer, commuting_pairs, conjugacy_classes


# -- commuting pairs and their reindexings ------------------------------------

@dataclass(frozen=True, eq=False)
class PairIndex:
    pairs: np.ndarray  # (P, 2)
    pid: np.ndarray  # (n, n), -1 off the commuting locus
    s_perm: np.ndarray  # (f, g) -> (g, f^-1)
    t_perm: np.ndarray  # (f, g) -> (f, f g)
    dual_perm: np.ndarray  # (f, g) -> (f^-1, g^-1)


@functools.lru_cache(maxsize=None)
def pair_index(G: FiniteGroup) -> PairIndex:
    pairs = np.array(commuting_pairs(G), dtype=np.int64).reshape(-1, 2)
    pid = np.full((G.order, G.order), -1, dtype=np.int64)
    pid[pairs[:, 0], pairs[:, 1]] = np.arange(len(pairs))
    f, g = pairs[:, 0], pairs[:, 1]
    inv = G.inv
    return PairIndex(pairs, pid, pid[g, inv[f]], pid[f, G.mult[f, g]], pid[inv[f], inv[g]])


class PairFunction:
    """A k-valued function on the commuting pairs of ``group``."""

    __slots__ = ("group", "row")

    def __init__(self, group: FiniteGroup, row: CycloMatrix):
        if row.shape != (1, len(pair_index(group).pairs)):
            raise ValueError("pair function has the wrong number of values")
        self.group = group
        self.row = row

    @classmethod
    def from_values(cls, G: FiniteGroup, values: Sequence) -> "PairFunction":
        return cls(G, CycloMatrix.from_entries([list(values)]))

    @classmethod
    def from_exponent_counts(cls, G: FiniteGroup, counts: np.ndarray, conductor: int,
                             den: int = 1) -> "PairFunction":
        """Value at pair ``p`` is ``(1/den) sum_k counts[p, k] zeta_conductor^k``."""
        basis = np.array(power_table(conductor), dtype=object)
        coeffs = (np.asarray(counts, dtype=object) @ basis).T
        return cls(G, CycloMatrix(conductor, coeffs.reshape(phi(conductor), 1, -1), den))

    @classmethod
    def zero(cls, G: FiniteGroup) -> "PairFunction":
        P = len(pair_index(G).pairs)
        return cls(G, CycloMatrix(1, np.zeros((1, 1, P), dtype=object)))

    def __call__(self, f: int, g: int) -> Cyclotomic:
        p = int(pair_index(self.group).pid[f, g])
        if p < 0:
            raise GroupError(f"elements {f} and {g} do not commute")
        return self.row[0, p]

    def values(self) -> list[Cyclotomic]:
        return self.row.entries()[0]

    def items(self):
        return zip(map(tuple, pair_index(self.group).pairs.tolist()), self.values())

    def reindex(self, perm: np.ndarray) -> "PairFunction":
        """``new[p] = old[perm[p]]``."""
        r = self.row
        return PairFunction(self.group, CycloMatrix(r.n, r.coeffs[:, :, perm], r.den))

    def _same_group(self, other: "PairFunction"):
        if other.group is not self.group:
            raise GroupError("pair functions live on different groups")

    def __add__(self, other: "PairFunction") -> "PairFunction":
        self._same_group(other)
        return PairFunction(self.group, self.row + other.row)

    def __sub__(self, other: "PairFunction") -> "PairFunction":
        self._same_group(other)
        return PairFunction(self.group, self.row - other.row)

    def scale(self, x) -> "PairFunction":
        return PairFunction(self.group, self.row.scale(x))

    def conj(self) -> "PairFunction":
        return PairFunction(self.group, self.row.conj())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairFunction):
            return NotImplemented
        return other.group is self.group and self.row == other.row

    __hash__ = None

    def is_zero(self) -> bool:
        return self.row.is_zero()

    def __repr__(self) -> str:
        return f"PairFunction({self.group.name or '?'}, {len(pair_index(self.group).pairs)} pairs)"


def dual_character(chi: PairFunction) -> PairFunction:
    """``χ*(f, g) = χ(f^-1, g^-1)``."""
    return chi.reindex(pair_index(chi.group).dual_perm)


def sl2_act(gen: str, chi: PairFunction) -> PairFunction:
    """``S(χ)(f,g) = χ(g,f^-1)`` and ``T(χ)(f,g) = χ(f,fg)``."""
    idx = pair_index(chi.group)
    if gen == "S":
        return chi.reindex(idx.s_perm)
    if gen == "T":
        return chi.reindex(idx.t_perm)
    raise ValueError(f"unknown generator {gen!r}; expected 'S' or 'T'")


def pair_inner_product(chi: PairFunction, psi: PairFunction) -> Cyclotomic:
    """``(1/|G|) sum over commuting (f,g) of χ(f,g) conj(ψ(f,g))``."""
    chi._same_group(psi)
    m = chi.row @ psi.row.conj().T
    return m[0, 0] * Fraction(1, chi.group.order)


# -- simple objects -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SimpleObject:
    index: int
    class_index: int
    rep: int
    centralizer: Subgroup
    table: CharacterTable
    irrep: int
    label: str

    @property
    def degree(self) -> int:
        return self.table.degrees[self.irrep]

    @property
    def dimension(self) -> int:
        """``[G : C_G(g)] * ψ(e)``."""
        return self.centralizer.parent.order // self.centralizer.order * self.degree


@functools.lru_cache(maxsize=None)
def simple_objects(G: FiniteGroup) -> tuple[SimpleObject, ...]:
    out = []
    for c, (g, _) in enumerate(conjugacy_classes(G)):
        C = centralizer(G, g)
        table = character_table(C.as_group)
        for j in range(len(table)):
            out.append(SimpleObject(len(out), c, g, C, table, j, f"({G.label(g)},{j})"))
    return tuple(out)


def _witness_table(G: FiniteGroup, rng: np.random.Generator | None) -> dict[tuple[int, int], int]:
    """For each class rep ``g`` and class member ``u``: some ``x`` with ``x u x^-1 = g``."""
    out = {}
    for g, members in conjugacy_classes(G):
        for u in members:
            xs = [x for x in range(G.order) if G.conj(x, u) == g]
            out[g, u] = xs[0] if rng is None else xs[int(rng.integers(len(xs)))]
    return out


def _character_rows(G: FiniteGroup, rng: np.random.Generator | None = None) -> CycloMatrix:
    """Matrix of simple characters: row per simple object, column per commuting pair.

    ``χ_(g,ψ)(f,h) = ψ(x h x^-1)`` for any ``x`` with ``x f x^-1 = g``; the
    average over all such ``x`` in the transfer formula is constant because
    ψ is a class function on ``C_G(g)``.
    """
    simples = simple_objects(G)
    pairs = pair_index(G).pairs
    witness = _witness_table(G, rng)
    class_of = {}
    for g, members in conjugacy_classes(G):
        for u in members:
            class_of[u] = g
    n = G.exponent
    entries = [[Cyclotomic.zero()] * len(pairs) for _ in simples]
    for X in simples:
        local = X.centralizer.index
        vals = X.table.element_values[X.irrep]
        row = entries[X.index]
        for p, (f, h) in enumerate(pairs.tolist()):
            if class_of[f] != X.rep:
                continue
            x = witness[X.rep, f]
            row[p] = vals[local[G.conj(x, h)]]
    return CycloMatrix.from_entries(entries, n)


@functools.lru_cache(maxsize=None)
def character_matrix(G: FiniteGroup) -> CycloMatrix:
    return _character_rows(G)


def simple_character(X: SimpleObject) -> PairFunction:
    G = X.centralizer.parent
    M = character_matrix(G)
    return PairFunction(G, CycloMatrix(M.n, M.coeffs[:, [X.index], :], M.den))


def simple_characters(G: FiniteGroup) -> list[PairFunction]:
    return [simple_character(X) for X in simple_objects(G)]


# -- S and T ---------------------------------------------------------------------

def s_matrix(G: FiniteGroup, rng: np.random.Generator | None = None) -> CycloMatrix:
    """``S_{XY} = (1/|G|) sum_{uv=vu} χ_X(u, v^-1) χ_Y(v, u^-1)``.

    This is the formula with ``ψ(x v^-1 x^-1) ξ(y u^-1 y^-1)`` where ``x, y``
    conjugate ``u, v`` back to the class representatives.  With ``rng`` the
    conjugating witnesses are drawn at random instead of taking the first one.
    """
    chars = character_matrix(G) if rng is None else _character_rows(G, rng)
    idx = pair_index(G)
    left = CycloMatrix(chars.n, chars.coeffs[:, :, _pid_of(G, idx.pairs[:, 0], G.inv[idx.pairs[:, 1]])], chars.den)
    right = CycloMatrix(chars.n, chars.coeffs[:, :, _pid_of(G, idx.pairs[:, 1], G.inv[idx.pairs[:, 0]])], chars.den)
    return (left @ right.T).scale(Fraction(1, G.order))


def _pid_of(G: FiniteGroup, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return pair_index(G).pid[f, g]


def t_matrix(G: FiniteGroup) -> list[Cyclotomic]:
    """Diagonal of T: ``ψ(g)/ψ(e)``."""
    out = []
    for X in simple_objects(G):
        local = X.centralizer.index
        out.append(X.table.element_values[X.irrep][local[X.rep]] / X.degree)
    return out


def diag(entries: Sequence) -> CycloMatrix:
    n = len(entries)
    rows = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return CycloMatrix.from_entries(rows)


@dataclass(frozen=True, eq=False)
class ModularMatrices:
    basis: tuple[SimpleObject, ...]
    S: CycloMatrix
    T: tuple[Cyclotomic, ...]


def modular_matrices(G: FiniteGroup) -> ModularMatrices:
    return ModularMatrices(simple_objects(G), s_matrix(G), tuple(t_matrix(G)))


@dataclass
class ModularityReport:
    symmetric: bool = False
    unitary: bool = False
    s4_identity: bool = False
    projective_relation: bool = False
    positive_unit_row: bool = False
    t_roots_of_unity: bool = False
    lam: Cyclotomic | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_modularity(m: ModularMatrices, exponent: int | None = None) -> ModularityReport:
    """Check the relations of a projective SL2(Z) action; failures are reported."""
    rep = ModularityReport()
    S = m.S
    size = S.shape[0]
    I = CycloMatrix.identity(size)
    rep.symmetric = S == S.T
    # for Z(G), S is unitary, which in particular makes it invertible
    rep.unitary = S @ S.conj().T == I
    S2 = S @ S
    rep.s4_identity = S2 @ S2 == I
    T = diag(m.T)
    TS = T @ S
    lhs = TS @ TS @ TS
    lam = None
    for i in range(size):
        for j in range(size):
            if not S2[i, j].is_zero():
                lam = lhs[i, j] / S2[i, j]
                break
        if lam is not None:
            break
    rep.lam = lam
    rep.projective_relation = lam is not None and lhs == S2.scale(lam)
    G = m.basis[0].centralizer.parent if m.basis else None
    row0 = S.entries()[0]
    rep.positive_unit_row = all(x.is_rational() and x.to_fraction() > 0 for x in row0)
    e = exponent or (G.exponent if G is not None else 1)
    rep.t_roots_of_unity = all(t ** e == 1 for t in m.T)
    for name in ("symmetric", "unitary", "s4_identity", "projective_relation",
                 "positive_unit_row", "t_roots_of_unity"):
        if not getattr(rep, name):
            rep.failures.append(name)
    return rep


def global_dimension(G: FiniteGroup) -> int:
    return sum(X.dimension ** 2 for X in simple_objects(G))


@functools.lru_cache(maxsize=None)
def dual_permutation(G: FiniteGroup) -> tuple[int, ...]:
    """``i -> i*`` on simple objects, read off from dual characters."""
    chars = character_matrix(G)
    dual = CycloMatrix(chars.n, chars.coeffs[:, :, pair_index(G).dual_perm], chars.den)
    keys = {_column_key(chars, i): i for i in range(chars.shape[0])}
    return tuple(keys[_column_key(dual, i)] for i in range(chars.shape[0]))


@functools.lru_cache(maxsize=None)
def conjugation_permutation(G: FiniteGroup) -> tuple[int, ...]:
    """``i -> j`` with ``χ_j`` the complex conjugate of ``χ_i``.

    This differs from :func:`dual_permutation` in general: on Z(S3) every
    simple object is self-dual, while conjugation swaps ((123),1) and ((123),2).
    """
    chars = character_matrix(G)
    conj = chars.conj()
    keys = {_column_key(chars, i): i for i in range(chars.shape[0])}
    return tuple(keys[_column_key(conj, i)] for i in range(chars.shape[0]))


def _column_key(M: CycloMatrix, i: int):
    return (M.den, M.coeffs[:, i, :].tobytes() if M.coeffs.dtype != object else tuple(M.coeffs[:, i, :].ravel().tolist()))
