"""2-cocycles and the Schur multiplier H^2(H, k*).

Cocycle values are roots of unity, stored as exponents: a table entry ``t``
with modulus ``N`` stands for ``exp(2 pi i t / N)``.  Equivalently the
cocycle takes values ``t/N`` in Q/Z, which is how the classes are computed:
``H^2(H, k*) = H^2(H, Q/Z)`` because the torsion of ``k*`` is ``Q/Z``.

For each prime ``p`` with ``p^a || |H|`` the coboundary map ``d2`` on
normalised 2-cochains is reduced modulo ``K = p^(a+1)``.  Its diagonal
entries ``s`` with ``0 < v_p(s) <= a`` give the p-part of H^2, one cyclic
summand ``Z/s`` each, while the entries that vanish mod ``K`` span the
coboundaries.  Nothing can sit in between, since H^2 is killed by ``|H|``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import gcd, lcm, prod

import numpy as np
import scipy.sparse as sp

from .groups import FiniteGroup, Subgroup, centralizer, check_cap, generating_set, normalizer
from .modlinalg import LocalSolver, SolverError, prime_powers, solve_mod


@dataclass(frozen=True, eq=False)
class Cocycle2:
    """A normalised 2-cochain on ``domain`` with values ``zeta_modulus^table``.

    ``table`` is indexed by local positions in ``domain.members``.
    """

    domain: Subgroup
    modulus: int
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64) % self.modulus
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def group(self) -> FiniteGroup:
        return self.domain.as_group

    def __call__(self, f: int, g: int) -> int:
        idx = self.domain.index
        return int(self.table[idx[f], idx[g]])

    def pairing(self, f: int, g: int) -> int:
        """Exponent of ``γ(f|g) = γ(f,g) γ(g,f)^-1`` for commuting ``f, g``."""
        idx = self.domain.index
        a, b = idx[f], idx[g]
        return int(self.table[a, b] - self.table[b, a]) % self.modulus

    def is_normalised(self) -> bool:
        return not (self.table[0].any() or self.table[:, 0].any())

    def is_cocycle(self) -> bool:
        return cocycle_defect(self.group.mult, self.table, self.modulus) == 0

    def is_zero(self) -> bool:
        return not self.table.any()

    def rescale(self, modulus: int) -> "Cocycle2":
        """Same values with a modulus that is a multiple of the current one."""
        if modulus % self.modulus:
            raise ValueError(f"modulus {modulus} is not a multiple of {self.modulus}")
        return Cocycle2(self.domain, modulus, self.table * (modulus // self.modulus))

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        if self.domain != other.domain:
            raise ValueError("cocycles live on different groups")
        m = lcm(self.modulus, other.modulus)
        return Cocycle2(self.domain, m, self.rescale(m).table + other.rescale(m).table)

    def __neg__(self) -> "Cocycle2":
        return Cocycle2(self.domain, self.modulus, -self.table)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        return self + (-other)

    def conjugate(self, x: int) -> "Cocycle2":
        """``γ^x`` on ``x H x^-1`` with ``γ^x(f, g) = γ(x^-1 f x, x^-1 g x)``."""
        G = self.domain.parent
        target = self.domain.conjugate(x)
        xi = int(G.inv[x])
        idx = self.domain.index
        src = [idx[G.conj(xi, f)] for f in target.members]
        return Cocycle2(target, self.modulus, self.table[np.ix_(src, src)])

    def same_values(self, other: "Cocycle2") -> bool:
        if self.domain != other.domain:
            return False
        m = lcm(self.modulus, other.modulus)
        return np.array_equal(self.rescale(m).table, other.rescale(m).table)


def zero_cocycle(S: Subgroup, modulus: int | None = None) -> Cocycle2:
    return Cocycle2(S, modulus or S.order, np.zeros((S.order, S.order), dtype=np.int64))


def cocycle_defect(mult: np.ndarray, table: np.ndarray, modulus: int) -> int:
    """Number of triples violating ``t(f,g) + t(fg,h) = t(g,h) + t(f,gh)``."""
    n = mult.shape[0]
    f = np.arange(n)[:, None, None]
    g = np.arange(n)[None, :, None]
    h = np.arange(n)[None, None, :]
    fg = mult[f, g]
    gh = mult[g, h]
    lhs = table[f, g] + table[fg, h]
    rhs = table[g, h] + table[f, gh]
    return int(np.count_nonzero((lhs - rhs) % modulus))


def restrict_cocycle(gamma: Cocycle2, S: Subgroup) -> Cocycle2:
    if not S.issubset(gamma.domain):
        raise ValueError("restriction target is not contained in the domain")
    idx = gamma.domain.index
    pos = [idx[s] for s in S.members]
    return Cocycle2(S, gamma.modulus, gamma.table[np.ix_(pos, pos)])


def commutator_character(gamma: Cocycle2, f: int) -> dict[int, int]:
    """``γ_f(g) = γ(f,g) γ(g,f)^-1`` on ``C_H(f)``, as exponents mod ``gamma.modulus``."""
    H = gamma.domain
    G = H.parent
    cent = [g for g in H.members if G.mul(f, g) == G.mul(g, f)]
    chi = {g: gamma.pairing(f, g) for g in cent}
    m = gamma.modulus
    for a in cent:
        for b in cent:
            if chi[G.mul(a, b)] != (chi[a] + chi[b]) % m:
                raise AssertionError("commutator pairing is not multiplicative")
    return chi


# -- coboundary matrices -------------------------------------------------------

def _pair_column(n: int, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return (f - 1) * (n - 1) + (g - 1)


@functools.lru_cache(maxsize=None)
def d2_matrix(H: FiniteGroup) -> sp.csr_matrix:
    """``d2`` on normalised 2-cochains, evaluated on triples ``(f, g, h)`` with ``h`` a generator.

    Those rows cut out the same kernel as the full set of triples: for a
    fixed cochain, the ``h`` with ``(dγ)(f, g, h) = 0`` for all ``f, g`` are
    closed under products, since ``d(dγ) = 0`` expresses ``(dγ)(f, g, h h')``
    through values with ``h`` or ``h'`` in the last slot.
    """
    n = H.order
    if n == 1:
        return sp.csr_matrix((0, 0), dtype=np.int64)
    e = np.arange(1, n)
    f, g, h = (a.ravel() for a in np.meshgrid(e, e, np.array(generating_set(H.whole())), indexing="ij"))
    rows = np.arange(f.size)
    fg = H.mult[f, g]
    gh = H.mult[g, h]
    data, r, c = [], [], []
    for sign, (a, b) in ((1, (g, h)), (-1, (fg, h)), (1, (f, gh)), (-1, (f, g))):
        keep = (a != 0) & (b != 0)
        data.append(np.full(keep.sum(), sign, dtype=np.int64))
        r.append(rows[keep])
        c.append(_pair_column(n, a[keep], b[keep]))
    m = (n - 1) ** 2
    return sp.csr_matrix((np.concatenate(data), (np.concatenate(r), np.concatenate(c))),
                         shape=(f.size, m), dtype=np.int64)


@functools.lru_cache(maxsize=None)
def d1_matrix(H: FiniteGroup) -> sp.csr_matrix:
    """``(dc)(f,g) = c(f) + c(g) - c(fg)`` on normalised 1-cochains."""
    n = H.order
    if n == 1:
        return sp.csr_matrix((0, 0), dtype=np.int64)
    e = np.arange(1, n)
    f, g = (a.ravel() for a in np.meshgrid(e, e, indexing="ij"))
    fg = H.mult[f, g]
    rows = np.arange(f.size)
    keep = fg != 0
    r = np.concatenate([rows, rows, rows[keep]])
    c = np.concatenate([f - 1, g - 1, fg[keep] - 1])
    data = np.concatenate([np.ones(2 * f.size, dtype=np.int64), -np.ones(keep.sum(), dtype=np.int64)])
    return sp.csr_matrix((data, (r, c)), shape=(f.size, n - 1), dtype=np.int64)


def _flatten(table: np.ndarray) -> np.ndarray:
    return table[1:, 1:].ravel()


def _unflatten(vec: np.ndarray, n: int) -> np.ndarray:
    t = np.zeros((n, n), dtype=np.int64)
    t[1:, 1:] = np.asarray(vec, dtype=np.int64).reshape(n - 1, n - 1)
    return t


# -- the local computation ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class _LocalPart:
    p: int
    K: int
    solver: LocalSolver
    torsion: tuple[int, ...]  # positions on the deferred diagonal
    orders: tuple[int, ...]
    vectors: tuple[np.ndarray, ...]  # kernel vectors mod K, one per torsion position


@functools.lru_cache(maxsize=None)
def _local_part(H: FiniteGroup, p: int, k: int) -> _LocalPart:
    """p-part of H^2 computed modulo ``K = p^k`` (``k`` exceeds v_p(|H|))."""
    n = H.order
    K = p ** k
    D2 = d2_matrix(H)
    for attempt in range(6):
        solver = LocalSolver(D2, p, k, seed=1000 * attempt + n)
        sig = solver.sigma
        free = sum(1 for s in sig if s == 0)
        torsion = tuple(i for i, s in enumerate(sig) if s not in (0, 1))
        if free != n - 1:
            continue
        vectors, orders = [], []
        for i in torsion:
            y = np.zeros(len(sig), dtype=np.int64)
            y[i] = K // sig[i]
            X = solver._back_substitute((solver.C @ y % K).reshape(-1, 1), None)[:, 0]
            vectors.append(X)
            orders.append(sig[i])
        if vectors and np.any((D2 @ np.array(vectors).T) % K):
            continue
        return _LocalPart(p, K, solver, torsion, tuple(orders), tuple(vectors))
    raise SolverError(f"cohomology of {H!r} at p={p} failed verification")


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    """H^2(domain, k*) with one cyclic generator per prime-power summand."""

    domain: Subgroup
    modulus: int
    generators: tuple[Cocycle2, ...]
    orders: tuple[int, ...]
    primes: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.orders)

    def is_trivial(self) -> bool:
        return not self.orders

    @property
    def structure(self) -> tuple[int, ...]:
        """Invariant factors ``d1 | d2 | ...``."""
        by_prime: dict[int, list[int]] = {}
        for p, o in zip(self.primes, self.orders):
            by_prime.setdefault(p, []).append(o)
        for v in by_prime.values():
            v.sort(reverse=True)
        length = max((len(v) for v in by_prime.values()), default=0)
        out = [prod(v[i] for v in by_prime.values() if i < len(v)) for i in range(length)]
        return tuple(sorted(out))

    def class_coordinates(self):
        return itertools.product(*(range(o) for o in self.orders))

    def representative(self, coords) -> Cocycle2:
        t = np.zeros((self.domain.order,) * 2, dtype=np.int64)
        for c, g in zip(coords, self.generators):
            t = t + c * g.table
        return Cocycle2(self.domain, self.modulus, t)

    @functools.cached_property
    def representatives(self) -> tuple[Cocycle2, ...]:
        """One cocycle per class, the trivial class first."""
        return tuple(self.representative(c) for c in self.class_coordinates())

    def class_of(self, gamma: Cocycle2) -> tuple[int, ...]:
        """Coordinates of the class of ``gamma`` with respect to the generators."""
        if gamma.domain != self.domain:
            raise ValueError("cocycle lives on a different group")
        return _coordinates(self.domain.as_group, gamma.table, gamma.modulus,
                            self.generators, self.primes, self.orders)


def _local_coords(part: _LocalPart, H: FiniteGroup, table: np.ndarray, modulus: int) -> list[int]:
    """Coordinates of the p-primary part of ``table/modulus`` in ``part``'s basis."""
    p, K = part.p, part.K
    n = H.order
    b = _vp(modulus, p)
    if b == 0:
        return [0] * len(part.torsion)
    pb = p ** b
    u = pow(modulus // pb, -1, pb)
    # the p-primary component of t/modulus is (t*u mod p^b)/p^b = X/K
    X = (_flatten(table) % modulus) * u % pb * (K // pb) % K
    s = part.solver
    y = s.Cinv @ (X[s.deferred] % K) % K
    coords = []
    for i, o in zip(part.torsion, part.orders):
        step = K // o
        if y[i] % step:
            raise ValueError("table is not a cocycle")
        coords.append(int(y[i] // step) % o)
    return coords


def _coordinates(H: FiniteGroup, table: np.ndarray, modulus: int, gens, primes, orders) -> tuple[int, ...]:
    n = H.order
    out: list[int] = []
    for p in dict.fromkeys(primes):
        a, b = _vp(n, p), _vp(modulus, p)
        mine = [i for i, q in enumerate(primes) if q == p]
        if b <= a:
            out.extend(_local_coords(_local_part(H, p, a + 1), H, table, modulus))
            continue
        # larger denominators: use a finer reduction, then express the answer
        # in terms of the canonical generators by matching
        alt = _local_part(H, p, b + 1)
        target = _local_coords(alt, H, table, modulus)
        images = [_local_coords(alt, H, gens[i].table, gens[i].modulus) for i in mine]
        for z in itertools.product(*(range(orders[i]) for i in mine)):
            got = [sum(zj * img[r] for zj, img in zip(z, images)) % o
                   for r, o in enumerate(alt.orders)]
            if got == target:
                out.extend(z)
                break
        else:
            raise AssertionError("class not found among canonical generators")
    return tuple(out)


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@functools.lru_cache(maxsize=None)
def second_cohomology(H: Subgroup) -> CohomologyGroup:
    """H^2(H, k*) with explicit normalised representatives of modulus ``|H|``."""
    Hl = H.as_group
    n = Hl.order
    check_cap("cohomology", n)
    gens, orders, primes = [], [], []
    if n > 1:
        for p, a in prime_powers(n):
            part = _local_part(Hl, p, a + 1)
            for X, o in zip(part.vectors, part.orders):
                step = part.K // o
                t = (X // step) * (n // o) % n
                gamma = Cocycle2(H, n, _unflatten(t, n))
                assert gamma.is_cocycle()
                gens.append(gamma)
                orders.append(o)
                primes.append(p)
    return CohomologyGroup(H, n, tuple(gens), tuple(orders), tuple(primes))


def schur_multiplier_order(G: FiniteGroup) -> int:
    return second_cohomology(G.whole()).order


@dataclass(frozen=True)
class Cochain1:
    """A normalised 1-cochain with values ``zeta_modulus^values[i]`` on ``domain.members[i]``."""

    domain: Subgroup
    modulus: int
    values: np.ndarray

    def __call__(self, g: int) -> int:
        return int(self.values[self.domain.index[g]])


def is_coboundary(gamma: Cocycle2) -> Cochain1 | None:
    """A cochain ``c`` with ``dc = γ``, or ``None``.

    The witness takes values in ``μ_{N^2}`` for ``N = gamma.modulus``: a
    solution in Q/Z always exists there once one exists at all, but it need not
    lie in ``μ_N`` (on a cyclic group of order 2, the constant cocycle
    ``γ(a,a) = -1`` needs ``c(a) = i``).
    """
    H = gamma.domain
    n = H.order
    N = gamma.modulus
    if n == 1 or N == 1:
        return Cochain1(H, N * N, np.zeros(n, dtype=np.int64))
    D1 = d1_matrix(H.as_group)
    b = _flatten(gamma.table) * N
    sol = solve_mod(D1, b, N * N)
    if sol.particular is None:
        return None
    vals = np.zeros(n, dtype=np.int64)
    vals[1:] = sol.particular
    return Cochain1(H, N * N, vals)


def coboundary(c: Cochain1) -> Cocycle2:
    """``dc`` as a cocycle of the same modulus."""
    H = c.domain.as_group
    v = c.values
    t = v[:, None] + v[None, :] - v[H.mult]
    return Cocycle2(c.domain, c.modulus, t)


def homomorphisms_to_roots(S: Subgroup, modulus: int):
    """All homomorphisms ``S -> μ_modulus``, as exponent arrays over ``S.members``."""
    n = S.order
    if n == 1:
        return [np.zeros(1, dtype=np.int64)]
    sol = solve_mod(d1_matrix(S.as_group), None, modulus)
    out = []
    for x in sol.elements():
        v = np.zeros(n, dtype=np.int64)
        v[1:] = x
        out.append(v)
    return out


def classes_up_to_symmetry(H: Subgroup, coh: CohomologyGroup | None = None,
                           acting: Subgroup | None = None) -> list[tuple[Cocycle2, list[tuple[int, ...]]]]:
    """Orbits of the conjugation action of ``acting`` (default ``N_G(H)``) on H^2(H).

    Returns ``(representative, orbit coordinates)`` pairs, the trivial class first.
    """
    coh = coh or second_cohomology(H)
    acting = acting or normalizer(H)
    coords = list(coh.class_coordinates())
    if len(coords) == 1:
        return [(coh.representatives[0], coords)]
    parent: dict = {c: c for c in coords}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    gens = generating_set(acting)
    for c in coords:
        gamma = coh.representative(c)
        for x in gens:
            img = coh.class_of(gamma.conjugate(x))
            a, b = find(c), find(img)
            if a != b:
                lo, hi = sorted((a, b), key=coords.index)
                parent[hi] = lo
    orbits: dict = {}
    for c in coords:
        orbits.setdefault(find(c), []).append(c)
    return [(coh.representative(root), members) for root, members in orbits.items()]
