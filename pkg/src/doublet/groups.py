"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..order-1`` with ``0`` the identity.  Every
construction (catalog groups, direct products, quotients) materialises a
full table, which keeps all downstream machinery uniform and exact.
"""
from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 4096
ENUMERATION_CAP = 64


class GroupError(ValueError):
    """Malformed group descriptor or an invalid group construction."""


class CapExceeded(GroupError):
    """An operation was asked to work on a group beyond its size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


def enumeration_cap() -> int:
    """Cap for exponential-time enumerations; ``DOUBLET_SIZE_CAP`` overrides."""
    value = os.environ.get("DOUBLET_SIZE_CAP")
    return int(value) if value else ENUMERATION_CAP


def check_cap(what: str, size: int, cap: int | None = None) -> None:
    cap = enumeration_cap() if cap is None else cap
    if size > cap:
        raise CapExceeded(what, size, cap)


@dataclass(eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``factors`` is set for direct products built by :func:`direct_product`;
    element ``(a, b)`` of ``G x Q`` then has index ``a * |Q| + b``.
    """

    mult: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str = ""
    factors: tuple["FiniteGroup", "FiniteGroup"] | None = None
    inv: np.ndarray = field(init=False)

    def __post_init__(self):
        self.mult = np.asarray(self.mult, dtype=np.int64)
        self.mult.setflags(write=False)
        n = self.mult.shape[0]
        if self.mult.shape != (n, n) or n == 0:
            raise GroupError("multiplication table must be a non-empty square")
        if not (np.array_equal(self.mult[0], np.arange(n))
                and np.array_equal(self.mult[:, 0], np.arange(n))):
            raise GroupError("element 0 must be a two-sided identity")
        rows, cols = np.nonzero(self.mult == 0)
        inv = np.full(n, -1, dtype=np.int64)
        inv[rows] = cols
        if (inv < 0).any() or not np.array_equal(self.mult[inv, np.arange(n)], np.zeros(n)):
            raise GroupError("some element has no two-sided inverse")
        inv.setflags(write=False)
        self.inv = inv
        if self.labels is not None:
            if len(self.labels) != n or len(set(self.labels)) != n:
                raise GroupError("labels must be distinct, one per element")

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def mul(self, *elements: int) -> int:
        result = 0
        for g in elements:
            result = int(self.mult[result, g])
        return result

    def conj(self, x: int, g: int) -> int:
        """Return ``x g x^-1``."""
        return int(self.mult[self.mult[x, g], self.inv[x]])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        result = 0
        for _ in range(k):
            result = int(self.mult[result, g])
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.mult[x, g])
            k += 1
        return k

    @functools.cached_property
    def exponent(self) -> int:
        from math import lcm
        return lcm(*(self.element_order(g) for g in range(self.order)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def check_associative(self) -> bool:
        # (ab)c == a(bc) for all triples, vectorised
        m = self.mult
        return bool(np.array_equal(m[m], m[:, m]))

    # -- subgroups ---------------------------------------------------------
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        """The subgroup generated by ``elements``."""
        return Subgroup.from_mask(self, closure(self, 1 | _mask(elements)))


def _mask(elements: Iterable[int]) -> int:
    mask = 0
    for g in elements:
        mask |= 1 << int(g)
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def closure(G: FiniteGroup, mask: int) -> int:
    """Smallest subgroup containing the elements of ``mask`` (as a bitmask)."""
    gens = mask_elements(mask)
    if not gens:
        return 1
    mask |= 1
    frontier = list(mask_elements(mask))
    mult = G.mult
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(mult[x, g])
                if not mask >> y & 1:
                    mask |= 1 << y
                    new.append(y)
        frontier = new
    return mask


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @staticmethod
    def from_mask(parent: FiniteGroup, mask: int) -> "Subgroup":
        return Subgroup(parent, mask_elements(mask))

    @functools.cached_property
    def mask(self) -> int:
        return _mask(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> int(g) & 1)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def conjugate(self, x: int) -> "Subgroup":
        """``x S x^-1``."""
        return Subgroup(self.parent, tuple(sorted(self.parent.conj(x, g) for g in self.members)))

    def is_normal_in(self, other: "Subgroup") -> bool:
        return self.issubset(other) and all(self.conjugate(x) == self for x in other.members)

    @functools.cached_property
    def index(self) -> dict[int, int]:
        """Parent element index -> local index in :attr:`as_group`."""
        return {g: i for i, g in enumerate(self.members)}

    @functools.cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; local index ``i`` is ``members[i]``."""
        idx = np.full(self.parent.order, -1, dtype=np.int64)
        idx[list(self.members)] = np.arange(self.order)
        sub = self.parent.mult[np.ix_(self.members, self.members)]
        labels = tuple(self.parent.label(g) for g in self.members) if self.parent.labels else None
        return FiniteGroup(idx[sub], labels=labels, name=f"sub{self.order}({self.parent.name})")


# -- permutations and the catalog ------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation with 1-based points into a 0-based image tuple."""
    text = text.strip()
    if not text:
        raise GroupError("empty permutation")
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise GroupError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        parts = body.replace(",", " ").split()
        try:
            pts = [int(p) for p in parts]
        except ValueError as exc:
            raise GroupError(f"malformed cycle notation: {text!r}") from exc
        if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"malformed cycle notation: {text!r}")
        cycles.append(pts)
    top = max((max(c) for c in cycles if c), default=1)
    n = max(top, degree or 0)
    img = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def cycle_string(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + "".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "e"


def permutation_group(generators: Sequence[Sequence[int]], name: str = "",
                      cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    """Close permutation generators into a table.

    Elements are ordered breadth-first from the identity, multiplying on the
    right by the generators in the given order.  Products compose left to
    right: ``p^(xy) = (p^x)^y``.
    """
    n = max((len(g) for g in generators), default=1)
    gens = [tuple(g) + tuple(range(len(g), n)) for g in generators]
    ident = tuple(range(n))
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = tuple(g[p] for p in x)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded(f"closure of {name or 'generators'}", len(elements), cap)
        i += 1
    order = len(elements)
    mult = np.empty((order, order), dtype=np.int64)
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            mult[a, b] = index[tuple(y[p] for p in x)]
    labels = tuple(cycle_string(x) for x in elements)
    return FiniteGroup(mult, labels=labels, name=name)


_CATALOG = {
    "C1": [],
    "S3": ["(1 2 3)", "(1 2)"],
    "A3": ["(1 2 3)"],
    "C2xC2": ["(1 2)", "(3 4)"],
    "D4": ["(1 2 3 4)", "(1 3)"],
    "Q8": ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"],
    "S4": ["(1 2 3 4)", "(1 2)"],
    "A4": ["(1 2 3)", "(1 2)(3 4)"],
}

CATALOG_NAMES = ("C1", "C2", "C3", "C4", "A3", "C2xC2", "S3", "D4", "Q8", "A4", "S4")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    if n == 1:
        return permutation_group([], name="C1")
    return permutation_group([tuple(list(range(1, n)) + [0])], name=f"C{n}")


def metacyclic_group(n: int, k: int) -> FiniteGroup:
    """``C_n : C_m`` where the complement generator acts by ``a -> a^k``.

    ``m`` is the multiplicative order of ``k`` modulo ``n``; ``C3:2`` is S3
    and ``C4:3`` is D4.
    """
    from math import gcd
    if n < 1 or gcd(k, n) != 1:
        raise GroupError(f"C{n}:{k} needs k coprime to n")
    m, x = 1, k % n
    while x != 1 % n:
        x = x * k % n
        m += 1
    # elements a^i b^j, (i, j) -> i + n j; b a b^-1 = a^k
    order = n * m
    mult = np.empty((order, order), dtype=np.int64)
    powk = [pow(k, j, n) for j in range(m)]
    for i1, j1, i2, j2 in iproduct(range(n), range(m), range(n), range(m)):
        # a^i1 b^j1 a^i2 b^j2 = a^(i1 + k^j1 i2) b^(j1 + j2)
        i = (i1 + powk[j1] * i2) % n
        j = (j1 + j2) % m
        mult[i1 + n * j1, i2 + n * j2] = i + n * j
    labels = tuple(_ab_label(idx % n, idx // n) for idx in range(order))
    return FiniteGroup(mult, labels=labels, name=f"C{n}:{k}")


def _ab_label(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("a" if i == 1 else f"a^{i}")
    if j:
        parts.append("b" if j == 1 else f"b^{j}")
    return "".join(parts) or "e"


def direct_product(G: FiniteGroup, Q: FiniteGroup) -> FiniteGroup:
    """``G x Q`` with element ``(a, b)`` at index ``a * |Q| + b``."""
    n, m = G.order, Q.order
    a = np.arange(n * m) // m
    b = np.arange(n * m) % m
    mult = G.mult[np.ix_(a, a)] * m + Q.mult[np.ix_(b, b)]
    labels = tuple(f"({G.label(x)},{Q.label(y)})" for x in range(n) for y in range(m))
    return FiniteGroup(mult, labels=labels, name=f"{G.name}x{Q.name}", factors=(G, Q))


@functools.lru_cache(maxsize=None)
def build_group(spec: str, cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    """Build a group from a catalog name, ``GxH`` product or ``perm: ...`` list."""
    text = spec.strip()
    if text.lower().startswith("perm:"):
        body = text[5:]
        gens = [parse_permutation(p) for p in _split_generators(body)]
        return permutation_group(gens, name=text, cap=cap)
    if text in _CATALOG:
        gens = [parse_permutation(p) for p in _CATALOG[text]]
        return permutation_group(gens, name=text, cap=cap)
    m = re.fullmatch(r"C(\d+):(\d+)", text)
    if m:
        G = metacyclic_group(int(m.group(1)), int(m.group(2)))
        check_cap(text, G.order, cap)
        return G
    m = re.fullmatch(r"C(\d+)", text)
    if m:
        n = int(m.group(1))
        check_cap(text, n, cap)
        return cyclic_group(n)
    if "x" in text:
        parts = text.split("x")
        if all(parts):
            group = build_group(parts[0], cap)
            for p in parts[1:]:
                group = direct_product(group, build_group(p, cap))
                check_cap(text, group.order, cap)
            group.name = text
            return group
    raise GroupError(f"unknown group descriptor: {spec!r}")


def _split_generators(body: str) -> list[str]:
    gens = [g.strip() for g in body.split(",")]
    # commas may also separate points inside a cycle; re-join fragments
    merged: list[str] = []
    for g in gens:
        if merged and merged[-1].count("(") > merged[-1].count(")"):
            merged[-1] += " " + g
        else:
            merged.append(g)
    merged = [g for g in merged if g]
    if not merged:
        raise GroupError("perm: needs at least one generator")
    return merged


# -- classes, centralisers, subgroups --------------------------------------

@functools.lru_cache(maxsize=None)
def conjugacy_classes(G: FiniteGroup) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Classes as ``(representative, members)``, ordered by minimal element."""
    seen = np.zeros(G.order, dtype=bool)
    out = []
    for g in range(G.order):
        if seen[g]:
            continue
        members = sorted({G.conj(x, g) for x in range(G.order)})
        seen[members] = True
        out.append((g, tuple(members)))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def class_index(G: FiniteGroup) -> np.ndarray:
    idx = np.empty(G.order, dtype=np.int64)
    for i, (_, members) in enumerate(conjugacy_classes(G)):
        idx[list(members)] = i
    idx.setflags(write=False)
    return idx


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    col = G.mult[:, g]
    row = G.mult[g, :]
    return Subgroup(G, tuple(int(x) for x in np.nonzero(col == row)[0]))


def normalizer(S: Subgroup) -> Subgroup:
    G = S.parent
    return Subgroup(G, tuple(x for x in range(G.order) if S.conjugate(x) == S))


@functools.lru_cache(maxsize=None)
def commuting_pairs(G: FiniteGroup) -> tuple[tuple[int, int], ...]:
    """All ``(f, g)`` with ``fg = gf``, in lexicographic order."""
    f, g = np.nonzero(G.mult == G.mult.T)
    return tuple(zip(f.tolist(), g.tolist()))


@functools.lru_cache(maxsize=None)
def all_subgroups(G: FiniteGroup) -> tuple[int, ...]:
    """Bitmasks of every subgroup of ``G``.

    Starts from the cyclic subgroups and closes under joins with them.
    """
    check_cap("subgroup enumeration", G.order)
    cyclic = sorted({closure(G, 1 << g) for g in range(G.order)})
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for s in frontier:
            for c in cyclic:
                if c & s == c:
                    continue
                j = closure(G, s | c)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return tuple(sorted(found, key=lambda m: (bin(m).count("1"), mask_elements(m))))


def conjugate_mask(G: FiniteGroup, mask: int, x: int) -> int:
    elems = np.array(mask_elements(mask), dtype=np.int64)
    images = G.mult[G.mult[x, elems], G.inv[x]]
    return _mask(images.tolist())


@functools.lru_cache(maxsize=None)
def subgroup_classes(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """One lexicographically least representative per conjugacy class of subgroups."""
    reps = []
    seen: set[int] = set()
    for mask in all_subgroups(G):
        if mask in seen:
            continue
        orbit = {conjugate_mask(G, mask, x) for x in range(G.order)}
        seen |= orbit
        reps.append(min(orbit, key=mask_elements))
    subs = [Subgroup.from_mask(G, m) for m in reps]
    subs.sort(key=lambda s: (s.order, s.members))
    return tuple(subs)


def generating_set(S: Subgroup) -> tuple[int, ...]:
    """A small generating set of ``S``, picked greedily from elements of large order."""
    G = S.parent
    gens: list[int] = []
    mask = 1
    for g in sorted(S.members, key=lambda g: (-G.element_order(g), g)):
        if mask == S.mask:
            break
        if not mask >> g & 1:
            gens.append(g)
            mask = closure(G, mask | (1 << g))
    return tuple(gens)


def subgroups_of(S: Subgroup) -> tuple[Subgroup, ...]:
    """All subgroups of ``G`` contained in ``S``."""
    G = S.parent
    return tuple(Subgroup.from_mask(G, m) for m in all_subgroups(G) if m & S.mask == m)


def find_conjugator(S: Subgroup, T: Subgroup) -> int | None:
    """Some ``x`` with ``x S x^-1 = T``, or ``None``."""
    if S.order != T.order:
        return None
    for x in range(S.parent.order):
        if S.conjugate(x) == T:
            return x
    return None


def class_of_subgroup(S: Subgroup) -> int:
    """Position of the conjugacy class of ``S`` in :func:`subgroup_classes`."""
    for i, rep in enumerate(subgroup_classes(S.parent)):
        if find_conjugator(S, rep) is not None:
            return i
    raise AssertionError("subgroup missing from class list")


# -- direct products and Goursat --------------------------------------------

def projections(U: Subgroup) -> tuple[Subgroup, Subgroup]:
    GQ = U.parent
    if GQ.factors is None:
        raise GroupError("parent is not marked as a direct product")
    G, Q = GQ.factors
    m = Q.order
    left = G.subgroup(g // m for g in U.members)
    right = Q.subgroup(g % m for g in U.members)
    return left, right


def kernels(U: Subgroup) -> tuple[Subgroup, Subgroup]:
    """``U ∩ (G x e)`` and ``U ∩ (e x Q)``, as subgroups of ``G`` and ``Q``."""
    GQ = U.parent
    if GQ.factors is None:
        raise GroupError("parent is not marked as a direct product")
    G, Q = GQ.factors
    m = Q.order
    left = Subgroup(G, tuple(sorted(g // m for g in U.members if g % m == 0)))
    right = Subgroup(Q, tuple(sorted(g % m for g in U.members if g < m)))
    return left, right


def pair_index(GQ: FiniteGroup, a: int, b: int) -> int:
    return a * GQ.factors[1].order + b


@dataclass(frozen=True)
class GoursatDatum:
    """``U = M x_P N``: surjections ``i: M -> P`` and ``j: N -> P``.

    ``i`` and ``j`` are dicts from parent element indices (of G and Q) to
    element indices of ``P``.
    """

    M: Subgroup
    N: Subgroup
    P: FiniteGroup
    i: dict
    j: dict


def quotient_group(M: Subgroup, K: Subgroup) -> tuple[FiniteGroup, dict[int, int]]:
    """``M/K`` on coset representatives (least element of each coset)."""
    G = M.parent
    cosets: dict[int, int] = {}
    reps = []
    for g in M.members:
        if g in cosets:
            continue
        coset = sorted(int(G.mult[g, k]) for k in K.members)
        idx = len(reps)
        reps.append(coset[0])
        for c in coset:
            cosets[c] = idx
    n = len(reps)
    mult = np.empty((n, n), dtype=np.int64)
    for a, x in enumerate(reps):
        for b, y in enumerate(reps):
            mult[a, b] = cosets[int(G.mult[x, y])]
    labels = tuple(G.label(r) + "K" if r else "K" for r in reps) if G.labels else None
    return FiniteGroup(mult, labels=labels, name=f"quotient{n}"), cosets


def goursat_decompose(U: Subgroup) -> GoursatDatum:
    GQ = U.parent
    M, N = projections(U)
    K1, _ = kernels(U)
    P, i = quotient_group(M, K1)
    m = GQ.factors[1].order
    j: dict[int, int] = {}
    for g in U.members:
        a, b = divmod(g, m)
        j.setdefault(b, i[a])
    return GoursatDatum(M, N, P, i, j)


def _is_surjective_hom(S: Subgroup, P: FiniteGroup, phi: dict) -> bool:
    G = S.parent
    if set(phi) != set(S.members) or set(phi.values()) != set(range(P.order)):
        return False
    return all(phi[int(G.mult[x, y])] == P.mult[phi[x], phi[y]]
               for x in S.members for y in S.members)


def goursat_compose(d: GoursatDatum, GQ: FiniteGroup) -> Subgroup:
    """The fibred product ``{(g, q) : i(g) = j(q)}`` inside ``GQ``."""
    if GQ.factors is None:
        raise GroupError("parent is not marked as a direct product")
    if not (_is_surjective_hom(d.M, d.P, d.i) and _is_surjective_hom(d.N, d.P, d.j)):
        raise GroupError("Goursat maps must be surjective homomorphisms")
    members = sorted(pair_index(GQ, g, q) for g in d.M.members for q in d.N.members
                     if d.i[g] == d.j[q])
    return Subgroup(GQ, tuple(members))


def diagonal(GQ: FiniteGroup, S: Subgroup) -> Subgroup:
    """``{(s, s) : s in S}`` for ``GQ = G x G``."""
    return Subgroup(GQ, tuple(sorted(pair_index(GQ, s, s) for s in S.members)))


def product_subgroup(GQ: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(GQ, tuple(sorted(pair_index(GQ, a, b) for a in A.members for b in B.members)))
