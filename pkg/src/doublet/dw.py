"""Dijkgraaf-Witten invariants Z_G(M) = |Hom(pi_1(M), G)| / |G|.

Manifolds enter only through a finite presentation of their fundamental
group.  Homomorphisms are counted by assigning generators one at a time; a
relator is tested as soon as all of its letters are assigned, over all
candidate values of the newest generator at once.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .groups import FiniteGroup

DEFAULT_BUDGET = 10 ** 7
MAX_GENERATORS = 4

Word = tuple[int, ...]  # letters +i / -i for generator i (1-based) and its inverse


class PresentationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"{needed} generator assignments exceed the budget of {budget}")
        self.needed = needed
        self.budget = budget


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generators: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        if not 0 <= self.generators <= MAX_GENERATORS:
            raise PresentationError(f"at most {MAX_GENERATORS} generators are supported")
        for w in self.relators:
            for letter in w:
                if letter == 0 or abs(letter) > self.generators:
                    raise PresentationError(f"relator {w} uses an unknown generator")

    def literal(self) -> str:
        words = [" ".join(_letter(l) for l in w) for w in self.relators]
        return f"<{self.generators}; {', '.join(words)}>"

    def free_product(self, other: "GroupPresentation") -> "GroupPresentation":
        n = self.generators
        shifted = tuple(tuple(l + n if l > 0 else l - n for l in w) for w in other.relators)
        return GroupPresentation(f"{self.name}*{other.name}", n + other.generators,
                                 self.relators + shifted)


def _letter(l: int) -> str:
    return f"x{l}" if l > 0 else f"x{-l}^-1"


_SYLLABLE = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """``x1 x2 x1^-1`` or ``x1^3 x2^-5``; spaces are optional, ``1`` is the empty word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    out: list[int] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _SYLLABLE.match(text, pos)
        if not m:
            raise PresentationError(f"cannot read word at {text[pos:]!r}")
        g = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        out.extend([g if e > 0 else -g] * abs(e))
        pos = m.end()
    return tuple(out)


def parse_presentation(text: str, name: str | None = None) -> GroupPresentation:
    """Read the literal ``<n; w1, w2, ...>``."""
    m = re.fullmatch(r"\s*<\s*(\d+)\s*(?:;(.*))?>\s*", text)
    if not m:
        raise PresentationError(f"expected '<n; w1, w2, ...>', got {text!r}")
    n = int(m.group(1))
    body = (m.group(2) or "").strip()
    words = tuple(parse_word(w) for w in body.split(",")) if body else ()
    return GroupPresentation(name or text.strip(), n, tuple(w for w in words if w))


def _commutator(i: int, j: int) -> Word:
    return (i, j, -i, -j)


def manifold_catalog() -> dict[str, GroupPresentation]:
    """Closed 3-manifolds with small fundamental groups, keyed by name."""
    cat = {
        "S^3": GroupPresentation("S^3", 1, ((1,),)),
        "S1xS2": GroupPresentation("S1xS2", 1, ()),
        "T3": GroupPresentation("T3", 3, (_commutator(1, 2), _commutator(1, 3), _commutator(2, 3))),
    }
    for p in range(2, 7):
        cat[f"L({p})"] = GroupPresentation(f"L({p})", 1, ((1,) * p,))
    cat["Poincare"] = GroupPresentation("Poincare", 2, (parse_word("x1 x2 x1 x2 x1^-3"),
                                                         parse_word("x1^3 x2^-5")))
    # Z^2 is not a closed 3-manifold group; it stands in for flat bundles over a torus
    cat["Z2"] = GroupPresentation("Z2", 2, (_commutator(1, 2),))
    return cat


def resolve_manifold(text: str) -> GroupPresentation:
    cat = manifold_catalog()
    if text in cat:
        return cat[text]
    if text.strip().startswith("<"):
        return parse_presentation(text)
    raise PresentationError(f"unknown manifold {text!r}; known: {', '.join(cat)}")


def _evaluate(G: FiniteGroup, word: Word, values: list) -> np.ndarray:
    """Value of ``word`` with generator ``i`` set to ``values[i-1]`` (ints or one array)."""
    acc = np.zeros_like(np.asarray(values[-1]))
    for l in word:
        x = values[l - 1] if l > 0 else G.inv[values[-l - 1]]
        acc = G.mult[acc, x]
    return acc


def count_homomorphisms(P: GroupPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> int:
    """Number of homomorphisms from the presented group to ``G``."""
    n = P.generators
    needed = G.order ** n
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    if n == 0:
        return 1
    # relators grouped by the last generator they mention
    due: dict[int, list[Word]] = {}
    for w in P.relators:
        due.setdefault(max(abs(l) for l in w), []).append(w)
    everything = np.arange(G.order)

    def extend(prefix: list[int]) -> int:
        k = len(prefix) + 1
        values = [np.full(G.order, v) for v in prefix] + [everything]
        ok = np.ones(G.order, dtype=bool)
        for w in due.get(k, []):
            ok &= _evaluate(G, w, values) == 0
        survivors = np.nonzero(ok)[0]
        if k == n:
            return int(survivors.size)
        return sum(extend(prefix + [int(v)]) for v in survivors)

    return extend([])


def dw_invariant(P: GroupPresentation, G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Fraction:
    return Fraction(count_homomorphisms(P, G, budget), G.order)


@dataclass
class CrossValidation:
    left: str
    right: str
    equivalences: int
    rows: list[tuple[str, Fraction, Fraction]] = field(default_factory=list)

    @property
    def discrepancies(self) -> list[tuple[str, Fraction, Fraction]]:
        return [r for r in self.rows if r[1] != r[2]]

    @property
    def ok(self) -> bool:
        return self.equivalences > 0 and not self.discrepancies


def cross_validate(G: FiniteGroup, Q: FiniteGroup,
                   catalog: list[GroupPresentation] | None = None) -> CrossValidation:
    """Compare Z_G and Z_Q on every manifold, for a pair with Z(G) equivalent to Z(Q)."""
    from .products import ribbon_equivalences

    eqs = ribbon_equivalences(G, Q)
    if not eqs:
        raise ValueError(f"Z({G.name}) and Z({Q.name}) are not equivalent; nothing to cross-validate")
    catalog = list(manifold_catalog().values()) if catalog is None else catalog
    rep = CrossValidation(G.name, Q.name, len(eqs))
    for P in catalog:
        rep.rows.append((P.name, dw_invariant(P, G), dw_invariant(P, Q)))
    return rep
