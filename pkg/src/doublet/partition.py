"""Partition-function notation for invariant matrices.

A matrix ``m`` stands for ``Z = sum m[i][j] χ_i χ_j^*``.  It is printed as a
sum of terms ``c (a)(b)^*`` or ``c |a|^2``, which is how tables of modular
invariants are usually written.
"""
from __future__ import annotations

import re
from math import gcd

import numpy as np


def _sum(vec: dict[int, int], sym: str) -> tuple[str, bool]:
    parts = []
    for i in sorted(vec):
        c = vec[i]
        parts.append(f"{sym}{i}" if c == 1 else f"{c}{sym}{i}")
    return "+".join(parts), len(parts) > 1


def _primitive(v: np.ndarray) -> np.ndarray:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return v // g if g else v


def rank_one_terms(m) -> list[tuple[int, dict[int, int], dict[int, int]]]:
    """Write ``m`` as ``sum c a b^T`` with nonnegative integer vectors.

    Greedy: the first nonzero column, made primitive, is taken as ``a``; every
    column that dominates a multiple of ``a`` contributes to ``b``.  The terms
    always add up to ``m`` exactly, and for the invariants of trivialising
    algebras they come out as the usual blocks.
    """
    rest = np.array(m, dtype=np.int64)
    if (rest < 0).any():
        raise ValueError("partition functions have nonnegative coefficients")
    terms = []
    while rest.any():
        j0 = int(np.nonzero(rest.any(axis=0))[0][0])
        a = _primitive(rest[:, j0])
        support = np.nonzero(a)[0]
        b = np.zeros(rest.shape[1], dtype=np.int64)
        for j in range(rest.shape[1]):
            b[j] = min(int(rest[i, j]) // int(a[i]) for i in support)
        rest -= np.outer(a, b)
        c = 0
        for x in b:
            c = gcd(c, int(x))
        b //= c
        terms.append((c, {int(i): int(a[i]) for i in support},
                      {int(j): int(b[j]) for j in np.nonzero(b)[0]}))
    terms.sort(key=lambda t: (min(t[1]), min(t[2])))
    return terms


def render(m, sym: str = "χ") -> str:
    """``m`` in partition-function notation, e.g. ``|χ0+χ3+χ6|^2``."""
    terms = []
    for c, a, b in rank_one_terms(m):
        pre = "" if c == 1 else str(c)
        sa, multi_a = _sum(a, sym)
        if a == b:
            terms.append(f"{pre}|{sa}|^2")
            continue
        sb, multi_b = _sum(b, sym)
        left = f"({sa})" if multi_a else sa
        right = f"({sb})^*" if multi_b else f"{sb}^*"
        terms.append(f"{pre}{left}{right}")
    return "+".join(terms) or "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|(χ|chi_?)(\d+)|(\|\^2|\||\(|\)\^\*|\)|\^\*|\+))")


class PartitionSyntaxError(ValueError):
    pass


def parse(text: str, rows: int, cols: int | None = None) -> np.ndarray:
    """Inverse of :func:`render`: a string such as ``(χ1+χ3)χ6^*+|χ7|^2`` as a matrix."""
    cols = rows if cols is None else cols
    toks = []
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise PartitionSyntaxError(f"cannot read {text[pos:]!r}")
        if mt.group(1):
            toks.append(("num", int(mt.group(1))))
        elif mt.group(3):
            toks.append(("chi", int(mt.group(3))))
        else:
            toks.append(("op", mt.group(4)))
        pos = mt.end()
    out = np.zeros((rows, cols), dtype=np.int64)
    i = 0

    def peek(kind=None, val=None):
        if i >= len(toks):
            return False
        k, v = toks[i]
        return (kind is None or k == kind) and (val is None or v == val)

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def index(n: int) -> int:
        k = take()[1]
        if k >= n:
            raise PartitionSyntaxError(f"χ{k} is out of range (only {n} simples)")
        return k

    def linear(n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        while True:
            c = take()[1] if peek("num") else 1
            if not peek("chi"):
                raise PartitionSyntaxError("expected a character")
            v[index(n)] += c
            if peek("op", "+"):
                take()
                continue
            return v

    def factor(n: int, closing: str) -> np.ndarray:
        if peek("op", "("):
            take()
            v = linear(n)
            if not peek("op", closing):
                raise PartitionSyntaxError(f"expected {closing!r}")
            take()
            return v
        v = np.zeros(n, dtype=np.int64)
        if not peek("chi"):
            raise PartitionSyntaxError("expected a character or '('")
        v[index(n)] = 1
        if closing == ")^*":
            if not peek("op", "^*"):
                raise PartitionSyntaxError("expected '^*'")
            take()
        return v

    while i < len(toks):
        c = take()[1] if peek("num") else 1
        if peek("op", "|"):
            take()
            v = linear(rows)
            if not peek("op", "|^2"):
                raise PartitionSyntaxError("expected '|^2'")
            take()
            out += c * np.outer(v, v)
        else:
            a = factor(rows, ")")
            b = factor(cols, ")^*")
            out += c * np.outer(a, b)
        if i < len(toks):
            if not peek("op", "+"):
                raise PartitionSyntaxError("expected '+' between terms")
            take()
    return out
