"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored in the power basis ``1, z, ..., z^(phi(N)-1)`` reduced
modulo the N-th cyclotomic polynomial, as integer numerators over a common
positive denominator.  Mixed-conductor operations embed both operands into
the lcm of the conductors.
"""
from __future__ import annotations

import cmath
import functools
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # x^n - 1 = prod_{d | n} Phi_d(x)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]  # den is monic
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[:dn]), "inexact polynomial division"
    return out


@functools.lru_cache(maxsize=None)
def phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@functools.lru_cache(maxsize=None)
def power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row ``j`` holds ``z^j mod Phi_n`` for ``0 <= j < n``."""
    d = phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflow coefficient
        top = cur[-1] if d else 0
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, poly[:d])]
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def _power_matrix(n: int) -> np.ndarray:
    return np.array(power_table(n), dtype=object).reshape(n, phi(n))


def _reduce(poly: Sequence[int], n: int) -> list[int]:
    d = phi(n)
    if len(poly) <= d:
        return list(poly) + [0] * (d - len(poly))
    table = power_table(n)
    out = list(poly[:d])
    for j in range(d, len(poly)):
        c = poly[j]
        if c:
            row = table[j % n]
            for k in range(d):
                out[k] += c * row[k]
    return out


def _normalise(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class Cyclotomic:
    """An element of Q(zeta_n); immutable."""

    __slots__ = ("n", "num", "den", "_key")

    def __init__(self, n: int, num: Iterable[int], den: int = 1):
        num = list(num)
        if len(num) != phi(n):
            num = _reduce(num, n)
        self.n = n
        self.num, self.den = _normalise(num, den)
        self._key = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, [q.numerator], q.denominator)

    @classmethod
    def zero(cls) -> "Cyclotomic":
        return cls(1, [0])

    @classmethod
    def one(cls) -> "Cyclotomic":
        return cls(1, [1])

    @classmethod
    def root(cls, k: int, n: int) -> "Cyclotomic":
        """``zeta_n ** k``."""
        return cls(n, power_table(n)[k % n])

    @classmethod
    def from_exponents(cls, counts: Mapping[int, int], n: int, den: int = 1) -> "Cyclotomic":
        """``(1/den) * sum_k counts[k] * zeta_n^k``."""
        d = phi(n)
        table = power_table(n)
        out = [0] * d
        for k, c in counts.items():
            if c:
                row = table[k % n]
                for i in range(d):
                    out[i] += c * row[i]
        return cls(n, out, den)

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Rational)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # -- structure ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def embed(self, m: int) -> "Cyclotomic":
        """The same value with conductor ``m`` (a multiple of ``self.n``)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        step = m // self.n
        table = power_table(m)
        d = phi(m)
        out = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = table[(i * step) % m]
                for k in range(d):
                    out[k] += c * row[k]
        return Cyclotomic(m, out, self.den)

    def galois(self, k: int) -> "Cyclotomic":
        """Apply ``zeta_n -> zeta_n^k`` (``k`` coprime to ``n``)."""
        table = power_table(self.n)
        d = phi(self.n)
        out = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = table[(i * k) % self.n]
                for j in range(d):
                    out[j] += c * row[j]
        return Cyclotomic(self.n, out, self.den)

    def conj(self) -> "Cyclotomic":
        """Complex conjugate, via the Galois map ``zeta -> zeta^-1``."""
        return self.galois(-1)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_zero(self) -> bool:
        return not any(self.num)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def is_integer(self) -> bool:
        return self.is_rational() and self.den == 1

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z ** i for i, c in enumerate(self.num)) / self.den

    def minimal(self) -> "Cyclotomic":
        """Equal value in the smallest possible conductor."""
        if self.is_rational():
            return self if self.n == 1 else Cyclotomic(1, [self.num[0]], self.den)
        for d in sorted(k for k in range(2, self.n + 1) if self.n % k == 0):
            got = self.restrict(d)
            if got is not None:
                return got
        raise AssertionError("unreachable")

    def restrict(self, d: int) -> "Cyclotomic | None":
        """Express ``self`` with conductor ``d`` if it lies in Q(zeta_d)."""
        m = lcm(d, self.n)
        target = self.embed(m)
        basis = [Cyclotomic.root(i, d).embed(m).num for i in range(phi(d))]
        sol = _solve_rational(basis, target.num, target.den)
        return None if sol is None else Cyclotomic(d, *_common(sol))

    # -- arithmetic --------------------------------------------------------
    def _align(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.coerce(other)
        if self.n == other.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-x for x in self.num], self.den)

    def __sub__(self, other):
        try:
            return self + (-Cyclotomic.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.n, [x * q.numerator for x in self.num], self.den * q.denominator)
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        prod = [0] * (len(a.num) + len(b.num) - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    prod[i + j] += x * y
        return Cyclotomic(a.n, _reduce(prod, a.n), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.to_fraction())
        others = Cyclotomic.one()
        for k in range(2, self.n):
            if gcd(k, self.n) == 1:
                others = others * self.galois(k)
        norm = (self * others).to_fraction()
        return others * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            return self * (1 / Fraction(other))
        return self * Cyclotomic.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison --------------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        if self._key is None:
            m = self.minimal()
            self._key = hash(m.to_fraction()) if m.n == 1 else hash((m.n, m.num, m.den))
        return self._key

    def sort_key(self) -> tuple[float, float]:
        """Deterministic order: larger real part first, then larger imaginary part."""
        z = complex(self)
        return (-round(z.real, 9) + 0.0, -round(z.imag, 9) + 0.0)

    # -- display -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"Cyclotomic({self.display()})"

    def __str__(self) -> str:
        return self.display()

    def display(self) -> str:
        """Short human form; uses ``ω`` for zeta_3 when the value lies in Q(ζ3)."""
        if self.is_rational():
            return _frac_str(self.to_fraction())
        in3 = self.restrict(3)
        if in3 is not None:
            a, b = in3.coeffs
            if a == 0 and b == 1:
                return "ω"
            if a == -1 and b == -1:
                return "ω^-1"
            return _poly_str([a, b], "ω")
        m = self.minimal()
        return _poly_str(list(m.coeffs), f"z{m.n}")


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly_str(coeffs: list[Fraction], var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(_frac_str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{_frac_str(c)}*{mono}")
    out = "+".join(terms).replace("+-", "-")
    return out or "0"


def _common(fracs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return [int(f * den) for f in fracs], den


def _solve_rational(columns: list[Sequence[int]], target: Sequence[int], den: int):
    """Solve ``sum_i x_i * columns[i] = target/den`` over Q; ``None`` if inconsistent."""
    rows = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i], den)]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = aug[i][k]
    return sol


class CycloMatrix:
    """Dense matrix over Q(zeta_n): ``(1/den) * sum_k coeffs[k] * zeta_n^k``.

    ``coeffs`` has shape ``(phi(n), rows, cols)`` and holds Python ints.
    """

    __slots__ = ("n", "den", "coeffs")

    def __init__(self, n: int, coeffs: np.ndarray, den: int = 1):
        self.n = n
        coeffs = np.asarray(coeffs, dtype=object)
        if den < 0:
            coeffs, den = -coeffs, -den
        g = den
        for c in coeffs.flat:
            if g == 1:
                break
            g = gcd(g, int(c))
        if g > 1:
            coeffs = coeffs // g
            den //= g
        self.coeffs = coeffs
        self.den = den

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence], n: int | None = None) -> "CycloMatrix":
        entries = [[Cyclotomic.coerce(x) for x in row] for row in rows]
        r = len(entries)
        c = len(entries[0]) if r else 0
        if n is None:
            n = lcm(1, *(x.n for row in entries for x in row))
        den = lcm(1, *(x.den for row in entries for x in row))
        coeffs = np.zeros((phi(n), r, c), dtype=object)
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                x = x.embed(n)
                scale = den // x.den
                for k, v in enumerate(x.num):
                    coeffs[k, i, j] = v * scale
        return cls(n, coeffs, den)

    @classmethod
    def identity(cls, size: int) -> "CycloMatrix":
        coeffs = np.zeros((1, size, size), dtype=object)
        for i in range(size):
            coeffs[0, i, i] = 1
        return cls(1, coeffs)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[1], self.coeffs.shape[2]

    def __getitem__(self, ij) -> Cyclotomic:
        i, j = ij
        return Cyclotomic(self.n, [int(c) for c in self.coeffs[:, i, j]], self.den)

    def entries(self) -> list[list[Cyclotomic]]:
        r, c = self.shape
        return [[self[i, j] for j in range(c)] for i in range(r)]

    def embed(self, m: int) -> "CycloMatrix":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        step = m // self.n
        table = _power_matrix(m)
        out = np.zeros((phi(m),) + self.shape, dtype=object)
        for i in range(self.coeffs.shape[0]):
            row = table[(i * step) % m]
            for k in range(phi(m)):
                if row[k]:
                    out[k] += row[k] * self.coeffs[i]
        return CycloMatrix(m, out, self.den)

    def _align(self, other: "CycloMatrix"):
        if self.n == other.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def _reduce_stack(self, stack: list, n: int, den: int) -> "CycloMatrix":
        d = phi(n)
        table = _power_matrix(n)
        out = [stack[k] if k < len(stack) else 0 for k in range(d)]
        for j in range(d, len(stack)):
            row = table[j % n]
            for k in range(d):
                if row[k]:
                    out[k] = out[k] + row[k] * stack[j]
        shape = next(s.shape for s in stack)
        arr = np.zeros((d,) + shape, dtype=object)
        for k in range(d):
            arr[k] = out[k]
        return CycloMatrix(n, arr, den)

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        a, b = self._align(other)
        da, db = a.coeffs.shape[0], b.coeffs.shape[0]
        stack = [None] * (da + db - 1)
        for i in range(da):
            for j in range(db):
                term = a.coeffs[i] @ b.coeffs[j]
                stack[i + j] = term if stack[i + j] is None else stack[i + j] + term
        return self._reduce_stack(stack, a.n, a.den * b.den)

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        a, b = self._align(other)
        return CycloMatrix(a.n, a.coeffs * b.den + b.coeffs * a.den, a.den * b.den)

    def __neg__(self) -> "CycloMatrix":
        return CycloMatrix(self.n, -self.coeffs, self.den)

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return self + (-other)

    def scale(self, x) -> "CycloMatrix":
        x = Cyclotomic.coerce(x)
        m = lcm(self.n, x.n)
        a = self.embed(m)
        x = x.embed(m)
        d = phi(m)
        stack = [None] * (2 * d - 1)
        for i in range(d):
            for j, v in enumerate(x.num):
                if v:
                    term = a.coeffs[i] * v
                    stack[i + j] = term if stack[i + j] is None else stack[i + j] + term
        stack = [s if s is not None else np.zeros(self.shape, dtype=object) for s in stack]
        return self._reduce_stack(stack, m, a.den * x.den)

    @property
    def T(self) -> "CycloMatrix":
        return CycloMatrix(self.n, self.coeffs.transpose(0, 2, 1), self.den)

    def conj(self) -> "CycloMatrix":
        table = _power_matrix(self.n)
        d = phi(self.n)
        out = np.zeros_like(self.coeffs)
        for i in range(d):
            row = table[(-i) % self.n]
            for k in range(d):
                if row[k]:
                    out[k] = out[k] + row[k] * self.coeffs[i]
        return CycloMatrix(self.n, out, self.den)

    def is_zero(self) -> bool:
        return not any(c != 0 for c in self.coeffs.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix) or self.shape != other.shape:
            return NotImplemented if not isinstance(other, CycloMatrix) else False
        return (self - other).is_zero()

    __hash__ = None

    def is_diagonal(self) -> bool:
        r, c = self.shape
        mask = ~np.eye(r, c, dtype=bool)
        return not any(x != 0 for x in self.coeffs[:, mask].flat)

    def __repr__(self) -> str:
        return f"CycloMatrix(n={self.n}, shape={self.shape})"
