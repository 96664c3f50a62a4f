"""Linear systems over Z/p^k and Z/m.

The workhorse is :class:`LocalSolver`, which reduces a matrix modulo a prime
power in two phases.  Phase 1 makes one sweep over the columns and pivots on
any unit it finds; columns without a unit in the remaining rows are deferred,
and their remaining entries stay divisible by ``p`` for the rest of the
sweep.  Phase 2 fully diagonalises the small block left over on the deferred
columns, tracking the column operations.  The kernel and the solution set are
then read off the diagonal, and the pivot rows are back-substituted.

Tall sparse systems are first compressed by a random dense matrix.  Callers
verify the results against the uncompressed matrix and retry with a new seed
in the (rare) event that the compression lost information.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np
import scipy.sparse as sp
from sympy import factorint

_BLOCK = 4096


class SolverError(ArithmeticError):
    pass


def valuation(x: int, p: int, cap: int) -> int:
    """p-adic valuation of ``x`` as an element of Z/p^cap (``cap`` for zero)."""
    x %= p ** cap
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def prime_powers(m: int) -> list[tuple[int, int]]:
    return sorted(factorint(m).items())


def _as_sparse(A) -> sp.csr_matrix:
    if sp.issparse(A):
        return A.tocsr().astype(np.int64)
    return sp.csr_matrix(np.asarray(A, dtype=np.int64))


def compress(A, rhs: np.ndarray | None, q: int, rows: int, seed: int):
    """Return ``(R A mod q, R rhs mod q)`` for a random ``rows x m`` matrix R."""
    At = _as_sparse(A).T.tocsr()
    n, m = At.shape
    rng = np.random.default_rng(seed)
    out = np.zeros((n, rows), dtype=np.int64)
    out_rhs = None if rhs is None else np.zeros((rows, rhs.shape[1]), dtype=np.int64)
    for start in range(0, m, _BLOCK):
        stop = min(m, start + _BLOCK)
        Rt = rng.integers(0, q, size=(stop - start, rows), dtype=np.int64)
        out = (out + At[:, start:stop] @ Rt) % q
        if rhs is not None:
            out_rhs = (out_rhs + Rt.T @ (rhs[start:stop] % q)) % q
    return np.ascontiguousarray(out.T), out_rhs


class LocalSolver:
    """Reduced form of ``A`` over Z/p^k, optionally with right-hand sides.

    ``rhs`` is an ``m x s`` integer array; solutions for each column are
    available through :meth:`particular`.
    """

    def __init__(self, A, p: int, k: int, rhs=None, seed: int = 0, compress_rows: bool | None = None):
        self.p, self.k, self.q = p, k, p ** k
        q = self.q
        m, n = A.shape
        self.n = n
        if rhs is not None:
            rhs = np.asarray(rhs, dtype=np.int64).reshape(m, -1)
        if compress_rows is None:
            compress_rows = m > n + 64
        if compress_rows:
            M, rhs = compress(A, rhs, q, n + 12, seed)
        else:
            M = (A.toarray() if sp.issparse(A) else np.array(A, dtype=np.int64)) % q
            rhs = None if rhs is None else rhs % q
        M = np.ascontiguousarray(M, dtype=np.int64)
        self._phase1(M, rhs)
        self._phase2()

    # -- reduction ------------------------------------------------------------
    def _phase1(self, M: np.ndarray, rhs, panel: int = 64):
        p, q = self.p, self.q
        rows, n = M.shape
        s = 0 if rhs is None else rhs.shape[1]
        W = M if rhs is None else np.concatenate([M, rhs % q], axis=1)
        # In float64 every update is exact while |entries| < 2^53.  Each panel
        # adds at most panel * q^2 to an entry, so reduction mod q can wait
        # until a column is loaded into a panel (and the very end).
        exact_float = (n + panel) * q * q < 2 ** 52
        W = np.asfortranarray(W, dtype=np.float64 if exact_float else np.int64)
        remaining = np.ones(rows, dtype=bool)
        pivots: list[tuple[int, int]] = []  # (column, row)
        deferred: list[int] = []
        for c0 in range(0, n, panel):
            c1 = min(n, c0 + panel)
            P = np.ascontiguousarray(W[:, c0:c1]) % q
            steps = []  # (row, unit, multipliers over all rows)
            for c in range(c0, c1):
                col = P[:, c - c0] % q
                cand = np.nonzero(remaining & (col % p != 0))[0]
                if cand.size == 0:
                    deferred.append(c)
                    continue
                r = int(cand[0])
                u = pow(int(col[r]), -1, q)
                P[r] = P[r] % q * u % q
                remaining[r] = False
                f = np.where(remaining, col, 0)
                if exact_float:
                    # rank-one update, reduced lazily like the trailing block
                    P -= np.outer(f, P[r])
                else:
                    hit = np.nonzero(f)[0]
                    if hit.size:
                        P[hit] = (P[hit] - f[hit, None] * P[r]) % q
                steps.append((r, u, f))
                pivots.append((c, r))
            P %= q
            W[:, c0:c1] = P
            if not steps:
                continue
            # replay the panel's row operations on every other live column:
            # earlier deferred columns (gathered) and the trailing block (in place)
            early = np.array([d for d in deferred if d < c0], dtype=np.int64)
            if early.size == 0 and c1 == n + s:
                continue
            prow = [r for r, _, _ in steps]
            head = np.concatenate([W[np.ix_(prow, early)], W[prow, c1:]], axis=1) % q
            U = np.zeros_like(head)
            for k, (r, u, _) in enumerate(steps):
                acc = head[k].copy()
                for kk in range(k):
                    fk = steps[kk][2][r]
                    if fk:
                        acc -= fk * U[kk]
                U[k] = acc % q * u % q
            F = np.stack([f for _, _, f in steps], axis=1)
            F[prow] = 0
            Ue, Ut = U[:, :early.size], U[:, early.size:]
            if early.size:
                W[:, early] = self._update(W[:, early], F, Ue, prow, q, exact_float)
            if c1 < n + s:
                if exact_float:
                    W[:, c1:] -= F @ Ut
                    W[prow, c1:] = Ut
                else:
                    W[:, c1:] = self._update(W[:, c1:], F, Ut, prow, q, False)
        W = (W % q).astype(np.int64)
        self.pivots = [(c, W[r, :n].copy(), None if rhs is None else W[r, n:].copy()) for c, r in pivots]
        self.deferred = np.array(deferred, dtype=np.int64)
        rest = np.nonzero(remaining)[0]
        self._B = W[np.ix_(rest, self.deferred)] if deferred else np.zeros((len(rest), 0), dtype=np.int64)
        self._rhs_rest = None if rhs is None else W[rest, n:]

    @staticmethod
    def _update(T, F, U, prow, q, exact_float):
        if exact_float:
            T = T - F @ U
            T[prow] = U
            return T
        else:
            T = T - (F.astype(np.float64) @ U.astype(np.float64) % q).astype(np.int64)
        T %= q
        T[prow] = U
        return T

    def _phase2(self):
        p, q, k = self.p, self.q, self.k
        B = self._B % q
        rows, cols = B.shape
        rhs = self._rhs_rest
        C = np.eye(cols, dtype=np.int64)
        Cinv = np.eye(cols, dtype=np.int64)
        sigma = []
        t = 0
        while t < min(rows, cols):
            sub = B[t:, t:]
            nz = sub != 0
            if not nz.any():
                break
            # smallest valuation among the remaining entries
            best = None
            for v in range(k):
                hits = np.argwhere(nz & (sub % p ** (v + 1) != 0))
                if hits.size:
                    best = (v, hits[0])
                    break
            v, (i, j) = best
            i, j = i + t, j + t
            if i != t:
                B[[t, i]] = B[[i, t]]
                if rhs is not None:
                    rhs[[t, i]] = rhs[[i, t]]
            if j != t:
                B[:, [t, j]] = B[:, [j, t]]
                C[:, [t, j]] = C[:, [j, t]]
                Cinv[[t, j]] = Cinv[[j, t]]
            piv = int(B[t, t])
            unit = pow(piv // p ** v, -1, q)
            B[t] = B[t] * unit % q
            if rhs is not None:
                rhs[t] = rhs[t] * unit % q
            pv = p ** v
            # rows below: entries are divisible by p^v
            f = B[t + 1:, t] // pv
            if f.any():
                B[t + 1:] = (B[t + 1:] - f[:, None] * B[t]) % q
                if rhs is not None:
                    rhs[t + 1:] = (rhs[t + 1:] - f[:, None] * rhs[t]) % q
            # columns to the right: col_j -= g_j col_t, tracked in C and C^-1
            g = B[t, t + 1:] // pv
            if g.any():
                B[:, t + 1:] = (B[:, t + 1:] - B[:, [t]] * g[None, :]) % q
                C[:, t + 1:] = (C[:, t + 1:] - C[:, [t]] * g[None, :]) % q
                Cinv[t] = (Cinv[t] + g @ Cinv[t + 1:]) % q
            sigma.append(pv)
            t += 1
        sigma += [0] * (cols - len(sigma))
        self.sigma = sigma
        self.C = C
        self.Cinv = Cinv
        self._rhs_rest = rhs

    # -- reading off results ----------------------------------------------
    def _back_substitute(self, Xd: np.ndarray, rhs_col: int | None) -> np.ndarray:
        """Full solution vectors (columns) from deferred-variable values."""
        q = self.q
        g = Xd.shape[1]
        X = np.zeros((self.n, g), dtype=np.int64)
        if len(self.deferred):
            X[self.deferred] = Xd % q
        for c, row, rr in reversed(self.pivots):
            val = -(row @ X) + row[c] * X[c]
            if rhs_col is not None:
                val = val + rr[rhs_col]
            X[c] = val % q
        return X

    def particular(self, j: int = 0) -> np.ndarray | None:
        """One solution for right-hand side column ``j``, or ``None``."""
        q, p = self.q, self.p
        if self._rhs_rest is None:
            raise SolverError("solver was built without right-hand sides")
        rhs = self._rhs_rest[:, j]
        cols = len(self.sigma)
        y = np.zeros(cols, dtype=np.int64)
        for i, s in enumerate(self.sigma):
            b = int(rhs[i]) % q if i < len(rhs) else 0
            if s == 0:
                if b:
                    return None
            else:
                if b % s:
                    return None
                y[i] = b // s
        if len(rhs) > cols and (rhs[cols:] % q).any():
            return None
        Xd = (self.C @ y) % q if cols else np.zeros(0, dtype=np.int64)
        return self._back_substitute(Xd.reshape(-1, 1), j)[:, 0]

    def kernel(self) -> tuple[np.ndarray, list[int]]:
        """Generators of the kernel as columns, with their additive orders.

        The kernel is the direct sum of the cyclic groups they generate.
        """
        q = self.q
        cols = len(self.sigma)
        if cols == 0:
            return np.zeros((self.n, 0), dtype=np.int64), []
        Y = np.zeros((cols, cols), dtype=np.int64)
        orders = []
        for i, s in enumerate(self.sigma):
            if s == 0:
                Y[i, i] = 1
                orders.append(q)
            else:
                Y[i, i] = q // s
                orders.append(s)
        return self._back_substitute(self.C @ Y % q, None), orders


@dataclass(frozen=True)
class ModSolution:
    """Solution set ``particular + span(kernel)`` of a system over Z/m."""

    modulus: int
    particular: np.ndarray | None
    kernel: np.ndarray  # columns
    orders: tuple[int, ...]

    @property
    def size(self) -> int:
        return 0 if self.particular is None else prod(self.orders)

    def elements(self):
        """Iterate over every solution (use only when ``size`` is small)."""
        if self.particular is None:
            return
        m = self.modulus
        gens = [self.kernel[:, i] for i in range(self.kernel.shape[1])]

        def rec(i, acc):
            if i == len(gens):
                yield acc % m
                return
            for c in range(self.orders[i]):
                yield from rec(i + 1, acc + c * gens[i])

        yield from rec(0, self.particular.copy())


def _check(A, x: np.ndarray, b: np.ndarray | None, m: int) -> bool:
    got = (A @ x) % m
    want = 0 if b is None else b % m
    return not np.any((got - want) % m)


def solve_mod(A, b=None, m: int = 1, seed: int = 0, attempts: int = 6) -> ModSolution:
    """All solutions of ``A x = b`` over Z/m, verified against ``A``.

    ``b=None`` means the homogeneous system.  The kernel generators from the
    different primes are embedded by CRT, so the kernel is their direct sum.
    """
    A = _as_sparse(A)
    rows, n = A.shape
    rhs = np.zeros((rows, 1), dtype=np.int64) if b is None else np.asarray(b, dtype=np.int64).reshape(rows, 1)
    if m == 1:
        return ModSolution(1, np.zeros(n, dtype=np.int64), np.zeros((n, 0), dtype=np.int64), ())
    for attempt in range(attempts):
        part = np.zeros(n, dtype=object)
        gens, orders = [], []
        ok = True
        for p, k in prime_powers(m):
            q = p ** k
            other = m // q
            lift = other * pow(other, -1, q)  # 1 mod q, 0 mod the rest
            solver = LocalSolver(A, p, k, rhs, seed=seed + 7919 * attempt)
            x = solver.particular(0)
            if x is None:
                # compression only enlarges the solution set, so this is final
                return ModSolution(m, None, np.zeros((n, 0), dtype=np.int64), ())
            if not _check(A, x, rhs[:, 0], q):
                ok = False
                break
            part = part + x.astype(object) * lift
            K, ords = solver.kernel()
            if K.size and np.any((A @ K) % q):
                ok = False
                break
            for i, o in enumerate(ords):
                gens.append(K[:, i].astype(object) * lift % m)
                orders.append(o)
        if ok:
            kernel = np.array(gens, dtype=np.int64).T if gens else np.zeros((n, 0), dtype=np.int64)
            return ModSolution(m, np.array(part % m, dtype=np.int64), kernel.reshape(n, len(gens)), tuple(orders))
    raise SolverError("modular solve failed verification after several random compressions")

