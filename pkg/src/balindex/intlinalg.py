"""Exact integer linear algebra: Smith normal form, Diophantine systems, lattices.

Everything here works over plain Python ints, so results are exact at any
size.  The Smith routine returns the full (U, D, V) witness triple; lattices
keep a canonical row-style Hermite basis so two lattices are equal iff their
bases are equal.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from math import gcd, lcm


def p_adic_valuation(p: int, x: int) -> float:
    """Largest t with p^t | x; infinity for x = 0."""
    if x == 0:
        return float("inf")
    t = 0
    while x % p == 0:
        x //= p
        t += 1
    return t


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


@dataclass(frozen=True)
class SmithDecomposition:
    """Triple U*M*V = D with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    rank: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        m, n = len(self.D), len(self.D[0]) if self.D else 0
        return tuple(self.D[i][i] for i in range(min(m, n)))


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _min_pivot(A, t, m, n):
    best = None
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return None if best is None else (best[1], best[2])


def smith_normal_form(M) -> SmithDecomposition:
    """Smith normal form of an integer matrix (any shape, m, n >= 1).

    Pivots are chosen with minimum absolute value, which keeps intermediate
    entries small in practice; correctness does not depend on the choice.
    All diagonal entries are normalized nonnegative.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0 or any(len(row) != n for row in A):
        raise ValueError("matrix must be rectangular and nonempty")
    U = _identity(m)
    V = _identity(n)

    t = 0
    while t < min(m, n):
        piv = _min_pivot(A, t, m, n)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At, Ui, Ut = A[i], A[t], U[i], U[t]
                        for j in range(n):
                            Ai[j] -= q * At[j]
                        for j in range(m):
                            Ui[j] -= q * Ut[j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                        for row in V:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                pi, pj = _min_pivot(A, t, m, n)
                if pi != t:
                    A[t], A[pi] = A[pi], A[t]
                    U[t], U[pi] = U[pi], U[t]
                if pj != t:
                    for row in A:
                        row[t], row[pj] = row[pj], row[t]
                    for row in V:
                        row[t], row[pj] = row[pj], row[t]
                continue
            # row and column t are clear; enforce that the pivot divides
            # everything left in the trailing submatrix
            p = A[t][t]
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            At, Ab, Ut, Ub = A[t], A[bad], U[t], U[bad]
            for j in range(n):
                At[j] += Ab[j]
            for j in range(m):
                Ut[j] += Ub[j]
        if A[t][t] < 0:
            for j in range(n):
                A[t][j] = -A[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    rank = sum(1 for i in range(min(m, n)) if A[i][i])
    return SmithDecomposition(
        U=tuple(tuple(r) for r in U),
        D=tuple(tuple(r) for r in A),
        V=tuple(tuple(r) for r in V),
        rank=rank,
    )


def solve_diophantine(M, b) -> list[int] | None:
    """Integer solution x of M x = b, or None when no such x exists.

    Uses U M V = D: with y = V^{-1} x the system becomes D y = U b, so a
    solution exists iff d_i | (U b)_i on the diagonal and (U b)_i = 0 on
    zero rows.
    """
    snf = smith_normal_form(M)
    m = len(snf.U)
    n = len(snf.V)
    if len(b) != m:
        raise ValueError("right-hand side has wrong dimension")
    ub = [sum(snf.U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = snf.D[i][i] if i < min(m, n) else 0
        if d:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i]:
            return None
    return [sum(snf.V[i][k] * y[k] for k in range(n)) for i in range(n)]


def kernel_basis(M) -> list[list[int]]:
    """Basis of the integer kernel {x : M x = 0} (columns of V past the rank)."""
    snf = smith_normal_form(M)
    n = len(snf.V)
    return [[snf.V[i][k] for i in range(n)] for k in range(snf.rank, n)]


def gcd_with_provenance(values, tags):
    """gcd of ``values`` together with an explicit Bezout combination.

    Returns (g, combo) with g >= 0 and sum(combo[tag] * value) == g exactly.
    The fold runs left to right, which keeps coefficients small and the
    result deterministic.
    """
    values = list(values)
    tags = list(tags)
    if not values or len(values) != len(tags):
        raise ValueError("values and tags must be nonempty and parallel")
    combo = {tag: 0 for tag in tags}
    g = 0
    for v, tag in zip(values, tags):
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            combo[tag] += 1 if v > 0 else -1
            continue
        g2, x, y = xgcd(g, v)
        if g2 == g and x == 1 and y == 0:
            continue
        for t in combo:
            combo[t] *= x
        combo[tag] += y
        g = g2
    return g, combo


class Lattice:
    """Integer lattice in Z^dim given by a finite generator list.

    The canonical basis is a row-style Hermite normal form: rows sorted by
    pivot column, pivots positive, entries above each pivot reduced into
    [0, pivot).  Two lattices are equal iff their canonical bases are equal.
    """

    def __init__(self, dim: int, generators=()):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.generators: list[tuple[int, ...]] = []
        self._rows: list[list[int]] = []  # echelon rows, pivot cols increasing
        self._pivots: list[int] = []
        self._canonical = False
        for g in generators:
            self.add_generator(g)

    def add_generator(self, vec) -> None:
        vec = [int(v) for v in vec]
        if len(vec) != self.dim:
            raise ValueError("generator has wrong dimension")
        self.generators.append(tuple(vec))
        self._insert(vec)

    def _insert(self, vec: list[int]) -> None:
        rows, pivots = self._rows, self._pivots
        v = list(vec)
        j = 0
        while True:
            lead = next((k for k in range(self.dim) if v[k]), None)
            if lead is None:
                return
            pos = bisect_left(pivots, lead)
            if pos == len(pivots) or pivots[pos] != lead:
                rows.insert(pos, v)
                pivots.insert(pos, lead)
                self._canonical = False
                return
            row = rows[pos]
            a, b = row[lead], v[lead]
            if b % a == 0:
                q = b // a
                for k in range(lead, self.dim):
                    v[k] -= q * row[k]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(lead, self.dim):
                    ra, vb = row[k], v[k]
                    row[k] = x * ra + y * vb
                    v[k] = -bg * ra + ag * vb
                self._canonical = False
            j += 1
            if j > self.dim + len(rows) + 8:  # cannot happen; guards a bug
                raise RuntimeError("lattice insertion failed to terminate")

    def _canonicalize(self) -> None:
        if self._canonical:
            return
        rows, pivots = self._rows, self._pivots
        for i, lead in enumerate(pivots):
            if rows[i][lead] < 0:
                rows[i] = [-x for x in rows[i]]
            p = rows[i][lead]
            for u in range(i):
                q = rows[u][lead] // p
                if q:
                    ru, ri = rows[u], rows[i]
                    for k in range(lead, self.dim):
                        ru[k] -= q * ri[k]
        self._canonical = True

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        self._canonicalize()
        return tuple(tuple(r) for r in self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def member(self, vec) -> bool:
        vec = [int(v) for v in vec]
        if len(vec) != self.dim:
            raise ValueError("vector has wrong dimension")
        v = list(vec)
        for row, lead in zip(self._rows, self._pivots):
            if any(v[k] for k in range(lead)):
                return False
            if v[lead]:
                if v[lead] % row[lead]:
                    return False
                q = v[lead] // row[lead]
                for k in range(lead, self.dim):
                    v[k] -= q * row[k]
        return not any(v)

    def member_with_coefficients(self, vec) -> list[int] | None:
        """Coefficients over the original generators, or None if not a member.

        Solves G x = vec with the generators as columns; intended for small
        generator lists (provenance bookkeeping), not bulk queries.
        """
        if not self.generators:
            return [] if not any(vec) else None
        cols = [[g[i] for g in self.generators] for i in range(self.dim)]
        return solve_diophantine(cols, list(vec))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.dim == other.dim
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, basis={list(self.basis)})"


def lattice_member(L: Lattice, vec) -> bool:
    return L.member(vec)


def least_positive_multiple(L: Lattice, numerators, denominator: int = 1) -> int | None:
    """Least t > 0 with t * w in L, for w = numerators / denominator.

    With U G V = D for the basis-as-columns matrix G and U w = p / q, the
    i-th diagonal row needs (q d_i) | t p_i and zero rows need p_i = 0; the
    answer is the lcm of the per-row minimal multiples.  Returns None when
    no multiple of w lies in L.
    """
    if denominator < 1:
        raise ValueError("denominator must be positive")
    nums = [int(v) for v in numerators]
    if len(nums) != L.dim:
        raise ValueError("vector has wrong dimension")
    basis = L.basis
    if not basis:
        return 1 if not any(nums) else None
    cols = [[row[i] for row in basis] for i in range(L.dim)]
    snf = smith_normal_form(cols)
    m = len(cols)
    p = [sum(snf.U[i][k] * nums[k] for k in range(m)) for i in range(m)]
    q = denominator
    t = 1
    for i in range(m):
        d = snf.D[i][i] if i < min(m, len(basis)) else 0
        if d == 0:
            if p[i]:
                return None
            continue
        if p[i]:
            qd = q * d
            t = lcm(t, qd // gcd(qd, p[i]))
    return t


def brute_least_multiple(L: Lattice, numerators, denominator: int, limit: int) -> int | None:
    """Oracle for least_positive_multiple: scan t = 1..limit by membership."""
    for t in range(1, limit + 1):
        scaled = [t * v for v in numerators]
        if any(v % denominator for v in scaled):
            continue
        if L.member([v // denominator for v in scaled]):
            return t
    return None


def integer_rank(M) -> int:
    """Rank of an integer matrix (over Q), via the Smith form."""
    return smith_normal_form(M).rank


def determinant(M) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[-1][-1]


def enumerate_minor_gcd(M, k: int) -> int:
    """gcd of absolute values of all k x k minors (tiny matrices only)."""
    m, n = len(M), len(M[0])
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            sub = [[M[i][j] for j in cols] for i in rows]
            g = gcd(g, abs(determinant(sub)))
    return g
