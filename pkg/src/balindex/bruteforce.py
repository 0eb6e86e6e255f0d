"""Ground-truth oracle over the full permutation module.

Columns vec(A^sigma), extended by a constant 1 to carry the coefficient sum,
span a lattice in Z^(n^2+1); bal(A) is the least positive t with
t * (vec(mean) + 1) inside it.  Columns are folded one at a time into an
echelon basis, so the n^2 x n! matrix is never materialized.
"""

from __future__ import annotations

import itertools
import os

from .errors import InternalError, OracleCapExceeded
from .intlinalg import Lattice, least_positive_multiple, solve_diophantine
from .matrices import (
    IntMatrix,
    Permutation,
    SignedCombination,
    conjugate,
    is_completely_symmetric,
    mean_matrix,
)

DEFAULT_CAP = 5040  # 7!


def default_cap() -> int:
    env = os.environ.get("BALANCE_ORACLE_CAP")
    return int(env) if env else DEFAULT_CAP


def _check_cap(n: int, cap: int | None) -> int:
    cap = default_cap() if cap is None else cap
    count = 1
    for i in range(2, n + 1):
        count *= i
    if count > cap:
        raise OracleCapExceeded(f"oracle needs {count} permutations, cap is {cap}")
    return count


class FullModuleMatrix:
    """Columns vec(A^sigma) + (1), sigma in lexicographic order."""

    def __init__(self, A: IntMatrix, cap: int | None = None):
        _check_cap(A.n, cap)
        self.n = A.n
        self.permutations = [
            Permutation(images) for images in itertools.permutations(range(A.n))
        ]
        self.columns = [
            tuple(conjugate(A, sigma).vec()) + (1,) for sigma in self.permutations
        ]

    def column_lattice(self) -> Lattice:
        lat = Lattice(self.n * self.n + 1)
        for col in self.columns:
            lat.add_generator(col)
        return lat


def _target(A: IntMatrix):
    """Numerators and denominator of vec(mean(A)) + (1)."""
    mean = mean_matrix(A)
    return tuple(mean.numerator.vec()) + (mean.denominator,), mean.denominator


def oracle_bal(A: IntMatrix, cap: int | None = None) -> int:
    """bal(A) by brute force; exact and deliberately free of shortcuts."""
    if A.n == 1:
        return 1
    _check_cap(A.n, cap)
    n = A.n
    lat = Lattice(n * n + 1)
    for sigma in itertools.permutations(range(n)):
        col = [A.rows[sigma[i]][sigma[j]] for i in range(n) for j in range(n)]
        col.append(1)
        lat.add_generator(col)
    nums, den = _target(A)
    t = least_positive_multiple(lat, nums, den)
    if t is None:
        raise InternalError("balancing ideal is trivial; the sum of all conjugates refutes this")
    return t


def oracle_symmetric_image(A: IntMatrix, cap: int | None = None):
    """(bal, bal * mean(A), (a, b)) with the image written as a*I + b*J."""
    b = oracle_bal(A, cap)
    if A.n == 1:
        image = A.scaled(b)
    else:
        image = mean_matrix(A).scaled(b).to_int_matrix()
    flag, ab = is_completely_symmetric(image)
    if not flag:
        raise InternalError("oracle image is not completely symmetric")
    return b, image, ab


def oracle_certificate(A: IntMatrix, value: int | None = None, cap: int | None = None) -> SignedCombination:
    """Explicit coefficients over all of Sym_n realizing value * mean(A).

    Solves the (n^2+1) x n! system directly; intended for small n where the
    localizer construction is not available.
    """
    n = A.n
    if n == 1:
        return SignedCombination(1, {Permutation.identity(1): value or 1})
    full = FullModuleMatrix(A, cap)
    if value is None:
        value = oracle_bal(A, cap)
    nums, den = _target(A)
    if any((value * v) % den for v in nums):
        raise ValueError(f"{value} * mean is not an integer point")
    rhs = [value * v // den for v in nums]
    rows = [[col[i] for col in full.columns] for i in range(n * n + 1)]
    coeffs = solve_diophantine(rows, rhs)
    if coeffs is None:
        raise InternalError(f"no certificate with coefficient sum {value}")
    combo = SignedCombination(n)
    for sigma, cval in zip(full.permutations, coeffs):
        combo.add_term(sigma, cval)
    return combo
