"""Shared fixtures: the two worked example matrices and a seeded generator."""

from balindex import IntMatrix
from balindex.rng import SplitMix64

# 4x4 worked example: Phi = <(4,1),(1,4)>, h = 3, s = (1,0,1,0), bal = 3
EX1 = IntMatrix(
    [
        [0, 1, 4, 1],
        [0, 0, 0, 1],
        [0, 3, 0, 3],
        [1, 5, 1, 0],
    ]
)

# 5x5 worked example: Phi = <(1,1),(1,-1)>, h = 2, bal = 1, mean = J - I
EX2 = IntMatrix(
    [
        [0, 1, 2, 2, 1],
        [2, 0, 0, 0, 1],
        [2, 1, 0, 0, 0],
        [0, 1, 2, 0, 0],
        [2, 1, 1, 1, 0],
    ]
)


def random_matrices(seed: int, count: int, n: int, bound: int):
    rng = SplitMix64(seed)
    return [IntMatrix(rng.random_matrix_entries(n, bound)) for _ in range(count)]


def random_symmetric(seed: int, count: int, n: int, bound: int, zero_diag=False):
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 0 if zero_diag else rng.randint(-bound, bound)
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
        out.append(IntMatrix(rows))
    return out


def random_skew(seed: int, count: int, n: int, bound: int):
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-bound, bound)
                rows[i][j], rows[j][i] = v, -v
        out.append(IntMatrix(rows))
    return out
