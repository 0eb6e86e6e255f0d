"""Balancing index of arbitrary square integer matrices.

The n >= 4 computation runs through a seven-coordinate local lattice built
from per-index data: bad-triple parities s_i, diagonal entries, off-diagonal
line sums, and the off-diagonal pair of each localizer.  Small orders are
dispatched to the brute-force oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import InternalError
from .intlinalg import (
    Lattice,
    gcd_with_provenance,
    integer_rank,
    least_positive_multiple,
    p_adic_valuation,
    solve_diophantine,
)
from .matrices import (
    IntMatrix,
    Permutation,
    SignedCombination,
    conjugate,
    is_completely_symmetric,
    klein_four_combination,
    stats,
    triangle_combination,
)


def pod_pair(A: IntMatrix, i: int, j: int, k: int, l: int) -> tuple[int, int]:
    """(b, c) realized by the Klein-four combination placed on (i, j, k, l)."""
    r = A.rows
    b = r[i][k] - r[j][k] - r[i][l] + r[j][l]
    c = r[k][i] - r[k][j] - r[l][i] + r[l][j]
    return b, c


def klein_box(A: IntMatrix) -> IntMatrix:
    """A - A^(12) - A^(34) + A^(12)(34)."""
    if A.n < 4:
        raise ValueError("needs n >= 4")
    t12 = Permutation.transposition(A.n, 0, 1)
    t34 = Permutation.transposition(A.n, 2, 3)
    return A - conjugate(A, t12) - conjugate(A, t34) + conjugate(A, t12.compose(t34))


def triangle_alt(A: IntMatrix) -> IntMatrix:
    """Signed sum of A^sigma over the S_3 acting on the first three indices."""
    if A.n < 3:
        raise ValueError("needs n >= 3")
    out = IntMatrix.zero(A.n)
    for images3 in itertools.permutations(range(3)):
        inv = sum(
            1 for i in range(3) for j in range(i + 1, 3) if images3[i] > images3[j]
        )
        sigma = Permutation(list(images3) + list(range(3, A.n)))
        term = conjugate(A, sigma)
        out = out + (term if inv % 2 == 0 else term.scaled(-1))
    return out


def triangle_value(A: IntMatrix, i: int, j: int, k: int) -> int:
    r = A.rows
    return r[i][j] + r[j][k] + r[k][i] - r[j][i] - r[k][j] - r[i][k]


@dataclass
class PrimitivityLattice:
    """The sublattice of Z^2 generated by all pod pairs of A."""

    n: int
    lattice: Lattice
    representatives: dict[tuple[int, int], tuple[int, int, int, int]]

    @property
    def dim(self) -> int:
        return self.lattice.rank

    @property
    def swap_basis(self) -> tuple[tuple[int, int], tuple[int, int]] | None:
        mode, vecs = pair_basis_of(self)
        return vecs if mode == "swap" else None

    def member(self, pair) -> bool:
        return self.lattice.member(pair)

    def combination_for(self, pair) -> SignedCombination:
        """Permutation combination evaluating to pod_pattern(n, *pair)."""
        reps = sorted(self.representatives.items())
        if not reps:
            if pair[0] or pair[1]:
                raise InternalError("nonzero pair requested from trivial lattice")
            return SignedCombination(self.n)
        cols = [[p[0] for p, _ in reps], [p[1] for p, _ in reps]]
        coeffs = solve_diophantine(cols, list(pair))
        if coeffs is None:
            raise InternalError(f"pair {pair} not generated by pod representatives")
        combo = SignedCombination(self.n)
        for (_, tup), t in zip(reps, coeffs):
            if t:
                combo.add_combination(klein_four_combination(self.n, tup), t)
        return combo


def primitivity_lattice(A: IntMatrix) -> PrimitivityLattice:
    """Primitivity lattice Phi(A) over all ordered 4-tuples of indices."""
    n = A.n
    if n < 4:
        raise ValueError("primitivity lattice needs n >= 4")
    lat = Lattice(2)
    reps: dict[tuple[int, int], tuple[int, int, int, int]] = {}
    for tup in itertools.permutations(range(n), 4):
        bc = pod_pair(A, *tup)
        if bc == (0, 0) or bc in reps:
            continue
        reps[bc] = tup
        lat.add_generator(bc)
    return PrimitivityLattice(n=n, lattice=lat, representatives=reps)


def pair_basis_of(phi: PrimitivityLattice):
    """Working basis of Phi(A) for deviation bookkeeping.

    Returns (mode, vectors):
      - ("zero", ())                       trivial lattice
      - ("sym",  (u,))   u = (k, k)        symmetric type
      - ("skew", (u,))   u = (k, -k)       skew type
      - ("swap", (u, v)) v = swap(u)       generic, when a swap basis exists
      - ("eigen", (u, v)) u=(a,a), v=(c,-c) otherwise (direct sum case)
    """
    basis = phi.lattice.basis
    rank = len(basis)
    if rank == 0:
        return "zero", ()
    if rank == 1:
        u = basis[0]
        if u[0] == u[1]:
            return "sym", (u,)
        if u[0] == -u[1]:
            return "skew", (u,)
        raise InternalError(f"rank-1 pod lattice not swap-invariant: {u}")
    a = least_positive_multiple(phi.lattice, (1, 1))
    c = least_positive_multiple(phi.lattice, (1, -1))
    if a is None or c is None:
        raise InternalError("rank-2 pod lattice misses an eigen direction")
    if (a + c) % 2 == 0:
        p = ((a + c) // 2, (a - c) // 2)
        if phi.lattice.member(p):
            sp = (p[1], p[0])
            if Lattice(2, [p, sp]) == phi.lattice:
                return "swap", (p, sp)
            raise InternalError("swap vector found but span mismatch")
    if Lattice(2, [(a, a), (c, -c)]) != phi.lattice:
        raise InternalError("pod lattice is not the sum of its eigen parts")
    return "eigen", ((a, a), (c, -c))


@dataclass
class TriangleInvariant:
    h: int
    provenance: SignedCombination  # evaluates to h * E'


def triangle_invariant(A: IntMatrix) -> TriangleInvariant:
    """h(A): gcd of alternating triangle sums, with an explicit combination."""
    n = A.n
    if n < 3:
        raise ValueError("triangle invariant needs n >= 3")
    seen: dict[int, tuple[int, int, int]] = {}
    for tri in itertools.permutations(range(n), 3):
        v = triangle_value(A, *tri)
        if v and v not in seen:
            seen[v] = tri
    combo = SignedCombination(n)
    if not seen:
        return TriangleInvariant(0, combo)
    values = sorted(seen)
    tags = [seen[v] for v in values]
    h, fold = gcd_with_provenance(values, tags)
    for tri, t in fold.items():
        if t:
            combo.add_combination(triangle_combination(n, tri), t)
    return TriangleInvariant(h, combo)


def bad_triples(A: IntMatrix, h: int | None = None):
    """Bad triples and the per-index parity vector s.

    {i,j,k} is bad when nu_2 of its alternating sum is below 1 + nu_2(h);
    the alternating sum flips sign under odd rearrangement, so the valuation
    is orientation-free.  With h = 0 all sums vanish and nothing is bad.
    """
    n = A.n
    if n < 3:
        raise ValueError("bad triples need n >= 3")
    if h is None:
        h = triangle_invariant(A).h
    threshold = 1 + p_adic_valuation(2, h)
    triples = []
    counts = [0] * n
    for i, j, k in itertools.combinations(range(n), 3):
        if p_adic_valuation(2, triangle_value(A, i, j, k)) < threshold:
            triples.append((i, j, k))
            counts[i] += 1
            counts[j] += 1
            counts[k] += 1
    s = tuple(c & 1 for c in counts)
    return triples, s


@dataclass(frozen=True)
class MatrixPrimitiveDecomposition:
    B: IntMatrix
    C: IntMatrix
    F: IntMatrix
    f_plus: tuple[int, ...]
    f_minus: tuple[int, ...]
    z_plus: int
    z_minus: int


def matrix_primitive_decomposition(
    A: IntMatrix, phi: PrimitivityLattice | None = None
) -> MatrixPrimitiveDecomposition:
    """Split A = B + C + F with C constant off-diagonal, F_{ij} = f_i^+ + f_j^-,
    and all off-diagonal pairs (B_{ij}, B_{ji}) in Phi(A)."""
    n = A.n
    if n < 4:
        raise ValueError("matrix primitive decomposition needs n >= 4")
    r = A.rows
    z_plus = r[0][1] + r[2][0] - r[2][1]
    z_minus = r[1][0] + r[0][2] - r[1][2]
    f_plus = [z_plus] + [r[i][0] for i in range(1, n)]
    f_minus = [z_minus] + [r[0][j] for j in range(1, n)]
    C = IntMatrix(
        [
            [0 if i == j else (-z_plus if i < j else -z_minus) for j in range(n)]
            for i in range(n)
        ]
    )
    F = IntMatrix([[f_plus[i] + f_minus[j] for j in range(n)] for i in range(n)])
    B = A - C - F
    if phi is None:
        phi = primitivity_lattice(A)
    for i in range(1, n):
        if B.rows[i][0] or B.rows[0][i]:
            raise InternalError("first row/column of B is not zero")
    for i in range(n):
        for j in range(i + 1, n):
            if not phi.member((B.rows[i][j], B.rows[j][i])):
                raise InternalError(f"pair ({i},{j}) of B escapes the pod lattice")
    return MatrixPrimitiveDecomposition(
        B=B,
        C=C,
        F=F,
        f_plus=tuple(f_plus),
        f_minus=tuple(f_minus),
        z_plus=z_plus,
        z_minus=z_minus,
    )


def localizer(A: IntMatrix, r: int) -> tuple[IntMatrix, SignedCombination]:
    """The coefficient-sum-one combination isolating index r (0-based).

    Built as (sum over s != r of A^(rs) minus (n-2) A), conjugated by (1 r);
    its trace and off-diagonal sum agree with those of A.
    """
    n = A.n
    if n < 2:
        raise ValueError("localizer needs n >= 2")
    if not 0 <= r < n:
        raise ValueError("index out of range")
    swap1r = Permutation.transposition(n, 0, r)
    combo = SignedCombination(n)
    for s in range(n):
        if s != r:
            combo.add_term(Permutation.transposition(n, r, s).compose(swap1r), 1)
    combo.add_term(swap1r, -(n - 2))
    return combo.evaluate(A), combo


def e_pairs(
    A: IntMatrix,
    localizers=None,
    phi: PrimitivityLattice | None = None,
) -> list[tuple[int, int]]:
    """Off-diagonal pair of each localizer, read at position (2,3).

    Any position avoiding index 1 gives the same pair mod Phi(A); the
    alternative read at (3,4) is checked against that on every call.
    """
    n = A.n
    if n < 4:
        raise ValueError("e-pairs need n >= 4")
    if localizers is None:
        localizers = [localizer(A, r) for r in range(n)]
    if phi is None:
        phi = primitivity_lattice(A)
    out = []
    for mat, _ in localizers:
        e = (mat.rows[1][2], mat.rows[2][1])
        alt = (mat.rows[2][3], mat.rows[3][2])
        if not phi.member((e[0] - alt[0], e[1] - alt[1])):
            raise InternalError("localizer pair depends on the representative position")
        out.append(e)
    return out


@dataclass
class MatrixLocalLattice:
    lattice: Lattice
    test_numerators: tuple[int, ...]
    test_denominator: int
    s: tuple[int, ...]
    phi: PrimitivityLattice
    triangle: TriangleInvariant
    e: list[tuple[int, int]]
    localizers: list[tuple[IntMatrix, SignedCombination]]
    generators: list[tuple[int, ...]]  # the n localizer rows, in index order


def local_lattice_matrix(A: IntMatrix) -> MatrixLocalLattice:
    """Seven-coordinate local lattice of A and its rational test vector."""
    n = A.n
    if n < 4:
        raise ValueError("local lattice needs n >= 4")
    st = stats(A)
    phi = primitivity_lattice(A)
    tri = triangle_invariant(A)
    _, s = bad_triples(A, tri.h)
    locs = [localizer(A, r) for r in range(n)]
    e = e_pairs(A, locs, phi)
    gens = [
        (1, s[i], st.diag[i], st.row_off[i], st.col_off[i], e[i][0], e[i][1])
        for i in range(n)
    ]
    lat = Lattice(7)
    for g in gens:
        lat.add_generator(g)
    lat.add_generator((0, 2, 0, 0, 0, 0, 0))
    for u in phi.lattice.basis:
        lat.add_generator((0, 0, 0, 0, 0, u[0], u[1]))
    q = n * (n - 1)
    nums = (
        q,
        0,
        (n - 1) * st.trace,
        (n - 1) * st.off_sum,
        (n - 1) * st.off_sum,
        st.off_sum,
        st.off_sum,
    )
    return MatrixLocalLattice(
        lattice=lat,
        test_numerators=nums,
        test_denominator=q,
        s=s,
        phi=phi,
        triangle=tri,
        e=e,
        localizers=locs,
        generators=gens,
    )


def bal(A: IntMatrix) -> int:
    """The balancing index.  Total on square integer matrices.

    n = 1 and n = 2 are immediate, n = 3 goes to the brute-force oracle,
    and n >= 4 is the least positive multiple of the test vector in the
    local lattice.  The divisor bound bal | n(n-1) is asserted.
    """
    n = A.n
    if n == 1:
        return 1
    if n == 2:
        return 1 if is_completely_symmetric(A)[0] else 2
    if n == 3:
        from .bruteforce import oracle_bal

        b = oracle_bal(A)
    else:
        loc = local_lattice_matrix(A)
        b = least_positive_multiple(loc.lattice, loc.test_numerators, loc.test_denominator)
        if b is None:
            raise InternalError("local lattice does not span the test direction")
    if (n * (n - 1)) % b:
        raise InternalError(f"bal {b} does not divide n(n-1) = {n * (n - 1)}")
    return b


def bal_symmetric(A: IntMatrix) -> int:
    """Balancing of a symmetric matrix through the four-coordinate lattice."""
    if not A.is_symmetric():
        raise ValueError("matrix is not symmetric")
    if A.n < 4:
        raise ValueError("needs n >= 4")
    from .graphs import SignedMultigraph, bal_with_loops

    off = IntMatrix(
        [
            [0 if i == j else A.rows[i][j] for j in range(A.n)]
            for i in range(A.n)
        ]
    )
    loops = [A.rows[i][i] for i in range(A.n)]
    return bal_with_loops(SignedMultigraph.from_adjacency(off), loops)


def bal_skew(A: IntMatrix) -> int:
    """Balancing of a skew-symmetric matrix: lattice over (1, s_i, d_i^+, e_i^+)
    plus (0,2,0,0) and (0,0,0,k), test vector (1,0,0,0)."""
    if not A.is_skew_symmetric():
        raise ValueError("matrix is not skew-symmetric")
    n = A.n
    if n < 4:
        raise ValueError("needs n >= 4")
    st = stats(A)
    phi = primitivity_lattice(A)
    mode, vecs = pair_basis_of(phi)
    if mode == "zero":
        k = 0
    elif mode == "skew":
        k = vecs[0][0]
    else:
        raise InternalError(f"skew matrix has pod lattice of mode {mode}")
    tri = triangle_invariant(A)
    _, s = bad_triples(A, tri.h)
    locs = [localizer(A, r) for r in range(n)]
    e = e_pairs(A, locs, phi)
    lat = Lattice(4)
    for i in range(n):
        lat.add_generator((1, s[i], st.row_off[i], e[i][0]))
    lat.add_generator((0, 2, 0, 0))
    lat.add_generator((0, 0, 0, k))
    b = least_positive_multiple(lat, (1, 0, 0, 0))
    if b is None:
        raise InternalError("skew local lattice does not span the test direction")
    return b


def bal_tournament(scores) -> int:
    """Balancing index of a tournament from its score sequence alone."""
    d = [int(v) for v in scores]
    n = len(d)
    if n < 2:
        raise ValueError("needs n >= 2")
    if sum(d) != n * (n - 1) // 2:
        raise ValueError("invalid score sum for a tournament")
    if all(2 * v == n - 1 for v in d):
        return 2
    q = 0
    for v in d[1:]:
        q = gcd(q, v - d[0])
    r = d[0] % q
    return 2 * q // gcd(q, abs(n - 1 - 2 * r))


def is_tournament(A: IntMatrix) -> bool:
    n = A.n
    if n < 2:
        return False
    for i in range(n):
        if A.rows[i][i]:
            return False
        for j in range(n):
            if i != j and A.rows[i][j] + A.rows[j][i] != 1:
                return False
            if i != j and A.rows[i][j] not in (0, 1):
                return False
    return True


def is_ternary_triple(a: int, b: int, c: int) -> bool:
    """nu_3(a + b - 2c) >= 1 + min(nu_3(a - c), nu_3(b - c))."""
    return p_adic_valuation(3, a + b - 2 * c) >= 1 + min(
        p_adic_valuation(3, a - c), p_adic_valuation(3, b - c)
    )


def ternary_triple_count(N: int) -> int:
    """Number of ternary triples 1 <= a < b < c <= N."""
    if N < 3:
        return 0
    return sum(
        1
        for a, b, c in itertools.combinations(range(1, N + 1), 3)
        if is_ternary_triple(a, b, c)
    )


@dataclass(frozen=True)
class ThreeByThreeReport:
    two_divides: bool
    three_divides: bool
    ternary_triples: tuple[bool, bool, bool]
    theta_rank: int

    def predicted_bal(self) -> int:
        return (2 if self.two_divides else 1) * (3 if self.three_divides else 1)


def three_by_three_predicates(A: IntMatrix) -> ThreeByThreeReport:
    """Parity and ternary classification of a 3x3 matrix.

    2 | bal iff the two alternating triangle sums differ; bal <= 2 iff
    rank(Theta) < 3 and the diagonal and full line sums are ternary triples.
    """
    if A.n != 3:
        raise ValueError("needs a 3x3 matrix")
    r = A.rows
    two = (r[0][1] + r[1][2] + r[2][0]) != (r[1][0] + r[2][1] + r[0][2])
    diag = [r[i][i] for i in range(3)]
    row_sums = [sum(r[i]) for i in range(3)]
    col_sums = [sum(r[i][j] for i in range(3)) for j in range(3)]
    ternary = (
        is_ternary_triple(*diag),
        is_ternary_triple(*row_sums),
        is_ternary_triple(*col_sums),
    )
    theta = [[1, 1, 1], diag, row_sums, col_sums]
    rank = integer_rank(theta)
    three = not (rank < 3 and all(ternary))
    return ThreeByThreeReport(
        two_divides=two,
        three_divides=three,
        ternary_triples=ternary,
        theta_rank=rank,
    )


def classify(A: IntMatrix) -> str:
    """Input class for reporting: detection order is tournament, skew,
    zero-diagonal symmetric, symmetric, then general; tiny orders are
    'small-n'."""
    if A.n <= 3:
        return "small-n"
    if is_tournament(A):
        return "tournament"
    if A.is_skew_symmetric():
        return "skew"
    if A.is_symmetric():
        if all(A.rows[i][i] == 0 for i in range(A.n)):
            return "zero-diagonal symmetric"
        return "symmetric"
    return "general"
