"""Square integer matrices, the permutation action, and signed combinations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class IntMatrix:
    """Dense n x n matrix of Python ints (arbitrary precision)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        self.n = n
        self.rows = rows

    @classmethod
    def zero(cls, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n: int) -> "IntMatrix":
        return cls([[1] * n for _ in range(n)])

    @classmethod
    def completely_symmetric(cls, n: int, a: int, b: int) -> "IntMatrix":
        """a*I + b*J."""
        return cls([[a + b if i == j else b for j in range(n)] for i in range(n)])

    def __getitem__(self, i: int):
        return self.rows[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_order(other)
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_order(other)
        return IntMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def scaled(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * v for v in row] for row in self.rows])

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.rows for v in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def is_skew_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.n)
            for j in range(i, self.n)
        )

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def total(self) -> int:
        return sum(v for row in self.rows for v in row)

    def vec(self) -> list[int]:
        """Row-major vectorization."""
        return [v for row in self.rows for v in row]

    def _check_order(self, other: "IntMatrix") -> None:
        if self.n != other.n:
            raise ValueError(f"order mismatch: {self.n} vs {other.n}")

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"


class Permutation:
    """Permutation of {1..n}, stored 0-based; 1-based in all text I/O."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(n))
        images[a], images[b] = images[b], images[a]
        return cls(images)

    @classmethod
    def from_one_based(cls, images) -> "Permutation":
        return cls([v - 1 for v in images])

    def one_based(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(i) = self(other(i))."""
        return Permutation([self.images[j] for j in other.images])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation{self.one_based()}"


def conjugate(A: IntMatrix, sigma: Permutation) -> IntMatrix:
    """A^sigma with (A^sigma)_{ij} = A_{sigma(i), sigma(j)}; equals P^T A P.

    The composition convention is conjugate(A, sigma.compose(tau)) ==
    conjugate(conjugate(A, sigma), tau).
    """
    if A.n != len(sigma):
        raise ValueError(f"order mismatch: matrix {A.n}, permutation {len(sigma)}")
    im = sigma.images
    return IntMatrix([[A.rows[im[i]][im[j]] for j in range(A.n)] for i in range(A.n)])


class ScaledMatrix:
    """Integer matrix divided by a fixed positive denominator (not reduced)."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: IntMatrix, denominator: int):
        if denominator < 1:
            raise ValueError("denominator must be positive")
        self.numerator = numerator
        self.denominator = denominator

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            other = ScaledMatrix(other, 1)
        if not isinstance(other, ScaledMatrix):
            return NotImplemented
        return (
            self.numerator.scaled(other.denominator)
            == other.numerator.scaled(self.denominator)
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        raise TypeError("unhashable")

    def is_integral(self) -> bool:
        d = self.denominator
        return all(v % d == 0 for row in self.numerator.rows for v in row)

    def to_int_matrix(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix is not integral")
        d = self.denominator
        return IntMatrix([[v // d for v in row] for row in self.numerator.rows])

    def scaled(self, k: int) -> "ScaledMatrix":
        return ScaledMatrix(self.numerator.scaled(k), self.denominator)

    def __repr__(self) -> str:
        return f"ScaledMatrix({self.numerator!r}, 1/{self.denominator})"


@dataclass(frozen=True)
class MatrixStats:
    trace: int
    off_sum: int
    row_off: tuple[int, ...]
    col_off: tuple[int, ...]
    diag: tuple[int, ...]


def stats(A: IntMatrix) -> MatrixStats:
    """Trace, off-diagonal sum, and per-index off-diagonal line sums."""
    n = A.n
    diag = tuple(A.rows[i][i] for i in range(n))
    row_off = tuple(sum(A.rows[i]) - A.rows[i][i] for i in range(n))
    col_off = tuple(
        sum(A.rows[k][j] for k in range(n)) - A.rows[j][j] for j in range(n)
    )
    return MatrixStats(
        trace=sum(diag),
        off_sum=sum(row_off),
        row_off=row_off,
        col_off=col_off,
        diag=diag,
    )


def mean_matrix(A: IntMatrix) -> ScaledMatrix:
    """Average of all n! conjugates: tr(A)/n on the diagonal and
    sum*(A)/(n(n-1)) off it, stored over the fixed denominator n(n-1)."""
    n = A.n
    if n < 2:
        raise ValueError("mean matrix needs n >= 2")
    st = stats(A)
    diag_num = (n - 1) * st.trace
    off_num = st.off_sum
    num = IntMatrix(
        [[diag_num if i == j else off_num for j in range(n)] for i in range(n)]
    )
    return ScaledMatrix(num, n * (n - 1))


def is_completely_symmetric(A: IntMatrix) -> tuple[bool, tuple[int, int] | None]:
    """Whether A = a*I + b*J; returns (flag, (a, b)) with b = 0 for n = 1."""
    n = A.n
    d = A.rows[0][0]
    if any(A.rows[i][i] != d for i in range(n)):
        return False, None
    if n == 1:
        return True, (d, 0)
    off = A.rows[0][1]
    for i in range(n):
        for j in range(n):
            if i != j and A.rows[i][j] != off:
                return False, None
    return True, (d - off, off)


class SignedCombination:
    """Sparse integer combination of permutation conjugates of one matrix.

    Terms map Permutation -> nonzero coefficient; evaluation is exact.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[Permutation, int] = {}
        if terms:
            for perm, coeff in dict(terms).items():
                self.add_term(perm, coeff)

    def add_term(self, perm: Permutation, coeff: int) -> None:
        if len(perm) != self.n:
            raise ValueError("permutation has wrong length")
        if not coeff:
            return
        new = self.terms.get(perm, 0) + coeff
        if new:
            self.terms[perm] = new
        else:
            del self.terms[perm]

    def add_combination(self, other: "SignedCombination", scale: int = 1) -> None:
        if other.n != self.n:
            raise ValueError("order mismatch")
        if not scale:
            return
        for perm, coeff in other.terms.items():
            self.add_term(perm, scale * coeff)

    def scaled(self, k: int) -> "SignedCombination":
        out = SignedCombination(self.n)
        out.add_combination(self, k)
        return out

    def conjugated(self, tau: Permutation) -> "SignedCombination":
        """Combination whose evaluation is conjugate(evaluate(A), tau)."""
        out = SignedCombination(self.n)
        for perm, coeff in self.terms.items():
            out.add_term(perm.compose(tau), coeff)
        return out

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def support_size(self) -> int:
        return len(self.terms)

    def evaluate(self, A: IntMatrix) -> IntMatrix:
        if A.n != self.n:
            raise ValueError("order mismatch")
        out = [[0] * self.n for _ in range(self.n)]
        for perm, coeff in self.terms.items():
            im = perm.images
            rows = A.rows
            for i in range(self.n):
                row = rows[im[i]]
                oi = out[i]
                for j in range(self.n):
                    oi[j] += coeff * row[im[j]]
        return IntMatrix(out)

    def canonical_terms(self) -> list[tuple[Permutation, int]]:
        """Terms sorted lexicographically by image sequence (stable output)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].images)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignedCombination)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{p.one_based()}: {c}" for p, c in self.canonical_terms())
        return f"SignedCombination(n={self.n}, {{{body}}})"


# --- alternating gadget patterns -------------------------------------------
#
# pod_pattern(n, b, c) is the image of the Klein-four alternating combination
# A - A^(12) - A^(34) + A^(12)(34): b sits in the (1,2)x(3,4) block and c in
# the transposed block.  eprime_pattern is the alternating triangle E' with
# +1 at (1,3), (3,2), (2,1).  Positions are 1-based here, 0-based in code.


def pod_pattern(n: int, b: int, c: int) -> IntMatrix:
    if n < 4:
        raise ValueError("pod pattern needs n >= 4")
    rows = [[0] * n for _ in range(n)]
    rows[0][2], rows[0][3] = b, -b
    rows[1][2], rows[1][3] = -b, b
    rows[2][0], rows[2][1] = c, -c
    rows[3][0], rows[3][1] = -c, c
    return IntMatrix(rows)


def eprime_pattern(n: int, h: int = 1) -> IntMatrix:
    if n < 3:
        raise ValueError("triangle pattern needs n >= 3")
    rows = [[0] * n for _ in range(n)]
    rows[0][2], rows[2][1], rows[1][0] = h, h, h
    rows[0][1], rows[1][2], rows[2][0] = -h, -h, -h
    return IntMatrix(rows)


def placement_permutation(n: int, spots) -> Permutation:
    """Permutation with images[t] = spots[t]; the rest fill in ascending order."""
    spots = list(spots)
    used = set(spots)
    rest = iter(x for x in range(n) if x not in used)
    images = list(spots) + [next(rest) for _ in range(n - len(spots))]
    return Permutation(images)


def klein_four_combination(n: int, spots) -> SignedCombination:
    """The 4-term alternating combination whose evaluation at A is
    pod_pattern(n, b, c) with b, c the pod values of A at the given 4-tuple."""
    if len(spots) != 4 or len(set(spots)) != 4:
        raise ValueError("need four distinct indices")
    pi = placement_permutation(n, spots)
    t12 = Permutation.transposition(n, 0, 1)
    t34 = Permutation.transposition(n, 2, 3)
    combo = SignedCombination(n)
    combo.add_term(pi, 1)
    combo.add_term(pi.compose(t12), -1)
    combo.add_term(pi.compose(t34), -1)
    combo.add_term(pi.compose(t12).compose(t34), 1)
    return combo


def triangle_combination(n: int, spots) -> SignedCombination:
    """Six-term alternating combination evaluating to a * E' where a is the
    alternating triangle sum of A at the given triple."""
    if len(spots) != 3 or len(set(spots)) != 3:
        raise ValueError("need three distinct indices")
    pi = placement_permutation(n, spots)
    combo = SignedCombination(n)
    for images3 in itertools.permutations(range(3)):
        sign = _perm3_sign(images3)
        sigma = Permutation(list(images3) + list(range(3, n)))
        # negated signs: the raw alternating sum evaluates to -a * E'
        combo.add_term(pi.compose(sigma), -sign)
    return combo


def _perm3_sign(images3) -> int:
    inv = sum(
        1
        for i in range(3)
        for j in range(i + 1, 3)
        if images3[i] > images3[j]
    )
    return -1 if inv % 2 else 1
