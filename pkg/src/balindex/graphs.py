"""Signed multigraphs: primitivity, coboundaries, local lattices, closed forms.

A signed multigraph on [n] is a symmetric integer matrix with zero diagonal;
edge multiplicities may be negative.  Everything here assumes that model and
routes n <= 3 elsewhere (the brute-force oracle handles those directly).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm

from .errors import InternalError
from .intlinalg import (
    Lattice,
    gcd_with_provenance,
    least_positive_multiple,
    p_adic_valuation,
)
from .matrices import IntMatrix, Permutation


class SignedMultigraph:
    """Loopless multigraph with integer (possibly negative) multiplicities."""

    __slots__ = ("n", "mult")

    def __init__(self, n: int, mult=None):
        if n < 1:
            raise ValueError("order must be positive")
        self.n = n
        self.mult: dict[tuple[int, int], int] = {}
        if mult:
            for (i, j), m in dict(mult).items():
                self.set(i, j, m)

    @classmethod
    def from_adjacency(cls, A: IntMatrix) -> "SignedMultigraph":
        if not A.is_symmetric():
            raise ValueError("adjacency matrix must be symmetric")
        if any(A.rows[i][i] for i in range(A.n)):
            raise ValueError("adjacency matrix must have zero diagonal")
        g = cls(A.n)
        for i in range(A.n):
            for j in range(i + 1, A.n):
                g.set(i, j, A.rows[i][j])
        return g

    @classmethod
    def complete(cls, n: int, weight: int = 1) -> "SignedMultigraph":
        g = cls(n)
        for i in range(n):
            for j in range(i + 1, n):
                g.set(i, j, weight)
        return g

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SignedMultigraph":
        """K_{a,b} with part A = {0..a-1}; order n = a + b."""
        g = cls(a + b)
        for i in range(a):
            for j in range(a, a + b):
                g.set(i, j, 1)
        return g

    @classmethod
    def clique_union(cls, a: int, b: int) -> "SignedMultigraph":
        """K_a disjoint-union K_b on n = a + b vertices."""
        g = cls(a + b)
        for i in range(a):
            for j in range(i + 1, a):
                g.set(i, j, 1)
        for i in range(a, a + b):
            for j in range(i + 1, a + b):
                g.set(i, j, 1)
        return g

    def to_adjacency(self) -> IntMatrix:
        rows = [[0] * self.n for _ in range(self.n)]
        for (i, j), m in self.mult.items():
            rows[i][j] = rows[j][i] = m
        return IntMatrix(rows)

    def get(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("no loops in a signed multigraph")
        return self.mult.get((min(i, j), max(i, j)), 0)

    def set(self, i: int, j: int, m: int) -> None:
        if i == j:
            raise ValueError("no loops in a signed multigraph")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError("vertex out of range")
        key = (min(i, j), max(i, j))
        if m:
            self.mult[key] = int(m)
        else:
            self.mult.pop(key, None)

    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.n
        for (i, j), m in self.mult.items():
            d[i] += m
            d[j] += m
        return tuple(d)

    def edge_count_twice(self) -> int:
        """2e, the sum of all degrees."""
        return 2 * sum(self.mult.values())

    def is_simple(self) -> bool:
        return all(m == 1 for m in self.mult.values())

    def relabeled(self, sigma: Permutation) -> "SignedMultigraph":
        """Graph with multiplicity of {i,j} taken from {sigma(i), sigma(j)}."""
        out = SignedMultigraph(self.n)
        im = sigma.images
        for i in range(self.n):
            for j in range(i + 1, self.n):
                m = self.get(im[i], im[j])
                if m:
                    out.set(i, j, m)
        return out

    def __add__(self, other: "SignedMultigraph") -> "SignedMultigraph":
        out = SignedMultigraph(self.n, self.mult)
        for (i, j), m in other.mult.items():
            out.set(i, j, out.get(i, j) + m)
        return out

    def __sub__(self, other: "SignedMultigraph") -> "SignedMultigraph":
        return self + other.scaled(-1)

    def scaled(self, k: int) -> "SignedMultigraph":
        return SignedMultigraph(self.n, {e: k * m for e, m in self.mult.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignedMultigraph)
            and self.n == other.n
            and self.mult == other.mult
        )

    def __repr__(self) -> str:
        edges = ", ".join(f"{{{i + 1},{j + 1}}}:{m}" for (i, j), m in sorted(self.mult.items()))
        return f"SignedMultigraph(n={self.n}, {{{edges}}})"


@dataclass(frozen=True)
class DegreeData:
    degrees: tuple[int, ...]
    edge_count_twice: int


def degree_data(G: SignedMultigraph) -> DegreeData:
    d = G.degrees()
    return DegreeData(degrees=d, edge_count_twice=sum(d))


def pod_value(G: SignedMultigraph, i: int, j: int, k: int, l: int) -> int:
    """Multiplicity of {1,3} in G - G^(ij) - G^(kl) + G^(ij)(kl) pulled to (i,j,k,l)."""
    return G.get(i, k) - G.get(j, k) - G.get(i, l) + G.get(j, l)


def primitivity_index(G: SignedMultigraph) -> int:
    """gcd of all 2-pod values over ordered 4-tuples of distinct vertices.

    The pod for (i,j,k,l) is D(k) - D(l) with D(x) = G(i,x) - G(j,x), so for
    each pair (i,j) the gcd over (k,l) is the gcd of the differences of the
    D-values; that brings the cost to O(n^3).
    """
    n = G.n
    if n < 4:
        raise ValueError("index of primitivity needs n >= 4")
    g = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            others = [x for x in range(n) if x != i and x != j]
            base = G.get(i, others[0]) - G.get(j, others[0])
            for x in others[1:]:
                g = gcd(g, G.get(i, x) - G.get(j, x) - base)
            if g == 1:
                return 1
    return g


def primitivity_provenance(G: SignedMultigraph):
    """(k, combo) with combo a map 4-tuple -> coefficient summing pods to k.

    Only tuples contributing a new pod value are folded in, so the support
    stays small; the fold stops once the running gcd reaches k.
    """
    n = G.n
    k = primitivity_index(G)
    seen: dict[int, tuple[int, int, int, int]] = {}
    values, tags = [], []
    running = 0
    for tup in itertools.permutations(range(n), 4):
        v = pod_value(G, *tup)
        if v == 0 or v in seen:
            continue
        seen[v] = tup
        values.append(v)
        tags.append(tup)
        running = gcd(running, v)
        if running == k and k != 0:
            break
    if not values:
        return 0, {}
    g, combo = gcd_with_provenance(values, tags)
    if g != k:
        raise InternalError("pod gcd mismatch between fast and folded paths")
    return k, {t: c for t, c in combo.items() if c}


def coboundary(potentials2, n: int | None = None) -> SignedMultigraph:
    """Graph of the coboundary of f, where potentials2[i] = 2*f(i).

    Potentials must be all integers or all half-integers, i.e. the doubled
    values must share one parity.
    """
    p2 = [int(v) for v in potentials2]
    if n is None:
        n = len(p2)
    if len(p2) != n:
        raise ValueError("potential list has wrong length")
    parities = {v & 1 for v in p2}
    if len(parities) > 1:
        raise ValueError("invalid potentials: mixed integer and half-integer values")
    g = SignedMultigraph(n)
    for i in range(n):
        for j in range(i + 1, n):
            g.set(i, j, (p2[i] + p2[j]) // 2)
    return g


@dataclass(frozen=True)
class PrimitiveDecomposition:
    k: int
    potentials2: tuple[int, ...]
    F: SignedMultigraph
    H: SignedMultigraph | None

    def reassembled(self) -> SignedMultigraph:
        if self.k == 0 or self.H is None:
            return self.F
        return self.F + self.H.scaled(self.k)


def primitive_decomposition(G: SignedMultigraph) -> PrimitiveDecomposition:
    """Split G = F + k*H with F a coboundary and H primitive.

    Vertex potentials are fixed deterministically: 2*f_1 = a and
    2*f_i = 2*G(1,i) - a for i > 1, with a = G(1,2) + G(1,3) - G(2,3); the
    residue G - F is then divisible by the index of primitivity k.
    """
    n = G.n
    if n < 4:
        raise ValueError("primitive decomposition needs n >= 4")
    k = primitivity_index(G)
    a = G.get(0, 1) + G.get(0, 2) - G.get(1, 2)
    p2 = [a] + [2 * G.get(0, i) - a for i in range(1, n)]
    F = coboundary(p2, n)
    rem = G - F
    if k == 0:
        if rem.mult:
            raise InternalError("index of primitivity 0 but G is not a coboundary")
        return PrimitiveDecomposition(0, tuple(p2), F, None)
    H = SignedMultigraph(n)
    for (i, j), m in rem.mult.items():
        if m % k:
            raise InternalError("coboundary residue not divisible by the index")
        H.set(i, j, m // k)
    if primitivity_index(H) != 1:
        raise InternalError("primitive part is not primitive")
    return PrimitiveDecomposition(k, tuple(p2), F, H)


@dataclass(frozen=True)
class GraphLocalLattice:
    lattice: Lattice
    test_numerators: tuple[int, ...]
    test_denominator: int
    decomposition: PrimitiveDecomposition
    degrees: tuple[int, ...]


def local_lattice_graph(G: SignedMultigraph) -> GraphLocalLattice:
    """Three-coordinate local lattice <(1, d_i, 2 f_i)> + <(0, 0, k)> with
    test vector (1, 2e/n, 2e/(n(n-1)))."""
    n = G.n
    if n < 4:
        raise ValueError("local lattice needs n >= 4")
    dec = primitive_decomposition(G)
    d = G.degrees()
    lat = Lattice(3)
    for i in range(n):
        lat.add_generator((1, d[i], dec.potentials2[i]))
    lat.add_generator((0, 0, dec.k))
    two_e = sum(d)
    q = n * (n - 1)
    return GraphLocalLattice(
        lattice=lat,
        test_numerators=(q, (n - 1) * two_e, two_e),
        test_denominator=q,
        decomposition=dec,
        degrees=d,
    )


def bal_multigraph(G: SignedMultigraph) -> int:
    """Balancing index of a signed multigraph of order n >= 4."""
    loc = local_lattice_graph(G)
    b = least_positive_multiple(loc.lattice, loc.test_numerators, loc.test_denominator)
    if b is None:
        raise InternalError("graph local lattice does not span the test direction")
    return b


def lambda_admissible(G: SignedMultigraph, lam: int) -> bool:
    """Whether lambda*K_n admits a signed G-decomposition.

    Lattice statement: lambda*(n(n-1), n-1, 1) lies in the local lattice
    generated by (2e, d_i, 2 f_i) and (0, 0, k); the first coordinate weighs
    each copy by its total edge multiplicity, so coefficient sums stay
    integral automatically.
    """
    n = G.n
    if n < 4:
        raise ValueError("needs n >= 4")
    dec = primitive_decomposition(G)
    d = G.degrees()
    two_e = sum(d)
    lat = Lattice(3)
    for i in range(n):
        lat.add_generator((two_e, d[i], dec.potentials2[i]))
    lat.add_generator((0, 0, dec.k))
    return lat.member((lam * n * (n - 1), lam * (n - 1), lam))


def two_dim_basis(m: int, d) -> list[tuple[int, int]]:
    """Basis of <(m, d_i)>: {(m, d)} when constant, else {(m, r), (0, q)}
    with q the gcd of the pairwise differences and r the least residue."""
    if m == 0:
        raise ValueError("m must be nonzero")
    d = [int(v) for v in d]
    if not d:
        raise ValueError("degree list must be nonempty")
    q = 0
    for v in d[1:]:
        q = gcd(q, v - d[0])
    if q == 0:
        return [(m, d[0])]
    r = d[0] % q
    return [(m, r), (0, q)]


def two_dim_least_multiple(m: int, q: int, r: int, u: int, v: int) -> int | None:
    """Least positive multiple of (u, v) in <(m, r), (0, q)>; None if infeasible."""
    if m == 0:
        raise ValueError("m must be nonzero")
    if q == 0:
        if m * v != r * u:
            return None
        return abs(m) // gcd(m, u)
    mq = abs(m * q)
    return mq // gcd(gcd(mq, abs(u * q)), abs(m * v - r * u))


def _components(G: SignedMultigraph) -> list[list[int]]:
    n = G.n
    seen = [False] * n
    comps = []
    adj = [[] for _ in range(n)]
    for (i, j), m in G.mult.items():
        if m:
            adj[i].append(j)
            adj[j].append(i)
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def clique_union_split(G: SignedMultigraph) -> tuple[int, int] | None:
    """(a, b) with a >= b >= 1 when G is exactly K_a disjoint-union K_b."""
    if not G.is_simple():
        return None
    comps = _components(G)
    if len(comps) != 2:
        return None
    for comp in comps:
        want = len(comp) * (len(comp) - 1) // 2
        have = sum(1 for (i, j) in G.mult if i in comp and j in comp)
        if have != want:
            return None
    a, b = sorted((len(comps[0]), len(comps[1])), reverse=True)
    return (a, b)


def complement_simple(G: SignedMultigraph) -> SignedMultigraph:
    out = SignedMultigraph(G.n)
    for i in range(G.n):
        for j in range(i + 1, G.n):
            out.set(i, j, 1 - G.get(i, j))
    return out


def bipartite_split(G: SignedMultigraph) -> tuple[int, int] | None:
    """(a, b) with a >= b >= 1 when G is exactly complete bipartite K_{a,b}."""
    if not G.is_simple():
        return None
    return clique_union_split(complement_simple(G))


def simple_graph_lambda_min(G: SignedMultigraph) -> tuple[int, int]:
    """(lambda_min, bal) for a simple graph, by closed form.

    Generic graphs use 2e / gcd(n(n-1), alpha(n-1), 2e) with alpha = 0 for
    regular G and alpha = (2e - r n)/q otherwise; the exceptional families
    K_{a,n-a} and K_a u K_{n-a} with n != 2a use
    2e / gcd(n(n-1), a(n-1), a(n-a)) instead.
    """
    n = G.n
    if n < 4:
        raise ValueError("closed form needs n >= 4")
    if not G.is_simple():
        raise ValueError("closed form applies to simple graphs")
    d = G.degrees()
    two_e = sum(d)
    if two_e == 0:
        raise ValueError("edgeless - every lambda trivially decomposable by empty combination")

    split = bipartite_split(G) or clique_union_split(G)
    if split is not None and n != 2 * split[0]:
        a = split[0]
        lam = two_e // gcd(gcd(n * (n - 1), a * (n - 1)), a * (n - a))
    else:
        q = 0
        for v in d[1:]:
            q = gcd(q, v - d[0])
        if q == 0:
            alpha = 0
        else:
            r = d[0] % q
            alpha = (two_e - r * n) // q
        lam = two_e // gcd(gcd(n * (n - 1), alpha * (n - 1)), two_e)

    bal_value, rem = divmod(lam * n * (n - 1), two_e)
    if rem:
        raise InternalError("lambda_min * n(n-1) not divisible by 2e")
    return lam, bal_value


def psi(a: int, b: int) -> int:
    """Parity marker for K_{a,b}: 2 when nu_2(a) = nu_2(b) or
    nu_2(a(a-1)) = nu_2(b(b-1)), else 1; for b = 1 it is 1 + (a mod 2)."""
    if not (a >= b >= 1):
        raise ValueError("need a >= b >= 1")
    if b == 1:
        return 1 + (a % 2)
    if p_adic_valuation(2, a) == p_adic_valuation(2, b):
        return 2
    if p_adic_valuation(2, a * (a - 1)) == p_adic_valuation(2, b * (b - 1)):
        return 2
    return 1


def wilson_two_isolates(G: SignedMultigraph) -> int:
    """lambda_min for a simple graph with at least two isolated vertices:
    lcm(2e / gcd(n(n-1), 2e), d / gcd(n-1, d)) with d the gcd of degrees."""
    n = G.n
    if not G.is_simple():
        raise ValueError("needs a simple graph")
    deg = G.degrees()
    two_e = sum(deg)
    if two_e == 0:
        raise ValueError("needs e > 0")
    if sum(1 for v in deg if v == 0) < 2:
        raise ValueError("needs at least two isolated vertices")
    d = 0
    for v in deg:
        d = gcd(d, v)
    return lcm(two_e // gcd(n * (n - 1), two_e), d // gcd(n - 1, d))


@dataclass(frozen=True)
class LoopLocalLattice:
    lattice: Lattice
    test_numerators: tuple[int, ...]
    test_denominator: int
    decomposition: PrimitiveDecomposition


def local_lattice_with_loops(G: SignedMultigraph, loops) -> LoopLocalLattice:
    """Four-coordinate lattice <(1, l_i, d_i, 2 f_i)> + <(0,0,0,k)> with test
    vector (1, p/n, 2e/n, 2e/(n(n-1))), p the total loop count.

    With loops read as diagonal entries this is the symmetric-matrix local
    lattice.
    """
    n = G.n
    loops = [int(v) for v in loops]
    if len(loops) != n:
        raise ValueError("loop list has wrong length")
    if n < 4:
        raise ValueError("needs n >= 4")
    dec = primitive_decomposition(G)
    d = G.degrees()
    lat = Lattice(4)
    for i in range(n):
        lat.add_generator((1, loops[i], d[i], dec.potentials2[i]))
    lat.add_generator((0, 0, 0, dec.k))
    two_e = sum(d)
    p = sum(loops)
    q = n * (n - 1)
    return LoopLocalLattice(
        lattice=lat,
        test_numerators=(q, (n - 1) * p, (n - 1) * two_e, two_e),
        test_denominator=q,
        decomposition=dec,
    )


def bal_with_loops(G: SignedMultigraph, loops) -> int:
    loc = local_lattice_with_loops(G, loops)
    b = least_positive_multiple(loc.lattice, loc.test_numerators, loc.test_denominator)
    if b is None:
        raise InternalError("loop local lattice does not span the test direction")
    return b
