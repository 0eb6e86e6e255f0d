import itertools

import pytest

from balindex.bruteforce import oracle_bal
from balindex.graphs import (
    SignedMultigraph,
    bal_multigraph,
    bal_with_loops,
    bipartite_split,
    clique_union_split,
    coboundary,
    degree_data,
    lambda_admissible,
    local_lattice_graph,
    local_lattice_with_loops,
    primitive_decomposition,
    primitivity_index,
    primitivity_provenance,
    psi,
    simple_graph_lambda_min,
    two_dim_basis,
    two_dim_least_multiple,
    wilson_two_isolates,
)
from balindex.intlinalg import Lattice, least_positive_multiple
from balindex.matrices import IntMatrix, Permutation
from balindex.rng import SplitMix64


def random_multigraph(rng, n, bound):
    g = SignedMultigraph(n)
    for i in range(n):
        for j in range(i + 1, n):
            g.set(i, j, rng.randint(-bound, bound))
    return g


def all_simple_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = SignedMultigraph(n)
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                g.set(i, j, 1)
        yield g


class TestPrimitivityIndex:
    def test_complete_bipartite_is_two(self):
        for a, b in [(2, 2), (2, 3), (3, 3), (4, 2)]:
            assert primitivity_index(SignedMultigraph.complete_bipartite(a, b)) == 2

    def test_clique_union_is_two(self):
        assert primitivity_index(SignedMultigraph.clique_union(2, 2)) == 2
        assert primitivity_index(SignedMultigraph.clique_union(3, 2)) == 2

    def test_other_simple_graphs_are_primitive(self):
        for g in all_simple_graphs(4):
            if g.edge_count_twice() == 0:
                continue
            bip, cli = bipartite_split(g), clique_union_split(g)
            k = primitivity_index(g)
            complete = len(g.mult) == 6
            if complete or (bip and 1 in bip) or (cli and 1 in cli):
                assert k == 0  # coboundary graphs: K_n, stars, clique+isolate
            elif bip or cli:
                assert k == 2
            else:
                assert k == 1

    def test_complete_graph_vanishes(self):
        assert primitivity_index(SignedMultigraph.complete(5)) == 0

    def test_relabeling_invariance(self):
        rng = SplitMix64(21)
        for _ in range(10):
            g = random_multigraph(rng, 5, 3)
            k = primitivity_index(g)
            for images in itertools.permutations(range(5)):
                assert primitivity_index(g.relabeled(Permutation(images))) == k

    def test_provenance_sums_to_index(self):
        rng = SplitMix64(22)
        for _ in range(10):
            g = random_multigraph(rng, 5, 3)
            k, combo = primitivity_provenance(g)
            assert k == primitivity_index(g)
            total = sum(
                c
                * (
                    g.get(i, kk)
                    - g.get(j, kk)
                    - g.get(i, l)
                    + g.get(j, l)
                )
                for (i, j, kk, l), c in combo.items()
            )
            if combo:
                assert total == k


class TestCoboundary:
    def test_all_half_gives_complete_graph(self):
        assert coboundary([1] * 5) == SignedMultigraph.complete(5)

    def test_figure_example(self):
        # potentials (-1/2, -1/2, -1/2, 1/2, 3/2): doubled (-1,-1,-1,1,3)
        g = coboundary([-1, -1, -1, 1, 3])
        assert g.get(3, 4) == 2  # double edge between the two positive vertices
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            assert g.get(i, j) == -1
        for i in range(3):
            assert g.get(i, 3) == 0 and g.get(i, 4) == 1

    def test_zero_potentials(self):
        assert coboundary([0, 0, 0, 0]).mult == {}

    def test_mixed_parity_rejected(self):
        with pytest.raises(ValueError):
            coboundary([0, 1, 0, 0])

    def test_pod_identity_for_coboundaries(self):
        # F - F^sigma - F^tau + F^{sigma tau} = 0 for all pairs of disjoint
        # transpositions
        F = coboundary([3, -1, 5, 1, 7])
        for a, b in itertools.combinations(range(5), 2):
            rest = [v for v in range(5) if v not in (a, b)]
            for c, d in itertools.combinations(rest, 2):
                sigma = Permutation.transposition(5, a, b)
                tau = Permutation.transposition(5, c, d)
                combo = (
                    F.to_adjacency()
                    - F.relabeled(sigma).to_adjacency()
                    - F.relabeled(tau).to_adjacency()
                    + F.relabeled(sigma.compose(tau)).to_adjacency()
                )
                assert combo.is_zero()


class TestPrimitiveDecomposition:
    def test_clique_union_splits_as_stated(self):
        # K_a u K_b minus the half-potential coboundary is twice a primitive graph
        g = SignedMultigraph.clique_union(2, 2)
        dec = primitive_decomposition(g)
        assert dec.k == 2
        assert dec.reassembled() == g
        assert primitivity_index(dec.H) == 1

    def test_star_is_a_coboundary(self):
        g = SignedMultigraph.complete_bipartite(3, 1)
        assert primitivity_index(g) == 0
        dec = primitive_decomposition(g)
        assert dec.k == 0 and dec.H is None and dec.F == g

    def test_random_reassembly_exact(self):
        rng = SplitMix64(23)
        for _ in range(25):
            g = random_multigraph(rng, 5, 3)
            dec = primitive_decomposition(g)
            assert dec.reassembled() == g
            parities = {v & 1 for v in dec.potentials2}
            assert len(parities) == 1
            if dec.k:
                assert primitivity_index(dec.H) == 1


class TestLocalLattice:
    def test_complete_bipartite_lattice(self):
        for a, b in [(2, 2), (3, 2), (3, 3)]:
            g = SignedMultigraph.complete_bipartite(a, b)
            loc = local_lattice_graph(g)
            expect = Lattice(3, [(1, b, 0), (1, a, 2), (0, 0, 2)])
            assert loc.lattice == expect

    def test_star_drops_parity_generator(self):
        g = SignedMultigraph.complete_bipartite(3, 1)
        loc = local_lattice_graph(g)
        assert loc.decomposition.k == 0
        assert loc.lattice == Lattice(3, [(1, 1, 0), (1, 3, 2)])

    def test_regular_graph_has_constant_degree_coordinate(self):
        g = SignedMultigraph.complete(5, 2)
        loc = local_lattice_graph(g)
        degs = {gen[1] for gen in loc.lattice.generators if gen[0] == 1}
        assert degs == {8}


class TestBalMultigraph:
    def test_completely_symmetric(self):
        assert bal_multigraph(SignedMultigraph.complete(5, 3)) == 1

    def test_triangle_plus_isolate(self):
        g = SignedMultigraph(4)
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            g.set(i, j, 1)
        assert bal_multigraph(g) == 4
        assert oracle_bal(g.to_adjacency()) == 4

    def test_k22_matches_oracle(self):
        g = SignedMultigraph.complete_bipartite(2, 2)
        assert bal_multigraph(g) == oracle_bal(g.to_adjacency())

    def test_random_oracle_equivalence(self):
        rng = SplitMix64(24)
        for _ in range(500):
            g = random_multigraph(rng, 4, 2)
            assert bal_multigraph(g) == oracle_bal(g.to_adjacency())
        for _ in range(200):
            g = random_multigraph(rng, 5, 2)
            assert bal_multigraph(g) == oracle_bal(g.to_adjacency())

    def test_empty_graph(self):
        # 2e = 0: the test vector degenerates to (1, 0, 0) and bal is still 1
        assert bal_multigraph(SignedMultigraph(4)) == 1

    def test_automorphism_index_bound(self):
        # bal(G) divides |Sym_n : Aut(G)| for simple graphs on up to 5 vertices
        from math import factorial

        for n in (4, 5):
            for g in all_simple_graphs(n):
                if g.edge_count_twice() == 0:
                    continue
                b = bal_multigraph(g)
                aut = sum(
                    1
                    for images in itertools.permutations(range(n))
                    if g.relabeled(Permutation(images)) == g
                )
                assert (factorial(n) // aut) % b == 0


class TestLambdaCondition:
    def test_equivalence_on_small_graphs(self):
        # admissible lambda <=> (2e bal / n(n-1)) | lambda, checked as lattices
        cases = [
            SignedMultigraph.complete_bipartite(2, 2),
            SignedMultigraph.clique_union(2, 2),
        ]
        g3 = SignedMultigraph(4)
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            g3.set(i, j, 1)
        cases.append(g3)
        for g in cases:
            n = g.n
            b = bal_multigraph(g)
            lam_min = g.edge_count_twice() * b // (n * (n - 1))
            assert lam_min > 0
            for lam in range(1, 2 * lam_min + 1):
                assert lambda_admissible(g, lam) == (lam % lam_min == 0)


class TestTwoDimensional:
    def test_constant_degrees(self):
        assert two_dim_basis(12, (3, 3, 3)) == [(12, 3)]

    def test_gcd_of_differences(self):
        assert two_dim_basis(12, (2, 4, 8)) == [(12, 0), (0, 2)]
        assert two_dim_basis(6, (1, 4)) == [(6, 1), (0, 3)]

    def test_rejects_zero_m(self):
        with pytest.raises(ValueError):
            two_dim_basis(0, (1, 2))

    def test_least_multiple_degenerate(self):
        assert two_dim_least_multiple(4, 0, 2, 2, 1) == 2
        assert two_dim_least_multiple(4, 0, 1, 2, 1) is None

    def test_least_multiple_triangle_case(self):
        # K_3 + isolate: m = 2e = 6, q = 2, r = 0, u = 12, v = 3
        assert two_dim_least_multiple(6, 2, 0, 12, 3) == 2

    def test_matches_lattice(self):
        for m, q, r, u, v in [(6, 2, 0, 12, 3), (10, 3, 1, 20, 4), (4, 5, 2, 12, 3)]:
            L = Lattice(2, [(m, r), (0, q)])
            assert two_dim_least_multiple(m, q, r, u, v) == least_positive_multiple(
                L, (u, v)
            )


class TestClosedForms:
    def test_regular_graph_formula(self):
        # 4-cycle: regular, alpha = 0
        g = SignedMultigraph.complete_bipartite(2, 2)
        lam, b = simple_graph_lambda_min(g)
        assert (lam, b) == (2, 3)

    def test_star(self):
        lam, b = simple_graph_lambda_min(SignedMultigraph.complete_bipartite(3, 1))
        assert (lam, b) == (2, 4)

    def test_exhaustive_n4_against_lattice(self):
        n = 4
        for g in all_simple_graphs(n):
            two_e = g.edge_count_twice()
            if two_e == 0:
                continue
            lam, b = simple_graph_lambda_min(g)
            b2 = bal_multigraph(g)
            assert b == b2
            assert lam == two_e * b2 // (n * (n - 1))

    def test_edgeless_rejected_with_status(self):
        with pytest.raises(ValueError, match="edgeless"):
            simple_graph_lambda_min(SignedMultigraph(4))

    def test_recognizers(self):
        assert bipartite_split(SignedMultigraph.complete_bipartite(3, 2)) == (3, 2)
        assert clique_union_split(SignedMultigraph.clique_union(3, 2)) == (3, 2)
        path = SignedMultigraph(4)
        for i, j in [(0, 1), (1, 2), (2, 3)]:
            path.set(i, j, 1)
        assert bipartite_split(path) is None
        assert clique_union_split(path) is None


class TestPsi:
    def test_pinned_values(self):
        assert psi(3, 1) == 2
        assert psi(2, 1) == 1
        assert psi(4, 2) == 1

    def test_two_adic_rule(self):
        assert psi(3, 2) == 2  # nu2(6) == nu2(2)
        assert psi(5, 2) == 1

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            psi(1, 2)


class TestWilson:
    def test_triangle_plus_two_isolates(self):
        g = SignedMultigraph(5)
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            g.set(i, j, 1)
        assert wilson_two_isolates(g) == 3
        # lambda_min * n(n-1) / 2e equals the balancing index
        assert oracle_bal(g.to_adjacency()) == 3 * 20 // 6

    def test_single_edge_plus_isolates(self):
        g = SignedMultigraph(4)
        g.set(0, 1, 1)
        assert wilson_two_isolates(g) == 1
        assert oracle_bal(g.to_adjacency()) == 1 * 12 // 2

    def test_needs_two_isolates(self):
        g = SignedMultigraph.complete_bipartite(2, 2)
        with pytest.raises(ValueError):
            wilson_two_isolates(g)

    def test_rejects_multigraph(self):
        g = SignedMultigraph(5)
        g.set(0, 1, 2)
        with pytest.raises(ValueError):
            wilson_two_isolates(g)


class TestLoops:
    def test_zero_loops_projects_to_graph_lattice(self):
        g = SignedMultigraph.complete_bipartite(2, 2)
        with_loops = local_lattice_with_loops(g, [0, 0, 0, 0])
        plain = local_lattice_graph(g)
        projected = Lattice(3, [(v[0], v[2], v[3]) for v in with_loops.lattice.generators])
        assert projected == plain.lattice
        assert all(v[1] == 0 for v in with_loops.lattice.generators)

    def test_diagonal_matrix_divides_n(self):
        # empty graph with loops: bal divides n
        rng = SplitMix64(25)
        for _ in range(10):
            n = 4
            loops = [rng.randint(-2, 2) for _ in range(n)]
            b = bal_with_loops(SignedMultigraph(n), loops)
            assert n % b == 0
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = loops[i]
            assert oracle_bal(IntMatrix(rows)) == b

    def test_random_symmetric_matches_oracle(self):
        rng = SplitMix64(26)
        for _ in range(25):
            n = 4
            g = random_multigraph(rng, n, 2)
            loops = [rng.randint(-2, 2) for _ in range(n)]
            rows = [list(r) for r in g.to_adjacency().rows]
            for i in range(n):
                rows[i][i] = loops[i]
            assert bal_with_loops(g, loops) == oracle_bal(IntMatrix(rows))


def test_degree_data_invariant():
    g = SignedMultigraph.complete_bipartite(3, 2)
    data = degree_data(g)
    assert sum(data.degrees) == data.edge_count_twice == 12
