from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from qmix import (GraphFormatError, MatrixKind, TwinKind, TwinSubgraphWitness, WeightClass,
                  WeightedGraph, attach_pendants, bipartition, common_neighbors, cycle_flags,
                  cyclomatic_index, degree_stats, find_twin_pairs, is_caterpillar,
                  matrix_of, parse_graph6, parse_weighted_edgelist,
                  pendant_pairs_with_common_neighbor, search_twin_subgraphs, subdivide,
                  verify_twin_subgraphs)
from qmix.graphs import degrees

from conftest import (complete, count_distance_two_pairs, cycle, naive_twin_subgraph_check,
                      path, star)


# ---------------------------------------------------------------------------
# graph6

def test_graph6_k2():
    g = parse_graph6("A_")
    assert g.n == 2
    assert g.edges == ((0, 1, 1),)
    assert g.weight_class is WeightClass.UNIT


def test_graph6_bit_layout_oracle():
    # decoded per the bit layout: 'w' = 111000 -> edges (0,1), (0,2), (1,2)
    g = parse_graph6("Bw")
    assert {(u, v) for u, v, _ in g.edges} == {(0, 1), (0, 2), (1, 2)}
    # the 3-vertex path sets bits x(0,2) and x(1,2) only
    g = parse_graph6("BW")
    assert {(u, v) for u, v, _ in g.edges} == {(0, 2), (1, 2)}


def test_graph6_truncated_payload_errors():
    with pytest.raises(GraphFormatError):
        parse_graph6("B")       # missing payload for n=3
    with pytest.raises(GraphFormatError):
        parse_graph6("Bww")     # payload too long
    with pytest.raises(GraphFormatError):
        parse_graph6("")
    with pytest.raises(GraphFormatError):
        parse_graph6("A\x19")   # below chr(63)


def test_graph6_matches_networkx_on_random_graphs(rng):
    for _ in range(60):
        n = int(rng.integers(1, 14))
        gnx = nx.gnp_random_graph(n, 0.4, seed=int(rng.integers(0, 2**31)))
        line = nx.to_graph6_bytes(gnx, header=False).decode().strip()
        g = parse_graph6(line)
        assert g.n == gnx.number_of_nodes()
        assert {(u, v) for u, v, _ in g.edges} == {tuple(sorted(e)) for e in gnx.edges()}


def test_graph6_header_and_long_form():
    g = parse_graph6(">>graph6<<A_")
    assert g.n == 2
    gnx = nx.path_graph(70)  # needs the 3-character vertex count
    line = nx.to_graph6_bytes(gnx, header=False).decode().strip()
    g = parse_graph6(line)
    assert g.n == 70 and g.edge_count == 69


# ---------------------------------------------------------------------------
# weighted edge lists

def test_edgelist_unit():
    g = parse_weighted_edgelist("0 1 1\n")
    assert g.n == 2 and g.weight_class is WeightClass.UNIT


def test_edgelist_integer_weights():
    g = parse_weighted_edgelist("# weighted path\n0 1 2\n1 2 3\n")
    assert g.weight_class is WeightClass.INTEGER
    assert g.edges == ((0, 1, 2), (1, 2, 3))


def test_edgelist_real_weights():
    g = parse_weighted_edgelist("0 1 0.5\n1 2 2\n")
    assert g.weight_class is WeightClass.REAL


def test_edgelist_errors():
    with pytest.raises(GraphFormatError):
        parse_weighted_edgelist("0 0 1\n")       # self-loop
    with pytest.raises(GraphFormatError):
        parse_weighted_edgelist("0 1 -2\n")      # nonpositive weight
    with pytest.raises(GraphFormatError):
        parse_weighted_edgelist("0 1 1\n1 0 2\n")  # duplicate edge
    with pytest.raises(GraphFormatError):
        parse_weighted_edgelist("0 1\n")          # missing weight
    with pytest.raises(GraphFormatError):
        parse_weighted_edgelist("# only comments\n")


# ---------------------------------------------------------------------------
# matrices

def test_matrix_of_k2():
    g = complete(2)
    assert np.array_equal(matrix_of(g, MatrixKind.ADJACENCY), [[0, 1], [1, 0]])
    assert np.array_equal(matrix_of(g, MatrixKind.LAPLACIAN), [[1, -1], [-1, 1]])
    assert np.array_equal(matrix_of(g, MatrixKind.SIGNLESS_LAPLACIAN), [[1, 1], [1, 1]])


def test_matrix_of_weighted_path():
    g = WeightedGraph.build(3, [(0, 1, 2), (1, 2, 3)])
    assert np.array_equal(matrix_of(g, MatrixKind.ADJACENCY),
                          [[0, 2, 0], [2, 0, 3], [0, 3, 0]])


def test_laplacian_row_sums(rng):
    from conftest import random_connected_graph
    for _ in range(10):
        g = random_connected_graph(rng, int(rng.integers(2, 12)), WeightClass.REAL)
        lap = matrix_of(g, MatrixKind.LAPLACIAN)
        assert np.abs(lap.sum(axis=1)).max() < 1e-12
        q = matrix_of(g, MatrixKind.SIGNLESS_LAPLACIAN)
        a = matrix_of(g, MatrixKind.ADJACENCY)
        assert np.allclose(q.sum(axis=1), 2 * a.sum(axis=1))


# ---------------------------------------------------------------------------
# statistics

def test_degree_stats_star5():
    st = degree_stats(star(5))
    assert st.deg[0] == 4
    assert st.avg_degree == Fraction(8, 5)
    assert st.dist2_pairs == 6 == count_distance_two_pairs(star(5))


def test_degree_stats_c6():
    st = degree_stats(cycle(6))
    assert set(st.deg) == {2}
    assert st.avg_degree == 2
    assert st.dist2_pairs == 6 == count_distance_two_pairs(cycle(6))


def test_degree_stats_k2():
    st = degree_stats(complete(2))
    assert st.avg_degree == 1
    assert st.dist2_pairs == 0


def test_dist2_matches_bfs_oracle(rng):
    from conftest import random_connected_graph
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.integers(2, 12)))
        assert degree_stats(g).dist2_pairs == count_distance_two_pairs(g)


def test_common_neighbors():
    assert common_neighbors(star(4), 1, 2) == 1
    assert common_neighbors(cycle(4), 0, 2) == 2
    assert common_neighbors(path(4), 0, 3) == 0
    with pytest.raises(ValueError):
        common_neighbors(path(4), 1, 1)


# ---------------------------------------------------------------------------
# bipartition, cycles

def test_bipartition():
    assert not bipartition(cycle(5)).present
    b = bipartition(star(4))
    assert b.present and {len(b.b1), len(b.b2)} == {1, 3} and 0 in b.b1
    b = bipartition(path(4))
    assert sorted(map(len, (b.b1, b.b2))) == [2, 2]


def test_bipartition_edges_cross_parts():
    g = cycle(6)
    b = bipartition(g)
    s1 = set(b.b1)
    assert all((u in s1) != (v in s1) for u, v, _ in g.edges)


def test_cycle_flags_and_index():
    fl = cycle_flags(path(5))
    assert not (fl.has_triangle or fl.has_c4 or fl.has_c5)
    assert cyclomatic_index(path(5)) == 0
    assert cycle_flags(cycle(4)).has_c4 and cyclomatic_index(cycle(4)) == 1
    assert cycle_flags(complete(4)).has_triangle and cyclomatic_index(complete(4)) == 3
    assert cycle_flags(cycle(5)).has_c5
    assert cycle_flags(complete(5)).has_c5  # 5-cycles exist as subgraphs
    disconnected = WeightedGraph.build(4, [(0, 1, 1), (2, 3, 1)])
    with pytest.raises(ValueError):
        cyclomatic_index(disconnected)


# ---------------------------------------------------------------------------
# constructions

def test_subdivide_k2_gives_path3():
    s = subdivide(complete(2))
    assert s.n == 3
    assert {(u, v) for u, v, _ in s.edges} == {(0, 2), (1, 2)}


def test_subdivide_triangle_gives_c6():
    s = subdivide(cycle(3))
    assert s.n == 6 and s.edge_count == 6
    assert set(degrees(s)) == {2}
    assert bipartition(s).present


def test_subdivide_path3_gives_path5():
    s = subdivide(path(3))
    assert s.n == 5 and sorted(degrees(s)) == [1, 1, 2, 2, 2]


def test_subdivide_requires_unit_weights():
    g = WeightedGraph.build(2, [(0, 1, 2)])
    with pytest.raises(ValueError):
        subdivide(g)


def test_attach_pendants():
    g = attach_pendants(complete(2))  # path on four vertices
    assert g.n == 4 and sorted(degrees(g)) == [1, 1, 2, 2]
    g = attach_pendants(path(3))
    assert g.n == 6 and sorted(degrees(g)) == [1, 1, 1, 2, 2, 3]
    single = WeightedGraph.build(1, [])
    g = attach_pendants(single)
    assert g.n == 2 and g.edge_count == 1


def test_attach_pendants_degree_shift(rng):
    from conftest import random_connected_graph
    g = random_connected_graph(rng, 7)
    before = degrees(g)
    after = degrees(attach_pendants(g))
    assert after[:7] == [d + 1 for d in before]
    assert after[7:] == [1] * 7


# ---------------------------------------------------------------------------
# twins

def test_find_twin_pairs():
    pairs = find_twin_pairs(star(5))
    assert len(pairs) == 6 and all(k is TwinKind.FALSE for _, _, k in pairs)
    pairs = find_twin_pairs(complete(4))
    assert len(pairs) == 6 and all(k is TwinKind.TRUE for _, _, k in pairs)
    assert find_twin_pairs(path(4)) == []


def test_twin_pairs_respect_weights():
    g = WeightedGraph.build(3, [(0, 1, 1), (0, 2, 2)])
    assert find_twin_pairs(g) == []  # unequal weights break the twin relation


FII = WeightedGraph.build(7, [(3, 1, 1), (1, 2, 1), (2, 0, 1),
                              (5, 4, 1), (4, 6, 1), (3, 5, 1)])
FI = WeightedGraph.build(5, [(2, 1, 1), (1, 0, 1), (3, 4, 1), (2, 3, 1)])


def test_verify_false_twin_subgraphs_figure():
    w = TwinSubgraphWitness(kind=TwinKind.FALSE, g_vertices=(0, 2, 1), h_vertices=(6, 4, 5),
                            bijection=((0, 6), (2, 4), (1, 5)))
    assert verify_twin_subgraphs(FII, w)
    assert naive_twin_subgraph_check(FII, (0, 2, 1), (6, 4, 5),
                                     {0: 6, 2: 4, 1: 5}, "false")
    wrong = TwinSubgraphWitness(kind=TwinKind.FALSE, g_vertices=(0, 2, 1),
                                h_vertices=(6, 4, 5), bijection=((0, 4), (2, 6), (1, 5)))
    assert not verify_twin_subgraphs(FII, wrong)


def test_verify_true_twin_subgraphs_figure():
    w = TwinSubgraphWitness(kind=TwinKind.TRUE, g_vertices=(0, 1), h_vertices=(4, 3))
    assert verify_twin_subgraphs(FI, w)
    assert naive_twin_subgraph_check(FI, (0, 1), (4, 3), {0: 4, 1: 3}, "true")


def test_verify_true_twins_with_matching_added():
    g = WeightedGraph.build(5, list(FI.edges) + [(0, 3, 1), (1, 4, 1)])
    w = TwinSubgraphWitness(kind=TwinKind.TRUE, g_vertices=(0, 1), h_vertices=(4, 3))
    assert verify_twin_subgraphs(g, w)


def test_verify_rejects_overlap():
    w = TwinSubgraphWitness(kind=TwinKind.TRUE, g_vertices=(0, 1), h_vertices=(1, 2))
    with pytest.raises(ValueError):
        verify_twin_subgraphs(FI, w)


def test_search_star_singletons():
    res = search_twin_subgraphs(star(5), a_max=1)
    assert not res.truncated
    assert len(res.witnesses) == 6
    assert all(w.kind is TwinKind.FALSE and w.size == 1 for w in res.witnesses)


def test_search_figure_true_pair():
    res = search_twin_subgraphs(FI, a_max=2)
    assert any(w.kind is TwinKind.TRUE and set(w.g_vertices) == {0, 1}
               and set(w.h_vertices) == {3, 4} for w in res.witnesses)


def test_search_path4_empty_vs_exhaustive_oracle():
    res = search_twin_subgraphs(path(4), a_max=2)
    assert res.witnesses == ()
    # oracle: brute force every subset pair and bijection at the definition level
    import itertools
    g = path(4)
    for a in (1, 2):
        for gs in itertools.combinations(range(4), a):
            rest = [v for v in range(4) if v not in gs]
            for hs in itertools.combinations(rest, a):
                for perm in itertools.permutations(hs):
                    f = dict(zip(gs, perm))
                    assert not naive_twin_subgraph_check(g, gs, hs, f, "false")
                    assert not naive_twin_subgraph_check(g, gs, hs, f, "true")


def test_search_emits_verified_witnesses(rng):
    from conftest import random_connected_graph
    for _ in range(15):
        g = random_connected_graph(rng, int(rng.integers(2, 9)))
        res = search_twin_subgraphs(g, a_max=2)
        for w in res.witnesses:
            assert verify_twin_subgraphs(g, w)


def test_search_budget_truncation():
    res = search_twin_subgraphs(complete(10), a_max=3, subset_budget=20)
    assert res.truncated


# ---------------------------------------------------------------------------
# pendant structure

def test_pendant_pairs():
    pp = pendant_pairs_with_common_neighbor(star(4))
    assert len(pp) == 3 and all(p.alpha == p.beta == 1 for p in pp)
    assert pendant_pairs_with_common_neighbor(path(4)) == []
    g = WeightedGraph.build(6, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (3, 4, 1), (4, 5, 1)])
    pp = pendant_pairs_with_common_neighbor(g)
    assert len(pp) == 1 and (pp[0].alpha, pp[0].beta) == (2, 3)


def test_pendant_twin_consistency(rng):
    # unit-weight pendant pairs are exactly false twins
    from conftest import random_tree
    for _ in range(20):
        g = random_tree(rng, int(rng.integers(3, 10)))
        twins = {(u, v) for u, v, k in find_twin_pairs(g) if k is TwinKind.FALSE}
        for p in pendant_pairs_with_common_neighbor(g):
            assert (min(p.u, p.w), max(p.u, p.w)) in twins


def test_is_caterpillar():
    assert is_caterpillar(path(5))
    assert is_caterpillar(star(5))  # deleting the leaves leaves a single vertex
    spider = WeightedGraph.build(7, [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1),
                                     (0, 5, 1), (5, 6, 1)])
    assert not is_caterpillar(spider)
    with pytest.raises(ValueError):
        is_caterpillar(cycle(4))


# ---------------------------------------------------------------------------
# validation

def test_build_rejects_bad_input():
    with pytest.raises(ValueError):
        WeightedGraph.build(2, [(0, 0, 1)])
    with pytest.raises(ValueError):
        WeightedGraph.build(2, [(0, 1, 0)])
    with pytest.raises(ValueError):
        WeightedGraph.build(2, [(0, 1, 1), (1, 0, 1)])
    with pytest.raises(ValueError):
        WeightedGraph.build(2, [(0, 2, 1)])
    with pytest.raises(ValueError):
        WeightedGraph.build(2, [(0, 1, 2)], WeightClass.UNIT)
