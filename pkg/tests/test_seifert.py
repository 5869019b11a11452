import networkx as nx

from libknots.catalog import builtin
from libknots.diagram import parse_diagram, parse_pd, pretzel
from libknots.exactalg import alexander_from_seifert, det_exact, transpose
from libknots.seifert import (
    braid_word,
    braided,
    reduce_seifert_matrix,
    seifert_circles,
    seifert_cycles,
    seifert_graph,
    seifert_matrix,
)

TREFOIL = parse_pd("PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]")


def _unimodular_skew(V):
    Vt = transpose(V)
    return abs(det_exact([[a - b for a, b in zip(row, col)] for row, col in zip(V, Vt)])) == 1


def test_seifert_circles():
    data = seifert_circles(TREFOIL)
    assert data.circle_count == 2
    assert data.genus == 1
    assert len(data.bands) == 3

    unknot = seifert_circles(parse_pd("PD[]"))
    assert unknot.circle_count == 1
    assert unknot.genus == 0


def test_seifert_graph():
    G = seifert_graph(TREFOIL)
    assert isinstance(G, nx.MultiGraph)
    assert G.number_of_nodes() == 2
    assert G.number_of_edges() == 3


def test_braid_word_of_a_braid_closure():
    word = braid_word(TREFOIL)
    assert word.strands == 2
    assert sorted(word.letters) == [1, 1, 1]


def test_braided_diagram_has_nested_circles():
    for K in (pretzel([3, -3, 2]), pretzel([4, 1, 1]), parse_diagram("BR(3; 1 -2 1 -2)")):
        B = braided(K)
        G = nx.Graph(seifert_graph(B))
        assert nx.is_tree(G)
        assert max(degree for _, degree in G.degree()) <= 2


def test_seifert_matrix_shape():
    for K in (TREFOIL, parse_diagram("BR(3; 1 -2 1 -2)"), pretzel([3, -3, 2])):
        V = seifert_matrix(K)
        assert V.size == 2 * V.genus
        assert _unimodular_skew(V.entries)


def test_seifert_matrix_lives_on_the_canonical_surface():
    for entry in builtin():
        K = entry.knot()
        V = seifert_matrix(K)
        assert V.size == 2 * seifert_circles(K).genus, entry.name
        assert len(V.cycles) == V.size
        if V.size:
            assert _unimodular_skew(V.entries), entry.name


def test_seifert_cycles_close_up():
    for K in (pretzel([4, 1, 1]), pretzel([3, 3, -3]), parse_diagram("BR(3; 1 -2 1 -2)")):
        data = seifert_circles(K)
        cycles = seifert_cycles(K)
        assert len(cycles) == 2 * data.genus
        for cycle in cycles:
            boundary = [0] * data.circle_count
            for crossing, direction in cycle.items():
                under, over = data.bands[crossing].circles
                boundary[over] += direction
                boundary[under] -= direction
            assert boundary == [0] * data.circle_count


def test_reduce_seifert_matrix():
    # trefoil block plus a hyperbolic block with vanishing determinant
    V = [
        [-1, 1, 0, 0],
        [0, -1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 0, 0],
    ]
    R = reduce_seifert_matrix(V)
    assert len(R) == 2
    assert det_exact(R) != 0
    assert _unimodular_skew(R)
    assert alexander_from_seifert(R) == alexander_from_seifert([[-1, 1], [0, -1]])


def test_reduced_matrix_keeps_nonsingular_input():
    V = [[-1, 1], [0, -1]]
    assert reduce_seifert_matrix(V) == V
    assert seifert_matrix(TREFOIL).reduced().entries == reduce_seifert_matrix(seifert_matrix(TREFOIL).entries)


def test_reduction_shrinks_sheared_entries():
    # trefoil matrix after the congruence e_1 += 5 e_0
    V = [[-1, -4], [-5, -21]]
    R = reduce_seifert_matrix(V)
    assert sum(x * x for row in R for x in row) == 3
    assert _unimodular_skew(R)
    assert alexander_from_seifert(R) == alexander_from_seifert([[-1, 1], [0, -1]])
