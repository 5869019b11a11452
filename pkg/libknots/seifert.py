"""Seifert's algorithm, Vogel's braiding moves and Seifert matrices.

The Seifert matrix lives on the canonical surface of the diagram (one disk
per Seifert circle, one twisted band per crossing) and is written in the
basis of fundamental cycles of the circle-band graph. Linking numbers are
evaluated on the surface of a braided form of the diagram: Vogel moves keep
every crossing and its band, so the canonical surface sits inside the braided
one and each basis cycle is a sum of loops of the closed braid surface (one
loop per pair of consecutive occurrences of the same generator).
"""

import math
from itertools import combinations

import networkx as nx
from pydantic import BaseModel, ConfigDict
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from libknots.diagram import BraidWord, KnotDiagram, Slot
from libknots.errors import SeifertInternalError
from libknots.exactalg import IntMatrix, det_exact
from libknots.util import logger

# crossing -> +1 when the cycle runs through the band from the circle at the
# incoming under-strand to the circle at the incoming over-strand, else -1
Cycle = dict[int, int]


# --- models ---
class Band(BaseModel):
    model_config = ConfigDict(frozen=True)

    crossing: int
    sign: int
    circles: tuple[int, int]


class SeifertSurfaceData(BaseModel):
    model_config = ConfigDict(frozen=True)

    circles: tuple[tuple[int, ...], ...]
    bands: tuple[Band, ...]
    crossing_count: int

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    @property
    def genus(self) -> int:
        return (self.crossing_count - self.circle_count + 1) // 2


class SeifertMatrix(BaseModel):
    """Integer matrix V of the linking form on the canonical Seifert surface.

    ``cycles[i]`` lists the bands of the i-th basis cycle as
    ``(crossing, direction)`` pairs.
    """

    model_config = ConfigDict(frozen=True)

    entries: IntMatrix
    cycles: tuple[tuple[tuple[int, int], ...], ...] = ()
    braid: BraidWord | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def reduced(self) -> "SeifertMatrix":
        return SeifertMatrix(entries=reduce_seifert_matrix(self.entries), braid=self.braid)

# --- Seifert circles ---
def _arc_successors(K: KnotDiagram) -> dict[int, int]:
    """Arc -> next arc along its Seifert circle."""
    successor = {}
    for c, crossing in enumerate(K.pd):
        over_in, over_out = K.over_in(c), K.over_out(c)
        successor[crossing[0]] = crossing[over_out]
        successor[crossing[over_in]] = crossing[2]
    return successor


def seifert_circles(K: KnotDiagram) -> SeifertSurfaceData:
    if not K.pd:
        return SeifertSurfaceData(circles=((),), bands=(), crossing_count=0)

    successor = _arc_successors(K)
    circle_of: dict[int, int] = {}
    circles = []
    for start in sorted(successor):
        if start in circle_of:
            continue
        circle, arc = [], start
        while arc not in circle_of:
            circle_of[arc] = len(circles)
            circle.append(arc)
            arc = successor[arc]
        circles.append(tuple(circle))

    bands = []
    for c, crossing in enumerate(K.pd):
        first, second = circle_of[crossing[0]], circle_of[crossing[K.over_in(c)]]
        if first == second:
            raise SeifertInternalError(
                f"crossing {c} joins circle {first} to itself", crossing=c
            )
        bands.append(Band(crossing=c, sign=K.signs[c], circles=(first, second)))

    data = SeifertSurfaceData(
        circles=tuple(circles), bands=tuple(bands), crossing_count=len(K.pd)
    )
    if (data.crossing_count - data.circle_count + 1) % 2:
        raise SeifertInternalError(
            "odd Euler characteristic for a knot diagram",
            crossings=data.crossing_count,
            circles=data.circle_count,
        )
    return data


def seifert_graph(K: KnotDiagram) -> nx.MultiGraph:
    data = seifert_circles(K)
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(data.circle_count))
    for band in data.bands:
        graph.add_edge(*band.circles, crossing=band.crossing, sign=band.sign)
    return graph


# --- braiding ---
def faces(K: KnotDiagram) -> list[list[Slot]]:
    """Boundary cycles of the complementary regions, as darts (crossing, slot)."""
    occurrences = K.occurrences()
    seen: set[Slot] = set()
    result = []
    for c in range(len(K.pd)):
        for p in range(4):
            if (c, p) in seen:
                continue
            face, dart = [], (c, p)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                first, second = occurrences[K.pd[dart[0]][dart[1]]]
                c2, p2 = second if first == dart else first
                dart = (c2, (p2 - 1) % 4)
            result.append(face)
    return result


def _find_defect(K: KnotDiagram, data: SeifertSurfaceData) -> tuple[int, int, bool] | None:
    circle_of = {arc: n for n, circle in enumerate(data.circles) for arc in circle}
    for face in faces(K):
        for (c1, p1), (c2, p2) in combinations(face, 2):
            a, b = K.pd[c1][p1], K.pd[c2][p2]
            if circle_of[a] == circle_of[b]:
                continue
            forward_a = not K.is_head(c1, p1)
            forward_b = not K.is_head(c2, p2)
            if forward_a == forward_b:
                return a, b, forward_a
    return None


def _vogel_move(K: KnotDiagram, a: int, b: int, forward: bool) -> KnotDiagram:
    """Push arc a over arc b across their common face."""
    crossings = [list(x) for x in K.pd]
    arcs = K.orientation
    fresh = 2 * len(K.pd)
    a2, a3, b2, b3 = fresh + 1, fresh + 2, fresh + 3, fresh + 4

    (ca, pa) = arcs[a][1]
    (cb, pb) = arcs[b][1]
    crossings[ca][pa] = a3
    crossings[cb][pb] = b3
    if forward:
        crossings.append([b2, a2, b3, a])
        crossings.append([b, a2, b2, a3])
    else:
        crossings.append([b2, a, b3, a2])
        crossings.append([b, a3, b2, a2])
    return KnotDiagram.from_pd(crossings, name=K.name)


def braided(K: KnotDiagram) -> KnotDiagram:
    """Apply Vogel moves until the Seifert circles are coherently nested."""
    data = seifert_circles(K)
    limit = data.circle_count**2 + 16
    moves = 0
    while True:
        defect = _find_defect(K, data)
        if defect is None:
            break
        if moves >= limit:
            raise SeifertInternalError(
                f"no braid form after {moves} Vogel moves", moves=moves
            )
        K = _vogel_move(K, *defect)
        data = seifert_circles(K)
        moves += 1
    if moves:
        logger.debug(f"Braided diagram after {moves} Vogel move(s), {len(K.pd)} crossings")
    return K


def _braid_layout(K: KnotDiagram) -> tuple[BraidWord, list[int], dict[int, int], SeifertSurfaceData]:
    """Read a braided diagram as a closed braid.

    Returns the word, the crossing at each letter position, the level of each
    Seifert circle and the circle data of K.
    """
    data = seifert_circles(K)
    graph = nx.Graph(seifert_graph(K))
    s = data.circle_count
    degrees = dict(graph.degree())
    if graph.number_of_edges() != s - 1 or any(d > 2 for d in degrees.values()):
        raise SeifertInternalError(
            "Seifert graph of a braided diagram is not a path", degrees=degrees
        )

    start = min(n for n, d in degrees.items() if d <= 1)
    levels = [start] + [v for _, v in nx.dfs_edges(graph, start)]
    level_of = {circle: level for level, circle in enumerate(levels)}

    heads = {arc: head for arc, (_, head) in K.orientation.items()}
    sequences = [[heads[arc][0] for arc in data.circles[circle]] for circle in levels]
    band_levels = {
        band.crossing: sorted(level_of[n] for n in band.circles) for band in data.bands
    }

    for i in range(s - 1):
        shared = [c for c in sequences[i] if band_levels[c] == [i, i + 1]]
        last = shared[-1]
        nxt = sequences[i + 1]
        cut = nxt.index(last) + 1
        sequences[i + 1] = nxt[cut:] + nxt[:cut]

    order = nx.DiGraph()
    order.add_nodes_from(range(len(K.pd)))
    for sequence in sequences:
        order.add_edges_from(zip(sequence, sequence[1:]))
    try:
        ordered = list(nx.lexicographical_topological_sort(order))
    except nx.NetworkXUnfeasible as e:
        raise SeifertInternalError("crossings of adjacent levels interleave inconsistently") from e

    letters = []
    for c in ordered:
        low, high = band_levels[c]
        if high - low != 1:
            raise SeifertInternalError(
                f"crossing {c} joins levels {low} and {high}", crossing=c
            )
        letters.append(K.signs[c] * (low + 1))
    word = BraidWord(strands=s, letters=tuple(letters))
    return word, ordered, level_of, data


def braid_word(K: KnotDiagram) -> BraidWord:
    """A braid word whose closure is K (possibly reversed)."""
    if not K.pd:
        return BraidWord(strands=1)
    return _braid_layout(braided(K))[0]


# --- canonical surface ---
def seifert_cycles(K: KnotDiagram) -> list[Cycle]:
    """Fundamental cycles of the circle-band graph, one per non-tree band.

    The spanning tree is the breadth-first tree rooted at circle 0, using the
    lowest-numbered crossing among parallel bands. Cycles follow the order of
    their non-tree crossing.
    """
    if not K.pd:
        return []
    data = seifert_circles(K)
    graph = seifert_graph(K)

    parent = dict(nx.bfs_predecessors(graph, 0))
    if len(parent) + 1 != data.circle_count:
        raise SeifertInternalError(
            "Seifert graph is disconnected", reached=len(parent) + 1, circles=data.circle_count
        )
    depth = nx.single_source_shortest_path_length(graph, 0)
    tree_band = {
        child: min(edge["crossing"] for edge in graph.get_edge_data(child, up).values())
        for child, up in parent.items()
    }
    tree_crossings = set(tree_band.values())

    def direction(crossing: int, source: int) -> int:
        return 1 if data.bands[crossing].circles[0] == source else -1

    cycles = []
    for band in data.bands:
        if band.crossing in tree_crossings:
            continue
        cycle = {band.crossing: 1}
        x, y = band.circles[1], band.circles[0]
        up, down = [], []
        while x != y:
            if depth[x] >= depth[y]:
                up.append(x)
                x = parent[x]
            else:
                down.append(y)
                y = parent[y]
        for node in up:
            cycle[tree_band[node]] = direction(tree_band[node], node)
        for node in reversed(down):
            cycle[tree_band[node]] = direction(tree_band[node], parent[node])
        cycles.append(cycle)

    if len(cycles) != 2 * data.genus:
        raise SeifertInternalError(
            "cycle count does not match the canonical genus", cycles=len(cycles), genus=data.genus
        )
    return cycles


# --- Seifert matrices ---
def braid_seifert_matrix(word: BraidWord) -> IntMatrix:
    """Linking form on the loop basis of the closed braid surface."""
    loops = []
    for generator in range(1, word.strands):
        positions = [
            (k, 0 if letter > 0 else 1)
            for k, letter in enumerate(word.letters)
            if abs(letter) == generator
        ]
        loops.append(
            [
                (positions[k][0], positions[k + 1][0], positions[k][1], positions[k + 1][1])
                for k in range(len(positions) - 1)
            ]
        )

    index = {}
    for n, strand in enumerate(loops):
        for m in range(len(strand)):
            index[(n, m)] = len(index)
    V = [[0] * len(index) for _ in range(len(index))]

    for n, strand in enumerate(loops):
        for m, loop in enumerate(strand):
            if loop[2] == loop[3]:
                V[index[(n, m)]][index[(n, m)]] = -1 if loop[2] == 0 else 1
        for m, loop in enumerate(strand[:-1]):
            if loop[3] == 0:
                V[index[(n, m + 1)]][index[(n, m)]] = 1
            else:
                V[index[(n, m)]][index[(n, m + 1)]] = -1
        if n + 1 < len(loops):
            for m, loop in enumerate(strand):
                for l, other in enumerate(loops[n + 1]):
                    if other[0] < loop[0] < other[1] < loop[1]:
                        V[index[(n + 1, l)]][index[(n, m)]] = 1
                    elif loop[0] < other[0] < loop[1] < other[1]:
                        V[index[(n + 1, l)]][index[(n, m)]] = -1
    return V


def _loop_coordinates(
    cycle: Cycle, word: BraidWord, ordered: list[int], level_of: dict[int, int], data: SeifertSurfaceData
) -> list[int]:
    """Coordinates of a cycle in the loop basis of the closed braid surface."""
    upward = {}
    for crossing, sign in cycle.items():
        under, over = data.bands[crossing].circles
        upward[crossing] = sign if level_of[under] < level_of[over] else -sign

    coordinates = []
    for generator in range(1, word.strands):
        positions = [p for p, letter in enumerate(word.letters) if abs(letter) == generator]
        total = 0
        for m, p in enumerate(positions):
            total += upward.get(ordered[p], 0)
            if m < len(positions) - 1:
                coordinates.append(total)
        if total:
            raise SeifertInternalError(
                f"cycle does not close between levels {generator - 1} and {generator}",
                generator=generator,
            )
    return coordinates


def seifert_matrix(K: KnotDiagram) -> SeifertMatrix:
    """Seifert matrix of the canonical surface of K, of size 2g."""
    cycles = seifert_cycles(K)
    if not cycles:
        return SeifertMatrix(entries=[])

    word, ordered, level_of, data = _braid_layout(braided(K))
    loops = DomainMatrix.from_list(braid_seifert_matrix(word), ZZ)
    columns = [_loop_coordinates(cycle, word, ordered, level_of, data) for cycle in cycles]
    basis = DomainMatrix.from_list(columns, ZZ).transpose()
    V = [[int(a) for a in row] for row in (basis.transpose() * loops * basis).to_list()]

    skew = [[V[i][j] - V[j][i] for j in range(len(V))] for i in range(len(V))]
    if abs(det_exact(skew)) != 1:
        raise SeifertInternalError("V - V^T is not unimodular on the cycle basis", size=len(V))
    logger.debug(f"Seifert matrix of size {len(V)} through {word}")
    return SeifertMatrix(
        entries=V,
        cycles=tuple(tuple(sorted(cycle.items())) for cycle in cycles),
        braid=word,
    )


# --- S-equivalence ---
def _left_kernel_vector(V: IntMatrix) -> list[int]:
    kernel = DomainMatrix.from_list(V, ZZ).transpose().nullspace()
    u = [int(a) for a in kernel.to_list()[0]]
    g = 0
    for a in u:
        g = math.gcd(g, a)
    return [a // g for a in u]


def _congruence_add(V: IntMatrix, target: int, source: int, factor: int) -> None:
    """row_target += factor * row_source and col_target += factor * col_source."""
    V[target] = [x + factor * y for x, y in zip(V[target], V[source])]
    for row in V:
        row[target] += factor * row[source]


def _reduce_once(V: IntMatrix) -> IntMatrix:
    m = len(V)
    u = _left_kernel_vector(V)

    # bring the kernel vector to a unit vector e_p
    while sum(1 for a in u if a) > 1:
        i = min((j for j in range(m) if u[j]), key=lambda j: abs(u[j]))
        for j in range(m):
            if j != i and u[j]:
                k = u[j] // u[i]
                u[j] -= k * u[i]
                _congruence_add(V, i, j, k)
    p = next(j for j in range(m) if u[j])

    # row p vanishes; bring column p to a unit vector e_q
    while sum(1 for i in range(m) if i != p and V[i][p]) > 1:
        i = min((j for j in range(m) if j != p and V[j][p]), key=lambda j: abs(V[j][p]))
        for j in range(m):
            if j not in (i, p) and V[j][p]:
                _congruence_add(V, j, i, -(V[j][p] // V[i][p]))
    q = next(i for i in range(m) if i != p and V[i][p])
    if abs(V[q][p]) != 1:
        raise SeifertInternalError("V - V^T is not unimodular", entry=V[q][p])

    # clear row q through column p
    pivot = V[q][p]
    for j in range(m):
        if j != p and V[q][j]:
            factor = -V[q][j] * pivot
            for row in V:
                row[j] += factor * row[p]

    keep = [i for i in range(m) if i not in (p, q)]
    return [[V[i][j] for j in keep] for i in keep]


def _congruence_gain(V: IntMatrix, target: int, source: int, factor: int) -> int:
    """Drop in the sum of squared entries caused by _congruence_add."""
    i, j, k = target, source, factor
    gain = 0
    for l in range(len(V)):
        if l == i:
            continue
        row, col = V[i][l] + k * V[j][l], V[l][i] + k * V[l][j]
        gain += V[i][l] ** 2 + V[l][i] ** 2 - row * row - col * col
    diagonal = V[i][i] + k * (V[i][j] + V[j][i]) + k * k * V[j][j]
    return gain + V[i][i] ** 2 - diagonal * diagonal


def _size_reduce(V: IntMatrix) -> IntMatrix:
    """Greedy unimodular congruences e_i += k e_j that shrink the sum of squared entries."""
    m = len(V)
    improved = True
    while improved:
        improved = False
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                for factor in (1, -1):
                    if _congruence_gain(V, i, j, factor) > 0:
                        _congruence_add(V, i, j, factor)
                        improved = True
    return V


def reduce_seifert_matrix(V: IntMatrix) -> IntMatrix:
    """Shrink V by S-equivalence reductions until it is nonsingular."""
    V = _size_reduce([list(row) for row in V])
    start = len(V)
    while V and det_exact(V) == 0:
        V = _size_reduce(_reduce_once(V))
    if len(V) != start:
        logger.debug(f"Reduced Seifert matrix from size {start} to {len(V)}")
    return V
