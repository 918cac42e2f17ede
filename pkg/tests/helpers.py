"""Shared test utilities: seeded random graphs and slow reference oracles.

The oracles here are deliberately naive. They exist so that the fast library
implementations are checked against code with no shared logic.
"""

from __future__ import annotations

import itertools
import math
import random

from c4count.graphs import Graph


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, es)


def random_host_degree_capped(n: int, seed: int, cap: int | None = None) -> Graph:
    """Random graph with every degree <= cap (default floor(2*sqrt(n)))."""
    if cap is None:
        cap = int(2 * math.isqrt(n))
    rng = random.Random(seed)
    deg = [0] * n
    es = set()
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if deg[u] < cap and deg[v] < cap and rng.random() < 0.5:
            es.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, sorted(es))


def random_connected_pattern(n: int, extra_edges: int, seed: int) -> Graph:
    """Random tree on n vertices plus up to extra_edges random chords."""
    rng = random.Random(seed)
    es = set()
    for v in range(1, n):
        es.add((rng.randrange(v), v))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in es]
    rng.shuffle(candidates)
    for e in candidates[:extra_edges]:
        es.add(e)
    return Graph(n, sorted(es))


def subdivided_clique(k: int) -> Graph:
    """K'_k: one new vertex in the middle of every K_k edge."""
    edges = []
    nxt = k
    for i in range(k):
        for j in range(i + 1, k):
            edges.append((i, nxt))
            edges.append((nxt, j))
            nxt += 1
    return Graph(nxt, edges)


def pentagon_chain(k: int) -> Graph:
    """k pentagons in a row, consecutive ones sharing an edge.

    chain(1) is C5 (5 vertices, 5 edges); each further pentagon adds three
    vertices and four edges onto the previous pentagon's far edge.
    """
    if k < 1:
        raise ValueError("need at least one pentagon")
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    a, b = 2, 3  # far edge of the newest pentagon
    n = 5
    for _ in range(k - 1):
        edges += [(a, n), (n, n + 1), (n + 1, n + 2), (n + 2, b)]
        a, b = n, n + 2
        n += 3
    return Graph(n, edges)


def figure_sequence_graphs() -> list[Graph]:
    """Five snapshots of a growing graph: C4, then a new >=3-edge path each step."""
    stages = [[(0, 1), (1, 2), (2, 3), (3, 0)]]
    stages.append(stages[0] + [(0, 6), (6, 5), (5, 4), (4, 1)])
    stages.append(stages[1] + [(2, 8), (8, 7), (7, 4)])
    stages.append(stages[2] + [(0, 11), (11, 10), (10, 9), (9, 3)])
    stages.append(stages[3] + [(2, 12), (12, 13), (13, 9)])
    return [Graph(max(max(e) for e in el) + 1, el) for el in stages]


def pentagon_bowtie() -> Graph:
    """Two 5-cycles sharing exactly one vertex (vertex 0)."""
    es = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    es += [(0, 5), (5, 6), (6, 7), (7, 8), (8, 0)]
    return Graph(9, es)


# Girth-5 graph on 22 vertices with 42 > 2*22-4 edges, found once by seeded
# greedy edge insertion and frozen here. Its whole vertex set breaks the
# 2|V'|-4 density cap, so it exercises the conjectural screen without
# tripping the girth refutation.
DENSE_GIRTH5_EDGES = [
    (0, 17), (0, 21), (1, 4), (1, 5), (1, 8), (1, 13), (2, 8), (2, 12),
    (2, 14), (2, 21), (3, 13), (3, 14), (3, 17), (3, 19), (4, 9), (4, 16),
    (4, 19), (5, 6), (5, 10), (5, 14), (6, 17), (6, 18), (6, 20), (7, 9),
    (7, 10), (7, 18), (8, 17), (9, 12), (9, 17), (10, 15), (10, 19),
    (11, 13), (11, 15), (11, 20), (12, 13), (13, 18), (14, 16), (15, 16),
    (15, 17), (16, 18), (19, 21), (20, 21),
]


def dense_girth5() -> Graph:
    return Graph(22, DENSE_GIRTH5_EDGES)


def c5pair_connector() -> tuple[Graph, tuple[int, int]]:
    """Two 5-cycles sharing one edge, with the two far endpoints as ends.

    Vertices: 0 and 7 are the ends, both adjacent to 4; 3-4 is the shared
    edge. Gluing two copies along the ends gives a 14-vertex, 18-edge graph.
    """
    j = Graph(
        8,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (3, 5), (5, 6), (6, 7), (4, 7)],
    )
    return j, (0, 7)


# -- oracles ------------------------------------------------------------------


def oracle_girth(g: Graph) -> float:
    """Shortest cycle length by edge-deletion + BFS distance, or inf."""
    best = math.inf
    for u, v in g.sorted_edges():
        d = _bfs_dist_without_edge(g, u, v)
        if d + 1 < best:
            best = d + 1
    return best


def _bfs_dist_without_edge(g: Graph, su: int, sv: int) -> float:
    dist = {su: 0}
    frontier = [su]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if x == su and y == sv:
                    continue
                if x == sv and y == su:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist.get(sv, math.inf)


def oracle_has_c4(g: Graph) -> bool:
    """Explicit enumeration of 4-tuples forming a 4-cycle."""
    for a, b, c, d in itertools.permutations(range(g.n), 4):
        if a == min(a, b, c, d) and b < d:  # fix orientation/rotation
            if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a):
                return True
    return False


def oracle_density_violation(g: Graph) -> bool:
    """Brute force over all vertex subsets of size >= 3."""
    verts = range(g.n)
    for k in range(3, g.n + 1):
        for sub in itertools.combinations(verts, k):
            ss = set(sub)
            e = sum(1 for u, v in g.edges if u in ss and v in ss)
            if e > 2 * k - 4:
                return True
    return False


def oracle_isomorphic(g: Graph, h: Graph) -> bool:
    """Try every bijection (fine for the tiny graphs used in tests)."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in g.edges):
            return True
    return False
