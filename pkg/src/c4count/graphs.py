"""Small immutable graphs and the structural operations the rest of the package
builds on: girth, C4-freeness, end-gluing of rooted patterns, the 2-density
screen, and a canonical form for isomorphism testing of graphs up to 32
vertices.

Graphs are plain vertex sets 0..n-1 with an edge set of unordered pairs.
Everything here is pure and side-effect free; Graph instances are immutable
and hashable, so they are safe to share across threads and to use as cache
keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, PreconditionError

INF = math.inf

_CANON_MAX = 64
_DENSITY_MAX = 32


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


class Graph:
    """An immutable undirected graph on vertices 0..n-1.

    Loops (edges (v, v)) are accepted only when allow_loops is set; they count
    a single incidence toward the degree. Parallel edges cannot be represented.
    Equality and hashing depend on (n, edges) only.
    """

    __slots__ = ("n", "edges", "allow_loops", "_adj", "_bits", "_hash", "_canon")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), allow_loops: bool = False):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"vertex out of range in edge ({u}, {v}) for n={n}")
            if u == v and not allow_loops:
                raise InputError(f"loop ({u}, {u}) not allowed here")
            e = _normalize_edge(u, v)
            if e in normalized:
                raise InputError(f"duplicate edge ({e[0]}, {e[1]})")
            normalized.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "allow_loops", bool(allow_loops))
        adj = [[] for _ in range(n)]
        bits = [0] * n
        for u, v in normalized:
            adj[u].append(v)
            bits[u] |= 1 << v
            if u != v:
                adj[v].append(u)
                bits[v] |= 1 << u
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_bits", tuple(bits))
        object.__setattr__(self, "_hash", hash((n, self.edges)))
        object.__setattr__(self, "_canon", {})

    def __setattr__(self, *_):
        raise AttributeError("Graph is immutable")

    # -- basic accessors ----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbors of v; a loop makes v its own neighbor."""
        return self._adj[v]

    def bitrow(self, v: int) -> int:
        """Neighborhood of v as a bitmask (bit v set iff v has a loop)."""
        return self._bits[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        """Dense adjacency; a loop contributes 1 on the diagonal."""
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    # -- derived graphs ------------------------------------------------------

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabeled to 0..k-1 in the order given."""
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertices in subgraph selection")
        pos = {v: i for i, v in enumerate(verts)}
        keep = set(verts)
        es = [(pos[u], pos[v]) for u, v in self.edges if u in keep and v in keep]
        return Graph(len(verts), es, allow_loops=self.allow_loops)

    def edge_subgraph(self, edges: Iterable[tuple[int, int]], vertices: Sequence[int]) -> "Graph":
        """Subgraph on the given vertex list with exactly the given edges."""
        verts = list(vertices)
        pos = {v: i for i, v in enumerate(verts)}
        es = []
        for u, v in edges:
            if u not in pos or v not in pos:
                raise InputError(f"edge ({u}, {v}) leaves the selected vertex set")
            es.append((pos[u], pos[v]))
        return Graph(len(verts), es, allow_loops=self.allow_loops)

    def without_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        return self.subgraph(keep)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Relabel by perm (perm[old] = new); perm must be a bijection."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabeling is not a permutation")
        es = [(perm[u], perm[v]) for u, v in self.edges]
        return Graph(self.n, es, allow_loops=self.allow_loops)

    def add_pendant(self, attach: int) -> "Graph":
        """New graph with an extra leaf (index n) hanging on `attach`."""
        if not 0 <= attach < self.n:
            raise InputError("pendant attachment vertex out of range")
        return Graph(self.n + 1, list(self.edges) + [(attach, self.n)], allow_loops=self.allow_loops)

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(extra), allow_loops=self.allow_loops)

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples (loops irrelevant)."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(tuple(sorted(comp)))
        return out

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- named constructors -------------------------------------------------------


def edgeless(n: int) -> Graph:
    return Graph(n)


def cycle(k: int) -> Graph:
    if k < 3:
        raise InputError("cycles need at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    """Path on k vertices (k-1 edges)."""
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def complete(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def petersen() -> Graph:
    es = [(i, (i + 1) % 5) for i in range(5)]
    es += [(i, 5 + i) for i in range(5)]
    es += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, es)


def dodecahedron() -> Graph:
    # generalized Petersen graph GP(10, 2)
    es = [(i, (i + 1) % 10) for i in range(10)]
    es += [(i, 10 + i) for i in range(10)]
    es += [(10 + i, 10 + (i + 2) % 10) for i in range(10)]
    return Graph(20, es)


def subdivide(g: Graph) -> Graph:
    """1-subdivision: every edge replaced by a 2-edge path through a new vertex."""
    if g.has_loops():
        raise PreconditionError("cannot subdivide a graph with loops")
    es = []
    k = g.n
    for u, v in g.sorted_edges():
        es.append((u, k))
        es.append((k, v))
        k += 1
    return Graph(k, es)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    es = list(g.edges) + [(u + g.n, v + g.n) for u, v in h.edges]
    return Graph(g.n + h.n, es, allow_loops=g.allow_loops or h.allow_loops)


# -- girth ---------------------------------------------------------------------


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or math.inf for forests.

    Loops are rejected. BFS from every vertex; each non-tree edge scanned gives
    a closed walk through the root whose length upper-bounds the girth, and the
    bound is attained when the root lies on a shortest cycle.
    """
    c = girth_witness(g)
    return INF if c is None else len(c)


def girth_witness(g: Graph) -> Optional[tuple[int, ...]]:
    """A shortest cycle as a vertex tuple, or None for forests."""
    if g.has_loops():
        raise PreconditionError("girth is undefined for graphs with loops")
    n = g.n
    best: Optional[tuple[int, ...]] = None
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        frontier = [root]
        while frontier:
            if best is not None and 2 * dist[frontier[0]] + 1 >= len(best):
                break
            nxt = []
            for u in frontier:
                for w in g.neighbors(u):
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif w != parent[u] and dist[w] >= dist[u]:
                        # non-tree edge: cycle through the root
                        length = dist[u] + dist[w] + 1
                        if best is None or length < len(best):
                            cyc = _extract_cycle(u, w, parent)
                            if cyc is not None and (best is None or len(cyc) < len(best)):
                                best = cyc
            frontier = nxt
    return best


def _extract_cycle(u: int, w: int, parent: list[int]) -> Optional[tuple[int, ...]]:
    pu, pw = [], []
    a, b = u, w
    while a >= 0:
        pu.append(a)
        a = parent[a]
    while b >= 0:
        pw.append(b)
        b = parent[b]
    # walk back from the root, drop the common prefix
    i = len(pu) - 1
    j = len(pw) - 1
    while i >= 0 and j >= 0 and pu[i] == pw[j]:
        i -= 1
        j -= 1
    cyc = pu[: i + 2][::-1] + pw[: j + 1]
    if len(set(cyc)) != len(cyc):
        return None
    return tuple(cyc)


# -- C4-freeness -----------------------------------------------------------------


def is_c4_free(g: Graph) -> bool:
    """True iff no two distinct vertices have two or more common neighbors."""
    if g.has_loops():
        raise PreconditionError("C4-freeness is checked on loopless graphs")
    bits = g._bits
    n = g.n
    for u in range(n):
        bu = bits[u]
        for v in range(u + 1, n):
            if (bu & bits[v]).bit_count() > 1:
                return False
    return True


# -- rooted patterns and gluing ---------------------------------------------------


@dataclass(frozen=True)
class RootedPattern:
    """A pattern graph together with an independent set of end vertices.

    The ends are the interface along which two copies of the pattern get glued;
    independence means the gluing never creates parallel edges.
    """

    pattern: Graph
    ends: tuple[int, ...]

    def __post_init__(self):
        ends = tuple(sorted(self.ends))
        object.__setattr__(self, "ends", ends)
        if len(set(ends)) != len(ends):
            raise InputError("repeated end vertices")
        for v in ends:
            if not 0 <= v < self.pattern.n:
                raise InputError("end vertex out of range")
        for i, u in enumerate(ends):
            for v in ends[i + 1 :]:
                if self.pattern.has_edge(u, v):
                    raise InputError("end set must be independent in the pattern")

    def canonical_form(self) -> bytes:
        return canonical_form(self.pattern, self.ends)


def glue(rp: RootedPattern) -> Graph:
    """Two copies of the pattern identified along the end set.

    The result has 2|V| - |ends| vertices: the first copy keeps its labels and
    the second copy's non-end vertices are appended in increasing order.
    """
    j = rp.pattern
    ends = set(rp.ends)
    second = {}
    nxt = j.n
    for v in range(j.n):
        if v in ends:
            second[v] = v
        else:
            second[v] = nxt
            nxt += 1
    es = set(j.edges)
    for u, v in j.edges:
        es.add(_normalize_edge(second[u], second[v]))
    out = Graph(nxt, es)
    assert out.m == 2 * j.m, "gluing must exactly double the edge count"
    return out


# -- 2-density screen ---------------------------------------------------------------


def two_density_violation(f: Graph) -> Optional[tuple[int, ...]]:
    """A vertex set S, |S| >= 3, with e(S) > 2|S| - 4, or None if none exists.

    Exhaustive over subsets up to 20 vertices; beyond that (up to 32) a
    forced-triple min-cut search. The screen only ever inspects induced
    subgraphs: they maximize the edge count for a fixed vertex set.
    """
    if f.has_loops():
        raise PreconditionError("2-density screen expects a loopless graph")
    if f.n <= 20:
        return _density_violation_exhaustive(f)
    if f.n <= _DENSITY_MAX:
        return _density_violation_flow(f)
    raise PreconditionError(f"2-density screen supports at most {_DENSITY_MAX} vertices")


def two_density_screen(f: Graph) -> bool:
    """True iff every subgraph on >= 3 vertices has |E'| <= 2|V'| - 4."""
    return two_density_violation(f) is None


def _density_violation_exhaustive(f: Graph) -> Optional[tuple[int, ...]]:
    n = f.n
    bits = f._bits
    # e(S) built incrementally from e(S minus lowest bit)
    e = [0] * (1 << n)
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        e[mask] = e[rest] + (bits[v] & rest).bit_count()
        k = mask.bit_count()
        if k >= 3 and e[mask] > 2 * k - 4:
            return tuple(i for i in range(n) if mask >> i & 1)
    return None


def _density_violation_flow(f: Graph) -> Optional[tuple[int, ...]]:
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import maximum_flow

    edges = f.sorted_edges()
    m = len(edges)
    n = f.n
    big = 4 * (m + n) + 16
    for t0 in range(n):
        for t1 in range(t0 + 1, n):
            for t2 in range(t1 + 1, n):
                forced = (t0, t1, t2)
                # project selection: max over S of e(S) - 2|S \ forced|
                # nodes: 0 = source, 1..m = edges, m+1..m+n = vertices, m+n+1 = sink
                src, snk = 0, m + n + 1
                rows, cols, caps = [], [], []
                for i, (u, v) in enumerate(edges):
                    rows += [src, 1 + i, 1 + i]
                    cols += [1 + i, m + 1 + u, m + 1 + v]
                    caps += [1, big, big]
                for v in range(n):
                    if v in forced:
                        continue  # cost-0 vertex: omit the sink arc entirely
                    rows.append(m + 1 + v)
                    cols.append(snk)
                    caps.append(2)
                g = csr_matrix((caps, (rows, cols)), shape=(snk + 1, snk + 1))
                res = maximum_flow(g, src, snk)
                if m - res.flow_value >= 3:
                    member = _mincut_source_side(g, res.flow, src)
                    s = sorted(set(forced) | {v for v in range(n) if member[m + 1 + v]})
                    return tuple(s)
    return None


def _mincut_source_side(cap, flow, src):
    # scipy's flow matrix is antisymmetric, so cap - flow covers reverse arcs
    residual = cap - flow
    nnodes = cap.shape[0]
    seen = [False] * nnodes
    seen[src] = True
    stack = [src]
    indptr, indices, data = residual.indptr, residual.indices, residual.data
    while stack:
        v = stack.pop()
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if data[k] > 0 and not seen[w]:
                seen[w] = True
                stack.append(w)
    return seen


# -- canonical form ------------------------------------------------------------------


def canonical_form(
    g: Graph, roots: Sequence[int] = (), colors: Optional[Sequence[int]] = ()
) -> bytes:
    """Canonical byte string: equal for two (rooted/colored) graphs iff there
    is an isomorphism preserving the root set and the vertex colors.

    Color refinement plus individualization with full backtracking over the
    first non-singleton cell, taking the minimal code over all branches; the
    root set starts in its own color class. Supports up to 64 vertices.
    """
    roots = tuple(sorted(set(roots)))
    colors = tuple(colors) if colors else ()
    key = (roots, colors)
    cached = g._canon.get(key)
    if cached is not None:
        return cached
    if g.n > _CANON_MAX:
        raise PreconditionError(f"canonical form supports at most {_CANON_MAX} vertices")
    if colors and len(colors) != g.n:
        raise InputError("colors must give one class per vertex")
    for v in roots:
        if not 0 <= v < g.n:
            raise InputError("root vertex out of range")
    code = _canon_search(g, roots, colors)
    g._canon[key] = code
    return code


def canonical_labeling(g: Graph, roots: Sequence[int] = ()) -> tuple[int, ...]:
    """Permutation old -> new realizing canonical_form(g, roots).

    Relabeling g by the returned map yields the canonical representative of
    its isomorphism class, so isomorphic graphs relabel to the same Graph.
    """
    roots = tuple(sorted(set(roots)))
    key = ("perm", roots)
    cached = g._canon.get(key)
    if cached is not None:
        return cached
    if g.n > _CANON_MAX:
        raise PreconditionError(f"canonical form supports at most {_CANON_MAX} vertices")
    for v in roots:
        if not 0 <= v < g.n:
            raise InputError("root vertex out of range")
    code, perm = _canon_search(g, roots, want_labeling=True)
    g._canon[(roots, ())] = code
    g._canon[key] = perm
    return perm


def canonical_copy(g: Graph) -> Graph:
    """The canonical representative of g's isomorphism class.

    Isomorphic graphs produce identical copies (same vertex count and edge
    set), which makes search results independent of input labeling.
    """
    out = g.relabel(canonical_labeling(g))
    # the copy is its own canonical representative; seed its caches
    out._canon[((), ())] = canonical_form(g)
    out._canon[("perm", ())] = tuple(range(g.n))
    return out


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


def _canon_search(
    g: Graph,
    roots: tuple[int, ...],
    colors: tuple[int, ...] = (),
    want_labeling: bool = False,
):
    n = g.n
    adj = g._adj
    rootset = set(roots)

    def refine(colors: tuple[int, ...]) -> tuple[int, ...]:
        while True:
            sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
            order = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = tuple(order[s] for s in sigs)
            if new == colors:
                return colors
            colors = new

    def code_of(final: tuple[int, ...]) -> bytes:
        pos = {v: final[v] for v in range(n)}
        edges = sorted(_normalize_edge(pos[u], pos[v]) for u, v in g.edges)
        rp = sorted(pos[v] for v in roots)
        cl = sorted((pos[v], colors[v]) for v in range(n)) if colors else []
        return repr((n, rp, cl, edges)).encode()

    best: list[Optional[bytes]] = [None]
    best_final: list[Optional[tuple[int, ...]]] = [None]

    def search(current: tuple[int, ...]):
        current = refine(current)
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(current[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            c = code_of(current)
            if best[0] is None or c < best[0]:
                best[0] = c
                best_final[0] = current  # discrete, so already a bijection
            return
        fresh = n  # strictly larger than every refined color
        for v in target:
            branched = tuple(fresh if u == v else current[u] for u in range(n))
            search(branched)

    if colors:
        order = {c: i for i, c in enumerate(sorted(set(colors)))}
        init = tuple(order[colors[v]] * 2 + (1 if v in rootset else 0) for v in range(n))
    else:
        init = tuple(1 if v in rootset else 0 for v in range(n))
    search(init)
    assert best[0] is not None
    if want_labeling:
        return best[0], best_final[0]
    return best[0]


# -- edge-list text format --------------------------------------------------------------


def parse_edge_list(text: str, allow_loops: bool = False) -> Graph:
    """Parse the plain text format: first line "n m", then m lines "u v".

    Raises InputError with a distinct message for out-of-range vertices,
    duplicate edges, loops (when not allowed), and count mismatches.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise InputError("header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise InputError("header must contain two integers") from None
    if n > 1_000_000 or m > 5_000_000:
        raise InputError("graph too large for the edge-list reader")
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"edge count mismatch: header says {m}, found {len(body)} edge lines")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"malformed edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"malformed edge line: {ln!r}") from None
        edges.append((u, v))
    return Graph(n, edges, allow_loops=allow_loops)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, labels: Optional[Sequence[str]] = None, name: str = "G") -> str:
    """Graphviz DOT text; loops rendered as self-edges."""
    out = [f"graph {name} {{"]
    for v in range(g.n):
        lab = labels[v] if labels is not None else str(v)
        out.append(f'  {v} [label="{lab}"];')
    for u, v in g.sorted_edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
