"""Weighted homomorphism counting and normalized densities.

The central quantity is the density

    t(F, host) = n^{-|V(F)|} * sum over maps V(F)->V(host) of
                 prod over edges of host weight * prod of vertex weights,

where a sparse host G enters through the scaled weights c*sqrt(n)*A and a
dense host through its [0,1] matrix directly. Computation is dynamic
programming along a (tree)width-minimizing elimination order, in either
float64 or exact Fraction arithmetic; the scale factor (c*sqrt(n))^{|E|} and
the 1/n measure are folded in analytically at the end, so the DP itself only
ever sees the unscaled integer/fractional sum ("raw" value). In exact mode a
normalized value exists as a rational only when |E(F)| is even or n is a
perfect square; the raw value is always exact.

hom_brute is a deliberately independent oracle: plain enumeration of all
maps, vectorized but sharing no logic with the DP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .errors import InputError, PreconditionError, ResourceLimitError
from .graphs import Graph

DEFAULT_OPS_BUDGET = 2_000_000_000
_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


# -- hosts ---------------------------------------------------------------------


class ScaledHost:
    """Base for the two host kinds; n is the host vertex count."""

    n: int

    def edge_factor(self, exact: bool) -> np.ndarray:
        raise NotImplementedError

    def scale(self, edge_count: int, integrated: int, exact: bool):
        """Multiplier turning a raw DP sum into a density: host-dependent
        per-edge scale divided by n^integrated."""
        raise NotImplementedError


class SparseHost(ScaledHost):
    """g = c*sqrt(n)*G for a hard graph G.

    Requires max degree <= 2*sqrt(n) and 0 < c <= 1/2, which together keep
    every row sum of g at most 1 under the 1/n measure.
    """

    def __init__(self, graph: Graph, c: Union[Fraction, float, int] = Fraction(1, 2)):
        if graph.has_loops():
            raise PreconditionError("sparse hosts must be loopless")
        c = Fraction(c)
        if not 0 < c <= Fraction(1, 2):
            raise InputError(f"scale c must lie in (0, 1/2], got {c}")
        n = graph.n
        maxdeg = max(graph.degrees(), default=0)
        if maxdeg * maxdeg > 4 * n:
            raise PreconditionError(
                f"max degree {maxdeg} exceeds 2*sqrt(n) for n={n}; trim the host first"
            )
        self.graph = graph
        self.c = c
        self.n = n

    def edge_factor(self, exact: bool) -> np.ndarray:
        a = self.graph.adjacency_matrix(dtype=np.int64)
        return a.astype(object) if exact else a.astype(np.float64)

    def scale(self, edge_count: int, integrated: int, exact: bool):
        if exact:
            return _exact_scale(self.c, self.n, edge_count, integrated)
        return float(self.c) ** edge_count * float(self.n) ** (edge_count / 2 - integrated)


class DenseHost(ScaledHost):
    """A symmetric matrix with entries in [0,1], used as-is."""

    def __init__(self, matrix: np.ndarray):
        m = np.asarray(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("dense host must be a square matrix")
        if not np.array_equal(m, m.T):
            raise InputError("dense host must be symmetric")
        if m.size and (m.min() < 0 or m.max() > 1):
            raise InputError("dense host entries must lie in [0, 1]")
        self.matrix = m
        self.n = m.shape[0]

    @classmethod
    def constant(cls, n: int, value: float) -> "DenseHost":
        return cls(np.full((n, n), value, dtype=np.float64))

    def edge_factor(self, exact: bool) -> np.ndarray:
        if exact:
            return np.array(
                [[Fraction(x) for x in row] for row in self.matrix], dtype=object
            )
        return self.matrix

    def scale(self, edge_count: int, integrated: int, exact: bool):
        if exact:
            return Fraction(1, self.n**integrated) if integrated else Fraction(1)
        return float(self.n) ** (-integrated)


def _exact_scale(c: Fraction, n: int, edge_count: int, integrated: int) -> Fraction:
    # (c*sqrt(n))^edge_count / n^integrated as an exact rational
    half, odd = divmod(edge_count, 2)
    val = c**edge_count * Fraction(n) ** (half - integrated)
    if odd:
        r = math.isqrt(n)
        if r * r != n:
            raise PreconditionError(
                f"exact normalized value needs an even edge count or a square host "
                f"size (n={n}); use float mode or work with the raw value"
            )
        val *= r
    return val


# -- vertex weights --------------------------------------------------------------


class VertexWeights:
    """Per-pattern-vertex weight functions on the host, values in [0,1]."""

    def __init__(self, host_n: int, arrays: Mapping[int, np.ndarray]):
        self.host_n = host_n
        store: dict[int, np.ndarray] = {}
        for v, arr in arrays.items():
            a = np.asarray(arr, dtype=np.float64)
            if a.shape != (host_n,):
                raise InputError(f"weight for vertex {v} has shape {a.shape}, want ({host_n},)")
            if a.size and (a.min() < 0 or a.max() > 1):
                raise InputError(f"weight for vertex {v} leaves [0, 1]")
            store[v] = a
        self.arrays = store

    @classmethod
    def ones(cls, host_n: int) -> "VertexWeights":
        return cls(host_n, {})

    @classmethod
    def indicators(cls, host_n: int, sets: Mapping[int, Iterable[int]]) -> "VertexWeights":
        arrays = {}
        for v, members in sets.items():
            a = np.zeros(host_n, dtype=np.float64)
            for x in members:
                if not 0 <= x < host_n:
                    raise InputError(f"indicator member {x} out of host range")
                a[x] = 1.0
            arrays[v] = a
        return cls(host_n, arrays)

    def get(self, v: int, exact: bool) -> np.ndarray:
        a = self.arrays.get(v)
        if a is None:
            a = np.ones(self.host_n, dtype=np.float64)
        if exact:
            return np.array([Fraction(x) for x in a], dtype=object)
        return a

    def has_explicit(self, v: int) -> bool:
        return v in self.arrays


# -- results -----------------------------------------------------------------------


class HomResult:
    """A density value plus the raw unscaled DP sum.

    raw = sum over maps of prod(edge weights) * prod(vertex weights); it is an
    exact integer/rational in exact mode. value = raw * scale with
    scale = (c*sqrt(n))^{|E|} / n^{|V|} for sparse hosts (1/n^{|V|} dense).
    In exact mode with an odd edge count and a non-square host the scale is
    irrational; raw stays available and reading value raises.
    """

    __slots__ = ("raw", "mode", "nvertices", "nedges", "host_n", "_scale", "_scale_error")

    def __init__(self, raw, mode, nvertices, nedges, host_n, scale, scale_error=None):
        self.raw = raw
        self.mode = mode
        self.nvertices = nvertices
        self.nedges = nedges
        self.host_n = host_n
        self._scale = scale
        self._scale_error = scale_error

    @property
    def value(self) -> Union[float, Fraction]:
        if self._scale is None:
            raise PreconditionError(self._scale_error)
        return self.raw * self._scale

    @property
    def normalization(self) -> tuple[int, float]:
        return (self.nvertices, self.nedges / 2)

    def __repr__(self) -> str:
        val = "unrepresentable" if self._scale is None else self.value
        return (
            f"HomResult(value={val!r}, raw={self.raw!r}, mode={self.mode!r}, "
            f"pattern=({self.nvertices} vertices, {self.nedges} edges), host_n={self.host_n})"
        )


@dataclass(frozen=True)
class Profile:
    """Values of a pinned-vertex density over V^S, |S| <= 3."""

    S: tuple[int, ...]
    values: np.ndarray
    host_n: int
    mode: str

    def integral(self, weights: Optional[VertexWeights] = None) -> Union[float, Fraction]:
        """Integrate over x_S with optional [0,1] weights on S."""
        return _profile_moment(self, weights, power=1)

    def square_integral(self, weights: Optional[VertexWeights] = None) -> Union[float, Fraction]:
        return _profile_moment(self, weights, power=2)


def _profile_moment(p: Profile, weights: Optional[VertexWeights], power: int):
    exact = p.mode == "exact"
    vals = p.values
    acc = vals if power == 1 else vals * vals
    for axis, v in enumerate(p.S):
        w = (weights.get(v, exact) if weights is not None else None)
        if w is not None:
            shape = [1] * acc.ndim
            shape[axis] = p.host_n
            acc = acc * w.reshape(shape)
    total = acc.sum()
    k = len(p.S)
    if exact:
        return Fraction(total) / Fraction(p.host_n) ** k if k else Fraction(total)
    return float(total) / float(p.host_n) ** k


def truncate_profile(p: Profile, t: Union[float, Fraction]) -> Profile:
    """Zero out every value strictly above t."""
    if not t > 0:
        raise InputError("truncation threshold must be positive")
    if p.mode == "exact":
        vals = np.where(p.values <= t, p.values, Fraction(0))
    else:
        vals = np.where(p.values <= t, p.values, 0.0)
    return Profile(S=p.S, values=vals, host_n=p.host_n, mode=p.mode)


# -- brute-force oracle ---------------------------------------------------------------


def hom_brute(
    f: Graph,
    g: Graph,
    a_sets: Optional[Mapping[int, Iterable[int]]] = None,
    guard: int = 10**9,
) -> int:
    """Count homomorphisms by enumerating all |V(G)|^{|V(F)|} maps.

    Host loops are honored (diagonal adjacency). The guard bounds the number
    of enumerated maps, not memory; enumeration is chunked.
    """
    if f.has_loops():
        raise PreconditionError("patterns with loops are not supported")
    k, n = f.n, g.n
    if k == 0:
        return 1
    if n == 0:
        return 0
    if n**k > guard:
        raise ResourceLimitError(f"hom_brute guard: {n}^{k} maps exceed {guard}")
    adj = g.adjacency_matrix(dtype=bool)
    # enumeration runs over each vertex's candidate list, so indicator
    # constraints shrink the search space instead of filtering it afterwards
    cands = [np.arange(n)] * k
    if a_sets:
        for v, members in a_sets.items():
            if not 0 <= v < k:
                raise InputError(f"constraint names pattern vertex {v}, out of range")
            chosen = sorted(set(members))
            if chosen and not 0 <= chosen[0] <= chosen[-1] < n:
                raise InputError("indicator set names a host vertex out of range")
            cands[v] = np.asarray(chosen, dtype=np.int64)
    if any(c.size == 0 for c in cands):
        return 0
    edges = f.sorted_edges()

    def count_block(fixed: tuple[int, ...]) -> int:
        rest = cands[len(fixed) :]
        grids = np.meshgrid(*rest, indexing="ij", copy=False)
        shape = grids[0].shape if rest else ()
        cols = [np.full(shape, x) for x in fixed] + list(grids)
        ok = np.ones(shape, dtype=bool)
        for u, v in edges:
            ok &= adj[cols[u], cols[v]]
        return int(ok.sum())

    chunk_depth = 0
    tail = math.prod(c.size for c in cands)
    while tail > 4 * 10**6 and chunk_depth < k:
        tail //= cands[chunk_depth].size
        chunk_depth += 1
    total = 0
    if chunk_depth == 0:
        return count_block(())
    for fixed in np.ndindex(*(cands[i].size for i in range(chunk_depth))):
        total += count_block(tuple(int(cands[i][j]) for i, j in enumerate(fixed)))
    return total


# -- elimination orders -----------------------------------------------------------------


def elimination_order(f: Graph) -> tuple[list[int], int]:
    """An elimination order and its induced width.

    Exact (minimum width, i.e. treewidth) for up to 12 vertices via subset
    DP; min-fill greedy beyond. Edgeless graphs get width 0.
    """
    if f.n > 64:
        raise PreconditionError("elimination order supports at most 64 vertices")
    if f.n == 0:
        return [], 0
    if f.n <= 12:
        return _elimination_exact(f)
    return _elimination_minfill(f)


def _reach_degree(f: Graph, through: int, v: int) -> int:
    """Vertices outside `through` (a bitmask) hit from v via paths inside it."""
    seen = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        for w in f.neighbors(u):
            b = 1 << w
            if seen & b:
                continue
            seen |= b
            if through >> w & 1:
                stack.append(w)
            else:
                out += 1
    return out


def _elimination_exact(f: Graph) -> tuple[list[int], int]:
    n = f.n
    full = (1 << n) - 1
    width = [0] * (1 << n)
    best_v = [0] * (1 << n)
    for s in range(1, full + 1):
        w = n + 1
        bv = -1
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            prev = s ^ (1 << v)
            cand = max(width[prev], _reach_degree(f, prev, v))
            if cand < w:
                w, bv = cand, v
        width[s] = w
        best_v[s] = bv
    order_rev = []
    s = full
    while s:
        v = best_v[s]
        order_rev.append(v)
        s ^= 1 << v
    order = order_rev[::-1]
    return order, width[full]


def _elimination_minfill(f: Graph) -> tuple[list[int], int]:
    nbrs = {v: set(f.neighbors(v)) - {v} for v in range(f.n)}
    alive = set(range(f.n))
    order = []
    width = 0
    while alive:
        best = None
        for v in sorted(alive):
            nb = nbrs[v]
            fill = sum(
                1
                for i, a in enumerate(sorted(nb))
                for b in sorted(nb)[i + 1 :]
                if b not in nbrs[a]
            )
            if best is None or fill < best[0]:
                best = (fill, v)
        v = best[1]
        nb = sorted(nbrs[v])
        width = max(width, len(nb))
        for i, a in enumerate(nb):
            for b in nb[i + 1 :]:
                nbrs[a].add(b)
                nbrs[b].add(a)
        for a in nb:
            nbrs[a].discard(v)
        del nbrs[v]
        alive.remove(v)
        order.append(v)
    return order, width


# -- the DP core ----------------------------------------------------------------------


def _contract(
    f: Graph,
    host: ScaledHost,
    weights: VertexWeights,
    pinned: tuple[int, ...],
    exact: bool,
    ops_budget: int,
):
    """Eliminate all non-pinned pattern vertices; return an array over V^pinned
    (0-dim for empty pinned) holding the raw weighted sums."""
    if f.has_loops():
        raise PreconditionError("patterns with loops are not supported")
    n = host.n
    if weights.host_n != n:
        raise InputError("weights sized for a different host")
    edge_mat = host.edge_factor(exact)
    factors: list[tuple[tuple[int, ...], np.ndarray]] = [
        ((u, v), edge_mat) for u, v in f.sorted_edges()
    ]
    order, _ = elimination_order(f)
    pin = set(pinned)
    for v in order:
        if v in pin:
            continue
        involved = [fa for fa in factors if v in fa[0]]
        factors = [fa for fa in factors if v not in fa[0]]
        alpha = weights.get(v, exact)
        scope_union: list[int] = [v]
        for sc, _ in involved:
            for u in sc:
                if u not in scope_union:
                    scope_union.append(u)
        out_scope = tuple(u for u in scope_union if u != v)
        if n ** len(scope_union) > ops_budget:
            raise ResourceLimitError(
                f"DP table over {len(scope_union)} host axes (n={n}) exceeds the "
                f"{ops_budget} operation budget"
            )
        letter = {u: _LETTERS[i] for i, u in enumerate(scope_union)}
        subs = ",".join("".join(letter[u] for u in sc) for sc, _ in involved)
        subs += ("," if involved else "") + letter[v]
        subs += "->" + "".join(letter[u] for u in out_scope)
        arrays = [arr for _, arr in involved] + [alpha]
        res = np.einsum(subs, *arrays)
        factors.append((out_scope, res))
    # combine leftovers (scopes within the pinned set) into one array over pinned
    out_shape = (n,) * len(pinned)
    if exact:
        acc = np.full(out_shape, Fraction(1), dtype=object) if pinned else np.array(Fraction(1), dtype=object)
    else:
        acc = np.ones(out_shape, dtype=np.float64) if pinned else np.array(1.0)
    pos = {u: i for i, u in enumerate(pinned)}
    for sc, arr in factors:
        if sc:
            # axes into pinned order, then broadcast across the missing axes
            perm = np.argsort([pos[u] for u in sc])
            arr = np.transpose(arr, axes=perm)
            scset = set(sc)
            arr = arr[tuple(slice(None) if u in scset else None for u in pinned)]
        acc = acc * arr
    return acc


def hom_weighted(
    f: Graph,
    host: ScaledHost,
    weights: Optional[VertexWeights] = None,
    mode: str = "float",
    ops_budget: int = DEFAULT_OPS_BUDGET,
) -> HomResult:
    """The normalized density t(F, host) under the given vertex weights."""
    if mode not in ("float", "exact"):
        raise InputError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    w = weights if weights is not None else VertexWeights.ones(host.n)
    raw_arr = _contract(f, host, w, pinned=(), exact=exact, ops_budget=ops_budget)
    raw = raw_arr.item() if hasattr(raw_arr, "item") else raw_arr
    if exact and not isinstance(raw, Fraction):
        raw = Fraction(raw)
    scale = None
    scale_error = None
    try:
        scale = host.scale(f.m, f.n, exact)
    except PreconditionError as err:
        scale_error = str(err)
    return HomResult(
        raw=raw,
        mode=mode,
        nvertices=f.n,
        nedges=f.m,
        host_n=host.n,
        scale=scale,
        scale_error=scale_error,
    )


def partial_profile(
    f: Graph,
    s: Sequence[int],
    host: ScaledHost,
    weights: Optional[VertexWeights] = None,
    mode: str = "float",
    ops_budget: int = DEFAULT_OPS_BUDGET,
) -> Profile:
    """The pinned density over x_S: integrate out F minus S only.

    Weights may only name vertices outside S (the pinned vertices carry no
    weight or measure here).
    """
    s = tuple(s)
    if len(set(s)) != len(s):
        raise InputError("pinned set repeats a vertex")
    if len(s) > 3:
        raise InputError("profiles support at most 3 pinned vertices")
    for v in s:
        if not 0 <= v < f.n:
            raise InputError(f"pinned vertex {v} out of range")
    if mode not in ("float", "exact"):
        raise InputError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    w = weights if weights is not None else VertexWeights.ones(host.n)
    for v in s:
        if w.has_explicit(v):
            raise InputError(f"weight given for pinned vertex {v}")
    raw = _contract(f, host, w, pinned=s, exact=exact, ops_budget=ops_budget)
    vals = raw * host.scale(f.m, f.n - len(s), exact)
    vals = np.asarray(vals, dtype=object if exact else np.float64)
    return Profile(S=s, values=vals, host_n=host.n, mode=mode)


# -- subdivided-clique fast path ----------------------------------------------------------


def hom_subdivided_clique(k: int, g: Graph) -> int:
    """hom(K'_k, G) for C4-free G, where K'_k is the 1-subdivision of K_k.

    Subdivision vertices integrate to codegrees, so the count equals the sum
    over all branch-vertex k-tuples of prod_{i<j} W[x_i, x_j] with W = A^2.
    C4-freeness makes W 0/1 off the diagonal (and idempotent under repeated
    pairs): splitting tuples by coincidence pattern, Moebius-inverting the
    distinctness over the partition lattice, and expanding the off-diagonal
    relation against its sparse complement leaves only unconstrained weighted
    hom counts of graphs on <= k vertices over that complement. Those factor
    over connected components; tree parts fold by matrix-vector products,
    cycles by two-step path convolutions, denser cores by a constrained
    search. Everything is exact integer arithmetic, polynomial in |V(G)|.
    """
    if not 2 <= k <= 5:
        raise InputError("subdivided-clique counting supports 2 <= k <= 5")
    if g.has_loops():
        raise PreconditionError("host must be loopless")
    n = g.n
    a = g.adjacency_matrix(dtype=np.int64)
    w = a @ a
    off = w - np.diag(np.diagonal(w))
    if off.size and off.max() > 1:
        raise PreconditionError("host is not C4-free; the reduction does not apply")
    deg = [int(x) for x in np.diagonal(w)]
    # complement of the codegree relation, diagonal excluded
    comp = (off == 0) & ~np.eye(n, dtype=bool)
    ctx = _CompContext(
        n=n,
        deg=deg,
        adj=[np.nonzero(comp[x])[0].tolist() for x in range(n)],
        adj_sets=[frozenset(np.nonzero(comp[x])[0].tolist()) for x in range(n)],
    )

    total = 0
    for blocks in _set_partitions(list(range(k))):
        m = len(blocks)
        exps = tuple(_choose2(len(b)) for b in blocks)
        total += _distinct_offdiag_sum(m, exps, ctx)
    return total


def _choose2(x: int) -> int:
    return x * (x - 1) // 2


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


class _CompContext:
    """Per-host state for the reduction: degrees, the sparse complement
    relation, weight vectors deg**e, and a memo of component values."""

    def __init__(self, n, deg, adj, adj_sets):
        self.n = n
        self.deg = deg
        self.adj = adj
        self.adj_sets = adj_sets
        self._pows: dict[int, list[int]] = {}
        self.memo: dict[bytes, int] = {}
        self._ones = [1] * n

    def pow_vec(self, e: int) -> list[int]:
        """Shared deg**e vector; callers must not mutate it."""
        if e == 0:
            return self._ones
        if e not in self._pows:
            self._pows[e] = [d**e for d in self.deg]
        return self._pows[e]

    def matvec(self, vec: list[int]) -> list[int]:
        out = [0] * self.n
        for x, nbrs in enumerate(self.adj):
            s = 0
            for y in nbrs:
                s += vec[y]
            out[x] = s
        return out


def _distinct_offdiag_sum(m, exps, ctx):
    """Sum over distinct (y_1..y_m) of prod_b deg(y_b)^exps[b] * prod_{a<b}
    R[y_a, y_b], with R complementary to ctx's relation off the diagonal.

    Groups the 2^C(m,2) expansion subgraphs by color-respecting isomorphism
    so each shape is only evaluated once, then Moebius-inverts distinctness.
    """
    from .graphs import Graph as _G, canonical_form as _canon

    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    classes: dict[bytes, tuple[list[tuple[int, int]], int]] = {}
    for hmask in range(1 << len(pairs)):
        h_edges = [pairs[i] for i in range(len(pairs)) if hmask >> i & 1]
        key = _canon(_G(m, h_edges), colors=exps)
        if key in classes:
            classes[key] = (classes[key][0], classes[key][1] + 1)
        else:
            classes[key] = (h_edges, 1)

    total = 0
    for h_edges, mult in classes.values():
        sign = -1 if len(h_edges) % 2 else 1
        inj = 0
        for sigma in _set_partitions(list(range(m))):
            coef = 1
            block_of = {}
            for bi, block in enumerate(sigma):
                for v in block:
                    block_of[v] = bi
                if len(block) > 1:
                    coef *= (-1) ** (len(block) - 1) * math.factorial(len(block) - 1)
            qedges = set()
            loop = False
            for u, v in h_edges:
                bu, bv = block_of[u], block_of[v]
                if bu == bv:
                    loop = True  # relation is irreflexive, term vanishes
                    break
                qedges.add((min(bu, bv), max(bu, bv)))
            if loop:
                continue
            qexps = tuple(sum(exps[v] for v in block) for block in sigma)
            inj += coef * _quotient_hom(len(sigma), frozenset(qedges), qexps, ctx)
        total += sign * mult * inj
    return total


def _quotient_hom(r, edges, exps, ctx):
    """Unconstrained weighted hom count of an r-vertex shape over the
    relation; factorizes over connected components."""
    seen = [False] * r
    adj = {v: set() for v in range(r)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    total = 1
    for start in range(r):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        verts = []
        while stack:
            u = stack.pop()
            verts.append(u)
            for nb in adj[u]:
                if not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
        verts.sort()
        relabel = {v: i for i, v in enumerate(verts)}
        cedges = sorted(
            (min(relabel[u], relabel[v]), max(relabel[u], relabel[v]))
            for u, v in edges
            if u in relabel and v in relabel
        )
        cexps = tuple(exps[v] for v in verts)
        total *= _component_hom(len(verts), tuple(cedges), cexps, ctx)
        if total == 0:
            return 0
    return total


def _component_hom(r, edges, exps, ctx):
    from .graphs import Graph as _G, canonical_form as _canon

    key = _canon(_G(r, list(edges)), colors=exps)
    val = ctx.memo.get(key)
    if val is None:
        val = _component_eval(r, edges, exps, ctx)
        ctx.memo[key] = val
    return val


def _component_eval(r, edges, exps, ctx):
    if r == 1:
        return sum(ctx.pow_vec(exps[0]))
    adj = {v: set() for v in range(r)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    weights = {v: ctx.pow_vec(exps[v]) for v in range(r)}

    # fold leaves into their neighbors until only a 2-core (or one vertex) is left
    alive = set(range(r))
    while len(alive) > 1:
        leaf = next((v for v in alive if len(adj[v]) == 1), None)
        if leaf is None:
            break
        (parent,) = adj[leaf]
        folded = ctx.matvec(weights[leaf])
        wp = weights[parent]
        weights[parent] = [a * b for a, b in zip(wp, folded)]
        adj[parent].discard(leaf)
        alive.discard(leaf)

    if len(alive) == 1:
        return sum(weights[alive.pop()])
    if all(len(adj[v]) == 2 for v in alive):
        start = min(alive)
        order = [start]
        prev, cur = None, start
        while True:
            nxt = min(x for x in adj[cur] if x != prev)
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        return _cycle_hom([weights[v] for v in order], ctx)
    return _core_dfs(sorted(alive), adj, weights, ctx)


def _cycle_hom(ws, ctx):
    """Weighted hom count of a cycle; lengths 3..5 arise here."""
    length = len(ws)
    if all(w is ctx.pow_vec(0) for w in ws):
        c = np.zeros((ctx.n, ctx.n), dtype=np.int64)
        for x, nbrs in enumerate(ctx.adj):
            c[x, nbrs] = 1
        return int(np.trace(np.linalg.matrix_power(c, length)))

    def step_pairs(wmid):
        # q[(x, z)] = sum over y of rel[x,y] * wmid[y] * rel[y,z]
        q: dict[tuple[int, int], int] = {}
        for y, nbrs in enumerate(ctx.adj):
            wy = wmid[y]
            if wy == 0:
                continue
            for x in nbrs:
                for z in nbrs:
                    key = (x, z)
                    q[key] = q.get(key, 0) + wy
        return q

    if length == 3:
        q = step_pairs(ws[1])
        w0, w2 = ws[0], ws[2]
        total = 0
        for x, nbrs in enumerate(ctx.adj):
            wx = w0[x]
            if wx == 0:
                continue
            for z in nbrs:
                v = q.get((x, z))
                if v:
                    total += wx * w2[z] * v
        return total
    if length == 4:
        q1 = step_pairs(ws[1])
        q3 = step_pairs(ws[3])
        w0, w2 = ws[0], ws[2]
        total = 0
        for (x, z), v in q1.items():
            u = q3.get((x, z))
            if u:
                total += v * u * w0[x] * w2[z]
        return total
    if length == 5:
        q1 = step_pairs(ws[1])
        q3 = step_pairs(ws[3])
        w4 = ws[4]
        p3: dict[tuple[int, int], int] = {}
        for (a, y), v in q3.items():
            vw = v * w4[y]
            if vw == 0:
                continue
            for b in ctx.adj[y]:
                key = (a, b)
                p3[key] = p3.get(key, 0) + vw
        w0, w2 = ws[0], ws[2]
        total = 0
        for (x, z), v in q1.items():
            u = p3.get((z, x))
            if u:
                total += v * u * w0[x] * w2[z]
        return total
    raise AssertionError("unexpected cycle length")


def _core_dfs(verts, adj, weights, ctx):
    """Unconstrained weighted hom count of a 2-core that is not a cycle: a
    search ordered so later vertices are cut down by adjacency-set
    intersections. Repeated host vertices are allowed; the irreflexive
    relation itself rules them out on adjacent positions."""
    order = [verts[0]]
    placed = {verts[0]}
    while len(order) < len(verts):
        nxt = max(
            (v for v in verts if v not in placed),
            key=lambda v: (len(adj[v] & placed), -v),
        )
        order.append(nxt)
        placed.add(nxt)
    pos = {p: i for i, p in enumerate(order)}
    reqs = [[q for q in adj[p] if pos[q] < pos[p]] for p in order]
    wvecs = [weights[p] for p in order]
    depth = len(order)
    adj_sets = ctx.adj_sets
    assign = [0] * depth
    total = 0

    def rec(i, weight):
        nonlocal total
        rq = reqs[i]
        if not rq:
            candidates = range(ctx.n)
        elif len(rq) == 1:
            candidates = ctx.adj[assign[pos[rq[0]]]]
        else:
            sets = sorted((adj_sets[assign[pos[q]]] for q in rq), key=len)
            candidates = sets[0].intersection(*sets[1:])
        wv = wvecs[i]
        for y in candidates:
            wy = wv[y]
            if wy == 0:
                continue
            assign[i] = y
            if i + 1 == depth:
                total += weight * wy
            else:
                rec(i + 1, weight * wy)

    rec(0, 1)
    return total
