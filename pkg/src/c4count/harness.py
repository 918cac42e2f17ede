"""Numerical experiments around the counting machinery.

Five instruments, all reporting rather than proving:

  * discrepancy against a reference host: a certified spectral upper bound
    and a local-search lower bound with an explicit witness pair;
  * counting-lemma gap measurements between a scaled sparse host and a dense
    reference, over three reproducible weight families;
  * two exact counterexample constructions on polarity hosts (the 4-cycle
    quarters and the broken-triangle host) showing why girth <= 4 patterns
    admit no one-sided counting lemma;
  * degree trimming to the 2*sqrt(n) cap, with the inequality chain that
    justifies it checked on sampled set pairs;
  * the truncation step for connector profiles: tail mass <= delta * second
    moment <= delta, in exact rationals whenever the scaling permits.

Every randomized routine takes an integer seed and derives all of its
randomness from numpy SeedSequence streams, so reports are reproducible
bit for bit.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .certify import search_countable
from .errors import InputError, PreconditionError, ResourceLimitError
from .graphs import Graph, RootedPattern, format_edge_list, glue, is_c4_free
from .homcount import (
    DenseHost,
    SparseHost,
    VertexWeights,
    hom_weighted,
    partial_profile,
    truncate_profile,
)
from .polarity import build_polarity

__all__ = [
    "SCHEMA_TAG",
    "DiscrepancyEstimate",
    "GapTrial",
    "GapReport",
    "C4CounterexampleReport",
    "TriangleCounterexampleReport",
    "TrimReport",
    "TruncationReport",
    "constant_host",
    "partition_host",
    "discrepancy_spectral",
    "discrepancy_search",
    "counting_experiment",
    "c4_counterexample",
    "triangle_break",
    "triangle_counterexample",
    "trim",
    "truncation_check",
]

SCHEMA_TAG = "c4count/harness-report/1"

# dense n x n eigensolves get slow and memory-hungry beyond this
_SPECTRAL_MAX_N = 10_000

# node budget for the advisory countability label on experiment patterns
_LABEL_BUDGET = 50_000


def _host_descriptor(h: DenseHost) -> dict:
    m = h.matrix
    if m.size and np.all(m == m.flat[0]):
        return {"n": h.n, "kind": "constant", "value": float(m.flat[0])}
    digest = hashlib.sha256(np.ascontiguousarray(m).tobytes()).hexdigest()
    return {"n": h.n, "kind": "matrix", "sha256": digest}


def _num(x: Union[int, float, Fraction]) -> Union[int, float, str]:
    """JSON-safe scalar: Fractions go through str to stay exact."""
    if isinstance(x, Fraction):
        return str(x)
    return x


# -- reference hosts ------------------------------------------------------------


def constant_host(g: Graph) -> DenseHost:
    """The all-hbar host with hbar = min(1, dbar/sqrt(n)), dbar = 2|E|/n.

    This is the dense object whose edge count matches g under the two
    normalizations e_G/n^{3/2} and e_H/n^2, clipped into [0,1].
    """
    n = g.n
    if n == 0:
        return DenseHost(np.zeros((0, 0)))
    hbar = min(1.0, 2 * g.m / n / math.sqrt(n))
    return DenseHost.constant(n, hbar)


def partition_host(g: Graph, parts: Sequence[Sequence[int]]) -> DenseHost:
    """Normalized edge-density host of a vertex partition.

    H(x, y) = min(1, sqrt(n) * e_G(P(x), P(y)) / (|P(x)| * |P(y)|)), constant
    on blocks; parts must be disjoint, nonempty, and cover V.
    """
    n = g.n
    block = [-1] * n
    for i, part in enumerate(parts):
        if len(part) == 0:
            raise InputError(f"part {i} is empty")
        for v in part:
            if not 0 <= v < n:
                raise InputError(f"part {i} names vertex {v}, out of range")
            if block[v] != -1:
                raise InputError(f"vertex {v} appears in two parts")
            block[v] = i
    if any(b == -1 for b in block):
        raise InputError("parts must cover every vertex")

    k = len(parts)
    sizes = np.array([len(p) for p in parts], dtype=np.int64)
    adj = g.adjacency_matrix(dtype=np.int64)
    ind = np.zeros((n, k), dtype=np.int64)
    for v, b in enumerate(block):
        ind[v, b] = 1
    counts = ind.T @ adj @ ind  # e_G(P_i, P_j), ordered pairs
    dens = np.minimum(1.0, math.sqrt(n) * counts / np.outer(sizes, sizes))
    matrix = dens[np.ix_(block, block)]
    return DenseHost(matrix)


# -- discrepancy -----------------------------------------------------------------


@dataclass(frozen=True)
class DiscrepancyEstimate:
    """One-sided views of the discrepancy sup |e_G(A,B)/n^{3/2} - e_H(A,B)/n^2|.

    upper comes from the spectral bound, lower from search; each operation
    fills its own side and leaves the other None. host_h records what H was.
    """

    upper: Optional[float]
    lower: Optional[float]
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    host_h: DenseHost

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "discrepancy",
            "upper": self.upper,
            "lower": self.lower,
            "witness": None if self.witness is None else [list(s) for s in self.witness],
            "host": _host_descriptor(self.host_h),
        }


def discrepancy_spectral(g: Graph) -> DiscrepancyEstimate:
    """Certified upper bound on the discrepancy against the constant host.

    With dbar = 2|E|/n and lam = ||A - (dbar/n) J||_2, every pair satisfies
    |e_G(A,B) - (dbar/n)|A||B|| <= lam * sqrt(|A||B|) <= lam * n, so
    delta <= lam/sqrt(n) under the e_G/n^{3/2} normalization.
    """
    if g.has_loops():
        raise PreconditionError("spectral bound expects a loopless graph")
    n = g.n
    if n > _SPECTRAL_MAX_N:
        raise ResourceLimitError(
            f"dense eigensolve refused for n={n} > {_SPECTRAL_MAX_N}"
        )
    if n == 0:
        return DiscrepancyEstimate(upper=0.0, lower=None, witness=None, host_h=constant_host(g))
    dbar = 2 * g.m / n
    a = g.adjacency_matrix(dtype=np.float64)
    shifted = a - (dbar / n) * np.ones((n, n))
    lam = float(np.max(np.abs(np.linalg.eigvalsh(shifted))))
    return DiscrepancyEstimate(
        upper=lam / math.sqrt(n),
        lower=None,
        witness=None,
        host_h=constant_host(g),
    )


def _pair_gap(g_adj: np.ndarray, h: DenseHost, a: np.ndarray, b: np.ndarray) -> float:
    """|e_G(A,B)/n^{3/2} - e_H(A,B)/n^2| evaluated directly at the pair."""
    n = h.n
    eg = int(g_adj[np.ix_(a, b)].sum())
    eh = float(h.matrix[np.ix_(a, b)].sum())
    return abs(eg / n**1.5 - eh / n**2)


def discrepancy_search(
    g: Graph, h: DenseHost, iters: int = 20, seed: int = 0
) -> DiscrepancyEstimate:
    """Lower bound on the discrepancy by alternating greedy maximization.

    Each restart draws a random (A, B), then repeatedly rebuilds one side
    from the per-vertex margins sqrt(n)*e_G(A,{y}) - e_H(A,{y}) (both signs
    tried) until the pair stops moving. iters = 0 skips the optimization and
    reports the gap at the seeded initial pair. The returned value is an
    exact re-evaluation at the witness, so it is a true lower bound.
    """
    if h.n != g.n:
        raise InputError(f"host has {h.n} vertices, graph has {g.n}")
    n = g.n
    if n == 0:
        return DiscrepancyEstimate(upper=None, lower=0.0, witness=((), ()), host_h=h)
    adj = g.adjacency_matrix(dtype=np.int64)
    sqrt_n = math.sqrt(n)
    rng = np.random.default_rng(np.random.SeedSequence(seed))

    def margins(mask: np.ndarray) -> np.ndarray:
        # sqrt(n) e_G(mask, {y}) - e_H(mask, {y}) for every y
        return sqrt_n * (adj @ mask) - h.matrix @ mask

    best_val = -1.0
    best_pair = None
    restarts = iters if iters > 0 else 1
    for _ in range(restarts):
        a0 = rng.random(n) < 0.5
        b0 = rng.random(n) < 0.5
        candidates = [(a0, b0)]
        if iters > 0:
            for sign in (1.0, -1.0):
                a, b = a0.copy(), b0.copy()
                for _ in range(100):
                    new_b = sign * margins(a.astype(np.float64)) > 0
                    new_a = sign * margins(new_b.astype(np.float64)) > 0
                    if np.array_equal(new_a, a) and np.array_equal(new_b, b):
                        break
                    a, b = new_a, new_b
                candidates.append((a, b))
        for a, b in candidates:
            ai = np.flatnonzero(a)
            bi = np.flatnonzero(b)
            val = _pair_gap(adj, h, ai, bi)
            if val > best_val:
                best_val = val
                best_pair = (tuple(int(x) for x in ai), tuple(int(x) for x in bi))
    return DiscrepancyEstimate(upper=None, lower=best_val, witness=best_pair, host_h=h)


# -- counting-lemma gap experiment --------------------------------------------------


@dataclass(frozen=True)
class GapTrial:
    alpha: str
    t_sparse: float
    t_dense: float
    gap: float


@dataclass(frozen=True)
class GapReport:
    """Per-trial densities t^alpha(F, c*sqrt(n)*G) vs t^alpha(F, H).

    gap = t_sparse - t_dense; a one-sided counting lemma promises
    gap >= -eps, so min_gap is the quantity of interest. countable_label is
    advisory only (the experiment runs regardless of certification).
    """

    pattern_vertices: int
    pattern_edges: int
    c: Fraction
    seed: int
    countable_label: str
    trials: tuple[GapTrial, ...]
    min_gap: float

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "counting_gap",
            "pattern": {"vertices": self.pattern_vertices, "edges": self.pattern_edges},
            "c": _num(self.c),
            "seed": self.seed,
            "countable_label": self.countable_label,
            "trials": [
                {"alpha": t.alpha, "t_sparse": t.t_sparse, "t_dense": t.t_dense, "gap": t.gap}
                for t in self.trials
            ],
            "min_gap": self.min_gap,
        }


def _alpha_for_trial(
    f: Graph, host_n: int, index: int, rng: np.random.Generator
) -> tuple[str, VertexWeights]:
    """Trial 0 is the constant-1 weight; afterwards indicator draws and
    i.i.d. uniform draws alternate. All three families are deterministic in
    (seed, index)."""
    if index == 0:
        return "ones", VertexWeights.ones(host_n)
    if index % 2 == 1:
        # random pairwise-disjoint indicator sets, one per pattern vertex
        perm = rng.permutation(host_n)
        blocks = host_n // f.n if f.n else 0
        sets = {v: perm[v * blocks : (v + 1) * blocks].tolist() for v in range(f.n)}
        return f"indicators[{index}]", VertexWeights.indicators(host_n, sets)
    arrays = {v: rng.random(host_n) for v in range(f.n)}
    return f"uniform[{index}]", VertexWeights(host_n, arrays)


def counting_experiment(
    f: Graph,
    g: Graph,
    h: DenseHost,
    c: Union[Fraction, float] = Fraction(1, 1),
    trials: int = 9,
    seed: int = 0,
) -> GapReport:
    """Measure t^alpha(F, c*sqrt(n)*G) - t^alpha(F, H) over sampled weights.

    The default c = 1 is the raw normalization hom / n^{|V|-|E|/2} of the
    counting inequality itself; c = 1/2 is the post-trimming convention
    used by the profile machinery. Only the sparse side depends on c.
    """
    if trials < 1:
        raise InputError("need at least one trial")
    if h.n != g.n:
        raise InputError(f"host has {h.n} vertices, graph has {g.n}")
    c = Fraction(c)
    if c <= 0:
        raise InputError(f"scale c must be positive, got {c}")
    # the sparse-host type only admits c <= 1/2 (row sums under control);
    # larger c is a plain rescaling of the same DP value
    sparse = SparseHost(g, Fraction(1, 2))
    rescale = float((2 * c) ** f.m)
    try:
        label = search_countable(f, budget=_LABEL_BUDGET).status
    except PreconditionError:
        label = "unchecked"

    ss = np.random.SeedSequence(seed)
    streams = [np.random.default_rng(child) for child in ss.spawn(trials)]
    rows = []
    for i in range(trials):
        alpha_name, weights = _alpha_for_trial(f, g.n, i, streams[i])
        t_sparse = rescale * float(hom_weighted(f, sparse, weights=weights).value)
        t_dense = float(hom_weighted(f, h, weights=weights).value)
        rows.append(
            GapTrial(alpha=alpha_name, t_sparse=t_sparse, t_dense=t_dense, gap=t_sparse - t_dense)
        )
    return GapReport(
        pattern_vertices=f.n,
        pattern_edges=f.m,
        c=Fraction(c),
        seed=seed,
        countable_label=label,
        trials=tuple(rows),
        min_gap=min(r.gap for r in rows),
    )


# -- exact counterexamples ------------------------------------------------------------


@dataclass(frozen=True)
class C4CounterexampleReport:
    """Indicator-weighted C4 counts: 0 in the C4-free host, positive dense side."""

    q: int
    n: int
    quarter: int
    sparse_hom: int
    dense_density: Fraction
    c4_free_checked: bool

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "c4_counterexample",
            "q": self.q,
            "n": self.n,
            "quarter": self.quarter,
            "sparse_hom": self.sparse_hom,
            "dense_density": _num(self.dense_density),
            "dense_density_float": float(self.dense_density),
            "c4_free_checked": self.c4_free_checked,
        }


def _c4_hom_disjoint(g: Graph, quarters: Sequence[Sequence[int]]) -> int:
    """hom(C4, g) with the i-th cycle vertex confined to quarters[i].

    Exact integer arithmetic: sum over x2 in Q2, x4 in Q4 of
    |N(x2) cap N(x4) cap Q1| * |N(x2) cap N(x4) cap Q3|.
    """
    adj = g.adjacency_matrix(dtype=np.int64)
    q1, q2, q3, q4 = (np.asarray(sorted(q), dtype=np.int64) for q in quarters)
    common_1 = adj[q1][:, q2].T @ adj[q1][:, q4]  # |N(x2) cap N(x4) cap Q1|
    common_3 = adj[q3][:, q2].T @ adj[q3][:, q4]
    return int((common_1 * common_3).sum())


def c4_counterexample(q: int) -> C4CounterexampleReport:
    """The quartered-C4 refutation of a two-sided counting lemma.

    On the loopless polarity graph the indicator-constrained C4 count is
    exactly 0 (no C4 exists at all, which is checked), while the all-1 dense
    host gives floor(n/4)^4 / n^4; no eps below that value can make the
    dense-to-sparse direction of the counting inequality hold.
    """
    g = build_polarity(q).loopless
    if not is_c4_free(g):
        raise PreconditionError(f"polarity({q}) loopless graph failed the C4-freeness check")
    n = g.n
    k = n // 4
    quarters = [list(range(i * k, (i + 1) * k)) for i in range(4)]
    sparse = _c4_hom_disjoint(g, quarters)
    return C4CounterexampleReport(
        q=q,
        n=n,
        quarter=k,
        sparse_hom=sparse,
        dense_density=Fraction(k, n) ** 4,
        c4_free_checked=True,
    )


def _triangles_unique_per_edge(g: Graph) -> list[tuple[int, int, int]]:
    """The triangle list, verifying every edge lies in exactly one triangle."""
    adj = g.adjacency_matrix(dtype=np.int64)
    codeg = adj @ adj
    triangles = set()
    for u, v in g.edges:
        if codeg[u, v] != 1:
            raise PreconditionError(
                f"edge ({u}, {v}) lies in {int(codeg[u, v])} triangles, need exactly 1"
            )
        w = int(np.flatnonzero(adj[u] & adj[v])[0])
        triangles.add(tuple(sorted((u, v, w))))
    assert 3 * len(triangles) == g.m
    return sorted(triangles)


def triangle_break(g: Graph, seed: int = 0) -> Graph:
    """Delete one seeded-random edge from each triangle of an edge-disjoint
    triangle cover, leaving a triangle-free graph with exactly 2|E|/3 edges."""
    triangles = _triangles_unique_per_edge(g)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    drop = set()
    for a, b, c in triangles:
        u, v = [(a, b), (a, c), (b, c)][int(rng.integers(3))]
        drop.add((u, v))
    return Graph(g.n, [e for e in g.sorted_edges() if e not in drop])


@dataclass(frozen=True)
class TriangleCounterexampleReport:
    """Triangle counts in the broken host vs the all-2/3 dense side."""

    q: int
    n: int
    seed: int
    edges_before: int
    edges_after: int
    triangle_hom: int
    dense_density: Fraction
    disc_lower: float
    disc_witness: tuple[tuple[int, ...], tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "triangle_counterexample",
            "q": self.q,
            "n": self.n,
            "seed": self.seed,
            "edges_before": self.edges_before,
            "edges_after": self.edges_after,
            "triangle_hom": self.triangle_hom,
            "dense_density": _num(self.dense_density),
            "dense_density_float": float(self.dense_density),
            "disc_lower": self.disc_lower,
            "disc_witness": [list(s) for s in self.disc_witness],
        }


def triangle_counterexample(q: int, seed: int = 0) -> TriangleCounterexampleReport:
    """Break every triangle of the loopless polarity graph; the result has
    hom(C3, G') = 0 while the all-2/3 host keeps density (2/3)^3 = 8/27.

    A discrepancy-search lower bound against that host is attached to show
    the broken graph plausibly stays discrepancy-close, so the failure is
    attributable to the pattern (girth 3), not to a bad host pair.
    """
    g = build_polarity(q).loopless
    broken = triangle_break(g, seed=seed)
    adj = broken.adjacency_matrix(dtype=np.int64)
    triangle_hom = int(np.trace(np.linalg.matrix_power(adj, 3)))
    dense = DenseHost.constant(broken.n, 2 / 3)
    disc = discrepancy_search(broken, dense, iters=8, seed=seed)
    return TriangleCounterexampleReport(
        q=q,
        n=broken.n,
        seed=seed,
        edges_before=g.m,
        edges_after=broken.m,
        triangle_hom=triangle_hom,
        dense_density=Fraction(8, 27),
        disc_lower=disc.lower,
        disc_witness=disc.witness,
    )


# -- trimming ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrimReport:
    """Result of trimming to max degree 2*sqrt(n), with proof-step checks.

    g_trimmed keeps all n vertices but only edges inside S = {v : deg^2 <= 4n}.
    chain_holds verifies, per sampled (A, B) pair and for (trimmed, V):
    |sqrt(n) e_G'(A,B) - e_H(A,B)| is at most
    |sqrt(n) e_G(A&S, B&S) - e_H(A&S, B&S)| + (|A\\S| + |B\\S|) * n.
    size_bound_holds verifies |V \\ S| <= delta_at_pair * n at (V\\S, V).
    """

    g_trimmed: Graph
    trimmed: tuple[int, ...]
    kept_size: int
    pairs_checked: int
    chain_holds: bool
    size_bound_delta: float
    size_bound_holds: bool
    seed: int

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "trim",
            "trimmed": list(self.trimmed),
            "kept_size": self.kept_size,
            "pairs_checked": self.pairs_checked,
            "chain_holds": self.chain_holds,
            "size_bound_delta": self.size_bound_delta,
            "size_bound_holds": self.size_bound_holds,
            "seed": self.seed,
            "g_trimmed": format_edge_list(self.g_trimmed),
        }


def trim(
    g: Graph, h: Optional[DenseHost] = None, pairs: int = 200, seed: int = 0
) -> TrimReport:
    """Drop every edge touching a vertex of degree above 2*sqrt(n).

    The report certifies the two displays that make trimming harmless for
    discrepancy purposes: the per-pair chain (on `pairs` sampled pairs plus
    the canonical pair), and |trimmed| <= delta * n evaluated at the pair
    (trimmed set, V).
    """
    if h is None:
        h = constant_host(g)
    if h.n != g.n:
        raise InputError(f"host has {h.n} vertices, graph has {g.n}")
    n = g.n
    degs = g.degrees()
    in_s = np.array([degs[v] * degs[v] <= 4 * n for v in range(n)], dtype=bool)
    trimmed = tuple(int(v) for v in np.flatnonzero(~in_s))
    g2 = Graph(n, [e for e in g.edges if in_s[e[0]] and in_s[e[1]]])

    adj = g.adjacency_matrix(dtype=np.int64)
    adj2 = g2.adjacency_matrix(dtype=np.int64)
    sqrt_n = math.sqrt(n)
    rng = np.random.default_rng(np.random.SeedSequence(seed))

    def e_graph(m: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
        return int(m[np.ix_(a, b)].sum())

    def e_host(a: np.ndarray, b: np.ndarray) -> float:
        return float(h.matrix[np.ix_(a, b)].sum())

    def chain_ok(a_mask: np.ndarray, b_mask: np.ndarray) -> bool:
        a = np.flatnonzero(a_mask)
        b = np.flatnonzero(b_mask)
        a_in = np.flatnonzero(a_mask & in_s)
        b_in = np.flatnonzero(b_mask & in_s)
        lhs = abs(sqrt_n * e_graph(adj2, a, b) - e_host(a, b))
        rhs = abs(sqrt_n * e_graph(adj, a_in, b_in) - e_host(a_in, b_in))
        spill = (len(a) - len(a_in)) + (len(b) - len(b_in))
        return lhs <= rhs + spill * n

    ok = True
    if n:
        for _ in range(pairs):
            if not chain_ok(rng.random(n) < 0.5, rng.random(n) < 0.5):
                ok = False
                break
        if not chain_ok(~in_s, np.ones(n, dtype=bool)):
            ok = False

    # |trimmed| <= delta * n at the pair (trimmed, V): each trimmed vertex
    # contributes > 2 sqrt(n) sparse edges but at most n dense mass
    if n and trimmed:
        tr = np.asarray(trimmed, dtype=np.int64)
        full = np.arange(n)
        delta = abs(
            e_graph(adj, tr, full) / n**1.5 - e_host(tr, full) / n**2
        )
    else:
        delta = 0.0
    return TrimReport(
        g_trimmed=g2,
        trimmed=trimmed,
        kept_size=n - len(trimmed),
        pairs_checked=pairs if n else 0,
        chain_holds=ok,
        size_bound_delta=delta,
        size_bound_holds=len(trimmed) <= delta * n,
        seed=seed,
    )


# -- profile truncation -------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationReport:
    """The Markov step for connector profiles.

    removed_mass is the integral of the profile restricted to values above
    1/delta; the chain is removed_mass <= delta * square_integral <= delta.
    The second inequality is exactly the hypothesis t(J glued with J) <= 1,
    whose density is reported as glue_density (it equals square_integral).
    """

    ends: tuple[int, ...]
    delta: Fraction
    c: Fraction
    mode: str
    full_integral: Union[float, Fraction]
    kept_integral: Union[float, Fraction]
    removed_mass: Union[float, Fraction]
    square_integral: Union[float, Fraction]
    glue_density: Union[float, Fraction]
    markov_holds: bool
    bounded_holds: bool
    hypothesis_failed: bool

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "truncation",
            "ends": list(self.ends),
            "delta": _num(self.delta),
            "c": _num(self.c),
            "mode": self.mode,
            "full_integral": _num(self.full_integral),
            "kept_integral": _num(self.kept_integral),
            "removed_mass": _num(self.removed_mass),
            "square_integral": _num(self.square_integral),
            "glue_density": _num(self.glue_density),
            "markov_holds": self.markov_holds,
            "bounded_holds": self.bounded_holds,
            "hypothesis_failed": self.hypothesis_failed,
        }


def truncation_check(
    j: RootedPattern,
    g: Graph,
    delta: Union[Fraction, float, str],
    c: Union[Fraction, float] = Fraction(1, 2),
) -> TruncationReport:
    """Check the tail bound for the end-pinned profile of a connector.

    Computes the profile of j over its ends on the scaled host c*sqrt(n)*G,
    then verifies removed-tail <= delta * second-moment <= delta. Exact
    rationals are used whenever the edge parity or a square host size
    permits; otherwise float64 with the mode recorded.
    """
    if len(j.ends) > 2:
        raise InputError("truncation check supports at most 2 ends")
    delta = Fraction(delta)
    if delta <= 0:
        raise InputError("delta must be positive")
    host = SparseHost(g, c)

    glued = glue(j)
    glue_density = hom_weighted(glued, host, mode="exact").value  # even edge count
    hypothesis_failed = glue_density > 1

    mode = "exact"
    try:
        profile = partial_profile(j.pattern, j.ends, host, mode="exact")
    except PreconditionError:
        # odd edge count over a non-square host: the scale is irrational
        mode = "float"
        profile = partial_profile(j.pattern, j.ends, host, mode="float")
    full = profile.integral()
    square = profile.square_integral()

    threshold = 1 / delta if mode == "exact" else float(1 / delta)
    kept = truncate_profile(profile, threshold).integral()
    removed = full - kept
    markov = removed <= delta * square
    bounded = delta * square <= delta
    return TruncationReport(
        ends=j.ends,
        delta=delta,
        c=Fraction(c),
        mode=mode,
        full_integral=full,
        kept_integral=kept,
        removed_mass=removed,
        square_integral=square,
        glue_density=glue_density,
        markov_holds=markov,
        bounded_holds=bounded,
        hypothesis_failed=hypothesis_failed,
    )
