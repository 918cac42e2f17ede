"""Derivation certificates for tameness and countability.

Tameness is derived by replaying two rules from an edgeless base (or a named
axiom): attach a pendant edge, or join two existing vertices by a 3-edge path
whose middle vertices are new (the two vertices may coincide, closing a
triangle).  Countability is derived from edgeless bases by pendant edges and
by islands-and-bridges decompositions: vertex-disjoint countable islands, all
but the last also tame, joined edge-disjointly by connectors whose ends are
independent and whose self-gluings are tame.

Searches run the rules in reverse and are memoized by canonical form; they
return replay-verified certificates and never a false positive.  "Refuted"
is issued only for girth at most 4; the 2-density screen and the empirical
growth fit are advisory.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import Optional, Sequence, Union

import numpy as np

from .errors import InputError, PreconditionError, ResourceLimitError
from .graphs import (
    Graph,
    RootedPattern,
    canonical_copy,
    canonical_form,
    complete,
    complete_bipartite,
    cycle,
    edgeless,
    girth,
    girth_witness,
    glue,
    is_c4_free,
    star,
    subdivide,
    two_density_violation,
)
from .homcount import SparseHost, hom_subdivided_clique, hom_weighted
from .polarity import build_polarity

__all__ = [
    "PendantEdge",
    "ThreePath",
    "TameCertificate",
    "EdgelessBase",
    "Pendant",
    "SubgraphRef",
    "IslandPart",
    "ConnectorPart",
    "IslandsBridges",
    "CountableCertificate",
    "Verdict",
    "TAME_AXIOMS",
    "replay_tame",
    "verify_tame_cert",
    "search_tame",
    "replay_countable",
    "check_countable_cert",
    "verify_countable_cert",
    "search_countable",
    "GrowthRow",
    "GrowthReport",
    "refute_tame_empirical",
    "compute_scale_constant",
    "tame_cert_to_json",
    "tame_cert_from_json",
    "countable_cert_to_json",
    "countable_cert_from_json",
    "certificate_document",
    "load_certificate_document",
]

DEFAULT_TAME_BUDGET = 50_000
DEFAULT_COUNTABLE_BUDGET = 1_000_000
_MAX_VERTICES = 32

# optional ceiling on memo-table entries (keys across all tables); None means
# unbounded.  Set via the C4COUNT_MEMO_CAP environment variable by the CLI.
# Canonicalized subsearches make results independent of what got cached, so
# capping only affects speed, never verdicts.
MEMO_CAP: Optional[int] = None


def _memo_store(table: dict, key, value) -> None:
    if MEMO_CAP is not None and len(table) >= MEMO_CAP and key not in table:
        return
    table[key] = value


# -- tame certificates --------------------------------------------------------


@dataclass(frozen=True)
class PendantEdge:
    """Attach a new leaf to the vertex `attach` of the current graph."""

    attach: int


@dataclass(frozen=True)
class ThreePath:
    """Join u and v by a 3-edge path through two new vertices.

    u == v closes a triangle through u.
    """

    u: int
    v: int


TameStep = Union[PendantEdge, ThreePath]


@dataclass(frozen=True)
class TameCertificate:
    """A replayable tameness derivation.

    base is either the vertex count of an edgeless starting graph or the name
    of an axiom-table entry.  Step indices refer to the replay graph as it
    stands when the step is applied.  vertex_map, when present, sends each
    replay index to a vertex of the graph the derivation was found for; it is
    a reading aid and plays no part in verification, which always goes
    through canonical forms (so a certificate stays valid for any relabeling
    of its target).
    """

    base: Union[int, str]
    steps: tuple[TameStep, ...] = ()
    vertex_map: Optional[tuple[int, ...]] = None


def _k4_subdivision() -> Graph:
    return subdivide(complete(4))


# The one non-mechanical tameness fact this module accepts.  Verification and
# search take allow_axioms=False for callers that insist on rule derivations.
TAME_AXIOMS: dict[str, Graph] = {"K4-subdivision": _k4_subdivision()}


def replay_tame(cert: TameCertificate, allow_axioms: bool = True) -> Optional[Graph]:
    """Rebuild the graph a tame certificate describes.

    Returns None when the base is an axiom that is unknown or disallowed.
    Malformed step indices raise InputError.
    """
    if isinstance(cert.base, str):
        if not allow_axioms or cert.base not in TAME_AXIOMS:
            return None
        g = TAME_AXIOMS[cert.base]
    else:
        if cert.base < 0:
            raise InputError("edgeless base size must be nonnegative")
        g = edgeless(cert.base)
    for step in cert.steps:
        if isinstance(step, PendantEdge):
            if not 0 <= step.attach < g.n:
                raise InputError(f"pendant step attaches to missing vertex {step.attach}")
            g = g.add_pendant(step.attach)
        elif isinstance(step, ThreePath):
            if not (0 <= step.u < g.n and 0 <= step.v < g.n):
                raise InputError(f"3-path step names a missing vertex ({step.u}, {step.v})")
            a, b = g.n, g.n + 1
            g = Graph(g.n + 2, list(g.edges) + [(step.u, a), (a, b), (b, step.v)])
        else:
            raise InputError(f"unknown tame step {step!r}")
    return g


def verify_tame_cert(f: Graph, cert: TameCertificate, allow_axioms: bool = True) -> bool:
    """True iff replaying the certificate yields a graph isomorphic to f."""
    g = replay_tame(cert, allow_axioms=allow_axioms)
    if g is None or g.n != f.n or g.m != f.m:
        return False
    return canonical_form(g) == canonical_form(f)


class _Exhausted(Exception):
    """Internal: the node budget ran out mid-search."""


def search_tame(
    f: Graph,
    budget: int = DEFAULT_TAME_BUDGET,
    allow_axioms: bool = True,
    memoize: bool = True,
) -> Optional[TameCertificate]:
    """Backtracking over the reverse rules: delete a leaf, or delete two
    adjacent degree-2 vertices (undoing a 3-path, triangles included).

    Returns a replay-verified certificate, or None when the rules do not
    reach an edgeless graph (or an axiom) within the budget.  Never returns
    a false certificate.
    """
    if f.has_loops():
        raise PreconditionError("tame search expects a loopless graph")
    if f.n > _MAX_VERTICES:
        raise PreconditionError(f"tame search supports at most {_MAX_VERTICES} vertices")

    axiom_canons = (
        {canonical_form(g): name for name, g in TAME_AXIOMS.items()} if allow_axioms else {}
    )
    memo: dict[bytes, bool] = {}
    counter = [budget]

    def deg_in(v: int, live: frozenset) -> int:
        return sum(1 for w in f.neighbors(v) if w in live)

    def solve(live: frozenset):
        """(base_kind, base_payload, deletions) or None; deletions listed
        outermost first (the move applied to the largest graph)."""
        order = sorted(live)
        degs = {v: deg_in(v, live) for v in order}
        if all(d == 0 for d in degs.values()):
            return ("edgeless", order, [])
        sub = f.subgraph(order)
        key = canonical_form(sub)
        name = axiom_canons.get(key)
        if name is not None:
            return ("axiom", (name, order), [])
        if memoize and memo.get(key) is False:
            return None
        counter[0] -= 1
        if counter[0] < 0:
            raise _Exhausted
        for v in order:
            if degs[v] != 1:
                continue
            u = next(w for w in f.neighbors(v) if w in live)
            got = solve(live - {v})
            if got is not None:
                got[2].insert(0, ("leaf", v, u))
                return got
        for w1, w2 in sorted(f.edges):
            if w1 not in live or w2 not in live:
                continue
            if degs[w1] != 2 or degs[w2] != 2:
                continue
            u = next(w for w in f.neighbors(w1) if w in live and w != w2)
            v = next(w for w in f.neighbors(w2) if w in live and w != w1)
            got = solve(live - {w1, w2})
            if got is not None:
                got[2].insert(0, ("path", w1, w2, u, v))
                return got
        if memoize:
            memo[key] = False
        return None

    try:
        got = solve(frozenset(range(f.n)))
    except _Exhausted:
        return None
    if got is None:
        return None
    cert = _assemble_tame(f, *got)
    if not verify_tame_cert(f, cert, allow_axioms=allow_axioms):
        raise RuntimeError("internal error: a found tame derivation failed replay")
    return cert


def _assemble_tame(f: Graph, kind: str, payload, deletions) -> TameCertificate:
    """Turn a reverse-rule trace into forward steps with a vertex map."""
    if kind == "edgeless":
        base_order = payload
        base: Union[int, str] = len(base_order)
    else:
        name, base_order = payload
        axiom = TAME_AXIOMS[name]
        iso = _find_isomorphism(axiom, f.subgraph(base_order))
        if iso is None:
            raise RuntimeError("internal error: axiom hit without an isomorphism")
        # replay index i of the axiom graph plays original vertex base_order[iso[i]]
        base_order = [base_order[iso[i]] for i in range(axiom.n)]
        base = name
    pos = {orig: i for i, orig in enumerate(base_order)}
    steps: list[TameStep] = []
    for move in reversed(deletions):
        if move[0] == "leaf":
            _, v, u = move
            steps.append(PendantEdge(attach=pos[u]))
            pos[v] = len(pos)
        else:
            _, w1, w2, u, v = move
            steps.append(ThreePath(u=pos[u], v=pos[v]))
            pos[w1] = len(pos)
            pos[w2] = len(pos)
    vertex_map = [0] * f.n
    for orig, idx in pos.items():
        vertex_map[idx] = orig
    return TameCertificate(base=base, steps=tuple(steps), vertex_map=tuple(vertex_map))


def _find_isomorphism(a: Graph, b: Graph) -> Optional[list[int]]:
    """A bijection img with img[x] adjacent iff x adjacent, or None.

    Plain backtracking with degree pruning; callers only use it on graphs
    that are already known (or strongly suspected) to be isomorphic.
    """
    if a.n != b.n or a.m != b.m:
        return None
    if sorted(a.degrees()) != sorted(b.degrees()):
        return None
    # most-anchored vertex first keeps the branching shallow
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < a.n:
        v = max(
            (x for x in range(a.n) if x not in placed),
            key=lambda x: (sum(1 for w in a.neighbors(x) if w in placed), a.degree(x), -x),
        )
        order.append(v)
        placed.add(v)
    bdeg = b.degrees()
    img = [-1] * a.n
    used = [False] * b.n

    def extend(i: int) -> bool:
        if i == a.n:
            return True
        v = order[i]
        for cand in range(b.n):
            if used[cand] or bdeg[cand] != a.degree(v):
                continue
            ok = True
            for w in order[:i]:
                if a.has_edge(v, w) != b.has_edge(cand, img[w]):
                    ok = False
                    break
            if not ok:
                continue
            img[v] = cand
            used[cand] = True
            if extend(i + 1):
                return True
            img[v] = -1
            used[cand] = False
        return False

    return img if extend(0) else None


# -- countable certificates -----------------------------------------------------


@dataclass(frozen=True)
class EdgelessBase:
    """The target is the edgeless graph on n vertices."""

    n: int


@dataclass(frozen=True)
class Pendant:
    """The target is the parent's graph plus one leaf hanging on `attach`.

    `attach` names a vertex of the parent certificate's replay graph.
    """

    parent: "CountableCertificate"
    attach: int


@dataclass(frozen=True)
class SubgraphRef:
    """A subgraph of the enclosing target, in the target's labels.

    vertices may include isolated vertices; edges must join listed vertices.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class IslandPart:
    sub: SubgraphRef
    countable: "CountableCertificate"
    # None is allowed on the last island only; the theorem exempts one island
    # from tameness.
    tame: Optional[TameCertificate]


@dataclass(frozen=True)
class ConnectorPart:
    sub: SubgraphRef
    ends: tuple[int, ...]
    countable: "CountableCertificate"
    glue_tame: TameCertificate


@dataclass(frozen=True)
class IslandsBridges:
    """An edge-disjoint split of the target into islands and connectors."""

    islands: tuple[IslandPart, ...]
    connectors: tuple[ConnectorPart, ...]


CountableCertificate = Union[EdgelessBase, Pendant, IslandsBridges]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a countability search.

    status is one of "certified", "refuted_girth", "unknown".  witness is the
    short cycle for refutations.  conjectural_flags carry advisory screens
    that never affect the status.
    """

    status: str
    certificate: Optional[CountableCertificate] = None
    witness: Optional[tuple[int, ...]] = None
    conjectural_flags: tuple[str, ...] = ()


def _sub_abstract(ref: SubgraphRef) -> tuple[Optional[Graph], Optional[str]]:
    """Relabel a subgraph reference to 0..k-1 (sorted vertex order)."""
    verts = list(ref.vertices)
    if len(set(verts)) != len(verts):
        return None, "malformed subgraph: repeated vertices"
    if any(v < 0 for v in verts):
        return None, "malformed subgraph: negative vertex"
    pos = {v: i for i, v in enumerate(sorted(verts))}
    seen = set()
    es = []
    for u, v in ref.edges:
        if u not in pos or v not in pos:
            return None, f"malformed subgraph: edge ({u}, {v}) leaves the vertex set"
        if u == v:
            return None, "malformed subgraph: loop edge"
        e = (min(u, v), max(u, v))
        if e in seen:
            return None, f"malformed subgraph: duplicate edge ({e[0]}, {e[1]})"
        seen.add(e)
        es.append((pos[u], pos[v]))
    return Graph(len(verts), es), None


def _audit(cert, allow_axioms: bool) -> tuple[Optional[Graph], Optional[str]]:
    """Recursively validate a countable certificate and rebuild its graph.

    Returns (graph, None) on success or (None, reason); the reason names the
    violated theorem condition where one applies.
    """
    if isinstance(cert, EdgelessBase):
        if cert.n < 0:
            return None, "malformed base: negative vertex count"
        return edgeless(cert.n), None

    if isinstance(cert, Pendant):
        parent, reason = _audit(cert.parent, allow_axioms)
        if reason is not None:
            return None, reason
        if not 0 <= cert.attach < parent.n:
            return None, f"pendant rule attaches to missing vertex {cert.attach}"
        return parent.add_pendant(cert.attach), None

    if not isinstance(cert, IslandsBridges):
        return None, f"unknown certificate node {type(cert).__name__}"

    if not cert.islands:
        return None, "decomposition has no islands"

    # rebuild the target from the references and make sure they cover it
    # edge-disjointly
    all_edges: set[tuple[int, int]] = set()
    covered: set[int] = set()
    parts: list[SubgraphRef] = [p.sub for p in cert.islands]
    parts += [c.sub for c in cert.connectors]
    abstracts: list[Graph] = []
    for ref in parts:
        sub, reason = _sub_abstract(ref)
        if reason is not None:
            return None, reason
        abstracts.append(sub)
        covered.update(ref.vertices)
        for u, v in ref.edges:
            e = (min(u, v), max(u, v))
            if e in all_edges:
                return None, f"edge ({e[0]}, {e[1]}) is claimed twice; the union must be edge-disjoint"
            all_edges.add(e)
    n = max(covered) + 1 if covered else 0
    if covered != set(range(n)):
        return None, "decomposition does not cover every vertex"
    target = Graph(n, all_edges)

    # condition (a): islands pairwise vertex-disjoint
    taken: set[int] = set()
    for i, part in enumerate(cert.islands):
        overlap = taken.intersection(part.sub.vertices)
        if overlap:
            return None, f"condition (a): islands share vertex {min(overlap)}"
        taken.update(part.sub.vertices)

    # condition (b): every island but the last carries a tame certificate
    for i, part in enumerate(cert.islands[:-1]):
        if part.tame is None:
            return None, f"condition (b): island {i} is not last and has no tame certificate"

    island_of = {v: i for i, part in enumerate(cert.islands) for v in part.sub.vertices}

    # condition (c): declared ends are exactly the island contacts, one per island
    for j, conn in enumerate(cert.connectors):
        contacts = sorted(v for v in conn.sub.vertices if v in island_of)
        if sorted(conn.ends) != contacts:
            return None, (
                f"condition (c): connector {j} declares ends {tuple(sorted(conn.ends))} "
                f"but meets the islands at {tuple(contacts)}"
            )
        per_island: dict[int, int] = {}
        for v in conn.ends:
            i = island_of[v]
            per_island[i] = per_island.get(i, 0) + 1
            if per_island[i] > 1:
                return None, f"condition (c): connector {j} meets island {i} more than once"

    # condition (d): connectors pairwise share at most one vertex, an end of both
    for i, j in itertools.combinations(range(len(cert.connectors)), 2):
        shared = set(cert.connectors[i].sub.vertices) & set(cert.connectors[j].sub.vertices)
        if len(shared) > 1:
            return None, f"condition (d): connectors {i} and {j} share {len(shared)} vertices"
        if shared:
            v = next(iter(shared))
            if v not in cert.connectors[i].ends or v not in cert.connectors[j].ends:
                return None, (
                    f"condition (d): connectors {i} and {j} share vertex {v} "
                    "outside their end sets"
                )

    # connector definition: ends independent, ends glue to a tame graph
    k = len(cert.islands)
    for j, conn in enumerate(cert.connectors):
        sub = abstracts[k + j]
        pos = {v: i for i, v in enumerate(sorted(conn.sub.vertices))}
        ends_abs = tuple(sorted(pos[v] for v in conn.ends))
        for a, b in itertools.combinations(ends_abs, 2):
            if sub.has_edge(a, b):
                return None, f"connector {j}: its ends are not independent"
        reason = _audit_against(conn.countable, sub, allow_axioms)
        if reason is not None:
            return None, f"connector {j} is not certified countable: {reason}"
        doubled = glue(RootedPattern(sub, ends_abs))
        if not verify_tame_cert(doubled, conn.glue_tame, allow_axioms=allow_axioms):
            return None, f"connector {j}: the glued pattern's tame certificate fails"

    # island certificates
    for i, part in enumerate(cert.islands):
        sub = abstracts[i]
        reason = _audit_against(part.countable, sub, allow_axioms)
        if reason is not None:
            return None, f"island {i} is not certified countable: {reason}"
        if part.tame is not None and not verify_tame_cert(sub, part.tame, allow_axioms=allow_axioms):
            return None, f"condition (b): island {i}'s tame certificate fails"

    return target, None


def _audit_against(cert, target: Graph, allow_axioms: bool) -> Optional[str]:
    got, reason = _audit(cert, allow_axioms)
    if reason is not None:
        return reason
    if got.n != target.n or got.m != target.m or canonical_form(got) != canonical_form(target):
        return "the replayed graph is not isomorphic to its target"
    return None


def replay_countable(cert: CountableCertificate, allow_axioms: bool = True) -> Graph:
    """Rebuild the graph a countable certificate describes; InputError if the
    certificate is structurally invalid."""
    g, reason = _audit(cert, allow_axioms)
    if reason is not None:
        raise InputError(f"invalid countable certificate: {reason}")
    return g


def check_countable_cert(
    f: Graph, cert: CountableCertificate, allow_axioms: bool = True
) -> Optional[str]:
    """None when the certificate establishes countability of f, else the
    reason it fails, naming the violated condition."""
    return _audit_against(cert, f, allow_axioms)


def verify_countable_cert(
    f: Graph, cert: CountableCertificate, allow_axioms: bool = True
) -> bool:
    return check_countable_cert(f, cert, allow_axioms) is None


# -- countability search ----------------------------------------------------------


class _SearchContext:
    """Shared node budget, memo tables, and the connector library."""

    def __init__(self, budget: int, allow_axioms: bool, memoize: bool):
        self.nodes_left = budget
        self.allow_axioms = allow_axioms
        self.memoize = memoize
        self.countable_memo: dict[bytes, Optional[CountableCertificate]] = {}
        self.tame_memo: dict[bytes, Optional[TameCertificate]] = {}
        # rooted canonical form of (connector, ends) -> (countable, glue tame)
        # or None for a checked-and-failed pair
        self.connectors: dict[bytes, Optional[tuple[CountableCertificate, TameCertificate]]] = {}

    def spend(self, amount: int = 1) -> None:
        self.nodes_left -= amount
        if self.nodes_left < 0:
            raise _Exhausted

    def tame(self, g: Graph) -> Optional[TameCertificate]:
        key = canonical_form(g)
        if self.memoize and key in self.tame_memo:
            return self.tame_memo[key]
        # search the canonical copy, so a fresh run on an isomorphic graph
        # later (memo disabled) yields the same certificate object
        cert = search_tame(canonical_copy(g), allow_axioms=self.allow_axioms)
        if self.memoize:
            _memo_store(self.tame_memo, key, cert)
        return cert


def search_countable(
    f: Graph,
    budget: int = DEFAULT_COUNTABLE_BUDGET,
    allow_axioms: bool = True,
    memoize: bool = True,
) -> Verdict:
    """Decide countability where the rules reach: girth refutation, pendant
    peeling, then islands-and-bridges decompositions over bridge-edge subsets
    in increasing size.

    The budget counts explored candidates and recursive calls, so verdicts
    are deterministic.  Exhaustion yields "unknown", never a guess.
    """
    if f.has_loops():
        raise PreconditionError("countability search expects a loopless graph")
    if f.n > _MAX_VERTICES:
        raise PreconditionError(f"countability search supports at most {_MAX_VERTICES} vertices")

    if girth(f) <= 4:
        return Verdict(status="refuted_girth", witness=girth_witness(f))

    flags: tuple[str, ...] = ()
    bad = two_density_violation(f)
    if bad is not None:
        flags = (
            "two_density: vertices "
            + ",".join(map(str, bad))
            + " span more than 2|V'|-4 edges (conjecturally not countable)",
        )

    ctx = _SearchContext(budget, allow_axioms, memoize)
    try:
        cert = _countable_search(f, ctx)
    except _Exhausted:
        cert = None
    if cert is None:
        return Verdict(status="unknown", conjectural_flags=flags)
    reason = check_countable_cert(f, cert, allow_axioms=allow_axioms)
    if reason is not None:
        raise RuntimeError(f"internal error: a found certificate failed its audit: {reason}")
    return Verdict(status="certified", certificate=cert, conjectural_flags=flags)


def _countable_search(f: Graph, ctx: _SearchContext) -> Optional[CountableCertificate]:
    if f.m == 0:
        return EdgelessBase(f.n)
    key = canonical_form(f)
    if ctx.memoize and key in ctx.countable_memo:
        return ctx.countable_memo[key]
    ctx.spend()
    # certificates are labeling-independent, so searching the canonical copy
    # keeps results identical whether or not an isomorphic subproblem was
    # answered from the memo table earlier in the run
    f = canonical_copy(f)

    degs = f.degrees()
    leaf = next((v for v in range(f.n) if degs[v] == 1), None)
    if leaf is not None:
        cert = _peel_leaf(f, leaf, ctx)
    else:
        cert = _islands_search(f, ctx)

    if ctx.memoize:
        _memo_store(ctx.countable_memo, key, cert)
    return cert


def _peel_leaf(f: Graph, leaf: int, ctx: _SearchContext) -> Optional[CountableCertificate]:
    neighbor = f.neighbors(leaf)[0]
    parent = f.without_vertices([leaf])
    parent_cert = _countable_search(parent, ctx)
    if parent_cert is None:
        return None
    # the memoized certificate may describe any isomorphic labeling, so align
    # the attachment vertex through an explicit isomorphism
    replayed, reason = _audit(parent_cert, ctx.allow_axioms)
    if reason is not None:
        raise RuntimeError(f"internal error: cached certificate is invalid: {reason}")
    iso = _find_isomorphism(parent, replayed)
    if iso is None:
        raise RuntimeError("internal error: cached certificate does not match its graph")
    attach_old = neighbor - 1 if neighbor > leaf else neighbor
    return Pendant(parent=parent_cert, attach=iso[attach_old])


def _islands_search(f: Graph, ctx: _SearchContext) -> Optional[CountableCertificate]:
    """Enumerate bridge-edge subsets by increasing size; for each, islands are
    the leftover edge-components plus chosen isolated vertices, connectors the
    bridge clusters cut at island vertices."""
    edges = f.sorted_edges()
    m = len(edges)
    connected = len(f.components()) == 1
    for size in range(0, m + 1):
        if size == 0 and connected:
            continue
        for combo in itertools.combinations(range(m), size):
            ctx.spend()
            cert = _try_bridges(f, edges, set(combo), ctx)
            if cert is not None:
                return cert
    return None


def _try_bridges(
    f: Graph, edges: list[tuple[int, int]], bridge_idx: set[int], ctx: _SearchContext
) -> Optional[CountableCertificate]:
    n = f.n
    # edge-components of the island side, via union-find over non-bridge edges
    root = list(range(n))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    island_edges: list[list[tuple[int, int]]] = []
    has_island_edge = [False] * n
    for i, (u, v) in enumerate(edges):
        if i in bridge_idx:
            continue
        has_island_edge[u] = has_island_edge[v] = True
        ru, rv = find(u), find(v)
        if ru != rv:
            root[ru] = rv
    comp_edges: dict[int, list[tuple[int, int]]] = {}
    for i, (u, v) in enumerate(edges):
        if i not in bridge_idx:
            comp_edges.setdefault(find(u), []).append((u, v))
    island_comps = [sorted(es) for _, es in sorted(comp_edges.items())]
    if len(island_comps) == 1 and len(island_comps[0]) == f.m:
        covered = {v for e in island_comps[0] for v in e}
        if len(covered) == n:
            return None  # the single island would be f itself

    forced = [v for v in range(n) if f.degree(v) == 0]
    optional = [v for v in range(n) if not has_island_edge[v] and f.degree(v) > 0]

    bridges = [edges[i] for i in sorted(bridge_idx)]
    for r in range(len(optional) + 1):
        for chosen in itertools.combinations(optional, r):
            ctx.spend()
            cert = _try_assignment(f, island_comps, forced + list(chosen), bridges, ctx)
            if cert is not None:
                return cert
    return None


def _try_assignment(
    f: Graph,
    island_comps: list[list[tuple[int, int]]],
    single_islands: list[int],
    bridges: list[tuple[int, int]],
    ctx: _SearchContext,
) -> Optional[CountableCertificate]:
    island_sets: list[set[int]] = [{v for e in es for v in e} for es in island_comps]
    island_sets += [{v} for v in single_islands]
    island_edge_lists: list[list[tuple[int, int]]] = island_comps + [[] for _ in single_islands]
    island_of: dict[int, int] = {}
    for i, vs in enumerate(island_sets):
        for v in vs:
            island_of[v] = i
    if not island_sets:
        return None

    # split the bridge edges into connector atoms: edges sharing a non-island
    # vertex must travel together
    aroot = list(range(len(bridges)))

    def afind(x: int) -> int:
        while aroot[x] != x:
            aroot[x] = aroot[aroot[x]]
            x = aroot[x]
        return x

    through: dict[int, int] = {}
    for i, (u, v) in enumerate(bridges):
        for w in (u, v):
            if w in island_of:
                continue
            if w in through:
                ra, rb = afind(through[w]), afind(i)
                if ra != rb:
                    aroot[ra] = rb
            else:
                through[w] = i
    atom_edges: dict[int, list[tuple[int, int]]] = {}
    for i in range(len(bridges)):
        atom_edges.setdefault(afind(i), []).append(bridges[i])
    atoms = [sorted(es) for _, es in sorted(atom_edges.items())]

    # every bridge-covered vertex that is not an island vertex must be internal
    # to exactly one atom; that holds by construction.  Validate the theorem's
    # structural conditions before spending budget on recursion.
    atom_vsets = [{v for e in es for v in e} for es in atoms]
    atom_ends = [sorted(v for v in vs if v in island_of) for vs in atom_vsets]
    for es, vs, ends in zip(atoms, atom_vsets, atom_ends):
        if len(es) == f.m and len(vs) == f.n:
            return None  # the connector would be f itself
        per_island: dict[int, int] = {}
        for v in ends:
            i = island_of[v]
            per_island[i] = per_island.get(i, 0) + 1
            if per_island[i] > 1:
                return None  # condition (c)
        endset = set(ends)
        for u, v in es:
            if u in endset and v in endset:
                return None  # ends must stay independent in the connector
    for i, j in itertools.combinations(range(len(atoms)), 2):
        if len(atom_vsets[i] & atom_vsets[j]) > 1:
            return None  # condition (d)

    # islands: tame all but (at most) one; the exempt island goes last
    island_graphs: list[Graph] = []
    for vs, es in zip(island_sets, island_edge_lists):
        verts = sorted(vs)
        island_graphs.append(f.edge_subgraph(es, verts))
    tame_certs = [ctx.tame(g) for g in island_graphs]
    failing = [i for i, c in enumerate(tame_certs) if c is None]
    if len(failing) > 1:
        return None
    order = [i for i in range(len(island_graphs)) if i not in failing] + failing

    parts: list[IslandPart] = []
    for i in order:
        sub_cert = _countable_search(island_graphs[i], ctx)
        if sub_cert is None:
            return None
        parts.append(
            IslandPart(
                sub=SubgraphRef(
                    vertices=tuple(sorted(island_sets[i])),
                    edges=tuple(island_edge_lists[i]),
                ),
                countable=sub_cert,
                tame=tame_certs[i],
            )
        )

    conns: list[ConnectorPart] = []
    for es, vs, ends in zip(atoms, atom_vsets, atom_ends):
        verts = sorted(vs)
        sub = f.edge_subgraph(es, verts)
        pos = {v: i for i, v in enumerate(verts)}
        ends_abs = tuple(pos[v] for v in ends)
        checked = _check_connector(sub, ends_abs, ctx)
        if checked is None:
            return None
        sub_cert, glue_cert = checked
        conns.append(
            ConnectorPart(
                sub=SubgraphRef(vertices=tuple(verts), edges=tuple(es)),
                ends=tuple(ends),
                countable=sub_cert,
                glue_tame=glue_cert,
            )
        )

    return IslandsBridges(islands=tuple(parts), connectors=tuple(conns))


def _check_connector(
    sub: Graph, ends: tuple[int, ...], ctx: _SearchContext
) -> Optional[tuple[CountableCertificate, TameCertificate]]:
    """Certify (sub, ends) as a connector, through the library cache.

    Paths with independent ends always qualify; the cache simply stores their
    certificates the first time they appear.  Anything else is checked
    directly: a countability recursion plus a tame search on the gluing.
    """
    key = canonical_form(sub, roots=ends)
    if ctx.memoize and key in ctx.connectors:
        return ctx.connectors[key]
    glue_cert = ctx.tame(glue(RootedPattern(sub, ends)))
    got: Optional[tuple[CountableCertificate, TameCertificate]] = None
    if glue_cert is not None:
        sub_cert = _countable_search(sub, ctx)
        if sub_cert is not None:
            got = (sub_cert, glue_cert)
    if ctx.memoize:
        _memo_store(ctx.connectors, key, got)
    return got


# -- empirical growth fit ---------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    q: int
    n: int
    hom: int
    ratio: float


@dataclass(frozen=True)
class GrowthReport:
    """Least-squares fit of log(hom / n^{|V|-|E|/2}) against log n over the
    loop-deleted polarity hosts.  A slope above the threshold is evidence
    against tameness; it is advisory, not a proof."""

    pattern_vertices: int
    pattern_edges: int
    rows: tuple[GrowthRow, ...]
    slope: float
    threshold: float

    @property
    def empirically_not_tame(self) -> bool:
        return self.slope > self.threshold


def refute_tame_empirical(
    f: Graph,
    q_list: Sequence[int] = (5, 7, 11, 13, 17, 19, 23),
    threshold: float = 0.2,
) -> GrowthReport:
    """Fit the growth exponent of hom(f, G_q) against the tameness benchmark.

    G_q is the polarity graph with loops deleted and every point kept.  Known
    pattern shapes (subdivided cliques, cycles, stars, K_{2,s}) use closed
    counting forms; everything else goes through the exact DP and may hit its
    ops budget at large q.
    """
    if f.has_loops():
        raise PreconditionError("growth fit expects a loopless pattern")
    if len(q_list) < 2:
        raise InputError("need at least two field sizes to fit a slope")
    counter = _pattern_counter(f)
    rows = []
    for q in q_list:
        host = build_polarity(q).loop_deleted()
        hom = counter(host)
        if hom <= 0:
            raise InputError("pattern count vanishes on the host family; no growth fit")
        ratio = float(hom) / float(host.n) ** (f.n - f.m / 2)
        rows.append(GrowthRow(q=q, n=host.n, hom=hom, ratio=ratio))
    xs = np.log([r.n for r in rows])
    ys = np.array([log(r.ratio) for r in rows])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return GrowthReport(
        pattern_vertices=f.n,
        pattern_edges=f.m,
        rows=tuple(rows),
        slope=slope,
        threshold=threshold,
    )


def _pattern_counter(f: Graph):
    """An exact hom counter specialized to the pattern's shape."""
    key = canonical_form(f) if f.n <= _MAX_VERTICES else None
    for k in range(2, 6):
        if key == canonical_form(subdivide(complete(k))):
            return lambda g, k=k: hom_subdivided_clique(k, g)
    for ell in range(3, 13):
        if key == canonical_form(cycle(ell)):
            return lambda g, ell=ell: _cycle_count(ell, g)
    for s in range(1, 9):
        if key == canonical_form(star(s)):
            return lambda g, s=s: sum(d**s for d in g.degrees())
    for s in range(2, 9):
        if key == canonical_form(complete_bipartite(2, s)):
            return lambda g, s=s: _k2s_count(s, g)
    return _make_generic_counter(f)


def _cycle_count(ell: int, g: Graph) -> int:
    # int64 closed walks are exact only while n * maxdeg^ell < 2^63
    if g.n * max(g.degrees(), default=1) ** ell >= 2**63:
        raise ResourceLimitError("cycle count would overflow the exact fast path")
    a = g.adjacency_matrix(dtype=np.int64)
    return int(np.trace(np.linalg.matrix_power(a, ell)))


def _k2s_count(s: int, g: Graph) -> int:
    a = g.adjacency_matrix(dtype=np.int64)
    codeg = a @ a
    if g.n**2 * int(codeg.max()) ** s >= 2**63:
        codeg = codeg.astype(object)
    return int((codeg**s).sum())


def _make_generic_counter(f: Graph):
    """Raw count through the marginalization DP.

    Exact rationals on hosts up to 64 vertices; beyond that the floating DP
    is used and the count is rounded, which is exact while it fits in 53
    bits.  The DP's ops budget applies and may trip at large q.
    """

    def count(g: Graph) -> int:
        host = SparseHost(g, c=Fraction(1, 2))
        if g.n <= 64:
            return int(hom_weighted(f, host, mode="exact").raw)
        return int(round(hom_weighted(f, host, mode="float").raw))

    return count


# -- per-certificate scale constant --------------------------------------------


def _collect_bounded(cert, out: list[Graph]) -> None:
    """Graphs whose scaled density the certificate needs bounded by 1: every
    island carrying a tame certificate and every glued connector, at all
    nesting depths."""
    if isinstance(cert, EdgelessBase):
        return
    if isinstance(cert, Pendant):
        _collect_bounded(cert.parent, out)
        return
    if isinstance(cert, IslandsBridges):
        for part in cert.islands:
            sub, reason = _sub_abstract(part.sub)
            if reason is not None:
                raise InputError(f"invalid countable certificate: {reason}")
            if part.tame is not None:
                out.append(sub)
            _collect_bounded(part.countable, out)
        for conn in cert.connectors:
            sub, reason = _sub_abstract(conn.sub)
            if reason is not None:
                raise InputError(f"invalid countable certificate: {reason}")
            pos = {v: i for i, v in enumerate(sorted(conn.sub.vertices))}
            ends_abs = tuple(sorted(pos[v] for v in conn.ends))
            out.append(glue(RootedPattern(sub, ends_abs)))
            _collect_bounded(conn.countable, out)
        return
    raise InputError(f"unknown certificate node {type(cert).__name__}")


def compute_scale_constant(
    cert: CountableCertificate, g: Graph, max_halvings: int = 64
) -> Fraction:
    """The largest c = 2^{-m} <= 1/2 with t(T, c*sqrt(n)*G) <= 1 for every
    tame island and glued connector appearing in the certificate.

    The comparison is exact: t <= 1 iff hom(T,G)^2 * c^{2|E_T|} * n^{|E_T|}
    <= n^{2|V_T|}, which avoids the square root.  Requires a C4-free host
    with maximum degree at most 2*sqrt(n).
    """
    if g.has_loops():
        raise PreconditionError("scale constants are defined over loopless hosts")
    if not is_c4_free(g):
        raise PreconditionError("host must be C4-free")
    n = g.n
    if n == 0:
        raise InputError("empty host")
    if max(g.degrees()) ** 2 > 4 * n:
        raise PreconditionError("host max degree exceeds 2*sqrt(n); trim it first")

    targets: list[Graph] = []
    _collect_bounded(cert, targets)
    seen: set[bytes] = set()
    constraints: list[tuple[int, int, int]] = []  # (hom, edge count, vertex count)
    host = SparseHost(g, c=Fraction(1, 2))
    for t in targets:
        key = canonical_form(t)
        if key in seen:
            continue
        seen.add(key)
        if t.m == 0:
            continue  # t(T, g) = 1 exactly, independent of c
        hom = int(hom_weighted(t, host, mode="exact").raw)
        constraints.append((hom, t.m, t.n))

    c = Fraction(1, 2)
    for _ in range(max_halvings):
        if all(h * h * c.numerator ** (2 * e) * n**e <= n ** (2 * v) * c.denominator ** (2 * e) for h, e, v in constraints):
            return c
        c = c / 2
    raise ResourceLimitError("no power-of-two scale above 2^-{0} works".format(max_halvings + 1))


# -- JSON forms -----------------------------------------------------------------

SCHEMA_TAG = "c4count/certificate/1"


def tame_cert_to_json(cert: TameCertificate) -> dict:
    steps = []
    for s in cert.steps:
        if isinstance(s, PendantEdge):
            steps.append({"rule": "pendant", "attach": s.attach})
        else:
            steps.append({"rule": "three_path", "u": s.u, "v": s.v})
    base = {"axiom": cert.base} if isinstance(cert.base, str) else cert.base
    doc: dict = {"base": base, "steps": steps}
    if cert.vertex_map is not None:
        doc["vertex_map"] = list(cert.vertex_map)
    return doc


def tame_cert_from_json(doc) -> TameCertificate:
    if not isinstance(doc, dict):
        raise InputError("tame certificate must be a JSON object")
    base = doc.get("base")
    if isinstance(base, dict):
        name = base.get("axiom")
        if not isinstance(name, str):
            raise InputError("axiom base must name the axiom")
        base_val: Union[int, str] = name
    elif isinstance(base, int) and not isinstance(base, bool):
        if base < 0:
            raise InputError("tame base size cannot be negative")
        base_val = base
    else:
        raise InputError("tame base must be an integer or an axiom object")
    raw_steps = doc.get("steps")
    if not isinstance(raw_steps, list):
        raise InputError("tame certificate needs a list of steps")
    steps: list[TameStep] = []
    for s in raw_steps:
        if not isinstance(s, dict):
            raise InputError("tame step must be a JSON object")
        rule = s.get("rule")
        if rule == "pendant":
            steps.append(PendantEdge(attach=_as_index(s.get("attach"))))
        elif rule == "three_path":
            steps.append(ThreePath(u=_as_index(s.get("u")), v=_as_index(s.get("v"))))
        else:
            raise InputError(f"unknown tame rule {rule!r}")
    vm = doc.get("vertex_map")
    vmap = None
    if vm is not None:
        if not isinstance(vm, list):
            raise InputError("vertex_map must be a list")
        vmap = tuple(_as_index(x) for x in vm)
    return TameCertificate(base=base_val, steps=tuple(steps), vertex_map=vmap)


def _as_index(x) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise InputError(f"expected a nonnegative vertex index, got {x!r}")
    return x


def _edge_pairs(items) -> tuple[tuple[int, int], ...]:
    if not isinstance(items, list):
        raise InputError("edges must be a list of pairs")
    out = []
    for e in items:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise InputError(f"bad edge entry {e!r}")
        out.append((_as_index(e[0]), _as_index(e[1])))
    return tuple(out)


def countable_cert_to_json(cert: CountableCertificate) -> dict:
    if isinstance(cert, EdgelessBase):
        return {"rule": "edgeless", "n": cert.n}
    if isinstance(cert, Pendant):
        return {
            "rule": "pendant",
            "attach": cert.attach,
            "parent": countable_cert_to_json(cert.parent),
        }
    if isinstance(cert, IslandsBridges):
        return {
            "rule": "islands_bridges",
            "islands": [
                {
                    "vertices": list(p.sub.vertices),
                    "edges": [list(e) for e in p.sub.edges],
                    "countable": countable_cert_to_json(p.countable),
                    "tame": None if p.tame is None else tame_cert_to_json(p.tame),
                }
                for p in cert.islands
            ],
            "connectors": [
                {
                    "vertices": list(c.sub.vertices),
                    "edges": [list(e) for e in c.sub.edges],
                    "ends": list(c.ends),
                    "countable": countable_cert_to_json(c.countable),
                    "glue_tame": tame_cert_to_json(c.glue_tame),
                }
                for c in cert.connectors
            ],
        }
    raise InputError(f"unknown certificate node {type(cert).__name__}")


def countable_cert_from_json(doc) -> CountableCertificate:
    if not isinstance(doc, dict):
        raise InputError("countable certificate must be a JSON object")
    rule = doc.get("rule")
    if rule == "edgeless":
        n = doc.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InputError("edgeless base needs a nonnegative vertex count")
        return EdgelessBase(n)
    if rule == "pendant":
        return Pendant(
            parent=countable_cert_from_json(doc.get("parent")),
            attach=_as_index(doc.get("attach")),
        )
    if rule == "islands_bridges":
        islands = []
        for p in doc.get("islands", []):
            if not isinstance(p, dict):
                raise InputError("island entry must be a JSON object")
            tame = p.get("tame")
            islands.append(
                IslandPart(
                    sub=SubgraphRef(
                        vertices=tuple(_as_index(v) for v in p.get("vertices", [])),
                        edges=_edge_pairs(p.get("edges", [])),
                    ),
                    countable=countable_cert_from_json(p.get("countable")),
                    tame=None if tame is None else tame_cert_from_json(tame),
                )
            )
        conns = []
        for c in doc.get("connectors", []):
            if not isinstance(c, dict):
                raise InputError("connector entry must be a JSON object")
            conns.append(
                ConnectorPart(
                    sub=SubgraphRef(
                        vertices=tuple(_as_index(v) for v in c.get("vertices", [])),
                        edges=_edge_pairs(c.get("edges", [])),
                    ),
                    ends=tuple(_as_index(v) for v in c.get("ends", [])),
                    countable=countable_cert_from_json(c.get("countable")),
                    glue_tame=tame_cert_from_json(c.get("glue_tame")),
                )
            )
        return IslandsBridges(islands=tuple(islands), connectors=tuple(conns))
    raise InputError(f"unknown countable rule {rule!r}")


def certificate_document(f: Graph, kind: str, cert) -> dict:
    """The exchange form: the target graph, the kind, and the rule tree."""
    if kind == "tame":
        tree = tame_cert_to_json(cert)
    elif kind == "countable":
        tree = countable_cert_to_json(cert)
    else:
        raise InputError(f"certificate kind must be 'tame' or 'countable', got {kind!r}")
    return {
        "schema": SCHEMA_TAG,
        "kind": kind,
        "target": {"n": f.n, "edges": [list(e) for e in f.sorted_edges()]},
        "tree": tree,
    }


def load_certificate_document(doc) -> tuple[Graph, str, Union[TameCertificate, CountableCertificate]]:
    if not isinstance(doc, dict):
        raise InputError("certificate document must be a JSON object")
    if doc.get("schema") != SCHEMA_TAG:
        raise InputError(f"unsupported certificate schema {doc.get('schema')!r}")
    target = doc.get("target")
    if not isinstance(target, dict):
        raise InputError("certificate document lacks its target graph")
    nv = target.get("n")
    if not isinstance(nv, int) or isinstance(nv, bool) or nv < 0:
        raise InputError("target needs a nonnegative vertex count")
    f = Graph(nv, _edge_pairs(target.get("edges", [])))
    kind = doc.get("kind")
    if kind == "tame":
        return f, kind, tame_cert_from_json(doc.get("tree"))
    if kind == "countable":
        return f, kind, countable_cert_from_json(doc.get("tree"))
    raise InputError(f"unknown certificate kind {kind!r}")
