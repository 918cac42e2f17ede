"""Polarity graphs of the projective plane PG(2, q).

Points of PG(2, q) are joined when their coordinate dot product vanishes, so
the adjacency matrix A is symmetric with A^2 = qI + J. Points orthogonal to
themselves ("absolute" points, exactly q+1 of them) carry loops. Removing
them leaves a C4-free graph on q^2 vertices in which every edge lies in
exactly one triangle, which is what the rest of the package consumes as a
dense C4-free host family.

Field arithmetic is table-driven: one table pair per supported q, generated
from a hard-coded irreducible polynomial and verified against the field
axioms at construction time (a reducible polynomial fails the inverse axiom,
so irreducibility never needs a separate proof).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import InputError, PreconditionError
from .graphs import Graph, is_c4_free

# reduction polynomials, coefficients low degree first, monic
_IRREDUCIBLE: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),        # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),     # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),        # x^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1 over GF(2)
    25: (2, 0, 1),       # x^2 + 2 over GF(5)
    27: (1, 2, 0, 1),    # x^3 + 2x + 1 over GF(3)
}

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)

SUPPORTED_Q = frozenset(_PRIMES) | frozenset(_IRREDUCIBLE)


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in (2, 3, 5):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                break
            return p, k
    raise InputError(f"unsupported field size {q}; supported: {sorted(SUPPORTED_Q)}")


@dataclass(frozen=True)
class FieldSpec:
    """GF(q) with exhaustive operation tables.

    Elements are integers 0..q-1 encoding base-p digit strings, read as
    coefficients of a polynomial over GF(p) (lowest degree first). For prime
    q this is plain modular arithmetic.
    """

    q: int
    p: int
    k: int
    add_table: np.ndarray
    mul_table: np.ndarray

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def dot(self, u: tuple[int, int, int], v: tuple[int, int, int]) -> int:
        s = 0
        for a, b in zip(u, v):
            s = self.add(s, self.mul(a, b))
        return s

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    if q not in SUPPORTED_Q:
        raise InputError(f"unsupported field size {q}; supported: {sorted(SUPPORTED_Q)}")
    if q in _PRIMES:
        p, k, poly = q, 1, None
    else:
        p, k = _factor_prime_power(q)
        poly = _IRREDUCIBLE[q]
    add, mul = _build_tables(q, p, k, poly)
    err = _field_axiom_failure(add, mul)
    if err is not None:
        raise RuntimeError(f"field table for q={q} violates axioms: {err}")
    return FieldSpec(q=q, p=p, k=k, add_table=add, mul_table=mul)


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _build_tables(q: int, p: int, k: int, poly: Optional[tuple[int, ...]]) -> tuple[np.ndarray, np.ndarray]:
    add = np.zeros((q, q), dtype=np.int16)
    mul = np.zeros((q, q), dtype=np.int16)
    if k == 1:
        for a in range(q):
            for b in range(q):
                add[a, b] = (a + b) % q
                mul[a, b] = (a * b) % q
        return add, mul
    assert poly is not None and len(poly) == k + 1 and poly[k] == 1
    for a in range(q):
        da = _digits(a, p, k)
        for b in range(q):
            db = _digits(b, p, k)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            # reduce modulo the monic polynomial
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg]
                if c:
                    prod[deg] = 0
                    for j in range(k):
                        prod[deg - k + j] = (prod[deg - k + j] - c * poly[j]) % p
            mul[a, b] = _undigits(prod[:k], p)
    return add, mul


def _field_axiom_failure(add: np.ndarray, mul: np.ndarray) -> Optional[str]:
    """None if (0..q-1, add, mul) is a field, else a short description."""
    q = add.shape[0]
    idx = np.arange(q)
    if not np.array_equal(add, add.T):
        return "addition not commutative"
    if not np.array_equal(mul, mul.T):
        return "multiplication not commutative"
    if not np.array_equal(add[0], idx):
        return "0 is not the additive identity"
    if not np.array_equal(mul[1], idx):
        return "1 is not the multiplicative identity"
    if not np.array_equal(mul[0], np.zeros(q, dtype=mul.dtype)):
        return "0 does not annihilate"
    # associativity via full q^3 comparison
    if not np.array_equal(add[add], add[:, add]):
        return "addition not associative"
    if not np.array_equal(mul[mul], mul[:, mul]):
        return "multiplication not associative"
    lhs = mul[:, add]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    if not np.array_equal(lhs, rhs):
        return "distributivity fails"
    if not all((add[a] == 0).any() for a in range(q)):
        return "missing additive inverse"
    if not all((mul[a] == 1).any() for a in range(1, q)):
        return "missing multiplicative inverse (reduction polynomial reducible?)"
    return None


# -- construction ---------------------------------------------------------------


@dataclass(frozen=True)
class PolarityGraph:
    """The polarity graph pair for one field size.

    g0 lives on all q^2+q+1 projective points and carries a loop at each
    absolute point; loopless is the induced subgraph on the q^2 non-absolute
    points, relabeled to 0..q^2-1 in the same canonical point order.
    """

    q: int
    g0: Graph
    loopless: Graph
    point_labels: tuple[tuple[int, int, int], ...]
    absolute: tuple[int, ...]
    loopless_labels: tuple[tuple[int, int, int], ...]

    @property
    def n(self) -> int:
        return self.g0.n

    def loop_deleted(self) -> Graph:
        """g0 with its loop edges dropped; all q^2+q+1 points kept.

        Distinct from `loopless`, which also removes the absolute points.
        """
        return Graph(self.n, [e for e in self.g0.edges if e[0] != e[1]])


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Canonical representatives, first nonzero coordinate scaled to 1,
    enumerated in lexicographic order of (x, y, z)."""
    pts: list[tuple[int, int, int]] = [(0, 0, 1)]
    pts += [(0, 1, z) for z in range(q)]
    pts += [(1, y, z) for y in range(q) for z in range(q)]
    return sorted(pts)


@lru_cache(maxsize=None)
def build_polarity(q: int) -> PolarityGraph:
    f = field(q)
    pts = projective_points(q)
    n = len(pts)
    assert n == q * q + q + 1
    coords = np.array(pts, dtype=np.int64)
    # pairwise dot products through the field tables, vectorized
    prod = f.mul_table[coords[:, None, :], coords[None, :, :]]
    dots = f.add_table[f.add_table[prod[:, :, 0], prod[:, :, 1]], prod[:, :, 2]]
    iu, ju = np.nonzero(np.triu(dots == 0))
    edges = [(int(a), int(b)) for a, b in zip(iu, ju)]
    g0 = Graph(n, edges, allow_loops=True)
    absolute = tuple(int(v) for v in np.nonzero(np.diagonal(dots) == 0)[0])
    keep = [v for v in range(n) if v not in set(absolute)]
    loopless = g0.subgraph(keep)
    assert not loopless.has_loops()
    return PolarityGraph(
        q=q,
        g0=g0,
        loopless=loopless,
        point_labels=tuple(pts),
        absolute=absolute,
        loopless_labels=tuple(pts[v] for v in keep),
    )


# -- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class PolarityReport:
    q: int
    checks: dict[str, bool]
    details: dict[str, str]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "schema": "c4count.polarity-report.v1",
            "q": self.q,
            "passed": self.passed,
            "checks": dict(self.checks),
            "details": dict(self.details),
        }


def verify_polarity(pol: PolarityGraph) -> PolarityReport:
    """Exact structural checks on a polarity pair; failures are reported,
    never raised."""
    q = pol.q
    g0, ll = pol.g0, pol.loopless
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}

    def record(name: str, ok: bool, detail: str = ""):
        checks[name] = bool(ok)
        if not ok and detail:
            details[name] = detail

    a = g0.adjacency_matrix(dtype=np.int64)
    want = q * np.eye(g0.n, dtype=np.int64) + np.ones((g0.n, g0.n), dtype=np.int64)
    sq = a @ a
    record("square_identity", np.array_equal(sq, want), "A^2 != qI + J")

    # same fact, independent route: bitset codegrees
    bad = None
    for u in range(g0.n):
        bu = g0.bitrow(u)
        for v in range(u + 1, g0.n):
            if (bu & g0.bitrow(v)).bit_count() != 1:
                bad = (u, v)
                break
        if bad:
            break
    record("unique_common_neighbor", bad is None, f"pair {bad}" if bad else "")

    loops = sum(1 for u, v in g0.edges if u == v)
    record("loop_count", loops == q + 1, f"{loops} loops, expected {q + 1}")
    record(
        "regularity",
        set(g0.degrees()) == {q + 1},
        f"degree values {sorted(set(g0.degrees()))}",
    )
    record("loopless_vertex_count", ll.n == q * q, f"{ll.n} vertices, expected {q * q}")
    record("loopless_c4_free", is_c4_free(ll))

    bad_edge = None
    for u, v in ll.sorted_edges():
        common = (ll.bitrow(u) & ll.bitrow(v)).bit_count()
        if common != 1:
            bad_edge = (u, v, common)
            break
    record(
        "unique_triangle",
        bad_edge is None,
        f"edge ({bad_edge[0]}, {bad_edge[1]}) in {bad_edge[2]} triangles" if bad_edge else "",
    )

    # degree profile of the loopless graph: q-1/q/q+1, except that for even q
    # the pole of the absolute line is isolated (its whole polar line is
    # absolute), giving exactly one degree-0 vertex
    degs = sorted(ll.degrees())
    if q % 2 == 0:
        ok = degs[0] == 0 and degs[1] > 0 and set(degs[1:]) <= {q - 1, q, q + 1}
    else:
        ok = set(degs) <= {q - 1, q, q + 1}
    record("loopless_degree_range", ok, f"degree values {sorted(set(degs))}")

    return PolarityReport(q=q, checks=checks, details=details)


# -- triangle breaking ------------------------------------------------------------


def unique_triangle_list(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles, in lexicographic vertex order.

    Requires every edge to lie in exactly one triangle; rejects otherwise
    with a witness edge. Under that hypothesis triangles are pairwise
    edge-disjoint and there are |E|/3 of them.
    """
    if g.has_loops():
        raise PreconditionError("triangle enumeration expects a loopless graph")
    tris = set()
    for u, v in g.sorted_edges():
        common = g.bitrow(u) & g.bitrow(v)
        cnt = common.bit_count()
        if cnt != 1:
            raise PreconditionError(
                f"edge ({u}, {v}) lies in {cnt} triangles; need exactly one per edge"
            )
        w = common.bit_length() - 1
        tris.add(tuple(sorted((u, v, w))))
    out = sorted(tris)
    assert 3 * len(out) == g.m
    return out


def triangle_break(g: Graph, seed: int) -> Graph:
    """Delete one uniformly chosen edge from each triangle.

    Requires the unique-triangle property, which makes the triangles
    edge-disjoint, so the result is triangle-free with exactly 2|E|/3 edges.
    Deterministic for a fixed seed: triangles are visited in lexicographic
    order and one of the 3 edges is drawn per triangle.
    """
    tris = unique_triangle_list(g)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    drop = set()
    for a, b, c in tris:
        pick = int(rng.integers(3))
        edge = ((a, b), (a, c), (b, c))[pick]
        drop.add(edge)
    kept = [e for e in g.sorted_edges() if e not in drop]
    out = Graph(g.n, kept)
    assert out.m * 3 == 2 * g.m
    return out
