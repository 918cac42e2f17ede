import dataclasses
import itertools

import numpy as np
import pytest

from c4count.errors import InputError, PreconditionError
from c4count.graphs import Graph, cycle, complete, girth, isomorphic, path_graph
from c4count.polarity import (
    SUPPORTED_Q,
    PolarityGraph,
    _build_tables,
    _field_axiom_failure,
    build_polarity,
    field,
    projective_points,
    triangle_break,
    unique_triangle_list,
    verify_polarity,
)

ODD_Q = sorted(q for q in SUPPORTED_Q if q % 2 == 1)
EVEN_Q = sorted(q for q in SUPPORTED_Q if q % 2 == 0)


def brute_polarity_prime(q):
    """Independent construction for prime q using plain modular arithmetic."""
    pts = set()
    for vec in itertools.product(range(q), repeat=3):
        if vec == (0, 0, 0):
            continue
        lead = next(x for x in vec if x)
        inv = pow(lead, q - 2, q)
        pts.add(tuple((x * inv) % q for x in vec))
    pts = sorted(pts)
    idx = {p: i for i, p in enumerate(pts)}
    edges = set()
    for pa in pts:
        for pb in pts:
            if idx[pa] <= idx[pb] and sum(x * y for x, y in zip(pa, pb)) % q == 0:
                edges.add((idx[pa], idx[pb]))
    return pts, edges


class TestField:
    def test_supported_sizes_construct(self):
        for q in sorted(SUPPORTED_Q):
            f = field(q)
            assert f.q == q and f.add_table.shape == (q, q)

    @pytest.mark.parametrize("bad", [1, 6, 10, 12, 15, 49, 0, -3])
    def test_unsupported_sizes_rejected(self, bad):
        with pytest.raises(InputError, match="unsupported"):
            field(bad)

    def test_reducible_polynomial_detected(self):
        # x^2 + 1 = (x + 1)^2 over GF(2): zero divisors, no inverse for x+1
        add, mul = _build_tables(4, 2, 2, (1, 0, 1))
        err = _field_axiom_failure(add, mul)
        assert err is not None and "inverse" in err

    def test_known_products_in_extensions(self):
        # element k encodes base-p digits of a polynomial, lowest degree first
        assert field(4).mul(2, 2) == 3  # x*x = x+1
        assert field(4).mul(2, 3) == 1  # x(x+1) = 1
        assert field(8).mul(2, 4) == 3  # x*x^2 = x+1
        assert field(9).mul(3, 3) == 2  # x*x = -1 = 2
        assert field(16).mul(2, 8) == 3  # x*x^3 = x+1
        assert field(25).mul(5, 5) == 3  # x*x = -2 = 3
        assert field(27).mul(3, 9) == 5  # x*x^2 = x+2

    def test_frobenius_fixed_points(self):
        # a^q = a for every a, a strong whole-table sanity check
        for q in sorted(SUPPORTED_Q):
            f = field(q)
            for a in range(q):
                assert f.pow(a, q) == a, (q, a)

    def test_characteristic(self):
        for q in sorted(SUPPORTED_Q):
            f = field(q)
            s = 0
            for _ in range(f.p):
                s = f.add(s, 1)
            assert s == 0


class TestBuildPolarity:
    @pytest.mark.parametrize("q", [2, 3, 5, 7])
    def test_matches_modular_bruteforce(self, q):
        pts, edges = brute_polarity_prime(q)
        pol = build_polarity(q)
        assert list(pol.point_labels) == pts
        assert set(pol.g0.edges) == edges

    def test_q2_shape(self):
        pol = build_polarity(2)
        assert pol.g0.n == 7
        assert sum(1 for u, v in pol.g0.edges if u == v) == 3
        ll = pol.loopless
        assert ll.n == 4 and ll.m == 3
        assert sorted(ll.degrees()) == [0, 2, 2, 2]
        comps = sorted(len(c) for c in ll.components())
        assert comps == [1, 3]

    def test_q3_shape(self):
        pol = build_polarity(3)
        assert pol.g0.n == 13
        assert sum(1 for u, v in pol.g0.edges if u == v) == 4
        assert set(pol.g0.degrees()) == {4}

    def test_loopless_vertex_count_every_q(self):
        for q in sorted(SUPPORTED_Q):
            pol = build_polarity(q)
            assert pol.g0.n == q * q + q + 1
            assert pol.loopless.n == q * q
            assert len(pol.absolute) == q + 1

    def test_point_labels_canonical(self):
        for q in [2, 3, 4, 9]:
            pts = projective_points(q)
            assert len(pts) == q * q + q + 1
            assert len(set(pts)) == len(pts)
            for p in pts:
                lead = next(x for x in p if x)
                assert lead == 1

    def test_absolute_points_self_orthogonal(self):
        for q in [2, 3, 4, 5, 9]:
            pol = build_polarity(q)
            f = field(q)
            absolute = set(pol.absolute)
            for v, lab in enumerate(pol.point_labels):
                assert (f.dot(lab, lab) == 0) == (v in absolute)

    def test_spectrum_small(self):
        for q in [2, 3, 5]:
            a = build_polarity(q).g0.adjacency_matrix(dtype=np.float64)
            ev = np.sort(np.linalg.eigvalsh(a))
            assert abs(ev[-1] - (q + 1)) < 1e-9
            assert np.max(np.abs(np.abs(ev[:-1]) - np.sqrt(q))) < 1e-9


class TestVerifyPolarity:
    def test_q5_all_pass(self):
        rep = verify_polarity(build_polarity(5))
        assert rep.passed, rep.details
        assert set(rep.checks) == {
            "square_identity",
            "unique_common_neighbor",
            "loop_count",
            "regularity",
            "loopless_vertex_count",
            "loopless_c4_free",
            "unique_triangle",
            "loopless_degree_range",
        }

    def test_edge_deletion_breaks_square_identity(self):
        pol = build_polarity(3)
        victim = next(e for e in pol.g0.sorted_edges() if e[0] != e[1])
        broken = Graph(
            pol.g0.n,
            [e for e in pol.g0.edges if e != victim],
            allow_loops=True,
        )
        rep = verify_polarity(dataclasses.replace(pol, g0=broken))
        assert not rep.checks["square_identity"]
        assert not rep.checks["unique_common_neighbor"]

    def test_q2_unique_triangle_counts(self):
        pol = build_polarity(2)
        rep = verify_polarity(pol)
        assert rep.checks["unique_triangle"]
        tris = unique_triangle_list(pol.loopless)
        assert len(tris) == 1 and pol.loopless.m == 3

    def test_degree_report(self):
        for q in [3, 5, 7, 9, 11]:
            ll = build_polarity(q).loopless
            assert set(ll.degrees()) <= {q - 1, q, q + 1}
            assert sum(ll.degrees()) == 2 * ll.m
        for q in [2, 4, 8, 16]:
            degs = sorted(build_polarity(q).loopless.degrees())
            assert degs.count(0) == 1
            assert set(degs[1:]) <= {q - 1, q, q + 1}

    def test_report_json_shape(self):
        d = verify_polarity(build_polarity(2)).as_dict()
        assert d["schema"].startswith("c4count.")
        assert d["passed"] is True and isinstance(d["checks"], dict)


class TestTriangleBreak:
    def test_single_triangle_gives_path(self):
        for seed in range(5):
            out = triangle_break(cycle(3), seed)
            assert isomorphic(out, path_graph(3))

    def test_polarity11_seed42(self):
        import networkx as nx

        g = build_polarity(11).loopless
        out = triangle_break(g, 42)
        assert 3 * out.m == 2 * g.m
        h = nx.Graph(out.sorted_edges())
        assert sum(nx.triangles(h).values()) == 0
        assert girth(out) >= 4

    def test_deterministic(self):
        g = build_polarity(5).loopless
        assert triangle_break(g, 7) == triangle_break(g, 7)
        assert triangle_break(g, 0) != triangle_break(g, 1)

    def test_rejects_wrong_triangle_multiplicity(self):
        with pytest.raises(PreconditionError, match="0 triangles"):
            triangle_break(cycle(5), 0)
        with pytest.raises(PreconditionError, match="2 triangles"):
            triangle_break(complete(4), 0)
