"""Bundled graph corpus with expected certification verdicts.

Every named example graph ships with the verdict the search must reproduce
at default budgets, and the showcase entries additionally carry a bundled
certificate file that is re-verified on each run. run_corpus is the single
regression sweep over all of it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import networkx as nx

from .certify import (
    DEFAULT_COUNTABLE_BUDGET,
    load_certificate_document,
    search_countable,
    search_tame,
    verify_countable_cert,
    verify_tame_cert,
)
from .errors import InputError
from .graphs import Graph, complete, cycle, dodecahedron, isomorphic, petersen, subdivide

__all__ = [
    "CorpusEntry",
    "CorpusSummary",
    "builtin_corpus",
    "figure_stage",
    "pentagon_bowtie",
    "pentagon_chain",
    "run_corpus",
]


# -- the figure graphs -----------------------------------------------------------


def pentagon_chain(k: int) -> Graph:
    """k pentagons in a row, consecutive ones sharing an edge."""
    if k < 1:
        raise InputError("need at least one pentagon")
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    a, b = 2, 3
    n = 5
    for _ in range(k - 1):
        edges += [(a, n), (n, n + 1), (n + 1, n + 2), (n + 2, b)]
        a, b = n, n + 2
        n += 3
    return Graph(n, edges)


def pentagon_bowtie() -> Graph:
    """Two 5-cycles sharing exactly one vertex."""
    es = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    es += [(0, 5), (5, 6), (6, 7), (7, 8), (8, 0)]
    return Graph(9, es)


_FIGURE_STAGES = [
    [(0, 1), (1, 2), (2, 3), (3, 0)],
    [(0, 6), (6, 5), (5, 4), (4, 1)],
    [(2, 8), (8, 7), (7, 4)],
    [(0, 11), (11, 10), (10, 9), (9, 3)],
    [(2, 12), (12, 13), (13, 9)],
]


def figure_stage(i: int) -> Graph:
    """Stage i (1-based) of the growing example: a 4-cycle, then one new
    path of >= 3 edges attached per stage. Every stage is tame."""
    if not 1 <= i <= len(_FIGURE_STAGES):
        raise InputError(f"stages run 1..{len(_FIGURE_STAGES)}")
    edges = [e for stage in _FIGURE_STAGES[:i] for e in stage]
    return Graph(max(max(e) for e in edges) + 1, edges)


# -- entries ---------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    """One graph with its expected verdict.

    kind selects the search ("countable" or "tame"); certificate_file names
    a bundled JSON certificate re-verified during the run, for the showcase
    entries. note says where the graph comes from.
    """

    name: str
    kind: str
    graph: Graph
    expected: str
    note: str = ""
    certificate_file: Optional[str] = None


def _tree_entries() -> list[CorpusEntry]:
    out = []
    for n in range(2, 11):
        for i, t in enumerate(nx.nonisomorphic_trees(n)):
            g = Graph(n, [tuple(e) for e in t.edges()])
            out.append(
                CorpusEntry(
                    name=f"tree-{n}-{i}",
                    kind="countable",
                    graph=g,
                    expected="certified",
                    note="tree; certified by pendant peeling alone",
                )
            )
    return out


def builtin_corpus() -> list[CorpusEntry]:
    entries = []
    for ell in range(5, 13):
        entries.append(
            CorpusEntry(
                name=f"c{ell}-countable",
                kind="countable",
                graph=cycle(ell),
                expected="certified",
                note=f"{ell}-cycle",
                certificate_file=f"c{ell}-countable.json" if ell <= 8 else None,
            )
        )
    entries += [
        CorpusEntry(
            "pentagon-chain-2",
            "countable",
            pentagon_chain(2),
            "certified",
            "two pentagons sharing an edge (the paired-pentagon connector graph)",
            "pentagon-chain-2.json",
        ),
        CorpusEntry(
            "pentagon-chain-3",
            "countable",
            pentagon_chain(3),
            "certified",
            "three pentagons in a row sharing edges",
            "pentagon-chain-3.json",
        ),
        CorpusEntry(
            "pentagon-bowtie",
            "countable",
            pentagon_bowtie(),
            "certified",
            "two pentagons sharing one vertex",
            "pentagon-bowtie.json",
        ),
        CorpusEntry(
            "c3-refuted", "countable", cycle(3), "refuted_girth", "triangle: girth 3"
        ),
        CorpusEntry(
            "c4-refuted", "countable", cycle(4), "refuted_girth", "4-cycle: girth 4"
        ),
        CorpusEntry(
            "k4-refuted", "countable", complete(4), "refuted_girth", "contains triangles"
        ),
        CorpusEntry(
            "c4-pendant-refuted",
            "countable",
            Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]),
            "refuted_girth",
            "a 4-cycle survives inside any supergraph",
        ),
        CorpusEntry(
            "petersen",
            "countable",
            petersen(),
            "unknown",
            "open whether countable; the search must not decide it",
        ),
        CorpusEntry(
            "dodecahedron",
            "countable",
            dodecahedron(),
            "unknown",
            "open whether countable; the search must not decide it",
        ),
    ]
    for ell in range(3, 13):
        entries.append(
            CorpusEntry(
                name=f"c{ell}-tame",
                kind="tame",
                graph=cycle(ell),
                expected="certified",
                note=f"{ell}-cycle; all cycles are tame",
            )
        )
    for i in range(1, 6):
        entries.append(
            CorpusEntry(
                name=f"figure-stage-{i}",
                kind="tame",
                graph=figure_stage(i),
                expected="certified",
                note="incremental example: one new path of >= 3 edges per stage",
                certificate_file=f"figure-stage-{i}.json",
            )
        )
    entries += [
        CorpusEntry(
            "k4-subdivision",
            "tame",
            subdivide(complete(4)),
            "certified",
            "1-subdivision of K4; tame only through the axiom table",
            "k4-subdivision.json",
        ),
        CorpusEntry(
            "k23-tame-unknown",
            "tame",
            Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
            "unknown",
            "K_{2,3}: no reverse rule applies, and it is in fact not tame",
        ),
        CorpusEntry(
            "petersen-tame-unknown",
            "tame",
            petersen(),
            "unknown",
            "no leaf and no internal 3-path to unwind",
        ),
    ]
    entries += _tree_entries()
    return entries


# -- the sweep -------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusSummary:
    total: int
    failures: tuple[tuple[str, str, str], ...]  # (entry, expected, got)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"corpus: {self.total - len(self.failures)}/{self.total} entries reproduced"]
        for name, expected, got in self.failures:
            out.append(f"  FAIL {name}: expected {expected}, got {got}")
        return out


def _load_bundled(name: str) -> dict:
    ref = resources.files("c4count").joinpath("corpus_data", name)
    try:
        text = ref.read_text()
    except FileNotFoundError:
        raise InputError(f"bundled corpus file missing: {name}")
    return json.loads(text)


def _check_entry(entry: CorpusEntry, budget: int) -> Optional[str]:
    """The observed verdict string, or a descriptive failure; None = pass."""
    if entry.kind == "countable":
        got = search_countable(entry.graph, budget=budget).status
    elif entry.kind == "tame":
        got = "certified" if search_tame(entry.graph) is not None else "unknown"
    else:
        raise InputError(f"entry {entry.name}: unknown kind {entry.kind!r}")
    if got != entry.expected:
        return got
    if entry.certificate_file is not None:
        f, kind, cert = load_certificate_document(_load_bundled(entry.certificate_file))
        if kind != entry.kind or not isomorphic(f, entry.graph):
            return "bundled certificate targets a different graph"
        valid = (
            verify_countable_cert(f, cert)
            if kind == "countable"
            else verify_tame_cert(f, cert)
        )
        if not valid:
            return "bundled certificate failed verification"
    return None


def run_corpus(
    entries: Optional[list[CorpusEntry]] = None,
    budget: int = DEFAULT_COUNTABLE_BUDGET,
) -> CorpusSummary:
    """Reproduce every expected verdict and re-verify bundled certificates."""
    if entries is None:
        entries = builtin_corpus()
    failures = []
    for entry in entries:
        got = _check_entry(entry, budget)
        if got is not None:
            failures.append((entry.name, entry.expected, got))
    return CorpusSummary(total=len(entries), failures=tuple(failures))
