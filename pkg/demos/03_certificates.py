"""Tameness and countability: searched, certified, replayed.

Tameness is shown by unwinding a graph to nothing with two reverse moves
(delete a leaf; delete the two middle vertices of an induced 3-path),
plus a small axiom table for graphs known tame by other arguments.
Countability certificates stack pendant peels on top of islands-and-bridges
decompositions. Both kinds replay deterministically, so a verdict is never
trusted from the search: the certificate is the artifact.

Run: python3 demos/03_certificates.py
"""

import json

from c4count.certify import (
    certificate_document,
    search_countable,
    search_tame,
    verify_countable_cert,
    verify_tame_cert,
)
from c4count.corpus import figure_stage, pentagon_chain, run_corpus, builtin_corpus
from c4count.graphs import complete, cycle, petersen, subdivide

print("growing a tame graph one attached path at a time:")
for i in range(1, 6):
    g = figure_stage(i)
    cert = search_tame(g)
    print(f"  stage {i}: n={g.n:>2} m={g.m:>2} tame={'yes' if cert else 'no'}")

# the K4 subdivision has no leaf and no induced 3-path between degree-2
# vertices that the moves can reach; it is tame only through the axiom table
k4s = subdivide(complete(4))
print(f"\nK4 subdivision with axioms: {search_tame(k4s) is not None}")
print(f"K4 subdivision without:     {search_tame(k4s, allow_axioms=False) is not None}")

print("\ncountability search:")
for name, g in [
    ("C3", cycle(3)),
    ("C7", cycle(7)),
    ("pentagon chain x3", pentagon_chain(3)),
    ("Petersen", petersen()),
]:
    v = search_countable(g, budget=200_000)
    extra = f" witness cycle {v.witness}" if v.witness else ""
    print(f"  {name:18s} -> {v.status}{extra}")

# certificates are plain JSON documents; corrupting one is caught on replay
chain = pentagon_chain(2)
doc = certificate_document(chain, "countable", search_countable(chain).certificate)
print(f"\nchain certificate: {len(json.dumps(doc))} bytes of JSON")
print(f"verifies: {verify_countable_cert(chain, search_countable(chain).certificate)}")
wrong = cycle(8)
print(f"against the wrong graph: {verify_countable_cert(wrong, search_countable(chain).certificate)}")

# the same machinery backs the regression corpus; run a slice of it here
slice_ = [e for e in builtin_corpus() if e.name.startswith(("c5-", "c6-", "k4-", "petersen"))]
summary = run_corpus(slice_)
print(f"\ncorpus slice: {summary.total} entries, ok={summary.ok}")
