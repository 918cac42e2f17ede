"""Homomorphism counting: one DP, two host conventions, exact when asked.

A pattern F is counted in a host through tensor contraction along a
low-width elimination order. Hosts come in two flavors:

  DenseHost    a symmetric matrix with entries in [0,1], used as-is;
               the adjacency matrix gives plain homomorphism counts
  SparseHost   a hard graph G read as c*sqrt(n)*G, the scaling under
               which C4-free hosts imitate dense ones

Everything can run in exact rational arithmetic, checked here against an
independent brute-force enumerator.

Run: python3 demos/02_hom_densities.py
"""

from fractions import Fraction

import numpy as np

from c4count.graphs import Graph, cycle, star
from c4count.homcount import (
    DenseHost,
    SparseHost,
    VertexWeights,
    hom_brute,
    hom_weighted,
)
from c4count.polarity import build_polarity

g = build_polarity(3).loopless  # 9 vertices, C4-free
adjacency = DenseHost(g.adjacency_matrix(dtype=np.float64))

print("plain counts on the q=3 polarity host (exact mode, raw DP sum):")
for name, f, closed in [
    ("single vertex", Graph(1, []), g.n),
    ("single edge", Graph(2, [(0, 1)]), 2 * g.m),
    ("3-star", star(3), sum(d**3 for d in g.degrees())),
    ("5-cycle", cycle(5), hom_brute(cycle(5), g)),
]:
    raw = int(hom_weighted(f, adjacency, mode="exact").raw)
    print(f"  hom({name:13s}) = {raw:>6}  closed form / brute: {closed:>6}")

# vertex weights restrict where pattern vertices may land; indicators
# reproduce the "rooted" counts the counting inequality quantifies over
half = VertexWeights.indicators(g.n, {0: range(0, 5)})
restricted = hom_weighted(cycle(5), adjacency, weights=half, mode="exact").raw
print(f"\nC5 with vertex 0 confined to 5 of 9 host vertices: {restricted}"
      f" (brute: {hom_brute(cycle(5), g, a_sets={0: range(0, 5)})})")

# the sparse convention: g = c*sqrt(n)*G, density normalized by n^|V(F)|
sparse = SparseHost(g, Fraction(1, 2))
val = hom_weighted(cycle(4), sparse, mode="exact")
print(f"\nt(C4, (1/2)*sqrt(n)*G) = {val.value} (raw sum {val.raw})")

# exactness has one boundary: an odd edge count brings in sqrt(n), which is
# rational only for square n. n = 9 works; the raw sum is always exact.
edge = Graph(2, [(0, 1)])
print(f"t(K2, ...) on n=9: {hom_weighted(edge, sparse, mode='exact').value}")

pol5 = SparseHost(build_polarity(5).loopless, Fraction(1, 2))  # n = 25, square
print(f"t(K2, ...) on n=25: {hom_weighted(edge, pol5, mode='exact').value}")
