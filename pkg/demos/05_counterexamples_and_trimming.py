"""Why the hypotheses are there: counterexamples, and two proof steps.

Three small experiments that probe the boundary of the counting
inequality, plus the two lemma-level checks the proofs lean on.

Run: python3 demos/05_counterexamples_and_trimming.py
"""

from fractions import Fraction

from c4count.graphs import Graph, RootedPattern, path_graph
from c4count.harness import c4_counterexample, triangle_counterexample, trim, truncation_check
from c4count.polarity import build_polarity

# C4 itself is not countable: confine its four vertices to the four
# quarters of a C4-free host and the sparse side dies while the dense side
# stays bounded away from zero. No eps can bridge that.
rep = c4_counterexample(7)
print(f"C4, quartered indicators on the q=7 host (n={rep.n}):")
print(f"  sparse side: {rep.sparse_hom} (host verified C4-free: {rep.c4_free_checked})")
print(f"  dense side:  {rep.dense_density} ~ {float(rep.dense_density):.4f}")

# triangles: each polarity edge lies in exactly one triangle, so deleting
# one edge per triangle kills them all while keeping ~2/3 of the edges;
# the damaged host still has small discrepancy but zero triangle count
rep = triangle_counterexample(7, seed=1)
print(f"\ntriangle deletion at q=7: {rep.edges_before} -> {rep.edges_after} edges, "
      f"hom(C3) = {rep.triangle_hom}")
print(f"  dense side stays {rep.dense_density}, observed discrepancy only "
      f">= {rep.disc_lower:.4f}")

# trimming: hosts are only required to have max degree <= 2 sqrt(n) after
# dropping heavy vertices; the error made is controlled pair by pair
base = build_polarity(7).loopless
planted = Graph(base.n + 1, list(base.edges) + [(v, base.n) for v in range(base.n)])
rep = trim(planted, pairs=500, seed=0)
print(f"\nplanting a universal vertex into the q=7 host and trimming:")
print(f"  removed vertices {rep.trimmed}, kept {rep.kept_size} of {planted.n}")
print(f"  per-pair error chain holds: {rep.chain_holds}; "
      f"|trimmed| <= delta*n: {rep.size_bound_holds} (delta = {rep.size_bound_delta:.4f})")

# truncation: a connector profile (here the 2-path seen from its endpoints)
# can be cut at height 1/delta losing at most delta * (its square integral),
# and the square integral is exactly the glued pattern's density
j = RootedPattern(path_graph(3), (0, 2))
rep = truncation_check(j, build_polarity(3).loopless, Fraction(1, 10), c=Fraction(1, 2))
print(f"\n2-path profile on the q=3 host, delta = {rep.delta} ({rep.mode} mode):")
print(f"  integral {rep.full_integral} = kept {rep.kept_integral} + removed {rep.removed_mass}")
print(f"  removed <= delta * square: {rep.markov_holds} "
      f"(square = glued density = {rep.square_integral})")
print(f"  square <= 1 so the cut is affordable: {rep.bounded_holds}")
