"""How many local functions does an influence graph allow?

A node with d single-sign inputs admits one function per monotone Boolean
function of d variables (the Dedekind number). Bounding the number of DNF
clauses shrinks that space.
"""

from bnsynth import InfluenceGraph, candidate_count, enumerate_local_candidates
from bnsynth.candidates import candidate_space_size

for d in range(7):
    print(f"d={d}: {candidate_count(d):>9} monotone functions, {candidate_count(d, 2):>5} with at most 2 clauses")

# A node with inputs a (positive), b (negative) and c (either sign).
names = ("a", "b", "c", "t")
g = InfluenceGraph(4, {(0, 3), (2, 3)}, {(1, 3), (2, 3)}, names)
cands = list(enumerate_local_candidates(3, g, k=1))
print(f"\n{len(cands)} single-clause candidates for t:")
for c in cands:
    print("  t :=", c.render(names))

print("\ncandidate networks for the whole graph:", candidate_space_size(g))
