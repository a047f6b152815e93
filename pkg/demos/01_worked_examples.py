"""Most permissive dynamics of a three-node network.

f1 = !x2, f2 = !x1, f3 = !x1 & x2. We evaluate it, compute smallest
(constrained) trap spaces, decide reachability, and list attractors, then
repeat a few queries on the variant g1 = 1, g2 = x1 & x3, g3 = !x2.
"""

from pathlib import Path

from bnsynth import attractors, influence_graph_of, is_fixpoint, is_reachable, smallest_constrained_trap_space
from bnsynth.files import load_model

DATA = Path(__file__).parent / "data"

f = load_model(DATA / "three_node.json")
print(f.render())
print("f(000) =", f("000"))

# Fixpoints are configurations mapped onto themselves.
print("fixpoints:", [x for x in ("000", "001", "010", "011", "100", "101", "110", "111") if is_fixpoint(f, x)])

# The smallest trap space containing 010 frees x3 only.
print("trap space of 010:", smallest_constrained_trap_space(f, "010"))
# Locking x1 (index 0) keeps it at 1 while x2 gets freed.
print("{x1}-constrained trap space of 110:", smallest_constrained_trap_space(f, "110", locked={0}))

for x, y in [("000", "111"), ("110", "000"), ("000", "110"), ("010", "100")]:
    print(f"{x} ->* {y}:", is_reachable(f, x, y))

print("attractors of f:", [str(a) for a in attractors(f)])
g = influence_graph_of(f)
print("signed influences:", g.edges())

h = load_model(DATA / "three_node_variant.json")
print()
print(h.render())
print("011 ->* 000:", is_reachable(h, "011", "000"))
print("001 ->* 010:", is_reachable(h, "001", "010"))
print("attractors of g:", [str(a) for a in attractors(h)])
