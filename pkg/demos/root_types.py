"""
Root types of real binary octics
================================

Every nonzero octic has a root type: the multiplicities of its real roots
and of its complex-conjugate pairs.  This script classifies a few forms,
lists all 55 types by dimension and writes the degeneration order as DOT.
"""

from fractions import Fraction

from gl2struct.binform import BinaryForm, GL2Element, gl2_act
from gl2struct.roottype import (
    RootType,
    classify_exact,
    classify_numeric,
    degeneration_graph,
    enumerate_types,
    poset_to_dot,
    sample_representative,
    witness_edge,
)

# x^4 (x^2 + y^2)^2 in binomial coordinates (v_-8, v_-6, ..., v_8)
v = BinaryForm(8, (1, 0, Fraction(1, 14), 0, Fraction(1, 70), 0, 0, 0, 0))
print("form:", v)
print("exact:", classify_exact(v), " numeric:", classify_numeric(v, 1e-8))

# the type does not change under GL(2)
g = GL2Element.of(2, 1, -1, 3)
print("after g:", classify_exact(gl2_act(g, v)))

# all types, grouped by dimension = number of distinct roots + 1
types = enumerate_types()
print(f"\n{len(types) - 1} nontrivial types")
for dim in range(9, -1, -1):
    row = [rt.label for rt in types if rt.dimension == dim]
    if row:
        print(f"  dim {dim}: {' '.join(row)}")

# each cover relation comes with a one-parameter family whose limit
# classifies numerically to the lower type
graph = degeneration_graph()
upper, lower = next(iter(graph.edges))
w = witness_edge(upper, lower)
print(f"\nedge {upper} -> {lower}: path {[t.label for t in w.path_types]}, limit {w.limit_type}")
print("representative of {6,[1,1]}:", sample_representative(RootType.parse("{6,[1,1]}")).expand())

with open("root_types.dot", "w") as fh:
    fh.write(poset_to_dot(graph))
print(f"wrote root_types.dot ({graph.number_of_edges()} edges)")
