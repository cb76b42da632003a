"""
Extremal constructions and triangle counting
============================================

"""

from triflag import (brute_min_mono, build_gex, corollary_value, goodman,
                     is_member_gn, mono_triangles, pentagon_base)

# the unique triangle-free 2-colouring of K_5: a green 5-cycle with a
# blue complement
P = pentagon_base()
print(mono_triangles(P))  # no monochromatic triangle in any colour

# blow the pentagon up to n vertices: balanced classes become red
# cliques, cross edges keep the pentagon colours
for n in (5, 11, 20, 25):
    G = build_gex(n)
    per = mono_triangles(G)
    print("n=%d: %d triangles, closed form says %d"
          % (n, per["total"], corollary_value(n)))

# membership in the wider family also allows recolouring a cross-class
# matching red, as long as the triangle count is unchanged
g11 = build_gex(11)
rows = [list(r) for r in g11.matrix()]
for u, v in [(0, 3), (1, 4)]:       # a matching between the first two classes
    rows[u][v] = rows[v][u] = 1
from triflag import ColouredGraph
g11b = ColouredGraph.from_matrix(rows)
print(is_member_gn(g11)[0], is_member_gn(g11b)[0])

# with two colours the minimum triangle count has a classical closed form;
# brute force over all colourings confirms it at small n
for n in range(3, 8):
    best, minimisers = brute_min_mono(n, 2)
    print("n=%d: brute %d, formula %d, %d minimisers"
          % (n, best, goodman(n), len(minimisers)))
