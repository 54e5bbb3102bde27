"""Smallest tree that no bipartite arrangement maximises."""
from maxla import FreeTree, bipartite_maxla, bnb_solve, brute_maxla, level_signature, thistles

# two degree-3 vertices joined by a path of length 2
t = FreeTree(7, [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6)])

bip = bipartite_maxla(t)
best = bnb_solve(t)
print("bipartite optimum", bip.value, bip.witness.order)
print("maximum          ", best.value, "(brute force:", brute_maxla(t).value, ")")
for w in best.witnesses:
    print("  witness", w.order, "levels", level_signature(t, w), "thistles", thistles(t, w))
print("search", best.stats["nodes"], "nodes")
