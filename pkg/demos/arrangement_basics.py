"""Cost, cut and level signatures of one arrangement, and what a swap does."""
from maxla import (
    Arrangement, FreeTree, cost, cut_signature, level_signature, mirror, swap, swap_deltas,
    thistles,
)

# a..i as 0..8, laid out h g i e f d b c a
t = FreeTree(9, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (4, 7), (7, 8)])
a = Arrangement((7, 6, 8, 4, 5, 3, 1, 2, 0))

print("cost      ", cost(t, a))
print("cuts      ", cut_signature(t, a))
print("levels    ", level_signature(t, a))
print("thistles  ", thistles(t, a))
print("mirrored  ", level_signature(t, mirror(a)), cost(t, mirror(a)))

# predicted change of every level and cut when positions 2 and 7 trade places
d = swap_deltas(t, a, 2, 7)
b = swap(a, 2, 7)
print("swap 2,7  ", cost(t, a), "->", cost(t, b))
print("  levels  ", d.level_deltas)
print("  cuts    ", d.cut_deltas)
