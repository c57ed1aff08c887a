"""Watching potentials move during a reduction.

The classical potential drops by at least log2(2/sqrt(3)) at each swap. The
k-th potential splits positions into small and large Gram-Schmidt norms; a
swap can move an uninvolved position across that split, and then the k-th
potential may go up.
"""

import mpmath

from orthlll import lll_reduce, partition_indices, potential_classic, potential_k
from orthlll.potential import log2_swap_gain

gain = log2_swap_gain()
print(f"per-swap gain log2(2/sqrt(3)) = {mpmath.nstr(gain, 10)}")

# the textbook example: one swap
basis = [[3, 0], [1, 1]]
reduced, trace = lll_reduce(basis, checkpoints=True)
cp = trace.checkpoints[0]
drop = potential_classic(cp.before) - potential_classic(cp.after)
print(f"\n{basis} -> {reduced}, {trace.swap_count} swap")
print(f"classical potential drop {mpmath.nstr(drop, 10)}")

# a 3-dimensional basis where the k=2 potential rises at its only swap
basis = [[2, -2, -1], [2, 0, -1], [0, -1, -2]]
reduced, trace = lll_reduce(basis, checkpoints=True)
cp = trace.checkpoints[0]
print(f"\n{basis} -> {reduced}")
print("squared GS norms before:", [str(x) for x in cp.before])
print("squared GS norms after: ", [str(x) for x in cp.after])
for k in (1, 2, 3):
    before, after = partition_indices(cp.before, k), partition_indices(cp.after, k)
    d = potential_k(cp.before, k) - potential_k(cp.after, k)
    flag = "" if d >= gain else "   <- below the gain"
    print(f"k={k}: small {before.small} -> {after.small}, decrease {mpmath.nstr(d, 8)}{flag}")

# position 3 was not swapped, yet it joins the small set for k=2
