"""Computing an orthogonal lattice with one LLL call.

Take a small integer matrix A, stack K*A^T on top of the identity, reduce,
and read the kernel basis off the first columns.
"""

from fractions import Fraction

from orthlll import build_extended, orthogonal_lattice_basis, threshold_K_general, verify_kernel
from orthlll.exactlin import from_columns
from orthlll.gso import compute
from orthlll.formats import format_matrix

A = [[3, 1], [5, -2], [7, 4], [11, 0], [2, 9]]
n, k = len(A), len(A[0])

# The general threshold is exact: an integer square root, no floats involved.
K = threshold_K_general(A)
print(f"n={n}, k={k}, general threshold K={K}")

ext = build_extended(A, K)
print("\nextended basis (columns are basis vectors):")
print(format_matrix(from_columns(ext.basis)))

res = orthogonal_lattice_basis(A)
print(f"LLL used {res.swap_count} swaps")
print("\nreduced extended basis:")
print(format_matrix(from_columns(res.reduced)))

# The first n-k columns start with k zeros; what is below them is the kernel.
print("kernel basis C (columns):")
print(format_matrix(res.C))

# Gram-Schmidt norms split into n-k small ones and k huge ones.
r = compute(res.reduced).r
for i, x in enumerate(r, 1):
    print(f"  |b_{i}*|^2 = {float(x):.6g}")

rep = verify_kernel(A, res.C)
print("\nverification:", "ok" if rep.ok else rep.failures)

# The last k columns carry K times a basis of the row lattice of A.
print("M / K:", [[str(Fraction(x, res.K_used)) for x in row] for row in res.M])
