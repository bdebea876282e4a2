"""
A PSD block matrix that beats its diagonal sum
==============================================

For M = [[A, X], [X*, B]] positive semidefinite one might hope that
||M|| <= ||A + B|| in every unitarily invariant norm.  The 4x4 matrix T
below shows this fails already for the spectral norm.
"""

import numpy as np

from symnorm import check_main_inequality, example_T, ky_fan_profile

t = example_T()
print("A =", np.diag(t.A).real, " B =", np.diag(t.B).real)
print("X =\n", t.X)

# T splits into two 2x2 invariant blocks, so its spectrum is explicit
lam = np.linalg.eigvalsh(t.full)[::-1]
print("eigenvalues of T:", np.round(lam, 6))
print("expected:        ", [6, 4, round(3 / 10 + 1 / 11, 6), round(3 / 10 - 1 / 11, 6)])

# Ky Fan k-norms: sums of the k largest singular values.  Checking all k
# is the same as checking every unitarily invariant norm.
pm = ky_fan_profile(t.full)
ps = ky_fan_profile(t.diag_sum, 4)
for k in range(1, 5):
    print(f"k={k}  ||T||_k = {pm.norm(k):8.4f}   ||A+B||_k = {ps.norm(k):8.4f}")

rep = check_main_inequality(t)
print("holds:", rep.holds, " first failing k:", rep.first_violation,
      " hypothesis tag:", rep.hypothesis.value)
