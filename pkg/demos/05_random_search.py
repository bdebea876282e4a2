"""
How common are PSD violators?
=============================

Draw M = G* G with G complex Gaussian, split into 2x2 blocks and keep
the matrices where some Ky Fan norm of M exceeds that of A+B.  Each trial
has its own random stream, so a hit can be replayed by index.
"""

from symnorm import search_psd_violations
from symnorm.counterexamples import example_T

trials = 500
hits = search_psd_violations(n=2, trials=trials, seed=42, corpus=[example_T()])
print(f"{len(hits)} violators ({len(hits) - 1} random out of {trials}, plus T)")

for h in hits[:6]:
    label = "T" if h.trial is None else f"trial {h.trial}"
    print(f"  {label:10s} first failing k = {h.first_violation}  worst margin {h.min_margin:.4f}")

# replay one hit from its index alone
h = hits[1]
again = search_psd_violations(n=2, trials=h.trial + 1, seed=42)[-1]
print("replayed trial", again.trial, "identical:", (again.matrix.full == h.matrix.full).all())
