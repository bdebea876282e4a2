"""
When the inequality does hold
=============================

The inequality ||M|| <= ||A+B|| is guaranteed when the off-diagonal block
is Hermitian or skew-Hermitian, when Im(X) or Re(X) is a multiple of the
identity, or when X commutes with one of the diagonal blocks in the right
way.  Sample each class and look at the worst Ky Fan margin.
"""

import numpy as np

from symnorm import check_main_inequality, classify
from symnorm.sampling import CLASSES, random_psd_block, trial_rng

for cls in CLASSES:
    worst, tags = np.inf, set()
    for t in range(200):
        rng = trial_rng(7, t)
        m = random_psd_block(rng, 1 + t % 5, cls)
        rep = check_main_inequality(m)
        worst = min(worst, rep.margins.min())
        tags.add(classify(m)[0].value)
    print(f"{cls:10s} min margin {worst: .3e}   tags {sorted(tags)}")

# With n = 1 every X has Im(X) = rI, so those samples are tagged
# ScalarShiftIm whatever class produced them.
# "generic" has no guarantee.  Its margins are usually positive anyway,
# but not always, as the search demo shows.
