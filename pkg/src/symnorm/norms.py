"""Singular-value norms and Ky Fan dominance.

A matrix ``P`` is below ``Q`` in every unitarily invariant norm exactly when
each Ky Fan partial sum of ``P`` is at most the matching sum of ``Q``.  All
"for every symmetric norm" claims in the package are checked through
:func:`fan_dominates`.  Operands of different size are compared after
padding with zero singular values (``A -> A (+) 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import IndexOutOfRange
from .numkernel import as_matrix, singular_values

DOMINANCE_RTOL = 1e-8


@dataclass(frozen=True)
class KyFanProfile:
    sigma: np.ndarray
    cumsum: np.ndarray

    def __len__(self) -> int:
        return len(self.sigma)

    def norm(self, k: int) -> float:
        """Ky Fan k-norm, ``k`` counted from 1."""
        if not 1 <= k <= len(self.sigma):
            raise IndexOutOfRange(f"k={k} outside 1..{len(self.sigma)}")
        return float(self.cumsum[k - 1])

    @property
    def spectral(self) -> float:
        return float(self.cumsum[0])

    @property
    def trace(self) -> float:
        return float(self.cumsum[-1])

    @property
    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self.sigma**2)))


def profile_from_singular_values(sigma, pad_to: Optional[int] = None) -> KyFanProfile:
    s = np.sort(np.clip(np.asarray(sigma, dtype=float), 0.0, None))[::-1]
    if pad_to is not None:
        if pad_to < len(s):
            raise IndexOutOfRange(f"pad_to={pad_to} is smaller than {len(s)} singular values")
        s = np.concatenate([s, np.zeros(pad_to - len(s))])
    return KyFanProfile(s, np.cumsum(s))


def ky_fan_profile(m, pad_to: Optional[int] = None) -> KyFanProfile:
    """Sorted singular values of `m` and their partial sums.

    Parameters
    ----------
    m : array_like
      Input matrix
    pad_to : int, optional
      Length of the profile; extra entries are zero singular values.
      Defaults to ``min(m.shape)``.
    """
    m = as_matrix(m, "M")
    return profile_from_singular_values(singular_values(m), pad_to)


def ky_fan(m, k: int) -> float:
    m = as_matrix(m, "M")
    if not 1 <= k <= min(m.shape):
        raise IndexOutOfRange(f"k={k} outside 1..{min(m.shape)}")
    return ky_fan_profile(m).norm(k)


def spectral_norm(m) -> float:
    return ky_fan_profile(m).spectral


def frobenius_norm(m) -> float:
    return ky_fan_profile(m).frobenius


def trace_norm(m) -> float:
    return ky_fan_profile(m).trace


@dataclass(frozen=True)
class DominanceReport:
    """Per-k comparison of two Ky Fan profiles.

    ``margins[k-1] = ||Q||_k - ||P||_k``; ``dominated`` is true iff every
    margin is at least ``-tol``.
    """

    dominated: bool
    margins: np.ndarray
    first_violation: Optional[int]
    tol: float
    lower: KyFanProfile
    upper: KyFanProfile

    @property
    def min_margin(self) -> float:
        return float(np.min(self.margins))


def compare_profiles(p: KyFanProfile, q: KyFanProfile, tol: Optional[float] = None,
                     rtol: float = DOMINANCE_RTOL) -> DominanceReport:
    size = max(len(p), len(q))
    p = profile_from_singular_values(p.sigma, size)
    q = profile_from_singular_values(q.sigma, size)
    if tol is None:
        tol = rtol * max(1.0, q.trace)
    margins = q.cumsum - p.cumsum
    bad = np.flatnonzero(margins < -tol)
    first = int(bad[0]) + 1 if bad.size else None
    return DominanceReport(first is None, margins, first, float(tol), p, q)


def fan_dominates(p, q, tol: Optional[float] = None, rtol: float = DOMINANCE_RTOL) -> DominanceReport:
    """Is ``||P|| <= ||Q||`` for every unitarily invariant norm?

    Both matrices are padded to the larger of their dimensions.  Unless an
    absolute `tol` is given the slack is ``rtol * max(1, ||Q||_trace)``.
    """
    p = as_matrix(p, "P")
    q = as_matrix(q, "Q")
    size = max(max(p.shape), max(q.shape))
    return compare_profiles(ky_fan_profile(p, size), ky_fan_profile(q, size), tol, rtol)
