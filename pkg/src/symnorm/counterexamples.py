"""Block matrices that violate ``||M|| <= ||A+B||``.

Diagonal family
---------------
``N = [[diag(a), D], [D*, diag(b)]]`` with ``a >= 0``, ``b < 0`` and ``D``
diagonal.  Because all blocks are diagonal they commute, so
``det(N - mu I) = det((A - mu)(B - mu) - D* D)`` and the spectrum is the
union of the roots of ``(a_i - mu)(b_i - mu) - d_i = 0`` with
``d_i = |D_ii|^2``.  If ``a_i + b_i >= 0`` and ``a_i b_i - d_i < 0`` for all
``i``, each quadratic has one positive and one negative root, the positive
one the larger in modulus, and ``N`` beats ``A+B`` in every Ky Fan norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .blocks import BlockMatrix
from .errors import BlocksDoNotCommute, DimensionMismatch, HypothesisNotMet, SignViolation
from .inequalities import Hypothesis, check_main_inequality, classify, commutes
from .norms import DominanceReport, fan_dominates
from .numkernel import as_matrix, det, eigvalsh, is_psd
from .sampling import random_psd, trial_rng


@dataclass(frozen=True)
class FamilySpec:
    a: np.ndarray
    b: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).ravel()
        b = np.asarray(self.b, dtype=float).ravel()
        d = np.asarray(self.D, dtype=np.complex128)
        if d.ndim == 1:
            d = np.diag(d)
        n = len(a)
        if len(b) != n or d.shape != (n, n):
            raise DimensionMismatch(f"a, b and D disagree in size: {len(a)}, {len(b)}, {d.shape}")
        if np.count_nonzero(d - np.diag(np.diagonal(d))):
            raise ValueError("D must be diagonal")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", d)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def d(self) -> np.ndarray:
        """Diagonal of ``D* D``."""
        return np.abs(np.diagonal(self.D)) ** 2

    @property
    def sum_ok(self) -> np.ndarray:
        return self.a + self.b >= 0

    @property
    def prod_ok(self) -> np.ndarray:
        return self.a * self.b - self.d < 0

    @property
    def valid(self) -> bool:
        return bool(np.all(self.sum_ok) and np.all(self.prod_ok))


def _check_signs(spec: FamilySpec) -> None:
    if np.any(spec.a < 0):
        raise SignViolation(f"a must be nonnegative, got {spec.a}")
    if np.any(spec.b >= 0):
        raise SignViolation(f"b must be negative, got {spec.b}")


def build_family(spec: FamilySpec) -> BlockMatrix:
    _check_signs(spec)
    return BlockMatrix(np.diag(spec.a), spec.D, np.diag(spec.b))


@dataclass(frozen=True)
class QuadraticRoots:
    """Root pairs ``(x_i, y_i)``, ``x_i >= y_i``, of ``(a_i - mu)(b_i - mu) = d_i``."""

    pairs: tuple

    @property
    def x(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs])

    @property
    def y(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs])

    def eigenvalues(self) -> np.ndarray:
        return np.sort(np.concatenate([self.x, self.y]))[::-1]


def _quadratic(s: float, p: float) -> tuple[float, float]:
    """Real roots of ``mu^2 - s mu + p`` (discriminant assumed >= 0), larger first."""
    disc = math.sqrt(max(s * s - 4 * p, 0.0))
    # avoid cancellation: compute the larger-magnitude root, recover the other by Vieta
    big = 0.5 * (s + math.copysign(disc, s)) if s != 0 else 0.5 * disc
    if big == 0.0:
        return 0.0, 0.0
    other = p / big
    return max(big, other), min(big, other)


def quadratic_eigs(spec: FamilySpec) -> QuadraticRoots:
    _check_signs(spec)
    pairs = tuple(
        _quadratic(float(ai + bi), float(ai * bi - di))
        for ai, bi, di in zip(spec.a, spec.b, spec.d)
    )
    return QuadraticRoots(pairs)


@dataclass(frozen=True)
class ViolationReport:
    n_psd: bool
    minus_n_psd: bool
    dominance: DominanceReport
    roots: QuadraticRoots

    @property
    def margins(self) -> np.ndarray:
        """``||N||_k - ||(A+B) (+) 0||_k`` for ``k = 1..2n``."""
        return -self.dominance.margins

    @property
    def confirmed(self) -> bool:
        return (not self.n_psd) and (not self.minus_n_psd) and bool(np.all(self.margins > 0))


def verify_violation(spec: FamilySpec) -> ViolationReport:
    """Confirm that neither ``N`` nor ``-N`` is PSD and ``||N||_k > ||A+B||_k`` for all k.

    Raises :class:`HypothesisNotMet` when some ``a_i + b_i < 0`` or
    ``a_i b_i - d_i >= 0``.
    """
    if not spec.valid:
        bad = [i for i in range(spec.n) if not (spec.sum_ok[i] and spec.prod_ok[i])]
        raise HypothesisNotMet(f"validity conditions fail at indices {bad}")
    m = build_family(spec)
    full = m.full
    dom = fan_dominates(full, m.diag_sum)
    return ViolationReport(bool(is_psd(full)), bool(is_psd(-full)), dom, quadratic_eigs(spec))


def det_commuting_blocks(m, tol: float = 1e-9) -> complex:
    """``det([[A, B], [C, D]]) = det(AD - CB)`` when ``A`` and ``C`` commute."""
    m = as_matrix(m, "M")
    s = m.shape[0]
    if m.shape != (s, s) or s % 2:
        raise DimensionMismatch(f"need an even square matrix, got shape {m.shape}")
    n = s // 2
    a, b, c, d = m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]
    if not commutes(a, c, tol):
        raise BlocksDoNotCommute("blocks A and C do not commute")
    return det(a @ d - c @ b)


def example_T() -> BlockMatrix:
    """4x4 PSD matrix with ``||T||_s = 6 > 5.3 = ||A+B||_s``."""
    a = np.diag([0.3, 5.0])
    x = np.array([[0, 1j / 11], [1j, 0]])
    b = np.diag([5.0, 0.3])
    return BlockMatrix(a, x, b)


def example_T_eigenvalues() -> np.ndarray:
    # T splits into [[5, i], [-i, 5]] on coordinates (2, 3) and
    # [[3/10, i/11], [-i/11, 3/10]] on (1, 4)
    return np.array([6.0, 4.0, float(Fraction(3, 10) + Fraction(1, 11)),
                     float(Fraction(3, 10) - Fraction(1, 11))])


def example_Ny(y: float) -> BlockMatrix:
    """``[[2,0,0,2],[0,y,0,0],[0,0,1,0],[2,0,0,2]]``; PSD iff ``y >= 0``."""
    a = np.diag([2.0, float(y)])
    x = np.array([[0.0, 2.0], [0.0, 0.0]])
    b = np.diag([1.0, 2.0])
    return BlockMatrix(a, x, b)


def example_Ny_eigenvalues(y: float) -> np.ndarray:
    return np.sort(np.array([4.0, 1.0, float(y), 0.0]))[::-1]


@dataclass(frozen=True)
class SearchHit:
    trial: Optional[int]
    matrix: BlockMatrix
    first_violation: int
    min_margin: float


def _is_violator(m: BlockMatrix) -> Optional[SearchHit]:
    if not is_psd(m.full):
        return None
    rep = check_main_inequality(m)
    if rep.holds:
        return None
    return SearchHit(None, m, rep.first_violation, float(np.min(rep.margins)))


def _recheck(hit: SearchHit) -> None:
    # independent pass: eigenvalues of M and of A+B straight from the eigensolver
    m = hit.matrix
    lam = np.sort(np.abs(eigvalsh(m.full)))[::-1]
    mu = np.concatenate([np.sort(np.abs(eigvalsh(m.diag_sum)))[::-1], np.zeros(m.n)])
    tol = 1e-8 * max(1.0, float(np.sum(mu)))
    if eigvalsh(m.full)[-1] < -1e-10 * max(1.0, lam[0]):
        raise AssertionError("search hit is not PSD on recheck")
    if not np.any(np.cumsum(lam) - np.cumsum(mu) > tol):
        raise AssertionError("search hit does not violate the inequality on recheck")
    if classify(m)[0] is not Hypothesis.NONE:
        raise AssertionError("search hit satisfies a sufficient condition")


def search_psd_violations(n: int, trials: int, seed: int,
                          corpus: Iterable[BlockMatrix] = ()) -> list[SearchHit]:
    """Sample ``M = G* G`` (complex Gaussian ``G``) and keep the violators.

    Trial ``t`` draws from :func:`~symnorm.sampling.trial_rng` ``(seed, t)``,
    so any trial can be replayed on its own.  Matrices in `corpus` are tested
    first and reported with ``trial=None``.  Every hit is re-verified by an
    independent eigenvalue pass and must not match any sufficient condition.
    """
    hits = []
    for m in corpus:
        hit = _is_violator(m)
        if hit is not None:
            hits.append(hit)
    for t in range(trials):
        full = random_psd(trial_rng(seed, t), 2 * n)
        m = BlockMatrix.from_full((full + full.conj().T) / 2)
        hit = _is_violator(m)
        if hit is not None:
            hits.append(SearchHit(t, m, hit.first_violation, hit.min_margin))
    for hit in hits:
        _recheck(hit)
    return hits
