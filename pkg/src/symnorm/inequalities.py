"""Checkers for ``||M|| <= ||A+B||`` over all unitarily invariant norms.

``M = [[A, X], [X*, B]]`` is compared with ``(A+B) (+) 0`` through Ky Fan
dominance.  Sufficient conditions recognised by :func:`classify`:

* ``X`` Hermitian or skew-Hermitian;
* ``Im(X) = rI`` or ``Re(X) = rI``;
* ``X*`` commutes with ``A`` or ``X`` commutes with ``B`` (then ``M`` is
  unitarily congruent to a block matrix with Hermitian off-diagonal block,
  see :func:`hermitio_reduce`).

Every PSD block matrix satisfies ``||M|| <= 2 ||A+B||``
(:func:`factor_two_bound`).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .blocks import BlockMatrix, Mode, half_parts, shift_part
from .errors import DimensionMismatch, HypothesisNotMet, NotPSD
from .norms import (
    DOMINANCE_RTOL,
    DominanceReport,
    KyFanProfile,
    compare_profiles,
    fan_dominates,
    ky_fan_profile,
)
from .numkernel import (
    PSD_RTOL,
    adjoint,
    as_matrix,
    commutator_norm,
    eigvalsh,
    frob,
    herm_eig,
    is_psd,
    polar_right,
)

CLASSIFY_TOL = 1e-9
STRICT_RTOL = 1e-8


class Hypothesis(str, Enum):
    HERMITIAN_X = "HermitianX"
    SKEW_HERMITIAN_X = "SkewHermitianX"
    SCALAR_SHIFT_IM = "ScalarShiftIm"
    SCALAR_SHIFT_RE = "ScalarShiftRe"
    COMMUTING_BLOCKS = "CommutingBlocks"
    NONE = "None"


@dataclass(frozen=True)
class InequalityReport:
    holds: bool
    margins: np.ndarray
    first_violation: Optional[int]
    hypothesis: Hypothesis
    tol: float
    profile_m: KyFanProfile
    profile_sum: KyFanProfile
    shift: Optional[float] = None

    @classmethod
    def from_dominance(cls, dom: DominanceReport, hypothesis: Hypothesis, shift=None) -> "InequalityReport":
        return cls(dom.dominated, dom.margins, dom.first_violation, hypothesis, dom.tol,
                   dom.lower, dom.upper, shift)


def commutes(p, q, tol: float = CLASSIFY_TOL) -> bool:
    """``||PQ - QP||_F <= tol * max(1, ||P||_F ||Q||_F)``."""
    p = as_matrix(p, "P")
    q = as_matrix(q, "Q")
    if p.shape != q.shape or p.shape[0] != p.shape[1]:
        raise DimensionMismatch(f"shapes {p.shape} and {q.shape} are not the same square size")
    return commutator_norm(p, q) <= tol * max(1.0, frob(p) * frob(q))


def scalar_shift_check(x, tol: float = CLASSIFY_TOL) -> Optional[tuple[Mode, float]]:
    """Return ``(mode, r)`` if ``Im(X) = rI`` (tried first) or ``Re(X) = rI``.

    ``r`` is ``trace(part)/n``; the match tolerance is
    ``tol * max(1, ||X||_F)``.
    """
    x = as_matrix(x, "X")
    n = x.shape[0]
    bound = tol * max(1.0, frob(x))
    for mode in (Mode.IM, Mode.RE):
        part = shift_part(x, mode)
        r = float(np.trace(part).real / n)
        if frob(part - r * np.eye(n)) <= bound:
            return mode, r
    return None


def classify(m: BlockMatrix, tol: float = CLASSIFY_TOL) -> tuple[Hypothesis, Optional[float]]:
    """First matching sufficient condition, with the shift ``r`` when relevant.

    Priority: HermitianX, SkewHermitianX, ScalarShiftIm, ScalarShiftRe,
    CommutingBlocks, None.
    """
    x = m.X
    bound = tol * max(1.0, frob(x))
    if frob(x - adjoint(x)) <= bound:
        return Hypothesis.HERMITIAN_X, None
    if frob(x + adjoint(x)) <= bound:
        return Hypothesis.SKEW_HERMITIAN_X, None
    shift = scalar_shift_check(x, tol)
    if shift is not None:
        mode, r = shift
        tag = Hypothesis.SCALAR_SHIFT_IM if mode is Mode.IM else Hypothesis.SCALAR_SHIFT_RE
        return tag, r
    if commutes(adjoint(x), m.A, tol) or commutes(x, m.B, tol):
        return Hypothesis.COMMUTING_BLOCKS, None
    return Hypothesis.NONE, None


def check_main_inequality(m: BlockMatrix, tol: Optional[float] = None,
                          rtol: float = DOMINANCE_RTOL) -> InequalityReport:
    """Ky Fan comparison of ``M`` against ``(A+B) (+) 0``.

    Non-PSD input is allowed.  ``margins[k-1] = ||A+B||_k - ||M||_k``.
    """
    dom = fan_dominates(m.full, m.diag_sum, tol, rtol)
    tag, r = classify(m)
    return InequalityReport.from_dominance(dom, tag, r)


@dataclass(frozen=True)
class HermitioCertificate:
    """``W* M W == reduced.full`` with ``reduced.X`` Hermitian PSD."""

    W: np.ndarray
    reduced: BlockMatrix
    side: str

    def congruence_error(self, m: BlockMatrix) -> float:
        return frob(adjoint(self.W) @ m.full @ self.W - self.reduced.full)


def _commuting_unitary(x: np.ndarray, h: np.ndarray, tol: float) -> np.ndarray:
    """Polar unitary of `x` that also commutes with Hermitian `h`.

    ``x`` commutes with ``h`` so it preserves every eigenspace of ``h``;
    taking the polar factor eigenspace by eigenspace keeps the result
    commuting with ``h`` even when ``x`` is singular.
    """
    u = polar_right(x).unitary
    if commutes(u, h, tol):
        return u
    sd = herm_eig(h)
    w, q = sd.eigenvalues, sd.eigenvectors
    gap = tol * max(1.0, float(np.max(np.abs(w))))
    groups, start = [], 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i - 1] - w[i] > gap:
            groups.append(slice(start, i))
            start = i
    out = np.zeros_like(x)
    for g in groups:
        qg = q[:, g]
        ug = polar_right(adjoint(qg) @ x @ qg).unitary
        out = out + qg @ ug @ adjoint(qg)
    return out


def hermitio_reduce(m: BlockMatrix, tol: float = CLASSIFY_TOL) -> Optional[HermitioCertificate]:
    """Congruence to a block matrix with Hermitian off-diagonal block.

    If ``X*`` commutes with ``A``, write ``X = U|X|`` and take
    ``W = diag(U, I)``: then ``W* M W = [[A, |X|], [|X|, B]]``.  If instead
    ``X`` commutes with ``B``, write ``X* = U|X*|`` and take
    ``W = diag(I, U)``, which yields off-diagonal block ``|X*|``.
    Returns ``None`` when neither commutation holds.
    """
    chk = is_psd(m.full)
    if not chk:
        raise NotPSD(f"block matrix has eigenvalue {chk.min_eigenvalue:.3e} < 0")
    n = m.n
    eye = np.eye(n, dtype=np.complex128)
    zero = np.zeros((n, n), dtype=np.complex128)
    if commutes(adjoint(m.X), m.A, tol):
        u = _commuting_unitary(m.X, m.A, tol)
        mod = adjoint(u) @ m.X
        w = np.block([[u, zero], [zero, eye]])
        side = "A"
    elif commutes(m.X, m.B, tol):
        u = _commuting_unitary(adjoint(m.X), m.B, tol)
        mod = m.X @ u
        w = np.block([[eye, zero], [zero, u]])
        side = "B"
    else:
        return None
    reduced = BlockMatrix(m.A, (mod + adjoint(mod)) / 2, m.B)
    return HermitioCertificate(w, reduced, side)


@dataclass(frozen=True)
class ScalarShiftReport:
    """Equality diagnostics for ``Im(X) = rI`` / ``Re(X) = rI``.

    ``residuals[k-1] = | ||P1||_k + ||P2||_k - ||A+B||_k |`` for ``k <= n``
    with ``P1, P2 = (A+B)/2 +/- phi(X)``.
    """

    mode: Mode
    shift: float
    residuals: np.ndarray
    equality_holds: bool
    inequality: InequalityReport

    @property
    def holds(self) -> bool:
        return self.equality_holds and self.inequality.holds


def check_scalar_shift_bound(m: BlockMatrix, tol: Optional[float] = None,
                             rtol: float = DOMINANCE_RTOL,
                             equality_rtol: float = 1e-9) -> ScalarShiftReport:
    """Verify the Ky Fan identity and the inequality for a scalar-shift ``X``.

    Raises :class:`HypothesisNotMet` if ``M`` is not PSD or neither
    ``Im(X)`` nor ``Re(X)`` is a multiple of the identity.
    """
    if not is_psd(m.full):
        raise HypothesisNotMet("block matrix is not PSD")
    shift = scalar_shift_check(m.X)
    if shift is None:
        raise HypothesisNotMet("neither Im(X) nor Re(X) is a multiple of the identity")
    mode, r = shift
    p1, p2 = half_parts(m).pair(mode)
    c1 = ky_fan_profile(p1).cumsum
    c2 = ky_fan_profile(p2).cumsum
    s = ky_fan_profile(m.diag_sum)
    residuals = np.abs(c1 + c2 - s.cumsum)
    ok = bool(np.all(residuals <= equality_rtol * max(s.trace, np.finfo(float).tiny)))
    tag = Hypothesis.SCALAR_SHIFT_IM if mode is Mode.IM else Hypothesis.SCALAR_SHIFT_RE
    ineq = InequalityReport.from_dominance(fan_dominates(m.full, m.diag_sum, tol, rtol), tag, r)
    return ScalarShiftReport(mode, r, residuals, ok, ineq)


@dataclass(frozen=True)
class FactorTwoReport:
    """``margins[k-1] = 2 ||A+B||_k - ||M||_k`` for ``k = 1..2n``."""

    holds: bool
    margins: np.ndarray
    halves_pd: bool
    strict: bool
    tol: float
    min_eigenvalues: tuple

    @property
    def min_margin(self) -> float:
        return float(np.min(self.margins))


def factor_two_bound(m: BlockMatrix, tol: Optional[float] = None,
                     rtol: float = DOMINANCE_RTOL) -> FactorTwoReport:
    """Check ``||M||_k <= 2 ||A+B||_k`` at every k.

    ``halves_pd`` is set when ``(A+B)/2 + Im(X)`` or ``(A+B)/2 - Im(X)`` has
    ``lambda_min > 1e-8 ||A+B||_s``; in that case the bound should be strict
    and ``strict`` reports whether every margin is positive.
    """
    chk = is_psd(m.full, PSD_RTOL)
    if not chk:
        raise NotPSD(f"block matrix has eigenvalue {chk.min_eigenvalue:.3e} < 0")
    pm = ky_fan_profile(m.full)
    ps = ky_fan_profile(m.diag_sum)
    doubled = KyFanProfile(2 * ps.sigma, 2 * ps.cumsum)
    dom = compare_profiles(pm, doubled, tol, rtol)
    hp = half_parts(m)
    lam1 = float(eigvalsh(hp.M1)[-1])
    lam2 = float(eigvalsh(hp.M2)[-1])
    pd = max(lam1, lam2) > STRICT_RTOL * ps.spectral
    strict = pd and bool(np.all(dom.margins > 0))
    return FactorTwoReport(dom.dominated, dom.margins, pd, strict, dom.tol, (lam1, lam2))
