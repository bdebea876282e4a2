"""Hermitian 2x2 block matrices and their half-part decompositions.

For ``M = [[A, X], [X*, B]]`` with ``n x n`` blocks, define::

    M1 = (A+B)/2 + Im(X)    M2 = (A+B)/2 - Im(X)
    N1 = (A+B)/2 + Re(X)    N2 = (A+B)/2 - Re(X)

When ``M`` is PSD there are unitaries ``U, V`` with
``M = U (M1 (+) 0) U* + V (0 (+) M2) V*`` and the same with ``N1, N2``.
:func:`lemma_decompose` constructs them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput, NotPSD
from .numkernel import (
    PSD_RTOL,
    adjoint,
    as_matrix,
    frob,
    is_hermitian,
    is_psd,
    matrix_sqrt_psd,
    polar_right,
)


class Mode(str, Enum):
    RE = "re"
    IM = "im"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class BlockMatrix:
    """``[[A, X], [X*, B]]`` with Hermitian ``A``, ``B`` of equal size."""

    A: np.ndarray
    X: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.A, "A")
        x = as_matrix(self.X, "X")
        b = as_matrix(self.B, "B")
        n = a.shape[0]
        for name, blk in (("A", a), ("X", x), ("B", b)):
            if blk.shape != (n, n):
                raise DimensionMismatch(f"block {name} has shape {blk.shape}, expected {(n, n)}")
        for name, blk in (("A", a), ("B", b)):
            if not is_hermitian(blk):
                raise NonHermitianInput(f"diagonal block {name} is not Hermitian")
        object.__setattr__(self, "A", _frozen(a))
        object.__setattr__(self, "X", _frozen(x))
        object.__setattr__(self, "B", _frozen(b))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def full(self) -> np.ndarray:
        return np.block([[self.A, self.X], [adjoint(self.X), self.B]])

    @property
    def diag_sum(self) -> np.ndarray:
        """``A + B``."""
        return self.A + self.B

    @classmethod
    def from_full(cls, m) -> "BlockMatrix":
        m = as_matrix(m, "M")
        s = m.shape[0]
        if m.shape != (s, s) or s % 2:
            raise DimensionMismatch(f"need an even square matrix, got shape {m.shape}")
        if not is_hermitian(m):
            raise NonHermitianInput("block matrix is not Hermitian")
        n = s // 2
        return cls(m[:n, :n], m[:n, n:], m[n:, n:])

    def scaled(self, c: float) -> "BlockMatrix":
        return BlockMatrix(c * self.A, c * self.X, c * self.B)


def imag_part(x) -> np.ndarray:
    """``(X - X*) / 2i``, always Hermitian."""
    x = as_matrix(x, "X")
    return (x - adjoint(x)) / 2j


def real_part(x) -> np.ndarray:
    """``(X + X*) / 2``, always Hermitian."""
    x = as_matrix(x, "X")
    return (x + adjoint(x)) / 2


def shift_part(x, mode: Mode) -> np.ndarray:
    return imag_part(x) if Mode(mode) is Mode.IM else real_part(x)


@dataclass(frozen=True)
class HalfParts:
    M1: np.ndarray
    M2: np.ndarray
    N1: np.ndarray
    N2: np.ndarray

    def pair(self, mode: Mode) -> tuple[np.ndarray, np.ndarray]:
        return (self.M1, self.M2) if Mode(mode) is Mode.IM else (self.N1, self.N2)


def half_parts(m: BlockMatrix) -> HalfParts:
    mid = m.diag_sum / 2
    im = imag_part(m.X)
    re = real_part(m.X)
    return HalfParts(mid + im, mid - im, mid + re, mid - re)


@dataclass(frozen=True)
class LoewnerFacts:
    """PSD status of ``A+B -/+ 2 Im(X)`` and ``A+B -/+ 2 Re(X)``."""

    sum_plus_2im: bool
    sum_minus_2im: bool
    sum_plus_2re: bool
    sum_minus_2re: bool
    min_eigenvalues: dict

    @property
    def all_hold(self) -> bool:
        return self.sum_plus_2im and self.sum_minus_2im and self.sum_plus_2re and self.sum_minus_2re


def check_loewner_facts(m: BlockMatrix, tol: float = 1e-8) -> LoewnerFacts:
    """Test ``A+B >= -/+ 2 Im(X)`` and ``A+B >= -/+ 2 Re(X)`` in Loewner order.

    These hold whenever `m` is PSD; for other inputs the report is still
    computed.
    """
    s = m.diag_sum
    im2 = 2 * imag_part(m.X)
    re2 = 2 * real_part(m.X)
    checks = {
        "sum_plus_2im": is_psd(s + im2, tol),
        "sum_minus_2im": is_psd(s - im2, tol),
        "sum_plus_2re": is_psd(s + re2, tol),
        "sum_minus_2re": is_psd(s - re2, tol),
    }
    return LoewnerFacts(
        **{k: v.ok for k, v in checks.items()},
        min_eigenvalues={k: v.min_eigenvalue for k, v in checks.items()},
    )


def rotation(n: int, mode: Mode) -> np.ndarray:
    """Fixed unitary ``J = [[I, I], [wI, -wI]] / sqrt(2)``; ``w = 1`` (Re) or ``-i`` (Im).

    The diagonal blocks of ``J* M J`` are ``(A+B)/2 + phi(X)`` and
    ``(A+B)/2 - phi(X)`` in that order.
    """
    w = 1.0 if Mode(mode) is Mode.RE else -1j
    i = np.eye(n, dtype=np.complex128)
    return np.block([[i, i], [w * i, -w * i]]) / np.sqrt(2.0)


def rotate(m: BlockMatrix, mode: Mode) -> tuple[np.ndarray, np.ndarray]:
    j = rotation(m.n, mode)
    r = adjoint(j) @ m.full @ j
    return 0.5 * (r + adjoint(r)), j


def pinching_decompose(p, tol: float = PSD_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Unitaries ``U, V`` with ``P = U (P11 (+) 0) U* + V (0 (+) P22) V*``.

    Writes ``P = S S`` with ``S = P^(1/2)`` and splits ``S`` into column
    halves ``S1, S2``, so ``P = S1 S1* + S2 S2*``.  ``U`` is the polar factor
    of ``[S1 | 0]``: since ``[S1 | 0] = U (|S1| (+) 0)`` and
    ``|S1|^2 = S1* S1 = P11``, we get ``S1 S1* = U (P11 (+) 0) U*``.  ``V`` is
    built the same way from ``[0 | S2]``.
    """
    p = as_matrix(p, "P")
    s = p.shape[0]
    if p.shape != (s, s) or s % 2:
        raise DimensionMismatch(f"need an even square matrix, got shape {p.shape}")
    chk = is_psd(p, tol)
    if not chk:
        raise NotPSD(f"matrix has eigenvalue {chk.min_eigenvalue:.3e} < 0")
    n = s // 2
    root = matrix_sqrt_psd(p, tol)
    left = np.zeros_like(root)
    left[:, :n] = root[:, :n]
    right = np.zeros_like(root)
    right[:, n:] = root[:, n:]
    return polar_right(left).unitary, polar_right(right).unitary


@dataclass(frozen=True)
class DecompositionResult:
    U: np.ndarray
    V: np.ndarray
    top: np.ndarray
    bottom: np.ndarray
    mode: Mode

    def reconstruct(self) -> np.ndarray:
        n = self.top.shape[0]
        z = np.zeros((n, n), dtype=np.complex128)
        t = np.block([[self.top, z], [z, z]])
        b = np.block([[z, z], [z, self.bottom]])
        return self.U @ t @ adjoint(self.U) + self.V @ b @ adjoint(self.V)


def lemma_decompose(m: BlockMatrix, mode: Mode, tol: float = PSD_RTOL) -> DecompositionResult:
    """Realise ``M = U(top (+) 0)U* + V(0 (+) bottom)V*``.

    ``top, bottom = (A+B)/2 +/- Im(X)`` for ``mode="im"`` and
    ``(A+B)/2 +/- Re(X)`` for ``mode="re"``.  Raises :class:`NotPSD` if `m`
    is not PSD.
    """
    mode = Mode(mode)
    chk = is_psd(m.full, tol)
    if not chk:
        raise NotPSD(f"block matrix has eigenvalue {chk.min_eigenvalue:.3e} < 0")
    rotated, j = rotate(m, mode)
    u, v = pinching_decompose(rotated, tol)
    top, bottom = half_parts(m).pair(mode)
    return DecompositionResult(j @ u, j @ v, top, bottom, mode)


def reconstruction_error(m: BlockMatrix, d: DecompositionResult) -> float:
    return frob(m.full - d.reconstruct())
