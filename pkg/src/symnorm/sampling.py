"""Reproducible random generators for block matrices and family specs.

PSD block matrices with a constrained off-diagonal block are built through
the Schur complement: with ``A`` positive definite and
``B = X* A^-1 X + R`` for PSD ``R``, the block matrix is PSD whatever ``X``
is.  Each generator takes a ``numpy.random.Generator``; :func:`trial_rng`
gives an independent counter-based stream per ``(seed, trial)`` pair.
"""

from __future__ import annotations

import numpy as np

from .blocks import BlockMatrix
from .numkernel import adjoint

CLASSES = ("hermitian", "skew", "shift_im", "shift_re", "commute_a", "commute_b", "generic")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def crandn(rng: np.random.Generator, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_hermitian(rng, n: int) -> np.ndarray:
    g = crandn(rng, n, n)
    return (g + adjoint(g)) / 2


def random_psd(rng, n: int, rank: int | None = None) -> np.ndarray:
    g = crandn(rng, rank or n, n)
    return adjoint(g) @ g


def random_pd(rng, n: int, floor: float = 0.1) -> np.ndarray:
    return random_psd(rng, n) + floor * np.eye(n)


def random_unitary(rng, n: int) -> np.ndarray:
    q, r = np.linalg.qr(crandn(rng, n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _poly(rng, a: np.ndarray, degree: int = 3) -> np.ndarray:
    """``q(A)`` for a random complex polynomial ``q``, normalised by ``||A||``."""
    n = a.shape[0]
    scale = max(np.linalg.norm(a, 2), 1e-12)
    base = a / scale
    out = np.zeros((n, n), dtype=np.complex128)
    power = np.eye(n, dtype=np.complex128)
    for c in crandn(rng, degree + 1):
        out = out + c * power
        power = power @ base
    return out


def schur_block(a: np.ndarray, x: np.ndarray, r: np.ndarray) -> BlockMatrix:
    b = adjoint(x) @ np.linalg.solve(a, x) + r
    return BlockMatrix(a, x, (b + adjoint(b)) / 2)


def random_psd_block(rng, n: int, cls: str = "generic", shift: float | None = None) -> BlockMatrix:
    """Random PSD block matrix whose off-diagonal block lies in class `cls`.

    ``cls`` is one of :data:`CLASSES`.  ``shift`` fixes ``r`` for the
    ``shift_im`` (``Im X = rI``) and ``shift_re`` (``Re X = rI``) classes,
    otherwise ``r`` is drawn from ``[-2, 2]``.
    """
    if cls == "generic":
        return BlockMatrix.from_full(_hermitize(random_psd(rng, 2 * n)))
    if cls == "commute_b":
        # mirror image: X = q(B) commutes with B, A closes the Schur complement
        b = random_pd(rng, n)
        x = _poly(rng, b)
        r = random_psd(rng, n)
        a = x @ np.linalg.solve(b, adjoint(x)) + r
        return BlockMatrix((a + adjoint(a)) / 2, x, b)

    a = random_pd(rng, n)
    if cls == "hermitian":
        x = random_hermitian(rng, n)
    elif cls == "skew":
        x = 1j * random_hermitian(rng, n)
    elif cls in ("shift_im", "shift_re"):
        r = rng.uniform(-2.0, 2.0) if shift is None else shift
        h = random_hermitian(rng, n)
        x = h + 1j * r * np.eye(n) if cls == "shift_im" else r * np.eye(n) + 1j * h
    elif cls == "commute_a":
        x = adjoint(_poly(rng, a))
    else:
        raise ValueError(f"unknown class {cls!r}")
    return schur_block(a, x, random_psd(rng, n))


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + adjoint(m)) / 2


def random_family_arrays(rng, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(a, b, D)`` meeting the sign and validity conditions of the diagonal family.

    ``a >= 0``, ``b < 0``, ``a + b >= 0`` and ``|D_ii| > 0``.
    """
    b = -rng.uniform(0.05, 3.0, n)
    a = -b + rng.uniform(0.0, 3.0, n)
    mod = rng.uniform(0.1, 3.0, n)
    phase = np.exp(2j * np.pi * rng.uniform(size=n))
    return a, b, np.diag(mod * phase)
