"""Dense complex kernels for small matrices.

Every matrix in the package is a 2-D ``complex128`` numpy array.  The
eigensolver is a cyclic complex Jacobi iteration; the SVD and the polar
decomposition are built on top of it, so one kernel carries all the spectral
work.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonHermitianInput, NotPSD

HERMITIAN_RTOL = 1e-10
JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 60
SMALL_SINGULAR_RTOL = 1e-12
PSD_RTOL = 1e-10
UNITARY_TOL = 1e-10


def as_matrix(x, name: str = "matrix") -> np.ndarray:
    """Return `x` as a finite 2-D complex128 array (always a fresh copy)."""
    m = np.array(x, dtype=np.complex128, copy=True)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, "fro"))


def hermitian_defect(h: np.ndarray) -> float:
    return frob(h - adjoint(h))


def is_hermitian(h, tol: float = HERMITIAN_RTOL) -> bool:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    return hermitian_defect(h) <= tol * max(1.0, frob(h))


def require_hermitian(h, name: str = "matrix") -> np.ndarray:
    """Validate `h` and return its Hermitian part.

    Inputs whose anti-Hermitian part exceeds ``1e-10 * max(1, ||h||_F)`` are
    rejected; inputs within tolerance are replaced by ``(h + h*)/2``.
    """
    h = as_matrix(h, name)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {h.shape}")
    if not is_hermitian(h):
        raise NonHermitianInput(
            f"{name} is not Hermitian: ||H - H*||_F = {hermitian_defect(h):.3e}"
        )
    return 0.5 * (h + adjoint(h))


def _require_square(m: np.ndarray, name: str) -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues (real, descending) with the unitary matrix of eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ adjoint(v)


@dataclass(frozen=True)
class PolarFactors:
    """Right polar factors ``X = unitary @ modulus``."""

    unitary: np.ndarray
    modulus: np.ndarray


@dataclass(frozen=True)
class PSDCheck:
    """Outcome of :func:`is_psd`; truthy iff the matrix passed."""

    ok: bool
    min_eigenvalue: float

    def __bool__(self) -> bool:
        return self.ok


def _off_norm(h: np.ndarray) -> float:
    return frob(h - np.diag(np.diagonal(h)))


@functools.lru_cache(maxsize=64)
def _rounds(n: int) -> tuple:
    """Round-robin schedule: each round is a set of disjoint ``(p, q)`` pairs
    and every pair appears exactly once per sweep."""
    m = n + n % 2
    idx = list(range(m))
    out = []
    for _ in range(m - 1):
        pairs = sorted((min(idx[i], idx[m - 1 - i]), max(idx[i], idx[m - 1 - i])) for i in range(m // 2))
        pairs = [pq for pq in pairs if pq[1] < n]
        out.append((np.array([pq[0] for pq in pairs]), np.array([pq[1] for pq in pairs])))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return tuple(out)


def _jacobi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    target = JACOBI_RTOL * frob(a)
    polished = False
    for _ in range(JACOBI_MAX_SWEEPS):
        off = _off_norm(a)
        if off <= target:
            # one extra sweep: quadratic convergence makes the eigenvectors
            # accurate well beyond the stopping threshold
            if polished or off == 0.0:
                return a.diagonal().real.copy(), v
            polished = True
        for p, q in _rounds(n):
            apq = a[p, q]
            mag = np.abs(apq)
            live = mag > 0.0
            if not live.any():
                continue
            safe = np.where(live, mag, 1.0)
            phase = np.where(live, apq / safe, 1.0)
            app = a[p, p].real
            aqq = a[q, q].real
            theta = (aqq - app) / (2.0 * safe)
            t = np.where(live, np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # on each (p, q) plane: J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
            g = np.eye(n, dtype=np.complex128)
            g[p, p] = c
            g[p, q] = s
            g[q, p] = -s * phase.conj()
            g[q, q] = c * phase.conj()
            a = g.conj().T @ a @ g
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = app - t * mag
            a[q, q] = aqq + t * mag
            v = v @ g
    if _off_norm(a) <= target:
        return a.diagonal().real.copy(), v
    raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def herm_eig(h) -> SpectralData:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    Raises
    ------
    NonHermitianInput
        If ``||H - H*||_F > 1e-10 * max(1, ||H||_F)``.
    NoConvergence
        If the Jacobi sweep cap is reached.
    """
    a = require_hermitian(h, "H")
    w, v = _jacobi(a)
    order = np.argsort(-w, kind="stable")
    return SpectralData(w[order], v[:, order])


def eigvalsh(h) -> np.ndarray:
    return herm_eig(h).eigenvalues


def _orthonormal_completion(cols: list[np.ndarray], m: int) -> np.ndarray:
    """Modified Gram-Schmidt (two passes) over `cols`, then fill up to `m` columns."""
    basis: list[np.ndarray] = []

    def project_out(x: np.ndarray) -> np.ndarray:
        for _ in range(2):
            for b in basis:
                x = x - np.vdot(b, x) * b
        return x

    for c in cols:
        x = project_out(c)
        basis.append(x / np.linalg.norm(x))
    j = 0
    while len(basis) < m:
        e = np.zeros(m, dtype=np.complex128)
        e[j] = 1.0
        j += 1
        x = project_out(e)
        nrm = np.linalg.norm(x)
        if nrm > 1e-3:
            basis.append(x / nrm)
    return np.column_stack(basis)


def svd(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD ``X = U @ diag(s) @ V*`` with square unitary `U` and `V`.

    Hermitian input goes through :func:`herm_eig` directly (singular values
    are the absolute eigenvalues).  Otherwise the right singular vectors are
    the eigenvectors of ``X* X``; singular values are recovered as the column
    norms of ``X V`` and the left vectors by normalising those columns.
    Columns with ``s < 1e-12 * s_max`` are replaced by a Gram-Schmidt
    completion.
    """
    x = as_matrix(x, "X")
    m, k = x.shape
    p = min(m, k)
    if m == k and hermitian_defect(x) <= 1e-14 * frob(x):
        sd = herm_eig(0.5 * (x + adjoint(x)))
        order = np.argsort(-np.abs(sd.eigenvalues), kind="stable")
        w = sd.eigenvalues[order]
        q = sd.eigenvectors[:, order]
        signs = np.where(w < 0, -1.0, 1.0)
        return q * signs, np.abs(w), q

    v = herm_eig(adjoint(x) @ x).eigenvectors
    y = x @ v
    norms = np.linalg.norm(y, axis=0)
    order = np.argsort(-norms, kind="stable")
    v = v[:, order]
    y = y[:, order]
    s = norms[order][:p]
    smax = s[0] if p else 0.0
    big = [y[:, i] / s[i] for i in range(p) if s[i] > SMALL_SINGULAR_RTOL * smax and s[i] > 0]
    u = _orthonormal_completion(big, m)
    return u, s, v


def singular_values(x) -> np.ndarray:
    return svd(x)[1]


def polar_right(x) -> PolarFactors:
    """Polar decomposition ``X = U |X|`` with ``|X| = (X* X)^(1/2)``.

    For singular `X` the unitary factor is completed on the null space and is
    not unique.
    """
    x = as_matrix(x, "X")
    _require_square(x, "X")
    u, s, v = svd(x)
    unitary = u @ adjoint(v)
    mod = (v * s) @ adjoint(v)
    return PolarFactors(unitary, 0.5 * (mod + adjoint(mod)))


def is_psd(h, tol: float = PSD_RTOL) -> PSDCheck:
    """PSD test: ``lambda_min(H) >= -tol * max(1, ||H||_s)``."""
    w = herm_eig(h).eigenvalues
    lam_min = float(w[-1])
    scale = max(1.0, float(np.max(np.abs(w))))
    return PSDCheck(lam_min >= -tol * scale, lam_min)


def matrix_sqrt_psd(h, tol: float = PSD_RTOL) -> np.ndarray:
    sd = herm_eig(h)
    lam_min = float(sd.eigenvalues[-1])
    if lam_min < -tol * max(1.0, float(np.max(np.abs(sd.eigenvalues)))):
        raise NotPSD(f"matrix has eigenvalue {lam_min:.3e} < 0")
    v = sd.eigenvectors
    r = (v * np.sqrt(np.clip(sd.eigenvalues, 0.0, None))) @ adjoint(v)
    return 0.5 * (r + adjoint(r))


def det(m) -> complex:
    """Determinant via LU with partial pivoting (LAPACK getrf through numpy)."""
    m = as_matrix(m, "M")
    _require_square(m, "M")
    return complex(np.linalg.det(m))


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = as_matrix(u, "U")
    if u.shape[0] != u.shape[1]:
        return False
    return frob(adjoint(u) @ u - np.eye(u.shape[0])) <= tol


def commutator_norm(p: np.ndarray, q: np.ndarray) -> float:
    return frob(p @ q - q @ p)
