"""Dense complex matrix kernel: Hermitian spectra and spectral calculus.

Every spectral quantity in this package funnels through
:func:`hermitian_eigen`, a cyclic Jacobi iteration with complex
rotations.  Jacobi is slower than blocked QR but converges
unconditionally on Hermitian input, needs no shift heuristics, and at
the sizes handled here (tens of rows, occasionally a few hundred) the
cost is irrelevant next to auditability.

Near-Hermitian input is folded to its Hermitian part ``(M + M*)/2``
before iterating; asymmetry beyond ``HERMITIAN_RTOL`` (relative
Frobenius) is an error rather than something to fix silently, so that
assembly bugs surface where they happen.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import (
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
    SingularMatrixError,
)

#: Absolute tolerance on eigenvalues for positivity decisions.
DEFAULT_TOL = 1e-9

#: Relative Frobenius tolerance between M and M* beyond which input is rejected.
HERMITIAN_RTOL = 1e-9

#: Full cyclic sweeps allowed before giving up.
JACOBI_SWEEP_CAP = 100

# Convergence target: off-diagonal Frobenius mass relative to ||M||_F.
_JACOBI_OFFDIAG_RTOL = 1e-13


def as_matrix(data) -> np.ndarray:
    """Validate and normalize input into a fresh 2-D complex128 array.

    Rejects empty shapes and non-finite entries.
    """
    mat = np.array(data, dtype=complex, order="C")
    if mat.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={mat.ndim}")
    if mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ValueError(f"matrix must be nonempty, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError("matrix entries must be finite")
    return mat


def frobenius(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat))


def hermitian_defect(mat: np.ndarray) -> float:
    """Frobenius distance between a matrix and its conjugate transpose."""
    return frobenius(mat - mat.conj().T)


def require_square(mat: np.ndarray, where: str) -> None:
    if mat.shape[0] != mat.shape[1]:
        raise NotSquareError(
            f"{where}: expected a square matrix, got {mat.shape[0]}x{mat.shape[1]}"
        )


class SpectralResult(NamedTuple):
    """Ascending real eigenvalues and the matching unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _offdiag_mass(mat: np.ndarray) -> float:
    off = mat.copy()
    np.fill_diagonal(off, 0.0)
    return frobenius(off)


def _jacobi_rotate(work: np.ndarray, vecs: np.ndarray, p: int, q: int) -> None:
    """Zero work[p, q] with a unitary plane rotation, accumulated into vecs.

    The pivot's phase is factored out first so the usual real formulas
    apply: with work[p, q] = |b| e^(i phi), the rotation is
    diag(1, e^(-i phi)) composed with the classic symmetric-Jacobi
    rotation on [[a_pp, |b|], [|b|, a_qq]].
    """
    pivot = work[p, q]
    if pivot == 0:
        return
    mag = abs(pivot)
    phase = pivot / mag
    tau = (work[q, q].real - work[p, p].real) / (2.0 * mag)
    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    s = t * c
    rot = np.array(
        [[c, s], [-s * phase.conjugate(), c * phase.conjugate()]], dtype=complex
    )
    cols = [p, q]
    work[:, cols] = work[:, cols] @ rot
    work[cols, :] = rot.conj().T @ work[cols, :]
    work[p, q] = 0.0
    work[q, p] = 0.0
    work[p, p] = work[p, p].real
    work[q, q] = work[q, q].real
    vecs[:, cols] = vecs[:, cols] @ rot


def hermitian_eigen(matrix, *, max_sweeps: int = JACOBI_SWEEP_CAP) -> SpectralResult:
    """Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius mass drops below
    1e-13 * ||M||_F; raises NoConvergenceError if `max_sweeps` full
    sweeps do not get there.
    """
    mat = as_matrix(matrix)
    require_square(mat, "hermitian_eigen")
    scale = frobenius(mat)
    defect = hermitian_defect(mat)
    if defect > HERMITIAN_RTOL * max(1.0, scale):
        raise NotHermitianError(
            f"hermitian_eigen: symmetry defect {defect:.3e} exceeds "
            f"{HERMITIAN_RTOL:.0e} * max(1, ||M||_F)"
        )
    work = (mat + mat.conj().T) / 2.0
    n = work.shape[0]
    vecs = np.eye(n, dtype=complex)
    target = _JACOBI_OFFDIAG_RTOL * frobenius(work)
    sweeps = 0
    while _offdiag_mass(work) > target:
        if sweeps >= max_sweeps:
            raise NoConvergenceError(
                f"hermitian_eigen: off-diagonal mass {_offdiag_mass(work):.3e} "
                f"still above target {target:.3e} after {max_sweeps} sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(work, vecs, p, q)
        sweeps += 1
    eigenvalues = np.diag(work).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralResult(eigenvalues[order], vecs[:, order])


def psd_check(matrix, tol: float = DEFAULT_TOL) -> bool:
    """True iff the Hermitian part of `matrix` has no eigenvalue below -tol."""
    mat = as_matrix(matrix)
    require_square(mat, "psd_check")
    if tol < 0:
        raise ValueError("psd_check: tolerance must be nonnegative")
    herm = (mat + mat.conj().T) / 2.0
    return bool(hermitian_eigen(herm).eigenvalues[0] >= -tol)


def operator_norm(matrix) -> float:
    """Largest singular value, via the smaller of the two Gram matrices."""
    mat = as_matrix(matrix)
    rows, cols = mat.shape
    gram = mat @ mat.conj().T if rows <= cols else mat.conj().T @ mat
    top = float(hermitian_eigen(gram).eigenvalues[-1])
    return math.sqrt(max(top, 0.0))


def sigma_min(matrix) -> float:
    """sqrt of the smallest eigenvalue of M* M, clamped at zero.

    M* M is rank deficient for a wide matrix, so this reports 0 there;
    for square input it is the smallest singular value.
    """
    mat = as_matrix(matrix)
    gram = mat.conj().T @ mat
    bottom = float(hermitian_eigen(gram).eigenvalues[0])
    return math.sqrt(max(bottom, 0.0))


def hermitian_inverse(matrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Spectral inverse of a Hermitian matrix with lambda_min > tol."""
    result = hermitian_eigen(matrix)
    smallest = float(result.eigenvalues[0])
    if smallest <= tol:
        raise SingularMatrixError(
            f"hermitian_inverse: smallest eigenvalue {smallest:.3e} is not above "
            f"tolerance {tol:.3e}"
        )
    vecs = result.eigenvectors
    inv = (vecs / result.eigenvalues) @ vecs.conj().T
    return (inv + inv.conj().T) / 2.0


def psd_sqrt(matrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Positive semidefinite square root via spectral calculus.

    Eigenvalues in [-tol, 0) are treated as roundoff and clamped to 0;
    anything below -tol raises NotPSDError.
    """
    result = hermitian_eigen(matrix)
    smallest = float(result.eigenvalues[0])
    if smallest < -tol:
        raise NotPSDError(
            f"psd_sqrt: smallest eigenvalue {smallest:.3e} below -{tol:.3e}"
        )
    clipped = np.clip(result.eigenvalues, 0.0, None)
    vecs = result.eigenvectors
    root = (vecs * np.sqrt(clipped)) @ vecs.conj().T
    return (root + root.conj().T) / 2.0
