"""Dense complex-matrix helpers shared across the package.

Every block handled by hapkit is a square complex128 matrix.  The operator
(spectral) norm is the norm used throughout; the Frobenius norm only ever
appears as a cheap upper bound to skip SVDs.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg


def as_block(mat, dim: int | None = None) -> np.ndarray:
    """Coerce ``mat`` to a read-only square complex128 array."""
    a = np.array(mat, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"block must be a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"block has side {a.shape[0]}, expected {dim}")
    a.setflags(write=False)
    return a


def spectral_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


def frobenius_norm(a: np.ndarray) -> float:
    # Upper bound for the spectral norm; used only as a pre-filter.
    return float(np.linalg.norm(a))


def hermitian_residual(a: np.ndarray) -> float:
    """Operator-norm distance of ``a`` from its adjoint."""
    return spectral_norm(a - a.conj().T)


def hermitize(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2.0


def min_eigenvalue(a: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian part of ``a``."""
    return float(np.linalg.eigvalsh(hermitize(a))[0])


def expm_neg(a: np.ndarray, t: float, herm_tol: float = 1e-12) -> np.ndarray:
    """Evaluate exp(-t*a).

    Hermitian input goes through an eigendecomposition (exact up to the
    backward error of the eigensolver); anything else falls back to
    scaling-and-squaring.
    """
    a = np.asarray(a, dtype=np.complex128)
    scale = max(1.0, spectral_norm(a))
    if hermitian_residual(a) <= herm_tol * scale:
        w, v = np.linalg.eigh(hermitize(a))
        return (v * np.exp(-t * w)) @ v.conj().T
    return scipy.linalg.expm(-t * a)


def psd_sqrt(a: np.ndarray, tol: float) -> tuple[np.ndarray, float]:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-tol, 0) are clamped to 0; an eigenvalue below -tol
    raises.  Returns the root and the largest clamp magnitude applied.
    """
    w, v = np.linalg.eigh(hermitize(a))
    lo = float(w[0])
    if lo < -tol:
        raise ValueError(f"matrix is not positive semidefinite: eigenvalue {lo}")
    clamp = max(0.0, -lo)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T, clamp
