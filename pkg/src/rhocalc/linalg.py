"""Dense complex linear-algebra kernels.

Matrices are plain ``numpy`` complex arrays of shape ``(n, n)``; :func:`as_matrix`
is the single validation point.  Every tolerance is an absolute/relative hybrid
``tol * max(1, scale)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, SingularityError

HERMITIAN_TOL = 1e-12
SINGULAR_TOL = 1e-13
RESOLVENT_RESIDUAL_TOL = 1e-10


def as_matrix(M) -> np.ndarray:
    """Validate ``M`` as a finite square complex matrix and return a complex copy."""
    try:
        arr = np.array(M, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"cannot interpret input as a complex matrix: {exc}") from None
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InputError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    return arr


def adjoint(M: np.ndarray) -> np.ndarray:
    return np.swapaxes(M, -1, -2).conj()


def hermitian_part(M: np.ndarray) -> np.ndarray:
    """``(M + M*) / 2``; works on stacks of matrices too."""
    return 0.5 * (M + adjoint(M))


def op_norm(M) -> float:
    """Largest singular value."""
    M = as_matrix(M)
    return float(np.linalg.norm(M, 2))


@dataclass(frozen=True)
class HermitianEigenReport:
    eigenvalues: np.ndarray
    residual: float


def hermitian_eigen(H) -> HermitianEigenReport:
    """Full eigendecomposition of a Hermitian matrix with a residual check.

    Asymmetry beyond ``1e-12 * max(1, ||H||)`` is rejected, the input is then
    symmetrized before solving.
    """
    H = as_matrix(H)
    scale = max(1.0, float(np.linalg.norm(H, 2)))
    asym = np.abs(H - H.conj().T)
    if asym.max() > HERMITIAN_TOL * scale:
        i, j = np.unravel_index(int(np.argmax(asym)), asym.shape)
        raise InputError(
            f"matrix is not Hermitian: entries ({i},{j}) and ({j},{i}) differ "
            f"by {asym[i, j]:.3e} beyond tolerance {HERMITIAN_TOL * scale:.3e}"
        )
    Hs = hermitian_part(H)
    w, V = np.linalg.eigh(Hs)
    residual = float(np.max(np.linalg.norm(Hs @ V - V * w, axis=0)))
    return HermitianEigenReport(eigenvalues=w, residual=residual)


def min_eig_hermitian(H) -> float:
    """Smallest eigenvalue of a Hermitian matrix (validated, then symmetrized)."""
    return float(hermitian_eigen(H).eigenvalues[0])


def min_eig_batch(Hs: np.ndarray) -> np.ndarray:
    """Smallest eigenvalue of each matrix in a stack built Hermitian by construction.

    Only the lower triangle is read, so no symmetrization is done here.
    """
    return np.linalg.eigvalsh(Hs)[..., 0]


def _check_shift(A: np.ndarray, lam: complex) -> np.ndarray:
    n = A.shape[0]
    shifted = lam * np.eye(n) - A
    smin = np.linalg.svd(shifted, compute_uv=False)[-1]
    if smin <= SINGULAR_TOL * max(1.0, float(np.linalg.norm(A, 2))):
        raise SingularityError(f"shift {lam!r} is (numerically) an eigenvalue", point=lam)
    return shifted


def resolvent(A, lam: complex) -> np.ndarray:
    """``(lam I - A)^{-1}``."""
    A = as_matrix(A)
    lam = complex(lam)
    shifted = _check_shift(A, lam)
    I = np.eye(A.shape[0])
    R = np.linalg.solve(shifted, I)
    res = max(np.linalg.norm(shifted @ R - I, 2), np.linalg.norm(R @ shifted - I, 2))
    if res > RESOLVENT_RESIDUAL_TOL:
        raise SingularityError(
            f"resolvent at {lam!r} too ill-conditioned (residual {res:.2e})", point=lam
        )
    return R


def resolvents(A: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Stack of ``(p I - A)^{-1}`` for each point; caller guarantees invertibility."""
    n = A.shape[0]
    shifted = points[:, None, None] * np.eye(n) - A
    return np.linalg.solve(shifted, np.broadcast_to(np.eye(n, dtype=complex), shifted.shape))


def spectral_radius(A) -> float:
    A = as_matrix(A)
    return float(np.max(np.abs(np.linalg.eigvals(A))))


# -- JSON -------------------------------------------------------------------

def complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    try:
        z = complex(float(obj["re"]), float(obj.get("im", 0.0)))
    except (KeyError, TypeError, ValueError, AttributeError):
        raise InputError(f"bad complex number: {obj!r}") from None
    if not np.isfinite(z):
        raise InputError(f"non-finite complex number: {obj!r}")
    return z


def matrix_to_json(A) -> dict:
    A = as_matrix(A)
    return {"dim": A.shape[0], "re": A.real.tolist(), "im": A.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": n, "re": [[...]], "im": [[...]]}``; ``im`` may be omitted."""
    if not isinstance(obj, dict) or "re" not in obj:
        raise InputError("matrix JSON must be an object with 're' (and optionally 'im', 'dim')")
    re = obj["re"]
    im = obj.get("im")
    dim = obj.get("dim", len(re) if isinstance(re, list) else None)
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"bad dim: {dim!r}")

    def rows(part, name):
        if not isinstance(part, list) or len(part) != dim:
            raise InputError(f"'{name}' must have {dim} rows")
        for r in part:
            if not isinstance(r, list) or len(r) != dim:
                raise InputError(f"'{name}' is ragged or has the wrong row length")
        try:
            return np.array(part, dtype=float)
        except (TypeError, ValueError):
            raise InputError(f"'{name}' has non-numeric entries") from None

    A = rows(re, "re").astype(complex)
    if im is not None:
        A = A + 1j * rows(im, "im")
    return as_matrix(A)
