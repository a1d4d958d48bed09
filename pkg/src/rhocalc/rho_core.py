"""Characterizations of rho-contractions and the numerical rho-radius.

A matrix ``A`` is a rho-contraction (``rho >= 1``) when the boundary defect

    I - 2(1 - 1/rho) Re(conj(sigma) A) - (2/rho - 1) A* A

is positive semidefinite for every ``sigma`` on the unit circle.  The numerical
rho-radius ``w_rho(A)`` is the smallest ``a > 0`` for which ``A / a`` is one; it
equals the operator norm for ``rho = 1`` and the numerical radius for ``rho = 2``.

"For all sigma" is replaced by a sampled certificate: a uniform grid on the
circle, local refinement around the lowest grid minima and grid doubling until
the minimum eigenvalue stabilizes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError, DomainError, InputError, SingularityError
from .linalg import (
    SINGULAR_TOL,
    as_matrix,
    complex_to_json,
    hermitian_part,
    min_eig_batch,
    op_norm,
    resolvent,
    resolvents,
    spectral_radius,
)

DEFAULT_GRID = 1024
GRID_CAP = 16384
GRID_CHANGE_TOL = 1e-10
PSD_TOL = 1e-9
BISECTION_TOL = 1e-8
MAX_ITER = 200
UNIT_TOL = 1e-12
_REFINE_CANDIDATES = 3


def check_rho(rho) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho < 1.0:
        raise InputError(f"rho must be a finite number >= 1, got {rho!r}")
    return rho


def psd_tol(A: np.ndarray) -> float:
    """Default positivity tolerance; defect entries scale with ``||A||**2``."""
    return PSD_TOL * max(1.0, op_norm(A) ** 2)


def _check_unit(sigma) -> complex:
    sigma = complex(sigma)
    if abs(abs(sigma) - 1.0) > UNIT_TOL:
        raise InputError(f"|sigma| must be 1, got |{sigma!r}| = {abs(sigma)!r}")
    return sigma


def _check_open_disk_spectrum(A: np.ndarray) -> None:
    r = spectral_radius(A)
    if r >= 1.0:
        raise DomainError(
            f"spectral radius {r:.6g} >= 1; retract the spectrum first (retract_spectrum)"
        )


@dataclass
class PositivityCertificate:
    """Sampled evidence for (or against) positivity of a defect family."""

    grid_size: int
    worst_point: complex
    min_eig: float
    tol: float
    verdict: str = field(init=False)

    def __post_init__(self):
        self.verdict = "positive" if self.min_eig >= -self.tol else "violated"

    @property
    def positive(self) -> bool:
        return self.verdict == "positive"

    def to_json(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "worst_point": complex_to_json(self.worst_point),
            "min_eig": self.min_eig,
            "tol": self.tol,
            "verdict": self.verdict,
        }


@dataclass
class RadiusResult:
    value: float
    bracket: tuple[float, float]
    iterations: int
    certificates: tuple[PositivityCertificate, PositivityCertificate]

    def to_json(self) -> dict:
        lo, hi = self.certificates
        return {
            "value": self.value,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "certificates": {"lo": lo.to_json(), "hi": hi.to_json()},
        }


# -- defects and kernels ------------------------------------------------------

def boundary_defect(A, rho, sigma) -> np.ndarray:
    A = as_matrix(A)
    rho = check_rho(rho)
    sigma = _check_unit(sigma)
    n = A.shape[0]
    return (
        np.eye(n)
        - 2 * (1 - 1 / rho) * hermitian_part(sigma.conjugate() * A)
        - (2 / rho - 1) * (A.conj().T @ A)
    )


def disk_defect(A, rho, z) -> np.ndarray:
    A = as_matrix(A)
    rho = check_rho(rho)
    z = complex(z)
    if abs(z) > 1 + UNIT_TOL:
        raise InputError(f"|z| must be <= 1, got {abs(z)!r}")
    n = A.shape[0]
    coeff = 1 / rho**2 - (1 - 1 / rho) ** 2 * abs(z) ** 2
    return np.eye(n) - 2 * (1 - 1 / rho) * hermitian_part(z.conjugate() * A) - coeff * (A.conj().T @ A)


def poisson_kernel(A, sigma) -> np.ndarray:
    """``(1/pi) Re(sigma (sigma I - A)^{-1})`` for spectrum inside the open disk."""
    A = as_matrix(A)
    sigma = _check_unit(sigma)
    _check_open_disk_spectrum(A)
    return hermitian_part(sigma * resolvent(A, sigma)) / np.pi


def poisson_kernels(A: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """Batched :func:`poisson_kernel` without per-point validation."""
    R = resolvents(A, sigmas)
    return hermitian_part(sigmas[:, None, None] * R) / np.pi


def boundary_identity_residual(A, rho, sigma) -> float:
    """Norm of ``2 pi P(sigma, A) - (2 - rho) I - rho R* D R`` with ``R = (sigma - A)^{-1}``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    sigma = _check_unit(sigma)
    n = A.shape[0]
    lhs = 2 * np.pi * poisson_kernel(A, sigma) - (2 - rho) * np.eye(n)
    R = resolvent(A, sigma)
    rhs = rho * (R.conj().T @ boundary_defect(A, rho, sigma) @ R)
    return float(np.linalg.norm(lhs - rhs, 2))


def cayley_resolvent(A, rho, z) -> np.ndarray:
    """``S_rho(z) = (I - (1/rho + (1 - 1/rho) conj(z)) A)^{-1}``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    z = complex(z)
    n = A.shape[0]
    M = np.eye(n) - (1 / rho + (1 - 1 / rho) * z.conjugate()) * A
    smin = np.linalg.svd(M, compute_uv=False)[-1]
    if smin <= SINGULAR_TOL * max(1.0, op_norm(A)):
        raise SingularityError(f"S_rho({z!r}) does not exist", point=z)
    return np.linalg.solve(M, np.eye(n))


def cayley_identity_residual(A, rho, z) -> float:
    """Norm of ``S* D(z) S - Re(I + (2/rho) A S)``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    S = cayley_resolvent(A, rho, z)
    n = A.shape[0]
    lhs = S.conj().T @ disk_defect(A, rho, z) @ S
    rhs = hermitian_part(np.eye(n) + (2 / rho) * (A @ S))
    return float(np.linalg.norm(lhs - rhs, 2))


# -- sampled minimization on the circle ----------------------------------------

def _refined_circle_min(stack_fn, n_points: int) -> tuple[float, float]:
    """Min over a uniform angle grid, polished around the lowest local minima."""
    h = 2 * np.pi / n_points
    thetas = h * np.arange(n_points)
    vals = min_eig_batch(stack_fn(thetas))
    k_best = int(np.argmin(vals))
    best_val, best_theta = float(vals[k_best]), float(thetas[k_best])

    is_local = (vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1))
    candidates = np.flatnonzero(is_local)
    candidates = candidates[np.argsort(vals[candidates], kind="stable")][:_REFINE_CANDIDATES]

    def scalar(t):
        return float(min_eig_batch(stack_fn(np.array([t])))[0])

    for k in candidates:
        res = minimize_scalar(
            scalar,
            bounds=(thetas[k] - h, thetas[k] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if res.fun < best_val:
            best_val, best_theta = float(res.fun), float(res.x)
    return best_val, best_theta % (2 * np.pi)


def _adaptive_circle_min(stack_fn, grid_size: int, stop_below=None, cap: int = GRID_CAP):
    """Double the grid until the refined minimum moves by less than ``GRID_CHANGE_TOL``.

    A value below ``stop_below`` ends the search at once: a sampled negative
    value already certifies a violation.
    """
    n = int(grid_size)
    prev = None
    while True:
        val, theta = _refined_circle_min(stack_fn, n)
        if stop_below is not None and val < stop_below:
            break
        if prev is not None and abs(val - prev) < GRID_CHANGE_TOL:
            break
        if n >= cap:
            break
        prev = val
        n *= 2
    return val, theta, n


def _boundary_stack_fn(A: np.ndarray, rho: float):
    n = A.shape[0]
    alpha = 2 * (1 - 1 / rho)
    base = np.eye(n) - (2 / rho - 1) * (A.conj().T @ A)
    Ah = A.conj().T

    def stack(thetas):
        e = np.exp(-1j * thetas)[:, None, None]
        return base - 0.5 * alpha * (e * A + e.conj() * Ah)

    return stack


def _check_grid(grid_size, minimum=16) -> int:
    grid_size = int(grid_size)
    if grid_size < minimum:
        raise InputError(f"grid size must be >= {minimum}, got {grid_size}")
    return grid_size


def is_rho_contraction_boundary(A, rho, grid_size: int = DEFAULT_GRID, tol=None) -> PositivityCertificate:
    """Sampled positivity of the boundary defect over the unit circle.

    ``worst_point`` is the (refined) point on the circle where the smallest
    eigenvalue was found; ``grid_size`` is the final grid after doubling.
    """
    A = as_matrix(A)
    rho = check_rho(rho)
    grid_size = _check_grid(grid_size)
    tol = psd_tol(A) if tol is None else float(tol)
    val, theta, n = _adaptive_circle_min(_boundary_stack_fn(A, rho), grid_size, stop_below=-tol)
    return PositivityCertificate(grid_size=n, worst_point=complex(np.exp(1j * theta)), min_eig=val, tol=tol)


def is_rho_contraction_kernel(A, rho, grid_size: int = DEFAULT_GRID, tol=None) -> PositivityCertificate:
    """Sampled positivity of ``P(sigma, A) - (2 - rho)/(2 pi)``; spectrum must lie in the open disk.

    The default tolerance is the boundary one divided by ``2 pi``.
    """
    A = as_matrix(A)
    rho = check_rho(rho)
    grid_size = _check_grid(grid_size)
    _check_open_disk_spectrum(A)
    tol = psd_tol(A) / (2 * np.pi) if tol is None else float(tol)
    shift = (2 - rho) / (2 * np.pi) * np.eye(A.shape[0])

    def stack(thetas):
        return poisson_kernels(A, np.exp(1j * thetas)) - shift

    val, theta, n = _adaptive_circle_min(stack, grid_size, stop_below=-tol)
    return PositivityCertificate(grid_size=n, worst_point=complex(np.exp(1j * theta)), min_eig=val, tol=tol)


def disk_grid_min(A, rho, radial_steps: int, angular_steps: int) -> tuple[float, complex]:
    """Minimum of the smallest disk-defect eigenvalue over the interior polar grid (``|z| < 1``)."""
    A = as_matrix(A)
    rho = check_rho(rho)
    n = A.shape[0]
    radii = np.arange(radial_steps) / radial_steps
    angles = 2 * np.pi * np.arange(angular_steps) / angular_steps
    z = np.concatenate([[0.0 + 0j], (radii[1:, None] * np.exp(1j * angles)[None, :]).ravel()])
    AA = A.conj().T @ A
    coeff = 1 / rho**2 - (1 - 1 / rho) ** 2 * np.abs(z) ** 2
    zA = z.conj()[:, None, None] * A
    stack = np.eye(n) - 2 * (1 - 1 / rho) * hermitian_part(zA) - coeff[:, None, None] * AA
    vals = min_eig_batch(stack)
    k = int(np.argmin(vals))
    return float(vals[k]), complex(z[k])


def is_rho_contraction_disk(
    A, rho, radial_steps: int = 64, angular_steps: int = 512, tol=None
) -> PositivityCertificate:
    """Sampled positivity of the disk defect over the closed unit disk.

    The polar interior grid is combined with a refined scan of the boundary
    circle, where the minimum is expected.
    """
    A = as_matrix(A)
    rho = check_rho(rho)
    if radial_steps < 4:
        raise InputError("radial_steps must be >= 4")
    angular_steps = _check_grid(angular_steps)
    tol = psd_tol(A) if tol is None else float(tol)
    interior, z_in = disk_grid_min(A, rho, radial_steps, angular_steps)
    boundary = is_rho_contraction_boundary(A, rho, angular_steps, tol)
    if interior < boundary.min_eig:
        return PositivityCertificate(
            grid_size=boundary.grid_size, worst_point=z_in, min_eig=interior, tol=tol
        )
    return boundary


def numerical_radius_oracle(A, angular_steps: int = 1024) -> float:
    """``max_theta lambda_max(Re(e^{-i theta} A))``, an independent route to ``w_2``."""
    A = as_matrix(A)
    angular_steps = _check_grid(angular_steps, minimum=64)
    Ah = A.conj().T

    def stack(thetas):
        e = np.exp(-1j * thetas)[:, None, None]
        return -0.5 * (e * A + e.conj() * Ah)

    val, _ = _refined_circle_min(stack, angular_steps)
    return -val


def retract_spectrum(A, margin: float) -> tuple[np.ndarray, float]:
    """Scale ``A`` so that its spectral radius is at most ``1 - margin``."""
    A = as_matrix(A)
    if not 0 < margin < 1:
        raise InputError(f"margin must lie in (0, 1), got {margin!r}")
    r_spec = spectral_radius(A)
    if r_spec >= 1 - margin:
        r = min(1.0, (1 - margin) / r_spec)
        return r * A, r
    return A, 1.0


# -- numerical rho-radius -----------------------------------------------------

def rho_radius(A, rho, tol: float = BISECTION_TOL, grid_size: int = DEFAULT_GRID,
               max_iter: int = MAX_ITER) -> RadiusResult:
    """Numerical rho-radius by bisection on the scale ``a`` of ``A / a``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol!r}")
    grid_size = _check_grid(grid_size)
    norm = op_norm(A)

    if norm == 0.0:
        cert = PositivityCertificate(grid_size=grid_size, worst_point=1 + 0j, min_eig=1.0, tol=PSD_TOL)
        return RadiusResult(0.0, (0.0, 0.0), 0, (cert, cert))

    def feasible(a):
        B = A / a
        return is_rho_contraction_boundary(B, rho, grid_size, psd_tol(B))

    if rho == 1.0:
        cert = feasible(norm)
        return RadiusResult(norm, (norm, norm), 0, (cert, cert))

    lo = max(spectral_radius(A), norm / rho)
    hi = norm
    hi_cert = feasible(hi)
    doublings = 0
    while not hi_cert.positive:
        if doublings == 3:
            raise ConvergenceError(
                "upper bracket ||A|| infeasible after 3 doublings",
                {"hi": hi, "min_eig": hi_cert.min_eig, "rho": rho},
            )
        hi *= 2
        doublings += 1
        hi_cert = feasible(hi)

    lo = min(lo, hi)
    lo_cert = feasible(lo)
    if lo_cert.positive:
        return RadiusResult(lo, (lo, lo), 0, (lo_cert, lo_cert))

    iterations = 0
    while hi - lo > tol:
        if iterations >= max_iter:
            raise ConvergenceError(
                f"bisection did not reach tol {tol} in {max_iter} iterations",
                {"lo": lo, "hi": hi, "rho": rho},
            )
        mid = 0.5 * (lo + hi)
        cert = feasible(mid)
        if cert.positive:
            hi, hi_cert = mid, cert
        else:
            lo, lo_cert = mid, cert
        iterations += 1
    return RadiusResult(0.5 * (lo + hi), (lo, hi), iterations, (lo_cert, hi_cert))


__all__ = [
    "PositivityCertificate",
    "RadiusResult",
    "boundary_defect",
    "boundary_identity_residual",
    "cayley_identity_residual",
    "cayley_resolvent",
    "check_rho",
    "disk_defect",
    "disk_grid_min",
    "is_rho_contraction_boundary",
    "is_rho_contraction_disk",
    "is_rho_contraction_kernel",
    "numerical_radius_oracle",
    "poisson_kernel",
    "psd_tol",
    "retract_spectrum",
    "rho_radius",
]
