"""Independent reference computations used only by the tests.

Nothing here imports the code paths it checks.
"""
import numpy as np


def rand_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def rand_unitary(rng, n):
    q, r = np.linalg.qr(rand_complex(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def charpoly_spectral_radius(A):
    """Roots of the characteristic polynomial through its companion matrix."""
    return float(np.max(np.abs(np.roots(np.poly(A)))))


def brute_min_defect(A, rho, grid):
    """Plain loop over ``grid`` circle points, no refinement, no batching."""
    n = A.shape[0]
    AA = A.conj().T @ A
    best = np.inf
    for k in range(grid):
        s = np.exp(2j * np.pi * k / grid)
        M = np.conj(s) * A
        D = np.eye(n) - (1 - 1 / rho) * (M + M.conj().T) - (2 / rho - 1) * AA
        best = min(best, np.linalg.eigvalsh(D)[0])
    return best


def brute_rho_radius(A, rho, grid=4096, tol=1e-9):
    """Bisection on a with a fine plain grid; ``lo = 0``, ``hi = rho * ||A||``."""
    lo, hi = 0.0, rho * np.linalg.norm(A, 2) + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if brute_min_defect(A / mid, rho, grid) >= -1e-12:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def brute_numerical_radius(A, steps=20000):
    th = 2 * np.pi * np.arange(steps) / steps
    return max(np.linalg.eigvalsh((np.exp(-1j * t) * A + np.exp(1j * t) * A.conj().T) / 2)[-1] for t in th)


def k_rho_display(rho, s):
    """The bound function exactly as displayed (no rearrangement)."""
    return rho / 2 * (1 - s**2) + np.sqrt(rho**2 / 4 * (1 - s**2) ** 2 + s**2)


def jordan_norm_svd(a, b):
    return float(np.linalg.svd(np.array([[a, b], [0, a]]), compute_uv=False)[0])
