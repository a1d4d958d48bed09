"""Rational functions on the closed unit disk and their matrix functional calculus.

Coefficients are stored in ascending degree.  Blaschke factors follow the
Moebius form ``g_lam(z) = (lam + z) / (1 + conj(lam) z)``: a factor vanishing at
``a`` is ``g_{-a}(z) = (z - a) / (1 - conj(a) z)``.  This convention is used
everywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import minimize_scalar

from .errors import DomainError, InputError, SingularityError
from .linalg import as_matrix, complex_from_json, complex_to_json, hermitian_part, resolvents, spectral_radius
from .rho_core import check_rho, poisson_kernels

POLE_MARGIN = 1e-9
EVAL_SINGULAR_TOL = 1e-14
MATRIX_SINGULAR_TOL = 1e-12
QUAD_CHANGE_TOL = 1e-10
QUAD_CAP = 2**16
SUP_CAP = 2**16


def _trim(c: np.ndarray) -> np.ndarray:
    """Drop trailing (highest-degree) coefficients that are zero relative to the largest."""
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if c.size == 0:
        return np.zeros(1, dtype=complex)
    scale = np.abs(c).max()
    if scale == 0:
        return c[:1] * 0
    keep = np.flatnonzero(np.abs(c) > 1e-15 * scale)
    return c[: keep[-1] + 1].copy()


@dataclass(frozen=True)
class RationalFunction:
    """``numerator(z) / denominator(z)`` with all poles off the closed unit disk."""

    numerator: np.ndarray
    denominator: np.ndarray
    poles: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        num = _trim(self.numerator)
        den = _trim(self.denominator)
        if not (np.all(np.isfinite(num)) and np.all(np.isfinite(den))):
            raise InputError("coefficients must be finite")
        if np.abs(den).max() == 0:
            raise InputError("denominator is identically zero")
        poles = P.polyroots(den) if den.size > 1 else np.zeros(0, dtype=complex)
        if poles.size and np.abs(poles).min() < 1 + POLE_MARGIN:
            bad = poles[np.argmin(np.abs(poles))]
            raise InputError(f"denominator has a root at {bad!r} inside or too near the closed unit disk")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "poles", poles)

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(np.array([c], dtype=complex), np.array([1.0 + 0j]))

    @classmethod
    def polynomial(cls, coeffs) -> "RationalFunction":
        return cls(np.asarray(coeffs, dtype=complex), np.array([1.0 + 0j]))

    @property
    def degree(self) -> int:
        return max(self.numerator.size, self.denominator.size) - 1

    def __call__(self, z):
        return eval_scalar(self, z)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            P.polymul(self.numerator, other.numerator), P.polymul(self.denominator, other.denominator)
        )

    def to_json(self) -> dict:
        return {
            "num": [complex_to_json(c) for c in self.numerator],
            "den": [complex_to_json(c) for c in self.denominator],
        }

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        if not isinstance(obj, dict):
            raise InputError("function JSON must be an object")
        if "zeros" in obj:
            return BlaschkeSpec.from_json(obj).to_rational()
        if "num" not in obj or "den" not in obj:
            raise InputError("rational function JSON needs 'num' and 'den'")
        num = [complex_from_json(c) for c in obj["num"]]
        den = [complex_from_json(c) for c in obj["den"]]
        if not num or not den:
            raise InputError("empty coefficient list")
        return cls(np.array(num), np.array(den))


@dataclass(frozen=True)
class BlaschkeSpec:
    """Finite Blaschke product ``phase * prod_j g_{-a_j}`` with zeros ``a_j`` in the open disk."""

    zeros: tuple
    unimodular_factor: complex = 1 + 0j

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        if any(abs(a) >= 1 for a in zeros):
            raise InputError("Blaschke zeros must lie in the open unit disk")
        phase = complex(self.unimodular_factor)
        if abs(abs(phase) - 1) > 1e-12:
            raise InputError(f"unimodular factor must have modulus 1, got {abs(phase)!r}")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "unimodular_factor", phase)

    def to_rational(self) -> RationalFunction:
        num = np.array([self.unimodular_factor])
        den = np.array([1.0 + 0j])
        for a in self.zeros:
            num = P.polymul(num, [-a, 1.0])
            den = P.polymul(den, [1.0, -a.conjugate()])
        return RationalFunction(num, den)

    def to_json(self) -> dict:
        return {"zeros": [complex_to_json(a) for a in self.zeros], "phase": complex_to_json(self.unimodular_factor)}

    @classmethod
    def from_json(cls, obj) -> "BlaschkeSpec":
        zeros = [complex_from_json(a) for a in obj.get("zeros", [])]
        phase = complex_from_json(obj.get("phase", {"re": 1.0, "im": 0.0}))
        return cls(tuple(zeros), phase)


@dataclass(frozen=True)
class BoundaryGrid:
    """Uniform nodes ``exp(2 pi i k / size)`` on the unit circle."""

    size: int = 1024

    def __post_init__(self):
        s = int(self.size)
        if s < 16 or s & (s - 1):
            raise InputError(f"grid size must be a power of two >= 16, got {self.size!r}")

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.size) / self.size)

    @property
    def weight(self) -> float:
        """Arc length ``|d sigma|`` per node."""
        return 2 * np.pi / self.size

    def doubled(self) -> "BoundaryGrid":
        return BoundaryGrid(2 * self.size)


# -- scalar evaluation -------------------------------------------------------

def eval_scalar(f: RationalFunction, z):
    """Evaluate ``f`` at a scalar or array of points."""
    z = np.asarray(z, dtype=complex)
    q = P.polyval(z, f.denominator)
    if np.any(np.abs(q) < EVAL_SINGULAR_TOL):
        raise SingularityError("denominator vanishes at the evaluation point", point=z)
    out = P.polyval(z, f.numerator) / q
    return complex(out) if out.ndim == 0 else out


def derivative_at_zero(f: RationalFunction) -> complex:
    n = np.concatenate([f.numerator, [0, 0]])
    d = np.concatenate([f.denominator, [0, 0]])
    return complex((n[1] * d[0] - n[0] * d[1]) / d[0] ** 2)


def sup_norm(f: RationalFunction, grid: BoundaryGrid | None = None) -> float:
    """``max |f|`` on the unit circle (equal to the sup over the closed disk)."""
    grid = grid or BoundaryGrid()
    n = grid.size
    prev = None
    while True:
        h = 2 * np.pi / n
        theta = h * np.arange(n)
        vals = np.abs(eval_scalar(f, np.exp(1j * theta)))
        k = int(np.argmax(vals))
        res = minimize_scalar(
            lambda t: -abs(eval_scalar(f, np.exp(1j * t))),
            bounds=(theta[k] - h, theta[k] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        val = max(float(vals[k]), -float(res.fun))
        if prev is not None and abs(val - prev) < QUAD_CHANGE_TOL or n >= SUP_CAP:
            return val
        prev = val
        n *= 2


# -- matrix calculus -----------------------------------------------------------

def _matrix_polyval(coeffs: np.ndarray, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    out = coeffs[-1] * np.eye(n, dtype=complex)
    for c in coeffs[-2::-1]:
        out = out @ A + c * np.eye(n)
    return out


def eval_matrix(f: RationalFunction, A) -> np.ndarray:
    """``p(A) q(A)^{-1}`` with Horner evaluation of both polynomials."""
    A = as_matrix(A)
    p = _matrix_polyval(f.numerator, A)
    q = _matrix_polyval(f.denominator, A)
    qnorm = np.linalg.norm(q, 2)
    smin = np.linalg.svd(q, compute_uv=False)[-1]
    if smin <= MATRIX_SINGULAR_TOL * max(1.0, qnorm):
        raise SingularityError("q(A) is numerically singular: a pole of f is an eigenvalue of A")
    X = np.linalg.solve(q, p)
    res = np.linalg.norm(q @ X - p, 2)
    if res > 1e-9 * max(1.0, np.linalg.norm(p, 2)):
        raise SingularityError(f"q(A) too ill-conditioned (residual {res:.2e})")
    return X


def _require_open_disk(A: np.ndarray) -> None:
    r = spectral_radius(A)
    if r >= 1:
        raise DomainError(f"spectral radius {r:.6g} >= 1; use retract_spectrum before contour integration")


def _cauchy_sum(f: RationalFunction, A: np.ndarray, size: int) -> np.ndarray:
    sig = np.exp(2j * np.pi * np.arange(size) / size)
    w = eval_scalar(f, sig) * sig
    return np.tensordot(w, resolvents(A, sig), axes=1) / size


def _adaptive(step, grid: BoundaryGrid, cap: int = QUAD_CAP):
    """Run ``step(size)`` on doubling grids until successive matrices agree."""
    n = grid.size
    prev = step(n)
    while n < cap:
        n *= 2
        cur = step(n)
        if np.linalg.norm(cur - prev, 2) < QUAD_CHANGE_TOL:
            return cur, n
        prev = cur
    return prev, n


def cauchy_calculus_with_grid(f: RationalFunction, A, grid: BoundaryGrid | None = None):
    """Like :func:`cauchy_calculus` but also returns the grid size actually used."""
    A = as_matrix(A)
    _require_open_disk(A)
    return _adaptive(lambda n: _cauchy_sum(f, A, n), grid or BoundaryGrid())


def cauchy_calculus(f: RationalFunction, A, grid: BoundaryGrid | None = None) -> np.ndarray:
    """Trapezoidal evaluation of ``(1/2 pi i) \\oint f(s) (s - A)^{-1} ds``."""
    return cauchy_calculus_with_grid(f, A, grid)[0]


def poisson_identity_residual(f: RationalFunction, A, grid: BoundaryGrid | None = None) -> float:
    """Gap between ``gamma_A(f) + f(0)`` and ``\\oint f(s) P(s, A) |ds|``."""
    A = as_matrix(A)
    gamma, n = cauchy_calculus_with_grid(f, A, grid)
    sig = np.exp(2j * np.pi * np.arange(n) / n)
    rhs = np.tensordot(eval_scalar(f, sig), poisson_kernels(A, sig), axes=1) * (2 * np.pi / n)
    lhs = gamma + eval_scalar(f, 0.0) * np.eye(A.shape[0])
    return float(np.linalg.norm(lhs - rhs, 2))


def herglotz_residual(
    f: RationalFunction, A, rho, tau, eps: float = 0.9, grid: BoundaryGrid | None = None
) -> float:
    """Gap in the operator-measure representation of ``P(tau, gamma_A(eps f)) - (2 - rho)/(2 pi)``.

    The right side integrates ``Re((tau + eps f) / (tau - eps f))`` against
    ``P(s, A)|ds| - (2 - rho)/(2 pi)|ds|``, divided by ``2 pi``.  ``eps`` stays
    fixed below one; no limit is taken.
    """
    A = as_matrix(A)
    rho = check_rho(rho)
    tau = complex(tau)
    if abs(abs(tau) - 1) > 1e-12:
        raise InputError("tau must lie on the unit circle")
    if not 0 < eps < 1:
        raise InputError(f"eps must lie in (0, 1), got {eps!r}")
    if abs(eval_scalar(f, 0.0)) > 1e-12:
        raise InputError(f"f(0) must vanish, got {eval_scalar(f, 0.0)!r}")
    _require_open_disk(A)
    n_dim = A.shape[0]
    shift = (2 - rho) / (2 * np.pi) * np.eye(n_dim)

    gamma = cauchy_calculus(f, A, grid)
    lhs = hermitian_part(tau * np.linalg.inv(tau * np.eye(n_dim) - eps * gamma)) / np.pi - shift

    def rhs_sum(n):
        sig = np.exp(2j * np.pi * np.arange(n) / n)
        fs = eps * eval_scalar(f, sig)
        weights = ((tau + fs) / (tau - fs)).real
        return np.tensordot(weights, poisson_kernels(A, sig) - shift, axes=1) / n

    rhs, _ = _adaptive(rhs_sum, grid or BoundaryGrid(4096))
    return float(np.linalg.norm(lhs - rhs, 2))


# -- construction ---------------------------------------------------------------

def mobius(lam) -> RationalFunction:
    """``g_lam(z) = (lam + z) / (1 + conj(lam) z)``."""
    lam = complex(lam)
    if abs(lam) >= 1:
        raise InputError(f"|lambda| must be < 1, got {abs(lam)!r}")
    return RationalFunction(np.array([lam, 1.0]), np.array([1.0, lam.conjugate()]))


def compose(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """Coefficient-level ``f o g``, normalized by the denominator's leading coefficient."""
    m = f.degree
    G, H = g.numerator, g.denominator
    pad_num = np.concatenate([f.numerator, np.zeros(m + 1 - f.numerator.size)])
    pad_den = np.concatenate([f.denominator, np.zeros(m + 1 - f.denominator.size)])
    num = np.zeros(1, dtype=complex)
    den = np.zeros(1, dtype=complex)
    for i in range(m + 1):
        term = P.polymul(P.polypow(G, i), P.polypow(H, m - i))
        num = P.polyadd(num, pad_num[i] * term)
        den = P.polyadd(den, pad_den[i] * term)
    den_t = _trim(den)
    lead = den_t[-1]
    try:
        return RationalFunction(num / lead, den / lead)
    except InputError as exc:
        raise InputError(f"composition leaves the disk algebra: {exc}") from None
