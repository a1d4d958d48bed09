"""The bound function ``k_rho`` and verifiers for norm/radius bounds on ``f(A)``."""
from __future__ import annotations

from dataclasses import asdict, dataclass
import math

import numpy as np

from .errors import HypothesisError, InputError
from .funcalc import BoundaryGrid, RationalFunction, eval_matrix, eval_scalar, sup_norm
from .linalg import as_matrix, op_norm
from .rho_core import check_rho, is_rho_contraction_boundary, psd_tol, rho_radius

RADIUS_HYP_TOL = 1e-7
SUP_HYP_TOL = 1e-9
ZERO_TOL = 1e-12
NORM_SLACK_TOL = 1e-8
RADIUS_CONTRACT_TOL = 1e-6

BOUND_CSV_COLUMNS = ("rho", "abs_f0", "norm_fA", "k_value", "slack", "pass")


def _check_unit_interval(s, name="s") -> float:
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise InputError(f"{name} must lie in [0, 1], got {s!r}")
    return s


def k_rho(rho, s) -> float:
    """``rho/2 (1 - s^2) + sqrt(rho^2/4 (1 - s^2)^2 + s^2)``, valued in ``[1, rho]``."""
    rho = check_rho(rho)
    s = _check_unit_interval(s)
    if rho == 1.0:
        return 1.0
    b = rho * (1 - s * s)
    return 0.5 * (b + math.sqrt(b * b + 4 * s * s))


def k_drury(s) -> float:
    s = _check_unit_interval(s)
    s2 = s * s
    return math.sqrt(2 - 3 * s2 + 2 * s2 * s2 + 2 * (1 - s2) * math.sqrt(1 - s2 + s2 * s2))


def quadratic_residual(rho, s) -> float:
    """``|k^2 - rho (1 - s^2) k - s^2|``; zero in exact arithmetic."""
    k = k_rho(rho, s)
    return abs(k * k - rho * (1 - s * s) * k - s * s)


def technical_F(rho, s) -> float:
    """``-(s - s / (rho k_rho(s)))`` for ``rho > 1`` and ``0 < s < 1``."""
    rho = check_rho(rho)
    s = float(s)
    if rho == 1.0:
        raise InputError("technical_F needs rho > 1")
    if not 0.0 < s < 1.0:
        raise InputError(f"s must lie in (0, 1), got {s!r}")
    return -(s - s / (rho * k_rho(rho, s)))


def rho_f_constant(rho, abs_f0) -> float:
    rho = check_rho(rho)
    a = float(abs_f0)
    if not 0.0 <= a < 1.0:
        raise InputError(f"|f(0)| must lie in [0, 1), got {a!r}")
    return 1 + (rho - 1) * (1 + a) / (1 - a)


def bck_constant(rho) -> float:
    rho = check_rho(rho)
    return (rho * rho + 1 + (rho - 1) * math.sqrt(5 * rho * rho + 2 * rho + 1)) / (2 * rho * rho)


def okubo_ando_bound(rho) -> float:
    return check_rho(rho)


@dataclass
class BoundReport:
    norm_fA: float
    abs_f0: float
    k_value: float
    slack: float
    passed: bool
    rho: float

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def csv_row(self) -> list:
        return [self.rho, self.abs_f0, self.norm_fA, self.k_value, self.slack, self.passed]


# -- hypothesis gates -------------------------------------------------------------

def check_rho_contraction(A, rho, slack: float = RADIUS_HYP_TOL) -> None:
    """Raise unless ``w_rho(A) <= 1 + slack``; one certificate of ``A / (1 + slack)``."""
    B = A / (1 + slack)
    cert = is_rho_contraction_boundary(B, rho, tol=psd_tol(B))
    if not cert.positive:
        measured = rho_radius(A, rho).value
        raise HypothesisError(f"w_rho(A) <= 1 + {slack:g}", measured)


def check_sup_norm(f: RationalFunction) -> float:
    s = sup_norm(f, BoundaryGrid())
    if s > 1 + SUP_HYP_TOL:
        raise HypothesisError(f"||f||_inf <= 1 + {SUP_HYP_TOL:g}", s)
    return s


def _is_constant(f: RationalFunction) -> bool:
    nodes = BoundaryGrid(64).nodes
    vals = eval_scalar(f, nodes)
    f0 = eval_scalar(f, 0.0)
    return bool(np.max(np.abs(vals - f0)) <= 1e-12 * max(1.0, abs(f0)))


# -- verifiers -----------------------------------------------------------------------

def verify_norm_bound(A, rho, f: RationalFunction) -> BoundReport:
    """Measure ``||f(A)||`` against ``k_rho(|f(0)|)`` for a rho-contraction ``A``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    check_rho_contraction(A, rho)
    check_sup_norm(f)
    norm = op_norm(eval_matrix(f, A))
    a = abs(eval_scalar(f, 0.0))
    k = k_rho(rho, min(a, 1.0))
    slack = k - norm
    return BoundReport(
        norm_fA=norm,
        abs_f0=a,
        k_value=k,
        slack=slack,
        passed=slack >= -NORM_SLACK_TOL * max(1.0, k),
        rho=rho,
    )


def verify_zero_preservation(A, rho, f: RationalFunction) -> float:
    """``w_rho(f(A))`` for ``f(0) = 0``; expected ``<= 1``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    check_rho_contraction(A, rho)
    check_sup_norm(f)
    f0 = abs(eval_scalar(f, 0.0))
    if f0 > ZERO_TOL:
        raise HypothesisError(f"f(0) = 0 (|f(0)| <= {ZERO_TOL:g})", f0)
    return rho_radius(eval_matrix(f, A), rho).value


def verify_cassier_suciu(A, rho, f: RationalFunction) -> float:
    """``w_{rho_f}(f(A))`` with ``rho_f = 1 + (rho - 1)(1 + |f(0)|)/(1 - |f(0)|)``; expected ``<= 1``."""
    A = as_matrix(A)
    rho = check_rho(rho)
    if _is_constant(f):
        raise InputError("f must be non-constant")
    check_rho_contraction(A, rho)
    check_sup_norm(f)
    a = abs(eval_scalar(f, 0.0))
    if a >= 1:
        raise HypothesisError("|f(0)| < 1", a)
    return rho_radius(eval_matrix(f, A), rho_f_constant(rho, a)).value
