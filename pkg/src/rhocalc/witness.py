"""Equality cases for the ``k_rho`` bound and seeded random test instances."""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .bounds import k_rho
from .errors import InputError
from .funcalc import BlaschkeSpec, RationalFunction, eval_matrix, mobius
from .linalg import op_norm
from .prng import SplitMix64
from .rho_core import check_rho, rho_radius

SHARPNESS_TOL = 1e-9
BLASCHKE_ZERO_RADIUS = 0.95


@dataclass
class SharpnessRecord:
    rho: float
    s: float
    lhs: float
    rhs: float
    gap: float

    @property
    def passed(self) -> bool:
        return self.gap <= SHARPNESS_TOL

    def csv_row(self) -> list:
        return [self.rho, self.s, self.lhs, self.rhs, self.gap]


def shift_matrix(rho) -> np.ndarray:
    """``[[0, rho], [0, 0]]``, a rho-contraction with ``w_rho = 1``."""
    rho = check_rho(rho)
    return np.array([[0.0, rho], [0.0, 0.0]], dtype=complex)


def jordan_calculus_norm(f0, fprime0, rho) -> float:
    """Closed-form norm of ``[[f0, rho f'(0)], [0, f0]]``."""
    b = float(rho) * abs(complex(fprime0))
    return 0.5 * b + math.sqrt(0.25 * b * b + abs(complex(f0)) ** 2)


def sharpness_witness(s) -> RationalFunction:
    """``g_s`` for ``s < 1`` and the constant 1 at ``s = 1``."""
    if s == 1.0:
        return RationalFunction.constant(1.0)
    return mobius(s)


def sharpness_scan(rho, s_grid) -> list[SharpnessRecord]:
    rho = check_rho(rho)
    A = shift_matrix(rho)
    out = []
    for s in s_grid:
        s = float(s)
        if not 0.0 <= s <= 1.0:
            raise InputError(f"s values must lie in [0, 1], got {s!r}")
        lhs = op_norm(eval_matrix(sharpness_witness(s), A))
        rhs = k_rho(rho, s)
        out.append(SharpnessRecord(rho=rho, s=s, lhs=lhs, rhs=rhs, gap=abs(lhs - rhs)))
    return out


def figure1_grid(points: int = 101) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def random_gaussian(dim: int, seed: int) -> np.ndarray:
    g = SplitMix64(seed)
    return np.array([[g.complex_normal() for _ in range(dim)] for _ in range(dim)])


def random_contraction(rho, dim: int, seed: int, shrink: float = 1.0) -> np.ndarray:
    """Complex Gaussian matrix rescaled to ``w_rho = shrink`` (default 1)."""
    rho = check_rho(rho)
    if dim < 1:
        raise InputError("dim must be >= 1")
    while True:
        G = random_gaussian(dim, seed)
        if op_norm(G) > 0:
            break
        seed += 1
    return shrink * G / rho_radius(G, rho).value


def random_blaschke(degree: int, seed: int, force_zero_at_origin: bool = False) -> RationalFunction:
    """Blaschke product with zeros uniform in the disk of radius 0.95 and a random phase."""
    return random_blaschke_spec(degree, seed, force_zero_at_origin).to_rational()


def random_blaschke_spec(degree: int, seed: int, force_zero_at_origin: bool = False) -> BlaschkeSpec:
    if degree < 1:
        raise InputError("degree must be >= 1")
    g = SplitMix64(seed)
    zeros = []
    for j in range(degree):
        r = BLASCHKE_ZERO_RADIUS * math.sqrt(g.uniform())
        t = 2 * math.pi * g.uniform()
        zeros.append(0j if (force_zero_at_origin and j == 0) else r * complex(math.cos(t), math.sin(t)))
    t = 2 * math.pi * g.uniform()
    return BlaschkeSpec(tuple(zeros), complex(math.cos(t), math.sin(t)))
