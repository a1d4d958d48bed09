import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rhocalc.bounds import (
    BOUND_CSV_COLUMNS,
    bck_constant,
    k_drury,
    k_rho,
    okubo_ando_bound,
    quadratic_residual,
    rho_f_constant,
    technical_F,
    verify_cassier_suciu,
    verify_norm_bound,
    verify_zero_preservation,
)
from rhocalc.errors import HypothesisError, InputError
from rhocalc.funcalc import RationalFunction, eval_matrix, mobius
from rhocalc.linalg import op_norm
from rhocalc.rho_core import rho_radius
from rhocalc.witness import random_blaschke, random_contraction, shift_matrix

from oracles import k_rho_display

RHOS = [1.0, 1.1, 1.25, 1.5, 1.75, 2.0, 3.0, 10.0]
S_LATTICE = np.linspace(0, 1, 201)
Z = RationalFunction.polynomial([0, 1])


# -- k_rho ---------------------------------------------------------------------------

@pytest.mark.parametrize("rho", RHOS)
def test_k_rho_endpoints(rho):
    assert k_rho(rho, 0) == pytest.approx(rho, abs=1e-15)
    assert k_rho(rho, 1) == pytest.approx(1.0, abs=1e-15)


def test_k_rho_examples():
    assert k_rho(2, 0.5) == pytest.approx(0.75 + math.sqrt(13) / 4, abs=1e-15)
    assert all(k_rho(1, s) == 1.0 for s in S_LATTICE)


@pytest.mark.parametrize("bad", [-1e-9, 1.0001, float("nan")])
def test_k_rho_rejects_s(bad):
    with pytest.raises(InputError):
        k_rho(2, bad)


def test_k_rho_rejects_rho_below_one():
    with pytest.raises(InputError):
        k_rho(0.9, 0.5)


@pytest.mark.parametrize("rho", RHOS)
def test_k_rho_matches_displayed_form(rho):
    for s in S_LATTICE:
        assert abs(k_rho(rho, s) - k_rho_display(rho, s)) <= 1e-14 * rho


def test_k_rho_stable_near_one_large_rho():
    # the displayed form still agrees here; the stable one must stay inside [1, rho]
    for rho in (1e3, 1e6):
        for s in (1 - 1e-9, 1 - 1e-12):
            k = k_rho(rho, s)
            assert 1.0 <= k <= rho
            assert quadratic_residual(rho, s) <= 1e-12 * rho * rho


def test_k_drury_examples():
    assert k_drury(0) == pytest.approx(2.0, abs=1e-15)
    assert k_drury(1) == pytest.approx(1.0, abs=1e-15)
    assert abs(k_drury(0.5) - k_rho(2, 0.5)) <= 1e-12
    with pytest.raises(InputError):
        k_drury(1.5)


def test_k_two_equals_drury_dense():
    s = np.linspace(0, 1, 10001)
    assert max(abs(k_rho(2, x) - k_drury(x)) for x in s) <= 1e-12


@pytest.mark.parametrize("rho", [1.1, 1.5, 2.0, 3.0, 10.0])
def test_k_rho_strictly_decreasing(rho):
    vals = np.array([k_rho(rho, s) for s in S_LATTICE])
    assert np.all(np.diff(vals) < 0)


@pytest.mark.parametrize("rho", RHOS)
def test_k_rho_range_and_okubo_ando(rho):
    vals = np.array([k_rho(rho, s) for s in S_LATTICE])
    assert np.all(vals >= 1) and np.all(vals <= okubo_ando_bound(rho))
    if rho > 1:
        assert np.all(vals[1:] < rho)


def test_okubo_ando_examples():
    assert okubo_ando_bound(2) == 2 and okubo_ando_bound(1) == 1


# -- quadratic relation and the technical function ---------------------------------------

def test_quadratic_residual_examples():
    assert quadratic_residual(3, 0) == 0
    assert quadratic_residual(3, 1) == 0
    assert quadratic_residual(1.75, 0.3) <= 1e-13


@pytest.mark.parametrize("rho", RHOS)
def test_quadratic_residual_lattice(rho):
    assert max(quadratic_residual(rho, s) for s in S_LATTICE) <= 1e-12 * max(1, rho * rho)


def test_technical_F_examples():
    k = k_rho(2, 0.5)
    assert technical_F(2, 0.5) == pytest.approx(-(0.5 - 0.5 / (2 * k)), abs=1e-15)
    assert abs(technical_F(2, 1e-9)) < 1e-9
    for bad in ((1, 0.5), (2, 0), (2, 1)):
        with pytest.raises(InputError):
            technical_F(*bad)


@pytest.mark.parametrize("rho", [r for r in RHOS if r > 1])
def test_technical_F_range_and_monotone(rho):
    s = S_LATTICE[1:-1]
    F = np.array([technical_F(rho, x) for x in s])
    assert np.all(F < 0) and np.all(F > -(1 - 1 / rho))
    assert np.all(np.diff(F) < 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1.01, 10), st.floats(0.01, 0.99))
def test_technical_F_two_forms(rho, s):
    k = k_rho(rho, s)
    assert abs(technical_F(rho, s) - (s - s * k * k) / (k * k - s * s)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(1.01, 10), st.floats(0.01, 0.99))
def test_coefficient_identity(rho, s):
    k = k_rho(rho, s)
    F = technical_F(rho, s)
    assert abs(1 / rho**2 - F * F - (1 - s * s * k * k) / (k * k - s * s)) <= 1e-12


# -- comparison constants -------------------------------------------------------------------

def test_rho_f_examples():
    assert rho_f_constant(2.5, 0) == 2.5
    assert all(rho_f_constant(1, a) == 1 for a in (0, 0.3, 0.99))
    assert rho_f_constant(2, 1 / 3) == pytest.approx(3.0, rel=1e-15)
    assert rho_f_constant(2, 0.1) > 2
    with pytest.raises(InputError):
        rho_f_constant(2, 1.0)


def test_bck_examples():
    assert bck_constant(1) == 1.0
    assert bck_constant(2) == 1.25
    assert bck_constant(3) == pytest.approx((10 + 2 * math.sqrt(52)) / 18, rel=1e-15)


# -- rescaled positivity used in the main proof -------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1.0, 1.5, 2.0, 3.0]), st.floats(0.05, 0.95))
def test_rescaled_positivity_and_mobius_norm(seed, rho, s):
    C = random_contraction(rho, 3, seed, shrink=0.999)
    k = k_rho(rho, s)
    I = np.eye(3)
    X, Y = I + s * C, s * I + C
    M = k * k * X.conj().T @ X - Y.conj().T @ Y
    assert np.linalg.eigvalsh((M + M.conj().T) / 2)[0] >= -1e-8
    assert op_norm(eval_matrix(mobius(s), C)) <= k + 1e-8


# -- verifiers --------------------------------------------------------------------------------

@pytest.mark.parametrize("rho", [1.0, 1.5, 2.0, 3.0])
@pytest.mark.parametrize("s", [0.0, 0.3, 0.8])
def test_norm_bound_equality_on_witness(rho, s):
    rep = verify_norm_bound(shift_matrix(rho), rho, mobius(s))
    assert rep.passed and abs(rep.slack) <= 1e-12
    assert rep.k_value == k_rho(rho, s)


def test_norm_bound_unimodular_constant():
    A = random_contraction(2, 3, 4)
    rep = verify_norm_bound(A, 2, RationalFunction.constant(np.exp(0.7j)))
    assert rep.passed
    assert rep.norm_fA == pytest.approx(1.0, abs=1e-14) and rep.k_value == 1.0


def test_report_serialization():
    rep = verify_norm_bound(shift_matrix(2), 2, mobius(0.5))
    d = json.loads(json.dumps(rep.to_json()))
    assert d["pass"] is True and "passed" not in d
    assert len(rep.csv_row()) == len(BOUND_CSV_COLUMNS)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("rho", [1.0, 1.5, 2.0, 3.0])
def test_norm_bound_random(seed, rho):
    A = random_contraction(rho, 2 + seed % 3, seed)
    f = random_blaschke(1 + seed % 5, 1000 + seed)
    rep = verify_norm_bound(A, rho, f)
    assert rep.passed and rep.norm_fA <= rho + 1e-8


def test_norm_bound_rejects_large_radius():
    with pytest.raises(HypothesisError) as info:
        verify_norm_bound(2 * shift_matrix(2), 2, Z)
    assert info.value.measured == pytest.approx(2.0, abs=1e-6)


def test_norm_bound_rejects_large_function():
    f = RationalFunction.polynomial([0, 1.5])
    with pytest.raises(HypothesisError, match="inf"):
        verify_norm_bound(shift_matrix(2), 2, f)


def test_zero_preservation_examples():
    A = random_contraction(2, 3, 11, shrink=0.8)
    assert verify_zero_preservation(A, 2, Z) == pytest.approx(rho_radius(A, 2).value, abs=1e-12)
    sq = RationalFunction.polynomial([0, 0, 1])
    assert verify_zero_preservation(shift_matrix(2.5), 2.5, sq) == 0.0
    with pytest.raises(HypothesisError):
        verify_zero_preservation(A, 2, mobius(0.1))


@pytest.mark.parametrize("seed", range(6))
def test_zero_preservation_random(seed):
    rho = [1.0, 1.5, 2.0, 3.0][seed % 4]
    A = random_contraction(rho, 3, seed)
    f = random_blaschke(3, 50 + seed, force_zero_at_origin=True)
    assert verify_zero_preservation(A, rho, f) <= 1 + 1e-6


def test_cassier_suciu_examples():
    rho = 2.0
    A = random_contraction(rho, 3, 21)
    f = random_blaschke(2, 22, force_zero_at_origin=True)
    assert verify_cassier_suciu(A, rho, f) == pytest.approx(verify_zero_preservation(A, rho, f), abs=1e-12)
    g = mobius(0.4)
    assert verify_cassier_suciu(np.zeros((2, 2)), rho, g) == pytest.approx(0.4, abs=1e-8)
    with pytest.raises(InputError):
        verify_cassier_suciu(A, rho, RationalFunction.constant(0.5))


@pytest.mark.parametrize("seed", range(6))
def test_cassier_suciu_random(seed):
    rho = [1.0, 1.5, 2.0, 3.0][seed % 4]
    A = random_contraction(rho, 3, 100 + seed)
    f = random_blaschke(1 + seed % 4, 200 + seed)
    assert verify_cassier_suciu(A, rho, f) <= 1 + 1e-6
