"""Coherent-state coefficients and their defining properties."""

import math

import numpy as np
import pytest

from siqm import (DegenerateLevelsError, LadderMatrices,
                  coherent_closed_scaling, coherent_property_residuals,
                  coherent_recursive, energy_levels, harmonic_family,
                  normalization_factor, q_pochhammer, selfsimilar_family)

Q5 = selfsimilar_family(q=0.5, c=1.0, a1=1.0)


def test_q_pochhammer_values():
    assert q_pochhammer(0.3, 0.5, 0) == 1.0
    assert q_pochhammer(0.5, 0.5, 2) == pytest.approx(0.375, abs=1e-15)
    for n in (1, 3, 7):
        assert q_pochhammer(1.0, 0.42, n) == 0.0


def test_recursive_coefficients_scaling_values():
    tab = energy_levels(Q5, 6)
    cs = coherent_recursive(tab, 1.0, 4)
    assert cs.coefficients[0] == 1.0
    assert cs.coefficients[1].real == pytest.approx(1.0)
    assert cs.coefficients[2].real == pytest.approx(2.0 / np.sqrt(3.0), rel=1e-12)


def test_closed_form_values():
    cc = coherent_closed_scaling(0.5, 1.0, 1.0, 4)
    assert cc.coefficients[1].real == pytest.approx(1.0, rel=1e-12)
    assert cc.coefficients[2].real == pytest.approx(1.1547005383792517, rel=1e-12)


def test_closed_equals_recursive_to_1e12():
    tab = energy_levels(Q5, 21)
    for z in (1.0, 0.3 + 0.2j):
        rec = coherent_recursive(tab, z, 21).coefficients
        clo = coherent_closed_scaling(0.5, 1.0, z, 21).coefficients
        assert np.max(np.abs(rec - clo) / np.abs(rec)) <= 1e-12


def test_termwise_lowering_cancellation():
    # h_n * (N_n / N_{n-1}) = z h_{n-1} termwise; at q = 1 the weight is sqrt(E_n)
    tab = energy_levels(Q5, 21)
    z = 0.7 - 0.4j
    h = coherent_recursive(tab, z, 21).coefficients
    for n in range(1, 21):
        beta = normalization_factor(tab, n) / normalization_factor(tab, n - 1)
        assert abs(h[n] * beta - z * h[n - 1]) <= 1e-14 * abs(h[n - 1]) * max(1.0, abs(z))
    tab1 = energy_levels(harmonic_family(1.0), 12)
    h1 = coherent_recursive(tab1, 0.5, 12).coefficients
    for n in range(1, 12):
        beta = normalization_factor(tab1, n) / normalization_factor(tab1, n - 1)
        assert beta == pytest.approx(np.sqrt(tab1.levels[n]), rel=1e-14)
        assert abs(h1[n] * beta - 0.5 * h1[n - 1]) <= 1e-14


def test_closed_equals_recursive_random_z_sweep():
    rng = np.random.default_rng(77)
    tab = energy_levels(Q5, 21)
    for _ in range(6):
        z = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        rec = coherent_recursive(tab, z, 21).coefficients
        clo = coherent_closed_scaling(0.5, 1.0, z, 21).coefficients
        assert np.max(np.abs(rec - clo) / np.abs(rec)) <= 1e-12


def test_eigen_and_derivative_residuals():
    tab = energy_levels(Q5, 21)
    ladder = LadderMatrices(tab, 21)
    state = coherent_recursive(tab, 0.3, 20)
    eig, der = coherent_property_residuals(state, ladder)
    assert eig <= 1e-10
    assert der <= 1e-6


def test_z_zero_is_ground_state():
    tab = energy_levels(Q5, 8)
    ladder = LadderMatrices(tab, 8)
    state = coherent_recursive(tab, 0.0, 8)
    assert np.array_equal(state.coefficients[1:], np.zeros(7, dtype=complex))
    eig, _ = coherent_property_residuals(state, ladder)
    assert eig == 0.0


def test_harmonic_limit_coefficients():
    # q -> 1: h_n -> z^n / sqrt(n! R1^n)
    cc = coherent_closed_scaling(1 - 1e-6, 1.0, 1.0, 12)
    ref = np.array([1.0 / math.sqrt(math.factorial(n)) for n in range(12)])
    assert np.max(np.abs(cc.coefficients.real - ref)) <= 1e-6


def test_partial_norms_grow_superfast_for_small_q():
    # the truncated object is formal: partial norms blow up with N for q < 1
    tab = energy_levels(Q5, 25)
    n8 = coherent_recursive(tab, 1.0, 8).partial_norm()
    n25 = coherent_recursive(tab, 1.0, 25).partial_norm()
    assert n25 > 1e3 * n8


def test_degenerate_levels_rejected():
    tab = energy_levels(Q5, 8)
    flat = type(tab)(levels=np.concatenate([tab.levels[:3], [tab.levels[2]]]),
                     family=tab.family, n_max=3)
    with pytest.raises(DegenerateLevelsError):
        coherent_recursive(flat, 1.0, 4)
