"""Energy levels, ladder eigenstates, and the diagonalization oracle."""

import warnings

import numpy as np
import pytest

from siqm import (LevelNotBoundError, build_eigenstate, build_grid,
                  eigen_residual, eigenstate_with_prenorm, energy_levels,
                  fd_diagonalize, harmonic_family, inner, morse_family,
                  normalization_factor, selfsimilar_family)

Q5 = selfsimilar_family(q=0.5, c=1.0, a1=1.0)


@pytest.fixture(scope="module")
def wide_grid():
    return build_grid(-60, 60, 12001)


@pytest.fixture(scope="module")
def q5_oracle(wide_grid):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fd_diagonalize(Q5, wide_grid, 7)


@pytest.fixture(scope="module")
def q5_ladder_states(wide_grid):
    return [eigenstate_with_prenorm(Q5, n, wide_grid) for n in range(7)]


def test_energy_levels_scaling_values():
    tab = energy_levels(Q5, 3)
    assert np.array_equal(tab.levels, [0.0, 1.0, 1.5, 1.75])


def test_energy_levels_empty_sum():
    assert energy_levels(Q5, 0).levels.tolist() == [0.0]


def test_energy_levels_harmonic():
    tab = energy_levels(harmonic_family(1.0), 5)
    assert np.array_equal(tab.levels, 2.0 * np.arange(6))


def test_energy_levels_monotone_below_limit():
    tab = energy_levels(Q5, 30)
    assert np.all(np.diff(tab.levels) > 0)
    assert np.all(tab.levels < 2.0)  # E_inf = c a1 / (1 - q)


def test_morse_tower_terminates():
    with pytest.raises(LevelNotBoundError):
        energy_levels(morse_family(2.5), 3)


def test_normalization_factors():
    tab = energy_levels(Q5, 4)
    assert normalization_factor(tab, 0) == 1.0
    assert normalization_factor(tab, 1) == pytest.approx(1.0)
    assert normalization_factor(tab, 2) == pytest.approx(np.sqrt(0.75))


def test_build_eigenstate_n0_is_ground_state(wide_grid):
    from siqm import ground_state
    psi = build_eigenstate(Q5, 0, wide_grid)
    ref = ground_state(Q5, 1.0, wide_grid)
    assert np.max(np.abs(psi.amplitudes - ref.amplitudes)) == 0.0


def test_harmonic_second_state_matches_oracle():
    g = build_grid(-12, 12, 2401)
    fam = harmonic_family(1.0)
    psi = build_eigenstate(fam, 2, g)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        _, states = fd_diagonalize(fam, g, 3)
    assert abs(inner(psi, states[2])) >= 1.0 - 1e-6


def test_prenorm_matches_level_difference_product(wide_grid, q5_ladder_states):
    tab = energy_levels(Q5, 6)
    for n in range(7):
        _, prenorm = q5_ladder_states[n]
        expected = normalization_factor(tab, n)
        assert prenorm == pytest.approx(expected, rel=1e-3)
    # the n = 2 magnitude quoted from the closed products
    assert q5_ladder_states[2][1] == pytest.approx(0.8660254, abs=1e-6)


def test_fd_oracle_harmonic():
    g = build_grid(-10, 10, 2001)
    e, _ = fd_diagonalize(harmonic_family(1.0), g, 4)
    assert np.max(np.abs(e - [0, 2, 4, 6])) < 1e-5


def test_fd_oracle_morse():
    g = build_grid(-5, 32, 3701)
    e, _ = fd_diagonalize(morse_family(2.5), g, 3)
    assert np.max(np.abs(e - [0, 4, 6])) < 1e-3


def test_oracle_equivalence_selfsimilar(q5_oracle):
    e_fd, _ = q5_oracle
    tab = energy_levels(Q5, 6)
    scale = np.maximum(1.0, tab.levels)
    assert np.max(np.abs(e_fd - tab.levels) / scale) <= 1e-3


def test_eigen_residuals(wide_grid, q5_ladder_states):
    tab = energy_levels(Q5, 6)
    for n in range(7):
        psi, _ = q5_ladder_states[n]
        assert eigen_residual(Q5, psi, tab.levels[n]) <= 1e-4


def test_ladder_oracle_state_overlap(q5_oracle, q5_ladder_states):
    _, states = q5_oracle
    for n in range(7):
        psi, _ = q5_ladder_states[n]
        assert abs(inner(psi, states[n])) >= 1.0 - 1e-5


def test_orthonormality(q5_ladder_states):
    states = [s for s, _ in q5_ladder_states]
    for m in range(7):
        for n in range(7):
            val = abs(inner(states[m], states[n]))
            assert abs(val - (1.0 if m == n else 0.0)) <= 1e-6


def test_morse_level_not_bound(wide_grid):
    with pytest.raises(LevelNotBoundError):
        build_eigenstate(morse_family(2.5), 3, build_grid(-5, 32, 3701))


def test_under_resolved_grid_rejected():
    from siqm import UnderResolvedGridError
    with pytest.raises(UnderResolvedGridError):
        build_eigenstate(harmonic_family(1.0), 6, build_grid(-12, 12, 49))


def test_truncated_domain_warns():
    from siqm import BoundaryDecayWarning
    with pytest.warns(BoundaryDecayWarning):
        build_eigenstate(harmonic_family(1.0), 6, build_grid(-3.5, 3.5, 701))
