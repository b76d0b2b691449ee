"""Family registry: parameter chains, remainders, ground states, shape invariance."""

import json

import numpy as np
import pytest

from siqm import (NonNormalizableError, build_grid, eval_W, family_from_config,
                  fd_diagonalize, ground_state, harmonic_family, morse_family,
                  parameter_chain, remainder, selfsimilar_family,
                  shape_invariance_residual)
from siqm.families import ParameterRule


def test_parameter_chain_scaling():
    fam = selfsimilar_family(q=0.5, c=1.0, a1=1.0)
    chain = parameter_chain(fam, 4)
    assert np.array_equal(chain.values, [1.0, 0.5, 0.25, 0.125])


def test_parameter_chain_single():
    fam = selfsimilar_family(q=0.7, a1=2.0)
    assert parameter_chain(fam, 1).values.tolist() == [2.0]


def test_parameter_chain_translation():
    fam = morse_family(A=2.5)
    assert np.array_equal(parameter_chain(fam, 3).values, [2.5, 1.5, 0.5])


def test_chain_matches_repeated_rule_application():
    fam = selfsimilar_family(q=0.731, a1=1.37)
    chain = parameter_chain(fam, 12).values
    a = fam.a1
    for k in range(12):
        assert chain[k] == pytest.approx(a, rel=4e-16)
        a = fam.rule.factor_q * a


def test_rule_validation():
    with pytest.raises(ValueError):
        ParameterRule("scaling", factor_q=1.5)
    with pytest.raises(ValueError):
        ParameterRule("scaling", factor_q=0.5, shift_delta=1.0)
    with pytest.raises(ValueError):
        ParameterRule("translation")


def test_eval_w_fixtures():
    g = build_grid(-5, 5, 101)
    x2 = np.argmin(np.abs(g.x - 2.0))
    W = eval_W(harmonic_family(1.0), 1.0, g)
    assert W[x2] == pytest.approx(2.0)
    x0 = np.argmin(np.abs(g.x))
    Wm = eval_W(morse_family(2.5), 2.5, g)
    assert Wm[x0] == pytest.approx(1.5)


def test_eval_w_selfsimilar_scaling_law():
    # W(x; a2) = sqrt(q) W(sqrt(q) x; a1) pointwise
    fam = selfsimilar_family(q=0.5, c=1.0, a1=1.0)
    g = build_grid(-8, 8, 401)
    W2 = eval_W(fam, 0.5, g)
    sq = np.sqrt(0.5)
    ref = sq * fam.engine().w(sq * g.x)
    assert np.max(np.abs(W2 - ref)) < 1e-12


def test_remainders():
    assert remainder(selfsimilar_family(q=0.5, c=1.0, a1=1.0), 0.25) == 0.25
    assert remainder(harmonic_family(1.0), 1.0) == 2.0
    # morse: R(a) = a^2 - (a-1)^2; value 4 at a=2.5 equals the first FD gap
    assert remainder(morse_family(2.5), 2.5) == pytest.approx(2.5 ** 2 - 1.5 ** 2)


def test_remainder_positive_decreasing_for_scaling():
    fam = selfsimilar_family(q=0.5, c=1.0, a1=1.0)
    rs = [remainder(fam, a) for a in parameter_chain(fam, 8).values]
    assert all(r > 0 for r in rs)
    assert np.all(np.diff(rs) < 0)


def test_remainders_match_fd_gaps():
    # independent oracle: lowest FD gaps equal R(a_1), R(a_1) + R(a_2)
    g = build_grid(-10, 10, 2001)
    e, _ = fd_diagonalize(harmonic_family(1.0), g, 2)
    assert e[1] == pytest.approx(2.0, abs=1e-5)
    gm = build_grid(-5, 32, 3701)
    em, _ = fd_diagonalize(morse_family(2.5), gm, 3)
    assert em[1] == pytest.approx(4.0, abs=1e-3)
    assert em[2] == pytest.approx(6.0, abs=1e-3)


def test_ground_state_harmonic_gaussian():
    g = build_grid(-10, 10, 2001)
    psi = ground_state(harmonic_family(1.0), 1.0, g)
    ref = np.exp(-g.x ** 2 / 2) / np.pi ** 0.25
    assert np.max(np.abs(psi.amplitudes - ref)) < 1e-9


def test_ground_state_morse_quadrature_oracle():
    # closed-form norm: int exp(-2Ax - 2e^-x) dx = Gamma(2A)/2^(2A) = 0.75
    g = build_grid(-5, 32, 7401)
    psi = ground_state(morse_family(2.5), 2.5, g)
    ref = np.exp(-2.5 * g.x - np.exp(-g.x)) / np.sqrt(0.75)
    assert np.max(np.abs(psi.amplitudes - ref)) < 1e-8


def test_ground_state_non_normalizable():
    g = build_grid(-10, 10, 2001)
    fam = harmonic_family(-1.0)  # W = -x grows the candidate state
    with pytest.raises(NonNormalizableError):
        ground_state(fam, -1.0, g)


def test_annihilation_gate_for_every_family():
    # ||A(a1) psi_0|| / ||psi_0|| <= 1e-6 on the interior 90% of the grid
    from siqm import apply_ladder
    cases = [(harmonic_family(1.0), build_grid(-10, 10, 2001)),
             (morse_family(2.5), build_grid(-5, 32, 3701)),
             (selfsimilar_family(0.5, 1.0, 1.0), build_grid(-15, 15, 3001))]
    for fam, g in cases:
        psi = ground_state(fam, fam.a1, g)
        out = apply_ladder(eval_W(fam, fam.a1, g), psi, "lower")
        sl = g.interior_slice()
        rel = np.linalg.norm(out.amplitudes[sl]) / np.linalg.norm(psi.amplitudes[sl])
        assert rel <= 1e-6, f"{fam.name}: {rel:.2e}"


def test_shape_invariance_residuals():
    fine = build_grid(-10, 10, 4001)
    assert shape_invariance_residual(harmonic_family(1.0), fine) <= 1e-8
    gm = build_grid(-5, 32, 3701)
    assert shape_invariance_residual(morse_family(2.5), gm) <= 1e-6
    gs = build_grid(-15, 15, 3001)
    assert shape_invariance_residual(selfsimilar_family(0.5, 1.0, 1.0), gs) <= 1e-6


def test_config_round_trip():
    fam = selfsimilar_family(q=0.5, c=1.0, a1=1.0)
    cfg = json.loads(json.dumps(fam.to_config()))
    back = family_from_config(cfg)
    assert back.name == fam.name
    assert back.q == fam.q
    assert back.c == fam.c
    assert back.a1 == fam.a1


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        family_from_config({"family": "poschl-teller"})
