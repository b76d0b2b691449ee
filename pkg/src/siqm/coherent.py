"""Coherent states of shape-invariant potentials.

The lowering-operator eigenstate |z> = sum_n h_n |n> is generated by
repeated application of the right inverse of the lowering operator to the
ground state. Carried out with the parameter-shifted construction this
gives

    h_n = z^n / sqrt( E_n (E_n - E_{n-1}) ... (E_n - E_1) ),

and for the scaling spectrum E_n = R1 (1 - q^n)/(1 - q) the product
telescopes into the closed form

    h_n = z^n (1-q)^{n/2} q^{-n(n-1)/4} / ( R1^{n/2} sqrt((q; q)_n) )

with the q-shifted factorial (z; q)_n = prod_{j=0}^{n-1} (1 - z q^j). For
q < 1 the factor q^{-n(n-1)/4} grows super-geometrically, so |z> is treated
as a formal truncated object: properties are verified termwise on
restricted components and partial norms are reported rather than asserted.

The eigenvalue and derivative conditions are checked against the lowering
action whose matrix elements are the normalization-factor ratios
N_n / N_{n-1} (sqrt(q^(n-1) E_n) for scaling chains); this is the action of
the lowering operator on chain-built states, where the parameter map also
rescales the expansion coefficients. At q = 1 the weight reduces to the
familiar sqrt(E_n).
"""

from dataclasses import dataclass, field

import numpy as np

from .ladder_matrices import LadderMatrices
from .spectra import SpectrumTable, energy_levels, normalization_factor


class DegenerateLevelsError(ValueError):
    """Two levels coincide, so a coefficient denominator vanishes."""


def q_pochhammer(z: float, q: float, n: int) -> float:
    """q-shifted factorial (z; q)_n = prod_{j=0}^{n-1} (1 - z q^j); (z; q)_0 = 1."""
    if n < 0:
        raise ValueError("need n >= 0")
    out = 1.0
    for j in range(n):
        out *= 1.0 - z * q ** j
    return out


@dataclass
class CoherentState:
    """Truncated coherent-state coefficients h_0 .. h_{N-1} with h_0 = 1."""

    z: complex
    N: int
    coefficients: np.ndarray = field(repr=False)
    levels: SpectrumTable | None = None
    normalized: bool = False

    def partial_norm(self, upto: int | None = None) -> float:
        c = self.coefficients[:upto]
        return float(np.linalg.norm(c))

    def normalized_copy(self) -> "CoherentState":
        c = self.coefficients / self.partial_norm()
        return CoherentState(self.z, self.N, c, self.levels, normalized=True)


def coherent_recursive(levels: SpectrumTable, z: complex, N: int) -> CoherentState:
    """Coefficients h_n = z^n / N_n from the level-difference products."""
    if N < 1:
        raise ValueError("need N >= 1")
    if levels.n_max < N - 1:
        levels = energy_levels(levels.family, N - 1)
    E = levels.levels
    diffs = E[None, :N] - E[:N, None]  # diffs[j, n] = E_n - E_j
    for n in range(1, N):
        if np.any(diffs[:n, n] <= 0):
            raise DegenerateLevelsError(f"level {n} is not above all lower levels")
    coeff = np.empty(N, dtype=complex)
    coeff[0] = 1.0
    for n in range(1, N):
        coeff[n] = z ** n / normalization_factor(levels, n)
    return CoherentState(z=complex(z), N=N, coefficients=coeff, levels=levels)


def coherent_closed_scaling(q: float, R1: float, z: complex, N: int) -> CoherentState:
    """Closed-form coefficients for the scaling spectrum; asserts equality
    with the recursive construction to 1e-12 relative."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"closed form needs 0 < q < 1, got {q}")
    if R1 <= 0:
        raise ValueError(f"need R1 > 0, got {R1}")
    n = np.arange(N)
    poch = np.array([q_pochhammer(q, q, int(k)) for k in n])
    mag = (1 - q) ** (n / 2) * q ** (-n * (n - 1) / 4.0) / (R1 ** (n / 2) * np.sqrt(poch))
    coeff = np.asarray(z, dtype=complex) ** n * mag

    from .families import selfsimilar_family
    table = energy_levels(selfsimilar_family(q=q, c=R1, a1=1.0), N - 1 if N > 1 else 1)
    ref = coherent_recursive(table, z, N).coefficients
    scale = np.abs(ref)
    # both routes evaluate differences 1 - q^j ~ j(1-q), so the comparison
    # noise floor grows like eps/(1-q) toward the harmonic limit
    tol = max(1e-12, 100 * np.finfo(float).eps / (1.0 - q))
    if np.max(np.abs(coeff - ref) / np.where(scale > 0, scale, 1.0)) > tol:
        raise AssertionError("closed form disagrees with the recursive product")
    return CoherentState(z=complex(z), N=N, coefficients=coeff, levels=table)


def coherent_property_residuals(state: CoherentState,
                                ladder: LadderMatrices) -> tuple[float, float]:
    """(eigen_residual, derivative_residual) on components 0 .. N-2.

    eigen: ||(B_minus - z)|z>|| with the chain-weighted lowering, relative
    to the restricted norm of |z>. derivative: the same combination applied
    to the z-derivative of |z>, obtained by a central difference with step
    1e-5, minus |z> itself.
    """
    if state.levels is None:
        raise ValueError("state carries no spectrum table")
    N = state.N
    if ladder.dimension < N:
        raise ValueError("ladder truncation smaller than the state")
    beta = np.array([normalization_factor(state.levels, n)
                     / normalization_factor(state.levels, n - 1)
                     for n in range(1, N)])
    h = state.coefficients
    scale = np.linalg.norm(h[:N - 1])

    lowered = beta * h[1:]          # component n-1 of B_minus |z>
    eigen = float(np.linalg.norm(lowered - state.z * h[:N - 1]) / scale)

    dz = 1e-5
    hp = (coherent_recursive(state.levels, state.z + dz, N).coefficients
          - coherent_recursive(state.levels, state.z - dz, N).coefficients) / (2 * dz)
    deriv_combo = beta * hp[1:] - state.z * hp[:N - 1] - h[:N - 1]
    derivative = float(np.linalg.norm(deriv_combo) / scale)
    return eigen, derivative
