"""Truncated ladder matrices on the energy eigenbasis and their identities.

With levels E_0 = 0 < E_1 < ... the raising matrix acts as
B+ |n> = sqrt(E_{n+1}) |n+1>, B- is its conjugate transpose, and
H = B+ B- is diagonal with entries E_n. H has no inverse (E_0 = 0) but the
pseudo-inverse suffices for the combinations that exist: H^{-1} B+ is a
right inverse of B-, and Q = B- H^{-1/2}, Q_dag = H^{-1/2} B+ satisfy
Q Q_dag = 1 while Q_dag Q = 1 - |0><0|.

Products are evaluated with two levels of internal padding so that the
reported N x N blocks are free of truncation-edge artifacts.

A second lowering action is provided for coherent-state checks: on states
built by the parameter-shifted recursion, the lowering operator carries the
parameter-map weight, giving matrix elements N_n / N_{n-1} (the ratio of
ladder normalization factors, sqrt(q^(n-1) E_n) in the scaling case)
instead of sqrt(E_n). The two coincide for a translation chain with
constant remainder.
"""

from dataclasses import dataclass, field

import numpy as np

from .spectra import SpectrumTable, energy_levels, normalization_factor


class SingularSpectrumError(ValueError):
    """A level above the ground state has zero energy."""


_PAD = 2


@dataclass
class LadderMatrices:
    """Dense N x N ladder operators built from a spectrum table."""

    levels: SpectrumTable
    dimension: int
    b_plus: np.ndarray = field(init=False, repr=False)
    b_minus: np.ndarray = field(init=False, repr=False)
    h_matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        N = self.dimension
        if N < 3:
            raise ValueError("need dimension >= 3")
        E = self._padded_energies()
        if np.any(E[1:] <= 0):
            raise SingularSpectrumError("levels above the ground state must be positive")
        self._E = E
        self.b_plus = np.diag(np.sqrt(E[1:N]), -1)
        self.b_minus = self.b_plus.conj().T
        self.h_matrix = np.diag(E[:N])

    def _padded_energies(self) -> np.ndarray:
        M = self.dimension + _PAD
        if self.levels.n_max + 1 >= M:
            return self.levels.levels[:M].astype(float)
        return energy_levels(self.levels.family, M - 1).levels

    # padded workspace operators, used so N x N blocks avoid edge effects

    def _padded(self):
        M = self.dimension + _PAD
        E = self._E[:M]
        bp = np.diag(np.sqrt(E[1:]), -1)
        bm = bp.conj().T
        h = np.diag(E)
        hinv = np.diag(np.concatenate([[0.0], 1.0 / E[1:]]))
        hinv_sqrt = np.sqrt(hinv)
        return bp, bm, h, hinv, hinv_sqrt

    def q_matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """Q = B- H^{-1/2} and Q_dag = H^{-1/2} B+ on the N x N block."""
        bp, bm, _, _, hs = self._padded()
        N = self.dimension
        return (bm @ hs)[:N, :N], (hs @ bp)[:N, :N]

    def lowering_chain(self) -> np.ndarray:
        """Lowering matrix with the construction weights N_n / N_{n-1}."""
        N = self.dimension
        beta = np.array([normalization_factor(self.levels, n)
                         / normalization_factor(self.levels, n - 1)
                         for n in range(1, N)])
        return np.diag(beta, 1)


def matrix_identities(levels: SpectrumTable, N: int) -> dict:
    """Verify the inverse and isometry identities on the truncated matrices.

    Returns {identity: {deviation, tolerance, pass}} with deviations taken
    on the blocks where the identity is exact: Q Q_dag and Q_dag Q on the
    full N x N block, the right-inverse identity B- (H^{-1} B+) = 1 on
    components 0 .. N-2, and unit norms of (Q_dag)^n |0>.
    """
    lm = LadderMatrices(levels, N)
    bp, bm, h, hinv, hs = lm._padded()
    eye = np.eye(N + _PAD)
    tol = 1e-12
    report = {}

    def entry(dev):
        dev = float(dev)
        return {"deviation": dev, "tolerance": tol, "pass": dev <= tol}

    q = bm @ hs
    qd = hs @ bp
    report["qqdag-identity"] = entry(np.max(np.abs((q @ qd)[:N, :N] - np.eye(N))))

    proj0 = np.zeros((N, N))
    proj0[0, 0] = 1.0
    report["qdagq-ground-projector"] = entry(
        np.max(np.abs((qd @ q)[:N, :N] - np.eye(N) + proj0)))

    binv = hinv @ bp
    report["right-inverse"] = entry(np.max(np.abs((bm @ binv - eye)[:N - 1, :N - 1])))

    e0 = np.zeros(N + _PAD)
    e0[0] = 1.0
    vec = e0
    dev = 0.0
    for _ in range(min(N - 1, 6)):
        vec = qd @ vec
        dev = max(dev, float(abs(np.linalg.norm(vec[:N]) - 1.0)))
    report["qdag-power-norms"] = entry(dev)

    report["factorized-hamiltonian"] = entry(
        np.max(np.abs(lm.h_matrix - lm.b_plus @ lm.b_minus)))

    report["lowering-annihilates-ground"] = entry(np.linalg.norm(lm.b_minus[:, 0]))
    return report
