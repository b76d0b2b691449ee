"""Superpotential families, parameter maps, remainders, and ground states.

A family bundles a superpotential W(x; a), a parameter map a -> a' (either
a scaling a' = q a or a translation a' = a + delta), and the remainder R(a)
appearing in the factorization identity

    A(a1) A_dag(a1) = A_dag(a2) A(a2) + R(a1).

Three families are registered. The scaling-class family is the subject of
the package; harmonic and Morse are translation-class fixtures with known
closed-form spectra that anchor the ladder machinery against independent
analytics:

    harmonic     W(x; lam) = lam * x,    a2 = a1,      R = 2 lam
    morse        W(x; A) = A - exp(-x),  a2 = a1 - 1,  R(a) = a^2 - (a-1)^2
    selfsimilar  W from the power series solver, a2 = q a1, R(a) = c a
"""

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid, WaveFunctionGrid, apply_ladder, cumulative_integral
from .series import SelfSimilarW, series_coefficients

HARMONIC = "harmonic"
MORSE = "morse"
SELFSIMILAR = "selfsimilar"


class NonNormalizableError(ValueError):
    """The candidate ground state does not decay at both boundaries."""


class OutOfDomainError(ValueError):
    """A parameter value outside the family's valid domain."""


@dataclass(frozen=True)
class ParameterRule:
    """Parameter map: scaling a -> q*a with 0 < q <= 1, or translation a -> a + delta."""

    kind: str
    factor_q: float | None = None
    shift_delta: float | None = None

    def __post_init__(self):
        if self.kind == "scaling":
            if self.factor_q is None or self.shift_delta is not None:
                raise ValueError("scaling rule takes factor_q only")
            if not 0.0 < self.factor_q <= 1.0:
                raise ValueError(f"scaling requires 0 < q <= 1, got {self.factor_q}")
        elif self.kind == "translation":
            if self.shift_delta is None or self.factor_q is not None:
                raise ValueError("translation rule takes shift_delta only")
        else:
            raise ValueError(f"unknown rule kind {self.kind!r}")

    def value(self, a1: float, index: int) -> float:
        """Chain value a_index (1-based; index 0 gives the pre-chain parameter a_0)."""
        if self.kind == "scaling":
            return a1 * self.factor_q ** (index - 1)
        return a1 + (index - 1) * self.shift_delta


@dataclass(frozen=True)
class ParameterChain:
    values: np.ndarray


@dataclass
class PotentialFamily:
    """A named superpotential family with its parameter rule and remainder."""

    name: str
    a1: float
    rule: ParameterRule
    c: float = 0.0                   # remainder constant, scaling case
    series_order: int = 60
    _engine: SelfSimilarW | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.name not in (HARMONIC, MORSE, SELFSIMILAR):
            raise ValueError(f"unknown family {self.name!r}")
        if self.name == SELFSIMILAR:
            if self.rule.kind != "scaling":
                raise ValueError("selfsimilar family requires a scaling rule")
            if self.a1 <= 0:
                raise OutOfDomainError("scaling family needs a1 > 0")

    @property
    def q(self) -> float:
        if self.rule.kind != "scaling":
            raise ValueError("q is defined for scaling rules only")
        return self.rule.factor_q

    def chain_value(self, index: int) -> float:
        return self.rule.value(self.a1, index)

    def engine(self) -> SelfSimilarW:
        """Lazily built series/continuation evaluator (selfsimilar only)."""
        if self.name != SELFSIMILAR:
            raise ValueError("series engine exists for the selfsimilar family only")
        if self._engine is None:
            c0 = self.c * self.a1 / (1.0 + self.q)
            coeffs = series_coefficients(self.q, c0, self.series_order)
            self._engine = SelfSimilarW(coeffs)
        return self._engine

    def to_config(self) -> dict:
        cfg = {"family": self.name, "a1": self.a1}
        if self.rule.kind == "scaling":
            cfg["q"] = self.rule.factor_q
            cfg["c"] = self.c
        else:
            cfg["delta"] = self.rule.shift_delta
        return cfg


def harmonic_family(lam: float = 1.0) -> PotentialFamily:
    """W = lam*x with the identity parameter map and constant remainder 2*lam."""
    return PotentialFamily(HARMONIC, a1=lam,
                           rule=ParameterRule("translation", shift_delta=0.0))


def morse_family(A: float = 2.5) -> PotentialFamily:
    """W = A - exp(-x) in the alpha = B = 1 convention; a -> a - 1 per step."""
    return PotentialFamily(MORSE, a1=A,
                           rule=ParameterRule("translation", shift_delta=-1.0))


def selfsimilar_family(q: float = 0.5, c: float = 1.0, a1: float = 1.0,
                       series_order: int = 60) -> PotentialFamily:
    return PotentialFamily(SELFSIMILAR, a1=a1,
                           rule=ParameterRule("scaling", factor_q=q),
                           c=c, series_order=series_order)


def family_from_config(cfg: dict) -> PotentialFamily:
    name = cfg.get("family")
    if name == HARMONIC:
        return harmonic_family(lam=float(cfg.get("a1", 1.0)))
    if name == MORSE:
        return morse_family(A=float(cfg.get("a1", 2.5)))
    if name == SELFSIMILAR:
        return selfsimilar_family(q=float(cfg.get("q", 0.5)),
                                  c=float(cfg.get("c", 1.0)),
                                  a1=float(cfg.get("a1", 1.0)))
    raise ValueError(f"unknown family {name!r}")


def parameter_chain(family: PotentialFamily, n: int) -> ParameterChain:
    """Chain a_1 ... a_n under the family's rule."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    idx = np.arange(1, n + 1)
    if family.rule.kind == "scaling":
        values = family.a1 * family.rule.factor_q ** (idx - 1)
    else:
        values = family.a1 + (idx - 1) * family.rule.shift_delta
    return ParameterChain(values=values)


def eval_W(family: PotentialFamily, a: float, grid: Grid) -> np.ndarray:
    """Sample W(x; a) on the grid."""
    x = grid.x
    if family.name == HARMONIC:
        return a * x
    if family.name == MORSE:
        return a - np.exp(-x)
    # scaling law: W(x; a) = s * W(s x; a1) with s = sqrt(a / a1)
    if a <= 0:
        raise OutOfDomainError(f"scaling family needs a > 0, got {a}")
    s = np.sqrt(a / family.a1)
    return s * family.engine().w(s * x)


def remainder(family: PotentialFamily, a: float) -> float:
    """Remainder R(a) of the factorization identity."""
    if family.name == HARMONIC:
        return 2.0 * a
    if family.name == MORSE:
        d = family.rule.shift_delta
        return a * a - (a + d) ** 2
    return family.c * a


def suggested_grid(family: PotentialFamily, spacing: float = 0.01) -> Grid:
    """A domain wide enough for bound states up to n = 6 at default parameters.

    The Morse domain is asymmetric because the exponential wall on the left
    would otherwise dominate the matrix norm and erode eigenvalue accuracy.
    The scaling-class potential has a 1/x^2 confinement tail, so its
    near-threshold levels need a wide box.
    """
    if family.name == MORSE:
        lo, hi = -5.0, 32.0
    elif family.name == HARMONIC:
        lo, hi = -10.0, 10.0
    else:
        lo, hi = -40.0, 40.0
    n = int(round((hi - lo) / spacing)) + 1
    return Grid(lo, hi, n)


def ground_state(family: PotentialFamily, a: float, grid: Grid) -> WaveFunctionGrid:
    """Unit-norm ground state psi_0(x) proportional to exp(-int_0^x W).

    The accumulated integral uses a 4th-order cumulative rule; the additive
    constant from starting the integral at the left edge instead of x = 0
    only rescales psi_0 and is removed by normalization.
    """
    W = eval_W(family, a, grid)
    I = cumulative_integral(W, grid.spacing)
    expo = -I
    expo -= np.max(expo)
    amps = np.exp(expo)
    peak = float(np.max(amps))
    # a growing exponential shows up as boundary amplitude of order the peak;
    # slowly decaying but bound states sit orders of magnitude below this
    if amps[0] > 1e-2 * peak or amps[-1] > 1e-2 * peak:
        raise NonNormalizableError(
            "candidate ground state does not decay at both boundaries")
    return WaveFunctionGrid(grid, amps.astype(complex)).normalized()


def default_test_functions(grid: Grid) -> list[WaveFunctionGrid]:
    """Smooth decaying packets used to probe operator identities."""
    x = grid.x
    span = min(abs(grid.x_min), abs(grid.x_max))
    packets = []
    for x0, sig in ((0.0, 1.0), (-0.15 * span, 1.4), (0.1 * span, 0.8)):
        amps = np.exp(-((x - x0) ** 2) / (2 * sig ** 2)).astype(complex)
        packets.append(WaveFunctionGrid(grid, amps).normalized())
    amps = (np.exp(-x ** 2 / 2.5) * np.exp(0.7j * x)).astype(complex)
    packets.append(WaveFunctionGrid(grid, amps).normalized())
    return packets


def shape_invariance_residual(family: PotentialFamily, grid: Grid,
                              test_fns: list[WaveFunctionGrid] | None = None,
                              order: int = 4) -> float:
    """Worst relative residual of A(a1)A_dag(a1) - A_dag(a2)A(a2) - R(a1).

    Measured on the interior 90% of the grid over the supplied (or default)
    test functions. This is the admission gate for a family: spectra and
    algebra checks are only meaningful below the 1e-6 level.
    """
    if test_fns is None:
        test_fns = default_test_functions(grid)
    a1 = family.a1
    a2 = family.chain_value(2)
    W1 = eval_W(family, a1, grid)
    W2 = eval_W(family, a2, grid)
    R = remainder(family, a1)
    sl = grid.interior_slice()
    worst = 0.0
    for f in test_fns:
        lhs = apply_ladder(W1, apply_ladder(W1, f, "raise", order), "lower", order)
        rhs = apply_ladder(W2, apply_ladder(W2, f, "lower", order), "raise", order)
        diff = lhs.amplitudes - rhs.amplitudes - R * f.amplitudes
        denom = np.linalg.norm(f.amplitudes[sl])
        worst = max(worst, float(np.linalg.norm(diff[sl]) / denom))
    return worst
