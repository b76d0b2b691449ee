"""Uniform 1D grids, finite-difference ladder operators, and factorized Hamiltonians.

Everything works in units hbar = 1, 2m = 1, so the first-order ladder
operators are simply A = W(x) + d/dx and its formal adjoint
A_dag = W(x) - d/dx, and the factorized Hamiltonian (measured from the
ground-state energy) is H = A_dag A = -d2/dx2 + W^2 - W'.

Derivatives use centered stencils of configurable order (2, 4 or 6; default
4) with one-sided stencils of matching order on the boundary rows. All
values are immutable after construction and every operation is a pure
function, so concurrent read-only use is safe.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import make_interp_spline


class InvalidRangeError(ValueError):
    """Grid endpoints are not ordered x_min < x_max."""


class TooFewPointsError(ValueError):
    """Grid has fewer than the minimum 16 points."""


class GridMismatchError(ValueError):
    """Two objects that must share a grid do not."""


class BoundaryDecayWarning(UserWarning):
    """A wavefunction is not negligible at the grid boundary."""


@dataclass(frozen=True)
class UnitsConvention:
    """Fixed unit system: hbar = 1 and 2m = 1, hence hbar/sqrt(2m) = 1."""

    hbar: float = 1.0
    two_m: float = 1.0


UNITS = UnitsConvention()

MIN_POINTS = 16


@dataclass(frozen=True)
class Grid:
    """Uniform spatial grid on [x_min, x_max] with n_points points."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise InvalidRangeError(
                f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < MIN_POINTS:
            raise TooFewPointsError(
                f"need at least {MIN_POINTS} points, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def interior_slice(self, fraction: float = 0.9) -> slice:
        """Index slice covering the central `fraction` of the domain."""
        margin = int(round(self.n_points * (1.0 - fraction) / 2))
        return slice(margin, self.n_points - margin)


def build_grid(x_min: float, x_max: float, n_points: int) -> Grid:
    """Construct a uniform grid; raises on a bad range or too few points."""
    return Grid(float(x_min), float(x_max), int(n_points))


@dataclass
class WaveFunctionGrid:
    """Complex amplitudes sampled on a Grid. Treated as immutable."""

    grid: Grid
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"{amps.shape[0] if amps.ndim == 1 else amps.shape} amplitudes "
                f"on a {self.grid.n_points}-point grid")
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.sqrt(trapezoid_weights(self.grid) @ np.abs(self.amplitudes) ** 2))

    def normalized(self) -> "WaveFunctionGrid":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero function")
        return WaveFunctionGrid(self.grid, self.amplitudes / n)


def trapezoid_weights(grid: Grid) -> np.ndarray:
    w = np.full(grid.n_points, grid.spacing)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def inner(phi: WaveFunctionGrid, psi: WaveFunctionGrid) -> complex:
    """Trapezoidal inner product <phi|psi> = int conj(phi) psi dx."""
    if phi.grid != psi.grid:
        raise GridMismatchError("inner product of functions on different grids")
    w = trapezoid_weights(phi.grid)
    return complex(np.sum(w * np.conj(phi.amplitudes) * psi.amplitudes))


# Centered first-derivative stencils (antisymmetric halves) per order.
_CENTERED_D1 = {
    2: np.array([0.5]),
    4: np.array([2 / 3, -1 / 12]),
    6: np.array([3 / 4, -3 / 20, 1 / 60]),
}

# Centered second-derivative stencils: (diagonal, off-diagonals) per order.
_CENTERED_D2 = {
    2: (-2.0, np.array([1.0])),
    4: (-5 / 2, np.array([4 / 3, -1 / 12])),
    6: (-49 / 18, np.array([3 / 2, -3 / 20, 1 / 90])),
}


def _one_sided_weights(offsets: np.ndarray, deriv: int) -> np.ndarray:
    """FD weights on integer offsets for the given derivative, by moment matching."""
    n = len(offsets)
    v = np.vander(offsets.astype(float), n, increasing=True).T
    rhs = np.zeros(n)
    rhs[deriv] = float(math.factorial(deriv))
    return np.linalg.solve(v, rhs)


def first_derivative(values: np.ndarray, spacing: float, order: int = 4) -> np.ndarray:
    """d/dx by a centered stencil; boundary rows use one-sided stencils of the same order."""
    if order not in _CENTERED_D1:
        raise ValueError(f"stencil order must be one of {sorted(_CENTERED_D1)}")
    f = np.asarray(values)
    out = np.zeros_like(f)
    half = _CENTERED_D1[order]
    hw = len(half)
    for j, c in enumerate(half, start=1):
        out[hw:-hw] += c * (f[hw + j:len(f) - hw + j] - f[hw - j:-hw - j])
    # one-sided rows of matching order near each boundary
    npts = order + 1
    for i in range(hw):
        w = _one_sided_weights(np.arange(npts) - i, 1)
        out[i] = w @ f[:npts]
        w = _one_sided_weights(np.arange(-npts + 1, 1) + i, 1)
        out[len(f) - 1 - i] = w @ f[-npts:]
    return out / spacing


def apply_ladder(W_values: np.ndarray, psi: WaveFunctionGrid, mode: str,
                 order: int = 4) -> WaveFunctionGrid:
    """Apply A = W + d/dx (mode 'lower') or A_dag = W - d/dx (mode 'raise')."""
    W = np.asarray(W_values, dtype=float)
    if W.shape != (psi.grid.n_points,):
        raise GridMismatchError("W sampled on a different grid than psi")
    dpsi = first_derivative(psi.amplitudes, psi.grid.spacing, order=order)
    if mode == "lower":
        amps = W * psi.amplitudes + dpsi
    elif mode == "raise":
        amps = W * psi.amplitudes - dpsi
    else:
        raise ValueError(f"mode must be 'lower' or 'raise', got {mode!r}")
    return WaveFunctionGrid(psi.grid, amps)


def dilate(psi: WaveFunctionGrid, s: float, order: int = 3,
           unitary: bool = True) -> WaveFunctionGrid:
    """Rescale the argument: (D_s psi)(x) = sqrt(s) * psi(s*x).

    With unitary=True the sqrt(s) amplitude factor preserves the L2 norm.
    unitary=False drops the factor, giving the plain substitution
    psi(x) -> psi(s*x). Resampling uses spline interpolation of the given
    order (default cubic); points s*x outside the grid are filled with
    zeros, which is only sound when psi has decayed there, so a warning is
    issued if the boundary amplitude is not negligible.
    """
    if s <= 0:
        raise ValueError(f"scale factor must be positive, got {s}")
    if s == 1.0:
        return WaveFunctionGrid(psi.grid, psi.amplitudes.copy())
    x = psi.grid.x
    amax = float(np.max(np.abs(psi.amplitudes)))
    edge = max(abs(psi.amplitudes[0]), abs(psi.amplitudes[-1]))
    if amax > 0 and edge > 1e-8 * amax:
        warnings.warn("wavefunction is not negligible at the grid boundary; "
                      "dilation will zero-fill out-of-domain samples",
                      BoundaryDecayWarning, stacklevel=2)
    target = s * x
    re = make_interp_spline(x, psi.amplitudes.real, k=order)
    im = make_interp_spline(x, psi.amplitudes.imag, k=order)
    inside = (target >= psi.grid.x_min) & (target <= psi.grid.x_max)
    amps = np.zeros(psi.grid.n_points, dtype=complex)
    amps[inside] = re(target[inside]) + 1j * im(target[inside])
    if unitary:
        amps *= np.sqrt(s)
    return WaveFunctionGrid(psi.grid, amps)


def second_derivative_bands(grid: Grid, order: int = 4) -> np.ndarray:
    """Banded form (lower storage) of -d2/dx2 with Dirichlet walls.

    Row 0 is the diagonal, row j the j-th subdiagonal. Truncating the
    symmetric stencil at the walls keeps the matrix exactly symmetric;
    all targeted states decay before the boundary so the lost accuracy
    there is immaterial.
    """
    if order not in _CENTERED_D2:
        raise ValueError(f"stencil order must be one of {sorted(_CENTERED_D2)}")
    diag, offs = _CENTERED_D2[order]
    h2 = grid.spacing ** 2
    bands = np.zeros((len(offs) + 1, grid.n_points))
    bands[0] = -diag / h2
    for j, c in enumerate(offs, start=1):
        bands[j, :grid.n_points - j] = -c / h2
    return bands


def hamiltonian_bands(W_values: np.ndarray, grid: Grid, order: int = 4) -> np.ndarray:
    """Banded symmetric matrix of H = -d2/dx2 + W^2 - W' (W' by the FD stencil)."""
    W = np.asarray(W_values, dtype=float)
    if W.shape != (grid.n_points,):
        raise GridMismatchError("W sampled on a different grid")
    Wp = first_derivative(W, grid.spacing, order=order)
    bands = second_derivative_bands(grid, order=order)
    bands[0] += W * W - Wp
    return bands


def build_hamiltonian_matrix(W_values: np.ndarray, grid: Grid, order: int = 4) -> np.ndarray:
    """Dense symmetric matrix of the factorized Hamiltonian -d2/dx2 + W^2 - W'."""
    bands = hamiltonian_bands(W_values, grid, order=order)
    n = grid.n_points
    M = np.diag(bands[0])
    for j in range(1, bands.shape[0]):
        off = np.diag(bands[j, :n - j], -j)
        M += off + off.T
    return M


def cumulative_integral(values: np.ndarray, spacing: float) -> np.ndarray:
    """Cumulative integral from the left endpoint, 4th-order accurate.

    Each interior segment [x_j, x_{j+1}] is integrated with the 4-point
    rule h*(-f[j-1] + 13 f[j] + 13 f[j+1] - f[j+2])/24; the first and last
    segments use the matching one-sided 4-point rule. Plain cumulative
    trapezoid is only O(h^2), which is visible in the ground-state
    annihilation residual, hence the higher-order rule.
    """
    f = np.asarray(values, dtype=float)
    n = len(f)
    if n < 4:
        raise ValueError("need at least 4 samples")
    seg = np.empty(n - 1)
    seg[1:-1] = (-f[:-3] + 13 * f[1:-2] + 13 * f[2:-1] - f[3:]) / 24
    seg[0] = (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]) / 24
    seg[-1] = (9 * f[-1] + 19 * f[-2] - 5 * f[-3] + f[-4]) / 24
    out = np.zeros(n)
    np.cumsum(seg, out=out[1:])
    return out * spacing
