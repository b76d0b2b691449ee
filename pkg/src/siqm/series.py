"""Power-series solution and continuation of the self-similar superpotential.

The superpotential of a scaling-class potential reproduces itself under the
rescaling W(x) -> sqrt(q) W(sqrt(q) x) of the parameter map, which combined
with the factorization condition and the constant remainder R gives the
functional-differential equation

    W(x)^2 + W'(x) - q W(sqrt(q) x)^2 + q W'(sqrt(q) x) = R.

Substituting an odd power series W(x) = sum_j c_j x^(2j+1) and matching
powers of x yields the closed recursion

    c_{k+1} = -[(1 - q^(k+2)) / ((2k+3)(1 + q^(k+2)))] * sum_{i+j=k} c_i c_j

together with the constant-term identity R = (1 + q) c_0. At q = 1 every
higher coefficient vanishes (linear W, harmonic limit); at q = 0 the
recursion generates the Taylor series of c0-scaled tanh (the one-soliton
limit). For 0 < q < 1 the series has a finite radius of convergence, so W
is continued outward by integrating the equation as a delayed-argument
(pantograph-type) ODE

    W'(x) = -W(x)^2 + q W(sqrt(q) x)^2 - q W'(sqrt(q) x) + R :

the contracted argument sqrt(q) x always lands in already-computed inner
territory, so an explicit outward march is well posed. The far field
saturates at W_inf = sqrt(R / (1 - q)) with a slow power-law tail ~ 1/x^2.
"""

from dataclasses import dataclass, field

import numpy as np


class HorizonExceededError(RuntimeError):
    """Outward continuation left the built table or diverged."""


@dataclass(frozen=True)
class SeriesCoefficients:
    """Odd-series coefficients c_j of W (c_j multiplies x^(2j+1))."""

    q: float
    c0: float
    coeffs: np.ndarray = field(repr=False)
    radius_estimate: float = 0.0

    @property
    def remainder(self) -> float:
        """The constant R = (1+q) c_0 the series solves for."""
        return (1.0 + self.q) * self.c0


def series_coefficients(q: float, c0: float, K: int) -> SeriesCoefficients:
    """Solve the power-matching recursion for c_0 ... c_K.

    q = 0 is admitted (one-soliton limit, tanh series) even though the
    scaling parameter map itself requires q > 0.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if K < 1:
        raise ValueError(f"need K >= 1, got {K}")
    c = np.zeros(K + 1)
    c[0] = c0
    for k in range(K):
        conv = float(np.dot(c[:k + 1], c[k::-1]))
        c[k + 1] = -(1.0 - q ** (k + 2)) / ((2 * k + 3) * (1.0 + q ** (k + 2))) * conv
    rho = _ratio_radius(c)
    return SeriesCoefficients(q=q, c0=c0, coeffs=c, radius_estimate=rho)


def _ratio_radius(c: np.ndarray, tail: int = 6) -> float:
    nz = np.flatnonzero(np.abs(c) > 0)
    if len(nz) < tail:
        return np.inf
    ratios = np.sqrt(np.abs(c[nz[:-1]] / c[nz[1:]]))
    return float(np.median(ratios[-tail:]))


def radius_estimate(coeffs: SeriesCoefficients) -> float:
    """Ratio-test estimate of the convergence radius in x.

    Returns +inf for polynomial series (q = 1). The estimate uses the
    median of the last ratios sqrt(|c_k / c_{k+1}|); a non-monotone tail
    is reported through a warning-free diagnostic in ratio_sequence.
    """
    return _ratio_radius(coeffs.coeffs)


def ratio_sequence(coeffs: SeriesCoefficients) -> np.ndarray:
    """The sequence sqrt(|c_k / c_{k+1}|) over nonzero coefficients."""
    c = coeffs.coeffs
    nz = np.flatnonzero(np.abs(c) > 0)
    return np.sqrt(np.abs(c[nz[:-1]] / c[nz[1:]]))


class SelfSimilarW:
    """Evaluator for W: direct series inside 0.8*radius, pantograph ODE outside.

    Builds a uniform table of (x, W, W') on demand, marching outward with a
    classical 4th-order Runge-Kutta step. Inner values needed at the
    contracted argument sqrt(q) x come from the series where it converges
    and from 4-point Lagrange interpolation of the table beyond. W is odd,
    so only x >= 0 is tabulated.
    """

    def __init__(self, coeffs: SeriesCoefficients, step: float = 0.005):
        self.coeffs = coeffs
        self.q = coeffs.q
        self.R = coeffs.remainder
        self.step = float(step)
        self.x_break = 0.8 * coeffs.radius_estimate
        self._sqrtq = np.sqrt(self.q)
        # divergence guard: W should stay below its saturation value
        if self.q < 1.0:
            self._w_cap = 10.0 * max(1.0, np.sqrt(abs(self.R) / (1.0 - self.q)))
        else:
            self._w_cap = np.inf
        self._xs = None
        self._W = None
        self._Wp = None

    @property
    def w_infinity(self) -> float:
        """Saturation value sqrt(R / (1-q)) of the far field (q < 1)."""
        if self.q >= 1.0:
            return np.inf
        return float(np.sqrt(self.R / (1.0 - self.q)))

    def _series_w(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        xp = x.copy()
        x2 = x * x
        for cj in self.coeffs.coeffs:
            out += cj * xp
            xp = xp * x2
        return out

    def _series_wp(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        xp = np.ones_like(x)
        x2 = x * x
        for j, cj in enumerate(self.coeffs.coeffs):
            out += (2 * j + 1) * cj * xp
            xp = xp * x2
        return out

    def _interp(self, table, u: float) -> float:
        # 6-point Lagrange on the uniform table; the high order keeps the
        # pointwise interpolation noise near machine level, which matters
        # because downstream ladder recursions amplify any grid-scale noise
        h = self.step
        i = int(u / h)
        i = max(2, min(i, len(table) - 4))
        t = u / h - i
        acc = 0.0
        for j in range(-2, 4):
            lj = 1.0
            for m in range(-2, 4):
                if m != j:
                    lj *= (t - m) / (j - m)
            acc += lj * table[i + j]
        return acc

    def _inner_w(self, u: float) -> float:
        if u <= self.x_break:
            return float(self._series_w(u))
        return self._interp(self._W, u)

    def _inner_wp(self, u: float) -> float:
        if u <= self.x_break:
            return float(self._series_wp(u))
        return self._interp(self._Wp, u)

    def _rhs(self, x: float, w: float) -> float:
        u = self._sqrtq * x
        return -w * w + self.q * self._inner_w(u) ** 2 - self.q * self._inner_wp(u) + self.R

    def ensure(self, x_max: float):
        """Extend the table so that |x| <= x_max is evaluable."""
        if self.q == 1.0:
            return  # W = c0 x globally, no table needed
        h = self.step
        series_end = min(self.x_break, x_max + 4 * h)
        if self._xs is None or (self._xs[-1] < self.x_break and self._xs[-1] < series_end - h):
            # table still entirely inside the series region: (re)fill it
            n0 = int(series_end / h) + 1
            xs = np.arange(n0) * h
            self._xs = list(xs)
            self._W = list(self._series_w(xs))
            self._Wp = list(self._series_wp(xs))
        x = self._xs[-1]
        w = self._W[-1]
        while x < x_max:
            # the contracted argument must stay inside the built table
            if self._sqrtq * (x + h) > x and x > 0:
                raise HorizonExceededError(
                    "step too large for the contracted argument near the series edge")
            k1 = self._rhs(x, w)
            k2 = self._rhs(x + h / 2, w + h * k1 / 2)
            k3 = self._rhs(x + h / 2, w + h * k2 / 2)
            k4 = self._rhs(x + h, w + h * k3)
            w = w + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
            x = x + h
            if not np.isfinite(w) or abs(w) > self._w_cap:
                raise HorizonExceededError(f"continuation diverged near x = {x:.3f}")
            self._xs.append(x)
            self._W.append(w)
            self._Wp.append(self._rhs(x, w))

    def _eval_tabulated(self, u: np.ndarray, table) -> np.ndarray:
        arr = np.asarray(table)
        out = np.empty_like(u)
        for i, ui in enumerate(u):
            out[i] = self._interp(arr, ui)
        return out

    def w(self, x) -> np.ndarray:
        """W(x), vectorized; odd extension for negative arguments."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.q == 1.0:
            return self.c0_line(x)
        a = np.abs(x)
        self.ensure(float(np.max(a)) + 2 * self.step)
        out = np.empty_like(a)
        ser = a <= self.x_break
        out[ser] = self._series_w(a[ser])
        out[~ser] = self._eval_tabulated(a[~ser], self._W)
        return np.sign(x) * out

    def wp(self, x) -> np.ndarray:
        """W'(x), vectorized; even in x."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.q == 1.0:
            return np.full_like(x, self.coeffs.c0)
        a = np.abs(x)
        self.ensure(float(np.max(a)) + 2 * self.step)
        out = np.empty_like(a)
        ser = a <= self.x_break
        out[ser] = self._series_wp(a[ser])
        out[~ser] = self._eval_tabulated(a[~ser], self._Wp)
        return out

    def c0_line(self, x: np.ndarray) -> np.ndarray:
        return self.coeffs.c0 * x

    def defining_residual(self, x) -> np.ndarray:
        """|W^2 + W' - q W(sqrt(q)x)^2 + q W'(sqrt(q)x) - R| pointwise.

        W' here is recomputed by finite differences of the W table, so the
        residual is an independent check rather than a restatement of the
        stored ODE right-hand sides.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        eps = 1e-4
        wp_fd = (self.w(x - 2 * eps) - 8 * self.w(x - eps)
                 + 8 * self.w(x + eps) - self.w(x + 2 * eps)) / (12 * eps)
        u = self._sqrtq * x
        wpu_fd = (self.w(u - 2 * eps) - 8 * self.w(u - eps)
                  + 8 * self.w(u + eps) - self.w(u + 2 * eps)) / (12 * eps)
        res = (self.w(x) ** 2 + wp_fd
               - self.q * self.w(u) ** 2 + self.q * wpu_fd - self.R)
        return np.abs(res)


def eval_W_selfsimilar(coeffs: SeriesCoefficients, x: float) -> float:
    """W(x) for the series solution, continued past the convergence radius."""
    engine = _engine_for(coeffs)
    return float(engine.w(x)[0])


_engines: dict = {}


def _engine_for(coeffs: SeriesCoefficients) -> SelfSimilarW:
    key = (coeffs.q, coeffs.c0, len(coeffs.coeffs))
    eng = _engines.get(key)
    if eng is None or eng.coeffs is not coeffs:
        eng = SelfSimilarW(coeffs)
        _engines[key] = eng
    return eng
