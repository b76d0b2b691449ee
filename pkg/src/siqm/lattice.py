"""Parameter-lattice representation of the shape-invariance operator algebra.

The abstract relations involve the shift operator T that replaces a_1 by
a_2 inside any operator, which has no diagonal action on a single
Hamiltonian's eigenbasis. The minimal faithful realization stacks K copies
of the spatial grid into levels k = 0 .. K-1, level k carrying the chain
parameter a_{k+1}; a state is then one x-wavefunction per level. On this
lattice

    (T psi)_k     = psi_{k+1}            (T_dag psi)_k = psi_{k-1}
    (f(a_m) psi)_k = f(a_{k+m}) psi_k     (level-diagonal parameter functions)
    (B+ psi)_k    = A_dag(a_{k+1}) psi_{k+1}
    (B- psi)_k    = A(a_k) psi_{k-1}

and every commutation relation of the algebra becomes a concrete block
identity checkable to grid accuracy. Content shifted outside the window is
dropped, so test states live in the middle levels and residual norms are
restricted to interior levels.

Relation identifiers (see RELATIONS): the ladder commutator
[B-, B+] = R(a_0), the remainder brackets generating the infinite tower,
their sqrt(q)-scaled K+/K- versions, the q-deformed oscillator relation
S- S+ - q S+ S- = 1, the deformed SO(2,1) form c*exp(-p J3) of the
commutator, and the J3 ladder property [J3, B+-] = +-B+-.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .families import PotentialFamily, SELFSIMILAR, eval_W, remainder
from .grid import Grid, WaveFunctionGrid, apply_ladder, dilate


class WindowTooSmallError(ValueError):
    """The lattice window cannot contain the operator's level reach."""


class UnknownRelationError(KeyError):
    """Relation identifier not in the registry."""


@dataclass
class LatticeState:
    """K stacked x-wavefunctions; level k carries chain parameter a_{k+1}."""

    grid: Grid
    family: PotentialFamily
    components: np.ndarray = field(repr=False)  # (K, n_points) complex

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=complex)
        if comps.ndim != 2 or comps.shape[1] != self.grid.n_points:
            raise ValueError("components must be (K, n_points)")
        if comps.shape[0] < 6:
            raise WindowTooSmallError("lattice window must have at least 6 levels")
        self.components = comps

    @property
    def window(self) -> int:
        return self.components.shape[0]

    def copy_with(self, comps: np.ndarray) -> "LatticeState":
        return LatticeState(self.grid, self.family, comps)

    def interior_norm(self, x_fraction: float = 0.9) -> float:
        sl = self.grid.interior_slice(x_fraction)
        core = self.components[1:-1, sl]
        return float(np.linalg.norm(core))


def packet_state(family: PotentialFamily, grid: Grid, window: int,
                 levels: tuple[int, ...] | None = None,
                 x0: float = 0.0, sigma: float = 1.0,
                 momentum: float = 0.0) -> LatticeState:
    """Gaussian packet placed in the given levels (default: the two middle ones)."""
    if levels is None:
        mid = window // 2
        levels = (mid - 1, mid)
    x = grid.x
    amps = np.exp(-((x - x0) ** 2) / (2 * sigma ** 2)) * np.exp(1j * momentum * x)
    comps = np.zeros((window, grid.n_points), dtype=complex)
    for lev in levels:
        comps[lev] = amps
    comps /= np.linalg.norm(comps)
    return LatticeState(grid, family, comps)


class LatticeContext:
    """Precomputed per-level superpotentials and primitive operator actions."""

    def __init__(self, family: PotentialFamily, grid: Grid, window: int,
                 order: int = 4):
        self.family = family
        self.grid = grid
        self.window = window
        self.order = order
        # chain parameters a_i for i = (1-reach) .. (window+reach); stored in a
        # dict keyed by 1-based chain index so level/offset lookups stay literal
        self._params = {i: family.chain_value(i) for i in range(-4, window + 6)}
        self._W = {}

    def param(self, index: int) -> float:
        if index not in self._params:
            self._params[index] = self.family.chain_value(index)
        return self._params[index]

    def W(self, index: int) -> np.ndarray:
        if index not in self._W:
            self._W[index] = eval_W(self.family, self.param(index), self.grid)
        return self._W[index]

    # primitive actions on raw (K, n) arrays

    def b_plus(self, comps: np.ndarray) -> np.ndarray:
        out = np.zeros_like(comps)
        K = comps.shape[0]
        for k in range(K - 1):
            psi = WaveFunctionGrid(self.grid, comps[k + 1])
            out[k] = apply_ladder(self.W(k + 1), psi, "raise", self.order).amplitudes
        return out

    def b_minus(self, comps: np.ndarray) -> np.ndarray:
        out = np.zeros_like(comps)
        K = comps.shape[0]
        for k in range(1, K):
            psi = WaveFunctionGrid(self.grid, comps[k - 1])
            out[k] = apply_ladder(self.W(k), psi, "lower", self.order).amplitudes
        return out

    def t_shift(self, comps: np.ndarray) -> np.ndarray:
        out = np.zeros_like(comps)
        out[:-1] = comps[1:]
        return out

    def t_shift_dag(self, comps: np.ndarray) -> np.ndarray:
        out = np.zeros_like(comps)
        out[1:] = comps[:-1]
        return out

    def diag(self, comps: np.ndarray, f, offset: int) -> np.ndarray:
        """Level-diagonal parameter function: level k is multiplied by f(a_{k+offset})."""
        vals = np.array([f(self.param(k + offset)) for k in range(comps.shape[0])])
        return comps * vals[:, None]

    def k_plus(self, comps):
        return np.sqrt(self.family.q) * self.b_plus(comps)

    def k_minus(self, comps):
        return np.sqrt(self.family.q) * self.b_minus(comps)

    def s_plus(self, comps):
        rinv = lambda a: 1.0 / np.sqrt(remainder(self.family, a))
        return self.k_plus(self.diag(comps, rinv, 1))

    def s_minus(self, comps):
        rinv = lambda a: 1.0 / np.sqrt(remainder(self.family, a))
        return self.diag(self.k_minus(comps), rinv, 1)

    def j3(self, comps):
        p = np.log(self.family.q)
        return self.diag(comps, lambda a: -np.log(a) / p, 0)

    def exp_minus_p_j3(self, comps):
        # exp(-p J3) = a_0 as a level-diagonal operator
        return self.diag(comps, lambda a: a, 0)


@dataclass(frozen=True)
class LatticeOperator:
    """Named composite action on lattice states."""

    name: str
    action: callable

    def __call__(self, state: LatticeState) -> LatticeState:
        return state.copy_with(self.action(state.components))


def lattice_apply(op: LatticeOperator, state: LatticeState) -> LatticeState:
    """Apply a lattice operator; content shifted past the window is dropped."""
    return op(state)


def make_operator(ctx: LatticeContext, name: str) -> LatticeOperator:
    table = {
        "B+": ctx.b_plus, "B-": ctx.b_minus,
        "K+": ctx.k_plus, "K-": ctx.k_minus,
        "S+": ctx.s_plus, "S-": ctx.s_minus,
        "T": ctx.t_shift, "T+": ctx.t_shift_dag,
        "J3": ctx.j3,
    }
    if name not in table:
        raise UnknownRelationError(name)
    return LatticeOperator(name, table[name])


def _difference_diag(ctx: LatticeContext, depth: int):
    """The depth-th forward difference of R along the chain, as a diag function."""
    def apply(comps):
        out = np.zeros_like(comps)
        for k in range(comps.shape[0]):
            acc = sum((-1) ** (depth - j) * comb(depth, j)
                      * remainder(ctx.family, ctx.param(k + j))
                      for j in range(depth + 1))
            out[k] = acc * comps[k]
        return out
    return apply


def _relation_pair(ctx: LatticeContext, relation_id: str):
    """LHS and RHS actions for each verified commutation relation."""
    fam = ctx.family
    R = lambda a: remainder(fam, a)
    Bp, Bm = ctx.b_plus, ctx.b_minus
    Kp, Km = ctx.k_plus, ctx.k_minus

    def diag_R(comps, offset):
        return ctx.diag(comps, R, offset)

    if relation_id == "ladder-commutator":
        return (lambda c: Bm(Bp(c)) - Bp(Bm(c)),
                lambda c: diag_R(c, 0))

    if relation_id == "remainder-bracket":
        return (lambda c: Bp(diag_R(c, 0)) - diag_R(Bp(c), 0),
                lambda c: diag_R(Bp(c), 1) - diag_R(Bp(c), 0))

    if relation_id in ("remainder-bracket-2", "remainder-bracket-3"):
        depth = 2 if relation_id.endswith("2") else 3
        d_prev = _difference_diag(ctx, depth - 1)
        d_next = _difference_diag(ctx, depth)

        def x_op(c, d=d_prev, n=depth - 1):
            out = c
            for _ in range(n):
                out = Bp(out)
            return d(out)

        def lhs(c):
            return Bp(x_op(c)) - x_op(Bp(c))

        def rhs(c):
            out = c
            for _ in range(depth):
                out = Bp(out)
            return d_next(out)

        return lhs, rhs

    if relation_id == "scaled-commutator":
        return (lambda c: Km(Kp(c)) - Kp(Km(c)),
                lambda c: diag_R(c, 1))

    if relation_id == "scaled-remainder-bracket":
        q = fam.q
        return (lambda c: Kp(diag_R(c, 1)) - diag_R(Kp(c), 1),
                lambda c: (q - 1.0) * diag_R(Kp(c), 1))

    if relation_id.startswith("scaled-tower-"):
        n = int(relation_id.rsplit("-", 1)[1])
        if not 1 <= n <= 3:
            raise UnknownRelationError(relation_id)
        q = fam.q

        def x_op(c):
            out = c
            for _ in range(n):
                out = Kp(out)
            return (q - 1.0) ** n * diag_R(out, 1)

        def lhs(c):
            return Kp(x_op(c)) - x_op(Kp(c))

        def rhs(c):
            out = c
            for _ in range(n + 1):
                out = Kp(out)
            return (q - 1.0) ** (n + 1) * diag_R(out, 1)

        return lhs, rhs

    if relation_id == "q-oscillator":
        q = fam.q
        Sp, Sm = ctx.s_plus, ctx.s_minus
        return (lambda c: Sm(Sp(c)) - q * Sp(Sm(c)),
                lambda c: c)

    if relation_id == "so21-commutator":
        cconst = fam.c
        p = np.log(fam.q)
        return (lambda c: Bm(Bp(c)) - Bp(Bm(c)),
                lambda c: cconst * ctx.exp_minus_p_j3(c))

    if relation_id == "j3-ladder-up":
        J3 = ctx.j3
        return (lambda c: J3(Bp(c)) - Bp(J3(c)),
                lambda c: Bp(c))

    if relation_id == "j3-ladder-down":
        J3 = ctx.j3
        return (lambda c: J3(Bm(c)) - Bm(J3(c)),
                lambda c: -Bm(c))

    if relation_id == "shift-rule-raise":
        return (lambda c: diag_R(Bp(c), 1),
                lambda c: Bp(diag_R(c, 0)))

    if relation_id == "shift-rule-lower":
        return (lambda c: diag_R(Bm(c), 1),
                lambda c: Bm(diag_R(c, 2)))

    raise UnknownRelationError(relation_id)


SCALING_ONLY = {"scaled-commutator", "scaled-remainder-bracket",
                "scaled-tower-1", "scaled-tower-2", "scaled-tower-3",
                "q-oscillator", "so21-commutator",
                "j3-ladder-up", "j3-ladder-down"}

RELATIONS = ["ladder-commutator", "remainder-bracket", "remainder-bracket-2",
             "remainder-bracket-3", "scaled-commutator",
             "scaled-remainder-bracket", "scaled-tower-1", "scaled-tower-2",
             "scaled-tower-3", "q-oscillator", "so21-commutator",
             "j3-ladder-up", "j3-ladder-down", "shift-rule-raise",
             "shift-rule-lower"]


def commutator_residual(relation_id: str, family: PotentialFamily,
                        test_states: list[LatticeState] | None = None,
                        grid: Grid | None = None, window: int = 12,
                        order: int = 4) -> float:
    """Worst relative residual of one commutation relation over test states.

    The residual is ||(LHS - RHS) psi|| / ||psi|| restricted to interior
    levels and the interior 90% of the grid. Scaling-only relations demand a
    scaling family with q < 1 (except the q-oscillator relation, which also
    holds at q = 1 where it degenerates to the boson commutator).
    """
    if relation_id in SCALING_ONLY and family.rule.kind != "scaling":
        raise UnknownRelationError(
            f"{relation_id} is defined for scaling families only")
    if relation_id in ("so21-commutator", "j3-ladder-up", "j3-ladder-down") \
            and family.rule.kind == "scaling" and family.q == 1.0:
        raise UnknownRelationError(f"{relation_id} is singular at q = 1 (p = log q = 0)")
    if test_states is None:
        if grid is None:
            raise ValueError("need a grid when test states are not supplied")
        test_states = [
            packet_state(family, grid, window, x0=0.0, sigma=1.0),
            packet_state(family, grid, window, x0=-1.0, sigma=1.3),
            packet_state(family, grid, window, x0=0.8, sigma=0.9, momentum=0.6),
        ]
    ctx = LatticeContext(family, test_states[0].grid, test_states[0].window,
                         order=order)
    lhs, rhs = _relation_pair(ctx, relation_id)
    worst = 0.0
    for state in test_states:
        diff = lhs(state.components) - rhs(state.components)
        num = LatticeState(state.grid, family, diff).interior_norm()
        den = state.interior_norm()
        worst = max(worst, num / den)
    return worst


def adjoint_pair_residual(family: PotentialFamily, grid: Grid, window: int,
                          pair: str = "B", order: int = 4) -> float:
    """|<phi, Op+ psi> - <Op- phi, psi>| over packet states, normalized.

    For the dilation-built pair C, C_dag the pairing carries the Jacobian
    factor sqrt(q) of the non-unitary argument scaling; that factor is
    included here so the identity is exact (see dilation_identity_residual).
    """
    ctx = LatticeContext(family, grid, window, order=order)
    ups = {"B": ctx.b_plus, "K": ctx.k_plus, "S": ctx.s_plus}
    downs = {"B": ctx.b_minus, "K": ctx.k_minus, "S": ctx.s_minus}
    if pair not in ups:
        raise ValueError(f"pair must be one of {sorted(ups)}")
    phi = packet_state(family, grid, window, x0=-0.5, sigma=1.1)
    psi = packet_state(family, grid, window, x0=0.4, sigma=0.9, momentum=0.5)
    h = grid.spacing
    lhs = h * np.vdot(phi.components, ups[pair](psi.components))
    rhs = h * np.vdot(downs[pair](phi.components), psi.components)
    scale = abs(h * np.vdot(phi.components, psi.components)) + 1.0
    return float(abs(lhs - rhs) / scale)


def dilation_identity_residual(family: PotentialFamily, grid: Grid,
                               which: str = "yy3",
                               test_fns: list[WaveFunctionGrid] | None = None,
                               order: int = 4) -> float:
    """Residual of the q-deformed factorization identity in pure x-space.

    which = 'yy3':  A A_dag f - q * D A_dag A D^{-1} f = R f, with D the
    unitary dilation by sqrt(q) (so D A D^{-1} realizes A at argument
    sqrt(q) x).  which = 'yy6' uses the dilation-conjugated pair C = A S,
    C_dag = S^{-1} A_dag with the plain substitution S f(x) = f(x / sqrt(q)):
    then C C_dag - q C_dag C = R. The two forms are algebraically the same
    identity, so their residuals should agree to interpolation accuracy.
    """
    if family.name != SELFSIMILAR and not (family.rule.kind == "scaling"):
        raise ValueError("dilation identities require a scaling family")
    q = family.q
    sq = np.sqrt(q)
    W = eval_W(family, family.a1, grid)
    R = remainder(family, family.a1)
    if test_fns is None:
        test_fns = _dilation_test_functions(grid, sq)
    sl = grid.interior_slice()
    worst = 0.0
    for f in test_fns:
        if which == "yy3":
            # A_dag(sqrt(q) x) A(sqrt(q) x) = D_sqrt(q) A_dag A D_{1/sqrt(q)}
            inner = dilate(f, 1.0 / sq, unitary=True)
            inner = apply_ladder(W, apply_ladder(W, inner, "lower", order), "raise", order)
            conj = dilate(inner, sq, unitary=True)
            lhs = apply_ladder(W, apply_ladder(W, f, "raise", order), "lower", order)
            diff = lhs.amplitudes - q * conj.amplitudes - R * f.amplitudes
        elif which == "yy6":
            # C C_dag f = A S S^{-1} A_dag f = A A_dag f exactly
            cc = apply_ladder(W, apply_ladder(W, f, "raise", order), "lower", order)
            sf = dilate(f, 1.0 / sq, unitary=False)
            asf = apply_ladder(W, sf, "lower", order)
            # C_dag C f = S^{-1} A_dag A S f
            cdc = dilate(apply_ladder(W, asf, "raise", order), sq, unitary=False)
            diff = cc.amplitudes - q * cdc.amplitudes - R * f.amplitudes
        else:
            raise ValueError("which must be 'yy3' or 'yy6'")
        worst = max(worst, float(np.linalg.norm(diff[sl])
                                 / np.linalg.norm(f.amplitudes[sl])))
    return worst


def _dilation_test_functions(grid: Grid, sq: float) -> list[WaveFunctionGrid]:
    # support must stay inside the grid after the 1/sqrt(q) argument stretch
    span = min(abs(grid.x_min), abs(grid.x_max)) * sq * 0.6
    x = grid.x
    fns = []
    for x0, sig in ((0.0, span / 4), (span / 8, span / 5), (-span / 10, span / 4.5)):
        amps = np.exp(-((x - x0) ** 2) / (2 * sig ** 2)).astype(complex)
        fns.append(WaveFunctionGrid(grid, amps).normalized())
    return fns
