"""Shape-invariant and self-similar quantum potentials.

Numerical realization of the factorization/shape-invariance machinery:
spectra from remainder sums, ladder-built eigenfunctions checked against a
finite-difference diagonalization oracle, the self-similar superpotential
from its power-series recursion with pantograph continuation, the
associated operator algebra verified as concrete identities on a parameter
lattice and on truncated ladder matrices, coherent states, and forced
time evolution.
"""

__version__ = "0.1.0"

from .grid import (Grid, WaveFunctionGrid, UnitsConvention, UNITS,
                   build_grid, apply_ladder, dilate, build_hamiltonian_matrix,
                   inner, InvalidRangeError, TooFewPointsError,
                   GridMismatchError, BoundaryDecayWarning)
from .series import (SeriesCoefficients, SelfSimilarW, series_coefficients,
                     radius_estimate, eval_W_selfsimilar, HorizonExceededError)
from .families import (ParameterRule, PotentialFamily, ParameterChain,
                       parameter_chain, eval_W, remainder, ground_state,
                       shape_invariance_residual, harmonic_family,
                       morse_family, selfsimilar_family, family_from_config,
                       suggested_grid, NonNormalizableError)
from .spectra import (SpectrumTable, energy_levels, normalization_factor,
                      build_eigenstate, eigenstate_with_prenorm,
                      fd_diagonalize, eigen_residual,
                      LevelNotBoundError, UnderResolvedGridError)
from .lattice import (LatticeState, LatticeOperator, LatticeContext,
                      lattice_apply, make_operator, packet_state,
                      commutator_residual, dilation_identity_residual,
                      adjoint_pair_residual, RELATIONS, UnknownRelationError,
                      WindowTooSmallError)
from .ladder_matrices import LadderMatrices, matrix_identities, SingularSpectrumError
from .coherent import (CoherentState, q_pochhammer, coherent_recursive,
                       coherent_closed_scaling, coherent_property_residuals,
                       DegenerateLevelsError)
from .dynamics import (DriveProfile, ForcedEvolution, evolve_forced,
                       convergence_certificate, TruncationOverflowError,
                       StepInstabilityError)
