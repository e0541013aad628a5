"""Stationary amplitudes and measures of coined quantum walks on Z^d."""

from zdwalk.coin import Coin, CoinError, grover, is_unitary, row_projection, watabe
from zdwalk.evolution import evolve, fixed_point_residual, step
from zdwalk.laurent import (
    LaurentPoly,
    SymbolMatrix,
    SymbolVector,
    eigen_residual,
    eval_at,
    grover_eigenfunction,
    symbol_matrix,
    symbolic_fixed_point_check,
    watabe_eigenfunction,
)
from zdwalk.lattice import (
    FiniteState,
    Measure,
    WeightSequence,
    measure_of,
    state_axpy,
    state_get,
    total_mass,
)
from zdwalk.scalar import EXACT, FLOAT, BackendError, GaussianRational
from zdwalk.stationary import (
    StationaryAtom,
    atom_to_state,
    ball_support,
    grover_atom,
    inverse_fourier,
    stationary_measure,
    superpose,
    watabe_atom,
)

__version__ = "0.1.0"

__all__ = [
    "Coin",
    "CoinError",
    "grover",
    "is_unitary",
    "row_projection",
    "watabe",
    "evolve",
    "fixed_point_residual",
    "step",
    "LaurentPoly",
    "SymbolMatrix",
    "SymbolVector",
    "eigen_residual",
    "eval_at",
    "grover_eigenfunction",
    "symbol_matrix",
    "symbolic_fixed_point_check",
    "watabe_eigenfunction",
    "FiniteState",
    "Measure",
    "WeightSequence",
    "measure_of",
    "state_axpy",
    "state_get",
    "total_mass",
    "EXACT",
    "FLOAT",
    "BackendError",
    "GaussianRational",
    "StationaryAtom",
    "atom_to_state",
    "ball_support",
    "grover_atom",
    "inverse_fourier",
    "stationary_measure",
    "superpose",
    "watabe_atom",
]
