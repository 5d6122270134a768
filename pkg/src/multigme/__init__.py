"""Geometric measure of entanglement of multipartite pure states."""
from .bounds import (
    GmeReport,
    bipartite_sigma,
    gme_from_sigma,
    gme_report,
    maximally_entangled_bipartite,
    upper_bound,
)
from .ket_parser import KetExpr, parse, parse_state, render, to_tensor
from .solver import SolveResult, SolverConfig, power_iterate, solve, solve_symmetric
from .tensor_core import (
    ProductState,
    StateTensor,
    contract_all_but,
    contract_full,
    frobenius_norm,
    is_symmetric,
    matrix_slice,
    permute_modes,
)

__version__ = "0.1.0"
