"""Exact free-field computations for the singlet vertex algebras W(2, 2p-1).

Everything is exact: rationals, or elements of Q(sqrt(2p)) where the
h-normalization needs them.  Hot loops use a compiled extension when it
was built and fall back to pure Python otherwise (see ``kernels.BACKEND``).
"""
from __future__ import annotations

from .errors import (BudgetExceeded, IndexOutOfRange, NonHomogeneous, NoSolution, NotFound,
                     NotTopLevel, OutOfRange, SectorMismatch, TooLarge, UnsupportedMode,
                     WSingletError)
from .kernels import BACKEND
from .scalars import ExactScalar
from .lattice_fock import (FockVector, GradedComponent, LatticeData, TopSpace, graded_component,
                           mode_act, modes_act, twisted_pairing)
from .virasoro import L, VirasoroParams, central_charge, is_singular, verma_chain
from .screening import (Q, Qtilde, A_op, dyson_constant, kernel_graded, lattice_mode,
                        operator_singular_vector, power_apply, product_formula_check,
                        vertex_mode)
from .singlet import (H_mode, check_zhu_relation, compute_H, irreducibility_witness,
                      simplicity_witness, state_field_mode, zhu_polynomial)
from .log_modules import (H0_matrix, JordanModule, JordanModuleSpec, W_module_probe,
                          build_jordan_module, cosingular_vector, diagram_report,
                          no_log_self_extension_obstruction, non_split_witness, nu_p)
from .characters import (LogCharacter, QSeries, ch_from_chain, ch_irreducible,
                         ch_partial_irreducible, ch_selfdual, ch_trace, eta_inverse)
from .intertwiner import (LogLaurentSeries, TransporterT, Window, check_L_minus1_derivative,
                          check_commutator, eval_Y)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExceeded", "IndexOutOfRange", "NonHomogeneous", "NoSolution", "NotFound",
    "NotTopLevel", "OutOfRange", "SectorMismatch", "TooLarge", "UnsupportedMode", "WSingletError",
    "ExactScalar", "FockVector", "GradedComponent", "LatticeData", "TopSpace", "graded_component",
    "mode_act", "modes_act", "twisted_pairing", "L", "VirasoroParams", "central_charge",
    "is_singular", "verma_chain", "Q", "Qtilde", "A_op", "dyson_constant", "kernel_graded",
    "lattice_mode", "operator_singular_vector", "power_apply", "product_formula_check",
    "vertex_mode", "H_mode", "check_zhu_relation", "compute_H", "irreducibility_witness",
    "simplicity_witness", "state_field_mode", "zhu_polynomial", "H0_matrix", "JordanModule",
    "JordanModuleSpec", "W_module_probe", "build_jordan_module", "cosingular_vector",
    "diagram_report", "no_log_self_extension_obstruction", "non_split_witness", "nu_p",
    "LogCharacter", "QSeries", "ch_from_chain", "ch_irreducible", "ch_partial_irreducible",
    "ch_selfdual", "ch_trace", "eta_inverse", "LogLaurentSeries", "TransporterT", "Window",
    "check_L_minus1_derivative", "check_commutator", "eval_Y",
]
