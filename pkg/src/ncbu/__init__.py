"""Exact noncommutative polynomial tools for twisted joins, equivariant maps and their obstructions."""

from __future__ import annotations

from .scenarios import VERSION as __version__
from .scalars import Cyclotomic, PathScalar, root_of_unity, sqrt2_inverse
from .ncpoly import NCPoly, Presentation, builtin_presentation, normal_form, is_zero_mod
from .actions import CyclicAction, action_apply, action_validate, isotypic_project
from .crossed import CrossedPresentation, MatrixOverAlg, crossed_presentation, expand_matrix
from .homs import GenHom, hom_apply, hom_compose, hom_equivariance_check, hom_validate
from .join import JoinElement, boundary_check, induce_join_hom, tilde_action_apply
from .oracle import Representation, oracle_compare, rep_builtin, rep_eval
from .obstructions import (FiniteDimAlgebra, PathSample, order_k_obstruction, projection_rank_path,
                           saturation_check, winding_number)
from .certificates import Certificate, SampledSegment, SymbolicSegment, certificate_verify
from .scenarios import Report, emit_report, list_scenarios, run_scenario

__all__ = [
    "__version__", "Cyclotomic", "PathScalar", "root_of_unity", "sqrt2_inverse",
    "NCPoly", "Presentation", "builtin_presentation", "normal_form", "is_zero_mod",
    "CyclicAction", "action_apply", "action_validate", "isotypic_project",
    "CrossedPresentation", "MatrixOverAlg", "crossed_presentation", "expand_matrix",
    "GenHom", "hom_apply", "hom_compose", "hom_equivariance_check", "hom_validate",
    "JoinElement", "boundary_check", "induce_join_hom", "tilde_action_apply",
    "Representation", "oracle_compare", "rep_builtin", "rep_eval",
    "FiniteDimAlgebra", "PathSample", "order_k_obstruction", "projection_rank_path",
    "saturation_check", "winding_number",
    "Certificate", "SampledSegment", "SymbolicSegment", "certificate_verify",
    "Report", "emit_report", "list_scenarios", "run_scenario",
]
