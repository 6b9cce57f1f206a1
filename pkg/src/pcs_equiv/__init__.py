"""Exact analysis of l0 versus lp minimization for real phaseless compressed sensing."""
from .pstar import EquivalenceCertificate, certify, compute_pstar
from .instance import Instance, enumerate_sign_patterns, signed_rhs, validate
from .l0 import SparseSolutionSet, solve_l0_branch, solve_l0_phaseless
from .lp import LpSolveResult, lp_objective, solve_lp_exact, solve_lp_heuristic, verify_equivalence
from .pipeline import Pipeline
from .polytope import build_lifted, compute_rm, enumerate_vertices, pseudo_extreme_points

__all__ = [
    "EquivalenceCertificate", "Instance", "LpSolveResult", "Pipeline", "SparseSolutionSet",
    "build_lifted", "certify", "compute_pstar", "compute_rm", "enumerate_sign_patterns",
    "enumerate_vertices", "lp_objective", "pseudo_extreme_points", "signed_rhs", "solve_l0_branch",
    "solve_l0_phaseless", "solve_lp_exact", "solve_lp_heuristic", "validate", "verify_equivalence",
]
