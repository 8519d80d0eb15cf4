"""Exact Hochschild cohomology and Gerstenhaber brackets for quantum symmetric algebras.

Generators are indexed from 0 in the library; the expression language and the
command line count from 1.
"""
from .algebra import (Action, AlgebraElement, GroupSpec, SkewElement, act, ext_reorder, multiply,
                      skew_multiply, twist_reorder, validate_action)
from .brackets import (BarCochain, KoszulCochain, bracket_bar, bracket_closed, bracket_pipeline,
                       c_membership, circle, from_koszul, hh_basis, schouten_classical, to_koszul)
from .chainmaps import (EnvElem, LiftEngine, bar_to_koszul_engine, dq, koszul_to_bar_engine, lift, phi,
                        phi_map, psi, psi_map, psi_via_dq, sigma, sigma_inverse, t_via_dq, tau)
from .complexes import (BarElem, KoszulElem, bar_delta, bar_s, koszul_d, koszul_t, verify_homotopy)
from .expr import ParseError, format_cochain, parse_cocycle
from .group_extension import (SkewKoszulCochain, bracket_skew_closed, bracket_skew_pipeline, cg_membership,
                              gamma, hh_skew_basis, is_coboundary, reynolds, skew_diff, theta)
from .scalars import CyclotomicField, CycNumber, QContext, Scalar

__all__ = ["Action", "AlgebraElement", "GroupSpec", "SkewElement", "act", "ext_reorder", "multiply",
           "skew_multiply", "twist_reorder", "validate_action", "BarCochain", "KoszulCochain", "bracket_bar",
           "bracket_closed", "bracket_pipeline", "c_membership", "circle", "from_koszul", "hh_basis",
           "schouten_classical", "to_koszul", "EnvElem", "LiftEngine", "bar_to_koszul_engine", "dq",
           "koszul_to_bar_engine", "lift", "phi", "phi_map", "psi", "psi_map", "psi_via_dq", "sigma",
           "sigma_inverse", "t_via_dq", "tau", "BarElem", "KoszulElem", "bar_delta", "bar_s", "koszul_d",
           "koszul_t", "verify_homotopy", "ParseError", "format_cochain", "parse_cocycle",
           "SkewKoszulCochain", "bracket_skew_closed", "bracket_skew_pipeline", "cg_membership", "gamma",
           "hh_skew_basis", "is_coboundary", "reynolds", "skew_diff", "theta", "CyclotomicField",
           "CycNumber", "QContext", "Scalar"]

__version__ = "0.1.0"
