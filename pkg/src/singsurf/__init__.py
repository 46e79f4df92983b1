"""Exact differential geometry of corank-1 singular surfaces in R^3.

Germs are truncated exact power series.  A germ is reduced to the normal
form (u, v^2/2 + ..., a20 u^2/2 + ...), classified against the simple
A-types S_k, B_k, C_k and F_4, and its geometry over the singular point is
read off in closed form in the blow-up chart.
"""

from .blowup import ThetaDirection, gauss_lead, k10, k20, leading_normal, parabolic_thetas, point_type
from .dual import DualLabel, dual_label, dual_mesh
from .exact import ONE, ZERO, Q, Surd
from .height import Direction3, HeightClass, ade_recognize, classify_height, classify_height_geometric
from .jets import Jet1, Jet2, MapGerm
from .mond import AType, classify, solve_xi
from .normal_form import NormalFormCoeffs, Reduction, ReductionError, reduce, singular_point_class
from .parabolic import closed_form_invariants, curve_invariants, sigma_jet, trace_branch
from .pipeline import analyze
from .report import GermDocument, ReportDocument, parse_germ_document

__version__ = "0.1.0"

__all__ = [
    "AType",
    "Direction3",
    "DualLabel",
    "GermDocument",
    "HeightClass",
    "Jet1",
    "Jet2",
    "MapGerm",
    "NormalFormCoeffs",
    "ONE",
    "Q",
    "Reduction",
    "ReductionError",
    "ReportDocument",
    "Surd",
    "ThetaDirection",
    "ZERO",
    "ade_recognize",
    "analyze",
    "classify",
    "classify_height",
    "classify_height_geometric",
    "closed_form_invariants",
    "curve_invariants",
    "dual_label",
    "dual_mesh",
    "gauss_lead",
    "k10",
    "k20",
    "leading_normal",
    "parabolic_thetas",
    "parse_germ_document",
    "point_type",
    "reduce",
    "sigma_jet",
    "singular_point_class",
    "solve_xi",
    "trace_branch",
]
