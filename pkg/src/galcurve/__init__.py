"""Curves in the Galilean space G3: Frenet frames, involutes, evolutes and
numerical checks of the involute-evolute theorems."""

__version__ = "0.1.0"

from .core import GVec3, IsometryParams, VectorClass, apply_point, apply_vector, classify, g_cross, g_dot, g_norm
from .curves import (
    AdmissibleCurve,
    CurveSpec,
    FrenetFrame,
    PlanarCurve,
    admissible_from_spec,
    eval3,
    frenet,
    planar_frenet,
    reparametrize,
    transform_curve,
)
from .expr import eval_jet, parse, unparse
from .involute import EvoluteProblem, InvolutePair, involute_frame, make_evolute, make_involute
from .jets import Jet3, jet_apply, jet_const, jet_var

__all__ = [
    "GVec3", "IsometryParams", "VectorClass", "apply_point", "apply_vector", "classify", "g_cross", "g_dot", "g_norm",
    "AdmissibleCurve", "CurveSpec", "FrenetFrame", "PlanarCurve", "admissible_from_spec", "eval3", "frenet",
    "planar_frenet", "reparametrize", "transform_curve",
    "eval_jet", "parse", "unparse",
    "EvoluteProblem", "InvolutePair", "involute_frame", "make_evolute", "make_involute",
    "Jet3", "jet_apply", "jet_const", "jet_var",
]
