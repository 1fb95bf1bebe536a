"""Scale-calculus kernel for retract-modelled spaces with a jumping local
dimension, with almost complex structures, symplectic frames, holomorphic
embeddings, and a property-based verification CLI."""

from .bumps import BumpBasis, bump_eval
from .circle import CirclePath, sc1_quotient_test, timeshift
from .gamma import (GammaPoint, GammaSpec, TangentVector, dimension, frame,
                    frame_differential, make_spec, project, retract, rho,
                    tangent_map, xi)
from .kernels import BACKEND
from .l2 import FrameElement, GridElement, ZERO, l2_inner, l2_norm
from .scspace import ScaleStructure, sobolev_norm
from .suites import Report, SuiteConfig, run_suite
from .tensors import (ComplexStructureJ, FiniteTensor, MetricTensor,
                      blend_metric, compatibilize, fundamental_form, hermitian,
                      injective_norm, j_apply, metric_frame)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BumpBasis", "CirclePath", "ComplexStructureJ", "FiniteTensor",
    "FrameElement", "GammaPoint", "GammaSpec", "GridElement", "MetricTensor",
    "Report", "ScaleStructure", "SuiteConfig", "TangentVector", "ZERO",
    "blend_metric", "bump_eval", "compatibilize", "dimension", "frame",
    "frame_differential", "fundamental_form", "hermitian", "injective_norm",
    "j_apply", "l2_inner", "l2_norm", "make_spec", "metric_frame", "project",
    "retract", "rho", "run_suite", "sc1_quotient_test", "sobolev_norm",
    "tangent_map", "timeshift", "xi",
]
