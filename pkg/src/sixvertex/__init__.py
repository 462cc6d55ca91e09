"""Six-vertex model arctic curves: exact enumeration, tangent-line
envelopes, and exact sampling at the ice point.

Modules
-------
params       Boltzmann weights and derived parameters
model        domains, boundary conditions, configurations, defects
counts       closed-form exact enumerations (ASM, MacMahon, triangoloid)
enumeration  transfer-matrix oracle for small domains
tangent      r(z) evaluators, line families, envelopes
saddle       saddle-point analysis of the extended-domain free energy
hexagon      arctic ellipse of lozenge tilings
triarc       closed-form triangoloid arcs
sampler      coupling-from-the-past exact sampling and statistics
render       SVG/CSV emitters
cli          command-line interface (count / curve / sample / verify)
"""

from .params import ICE_POINT, ModelParams
from .model import (
    BoundaryCondition,
    Configuration,
    DigitallyConvex,
    LambdaNL,
    Rectangle,
    RefinedSquare,
    SquareDWBC,
    TrapezoidGT,
    Triangoloid,
    VertexType,
    classify_vertex,
    config_weight,
)
from .counts import (
    asm_count,
    asm_refined,
    gelfand_tsetlin,
    lambda_NL_partition,
    macmahon,
    triangoloid_count,
    triangoloid_refined,
)
from .enumeration import boundary_correlator, partition_function
from .hexagon import AspectRatios
from .tangent import envelope, line_family, r_asm, r_finite_n, r_free_fermion, slope_m
from .triarc import triangoloid_arc
from .sampler import cftp_sample, collect_stats, frozen_boundary

__version__ = "0.1.0"
__all__ = [
    "AspectRatios",
    "BoundaryCondition",
    "Configuration",
    "DigitallyConvex",
    "ICE_POINT",
    "LambdaNL",
    "ModelParams",
    "Rectangle",
    "RefinedSquare",
    "SquareDWBC",
    "TrapezoidGT",
    "Triangoloid",
    "VertexType",
    "asm_count",
    "asm_refined",
    "boundary_correlator",
    "cftp_sample",
    "classify_vertex",
    "collect_stats",
    "config_weight",
    "envelope",
    "frozen_boundary",
    "gelfand_tsetlin",
    "lambda_NL_partition",
    "line_family",
    "macmahon",
    "partition_function",
    "r_asm",
    "r_finite_n",
    "r_free_fermion",
    "slope_m",
    "triangoloid_arc",
    "triangoloid_count",
    "triangoloid_refined",
]
