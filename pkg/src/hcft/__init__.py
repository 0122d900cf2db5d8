"""Harmonic analysis on the purely odd Heisenberg-Clifford supergroup.

Exact sign arithmetic in the enveloping superalgebra, explicit spin
representations, the matrix-valued Fourier transform and its inverse,
convolution of superfunctions and point-supported distributions, and
Sobolev norms, together with numerical verification suites.
"""
from .convolution import (
    banach_check,
    convolve,
    convolve_dist,
    convolve_via_pairing,
    fourier_of_product,
    mollify,
    sobolev_norm,
)
from .errors import (
    DegenerateFormError,
    DimensionError,
    DivergenceError,
    FormatError,
    GridMismatchError,
    HCFTError,
    OrderError,
    SingularPointError,
)
from .fourier import FourierImage, component, inverse, paley_wiener_check, transform, transform_dist
from .integral import CompactDistribution, PointMass, berezin_integral, dist_pair, pairing
from .scalar import GaussPoly, GridFn
from .spinrep import HMatrix, SpinSpec, dpi, pi, represent, super_adjoint, trace_T
from .superalgebra import (
    IndexSet,
    PBWElement,
    antipode,
    coproduct,
    format_element,
    gamma,
    hodge_star,
    multiply,
    parse_element,
)
from .superfunction import SuperFunction, evaluate, left_action, product, translate

__version__ = "0.1.0"

__all__ = [
    "PBWElement", "IndexSet", "multiply", "antipode", "coproduct", "hodge_star", "gamma",
    "parse_element", "format_element",
    "SpinSpec", "HMatrix", "represent", "dpi", "pi", "trace_T", "super_adjoint",
    "GaussPoly", "GridFn", "SuperFunction", "evaluate", "product", "left_action", "translate",
    "berezin_integral", "pairing", "PointMass", "CompactDistribution", "dist_pair",
    "FourierImage", "transform", "inverse", "component", "transform_dist", "paley_wiener_check",
    "convolve", "convolve_via_pairing", "convolve_dist", "mollify", "fourier_of_product",
    "sobolev_norm", "banach_check",
    "HCFTError", "DimensionError", "DegenerateFormError", "SingularPointError", "DivergenceError",
    "OrderError", "GridMismatchError", "FormatError",
]
