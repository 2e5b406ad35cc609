"""Polynomial zero-region tools: strip-narrowing differential operators,
stability classes, operator symbols, Fourier-type integrals and Fock norms."""

from .errors import StripZerosError
from .polycore import MobiusMap, Poly, affine_compose, derivative, evaluate, mobius_push, taylor_shift
from .roots import RootSet, count_zeros_rect, find_roots, strip_width, width_of
from .ops import DiffOp, MultiplierOp, apply, compose, op_debruijn, op_gauss, op_sinc, op_strong, predicted_width
from .suites import SUITES, SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "StripZerosError", "MobiusMap", "Poly", "affine_compose", "derivative", "evaluate",
    "mobius_push", "taylor_shift", "RootSet", "count_zeros_rect", "find_roots", "strip_width",
    "width_of", "DiffOp", "MultiplierOp", "apply", "compose", "op_debruijn", "op_gauss",
    "op_sinc", "op_strong", "predicted_width", "SUITES", "SuiteReport", "run_suite",
]
