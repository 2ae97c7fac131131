"""Mini string language: parser, abstract interpreter and a concrete reference interpreter."""

from .ast import Program
from .concrete import run_concrete
from .interp import AnalysisDiagnostic, AnalysisReport, analyze_program, render_report
from .parser import ParseError, parse_program

__all__ = [
    "AnalysisDiagnostic",
    "AnalysisReport",
    "ParseError",
    "Program",
    "analyze_program",
    "parse_program",
    "render_report",
    "run_concrete",
]
