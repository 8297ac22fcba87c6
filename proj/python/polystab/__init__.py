"""Exact sensitivity analysis of piecewise-linear parametric convex programs.

All arithmetic is rational: values cross the boundary as fractions.Fraction
(int and "p/q" strings are accepted on the way in, floats are rejected).
"""

from ._core import (
    DirDerivative,
    InputError,
    InternalError,
    KktResult,
    Polyhedron,
    PreconditionError,
    Program,
    QualificationError,
    SlaterResult,
    Solution,
    StabilityReport,
    load,
    loads,
    set_relation,
)

__all__ = [
    "DirDerivative",
    "InputError",
    "InternalError",
    "KktResult",
    "Polyhedron",
    "PreconditionError",
    "Program",
    "QualificationError",
    "SlaterResult",
    "Solution",
    "StabilityReport",
    "load",
    "loads",
    "set_relation",
]
