"""Exact self stresses of planar and spatial frameworks and their strata."""

from .core import (
    Configuration,
    DegenerateError,
    Framework,
    Graph,
    Load,
    StressForgeError,
    complete_framework,
    make_framework,
)
from .signature import FiberSignature, fiber_signature, fibers_equivalent
from .stress import StressAssignment, StressSpace, self_stress_space, stress_dimension

__all__ = [
    "Configuration",
    "DegenerateError",
    "FiberSignature",
    "Framework",
    "Graph",
    "Load",
    "StressAssignment",
    "StressForgeError",
    "StressSpace",
    "complete_framework",
    "fiber_signature",
    "fibers_equivalent",
    "make_framework",
    "self_stress_space",
    "stress_dimension",
]
