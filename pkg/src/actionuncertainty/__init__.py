"""Exact Fourier analysis and uncertainty bounds for finite group actions."""

from .errors import ActionUncertaintyError, InputError, Violation
from .fields import field_from_spec
from .groups import Group, Subgroup, load_group
from .gset import GSet, build_action
from .permmodule import FunctionOnX, dim_FGf, support, translate
from .uncertainty import analyze, regular_analyze

__all__ = [
    "ActionUncertaintyError", "InputError", "Violation", "field_from_spec", "Group", "Subgroup",
    "load_group", "GSet", "build_action", "FunctionOnX", "dim_FGf", "support", "translate",
    "analyze", "regular_analyze",
]

__version__ = "0.1.0"
