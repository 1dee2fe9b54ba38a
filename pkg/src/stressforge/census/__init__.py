from .complex import Cell, CellComplex
from .formal import (
    DeeperDegeneracyError,
    FormalConfiguration,
    NotNormalizableError,
    normalize_formal,
)
from .lambda4 import classify_k4, lambda4_arrangement
from .lambda5 import Lambda5Census, lambda5_census
from .tables import StrataTable, UnsupportedNError, descriptor_table, strata_table

__all__ = [
    "Cell",
    "CellComplex",
    "DeeperDegeneracyError",
    "FormalConfiguration",
    "Lambda5Census",
    "NotNormalizableError",
    "StrataTable",
    "UnsupportedNError",
    "classify_k4",
    "descriptor_table",
    "lambda4_arrangement",
    "lambda5_census",
    "normalize_formal",
    "strata_table",
]
