"""Chart rendering for the experiment-harness results CSV."""
from .plots import (CSV_COLUMNS, KINDS, PlotSpec, SchemaError, group_series,
                    load_table, render)

__all__ = [
    "CSV_COLUMNS", "KINDS", "PlotSpec", "SchemaError", "group_series",
    "load_table", "render",
]

__version__ = "0.1.0"
