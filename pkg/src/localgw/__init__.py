"""Exact local open Gromov-Witten invariants of Kodaira fibres from scattering
diagrams, with tropical, monodromy, central-charge and Weierstrass checks."""

from .charge import ChargeLattice, standard_rank2
from .errors import (ConsistencyError, DegeneracyError, DomainError, InputError, LocalGWError,
                     NumericalError, QueryError, StateError)
from .series import TruncatedSeries, exp_series, log_series

__version__ = "0.1.0"

__all__ = [
    "ChargeLattice", "standard_rank2", "TruncatedSeries", "exp_series", "log_series",
    "LocalGWError", "InputError", "DomainError", "QueryError", "DegeneracyError",
    "ConsistencyError", "StateError", "NumericalError", "__version__",
]
