"""Exception hierarchy. The CLI maps each family to an exit status."""


class LocalGWError(Exception):
    exit_code = 1


class InputError(LocalGWError, ValueError):
    exit_code = 2


class DomainError(InputError):
    """Argument outside the domain of a series/analytic operation."""


class QueryError(InputError):
    """Coefficient requested above the truncation degree."""


class DegeneracyError(LocalGWError):
    exit_code = 3


class ConsistencyError(LocalGWError):
    exit_code = 4


class StateError(ConsistencyError):
    pass


class NumericalError(LocalGWError, ArithmeticError):
    exit_code = 5
