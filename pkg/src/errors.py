"""Exception hierarchy for the Choquet path solver"""


class ChoquetPathError(Exception):
    """Base class for every error raised by this package"""


class CapacityError(ChoquetPathError, ValueError):
    """Invalid capacity, probability vector, or core membership failure"""


class DimensionError(ChoquetPathError, ValueError):
    """Scenario counts disagree between two objects"""


class CostError(ChoquetPathError, ValueError):
    """Cost vector with negative or non-finite components"""


class DisutilityError(ChoquetPathError, ValueError):
    """Invalid disutility parameters or cost above the scale M"""


class GraphError(ChoquetPathError, ValueError):
    """Malformed graph, invalid path, or unreachable goal set"""


class NoSolutionError(ChoquetPathError):
    """The search finished without detecting a solution path"""


class OracleLimitError(ChoquetPathError):
    """Instance too large (or grid too coarse) for exhaustive reference computations"""


class InstanceFormatError(ChoquetPathError, ValueError):
    """Instance document violates the file schema"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class AgreementError(ChoquetPathError):
    """Solvers (or solver and oracle) disagree on the optimal value"""

    def __init__(self, message: str, repro_path=None):
        self.repro_path = repro_path
        if repro_path is not None:
            message = f"{message} (repro bundle: {repro_path})"
        super().__init__(message)


class ConfigurationError(ChoquetPathError, ValueError):
    """Unknown option value in configuration or command-line flags"""
