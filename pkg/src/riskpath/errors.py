"""Exception hierarchy."""


class RiskpathError(Exception):
    """Base class for all riskpath errors."""


class MapFormatError(RiskpathError):
    """Malformed occupancy-map text."""


class PathFormatError(RiskpathError):
    """Malformed path or execution CSV."""


class ConfigError(RiskpathError):
    """Invalid risk configuration."""


class GridQueryError(RiskpathError):
    """Grid query on an obstacle or out-of-bounds cell."""


class PlanInvalidError(RiskpathError):
    """Operation requires a valid plan; carries the validation report."""

    def __init__(self, report):
        super().__init__(f"invalid plan: {report.summary()}")
        self.report = report


class TetherError(RiskpathError):
    """Tether precondition or internal invariant failure."""


class OracleError(RiskpathError):
    """Straightening / enumeration oracle misuse or non-convergence."""


class StartMismatchError(RiskpathError):
    """Execution does not start at the plan's initial state."""


class UnreachableError(RiskpathError):
    """No path exists between start and goal under the given limits."""


class BudgetExhaustedError(RiskpathError):
    """Search expansion budget exhausted before reaching the goal."""
