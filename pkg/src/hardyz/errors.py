"""Exception hierarchy with structured (module, operation, reason) payloads.

Every error carries enough context for the CLI to print a machine-readable
failure record and pick the right exit code: 2 for configuration problems,
3 for numeric failures, 4 for a zero-count mismatch.
"""


class HardyZError(Exception):
    """Base class; formats as ``module.operation: reason``."""

    exit_code = 3

    def __init__(self, module: str, operation: str, reason: str):
        self.module = module
        self.operation = operation
        self.reason = reason
        super().__init__(f"{module}.{operation}: {reason}")

    def as_dict(self) -> dict:
        return {
            "module": self.module,
            "operation": self.operation,
            "reason": self.reason,
        }


class ConfigError(HardyZError):
    exit_code = 2


class DomainError(HardyZError):
    """Argument outside the documented domain of an operation."""


class PoleError(HardyZError):
    """Evaluation requested within the guard radius of a pole."""


class EnvelopeError(HardyZError):
    """Argument outside the supported desk-scale envelope."""


class AccuracyError(HardyZError):
    """Internal error estimate exceeds the configured tolerance."""


class RangeOverflowError(HardyZError):
    """Result magnitude not representable even in log domain."""


class SeriesError(HardyZError):
    """Truncated-series arithmetic failure (zero leading coefficient,
    insufficient truncation order, missing constants)."""


class TableSizeError(HardyZError):
    """Coefficient table too small for the request, or above the memory cap."""


class QuadratureError(HardyZError):
    """Adaptive quadrature failed to reach tolerance; reason carries
    worst-panel diagnostics."""


class AssemblyError(HardyZError):
    """Symbolic main-term assembly produced coefficients that contradict
    the cross-checked closed forms."""


class CountMismatchError(HardyZError):
    exit_code = 4
