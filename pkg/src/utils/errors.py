"""
Exception hierarchy for the phase-transition laboratory.

Library code raises these; only the CLI catches them.
"""

from typing import Optional


class QptlabError(Exception):
    """Base class for every error raised by qptlab."""


class InvalidDimensionError(QptlabError):
    """Problem dimensions are inconsistent (for example n < k)."""


class DimensionError(QptlabError):
    """Operand sizes do not match (assignment length, qubit count)."""


class CapacityError(QptlabError):
    """A dense or enumerating operation was asked to exceed its guard."""

    def __init__(self, what: str, requested: int, limit: int):
        self.what = what
        self.requested = requested
        self.limit = limit
        super().__init__(f"{what}: requested {requested}, limit is {limit}")


class _LineError(QptlabError):
    def __init__(self, message: str, line_number: int):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class DimacsParseError(_LineError):
    """Malformed extended-DIMACS content."""


class GraphFormatError(_LineError):
    """Malformed weighted-graph line file."""


class GeneratorParseError(_LineError):
    """Malformed Pauli generator file."""


class NotHermitianError(QptlabError):
    """A matrix expected to be Hermitian is not."""


class WrongModeError(QptlabError):
    """Operation is only defined for a different SAT mode."""


class TrainingError(QptlabError):
    """The optimizer produced a non-finite cost or gradient."""


class IntegrationError(QptlabError):
    """Anneal integration kept drifting after step refinement."""


class ConfigError(QptlabError):
    """Invalid sweep or experiment configuration."""


class SweepTaskError(QptlabError):
    """A sweep task failed; carries the instance seed for reproduction."""

    def __init__(self, message: str, instance_seed: Optional[int] = None):
        self.message = message
        self.instance_seed = instance_seed
        suffix = f" (instance seed {instance_seed})" if instance_seed is not None else ""
        super().__init__(f"{message}{suffix}")

    def __reduce__(self):
        # crosses process boundaries in parallel sweeps
        return (self.__class__, (self.message, self.instance_seed))
