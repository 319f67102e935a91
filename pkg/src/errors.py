"""Exception hierarchy shared by the library and the CLI"""

from typing import List, Optional


class SimulationError(Exception):
    """Base class for every error raised by this package."""


class InvalidChainSpecError(SimulationError, ValueError):
    """Chain parameters violate the model's preconditions."""


class MomentumError(SimulationError, ValueError):
    """A momentum is not one of the chain's allowed values."""


class DegenerateSpectrumError(SimulationError):
    """A closed-form path was requested for a quartet with a zero mode energy."""


class OracleCapError(SimulationError):
    """Exact diagonalization requested above the configured size cap."""


class FitError(SimulationError, ValueError):
    """Power-law fit input is unusable."""


class ConfigValidationError(SimulationError):
    """Aggregated report of every invalid run-configuration field."""

    def __init__(self, problems: List[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class VerificationError(SimulationError):
    """Engine and oracle disagree beyond tolerance."""

    def __init__(self, message: str, report: Optional[dict] = None):
        self.report = report or {}
        super().__init__(message)
