"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "PanelPlanError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "ConfigurationError",
    "DegenerateGeometryError",
    "InfeasiblePieceError",
]


class PanelPlanError(Exception):
    """Base class for all errors raised by this package."""


class ScenarioParseError(PanelPlanError):
    """A scenario file could not be read or decoded."""


class ScenarioValidationError(PanelPlanError):
    """A scenario file decoded fine but describes invalid input.

    The message names the offending element (region, panel, ring index)
    so the CLI can surface it directly.
    """


class ConfigurationError(PanelPlanError):
    """Solver or pipeline options are inconsistent or out of range."""


class DegenerateGeometryError(PanelPlanError):
    """A polygon or ring is too degenerate to work with."""


class InfeasiblePieceError(PanelPlanError):
    """A piece cannot be placed in an empty container under the active policy."""

    def __init__(self, piece_id: int, message: str | None = None) -> None:
        self.piece_id = piece_id
        super().__init__(message or f"piece {piece_id} does not fit an empty container")
