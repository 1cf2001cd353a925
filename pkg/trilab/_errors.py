"""Exceptions raised by trilab."""
from typing import Any, Optional


class TrilabError(Exception):
    """Base class of every failure reported by trilab."""


class InvalidTilingError(TrilabError):
    """Raised when an operation needs a valid tiling and the tiling failed validation.

    Attributes:
        report: The validity report describing the failure.
    """

    def __init__(self, report: Any) -> None:
        self.report = report
        super().__init__(f"tiling is not valid: {report.failure}")


class EmptyTilingError(TrilabError):
    """Raised when a quantity is undefined for a tiling without tiles."""


class WindowError(TrilabError):
    """Raised when the analysed window cannot support the requested analysis."""


class WindowExhaustedError(WindowError):
    """Raised when a construction leaves the analysed window."""


class DescentError(TrilabError):
    """Raised when a descent step cannot be carried out."""


class SharedSideError(DescentError):
    """Raised when the next basis is a full side shared with the opposite tile.

    Attributes:
        side: The shared side.
    """

    def __init__(self, side: Any) -> None:
        self.side = side
        super().__init__(f"{side} is a side shared by two tiles, no interior whisker exists")


class NotAnEConfigurationError(TrilabError):
    """Raised when a supposed E-configuration is not contained in the skeleton."""


class TopologyMismatchError(TrilabError):
    """Raised when the neighbourhood of a maximal segment does not follow the T/L/R pattern.

    Attributes:
        segment: The offending maximal segment.
    """

    def __init__(self, message: str, segment: Optional[Any] = None) -> None:
        self.segment = segment
        super().__init__(message)


class IndexConflictError(TopologyMismatchError):
    """Raised when two different tiles claim the same T/L/R label."""


class InconsistentIndexingError(TrilabError):
    """Raised when a T/L/R indexing references tiles that are not part of the tiling."""


class RelationError(TrilabError):
    """Raised when a size relation of the T/L/R structure fails.

    Attributes:
        equation: Name of the failed relation, e.g. "eq_sum1".
        index: The (i, j) index at which it failed.
    """

    def __init__(self, equation: str, index: Any, detail: str = "") -> None:
        self.equation = equation
        self.index = index
        message = f"{equation} violated at {index}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class InvalidStateError(TrilabError):
    """Raised for index pairs outside the even sublattice."""


class UndefinedFieldError(TrilabError):
    """Raised when a field function is evaluated outside its domain.

    Attributes:
        state: The state at which the field is undefined.
    """

    def __init__(self, state: Any) -> None:
        self.state = state
        super().__init__(f"field is undefined at {state}")


class BandLimitError(TrilabError):
    """Raised when a path count is requested beyond the supported band."""


class StirlingBoundError(TrilabError):
    """Raised when a return probability falls below its Stirling lower bound."""
