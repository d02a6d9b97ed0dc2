"""Custom Exceptions."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence


class ExcloError(Exception):
    """Base class for every error raised by the exclo package."""


class ConfigurationError(ExcloError, ValueError):
    """Raised when an environment override or setting is not valid."""


class DegenerateScenarioError(ExcloError, ValueError):
    """Raised when a cycle scenario has fewer than four measurements."""


class ParityViolationError(ExcloError, ValueError):
    """Raised when a PR box has an even number of anti-correlated contexts."""


class InvalidCorrelationError(ExcloError, ValueError):
    """Raised when a correlation table is not a valid probability assignment."""


class InvalidEventError(ExcloError, ValueError):
    """Raised when an event does not belong to the scenario it is used with."""


class GraphFormatError(ExcloError, ValueError):
    """Raised when a DIMACS or JSON graph document cannot be read."""


class IsomorphismScopeError(ExcloError, ValueError):
    """Raised when a graph is too large for the backtracking isomorphism test."""


class ProductTooLargeError(ExcloError):
    """Raised when a graph product would exceed the materialization cap."""

    def __init__(self: ProductTooLargeError, required: int, allowed: int) -> None:
        """Initialize with the vertex count needed and the configured cap.

        :param required: the number of product vertices requested
        :param allowed: the configured vertex cap
        """
        super().__init__(
            f"product needs {required} vertices but the cap allows {allowed}",
        )
        self.required: int = required
        self.allowed: int = allowed


class InvalidColorError(ExcloError, ValueError):
    """Raised when a color (factor) index is out of range."""


class InvalidCycleError(ExcloError, ValueError):
    """Raised when a vertex sequence is not a valid odd cycle."""


class NonEdgeError(ExcloError, ValueError):
    """Raised when a pair of vertices expected to be an edge is not one."""


class InvalidCliqueError(ExcloError, ValueError):
    """Raised when a vertex set is not a clique of its host graph."""


class SearchBudgetExceededError(ExcloError):
    """Raised when a search exhausts its node or time budget."""

    def __init__(self: SearchBudgetExceededError, budget: float, what: str) -> None:
        """Initialize with the exhausted budget.

        :param budget: the node count or number of seconds that ran out
        :param what: a short description of the search
        """
        super().__init__(f"budget exceeded: {what} (budget {budget})")
        self.budget: float = budget
        self.what: str = what

    def __reduce__(self: SearchBudgetExceededError) -> tuple[type, tuple[float, str]]:
        # Workers raise this across process boundaries.
        return type(self), (self.budget, self.what)


class InfeasibleEnumerationError(ExcloError):
    """Raised when an exhaustive enumeration is larger than the feasibility guard."""

    def __init__(
        self: InfeasibleEnumerationError,
        required: int,
        allowed: int,
    ) -> None:
        """Initialize with the enumeration size and the guard.

        :param required: number of colorings that would be enumerated
        :param allowed: the feasibility guard
        """
        super().__init__(
            f"enumeration of {required} colorings exceeds the limit of {allowed}",
        )
        self.required: int = required
        self.allowed: int = allowed


class NonBipartiteClassError(ExcloError):
    """Raised when a color class that must be bipartite contains an odd cycle."""

    def __init__(
        self: NonBipartiteClassError,
        color: int,
        witness: Sequence[int],
    ) -> None:
        """Initialize with the offending color and an odd cycle in its class.

        :param color: the color whose class is not bipartite
        :param witness: the vertices of an odd cycle in that class
        """
        super().__init__(f"color {color} has an odd cycle {list(witness)}")
        self.color: int = color
        self.witness: tuple[int, ...] = tuple(witness)


class InvalidColoringError(ExcloError, ValueError):
    """Raised when an edge coloring is incomplete or uses unknown colors."""


class CertificateError(ExcloError, ValueError):
    """Raised when a violation certificate fails revalidation."""


class InvalidGraphError(ExcloError, ValueError):
    """Raised when graph parameters or adjacency data are not valid."""


class InvalidBoundsError(ExcloError, ValueError):
    """Raised when per-color odd cycle bounds are not odd integers of at least 3."""


class OutOfRangeError(ExcloError, ValueError):
    """Raised when a copy count or cycle size is outside the supported range."""


class UnknownTagError(ExcloError, ValueError):
    """Raised when a verification tag is not registered."""


class CheckFailedError(ExcloError):
    """Raised when a verification instance does not meet its expectation."""
