"""Exclusivity graphs of cycle-scenario correlations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING
from typing import Any

from exclo.constants import JOINT_OUTCOMES
from exclo.errors import InvalidEventError
from exclo.graphs.bitgraph import Graph
from exclo.scenario import canonical_pr_box

if TYPE_CHECKING:
    from exclo.scenario import Correlation
    from exclo.scenario import CycleScenario


@dataclass(frozen=True, order=True)
class Event:
    """A joint outcome of one context, e.g. Event(0, "+-")."""

    context: int
    outcome: str

    def sort_key(self: Event) -> tuple[int, int]:
        return self.context, JOINT_OUTCOMES.index(self.outcome)

    def value_of(self: Event, measurement: int, scenario: CycleScenario) -> str:
        first, second = scenario.context(self.context)

        if measurement == first:
            return self.outcome[0]

        if measurement == second:
            return self.outcome[1]

        message = f"measurement {measurement} is not in context {self.context}"
        raise InvalidEventError(message)


@dataclass(frozen=True)
class ExclusivityGraph(Graph):
    """A vertex-weighted graph whose edges join mutually exclusive events.

    `vertices` holds one label per vertex: an Event for a single correlation,
    or a tuple of factor vertex indices for a product. `factors` is empty for a
    single correlation and lists the factor graphs of a product.
    """

    vertices: tuple[Any, ...]
    weights: tuple[Fraction, ...]
    correlation: Correlation | None = None
    factors: tuple[ExclusivityGraph, ...] = ()
    description: str = ""

    @classmethod
    def from_graph(
        cls: type[ExclusivityGraph],
        graph: Graph,
        weight: Fraction | None = None,
        description: str = "",
    ) -> ExclusivityGraph:
        """Wrap a plain graph with integer vertex labels and one common weight."""
        common = Fraction(1) if weight is None else weight
        return cls(
            rows=graph.rows,
            vertices=tuple(range(graph.order)),
            weights=(common,) * graph.order,
            description=description,
        )

    @property
    def is_product(self: ExclusivityGraph) -> bool:
        return bool(self.factors)


def _check_event(event: Event, scenario: CycleScenario) -> None:
    if not 0 <= event.context < scenario.n or event.outcome not in JOINT_OUTCOMES:
        message = f"{event} is not an event of the {scenario.n}-cycle scenario"
        raise InvalidEventError(message)


def are_exclusive(e: Event, f: Event, scenario: CycleScenario) -> bool:
    _check_event(e, scenario)
    _check_event(f, scenario)

    shared = set(scenario.context(e.context)) & set(scenario.context(f.context))

    return any(
        e.value_of(measurement, scenario) != f.value_of(measurement, scenario)
        for measurement in shared
    )


def describe_correlation(corr: Correlation) -> str:
    anti = [
        index
        for index in range(corr.n)
        if corr.support(index) and all(o[0] != o[1] for o in corr.support(index))
    ]
    return f"{corr.n}-cycle correlation (anti-correlated contexts {anti})"


def build_exclusivity_graph(corr: Correlation) -> ExclusivityGraph:
    scenario = corr.scenario
    events = sorted(
        (
            Event(context, outcome)
            for context in range(corr.n)
            for outcome in JOINT_OUTCOMES
            if corr.probability(context, outcome) > 0
        ),
        key=Event.sort_key,
    )
    rows = [0] * len(events)

    for u, first in enumerate(events):
        for v in range(u + 1, len(events)):
            if are_exclusive(first, events[v], scenario):
                rows[u] |= 1 << v
                rows[v] |= 1 << u

    return ExclusivityGraph(
        rows=tuple(rows),
        vertices=tuple(events),
        weights=tuple(corr.probability(e.context, e.outcome) for e in events),
        correlation=corr,
        description=describe_correlation(corr),
    )


@lru_cache()
def pr_box_graph(n: int) -> ExclusivityGraph:
    """Return the exclusivity graph of the canonical n-cycle PR box."""
    return build_exclusivity_graph(canonical_pr_box(n))
