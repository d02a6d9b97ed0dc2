"""Dichotomic n-cycle scenarios, their correlations and n-cycle PR boxes."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import TYPE_CHECKING
from typing import Any

from exclo.constants import ANTI_CORRELATED_OUTCOMES
from exclo.constants import CORRELATED_OUTCOMES
from exclo.constants import FLIPPED_OUTCOME
from exclo.constants import JOINT_OUTCOMES
from exclo.constants import PLUS
from exclo.errors import DegenerateScenarioError
from exclo.errors import InvalidCorrelationError
from exclo.errors import ParityViolationError

if TYPE_CHECKING:
    from collections.abc import Iterable

MINIMUM_CYCLE_SIZE: int = 4
HALF: Fraction = Fraction(1, 2)
QUARTER: Fraction = Fraction(1, 4)


@dataclass(frozen=True)
class CycleScenario:
    """n dichotomic measurements compatible along a cycle.

    Context j is the pair (j, j+1 mod n). Joint outcomes of context j list the
    outcome of measurement j first.
    """

    n: int

    def __post_init__(self: CycleScenario) -> None:
        if self.n < MINIMUM_CYCLE_SIZE:
            message = f"degenerate scenario: n={self.n} (need n >= 4)"
            raise DegenerateScenarioError(message)

    @property
    def measurements(self: CycleScenario) -> range:
        return range(self.n)

    @property
    def contexts(self: CycleScenario) -> tuple[tuple[int, int], ...]:
        return tuple((j, (j + 1) % self.n) for j in range(self.n))

    def context(self: CycleScenario, index: int) -> tuple[int, int]:
        return index % self.n, (index + 1) % self.n

    def contexts_of(self: CycleScenario, measurement: int) -> tuple[int, int]:
        """Return the two context indices containing a measurement.

        The first context holds the measurement in second position, the second
        context holds it in first position.
        """
        return (measurement - 1) % self.n, measurement % self.n


@lru_cache()
def make_cycle_scenario(n: int) -> CycleScenario:
    return CycleScenario(n)


@dataclass(frozen=True)
class Correlation:
    """One probability table over joint outcomes per context of a scenario."""

    scenario: CycleScenario
    tables: tuple[Mapping[str, Fraction], ...]

    def __post_init__(self: Correlation) -> None:
        if len(self.tables) != self.scenario.n:
            message = (
                f"expected {self.scenario.n} context tables, got {len(self.tables)}"
            )
            raise InvalidCorrelationError(message)

        normalized = tuple(
            _normalize_table(index, table) for index, table in enumerate(self.tables)
        )
        object.__setattr__(self, "tables", normalized)

    @property
    def n(self: Correlation) -> int:
        return self.scenario.n

    def probability(self: Correlation, context: int, outcome: str) -> Fraction:
        return self.tables[context][outcome]

    def support(self: Correlation, context: int) -> frozenset[str]:
        return frozenset(
            outcome for outcome, value in self.tables[context].items() if value > 0
        )

    def __eq__(self: Correlation, other: object) -> bool:
        if not isinstance(other, Correlation):
            return NotImplemented

        return self.scenario == other.scenario and all(
            dict(mine) == dict(theirs)
            for mine, theirs in zip(self.tables, other.tables)
        )

    def __hash__(self: Correlation) -> int:
        return hash(
            (
                self.scenario,
                tuple(tuple(table.items()) for table in self.tables),
            ),
        )


def _normalize_table(
    index: int,
    table: Mapping[str, Fraction | int | str],
) -> Mapping[str, Fraction]:
    unknown = set(table) - set(JOINT_OUTCOMES)

    if unknown:
        message = f"context {index}: unknown joint outcomes {sorted(unknown)}"
        raise InvalidCorrelationError(message)

    values: dict[str, Fraction] = {}

    for outcome in JOINT_OUTCOMES:
        value = Fraction(table.get(outcome, 0))

        if value < 0:
            message = f"context {index}: negative probability for {outcome}"
            raise InvalidCorrelationError(message)

        values[outcome] = value

    if sum(values.values()) != 1:
        message = f"context {index}: probabilities sum to {sum(values.values())}"
        raise InvalidCorrelationError(message)

    return MappingProxyType(values)


@dataclass(frozen=True)
class PrBoxSpec:
    """Cycle size and the contexts whose supported outcomes are anti-correlated."""

    n: int
    anti_contexts: frozenset[int]

    def __post_init__(self: PrBoxSpec) -> None:
        object.__setattr__(self, "anti_contexts", frozenset(self.anti_contexts))
        make_cycle_scenario(self.n)

        out_of_range = [j for j in self.anti_contexts if not 0 <= j < self.n]

        if out_of_range:
            message = f"context indices {sorted(out_of_range)} outside 0..{self.n - 1}"
            raise InvalidCorrelationError(message)

        if len(self.anti_contexts) % 2 == 0:
            message = (
                f"parity violation: {len(self.anti_contexts)} anti-correlated "
                "contexts (must be odd)"
            )
            raise ParityViolationError(message)


def make_pr_box(spec: PrBoxSpec) -> Correlation:
    scenario = make_cycle_scenario(spec.n)
    tables = []

    for context in range(spec.n):
        support = (
            ANTI_CORRELATED_OUTCOMES
            if context in spec.anti_contexts
            else CORRELATED_OUTCOMES
        )
        tables.append({outcome: HALF for outcome in support})

    return Correlation(scenario, tuple(tables))


def canonical_pr_box(n: int) -> Correlation:
    """Return the PR box with only the last context anti-correlated."""
    return make_pr_box(PrBoxSpec(n, frozenset({n - 1})))


def uniform_correlation(n: int) -> Correlation:
    scenario = make_cycle_scenario(n)
    table = {outcome: QUARTER for outcome in JOINT_OUTCOMES}
    return Correlation(scenario, tuple(dict(table) for _ in range(n)))


def pr_box_specs(n: int) -> list[PrBoxSpec]:
    """Return one spec per odd-sized subset of contexts, smallest subsets first."""
    make_cycle_scenario(n)
    specs = []

    for size in range(1, n + 1, 2):
        specs.extend(
            PrBoxSpec(n, frozenset(subset))
            for subset in combinations(range(n), size)
        )

    return specs


def enumerate_pr_boxes(n: int) -> list[Correlation]:
    return [make_pr_box(spec) for spec in pr_box_specs(n)]


def marginal_plus(corr: Correlation, context: int, position: int) -> Fraction:
    """Probability that the measurement in `position` of a context reads +."""
    return sum(
        (
            value
            for outcome, value in corr.tables[context].items()
            if outcome[position] == PLUS
        ),
        Fraction(0),
    )


def check_no_disturbance(corr: Correlation) -> bool:
    scenario = corr.scenario

    for measurement in scenario.measurements:
        before, after = scenario.contexts_of(measurement)

        # Marginals are dichotomic, so agreeing on + is enough.
        if marginal_plus(corr, before, 1) != marginal_plus(corr, after, 0):
            return False

    return True


def relabel_outcomes(corr: Correlation, measurements: Iterable[int]) -> Correlation:
    """Swap + and - for the given measurements in every context that holds them."""
    flipped = frozenset(m % corr.n for m in measurements)
    tables = []

    for index, (first, second) in enumerate(corr.scenario.contexts):
        table: dict[str, Fraction] = {}

        for outcome, value in corr.tables[index].items():
            relabeled = _flip(outcome[0], first, flipped) + _flip(
                outcome[1],
                second,
                flipped,
            )
            table[relabeled] = value

        tables.append(table)

    return Correlation(corr.scenario, tuple(tables))


def _flip(symbol: str, measurement: int, flipped: frozenset[int]) -> str:
    return FLIPPED_OUTCOME[symbol] if measurement in flipped else symbol


def relabeling_between(source: PrBoxSpec, target: PrBoxSpec) -> frozenset[int]:
    """Find measurements whose relabeling turns one PR box into another.

    Flipping measurement m toggles whether contexts m-1 and m are
    anti-correlated, so the flips follow from a running parity along the cycle.

    :param source: the PR box to start from
    :param target: the PR box to reach
    :return: the set of measurements to relabel
    """
    if source.n != target.n:
        message = f"cannot relabel a {source.n}-cycle box into a {target.n}-cycle box"
        raise InvalidCorrelationError(message)

    toggled = source.anti_contexts ^ target.anti_contexts
    flipped: set[int] = set()
    state = False

    for context in range(source.n - 1):
        state ^= context in toggled

        if state:
            flipped.add(context + 1)

    return frozenset(flipped)


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (TypeError, ValueError, ZeroDivisionError) as error:
        message = f"not a rational number: {text!r}"
        raise InvalidCorrelationError(message) from error


def correlation_to_json(corr: Correlation) -> dict[str, Any]:
    return {
        "n": corr.n,
        "tables": [
            {
                "context": list(context),
                "probs": {
                    outcome: format_fraction(value)
                    for outcome, value in corr.tables[index].items()
                    if value > 0
                },
            }
            for index, context in enumerate(corr.scenario.contexts)
        ],
    }


def correlation_from_json(data: Mapping[str, Any]) -> Correlation:
    try:
        scenario = make_cycle_scenario(int(data["n"]))
        entries = list(data["tables"])
    except (KeyError, TypeError, ValueError) as error:
        message = "correlation document needs 'n' and 'tables'"
        raise InvalidCorrelationError(message) from error

    tables = []

    for index, entry in enumerate(entries):
        probs = entry.get("probs", {}) if isinstance(entry, Mapping) else None

        if not isinstance(probs, Mapping):
            message = f"table {index} is not an object with a 'probs' object"
            raise InvalidCorrelationError(message)

        context = entry.get("context", ())

        if not isinstance(context, (list, tuple)):
            message = f"table {index} has no context list"
            raise InvalidCorrelationError(message)

        if tuple(context) != scenario.context(index):
            message = f"table {index} is not for context {scenario.context(index)}"
            raise InvalidCorrelationError(message)

        tables.append(
            {outcome: parse_fraction(value) for outcome, value in probs.items()},
        )

    return Correlation(scenario, tuple(tables))
