"""Edge colorings of complete graphs and the Ramsey-type arguments built on them.

Colors are 1..k. A coloring of K_m stores one color per vertex pair, the pairs
listed in lexicographic order (0,1), (0,2), ..., (m-2,m-1).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from logging import getLogger
from math import comb
from typing import TYPE_CHECKING
from typing import Any

from exclo.bitset import iter_bits
from exclo.constants import DEFAULT_COLORING_TIME_BUDGET
from exclo.constants import EXHAUSTIVE_LIMIT
from exclo.errors import InfeasibleEnumerationError
from exclo.errors import InvalidBoundsError
from exclo.errors import InvalidColoringError
from exclo.errors import NonBipartiteClassError
from exclo.errors import OutOfRangeError
from exclo.errors import SearchBudgetExceededError
from exclo.graphs.bitgraph import Graph
from exclo.graphs.structure import MINIMUM_CYCLE_LENGTH
from exclo.graphs.structure import OddCycleWitness
from exclo.graphs.structure import bipartition
from exclo.graphs.structure import find_triangle
from exclo.graphs.structure import shortest_odd_cycle

if TYPE_CHECKING:
    from collections.abc import Mapping
    from collections.abc import Sequence

logger = getLogger(__name__)

SEARCH_CLOCK_INTERVAL: int = 1024


@dataclass(frozen=True)
class EdgeColoring:
    """A k-coloring of the edges of K_m."""

    m: int
    k: int
    colors: tuple[int, ...]

    def __post_init__(self: EdgeColoring) -> None:
        if self.m < 1 or self.k < 1:
            message = f"need m >= 1 and k >= 1, got m={self.m}, k={self.k}"
            raise InvalidColoringError(message)

        if len(self.colors) != comb(self.m, 2):
            message = (
                f"K_{self.m} has {comb(self.m, 2)} edges, "
                f"{len(self.colors)} colors given"
            )
            raise InvalidColoringError(message)

        unknown = sorted({c for c in self.colors if not 1 <= c <= self.k})

        if unknown:
            message = f"colors {unknown} outside 1..{self.k}"
            raise InvalidColoringError(message)

    def pairs(self: EdgeColoring) -> list[tuple[int, int]]:
        return list(combinations(range(self.m), 2))

    def color_of(self: EdgeColoring, u: int, v: int) -> int:
        return self.colors[pair_index(self.m, u, v)]


def pair_index(m: int, u: int, v: int) -> int:
    """Position of the pair {u, v} in the lexicographic list of pairs of K_m."""
    if u == v or not (0 <= u < m and 0 <= v < m):
        message = f"({u}, {v}) is not an edge of K_{m}"
        raise InvalidColoringError(message)

    low, high = min(u, v), max(u, v)
    return low * (2 * m - low - 1) // 2 + (high - low - 1)


def color_class(c: EdgeColoring, color: int) -> Graph:
    if not 1 <= color <= c.k:
        message = f"color {color} outside 1..{c.k}"
        raise InvalidColoringError(message)

    return Graph.from_edges(
        c.m,
        (pair for pair, value in zip(c.pairs(), c.colors) if value == color),
    )


def _check_bounds(bounds: Sequence[int], k: int) -> tuple[int, ...]:
    if len(bounds) != k:
        message = f"{len(bounds)} bounds given for {k} colors"
        raise InvalidBoundsError(message)

    if any(b < MINIMUM_CYCLE_LENGTH or b % 2 == 0 for b in bounds):
        message = f"bounds {list(bounds)} must be odd and at least 3"
        raise InvalidBoundsError(message)

    return tuple(bounds)


def _short_odd_cycle(g: Graph, bound: int) -> OddCycleWitness | None:
    if bound == MINIMUM_CYCLE_LENGTH:
        return find_triangle(g)

    witness = shortest_odd_cycle(g)
    return witness if witness is not None and witness.length <= bound else None


def mono_odd_cycle(
    c: EdgeColoring,
    bounds: Sequence[int],
) -> tuple[int, OddCycleWitness] | None:
    """Find a color whose class has an odd cycle no longer than that color's bound.

    :param c: the coloring
    :param bounds: one odd bound (at least 3) per color
    :return: (color, witness) for the first such color, or None
    """
    checked = _check_bounds(bounds, c.k)

    for color in range(1, c.k + 1):
        witness = _short_odd_cycle(color_class(c, color), checked[color - 1])

        if witness is not None:
            return color, witness

    return None


def _decode(index: int, k: int, length: int) -> list[int]:
    digits = []

    for _ in range(length):
        index, digit = divmod(index, k)
        digits.append(digit + 1)

    return digits[::-1]


def _scan_chunk(
    task: tuple[int, int, tuple[int, ...], bool, int, int],
) -> tuple[int, ...] | None:
    """Return the first coloring in an index range without short odd cycles."""
    m, k, bounds, fix_first, start, stop = task
    free = comb(m, 2) - (1 if fix_first else 0)

    for index in range(start, stop):
        colors = ([1] if fix_first else []) + _decode(index, k, free)
        coloring = EdgeColoring(m, k, tuple(colors))

        if mono_odd_cycle(coloring, bounds) is None:
            return coloring.colors

    return None


def find_counterexample(
    m: int,
    k: int,
    bounds: Sequence[int],
    override: bool = False,
    workers: int = 1,
) -> EdgeColoring | None:
    """Enumerate every k-coloring of K_m and return the first with no short odd cycle.

    When all bounds are equal the colors are interchangeable, so the first edge
    is fixed to color 1; otherwise every coloring is enumerated.

    :param m: vertices of the complete graph
    :param k: number of colors
    :param bounds: odd cycle bound per color
    :param override: enumerate even past the feasibility guard
    :param workers: processes sharing contiguous chunks of the index space
    :return: the lowest-index counterexample, or None
    """
    checked = _check_bounds(bounds, k)
    edges = comb(m, 2)
    fix_first = edges > 0 and len(set(checked)) == 1
    total = k ** (edges - 1) if fix_first else k**edges

    if total > EXHAUSTIVE_LIMIT and not override:
        raise InfeasibleEnumerationError(total, EXHAUSTIVE_LIMIT)

    chunks = max(1, workers) * 4
    step = -(-total // chunks)
    tasks = [
        (m, k, checked, fix_first, start, min(start + step, total))
        for start in range(0, total, step)
    ]
    logger.debug("enumerating %d colorings of K_%d in %d chunks", total, m, len(tasks))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_scan_chunk, tasks))
    else:
        results = []

        for task in tasks:
            results.append(_scan_chunk(task))

            if results[-1] is not None:
                break

    found = next((colors for colors in results if colors is not None), None)
    return None if found is None else EdgeColoring(m, k, found)


def exhaustive_check(
    m: int,
    k: int,
    bounds: Sequence[int],
    override: bool = False,
    workers: int = 1,
) -> bool:
    """Tell whether every k-coloring of K_m has a short monochromatic odd cycle."""
    return find_counterexample(m, k, bounds, override, workers) is None


class ColoringSearch:
    """Backtracking over edges in lexicographic order, rejecting short odd cycles early.

    After an edge (u, v) gets color c, the class of c is checked for a closed
    odd walk through u of length at most the bound of c; any new short odd
    cycle uses the edge and so passes through u.
    """

    def __init__(
        self: ColoringSearch,
        m: int,
        k: int,
        bounds: Sequence[int],
        time_budget: float | None = None,
    ) -> None:
        """Prepare the search.

        :param m: vertices of the complete graph
        :param k: number of colors
        :param bounds: odd cycle bound per color
        :param time_budget: seconds before SearchBudgetExceededError
        """
        self.m: int = m
        self.k: int = k
        self.bounds: tuple[int, ...] = _check_bounds(bounds, k)
        self.time_budget: float = (
            DEFAULT_COLORING_TIME_BUDGET if time_budget is None else time_budget
        )
        self.pairs: list[tuple[int, int]] = list(combinations(range(m), 2))
        self.rows: list[list[int]] = [[0] * m for _ in range(k)]
        self.colors: list[int] = []
        self.nodes: int = 0
        self._deadline: float = 0.0
        self._interchangeable: bool = len(set(self.bounds)) == 1

    def run(self: ColoringSearch) -> EdgeColoring | None:
        self._deadline = time.monotonic() + self.time_budget
        found = self._extend(0, 0)
        logger.debug("coloring search on K_%d: %d nodes", self.m, self.nodes)
        return EdgeColoring(self.m, self.k, tuple(self.colors)) if found else None

    def _extend(self: ColoringSearch, position: int, used: int) -> bool:
        if position == len(self.pairs):
            return True

        self.nodes += 1

        if (
            self.nodes % SEARCH_CLOCK_INTERVAL == 1
            and time.monotonic() >= self._deadline
        ):
            raise SearchBudgetExceededError(self.time_budget, "coloring search")

        u, v = self.pairs[position]
        # A color not used yet is as good as any other unused one.
        limit = min(used + 1, self.k) if self._interchangeable else self.k

        for color in range(1, limit + 1):
            rows = self.rows[color - 1]
            rows[u] |= 1 << v
            rows[v] |= 1 << u

            if not self._closes_short_odd_cycle(rows, u, self.bounds[color - 1]):
                self.colors.append(color)

                if self._extend(position + 1, max(used, color)):
                    return True

                self.colors.pop()

            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)

        return False

    @staticmethod
    def _closes_short_odd_cycle(rows: Sequence[int], start: int, bound: int) -> bool:
        reach = 1 << start

        for steps in range(1, bound + 1):
            following = 0

            for vertex in iter_bits(reach):
                following |= rows[vertex]

            reach = following

            if steps % 2 and reach >> start & 1:
                return True

        return False


def search_coloring(
    m: int,
    k: int,
    bounds: Sequence[int],
    time_budget: float | None = None,
) -> EdgeColoring | None:
    """Find a k-coloring of K_m without short monochromatic odd cycles, if any."""
    return ColoringSearch(m, k, bounds, time_budget).run()


def bipartite_coloring(k: int) -> EdgeColoring:
    """Color K_{2^k} so that every color class is bipartite.

    Two copies of the coloring of K_{2^(k-1)} are joined with every cross edge
    in color k, starting from K_2 in color 1. Unrolled, the pair {u, v} gets
    the position of the highest bit in which u and v differ, plus one.
    """
    if k < 1:
        message = f"need at least one color, got {k}"
        raise OutOfRangeError(message)

    m = 2**k
    return EdgeColoring(
        m,
        k,
        tuple((u ^ v).bit_length() for u, v in combinations(range(m), 2)),
    )


def label_vertices(c: EdgeColoring) -> list[int]:
    """Give every vertex a k-bit label: bit i-1 is its side in the class of color i.

    Sides come from bipartition, so the lowest vertex of each component of a
    class is on side 0. Adjacent vertices differ in the bit of their edge's
    color, hence all labels are distinct.

    :raises NonBipartiteClassError: with an odd cycle of the offending class
    """
    labels = [0] * c.m

    for color in range(1, c.k + 1):
        graph = color_class(c, color)
        sides = bipartition(graph)

        if sides is None:
            witness = shortest_odd_cycle(graph)
            raise NonBipartiteClassError(color, witness.vertices if witness else ())

        for vertex, side in enumerate(sides):
            labels[vertex] |= side << (color - 1)

    return labels


def pentagon_pentagram_coloring() -> EdgeColoring:
    """Split K_5 into the pentagon (color 1) and the pentagram (color 2)."""
    return EdgeColoring(
        5,
        2,
        tuple(1 if (v - u) % 5 in (1, 4) else 2 for u, v in combinations(range(5), 2)),
    )


class Verdict(Enum):
    VIOLATES = "VIOLATES"
    NO_VIOLATION = "NO_VIOLATION"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class RuleOutVerdict:
    """Whether k copies of an n-cycle PR box violate exclusivity, and the reason."""

    k: int
    n: int
    verdict: Verdict
    reason: str

    def __str__(self: RuleOutVerdict) -> str:
        return f"k={self.k} n={self.n}: {self.verdict.value} ({self.reason})"


def pr_box_odd_girth(n: int) -> int:
    """Shortest odd cycle of an n-cycle PR box exclusivity graph: n or n+1."""
    return n if n % 2 else n + 1


def rule_out(k: int, n: int) -> RuleOutVerdict:
    """Decide the activation question for k copies of an n-cycle PR box.

    One copy is triangle-free. Two copies violate exactly for n in {4, 5}.
    Three copies violate for n in {4, 5} by doubling the two-copy clique and
    never for n >= 6. For more copies, n in {4, 5} keeps doubling; otherwise a
    clique on 2^k + 1 joint events would need, by the labeling pigeonhole, a
    color class with an odd cycle of length at most 2^k + 1, which shrinks to
    an odd cycle that short in one copy, impossible once the odd girth
    exceeds 2^k + 1.
    """
    if k < 1 or n < 4:  # noqa: PLR2004
        message = f"need k >= 1 and n >= 4, got k={k}, n={n}"
        raise OutOfRangeError(message)

    small = n in (4, 5)

    if k == 1:
        return RuleOutVerdict(k, n, Verdict.NO_VIOLATION, "C5")

    if k == 2:  # noqa: PLR2004
        if small:
            return RuleOutVerdict(k, n, Verdict.VIOLATES, "T9")

        return RuleOutVerdict(k, n, Verdict.NO_VIOLATION, "T10")

    if small:
        return RuleOutVerdict(k, n, Verdict.VIOLATES, "R8")

    if k == 3:  # noqa: PLR2004
        return RuleOutVerdict(k, n, Verdict.NO_VIOLATION, "T12")

    if pr_box_odd_girth(n) > 2**k + 1:
        return RuleOutVerdict(k, n, Verdict.NO_VIOLATION, "T13")

    return RuleOutVerdict(k, n, Verdict.UNKNOWN, "open")


def coloring_to_json(
    c: EdgeColoring,
    bounds: Sequence[int] | None = None,
) -> dict[str, Any]:
    data: dict[str, Any] = {
        "m": c.m,
        "k": c.k,
        "edges": [[u, v, color] for (u, v), color in zip(c.pairs(), c.colors)],
    }

    if bounds is not None:
        data["bounds"] = list(_check_bounds(bounds, c.k))

    return data


def coloring_from_json(data: Mapping[str, Any]) -> EdgeColoring:
    try:
        m = int(data["m"])
        k = int(data["k"])
        entries = [(int(u), int(v), int(color)) for u, v, color in data["edges"]]
    except (KeyError, TypeError, ValueError) as error:
        message = f"malformed coloring document: {error}"
        raise InvalidColoringError(message) from error

    colors: dict[int, int] = {}

    for u, v, color in entries:
        index = pair_index(m, u, v)

        if index in colors and colors[index] != color:
            message = f"edge ({u}, {v}) has two colors"
            raise InvalidColoringError(message)

        colors[index] = color

    missing = comb(m, 2) - len(colors)

    if missing:
        message = f"{missing} edges of K_{m} have no color"
        raise InvalidColoringError(message)

    return EdgeColoring(m, k, tuple(colors[i] for i in range(comb(m, 2))))


@dataclass(frozen=True)
class ColoringReport:
    coloring: EdgeColoring
    bounds: tuple[int, ...]
    hit: tuple[int, OddCycleWitness] | None


def check_coloring(
    data: Mapping[str, Any],
    bounds: Sequence[int] | None = None,
) -> ColoringReport:
    """Re-read a coloring document and look for short monochromatic odd cycles.

    Bounds given here win over the document's own "bounds" entry.
    """
    coloring = coloring_from_json(data)
    chosen = bounds if bounds is not None else data.get("bounds")

    if chosen is None:
        message = "no odd cycle bounds given or stored in the document"
        raise InvalidBoundsError(message)

    checked = _check_bounds([int(b) for b in chosen], coloring.k)
    return ColoringReport(coloring, checked, mono_odd_cycle(coloring, checked))
