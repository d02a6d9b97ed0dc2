"""Exact clique search, violations of the exclusivity principle, clique constructions.

The solver is a bitset branch-and-bound: candidate sets are integers, a greedy
coloring of the candidates bounds how far a branch can still grow, and
branching starts from the highest color. OR products are never searched vertex by
vertex: FiberSearch assigns the factor values of a candidate clique one factor at
a time and prunes on what the remaining factors can still settle.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import as_completed
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from logging import getLogger
from math import comb
from math import floor
from math import lcm
from math import prod
from typing import TYPE_CHECKING
from typing import Union

from exclo.bitset import bits_to_list
from exclo.bitset import iter_bits
from exclo.bitset import mask_of
from exclo.bitset import popcount
from exclo.constants import DEFAULT_NODE_BUDGET
from exclo.constants import ISOMORPHISM_SCOPE
from exclo.errors import InvalidCliqueError
from exclo.errors import InvalidColorError
from exclo.errors import InvalidCycleError
from exclo.errors import NonEdgeError
from exclo.errors import OutOfRangeError
from exclo.errors import SearchBudgetExceededError
from exclo.graphs.bitgraph import Graph
from exclo.graphs.exclusivity import Event
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.exclusivity import pr_box_graph
from exclo.graphs.structure import OddCycleWitness
from exclo.graphs.structure import automorphisms
from exclo.graphs.structure import odd_girth
from exclo.graphs.structure import require_odd_cycle
from exclo.product import ColoredMultigraph
from exclo.product import flatten
from exclo.product import or_product
from exclo.product import tuple_index

if TYPE_CHECKING:
    from collections.abc import Iterator
    from collections.abc import Sequence

    from exclo.scenario import Correlation

logger = getLogger(__name__)

Host = Union[Graph, ColoredMultigraph]

GREEDY_TRIALS: int = 64
PENTAGON: int = 5


@dataclass(frozen=True)
class Clique:
    """Pairwise adjacent host vertices, sorted, with their total weight."""

    vertices: tuple[int, ...]
    weight: Fraction

    @property
    def size(self: Clique) -> int:
        return len(self.vertices)

    @property
    def mask(self: Clique) -> int:
        return mask_of(self.vertices)


@dataclass(frozen=True)
class HostDescriptor:
    """Provenance of a host graph: description and the correlation of each copy."""

    description: str
    k: int
    correlations: tuple[Correlation, ...] = ()

    @property
    def cycle_sizes(self: HostDescriptor) -> tuple[int, ...]:
        return tuple(correlation.n for correlation in self.correlations)


@dataclass(frozen=True)
class ViolationCertificate:
    """A clique whose weights sum past 1, with one event per copy for each vertex."""

    clique: Clique
    host: HostDescriptor
    events: tuple[tuple[Event, ...], ...]
    excess: Fraction

    def __post_init__(self: ViolationCertificate) -> None:
        if self.excess <= 0:
            message = f"a violation needs positive excess, got {self.excess}"
            raise InvalidCliqueError(message)


@dataclass(frozen=True)
class EdgeBudget:
    """Edge accounting for a repetition-free split of K_{2^k+1} over k copies."""

    k: int
    n: int
    clique_edges: int
    edges_per_copy: int
    required_share: int

    @property
    def fits(self: EdgeBudget) -> bool:
        return self.required_share <= self.edges_per_copy


class _TargetReachedError(Exception):
    """Raised inside a search when the requested clique size has been reached."""


def _as_graph(g: Host) -> Graph:
    return flatten(g) if isinstance(g, ColoredMultigraph) else g


def _weights(g: Graph) -> tuple[Fraction, ...]:
    if isinstance(g, ExclusivityGraph):
        return g.weights

    return (Fraction(1),) * g.order


def validate_clique(g: Host, vertices: Sequence[int]) -> Clique:
    """Check a vertex set pairwise, independently of the solver.

    :param g: the host; multigraphs are checked in their flattened form
    :param vertices: the claimed clique
    :return: the clique, sorted, with its weight
    """
    graph = _as_graph(g)
    members = sorted(vertices)

    if len(set(members)) != len(members):
        message = f"{members} repeats a vertex"
        raise InvalidCliqueError(message)

    if any(not 0 <= v < graph.order for v in members):
        message = f"{members} has vertices outside 0..{graph.order - 1}"
        raise InvalidCliqueError(message)

    for position, u in enumerate(members):
        for v in members[position + 1 :]:
            if not graph.has_edge(u, v):
                message = f"vertices {u} and {v} are not adjacent"
                raise InvalidCliqueError(message)

    weights = _weights(graph)
    return Clique(tuple(members), sum((weights[v] for v in members), Fraction(0)))


def _color_sort(candidates: int, rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedily color the candidates, listing vertices in color order."""
    order: list[int] = []
    colors: list[int] = []
    color = 0
    remaining = candidates

    while remaining:
        color += 1
        available = remaining

        while available:
            low = available & -available
            vertex = low.bit_length() - 1
            order.append(vertex)
            colors.append(color)
            remaining ^= low
            available &= ~(rows[vertex] | low)

    return order, colors


class CliqueSearch:
    """Branch-and-bound for the largest clique inside a candidate set."""

    def __init__(
        self: CliqueSearch,
        rows: Sequence[int],
        node_budget: int | None = None,
    ) -> None:
        """Initialize the search over fixed adjacency rows.

        :param rows: symmetric adjacency rows
        :param node_budget: branch nodes allowed before aborting
        """
        self.rows: Sequence[int] = rows
        self.node_budget: int = (
            DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        )
        self.nodes: int = 0
        self.best_size: int = 0
        self.best_mask: int = 0
        self._stop_at: int | None = None

    def run(
        self: CliqueSearch,
        candidates: int,
        lower_bound: int = 0,
        stop_at: int | None = None,
    ) -> tuple[int, int]:
        """Look for a clique among the candidates larger than lower_bound.

        :param candidates: mask of the vertices the clique may use
        :param lower_bound: only cliques strictly larger than this are reported
        :param stop_at: stop as soon as a clique of this size is found
        :return: (size, mask) of the best clique, or (lower_bound, 0) if none
        """
        self.best_size = lower_bound
        self.best_mask = 0
        self._stop_at = stop_at

        try:
            self._expand(0, 0, candidates)
        except _TargetReachedError:
            pass

        return self.best_size, self.best_mask

    def _expand(self: CliqueSearch, size: int, clique: int, candidates: int) -> None:
        order, colors = _color_sort(candidates, self.rows)

        for position in range(len(order) - 1, -1, -1):
            if size + colors[position] <= self.best_size:
                return

            vertex = order[position]
            bit = 1 << vertex
            self._count_node()
            grown = clique | bit
            remaining = candidates & self.rows[vertex]

            if remaining:
                self._expand(size + 1, grown, remaining)
            elif size + 1 > self.best_size:
                self._record(size + 1, grown)

            candidates &= ~bit

    def _count_node(self: CliqueSearch) -> None:
        self.nodes += 1

        if self.nodes > self.node_budget:
            raise SearchBudgetExceededError(self.node_budget, "clique search")

    def _record(self: CliqueSearch, size: int, mask: int) -> None:
        self.best_size = size
        self.best_mask = mask

        if self._stop_at is not None and size >= self._stop_at:
            raise _TargetReachedError


def _degeneracy_order(rows: Sequence[int]) -> list[int]:
    """Repeatedly remove a vertex of minimum remaining degree."""
    degrees = [popcount(row) for row in rows]
    remaining = set(range(len(rows)))
    order = []

    while remaining:
        vertex = min(remaining, key=lambda v: (degrees[v], v))
        remaining.remove(vertex)
        order.append(vertex)

        for neighbor in iter_bits(rows[vertex]):
            if neighbor in remaining:
                degrees[neighbor] -= 1

    return order


def _relabel(rows: Sequence[int], order: Sequence[int]) -> list[int]:
    position = [0] * len(rows)

    for new, old in enumerate(order):
        position[old] = new

    return [
        mask_of(position[neighbor] for neighbor in iter_bits(rows[old]))
        for old in order
    ]


def _greedy_clique(rows: Sequence[int], trials: int = GREEDY_TRIALS) -> int:
    """Grow cliques greedily from the highest-degree vertices; return the best mask."""
    starts = sorted(range(len(rows)), key=lambda v: (-popcount(rows[v]), v))[:trials]
    best = 0

    for start in starts:
        clique = 1 << start
        candidates = rows[start]

        while candidates:
            chosen = max(
                iter_bits(candidates),
                key=lambda v: (popcount(rows[v] & candidates), -v),
            )
            clique |= 1 << chosen
            candidates &= rows[chosen]

        if popcount(clique) > popcount(best):
            best = clique

    return best


def _truncate(mask: int, size: int) -> int:
    return mask_of(bits_to_list(mask)[:size])


def _plain_search(
    rows: Sequence[int],
    node_budget: int | None,
    stop_at: int | None,
) -> int:
    """Search the whole graph and return the best clique mask.

    The mask is empty when stop_at is given and no clique of that size exists.
    """
    order = _degeneracy_order(rows)
    relabeled = _relabel(rows, order)
    greedy = _greedy_clique(relabeled)
    search = CliqueSearch(relabeled, node_budget)
    full = (1 << len(rows)) - 1

    if stop_at is None:
        _, mask = search.run(full, lower_bound=popcount(greedy))
        found = mask or greedy
    elif popcount(greedy) >= stop_at:
        found = _truncate(greedy, stop_at)
    else:
        _, found = search.run(full, lower_bound=stop_at - 1, stop_at=stop_at)

    logger.debug("plain clique search: %d nodes", search.nodes)
    return mask_of(order[v] for v in iter_bits(found))


@lru_cache()
def _factor_automorphisms(rows: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if len(rows) > ISOMORPHISM_SCOPE:
        return (tuple(range(len(rows))),)

    return tuple(automorphisms(Graph(rows)))


def _orbit_leaders(permutations: Sequence[Sequence[int]], order: int) -> int:
    """Mask of the points that are the smallest of their orbit under a group."""
    return mask_of(
        point
        for point in range(order)
        if all(permutation[point] >= point for permutation in permutations)
    )


def _has_clique(rows: Sequence[int], mask: int, size: int) -> bool:
    if size <= 0:
        return True

    for vertex in iter_bits(mask):
        if popcount(mask) < size:
            return False

        mask &= ~(1 << vertex)

        if _has_clique(rows, rows[vertex] & mask, size - 1):
            return True

    return False


def _closes_short_odd_walk(rows: Sequence[int], start: int, limit: int) -> bool:
    """Tell whether a closed walk of odd length below limit passes through start."""
    reached = 1 << start

    for length in range(1, limit):
        reached = _neighborhood(rows, reached)

        if not reached:
            return False

        if length % 2 and reached >> start & 1:
            return True

    return False


def _neighborhood(rows: Sequence[int], mask: int) -> int:
    union = 0

    for vertex in iter_bits(mask):
        union |= rows[vertex]

    return union


def _release(open_rows: list[int], slot: int, still_open: int) -> None:
    open_rows[slot] = 0

    for other in iter_bits(still_open):
        open_rows[other] &= ~(1 << slot)


class FiberSearch:
    """Decide whether an OR product holds a clique of a given size, factor by factor.

    A clique of m vertices is m slots, each given one value per factor. A pair of
    slots is settled by the first factor in which their values are adjacent. The
    pairs still open after a factor form a graph whose cliques must fit into the
    product of the factors after it, and which must map into the last factor once
    only that one is left. Values of the first factor are enumerated as multisets,
    one per orbit of its automorphism group; later factors fix the first slot to
    an orbit leader and keep slots that agree so far in increasing order.
    """

    def __init__(
        self: FiberSearch,
        factors: Sequence[tuple[int, ...]],
        size: int,
        node_budget: int | None = None,
    ) -> None:
        """Prepare a search over factors given by their adjacency rows.

        :param factors: adjacency rows of each factor, in product order
        :param size: the clique size asked for
        :param node_budget: value assignments allowed before aborting
        """
        self.factors: tuple[tuple[int, ...], ...] = tuple(factors)
        self.size: int = size
        self.node_budget: int = (
            DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        )
        self.nodes: int = 0
        self.groups: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
            _factor_automorphisms(rows) for rows in self.factors
        )
        self.leaders: tuple[int, ...] = tuple(
            _orbit_leaders(group, len(rows))
            for group, rows in zip(self.groups, self.factors)
        )
        self.room: tuple[int, ...] = tuple(
            product_clique_number(self.factors[level + 1 :])
            for level in range(len(self.factors) - 1)
        )
        girth = odd_girth(Graph(self.factors[-1]))
        self.walk_limit: int = size + 1 if girth is None else min(girth, size + 1)
        self.values: list[list[int]] = [[0] * size for _ in self.factors]
        self.open: list[list[int]] = [[0] * size for _ in self.factors]
        self.last: int = len(self.factors) - 1

    def profiles(self: FiberSearch) -> Iterator[tuple[int, ...]]:
        """Yield the first-factor value multisets that pass the clique room test."""
        yield from self._profiles([0] * self.size, [0] * self.size, 0)

    def extend(
        self: FiberSearch,
        profile: Sequence[int],
    ) -> list[tuple[int, ...]] | None:
        """Complete a first-factor multiset to a clique.

        :param profile: non-decreasing first-factor values, one per slot
        :return: the value tuple of every slot, or None if no completion exists
        """
        rows = self.factors[0]
        self.values[0] = list(profile)
        self.open[0] = [
            mask_of(
                other
                for other in range(self.size)
                if other != slot and not rows[profile[slot]] >> profile[other] & 1
            )
            for slot in range(self.size)
        ]

        if not self._assign(1, 0):
            return None

        return [
            tuple(values[slot] for values in self.values) for slot in range(self.size)
        ]

    def _profiles(
        self: FiberSearch,
        values: list[int],
        open_rows: list[int],
        slot: int,
    ) -> Iterator[tuple[int, ...]]:
        if slot == self.size:
            profile = tuple(values)

            if self._canonical(profile):
                yield profile

            return

        rows = self.factors[0]
        choices = (
            self.leaders[0] if slot == 0 else _at_least(values[slot - 1], len(rows))
        )

        for value in iter_bits(choices):
            self._count_node()
            still_open = mask_of(
                other for other in range(slot) if not rows[value] >> values[other] & 1
            )

            if not self._place(0, open_rows, slot, still_open):
                continue

            values[slot] = value
            yield from self._profiles(values, open_rows, slot + 1)
            _release(open_rows, slot, still_open)

    def _canonical(self: FiberSearch, profile: tuple[int, ...]) -> bool:
        return all(
            tuple(sorted(permutation[value] for value in profile)) >= profile
            for permutation in self.groups[0]
        )

    def _choices(self: FiberSearch, level: int, slot: int) -> int:
        order = len(self.factors[level])

        if slot == 0:
            return self.leaders[level]

        if all(values[slot] == values[slot - 1] for values in self.values[:level]):
            return _at_least(self.values[level][slot - 1], order)

        return (1 << order) - 1

    def _assign(self: FiberSearch, level: int, slot: int) -> bool:
        if slot == self.size:
            return level == self.last or self._assign(level + 1, 0)

        rows = self.factors[level]
        values = self.values[level]
        open_rows = self.open[level]
        unsettled = self.open[level - 1][slot] & ((1 << slot) - 1)

        for value in iter_bits(self._choices(level, slot)):
            self._count_node()
            still_open = mask_of(
                other
                for other in iter_bits(unsettled)
                if not rows[value] >> values[other] & 1
            )

            if level == self.last:
                if still_open:
                    continue

                values[slot] = value

                if self._assign(level, slot + 1):
                    return True

                continue

            if not self._place(level, open_rows, slot, still_open):
                continue

            values[slot] = value

            if self._assign(level, slot + 1):
                return True

            _release(open_rows, slot, still_open)

        return False

    def _place(
        self: FiberSearch,
        level: int,
        open_rows: list[int],
        slot: int,
        still_open: int,
    ) -> bool:
        if _has_clique(open_rows, still_open, self.room[level]):
            return False

        open_rows[slot] = still_open

        for other in iter_bits(still_open):
            open_rows[other] |= 1 << slot

        if level == self.last - 1 and _closes_short_odd_walk(
            open_rows,
            slot,
            self.walk_limit,
        ):
            _release(open_rows, slot, still_open)
            return False

        return True

    def _count_node(self: FiberSearch) -> None:
        self.nodes += 1

        if self.nodes > self.node_budget:
            raise SearchBudgetExceededError(self.node_budget, "fiber search")


def _at_least(value: int, order: int) -> int:
    return ((1 << order) - 1) & ~((1 << value) - 1)


def _factor_clique(rows: tuple[int, ...]) -> list[int]:
    return bits_to_list(_plain_search(rows, None, None))


def _clique_of_cliques(factors: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Slots of the clique made of every tuple of one maximum clique per factor."""
    return list(cartesian(*(_factor_clique(rows) for rows in factors)))


@lru_cache()
def product_clique_number(factors: tuple[tuple[int, ...], ...]) -> int:
    """Return the clique number of the OR product of factors given by their rows."""
    if len(factors) == 1:
        return len(_factor_clique(factors[0]))

    return len(_fiber_maximum(factors, None, 1))


_WORKER_SEARCHES: list[FiberSearch] = []


def _init_worker(
    factors: tuple[tuple[int, ...], ...],
    size: int,
    node_budget: int,
) -> None:
    _WORKER_SEARCHES[:] = [FiberSearch(factors, size, node_budget)]


def _extend_profile(
    profile: tuple[int, ...],
) -> tuple[list[tuple[int, ...]] | None, int]:
    search = _WORKER_SEARCHES[0]
    before = search.nodes
    found = search.extend(profile)
    return found, search.nodes - before


def _parallel_extend(
    search: FiberSearch,
    profiles: Sequence[tuple[int, ...]],
    budget: int,
    workers: int,
) -> tuple[list[tuple[int, ...]] | None, int]:
    """Extend the profiles in worker processes with an equal share of the budget each.

    The nodes reported back are summed as they arrive; the remaining profiles are
    cancelled once a clique turns up or the sum passes the budget.
    """
    spent = search.nodes
    share = max((budget - spent) // workers, 1)

    with ProcessPoolExecutor(
        max_workers=workers,
        initializer=_init_worker,
        initargs=(search.factors, search.size, share),
    ) as executor:
        futures = [executor.submit(_extend_profile, profile) for profile in profiles]

        try:
            for future in as_completed(futures):
                found, nodes = future.result()
                spent += nodes

                if found is not None:
                    return found, spent

                if spent > budget:
                    raise SearchBudgetExceededError(budget, "fiber search")
        finally:
            for future in futures:
                future.cancel()

    return None, spent


def _fiber_clique(
    factors: tuple[tuple[int, ...], ...],
    size: int,
    node_budget: int | None,
    workers: int,
) -> tuple[list[tuple[int, ...]] | None, int]:
    """Look for a clique of the given size; return its slots and the nodes spent."""
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    search = FiberSearch(factors, size, budget)

    if workers > 1:
        profiles = list(search.profiles())
        logger.debug("fiber search for K_%d: %d profiles", size, len(profiles))
        return _parallel_extend(search, profiles, budget, workers)

    for profile in search.profiles():
        found = search.extend(profile)

        if found is not None:
            return found, search.nodes

    logger.debug("fiber search for K_%d: none, %d nodes", size, search.nodes)
    return None, search.nodes


def _fiber_maximum(
    factors: tuple[tuple[int, ...], ...],
    node_budget: int | None,
    workers: int,
) -> list[tuple[int, ...]]:
    """Grow the clique of factor cliques one size at a time until none exists."""
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    best = _clique_of_cliques(factors)
    order = prod(len(rows) for rows in factors)
    spent = 0

    while len(best) < order:
        found, nodes = _fiber_clique(
            factors,
            len(best) + 1,
            max(budget - spent, 0),
            workers,
        )
        spent += nodes

        if found is None:
            break

        best = found

    return best


def _product_factors(g: Graph) -> tuple[ExclusivityGraph, ...] | None:
    if not isinstance(g, ExclusivityGraph) or len(g.factors) < 2:  # noqa: PLR2004
        return None

    if prod(factor.order for factor in g.factors) != g.order:
        return None

    return g.factors


def _product_search(
    factors: Sequence[Graph],
    node_budget: int | None,
    stop_at: int | None,
    workers: int,
) -> int:
    """Search a product host through its factors; return the clique as a host mask."""
    rows = tuple(tuple(factor.rows) for factor in factors)
    strides = [
        prod(len(later) for later in rows[index + 1 :]) for index in range(len(rows))
    ]
    slots: list[tuple[int, ...]] | None

    if stop_at is None:
        slots = _fiber_maximum(rows, node_budget, workers)
    else:
        slots = _clique_of_cliques(rows)

        if len(slots) >= stop_at:
            slots = slots[:stop_at]
        else:
            slots, _ = _fiber_clique(rows, stop_at, node_budget, workers)

    return mask_of(
        sum(value * stride for value, stride in zip(slot, strides))
        for slot in slots or ()
    )


def _search(
    g: Graph,
    node_budget: int | None,
    stop_at: int | None,
    workers: int,
) -> int:
    if g.order == 0:
        return 0

    if stop_at == 1:
        return 1

    if stop_at == 2:  # noqa: PLR2004
        edge = next(g.edges(), None)
        return 0 if edge is None else mask_of(edge)

    factors = _product_factors(g)

    if factors is None:
        return _plain_search(g.rows, node_budget, stop_at)

    return _product_search(factors, node_budget, stop_at, workers)


def max_clique(
    g: Host,
    node_budget: int | None = None,
    workers: int = 1,
) -> tuple[int, Clique]:
    """Find the clique number of a host and a witness.

    :param g: a graph, or a multigraph searched in its flattened form
    :param node_budget: branch nodes allowed before SearchBudgetExceededError
    :param workers: processes used for the subproblems of product hosts
    :return: (clique number, a maximum clique)
    """
    graph = _as_graph(g)
    mask = _search(graph, node_budget, None, workers)
    clique = validate_clique(graph, bits_to_list(mask))
    logger.info("clique number %d on %d vertices", clique.size, graph.order)
    return clique.size, clique


def find_clique_of_size(
    g: Host,
    size: int,
    node_budget: int | None = None,
    workers: int = 1,
) -> Clique | None:
    if size < 1:
        message = f"clique size must be at least 1, got {size}"
        raise InvalidCliqueError(message)

    graph = _as_graph(g)

    if size > graph.order:
        return None

    mask = _search(graph, node_budget, size, workers)

    if popcount(mask) < size:
        return None

    return validate_clique(graph, bits_to_list(_truncate(mask, size)))


def describe_host(g: Graph) -> HostDescriptor:
    if not isinstance(g, ExclusivityGraph):
        return HostDescriptor(description=f"{g.order}-vertex graph", k=1)

    if g.factors:
        known = tuple(
            factor.correlation
            for factor in g.factors
            if factor.correlation is not None
        )
        return HostDescriptor(
            description=g.description,
            k=len(g.factors),
            correlations=known if len(known) == len(g.factors) else (),
        )

    return HostDescriptor(
        description=g.description,
        k=1,
        correlations=() if g.correlation is None else (g.correlation,),
    )


def vertex_events(g: Graph, vertex: int) -> tuple[Event, ...]:
    """Return the event of every copy that a host vertex stands for, if known."""
    if not isinstance(g, ExclusivityGraph):
        return ()

    label = g.vertices[vertex]

    if isinstance(label, Event):
        return (label,)

    if g.factors and all(
        isinstance(factor.vertices[component], Event)
        for factor, component in zip(g.factors, label)
    ):
        return tuple(
            factor.vertices[component] for factor, component in zip(g.factors, label)
        )

    return ()


def _certificate(g: Graph, clique: Clique) -> ViolationCertificate:
    return ViolationCertificate(
        clique=clique,
        host=describe_host(g),
        events=tuple(vertex_events(g, vertex) for vertex in clique.vertices),
        excess=clique.weight - 1,
    )


class WeightedCliqueSearch:
    """Branch-and-bound for a maximum-weight clique with integer weights.

    The bound for a branch is the sum, over the greedy color classes that may
    still contribute, of the heaviest candidate in each class.
    """

    def __init__(
        self: WeightedCliqueSearch,
        rows: Sequence[int],
        weights: Sequence[int],
        node_budget: int | None = None,
    ) -> None:
        """Initialize the search.

        :param rows: symmetric adjacency rows
        :param weights: positive integer weight per vertex
        :param node_budget: branch nodes allowed before aborting
        """
        self.rows: Sequence[int] = rows
        self.weights: Sequence[int] = weights
        self.node_budget: int = (
            DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        )
        self.nodes: int = 0
        self.best_weight: int = 0
        self.best_mask: int = 0

    def run(self: WeightedCliqueSearch) -> tuple[int, int]:
        self._expand(0, 0, (1 << len(self.rows)) - 1)
        return self.best_weight, self.best_mask

    def _expand(
        self: WeightedCliqueSearch,
        weight: int,
        clique: int,
        candidates: int,
    ) -> None:
        order, colors = _color_sort(candidates, self.rows)
        heaviest: dict[int, int] = {}

        for vertex, color in zip(order, colors):
            heaviest[color] = max(heaviest.get(color, 0), self.weights[vertex])

        bound = [0]

        for color in range(1, len(heaviest) + 1):
            bound.append(bound[-1] + heaviest[color])

        for position in range(len(order) - 1, -1, -1):
            if weight + bound[colors[position]] <= self.best_weight:
                return

            vertex = order[position]
            self.nodes += 1

            if self.nodes > self.node_budget:
                raise SearchBudgetExceededError(
                    self.node_budget,
                    "weighted clique search",
                )

            grown = clique | 1 << vertex
            gained = weight + self.weights[vertex]
            remaining = candidates & self.rows[vertex]

            if gained > self.best_weight:
                self.best_weight = gained
                self.best_mask = grown

            if remaining:
                self._expand(gained, grown, remaining)

            candidates &= ~(1 << vertex)


def max_weight_clique(g: Host, node_budget: int | None = None) -> Clique:
    graph = _as_graph(g)
    weights = _weights(graph)

    if graph.order == 0:
        return Clique((), Fraction(0))

    if any(w <= 0 for w in weights):
        message = "clique weights must be positive"
        raise InvalidCliqueError(message)

    scale = lcm(*(w.denominator for w in weights))
    search = WeightedCliqueSearch(
        graph.rows,
        [int(w * scale) for w in weights],
        node_budget,
    )
    _, mask = search.run()
    logger.debug("weighted clique search: %d nodes", search.nodes)
    return validate_clique(graph, bits_to_list(mask))


def violation_threshold(weight: Fraction) -> int:
    """Return the smallest clique size whose uniform weights sum past 1."""
    return floor(1 / weight) + 1


def find_violation(
    g: Host,
    node_budget: int | None = None,
    workers: int = 1,
) -> ViolationCertificate | None:
    """Find a clique of total weight above 1, if any.

    Uniform weights reduce to the decision problem for a clique of
    violation_threshold(w) vertices; otherwise a maximum-weight clique is
    computed exactly.
    """
    graph = _as_graph(g)
    weights = _weights(graph)

    if graph.order == 0:
        return None

    if len(set(weights)) == 1:
        clique = find_clique_of_size(
            graph,
            violation_threshold(weights[0]),
            node_budget=node_budget,
            workers=workers,
        )
    else:
        heaviest = max_weight_clique(graph, node_budget)
        clique = heaviest if heaviest.weight > 1 else None

    if clique is None:
        logger.info("no violation on %s", describe_host(graph).description)
        return None

    return _certificate(graph, clique)


def _is_factor_edge(factor: Graph, u: int, v: int) -> bool:
    return 0 <= u < factor.order and 0 <= v < factor.order and factor.has_edge(u, v)


def trivial_clique(
    g: ColoredMultigraph,
    chosen_edges: Sequence[tuple[int, int]],
) -> Clique:
    """Combine one edge per factor into the clique of all 2^k endpoint tuples."""
    if len(chosen_edges) != g.k:
        message = f"need one edge per color, got {len(chosen_edges)} for k={g.k}"
        raise InvalidColorError(message)

    for color, (u, v) in enumerate(chosen_edges, start=1):
        factor = g.factors[color - 1]

        if not _is_factor_edge(factor, u, v):
            message = f"({u}, {v}) is not an edge of factor {color}"
            raise NonEdgeError(message)

    vertices = [tuple_index(g, combination) for combination in cartesian(*chosen_edges)]
    return _validate_in_layers(g, vertices)


def _row(g: ColoredMultigraph, vertex: int) -> int:
    row = 0

    for layer in g.layers:
        row |= layer[vertex]

    return row


def _validate_in_layers(g: ColoredMultigraph, vertices: Sequence[int]) -> Clique:
    """validate_clique without flattening the whole multigraph."""
    members = sorted(vertices)

    if len(set(members)) != len(members) or any(
        not 0 <= v < g.order for v in members
    ):
        message = f"{members} is not a set of vertices of the product"
        raise InvalidCliqueError(message)

    others = mask_of(members)

    for vertex in members:
        if _row(g, vertex) & others != others & ~(1 << vertex):
            message = f"vertex {vertex} is not adjacent to all of {members}"
            raise InvalidCliqueError(message)

    return Clique(tuple(members), sum((g.weights[v] for v in members), Fraction(0)))


def is_extendable(g: Host, clique: Clique) -> bool:
    """Tell whether some vertex outside the clique is adjacent to all of it."""
    if isinstance(g, ColoredMultigraph):
        _validate_in_layers(g, clique.vertices)
        common = -1

        for vertex in clique.vertices:
            common &= _row(g, vertex)

        return (common & ((1 << g.order) - 1)) != 0

    validate_clique(g, clique.vertices)
    common = g.vertex_mask

    for vertex in clique.vertices:
        common &= g.rows[vertex]

    return common != 0


def double_clique(
    extended: ColoredMultigraph,
    clique: Clique,
    edge: tuple[int, int],
) -> Clique:
    """Pair every clique vertex with both endpoints of an edge of one more copy.

    :param extended: the product with one more factor than the clique's host
    :param clique: a clique of the product of the first k factors
    :param edge: an edge of the last factor of `extended`
    :return: a clique twice as large
    """
    last = extended.factors[-1]
    a, b = edge

    if not _is_factor_edge(last, a, b):
        message = f"({a}, {b}) is not an edge of factor {extended.k}"
        raise NonEdgeError(message)

    width = last.order
    smaller = extended.order // width

    if any(not 0 <= v < smaller for v in clique.vertices):
        message = (
            f"{list(clique.vertices)} is not a vertex set of the "
            f"{extended.k - 1}-fold product"
        )
        raise InvalidCliqueError(message)

    return _validate_in_layers(
        extended,
        [vertex * width + end for vertex in clique.vertices for end in (a, b)],
    )


def build_k5_two_c5(
    g: ColoredMultigraph,
    first: OddCycleWitness | Sequence[int],
    second: OddCycleWitness | Sequence[int],
) -> Clique:
    """Build the clique v_j = (e_j, f_{2j mod 5}) from a 5-cycle in each of two factors.

    Edges between consecutive v_j come from the first factor (the pentagon),
    edges between v_j and v_{j+2} from the second (the pentagram).
    """
    if g.k != 2:  # noqa: PLR2004
        message = f"the pentagon and pentagram construction needs k=2, got {g.k}"
        raise InvalidColorError(message)

    cycles = []

    for color, cycle in enumerate((first, second), start=1):
        vertices = cycle.vertices if isinstance(cycle, OddCycleWitness) else cycle
        witness = require_odd_cycle(g.factors[color - 1], vertices)

        if witness.length != PENTAGON:
            message = f"factor {color} cycle has length {witness.length}, need 5"
            raise InvalidCycleError(message)

        cycles.append(witness.vertices)

    e, f = cycles
    return _validate_in_layers(
        g,
        [tuple_index(g, (e[j], f[2 * j % PENTAGON])) for j in range(PENTAGON)],
    )


def clique_certificate(g: Host, clique: Clique) -> ViolationCertificate:
    """Wrap a known clique of a host as a certificate (raises if it is no violation)."""
    graph = _as_graph(g)
    checked = validate_clique(graph, clique.vertices)
    return _certificate(graph, checked)


def violation_edge_budget(k: int, n: int) -> EdgeBudget:
    """Count the edges a repetition-free split of K_{2^k+1} over k copies needs.

    K_{2^k+1} has C(2^k+1, 2) edges. Split over k copies without reusing an
    edge of any copy, one copy must carry at least the ceiling of that over k,
    while each copy's exclusivity graph has only 3n edges.
    """
    if k < 1 or n < 4:  # noqa: PLR2004
        message = f"need k >= 1 and n >= 4, got k={k}, n={n}"
        raise OutOfRangeError(message)

    edges = comb(2**k + 1, 2)
    return EdgeBudget(
        k=k,
        n=n,
        clique_edges=edges,
        edges_per_copy=3 * n,
        required_share=-(-edges // k),
    )


def activation_search(
    n: int,
    k: int,
    node_budget: int | None = None,
    workers: int = 1,
    vertex_cap: int | None = None,
) -> ViolationCertificate | None:
    """Search k copies of the canonical n-cycle PR box for a violation."""
    host = or_product([pr_box_graph(n)] * k, vertex_cap=vertex_cap)
    logger.info("activation search: n=%d, k=%d, %d vertices", n, k, host.order)
    return find_violation(host, node_budget=node_budget, workers=workers)


def pr_box_clique_number(
    n: int,
    k: int,
    node_budget: int | None = None,
    workers: int = 1,
) -> tuple[int, Clique]:
    return max_clique(or_product([pr_box_graph(n)] * k), node_budget, workers)


def first_edge(g: Graph) -> tuple[int, int]:
    edge = next(g.edges(), None)

    if edge is None:
        message = "graph has no edges"
        raise NonEdgeError(message)

    return edge
