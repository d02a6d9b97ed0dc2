"""Contains the Graph class: simple undirected graphs with bitset adjacency rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from exclo.bitset import bits_to_list
from exclo.bitset import iter_bits
from exclo.bitset import popcount
from exclo.errors import InvalidGraphError

if TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Iterator
    from collections.abc import Sequence

MINIMUM_LADDER_ORDER: int = 6
MINIMUM_PRISM_HALF: int = 3


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..order-1.

    Row u is an integer whose bit v is set when u and v are adjacent. Rows are
    symmetric and no row contains its own bit.
    """

    rows: tuple[int, ...]

    @classmethod
    def from_edges(
        cls: type[Graph],
        order: int,
        edges: Iterable[tuple[int, int]],
    ) -> Graph:
        """Build a graph from an edge list.

        :param order: the number of vertices
        :param edges: unordered vertex pairs, duplicates allowed
        :return: the graph
        """
        rows = [0] * order

        for u, v in edges:
            if u == v:
                message = f"self-loop at vertex {u}"
                raise InvalidGraphError(message)

            if not (0 <= u < order and 0 <= v < order):
                message = f"edge ({u}, {v}) out of bounds for order {order}"
                raise InvalidGraphError(message)

            rows[u] |= 1 << v
            rows[v] |= 1 << u

        return Graph(tuple(rows))

    @property
    def order(self: Graph) -> int:
        return len(self.rows)

    @property
    def vertex_mask(self: Graph) -> int:
        return (1 << self.order) - 1

    def has_edge(self: Graph, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self: Graph, u: int) -> list[int]:
        return bits_to_list(self.rows[u])

    def degree(self: Graph, u: int) -> int:
        return popcount(self.rows[u])

    def degrees(self: Graph) -> list[int]:
        return [popcount(row) for row in self.rows]

    def edges(self: Graph) -> Iterator[tuple[int, int]]:
        """Yield every edge once as (u, v) with u < v, in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self: Graph) -> int:
        return sum(self.degrees()) // 2

    def regular_degree(self: Graph) -> int | None:
        """Return the common degree if the graph is regular, otherwise None."""
        degrees = set(self.degrees())
        return degrees.pop() if len(degrees) == 1 else None

    def is_symmetric(self: Graph) -> bool:
        for u, row in enumerate(self.rows):
            if row >> u & 1:
                return False

            if any(not self.rows[v] >> u & 1 for v in iter_bits(row)):
                return False

        return True

    def induced_subgraph(self: Graph, vertices: Sequence[int]) -> Graph:
        """Return the subgraph induced on `vertices`, relabeled 0..len-1 in order."""
        position = {vertex: index for index, vertex in enumerate(vertices)}
        rows = []

        for vertex in vertices:
            row = 0

            for neighbor in iter_bits(self.rows[vertex]):
                if neighbor in position:
                    row |= 1 << position[neighbor]

            rows.append(row)

        return Graph(tuple(rows))


def complete_graph(order: int) -> Graph:
    full = (1 << order) - 1
    return Graph(tuple(full & ~(1 << u) for u in range(order)))


def cycle_graph(order: int) -> Graph:
    if order < 3:  # noqa: PLR2004
        message = f"a cycle needs at least 3 vertices, got {order}"
        raise InvalidGraphError(message)

    return Graph.from_edges(order, ((u, (u + 1) % order) for u in range(order)))


def mobius_ladder(order: int) -> Graph:
    """Return the Möbius ladder: an `order`-cycle plus its order/2 diameters."""
    if order % 2 or order < MINIMUM_LADDER_ORDER:
        message = f"Möbius ladder order must be even and at least 6, got {order}"
        raise InvalidGraphError(message)

    half = order // 2
    rim = ((u, (u + 1) % order) for u in range(order))
    rungs = ((u, u + half) for u in range(half))
    return Graph.from_edges(order, [*rim, *rungs])


def prism(half: int) -> Graph:
    """Return the circular ladder: two `half`-cycles joined by a perfect matching."""
    if half < MINIMUM_PRISM_HALF:
        message = f"prism needs cycles of length at least 3, got {half}"
        raise InvalidGraphError(message)

    outer = ((u, (u + 1) % half) for u in range(half))
    inner = ((half + u, half + (u + 1) % half) for u in range(half))
    spokes = ((u, half + u) for u in range(half))
    return Graph.from_edges(2 * half, [*outer, *inner, *spokes])
