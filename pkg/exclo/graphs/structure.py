"""Structural queries on bitset graphs.

The checks here back the structural theorems about PR-box exclusivity graphs:
isomorphism to the Möbius ladder and prism families, triangle-freeness, the
length of the shortest odd cycle and bipartiteness of color classes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from logging import getLogger
from typing import TYPE_CHECKING

from exclo.bitset import iter_bits
from exclo.bitset import lowest_bit
from exclo.constants import ISOMORPHISM_SCOPE
from exclo.errors import InvalidCycleError
from exclo.errors import IsomorphismScopeError

if TYPE_CHECKING:
    from collections.abc import Iterator
    from collections.abc import Sequence

    from exclo.graphs.bitgraph import Graph

logger = getLogger(__name__)

MINIMUM_CYCLE_LENGTH: int = 3


@dataclass(frozen=True)
class OddCycleWitness:
    """Distinct vertices v_0..v_{L-1}, L odd, each adjacent to the next (cyclically)."""

    vertices: tuple[int, ...]

    @property
    def length(self: OddCycleWitness) -> int:
        return len(self.vertices)

    def edges(self: OddCycleWitness) -> list[tuple[int, int]]:
        return [
            (self.vertices[i], self.vertices[(i + 1) % self.length])
            for i in range(self.length)
        ]


def is_odd_cycle_in(g: Graph, vertices: Sequence[int]) -> bool:
    length = len(vertices)

    if length < MINIMUM_CYCLE_LENGTH or length % 2 == 0:
        return False

    if len(set(vertices)) != length:
        return False

    if any(not 0 <= v < g.order for v in vertices):
        return False

    return all(
        g.has_edge(vertices[i], vertices[(i + 1) % length]) for i in range(length)
    )


def require_odd_cycle(g: Graph, vertices: Sequence[int]) -> OddCycleWitness:
    if not is_odd_cycle_in(g, vertices):
        message = f"{list(vertices)} is not an odd cycle of the graph"
        raise InvalidCycleError(message)

    return OddCycleWitness(tuple(vertices))


def find_triangle(g: Graph) -> OddCycleWitness | None:
    for u, row in enumerate(g.rows):
        for offset in iter_bits(row >> (u + 1)):
            v = u + 1 + offset
            common = row & g.rows[v]

            if common:
                return OddCycleWitness((u, v, lowest_bit(common)))

    return None


def has_triangle(g: Graph) -> bool:
    return find_triangle(g) is not None


def _path_to_root(g: Graph, layers: list[int], start: int, depth: int) -> list[int]:
    path = [start]
    current = start

    for level in range(depth - 1, -1, -1):
        current = lowest_bit(g.rows[current] & layers[level])
        path.append(current)

    return path


def _cycle_from_layers(g: Graph, layers: list[int], x: int, y: int) -> list[int]:
    depth = len(layers) - 1
    from_x = _path_to_root(g, layers, x, depth)
    from_y = _path_to_root(g, layers, y, depth)

    # Parents are chosen deterministically, so once the paths meet they merge.
    meet = next(i for i in range(depth + 1) if from_x[i] == from_y[i])
    return from_x[: meet + 1] + from_y[:meet][::-1]


def shortest_odd_cycle(g: Graph) -> OddCycleWitness | None:
    """Return a shortest odd cycle, or None when the graph is bipartite.

    Breadth-first layering from every root: an edge inside layer d closes an
    odd walk of length 2d+1 through the root, and the minimum over all roots
    is the odd girth. Roots, layers and parents are scanned in increasing
    vertex order and only strictly shorter cycles replace the incumbent, so
    the witness is reproducible.
    """
    best: list[int] | None = None

    for root in range(g.order):
        layers = [1 << root]
        visited = 1 << root

        while best is None or 2 * (len(layers) - 1) + 1 < len(best):
            frontier = layers[-1]
            chord = next(
                (
                    (x, lowest_bit(g.rows[x] & frontier))
                    for x in iter_bits(frontier)
                    if g.rows[x] & frontier
                ),
                None,
            )

            if chord is not None:
                cycle = _cycle_from_layers(g, layers, *chord)

                if best is None or len(cycle) < len(best):
                    best = cycle

                break

            reached = 0

            for x in iter_bits(frontier):
                reached |= g.rows[x]

            reached &= ~visited

            if not reached:
                break

            visited |= reached
            layers.append(reached)

        if best is not None and len(best) == MINIMUM_CYCLE_LENGTH:
            break

    return None if best is None else OddCycleWitness(tuple(best))


def odd_girth(g: Graph) -> int | None:
    witness = shortest_odd_cycle(g)
    return None if witness is None else witness.length


def bipartition(g: Graph) -> tuple[int, ...] | None:
    """Two-color the graph, or return None if it has an odd cycle.

    The lowest-index vertex of every connected component gets side 0.
    """
    side: list[int | None] = [None] * g.order

    for root in range(g.order):
        if side[root] is not None:
            continue

        side[root] = 0
        queue = deque([root])

        while queue:
            u = queue.popleft()

            for v in iter_bits(g.rows[u]):
                if side[v] is None:
                    side[v] = 1 - side[u]
                    queue.append(v)
                elif side[v] == side[u]:
                    return None

    return tuple(s or 0 for s in side)


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def _check_scope(*graphs: Graph) -> None:
    for graph in graphs:
        if graph.order > ISOMORPHISM_SCOPE:
            message = (
                f"isomorphism scope exceeded: {graph.order} vertices "
                f"(limit {ISOMORPHISM_SCOPE})"
            )
            raise IsomorphismScopeError(message)


def _signatures(g: Graph) -> list[tuple[int, tuple[int, ...]]]:
    degrees = g.degrees()
    return [
        (degrees[u], tuple(sorted(degrees[v] for v in iter_bits(g.rows[u]))))
        for u in range(g.order)
    ]


def _search_order(g: Graph) -> list[int]:
    """Order vertices so every vertex but a component's first follows a neighbor."""
    degrees = g.degrees()
    order: list[int] = []
    seen = 0

    for start in sorted(range(g.order), key=lambda u: (-degrees[u], u)):
        if seen >> start & 1:
            continue

        seen |= 1 << start
        queue = deque([start])

        while queue:
            u = queue.popleft()
            order.append(u)

            for v in iter_bits(g.rows[u] & ~seen):
                seen |= 1 << v
                queue.append(v)

    return order


def _isomorphisms(g: Graph, h: Graph) -> Iterator[tuple[int, ...]]:
    """Yield every adjacency-preserving bijection from g's vertices onto h's."""
    if g.order != h.order or g.edge_count() != h.edge_count():
        return

    g_signatures = _signatures(g)
    h_signatures = _signatures(h)

    if sorted(g_signatures) != sorted(h_signatures):
        return

    order = _search_order(g)
    mapping: list[int] = [-1] * g.order
    used = 0

    def extend(position: int) -> Iterator[tuple[int, ...]]:
        nonlocal used

        if position == len(order):
            yield tuple(mapping)
            return

        u = order[position]
        mapped_neighbors = 0
        mapped_vertices = 0

        for earlier in order[:position]:
            image_bit = 1 << mapping[earlier]
            mapped_vertices |= image_bit

            if g.rows[u] >> earlier & 1:
                mapped_neighbors |= image_bit

        for w in range(h.order):
            if used >> w & 1 or h_signatures[w] != g_signatures[u]:
                continue

            if h.rows[w] & mapped_vertices != mapped_neighbors:
                continue

            mapping[u] = w
            used |= 1 << w
            yield from extend(position + 1)
            used &= ~(1 << w)
            mapping[u] = -1

    yield from extend(0)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    _check_scope(g, h)
    return next(_isomorphisms(g, h), None) is not None


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """Return every automorphism of g as a permutation tuple (image of each vertex)."""
    _check_scope(g)
    found = list(_isomorphisms(g, g))
    logger.debug("%d automorphisms on %d vertices", len(found), g.order)
    return found
