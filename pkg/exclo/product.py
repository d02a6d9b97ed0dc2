"""OR (co-normal) products, multicolor products and their monochromatic projections.

Product vertices are k-tuples of factor vertex indices, numbered in
lexicographic order: the tuple (u_1, ..., u_k) has index sum(u_i * stride_i)
where stride_i is the product of the orders of the factors after i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from logging import getLogger
from math import prod
from typing import TYPE_CHECKING
from typing import Any

from exclo.bitset import iter_bits
from exclo.bitset import lowest_bit
from exclo.bitset import repeat_block
from exclo.constants import vertex_cap as configured_vertex_cap
from exclo.errors import InvalidColorError
from exclo.errors import InvalidCycleError
from exclo.errors import InvalidGraphError
from exclo.errors import ProductTooLargeError
from exclo.graphs.bitgraph import Graph
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.structure import OddCycleWitness
from exclo.graphs.structure import require_odd_cycle

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = getLogger(__name__)


@dataclass(frozen=True)
class ColoredMultigraph:
    """The multicolor product of k factor graphs.

    Layer i (0-based storage, color i+1 in the public API) holds exactly the
    edges whose i-th components are adjacent in factor i. Layers may overlap.
    """

    factors: tuple[ExclusivityGraph, ...]
    layers: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]

    @property
    def k(self: ColoredMultigraph) -> int:
        return len(self.factors)

    @property
    def order(self: ColoredMultigraph) -> int:
        return len(self.weights)

    @property
    def sizes(self: ColoredMultigraph) -> tuple[int, ...]:
        return tuple(factor.order for factor in self.factors)

    @property
    def strides(self: ColoredMultigraph) -> tuple[int, ...]:
        return _strides(self.sizes)

    @property
    def vertices(self: ColoredMultigraph) -> list[tuple[int, ...]]:
        return list(cartesian(*(range(size) for size in self.sizes)))

    @property
    def description(self: ColoredMultigraph) -> str:
        return _describe(self.factors)

    def component(self: ColoredMultigraph, vertex: int, color: int) -> int:
        index = _check_color(self.k, color)
        return vertex // self.strides[index] % self.sizes[index]

    def layer_edge(self: ColoredMultigraph, u: int, v: int, color: int) -> bool:
        return bool(self.layers[_check_color(self.k, color)][u] >> v & 1)


def _strides(sizes: Sequence[int]) -> tuple[int, ...]:
    return tuple(prod(sizes[i + 1 :]) for i in range(len(sizes)))


def _describe(factors: Sequence[ExclusivityGraph]) -> str:
    return " x ".join(
        factor.description or f"{factor.order}-vertex graph" for factor in factors
    )


def _check_color(k: int, color: int) -> int:
    """Return the 0-based layer index of a 1-based color."""
    if not 1 <= color <= k:
        message = f"color {color} out of range 1..{k}"
        raise InvalidColorError(message)

    return color - 1


def _check_size(
    factors: Sequence[ExclusivityGraph],
    vertex_cap: int | None,
) -> int:
    if not factors:
        message = "a product needs at least one factor"
        raise InvalidGraphError(message)

    required = prod(factor.order for factor in factors)
    allowed = configured_vertex_cap() if vertex_cap is None else vertex_cap

    if required > allowed:
        raise ProductTooLargeError(required, allowed)

    return required


def _product_weights(factors: Sequence[ExclusivityGraph]) -> tuple[Fraction, ...]:
    return tuple(
        prod(combination, start=Fraction(1))
        for combination in cartesian(*(factor.weights for factor in factors))
    )


def fiber_block(sizes: Sequence[int], index: int, value: int) -> int:
    """Return the mask of all product vertices whose `index`-th component is `value`."""
    stride = prod(sizes[index + 1 :])
    period = sizes[index] * stride
    total = prod(sizes)
    block = ((1 << stride) - 1) << (value * stride)
    return repeat_block(block, period, total // period)


def _lifted_rows(sizes: Sequence[int], index: int, factor: Graph) -> list[int]:
    """Row of factor vertex a lifted to the product: the union of fibers over N(a)."""
    fibers = [fiber_block(sizes, index, value) for value in range(factor.order)]
    lifted = []

    for row in factor.rows:
        mask = 0

        for neighbor in iter_bits(row):
            mask |= fibers[neighbor]

        lifted.append(mask)

    return lifted


def multicolor_product(
    factors: Sequence[ExclusivityGraph],
    vertex_cap: int | None = None,
) -> ColoredMultigraph:
    """Build the k-layer multicolor product of the factors.

    :param factors: the factor graphs, color i+1 belonging to factors[i]
    :param vertex_cap: override for the materialization cap
    :return: the colored multigraph
    """
    order = _check_size(factors, vertex_cap)
    sizes = [factor.order for factor in factors]
    strides = _strides(sizes)
    layers = []

    for index, factor in enumerate(factors):
        lifted = _lifted_rows(sizes, index, factor)
        stride = strides[index]
        size = sizes[index]
        # Rows are shared int objects; a layer costs one pointer per vertex.
        layers.append(tuple(lifted[u // stride % size] for u in range(order)))

    logger.debug("multicolor product of %d factors, %d vertices", len(sizes), order)
    return ColoredMultigraph(
        factors=tuple(factors),
        layers=tuple(layers),
        weights=_product_weights(factors),
    )


def flatten(g: ColoredMultigraph) -> ExclusivityGraph:
    rows = [0] * g.order

    for layer in g.layers:
        for u, row in enumerate(layer):
            rows[u] |= row

    return ExclusivityGraph(
        rows=tuple(rows),
        vertices=tuple(g.vertices),
        weights=g.weights,
        factors=g.factors,
        description=f"OR product {g.description}",
    )


def _binary_or_product(a: Graph, b: Graph) -> list[int]:
    width = b.order
    block = (1 << width) - 1
    rows = []

    for row_a in a.rows:
        blown_up = 0

        for x in iter_bits(row_a):
            blown_up |= block << (x * width)

        rows.extend(blown_up | repeat_block(row_b, width, a.order) for row_b in b.rows)

    return rows


def or_product(
    factors: Sequence[ExclusivityGraph],
    vertex_cap: int | None = None,
) -> ExclusivityGraph:
    """Build the OR (co-normal) product: adjacent when any coordinate pair is adjacent.

    The product is folded left as a sequence of binary products, independently
    of the layered construction used by multicolor_product.

    :param factors: the factor graphs
    :param vertex_cap: override for the materialization cap
    :return: the weighted product graph
    """
    _check_size(factors, vertex_cap)
    accumulated = Graph(factors[0].rows)

    for factor in factors[1:]:
        accumulated = Graph(tuple(_binary_or_product(accumulated, factor)))

    return ExclusivityGraph(
        rows=accumulated.rows,
        vertices=tuple(cartesian(*(range(factor.order) for factor in factors))),
        weights=_product_weights(factors),
        factors=tuple(factors),
        description=f"OR product {_describe(factors)}",
    )


def projection(g: ColoredMultigraph, color: int) -> Graph:
    return Graph(g.layers[_check_color(g.k, color)])


def tuple_index(g: ColoredMultigraph, components: Sequence[int]) -> int:
    if len(components) != g.k or any(
        not 0 <= value < size for value, size in zip(components, g.sizes)
    ):
        message = f"{tuple(components)} is not a vertex of the product {g.sizes}"
        raise InvalidGraphError(message)

    return sum(value * stride for value, stride in zip(components, g.strides))


def tuple_vertex(g: ColoredMultigraph, index: int) -> tuple[int, ...]:
    if not 0 <= index < g.order:
        message = f"vertex {index} out of range for {g.order} product vertices"
        raise InvalidGraphError(message)

    return tuple(
        index // stride % size for stride, size in zip(g.strides, g.sizes)
    )


def fiber_mask(g: ColoredMultigraph, color: int, value: int) -> int:
    index = _check_color(g.k, color)

    if not 0 <= value < g.sizes[index]:
        message = f"factor {color} has no vertex {value}"
        raise InvalidGraphError(message)

    return fiber_block(g.sizes, index, value)


def fiber(g: ColoredMultigraph, color: int, value: int) -> frozenset[tuple[int, ...]]:
    """Return every tuple vertex whose `color`-th component is `value`."""
    return frozenset(
        tuple_vertex(g, vertex) for vertex in iter_bits(fiber_mask(g, color, value))
    )


def default_representatives(g: ColoredMultigraph, color: int) -> list[int]:
    """Pick the lowest-index product vertex of every fiber of a color."""
    index = _check_color(g.k, color)
    return [
        lowest_bit(fiber_block(g.sizes, index, value))
        for value in range(g.sizes[index])
    ]


def representative_subgraph(
    g: ColoredMultigraph,
    color: int,
    representatives: Sequence[int] | None = None,
) -> Graph:
    """Induce a color's projection on one representative per fiber.

    representatives[v] must lie in the fiber over factor vertex v. The result is
    relabeled so that vertex v stands for that fiber and is a copy of the factor.
    """
    index = _check_color(g.k, color)
    chosen = (
        default_representatives(g, color)
        if representatives is None
        else list(representatives)
    )

    if len(chosen) != g.sizes[index] or any(
        g.component(vertex, color) != value for value, vertex in enumerate(chosen)
    ):
        message = f"representatives {chosen} do not pick one vertex per fiber"
        raise InvalidGraphError(message)

    return projection(g, color).induced_subgraph(chosen)


def shrink_odd_cycle(
    g: ColoredMultigraph,
    color: int,
    cycle: OddCycleWitness | Sequence[int],
) -> OddCycleWitness:
    """Turn an odd cycle of a monochromatic projection into one of the factor.

    While two cycle vertices share a fiber, the chord between them splits the
    cycle into two closed walks of which exactly one is odd; that one is kept.
    The lexicographically first same-fiber pair is split each round. Once all
    fibers differ the cycle is projected onto its `color`-th components.

    :param g: the multicolor product
    :param color: the 1-based color of the projection the cycle lives in
    :param cycle: an odd cycle of projection(g, color)
    :return: an odd cycle of the factor, no longer than the input
    """
    vertices = cycle.vertices if isinstance(cycle, OddCycleWitness) else cycle
    current = list(require_odd_cycle(projection(g, color), vertices).vertices)

    while True:
        components = [g.component(vertex, color) for vertex in current]
        pair = _first_shared_fiber(components)

        if pair is None:
            break

        first, second = pair
        inner = current[first:second]
        outer = current[second:] + current[:first]
        current = inner if len(inner) % 2 else outer
        logger.debug("shrunk odd cycle to length %d", len(current))

    projected = [g.component(vertex, color) for vertex in current]
    factor = g.factors[color - 1]

    try:
        return require_odd_cycle(factor, projected)
    except InvalidCycleError as error:
        message = f"projected walk {projected} is not an odd cycle of factor {color}"
        raise InvalidCycleError(message) from error


def _first_shared_fiber(components: Sequence[int]) -> tuple[int, int] | None:
    for first, value in enumerate(components):
        for second in range(first + 1, len(components)):
            if components[second] == value:
                return first, second

    return None


def multigraph_to_json(g: ColoredMultigraph) -> dict[str, Any]:
    return {
        "k": g.k,
        "factors": [
            {
                "description": factor.description,
                "order": factor.order,
                "edges": [list(edge) for edge in factor.edges()],
            }
            for factor in g.factors
        ],
        "order": g.order,
        "layers": [
            [list(edge) for edge in Graph(layer).edges()] for layer in g.layers
        ],
    }
