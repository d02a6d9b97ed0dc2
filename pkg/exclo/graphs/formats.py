"""Read and write graphs as DIMACS edge files and JSON documents."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING
from typing import Any

from exclo.errors import GraphFormatError
from exclo.errors import InvalidGraphError
from exclo.graphs.bitgraph import Graph
from exclo.graphs.exclusivity import Event
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.scenario import format_fraction

if TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Mapping


def write_dimacs(g: Graph, comments: Iterable[str] = ()) -> str:
    """Serialize a graph in the DIMACS edge format (1-indexed vertices).

    :param g: the graph
    :param comments: lines emitted as "c ..." before the problem line
    :return: the document text
    """
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p edge {g.order} {g.edge_count()}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Graph:
    order: int | None = None
    declared_edges = 0
    edges: list[tuple[int, int]] = []

    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()

        if not tokens or tokens[0] == "c":
            continue

        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):  # noqa: PLR2004
                message = f"line {number}: expected 'p edge V E', got {line!r}"
                raise GraphFormatError(message)

            order, declared_edges = _integer(tokens[2], number), _integer(
                tokens[3],
                number,
            )
        elif tokens[0] == "e":
            if order is None:
                message = f"line {number}: edge before the problem line"
                raise GraphFormatError(message)

            if len(tokens) != 3:  # noqa: PLR2004
                message = f"line {number}: expected 'e u v', got {line!r}"
                raise GraphFormatError(message)

            edges.append(
                (_integer(tokens[1], number) - 1, _integer(tokens[2], number) - 1),
            )
        else:
            message = f"line {number}: unknown record type {tokens[0]!r}"
            raise GraphFormatError(message)

    if order is None:
        message = "missing problem line"
        raise GraphFormatError(message)

    try:
        graph = Graph.from_edges(order, edges)
    except InvalidGraphError as error:
        raise GraphFormatError(str(error)) from error

    if graph.edge_count() != declared_edges:
        message = (
            f"problem line declares {declared_edges} edges, "
            f"found {graph.edge_count()} distinct edges"
        )
        raise GraphFormatError(message)

    return graph


def _integer(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError as error:
        message = f"line {number}: {token!r} is not an integer"
        raise GraphFormatError(message) from error


def _vertex_to_json(vertex: Any) -> dict[str, Any]:
    if isinstance(vertex, Event):
        return {"context": vertex.context, "outcome": vertex.outcome}

    return {"components": list(vertex)}


def _vertex_from_json(data: Mapping[str, Any]) -> Any:
    if "components" in data:
        return tuple(int(component) for component in data["components"])

    return Event(int(data["context"]), str(data["outcome"]))


def graph_to_json(g: ExclusivityGraph) -> dict[str, Any]:
    return {
        "description": g.description,
        "vertices": [
            {**_vertex_to_json(vertex), "weight": format_fraction(weight)}
            for vertex, weight in zip(g.vertices, g.weights)
        ],
        "edges": [list(edge) for edge in g.edges()],
    }


def graph_from_json(data: Mapping[str, Any]) -> ExclusivityGraph:
    """Rebuild a weighted exclusivity graph from its JSON document.

    Provenance (the source correlation and product factors) is not part of the
    document and is left empty.
    """
    try:
        entries = list(data["vertices"])
        vertices = tuple(_vertex_from_json(entry) for entry in entries)
        weights = tuple(Fraction(entry["weight"]) for entry in entries)
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as error:
        message = f"malformed graph document: {error}"
        raise GraphFormatError(message) from error

    try:
        graph = Graph.from_edges(len(vertices), edges)
    except InvalidGraphError as error:
        raise GraphFormatError(str(error)) from error

    return ExclusivityGraph(
        rows=graph.rows,
        vertices=vertices,
        weights=weights,
        description=str(data.get("description", "")),
    )
