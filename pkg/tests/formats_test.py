from __future__ import annotations

from fractions import Fraction

import pytest

from exclo.errors import GraphFormatError
from exclo.graphs.exclusivity import Event
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.formats import graph_from_json
from exclo.graphs.formats import graph_to_json
from exclo.graphs.formats import read_dimacs
from exclo.graphs.formats import write_dimacs


def test_write_dimacs(square_box_graph: ExclusivityGraph) -> None:
    # Given the 4-cycle PR-box graph
    # When writing it as DIMACS
    text = write_dimacs(square_box_graph, comments=["square box"])
    lines = text.splitlines()

    # Then the header and 1-indexed edges are emitted.
    assert lines[0] == "c square box"
    assert lines[1] == "p edge 8 12"
    assert lines[2] == "e 1 2"
    assert len(lines) == 14


def test_read_dimacs(square_box_graph: ExclusivityGraph) -> None:
    graph = read_dimacs(write_dimacs(square_box_graph))

    assert graph.rows == square_box_graph.rows


def test_read_dimacs_col_problem_line() -> None:
    graph = read_dimacs("c triangle\np col 3 3\ne 1 2\ne 2 3\ne 1 3\n")

    assert graph.edge_count() == 3


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",
        "p edge 3\n",
        "p edge 3 1\ne 1 x\n",
        "p edge 3 1\ne 1 4\n",
        "p edge 3 2\ne 1 2\n",
        "p edge 3 1\nq 1 2\n",
        "c nothing\n",
    ],
)
def test_read_dimacs_malformed(text: str) -> None:
    with pytest.raises(GraphFormatError):
        read_dimacs(text)


def test_graph_json(square_box_graph: ExclusivityGraph) -> None:
    # Given the 4-cycle PR-box graph
    # When converting it to JSON and back
    data = graph_to_json(square_box_graph)
    graph = graph_from_json(data)

    # Then events, weights and edges survive.
    assert data["vertices"][0] == {"context": 0, "outcome": "++", "weight": "1/2"}
    assert graph.rows == square_box_graph.rows
    assert graph.vertices[6] == Event(3, "+-")
    assert graph.weights[0] == Fraction(1, 2)


def test_product_graph_json(two_square_boxes: ExclusivityGraph) -> None:
    data = graph_to_json(two_square_boxes)

    assert data["vertices"][9] == {"components": [1, 1], "weight": "1/4"}
    assert graph_from_json(data).vertices[9] == (1, 1)


def test_graph_json_malformed() -> None:
    with pytest.raises(GraphFormatError):
        graph_from_json({"vertices": [{"weight": "1/2"}], "edges": []})

    with pytest.raises(GraphFormatError):
        graph_from_json(
            {
                "vertices": [{"components": [0], "weight": "1"}],
                "edges": [[0, 3]],
            },
        )
