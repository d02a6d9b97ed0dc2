from __future__ import annotations

import random

import pytest

from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.exclusivity import pr_box_graph
from exclo.product import ColoredMultigraph
from exclo.product import multicolor_product
from exclo.product import or_product


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def square_box_graph() -> ExclusivityGraph:
    return pr_box_graph(4)


@pytest.fixture
def pentagon_box_graph() -> ExclusivityGraph:
    return pr_box_graph(5)


@pytest.fixture
def two_square_boxes() -> ExclusivityGraph:
    return or_product([pr_box_graph(4)] * 2)


@pytest.fixture
def two_hexagon_boxes() -> ExclusivityGraph:
    return or_product([pr_box_graph(6)] * 2)


@pytest.fixture
def colored_square_boxes() -> ColoredMultigraph:
    return multicolor_product([pr_box_graph(4)] * 2)
