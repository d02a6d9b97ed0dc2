from __future__ import annotations

import random

import networkx as nx
import pytest

from exclo.errors import InvalidCycleError
from exclo.errors import IsomorphismScopeError
from exclo.graphs.bitgraph import Graph
from exclo.graphs.bitgraph import complete_graph
from exclo.graphs.bitgraph import cycle_graph
from exclo.graphs.bitgraph import mobius_ladder
from exclo.graphs.bitgraph import prism
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.exclusivity import build_exclusivity_graph
from exclo.graphs.exclusivity import pr_box_graph
from exclo.graphs.structure import automorphisms
from exclo.graphs.structure import bipartition
from exclo.graphs.structure import find_triangle
from exclo.graphs.structure import has_triangle
from exclo.graphs.structure import is_bipartite
from exclo.graphs.structure import is_isomorphic
from exclo.graphs.structure import is_odd_cycle_in
from exclo.graphs.structure import odd_girth
from exclo.graphs.structure import require_odd_cycle
from exclo.graphs.structure import shortest_odd_cycle
from exclo.scenario import enumerate_pr_boxes
from tests.oracles import odd_girth_by_walks
from tests.oracles import random_graph
from tests.oracles import to_networkx


@pytest.mark.parametrize("n", range(4, 11))
def test_pr_box_graph_family(n: int) -> None:
    # Given every PR box of the n-cycle scenario
    reference = mobius_ladder(2 * n) if n % 2 == 0 else prism(n)

    for box in enumerate_pr_boxes(n):
        # When building its exclusivity graph
        g = build_exclusivity_graph(box)

        # Then it is the Möbius ladder (even n) or the prism (odd n).
        assert is_isomorphic(g, reference)


def test_isomorphism_agrees_with_networkx(square_box_graph: ExclusivityGraph) -> None:
    for other in (mobius_ladder(8), prism(4), cycle_graph(8)):
        expected = nx.is_isomorphic(to_networkx(square_box_graph), to_networkx(other))
        assert is_isomorphic(square_box_graph, other) == expected


def test_mobius_ladder_is_not_prism() -> None:
    # Same order, size and degrees, different odd girth.
    assert not is_isomorphic(mobius_ladder(8), prism(4))
    assert not is_isomorphic(cycle_graph(5), complete_graph(5))


def test_automorphism_counts() -> None:
    assert len(automorphisms(cycle_graph(5))) == 10
    assert len(automorphisms(complete_graph(4))) == 24
    assert len(automorphisms(Graph.from_edges(3, [(0, 1)]))) == 2


def test_automorphisms_preserve_edges(pentagon_box_graph: ExclusivityGraph) -> None:
    g = pentagon_box_graph

    for permutation in automorphisms(g):
        assert all(g.has_edge(permutation[u], permutation[v]) for u, v in g.edges())


def test_isomorphism_scope() -> None:
    with pytest.raises(IsomorphismScopeError):
        automorphisms(Graph.from_edges(65, []))


@pytest.mark.parametrize("n", range(4, 13))
def test_pr_box_graph_is_triangle_free(n: int) -> None:
    assert not has_triangle(pr_box_graph(n))


@pytest.mark.parametrize("n", range(4, 13))
def test_pr_box_odd_girth(n: int) -> None:
    # Even n closes its shortest odd cycle with n+1 events, odd n with n.
    expected = n + 1 if n % 2 == 0 else n

    for box in enumerate_pr_boxes(n):
        assert odd_girth(build_exclusivity_graph(box)) == expected


@pytest.mark.parametrize("n", range(4, 13))
def test_pentagon_only_for_small_cycles(n: int) -> None:
    assert (odd_girth(pr_box_graph(n)) == 5) == (n in (4, 5))


def test_find_triangle() -> None:
    assert find_triangle(complete_graph(4)).vertices == (0, 1, 2)
    assert find_triangle(cycle_graph(4)) is None


def test_shortest_odd_cycle_witness(square_box_graph: ExclusivityGraph) -> None:
    witness = shortest_odd_cycle(square_box_graph)

    assert witness is not None
    assert witness.length == 5
    assert is_odd_cycle_in(square_box_graph, witness.vertices)
    assert len(witness.edges()) == 5


def test_bipartite_graph_has_no_odd_cycle() -> None:
    assert shortest_odd_cycle(cycle_graph(6)) is None
    assert odd_girth(Graph.from_edges(3, [])) is None


def test_odd_girth_against_walks(rng: random.Random) -> None:
    # Given 200 random graphs on at most 10 vertices
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 10), rng.choice([0.2, 0.3, 0.5]))

        # When computing the odd girth
        witness = shortest_odd_cycle(g)

        # Then it matches the shortest odd closed walk.
        assert (None if witness is None else witness.length) == odd_girth_by_walks(g)
        assert witness is None or is_odd_cycle_in(g, witness.vertices)


def test_bipartition() -> None:
    # Given a 6-cycle and an isolated vertex
    g = Graph.from_edges(7, [(u, (u + 1) % 6) for u in range(6)])

    # When two-coloring it
    sides = bipartition(g)

    # Then sides alternate and component roots are on side 0.
    assert sides == (0, 1, 0, 1, 0, 1, 0)
    assert bipartition(cycle_graph(5)) is None


def test_bipartite_agrees_with_networkx(rng: random.Random) -> None:
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 12), 0.25)
        assert is_bipartite(g) == nx.is_bipartite(to_networkx(g))


def test_odd_cycle_checks() -> None:
    g = cycle_graph(5)

    assert is_odd_cycle_in(g, [0, 1, 2, 3, 4])
    assert not is_odd_cycle_in(g, [0, 1, 2])
    assert not is_odd_cycle_in(g, [0, 1, 2, 3])
    assert not is_odd_cycle_in(g, [0, 1, 0, 1, 0])
    assert not is_odd_cycle_in(g, [0, 1, 2, 3, 9])

    with pytest.raises(InvalidCycleError):
        require_odd_cycle(g, [0, 1, 2])
