from __future__ import annotations

import random
from fractions import Fraction

import pytest

from exclo.clique import Clique
from exclo.clique import FiberSearch
from exclo.clique import activation_search
from exclo.clique import build_k5_two_c5
from exclo.clique import clique_certificate
from exclo.clique import describe_host
from exclo.clique import double_clique
from exclo.clique import find_clique_of_size
from exclo.clique import find_violation
from exclo.clique import is_extendable
from exclo.clique import max_clique
from exclo.clique import max_weight_clique
from exclo.clique import pr_box_clique_number
from exclo.clique import trivial_clique
from exclo.clique import validate_clique
from exclo.clique import vertex_events
from exclo.clique import violation_edge_budget
from exclo.clique import violation_threshold
from exclo.errors import InvalidCliqueError
from exclo.errors import InvalidColorError
from exclo.errors import InvalidCycleError
from exclo.errors import NonEdgeError
from exclo.errors import OutOfRangeError
from exclo.errors import SearchBudgetExceededError
from exclo.graphs.bitgraph import Graph
from exclo.graphs.bitgraph import complete_graph
from exclo.graphs.bitgraph import cycle_graph
from exclo.graphs.exclusivity import Event
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.exclusivity import pr_box_graph
from exclo.graphs.structure import shortest_odd_cycle
from exclo.product import ColoredMultigraph
from exclo.product import multicolor_product
from exclo.product import or_product
from tests.oracles import clique_number
from tests.oracles import random_graph


def test_max_clique_against_networkx(rng: random.Random) -> None:
    # Given 200 random graphs on at most 20 vertices
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 20), rng.choice([0.3, 0.5, 0.7, 0.9]))

        # When solving for the clique number
        omega, clique = max_clique(g)

        # Then it matches exhaustive enumeration and the witness is a clique.
        assert omega == clique_number(g)
        assert validate_clique(g, clique.vertices).size == omega


def test_max_clique_small_graphs() -> None:
    assert max_clique(Graph(()))[0] == 0
    assert max_clique(Graph.from_edges(3, []))[0] == 1
    assert max_clique(complete_graph(6))[0] == 6
    assert max_clique(cycle_graph(7))[0] == 2


def test_single_copy_is_triangle_free(square_box_graph: ExclusivityGraph) -> None:
    omega, clique = max_clique(square_box_graph)

    assert omega == 2
    assert clique.weight == 1


@pytest.mark.parametrize("n", range(4, 13))
def test_single_copy_never_violates(n: int) -> None:
    assert find_violation(pr_box_graph(n)) is None


@pytest.mark.parametrize("n", [4, 5])
def test_two_copies_contain_k5(n: int) -> None:
    # Given two copies of a 4- or 5-cycle PR box
    host = or_product([pr_box_graph(n)] * 2)

    # When solving
    omega, clique = max_clique(host)
    certificate = find_violation(host)

    # Then a K_5 of weight 5/4 is found and nothing larger.
    assert omega == 5
    assert clique.weight == Fraction(5, 4)
    assert certificate is not None
    assert certificate.excess == Fraction(1, 4)
    assert certificate.clique.size == 5


@pytest.mark.parametrize("n", range(6, 9))
def test_two_copies_clique_number_four(n: int) -> None:
    omega, _ = pr_box_clique_number(n, 2)

    assert omega == 4
    assert find_violation(or_product([pr_box_graph(n)] * 2)) is None


@pytest.mark.parametrize("size", [5, 6, 7])
def test_two_hexagon_boxes_have_no_large_cliques(
    two_hexagon_boxes: ExclusivityGraph,
    size: int,
) -> None:
    assert find_clique_of_size(two_hexagon_boxes, size) is None


def test_find_clique_of_size(two_square_boxes: ExclusivityGraph) -> None:
    for size in range(1, 6):
        clique = find_clique_of_size(two_square_boxes, size)

        assert clique is not None
        assert clique.size == size

    assert find_clique_of_size(two_square_boxes, 6) is None
    assert find_clique_of_size(two_square_boxes, 65) is None

    with pytest.raises(InvalidCliqueError):
        find_clique_of_size(two_square_boxes, 0)


def test_parallel_search_matches_sequential(two_square_boxes: ExclusivityGraph) -> None:
    sequential = max_clique(two_square_boxes)
    parallel = max_clique(two_square_boxes, workers=2)

    assert parallel[0] == sequential[0] == 5
    assert find_clique_of_size(two_square_boxes, 5, workers=2) is not None
    assert find_clique_of_size(two_square_boxes, 6, workers=2) is None


def test_product_clique_number_against_networkx(rng: random.Random) -> None:
    # Given OR products of two or three small random factors
    for _ in range(40):
        copies = rng.choice([2, 3])
        largest = 4 if copies == 3 else 7
        factors = [
            ExclusivityGraph.from_graph(
                random_graph(rng, rng.randint(1, largest), rng.choice([0.3, 0.5, 0.8]))
            )
            for _ in range(copies)
        ]
        host = or_product(factors)

        # When solving factor by factor
        omega, clique = max_clique(host)

        # Then the clique number matches enumeration on the materialized host
        assert omega == clique_number(host)
        assert validate_clique(host, clique.vertices).size == omega
        assert find_clique_of_size(host, omega + 1) is None


def test_fiber_search_settles_every_pair() -> None:
    # Given two square boxes searched for a clique of five
    square = pr_box_graph(4)
    search = FiberSearch((square.rows, square.rows), 5)

    # When the first profile that extends is taken
    found = next(filter(None, map(search.extend, search.profiles())))

    # Then each pair of slots is adjacent in some coordinate
    assert len(found) == 5
    for index, first in enumerate(found):
        for second in found[index + 1 :]:
            assert any(square.has_edge(a, b) for a, b in zip(first, second))


def test_fiber_search_refutes_hexagon_boxes() -> None:
    hexagon = pr_box_graph(6)
    search = FiberSearch((hexagon.rows, hexagon.rows), 5)

    assert search.room == (2,)
    assert all(search.extend(profile) is None for profile in search.profiles())


def test_product_search_budget(two_hexagon_boxes: ExclusivityGraph) -> None:
    with pytest.raises(SearchBudgetExceededError):
        find_clique_of_size(two_hexagon_boxes, 5, node_budget=0)


@pytest.mark.parametrize("workers", [1, 2])
def test_parallel_search_budget(
    two_square_boxes: ExclusivityGraph,
    workers: int,
) -> None:
    # Given a refutation that needs more than ten nodes in total
    # When the nodes are split across workers
    # Then the search still stops at the budget
    with pytest.raises(SearchBudgetExceededError):
        find_clique_of_size(two_square_boxes, 6, node_budget=10, workers=workers)


def test_node_budget() -> None:
    with pytest.raises(SearchBudgetExceededError):
        find_clique_of_size(cycle_graph(5), 3, node_budget=0)


def test_validate_clique() -> None:
    g = cycle_graph(5)

    assert validate_clique(g, [1, 0]) == Clique((0, 1), Fraction(2))

    with pytest.raises(InvalidCliqueError):
        validate_clique(g, [0, 2])

    with pytest.raises(InvalidCliqueError):
        validate_clique(g, [0, 0])

    with pytest.raises(InvalidCliqueError):
        validate_clique(g, [0, 5])


def test_weighted_violation() -> None:
    # Given a path whose heavier edge weighs 13/12
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    g = ExclusivityGraph(
        rows=path.rows,
        vertices=(0, 1, 2),
        weights=(Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)),
    )

    # When looking for a violation
    heaviest = max_weight_clique(g)
    certificate = find_violation(g)

    # Then that edge is reported with excess 1/12.
    assert heaviest.vertices == (1, 2)
    assert certificate is not None
    assert certificate.excess == Fraction(1, 12)


def test_weighted_search_without_violation() -> None:
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    g = ExclusivityGraph(
        rows=path.rows,
        vertices=(0, 1, 2),
        weights=(Fraction(1, 2), Fraction(1, 3), Fraction(1, 2)),
    )

    assert max_weight_clique(g).weight == Fraction(5, 6)
    assert find_violation(g) is None


def test_violation_threshold() -> None:
    assert violation_threshold(Fraction(1, 2)) == 3
    assert violation_threshold(Fraction(1, 4)) == 5
    assert violation_threshold(Fraction(1, 8)) == 9
    assert violation_threshold(Fraction(1, 3)) == 4


def test_trivial_clique(colored_square_boxes: ColoredMultigraph) -> None:
    # Given one edge of each copy
    # When combining their endpoints
    clique = trivial_clique(colored_square_boxes, [(0, 1), (2, 3)])

    # Then the four tuples form a K_4 of weight 1 that cannot grow.
    assert clique.vertices == (2, 3, 10, 11)
    assert clique.weight == 1
    assert not is_extendable(colored_square_boxes, clique)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("n", range(4, 9))
def test_trivial_clique_not_extendable(k: int, n: int) -> None:
    g = multicolor_product([pr_box_graph(n)] * k)
    clique = trivial_clique(g, [(0, 1)] * k)

    assert clique.size == 2**k
    assert not is_extendable(g, clique)


def test_trivial_clique_in_three_hexagon_boxes() -> None:
    g = multicolor_product([pr_box_graph(6)] * 3)

    assert trivial_clique(g, [(0, 1)] * 3).size == 8


def test_trivial_clique_errors(colored_square_boxes: ColoredMultigraph) -> None:
    with pytest.raises(NonEdgeError):
        trivial_clique(colored_square_boxes, [(0, 1), (0, 2)])

    with pytest.raises(InvalidColorError):
        trivial_clique(colored_square_boxes, [(0, 1)])


def test_is_extendable_on_plain_graph() -> None:
    g = complete_graph(4)

    assert is_extendable(g, validate_clique(g, [0, 1, 2]))
    assert not is_extendable(g, validate_clique(g, [0, 1, 2, 3]))


def _pentagons(n: int) -> tuple[ColoredMultigraph, tuple[int, ...]]:
    cycle = shortest_odd_cycle(pr_box_graph(n))
    return multicolor_product([pr_box_graph(n)] * 2), cycle.vertices


@pytest.mark.parametrize("n", [4, 5])
def test_build_k5_two_c5(n: int) -> None:
    # Given a 5-cycle in each copy
    g, cycle = _pentagons(n)

    # When pairing the pentagon of one with the pentagram of the other
    clique = build_k5_two_c5(g, cycle, cycle)

    # Then the five tuples are pairwise exclusive.
    assert clique.size == 5
    assert clique.weight == Fraction(5, 4)


def test_build_k5_needs_pentagons() -> None:
    g = multicolor_product([pr_box_graph(6)] * 2)
    cycle = shortest_odd_cycle(pr_box_graph(6)).vertices

    with pytest.raises(InvalidCycleError):
        build_k5_two_c5(g, cycle, cycle)

    with pytest.raises(InvalidCycleError):
        build_k5_two_c5(g, [0, 1, 2, 3, 4], [0, 1, 2, 3, 4])


def test_build_k5_needs_two_copies() -> None:
    g = multicolor_product([pr_box_graph(4)] * 3)
    cycle = shortest_odd_cycle(pr_box_graph(4)).vertices

    with pytest.raises(InvalidColorError):
        build_k5_two_c5(g, cycle, cycle)


def test_double_clique() -> None:
    # Given the K_5 of two copies of the 4-cycle PR box
    g, cycle = _pentagons(4)
    k5 = build_k5_two_c5(g, cycle, cycle)

    # When doubling it with an edge of a third copy
    extended = multicolor_product([pr_box_graph(4)] * 3)
    k10 = double_clique(extended, k5, (0, 1))

    # Then a K_10 of weight 10/8 violates the exclusivity principle.
    assert k10.size == 10
    assert k10.weight == Fraction(10, 8)
    assert clique_certificate(extended, k10).excess == Fraction(1, 4)


def test_double_clique_twice() -> None:
    g, cycle = _pentagons(4)
    clique = build_k5_two_c5(g, cycle, cycle)

    for copies in (3, 4):
        extended = multicolor_product([pr_box_graph(4)] * copies)
        clique = double_clique(extended, clique, (0, 1))

    assert clique.size == 20
    assert clique.weight == Fraction(20, 16)


def test_double_clique_errors(colored_square_boxes: ColoredMultigraph) -> None:
    k4 = trivial_clique(colored_square_boxes, [(0, 1), (0, 1)])
    extended = multicolor_product([pr_box_graph(4)] * 3)

    with pytest.raises(NonEdgeError):
        double_clique(extended, k4, (0, 2))

    with pytest.raises(InvalidCliqueError):
        double_clique(colored_square_boxes, k4, (0, 1))


def test_certificate_provenance(two_square_boxes: ExclusivityGraph) -> None:
    host = describe_host(two_square_boxes)

    assert host.k == 2
    assert host.cycle_sizes == (4, 4)
    assert vertex_events(two_square_boxes, 9) == (Event(0, "--"), Event(0, "--"))
    assert describe_host(cycle_graph(5)).k == 1


def test_clique_certificate_requires_violation(
    square_box_graph: ExclusivityGraph,
) -> None:
    with pytest.raises(InvalidCliqueError):
        clique_certificate(square_box_graph, validate_clique(square_box_graph, [0, 1]))


def test_violation_edge_budget() -> None:
    # K_17 has 136 edges; split over four copies one carries 34 > 18.
    budget = violation_edge_budget(4, 6)

    assert budget.clique_edges == 136
    assert budget.required_share == 34
    assert budget.edges_per_copy == 18
    assert not budget.fits
    assert violation_edge_budget(2, 4).fits

    with pytest.raises(OutOfRangeError):
        violation_edge_budget(0, 4)


def test_activation_search() -> None:
    certificate = activation_search(5, 2)

    assert certificate is not None
    assert certificate.excess == Fraction(1, 4)
    assert activation_search(6, 2) is None


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7])
def test_three_copies_clique_number_eight(n: int) -> None:
    host = or_product([pr_box_graph(n)] * 3)

    assert max_clique(host, workers=2)[0] == 8
    assert find_violation(host, workers=2) is None


@pytest.mark.slow
@pytest.mark.parametrize("n", [9, 10])
def test_two_copies_clique_number_four_larger_cycles(n: int) -> None:
    assert pr_box_clique_number(n, 2)[0] == 4
