"""Named result checks, each a set of instances run and timed into a VerifyReport."""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from logging import getLogger
from types import MappingProxyType
from typing import TYPE_CHECKING
from typing import Any
from typing import Callable
from typing import TypeVar

from exclo.clique import build_k5_two_c5
from exclo.clique import clique_certificate
from exclo.clique import double_clique
from exclo.clique import find_clique_of_size
from exclo.clique import find_violation
from exclo.clique import first_edge
from exclo.clique import is_extendable
from exclo.clique import max_clique
from exclo.clique import trivial_clique
from exclo.errors import CheckFailedError
from exclo.errors import ProductTooLargeError
from exclo.errors import SearchBudgetExceededError
from exclo.errors import UnknownTagError
from exclo.graphs.bitgraph import mobius_ladder
from exclo.graphs.bitgraph import prism
from exclo.graphs.exclusivity import build_exclusivity_graph
from exclo.graphs.exclusivity import pr_box_graph
from exclo.graphs.structure import has_triangle
from exclo.graphs.structure import is_isomorphic
from exclo.graphs.structure import odd_girth
from exclo.graphs.structure import shortest_odd_cycle
from exclo.product import multicolor_product
from exclo.product import or_product
from exclo.ramsey import Verdict
from exclo.ramsey import bipartite_coloring
from exclo.ramsey import find_counterexample
from exclo.ramsey import label_vertices
from exclo.ramsey import mono_odd_cycle
from exclo.ramsey import pentagon_pentagram_coloring
from exclo.ramsey import pr_box_odd_girth
from exclo.ramsey import rule_out
from exclo.ramsey import search_coloring
from exclo.scenario import enumerate_pr_boxes

if TYPE_CHECKING:
    from collections.abc import Sequence

    from exclo.clique import Clique
    from exclo.product import ColoredMultigraph

logger = getLogger(__name__)

Check = Callable[[int], str]
T = TypeVar("T")

CUBIC: int = 3
PENTAGON: int = 5
TABLE_MAX_K: int = 6
TABLE_MAX_N: int = 70

# Smallest cycle size without a violation, per number of copies.
FIRST_CLEAN_CYCLE: MappingProxyType[int, int] = MappingProxyType(
    {1: 4, 2: 6, 3: 6, 4: 18, 5: 34, 6: 66},
)


class Status(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class Instance:
    """One parameter set of a check: (k, n) for PR-box copies, (m, k) for colorings."""

    label: str
    parameters: tuple[int, ...]
    check: Check


@dataclass(frozen=True)
class InstanceResult:
    label: str
    parameters: tuple[int, ...]
    status: Status
    seconds: float
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    tag: str
    results: tuple[InstanceResult, ...]

    @property
    def failed(self: VerifyReport) -> bool:
        return any(result.status is Status.FAIL for result in self.results)

    def to_json(self: VerifyReport) -> dict[str, Any]:
        return {
            "tag": self.tag,
            "failed": self.failed,
            "instances": [
                {
                    "label": result.label,
                    "parameters": list(result.parameters),
                    "status": result.status.value,
                    "seconds": round(result.seconds, 6),
                    "detail": result.detail,
                }
                for result in self.results
            ],
        }

    def lines(self: VerifyReport) -> list[str]:
        return [
            f"{self.tag} {result.label}: {result.status.value} "
            f"({result.seconds:.3f}s){' ' + result.detail if result.detail else ''}"
            for result in self.results
        ]


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailedError(message)


def _present(value: T | None, message: str) -> T:
    if value is None:
        raise CheckFailedError(message)

    return value


def _pr_box_instance(k: int, n: int, check: Callable[[int, int, int], str]) -> Instance:
    return Instance(f"k={k} n={n}", (k, n), lambda workers: check(k, n, workers))


def _structure(_k: int, n: int, _workers: int) -> str:
    reference = mobius_ladder(2 * n) if n % 2 == 0 else prism(n)
    boxes = enumerate_pr_boxes(n)

    for box in boxes:
        g = build_exclusivity_graph(box)
        _expect(g.order == 2 * n, f"{g.description}: {g.order} vertices")
        _expect(g.edge_count() == 3 * n, f"{g.description}: {g.edge_count()} edges")
        _expect(g.regular_degree() == CUBIC, f"{g.description}: not 3-regular")
        _expect(is_isomorphic(g, reference), f"{g.description}: wrong family")

    return f"{len(boxes)} PR boxes"


def _triangle_free(_k: int, n: int, workers: int) -> str:
    boxes = enumerate_pr_boxes(n)

    for box in boxes:
        g = build_exclusivity_graph(box)
        _expect(not has_triangle(g), f"{g.description} has a triangle")
        _expect(
            find_violation(g, workers=workers) is None,
            f"{g.description} violates on its own",
        )

    return f"{len(boxes)} PR boxes"


def _odd_girth(_k: int, n: int, _workers: int) -> str:
    expected = pr_box_odd_girth(n)
    boxes = enumerate_pr_boxes(n)

    for box in boxes:
        g = build_exclusivity_graph(box)
        _expect(odd_girth(g) == expected, f"{g.description}: odd girth {odd_girth(g)}")

    return f"odd girth {expected}"


def _pentagon(_k: int, n: int, _workers: int) -> str:
    has_pentagon = odd_girth(pr_box_graph(n)) == PENTAGON
    _expect(has_pentagon == (n in (4, 5)), f"5-cycle present: {has_pentagon}")
    return f"5-cycle {'present' if has_pentagon else 'absent'}"


def _pentagon_clique(g: ColoredMultigraph) -> Clique:
    first, second = (
        _present(shortest_odd_cycle(factor), "factor is bipartite")
        for factor in g.factors
    )
    return build_k5_two_c5(g, first, second)


def _two_copy_violation(k: int, n: int, workers: int) -> str:
    host = or_product([pr_box_graph(n)] * k)
    omega, _ = max_clique(host, workers=workers)
    _expect(omega == PENTAGON, f"clique number {omega}")

    certificate = _present(find_violation(host, workers=workers), "no violation found")
    _expect(certificate.excess == Fraction(1, 4), f"excess {certificate.excess}")

    constructed = _pentagon_clique(multicolor_product([pr_box_graph(n)] * k))
    _expect(constructed.size == PENTAGON, f"constructed K_{constructed.size}")
    return f"clique number 5, excess {certificate.excess}"


def _trivial_lower_bound(g: ColoredMultigraph) -> Clique:
    return trivial_clique(g, [first_edge(factor) for factor in g.factors])


def _two_copy_bound(k: int, n: int, workers: int) -> str:
    lower = _trivial_lower_bound(multicolor_product([pr_box_graph(n)] * k))
    omega, _ = max_clique(or_product([pr_box_graph(n)] * k), workers=workers)
    _expect(lower.size == 4 and omega == 4, f"clique number {omega}")  # noqa: PLR2004
    return "clique number 4"


def _no_large_cliques(k: int, n: int, workers: int) -> str:
    host = or_product([pr_box_graph(n)] * k)

    for size in (5, 6, 7):
        found = find_clique_of_size(host, size, workers=workers)
        _expect(found is None, f"found a clique of size {size}")

    return "no K_5, K_6 or K_7"


def _three_copy_bound(k: int, n: int, workers: int) -> str:
    host = or_product([pr_box_graph(n)] * k)
    omega, _ = max_clique(host, workers=workers)
    _expect(omega == 8, f"clique number {omega}")  # noqa: PLR2004
    _expect(find_violation(host, workers=workers) is None, "violation found")
    return "clique number 8"


def _k8_coloring(_workers: int) -> str:
    coloring = _present(search_coloring(8, 3, (5, 5, 5)), "no coloring of K_8 found")
    _expect(
        mono_odd_cycle(coloring, (5, 5, 5)) is None,
        "coloring has a short odd cycle",
    )
    return "K_8 coloring without monochromatic C_3 or C_5"


def _not_extendable(k: int, n: int, _workers: int) -> str:
    g = multicolor_product([pr_box_graph(n)] * k)
    clique = _trivial_lower_bound(g)
    _expect(clique.size == 2**k, f"trivial clique of size {clique.size}")
    _expect(not is_extendable(g, clique), "trivial clique extends")
    return f"K_{clique.size} not extendable"


def _doubling(k: int, n: int, _workers: int) -> str:
    factor = pr_box_graph(n)
    clique = _pentagon_clique(multicolor_product([factor] * 2))

    for copies in range(3, k + 1):
        extended = multicolor_product([factor] * copies)
        clique = double_clique(extended, clique, first_edge(factor))

    expected = 5 * 2 ** (k - 2)
    _expect(clique.size == expected, f"doubled clique of size {clique.size}")
    _expect(
        clique.weight == Fraction(expected, 2**k),
        f"doubled clique of weight {clique.weight}",
    )
    certificate = clique_certificate(multicolor_product([factor] * k), clique)
    return f"K_{clique.size} of weight {clique.weight}, excess {certificate.excess}"


@lru_cache()
def _table_girths() -> dict[int, int | None]:
    return {n: odd_girth(pr_box_graph(n)) for n in range(4, TABLE_MAX_N + 1)}


def _table(k: int, _workers: int) -> str:
    girths = _table_girths()
    labels = label_vertices(bipartite_coloring(k))
    _expect(len(set(labels)) == 2**k, "bipartite labeling is not injective")

    for n, girth in girths.items():
        verdict = rule_out(k, n)
        _expect(girth == pr_box_odd_girth(n), f"n={n}: odd girth {girth}")

        if n >= FIRST_CLEAN_CYCLE[k]:
            expected = Verdict.NO_VIOLATION
        elif n in (4, 5):  # noqa: PLR2004
            expected = Verdict.VIOLATES
        else:
            expected = Verdict.UNKNOWN

        _expect(verdict.verdict is expected, f"n={n}: {verdict}")

        if verdict.reason == "T13":
            _expect(
                girth is not None and girth > 2**k + 1,
                f"n={n}: odd girth {girth} too short",
            )

    return f"n=4..{TABLE_MAX_N}"


def _ramsey(
    m: int,
    k: int,
    bounds: Sequence[int],
    holds: bool,
) -> Instance:
    def check(workers: int) -> str:
        counterexample = find_counterexample(m, k, bounds, workers=workers)

        if holds:
            _expect(counterexample is None, "found a coloring without short odd cycles")
            return "every coloring has a short monochromatic odd cycle"

        found = _present(counterexample, "no counterexample found")
        _expect(
            mono_odd_cycle(found, bounds) is None,
            "counterexample has a short odd cycle",
        )
        return "counterexample found"

    return Instance(f"m={m} k={k} bounds={tuple(bounds)}", (m, k), check)


def _pentagon_pentagram(_workers: int) -> str:
    _expect(
        mono_odd_cycle(pentagon_pentagram_coloring(), (3, 3)) is None,
        "pentagon and pentagram coloring has a monochromatic triangle",
    )
    return "two 5-cycles, no monochromatic triangle"


def _bipartite_labels(k: int) -> Instance:
    def check(_workers: int) -> str:
        labels = label_vertices(bipartite_coloring(k))
        _expect(len(set(labels)) == 2**k, "labels are not distinct")
        return f"{2**k} distinct labels"

    return Instance(f"m={2**k} k={k}", (2**k, k), check)


def _instances(tag: str) -> list[Instance]:
    builders: dict[str, Callable[[], list[Instance]]] = {
        "T4": lambda: [
            _pr_box_instance(1, n, _structure) for n in range(4, 11)
        ],
        "C5": lambda: [
            _pr_box_instance(1, n, _triangle_free) for n in range(4, 13)
        ],
        "T6": lambda: [_pr_box_instance(1, n, _odd_girth) for n in range(4, 13)],
        "C7": lambda: [_pr_box_instance(1, n, _pentagon) for n in range(4, 13)],
        "T9": lambda: [
            _pr_box_instance(2, n, _two_copy_violation) for n in (4, 5)
        ],
        "T10": lambda: [
            _pr_box_instance(2, n, _two_copy_bound) for n in range(6, 11)
        ],
        "C11": lambda: [
            _pr_box_instance(2, n, _no_large_cliques) for n in range(6, 11)
        ],
        "T12": lambda: [
            *(_pr_box_instance(3, n, _three_copy_bound) for n in (6, 7)),
            Instance("m=8 k=3 bounds=(5, 5, 5)", (8, 3), _k8_coloring),
        ],
        "T13-table": lambda: [
            Instance(f"k={k}", (k,), lambda workers, k=k: _table(k, workers))
            for k in range(1, TABLE_MAX_K + 1)
        ],
        "VIB": lambda: [
            _pr_box_instance(k, n, _not_extendable)
            for k in (2, 3)
            for n in range(4, 9)
        ],
        "R8": lambda: [
            _pr_box_instance(k, n, _doubling)
            for k, n in ((3, 4), (3, 5), (4, 4))
        ],
        "RAMSEY-SMALL": lambda: [
            _ramsey(6, 2, (3, 3), holds=True),
            _ramsey(5, 2, (3, 3), holds=False),
            Instance("m=5 k=2 pentagon/pentagram", (5, 2), _pentagon_pentagram),
            _ramsey(5, 2, (5, 3), holds=True),
            _ramsey(4, 2, (5, 3), holds=False),
            _ramsey(5, 2, (5, 5), holds=True),
            *(_bipartite_labels(k) for k in range(1, 6)),
        ],
    }
    return builders[tag]()


TAGS: tuple[str, ...] = (
    "T4",
    "C5",
    "T6",
    "C7",
    "T9",
    "T10",
    "C11",
    "T12",
    "T13-table",
    "VIB",
    "R8",
    "RAMSEY-SMALL",
)

TAG_SUMMARIES: MappingProxyType[str, str] = MappingProxyType(
    {
        "T4": "PR-box graphs are Möbius ladders (even n) or prisms (odd n)",
        "C5": "PR-box exclusivity graphs are triangle-free; one copy never violates",
        "T6": "odd girth is n+1 for even n and n for odd n",
        "C7": "a 5-cycle exists only for n = 4 or 5",
        "T9": "two copies contain a K_5 for n = 4 or 5",
        "T10": "two copies have clique number 4 for n >= 6",
        "C11": "two copies contain no K_5, K_6 or K_7 for n >= 6",
        "T12": "three copies have clique number 8 for n = 6 and 7",
        "T13-table": "copy count against cycle size verdicts for k <= 6, n <= 70",
        "VIB": "the trivial K_{2^k} never extends",
        "R8": "doubling a clique with one more copy certifies violations",
        "RAMSEY-SMALL": "small Ramsey numbers for odd cycles by exhaustion",
    },
)


def _run_instance(instance: Instance, workers: int) -> InstanceResult:
    started = time.perf_counter()

    try:
        detail = instance.check(workers)
        status = Status.PASS
    except CheckFailedError as error:
        status, detail = Status.FAIL, str(error)
    except (SearchBudgetExceededError, ProductTooLargeError) as error:
        status, detail = Status.SKIPPED, str(error)

    elapsed = time.perf_counter() - started
    logger.info("%s: %s in %.3fs", instance.label, status.value, elapsed)
    return InstanceResult(instance.label, instance.parameters, status, elapsed, detail)


def verify(tag: str, workers: int = 1) -> VerifyReport:
    """Run every instance of a tag.

    :param tag: one of TAGS
    :param workers: processes for the clique searches and enumerations
    :return: the report; `failed` is set when any instance failed
    """
    if tag not in TAGS:
        message = f"unknown tag {tag!r}, expected one of {', '.join(TAGS)}"
        raise UnknownTagError(message)

    logger.info("verifying %s: %s", tag, TAG_SUMMARIES[tag])
    return VerifyReport(
        tag,
        tuple(_run_instance(instance, workers) for instance in _instances(tag)),
    )
