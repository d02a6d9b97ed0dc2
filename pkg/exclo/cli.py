"""Command-line front end: build, solve, verify and check artifacts."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import TYPE_CHECKING
from typing import Any
from typing import Callable

from exclo import __version__
from exclo.certificates import certificate_to_json
from exclo.certificates import check_certificate
from exclo.clique import activation_search
from exclo.clique import find_violation
from exclo.clique import max_clique
from exclo.clique import violation_edge_budget
from exclo.constants import EXIT_CODES
from exclo.errors import CertificateError
from exclo.errors import ExcloError
from exclo.errors import InfeasibleEnumerationError
from exclo.errors import ProductTooLargeError
from exclo.errors import SearchBudgetExceededError
from exclo.graphs.exclusivity import ExclusivityGraph
from exclo.graphs.exclusivity import build_exclusivity_graph
from exclo.graphs.exclusivity import pr_box_graph
from exclo.graphs.formats import graph_to_json
from exclo.graphs.formats import read_dimacs
from exclo.graphs.formats import write_dimacs
from exclo.product import multicolor_product
from exclo.product import multigraph_to_json
from exclo.product import or_product
from exclo.ramsey import check_coloring
from exclo.ramsey import coloring_to_json
from exclo.ramsey import rule_out
from exclo.ramsey import search_coloring
from exclo.scenario import PrBoxSpec
from exclo.scenario import format_fraction
from exclo.scenario import make_pr_box
from exclo.scenario import parse_fraction
from exclo.verify import TAG_SUMMARIES
from exclo.verify import TAGS
from exclo.verify import verify

if TYPE_CHECKING:
    from collections.abc import Sequence

    from exclo.clique import ViolationCertificate

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace], int]


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(data: Any) -> None:
    _emit(json.dumps(data, indent=2))


def _write(path: str, text: str) -> None:
    Path(path).write_text(text if text.endswith("\n") else text + "\n")
    logger.info("wrote %s", path)


def _read_json(path: str) -> Any:
    return json.loads(Path(path).read_text())


def _workers(args: argparse.Namespace) -> int:
    return args.threads if args.threads > 0 else os.cpu_count() or 1


def _export_graph(args: argparse.Namespace, g: ExclusivityGraph) -> None:
    if args.out:
        _write(f"{args.out}.dimacs", write_dimacs(g, comments=[g.description]))
        _write(f"{args.out}.json", json.dumps(graph_to_json(g), indent=2))

    if args.json:
        _emit_json(graph_to_json(g))
    else:
        _emit(f"{g.description}: {g.order} vertices, {g.edge_count()} edges")


def _cmd_graph(args: argparse.Namespace) -> int:
    if args.anti is None:
        g = pr_box_graph(args.n)
    else:
        spec = PrBoxSpec(args.n, frozenset(args.anti))
        g = build_exclusivity_graph(make_pr_box(spec))

    _export_graph(args, g)
    return EXIT_CODES["success"]


def _cap_hint(k: int, n: int, error: ProductTooLargeError) -> int:
    sys.stderr.write(f"error: {error}\nhint: try `exclo rule-out {k} {n}`\n")
    return EXIT_CODES["budget"]


def _cmd_product(args: argparse.Namespace) -> int:
    factors = [pr_box_graph(args.n)] * args.k

    try:
        if args.colored:
            g = multicolor_product(factors)
        else:
            _export_graph(args, or_product(factors))
            return EXIT_CODES["success"]
    except ProductTooLargeError as error:
        return _cap_hint(args.k, args.n, error)

    data = multigraph_to_json(g)

    if args.out:
        _write(f"{args.out}.json", json.dumps(data, indent=2))

    if args.json:
        _emit_json(data)
    else:
        _emit(f"multicolor product {g.description}: {g.order} vertices, k={g.k}")

    return EXIT_CODES["success"]


def _certificate_output(
    args: argparse.Namespace,
    certificate: ViolationCertificate | None,
) -> int:
    if certificate is None:
        if args.json:
            _emit_json({"violation": None})
        else:
            _emit("no violation")

        return EXIT_CODES["success"]

    if args.certificate:
        data = certificate_to_json(certificate)
        _write(args.certificate, json.dumps(data, indent=2))

    if args.json:
        _emit_json(
            {
                "violation": {
                    "host": certificate.host.description,
                    "vertices": list(certificate.clique.vertices),
                    "weight_sum": format_fraction(certificate.clique.weight),
                    "excess": format_fraction(certificate.excess),
                },
            },
        )
    else:
        _emit(
            f"violation: clique {list(certificate.clique.vertices)} "
            f"of weight {format_fraction(certificate.clique.weight)}, "
            f"excess {format_fraction(certificate.excess)}",
        )

    return EXIT_CODES["success"]


def _solve_host(args: argparse.Namespace) -> ExclusivityGraph:
    if args.dimacs:
        graph = read_dimacs(Path(args.dimacs).read_text())
        return ExclusivityGraph.from_graph(
            graph,
            weight=parse_fraction(args.weight),
            description=args.dimacs,
        )

    if args.n is None:
        message = "solve needs either --dimacs FILE or --n N"
        raise argparse.ArgumentTypeError(message)

    return or_product([pr_box_graph(args.n)] * args.k)


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        host = _solve_host(args)
    except ProductTooLargeError as error:
        return _cap_hint(args.k, args.n, error)

    if args.violation:
        certificate = find_violation(
            host,
            node_budget=args.node_budget,
            workers=_workers(args),
        )
        return _certificate_output(args, certificate)

    omega, clique = max_clique(
        host,
        node_budget=args.node_budget,
        workers=_workers(args),
    )

    if args.json:
        _emit_json(
            {
                "host": host.description,
                "clique_number": omega,
                "vertices": list(clique.vertices),
                "weight": format_fraction(clique.weight),
            },
        )
    else:
        _emit(f"{host.description}: clique number {omega}")
        _emit(f"witness {list(clique.vertices)}")

    return EXIT_CODES["success"]


def _cmd_verify(args: argparse.Namespace) -> int:
    report = verify(args.tag, workers=_workers(args))

    if args.out:
        _write(args.out, json.dumps(report.to_json(), indent=2))

    if args.json:
        _emit_json(report.to_json())
    else:
        for line in report.lines():
            _emit(line)

    return EXIT_CODES["failure" if report.failed else "success"]


def _cmd_rule_out(args: argparse.Namespace) -> int:
    verdict = rule_out(args.k, args.n)

    if args.json:
        _emit_json(
            {
                "k": verdict.k,
                "n": verdict.n,
                "verdict": verdict.verdict.value,
                "reason": verdict.reason,
            },
        )
    else:
        _emit(str(verdict))

    return EXIT_CODES["success"]


def _cmd_check_certificate(args: argparse.Namespace) -> int:
    try:
        result = check_certificate(_read_json(args.file))
    except CertificateError as error:
        _emit(f"INVALID: {error}")
        return EXIT_CODES["failure"]

    _emit(
        f"VALID: clique of {result.size} joint events, "
        f"weight {format_fraction(result.weight_sum)}, "
        f"excess {format_fraction(result.excess)}",
    )
    return EXIT_CODES["success"]


def _cmd_check_coloring(args: argparse.Namespace) -> int:
    report = check_coloring(_read_json(args.file), args.bounds)

    if report.hit is None:
        _emit(
            f"OK: K_{report.coloring.m} in {report.coloring.k} colors has no "
            f"monochromatic odd cycle within bounds {list(report.bounds)}",
        )
        return EXIT_CODES["success"]

    color, witness = report.hit
    _emit(f"FOUND: color {color} has the odd cycle {list(witness.vertices)}")
    return EXIT_CODES["failure"]


def _cmd_search_coloring(args: argparse.Namespace) -> int:
    coloring = search_coloring(args.m, args.k, args.bounds, args.time_budget)

    if coloring is None:
        _emit(f"no coloring of K_{args.m} avoids the bounds {args.bounds}")
        return EXIT_CODES["success"]

    data = coloring_to_json(coloring, args.bounds)

    if args.out:
        _write(args.out, json.dumps(data, indent=2))

    if args.json:
        _emit_json(data)
    else:
        _emit(f"found a coloring of K_{args.m}: {list(coloring.colors)}")

    return EXIT_CODES["success"]


def _cmd_edge_budget(args: argparse.Namespace) -> int:
    budget = violation_edge_budget(args.k, args.n)

    if args.json:
        _emit_json(
            {
                "k": budget.k,
                "n": budget.n,
                "clique_edges": budget.clique_edges,
                "edges_per_copy": budget.edges_per_copy,
                "required_share": budget.required_share,
                "fits": budget.fits,
            },
        )
    else:
        _emit(
            f"K_{2**budget.k + 1} has {budget.clique_edges} edges; one copy must "
            f"carry {budget.required_share} of its {budget.edges_per_copy}: "
            f"{'fits' if budget.fits else 'does not fit'}",
        )

    return EXIT_CODES["success"]


def _cmd_activate(args: argparse.Namespace) -> int:
    try:
        certificate = activation_search(
            args.n,
            args.k,
            node_budget=args.node_budget,
            workers=_workers(args),
        )
    except ProductTooLargeError as error:
        return _cap_hint(args.k, args.n, error)

    return _certificate_output(args, certificate)


def _add_graph_parsers(commands: argparse._SubParsersAction) -> None:  # noqa: SLF001
    graph = commands.add_parser("graph", help="exclusivity graph of an n-cycle PR box")
    graph.add_argument("--n", type=int, required=True)
    graph.add_argument(
        "--anti",
        type=int,
        nargs="+",
        help="anti-correlated contexts (odd count); default is the last context",
    )
    graph.add_argument("--out", help="write OUT.dimacs and OUT.json")
    graph.set_defaults(handler=_cmd_graph)

    product = commands.add_parser("product", help="k copies of an n-cycle PR box")
    product.add_argument("--n", type=int, required=True)
    product.add_argument("--k", type=int, required=True)
    product.add_argument(
        "--colored",
        action="store_true",
        help="keep one edge layer per copy",
    )
    product.add_argument("--out", help="write OUT.json, plus OUT.dimacs unless colored")
    product.set_defaults(handler=_cmd_product)

    solve = commands.add_parser("solve", help="maximum clique or violation search")
    solve.add_argument("--n", type=int)
    solve.add_argument("--k", type=int, default=1)
    solve.add_argument("--dimacs", help="solve a DIMACS graph instead")
    solve.add_argument("--weight", default="1", help="vertex weight for --dimacs")
    solve.add_argument("--violation", action="store_true")
    solve.add_argument("--node-budget", type=int)
    solve.add_argument("--certificate", help="write the violation certificate here")
    solve.set_defaults(handler=_cmd_solve)

    activate = commands.add_parser("activate", help="search k copies for a violation")
    activate.add_argument("n", type=int)
    activate.add_argument("k", type=int)
    activate.add_argument("--node-budget", type=int)
    activate.add_argument("--certificate", help="write the violation certificate here")
    activate.set_defaults(handler=_cmd_activate)


def _add_result_parsers(commands: argparse._SubParsersAction) -> None:  # noqa: SLF001
    verify_parser = commands.add_parser(
        "verify",
        help="run the checks of a named result",
        description="\n".join(f"{tag}: {TAG_SUMMARIES[tag]}" for tag in TAGS),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verify_parser.add_argument("tag", choices=TAGS)
    verify_parser.add_argument("--out", help="write the JSON report here")
    verify_parser.set_defaults(handler=_cmd_verify)

    rule = commands.add_parser("rule-out", help="verdict for k copies and cycle size n")
    rule.add_argument("k", type=int)
    rule.add_argument("n", type=int)
    rule.set_defaults(handler=_cmd_rule_out)

    budget = commands.add_parser("edge-budget", help="edge accounting for K_{2^k+1}")
    budget.add_argument("k", type=int)
    budget.add_argument("n", type=int)
    budget.set_defaults(handler=_cmd_edge_budget)

    certificate = commands.add_parser(
        "check-certificate",
        help="revalidate a violation certificate",
    )
    certificate.add_argument("file")
    certificate.set_defaults(handler=_cmd_check_certificate)

    coloring = commands.add_parser(
        "check-coloring",
        help="look for short monochromatic odd cycles in a coloring",
    )
    coloring.add_argument("file")
    coloring.add_argument("--bounds", type=int, nargs="+")
    coloring.set_defaults(handler=_cmd_check_coloring)

    search = commands.add_parser(
        "search-coloring",
        help="find a coloring of K_m without short monochromatic odd cycles",
    )
    search.add_argument("m", type=int)
    search.add_argument("k", type=int)
    search.add_argument("bounds", type=int, nargs="+")
    search.add_argument("--time-budget", type=float)
    search.add_argument("--out", help="write the coloring here")
    search.set_defaults(handler=_cmd_search_coloring)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exclo",
        description="Exclusivity graphs of PR boxes and their products.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker processes; 0 uses every CPU",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)
    _add_graph_parsers(commands)
    _add_result_parsers(commands)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line.

    :param argv: arguments without the program name; defaults to sys.argv
    :return: the process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    handler: Handler = args.handler

    try:
        return handler(args)
    except (SearchBudgetExceededError, InfeasibleEnumerationError) as error:
        sys.stderr.write(f"budget exceeded: {error}\n")
        return EXIT_CODES["budget"]
    except (ExcloError, argparse.ArgumentTypeError, OSError, ValueError) as error:
        sys.stderr.write(f"error: {error}\n")
        return EXIT_CODES["usage"]
