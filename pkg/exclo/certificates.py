"""Export violation certificates and check them again from nothing but their JSON.

The checker does not trust any graph: it rebuilds every copy's correlation,
decides exclusivity pair by pair from the events themselves and recomputes
the weights from the correlation tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import TYPE_CHECKING
from typing import Any

from exclo.errors import CertificateError
from exclo.errors import ExcloError
from exclo.graphs.exclusivity import Event
from exclo.graphs.exclusivity import are_exclusive
from exclo.scenario import correlation_from_json
from exclo.scenario import correlation_to_json
from exclo.scenario import format_fraction
from exclo.scenario import parse_fraction

if TYPE_CHECKING:
    from collections.abc import Mapping
    from collections.abc import Sequence

    from exclo.clique import ViolationCertificate
    from exclo.scenario import Correlation


@dataclass(frozen=True)
class CertificateCheck:
    """What a successful certificate check established."""

    size: int
    weight_sum: Fraction
    excess: Fraction


def certificate_to_json(certificate: ViolationCertificate) -> dict[str, Any]:
    host = certificate.host

    if len(host.correlations) != host.k or any(
        len(events) != host.k for events in certificate.events
    ):
        message = (
            f"host {host.description!r} has no correlation provenance; "
            "its certificate cannot be checked from scratch"
        )
        raise CertificateError(message)

    return {
        "host": {
            "description": host.description,
            "k": host.k,
            "n": list(host.cycle_sizes),
            "correlations": [correlation_to_json(c) for c in host.correlations],
        },
        "indices": list(certificate.clique.vertices),
        "vertices": [
            [{"context": e.context, "outcome": e.outcome} for e in events]
            for events in certificate.events
        ],
        "weight_sum": format_fraction(certificate.clique.weight),
        "excess": format_fraction(certificate.excess),
    }


def _read_vertices(data: Mapping[str, Any], k: int) -> list[tuple[Event, ...]]:
    vertices = []

    for position, entry in enumerate(data["vertices"]):
        if len(entry) != k:
            message = f"vertex {position} lists {len(entry)} events for {k} copies"
            raise CertificateError(message)

        vertices.append(
            tuple(
                Event(int(event["context"]), str(event["outcome"])) for event in entry
            ),
        )

    return vertices


def _weight(correlations: Sequence[Correlation], events: Sequence[Event]) -> Fraction:
    return prod(
        (
            correlation.probability(event.context, event.outcome)
            for correlation, event in zip(correlations, events)
        ),
        start=Fraction(1),
    )


def _jointly_exclusive(
    correlations: Sequence[Correlation],
    first: Sequence[Event],
    second: Sequence[Event],
) -> bool:
    return any(
        are_exclusive(e, f, correlation.scenario)
        for correlation, e, f in zip(correlations, first, second)
    )


def check_certificate(data: Mapping[str, Any]) -> CertificateCheck:
    """Revalidate a certificate document.

    :param data: a document produced by certificate_to_json
    :return: the recomputed size, weight sum and excess
    :raises CertificateError: when any check fails
    """
    try:
        correlations = [
            correlation_from_json(entry) for entry in data["host"]["correlations"]
        ]
        k = int(data["host"]["k"])
        vertices = _read_vertices(data, k)
        claimed_weight = parse_fraction(str(data["weight_sum"]))
        claimed_excess = parse_fraction(str(data["excess"]))
    except CertificateError:
        raise
    except (ExcloError, KeyError, TypeError, ValueError) as error:
        message = f"malformed certificate: {error}"
        raise CertificateError(message) from error

    if len(correlations) != k:
        message = f"host declares k={k} but carries {len(correlations)} correlations"
        raise CertificateError(message)

    if len(set(vertices)) != len(vertices):
        message = "certificate repeats a joint event"
        raise CertificateError(message)

    weights = []

    for position, events in enumerate(vertices):
        try:
            weight = _weight(correlations, events)
        except (ExcloError, KeyError, IndexError) as error:
            message = f"vertex {position} names an event outside its scenario"
            raise CertificateError(message) from error

        if weight <= 0:
            message = f"vertex {position} is an impossible joint event"
            raise CertificateError(message)

        weights.append(weight)

    for position, first in enumerate(vertices):
        for other in range(position + 1, len(vertices)):
            try:
                exclusive = _jointly_exclusive(correlations, first, vertices[other])
            except ExcloError as error:
                raise CertificateError(str(error)) from error

            if not exclusive:
                message = f"vertices {position} and {other} are not exclusive"
                raise CertificateError(message)

    weight_sum = sum(weights, Fraction(0))

    if weight_sum != claimed_weight:
        message = f"weights sum to {weight_sum}, certificate claims {claimed_weight}"
        raise CertificateError(message)

    if weight_sum - 1 != claimed_excess or claimed_excess <= 0:
        message = f"excess {claimed_excess} does not match weight sum {weight_sum}"
        raise CertificateError(message)

    return CertificateCheck(
        size=len(vertices),
        weight_sum=weight_sum,
        excess=claimed_excess,
    )
