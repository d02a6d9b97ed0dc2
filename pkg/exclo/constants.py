from __future__ import annotations

import os
from types import MappingProxyType

from exclo.errors import ConfigurationError

VERTEX_CAP_ENV: str = "EXCLO_VERTEX_CAP"

DEFAULT_VERTEX_CAP: int = 2**20
DEFAULT_NODE_BUDGET: int = 10**9
DEFAULT_COLORING_TIME_BUDGET: float = 300.0
ISOMORPHISM_SCOPE: int = 64
EXHAUSTIVE_LIMIT: int = 2**26

PLUS: str = "+"
MINUS: str = "-"
OUTCOMES: tuple[str, str] = (PLUS, MINUS)

# + sorts before -
JOINT_OUTCOMES: tuple[str, ...] = ("++", "+-", "-+", "--")
CORRELATED_OUTCOMES: frozenset[str] = frozenset({"++", "--"})
ANTI_CORRELATED_OUTCOMES: frozenset[str] = frozenset({"+-", "-+"})

FLIPPED_OUTCOME: MappingProxyType[str, str] = MappingProxyType(
    {
        PLUS: MINUS,
        MINUS: PLUS,
    },
)

EXIT_CODES: MappingProxyType[str, int] = MappingProxyType(
    {
        "success": 0,
        "failure": 1,
        "usage": 2,
        "budget": 3,
    },
)


def vertex_cap() -> int:
    """Return the product materialization cap.

    The EXCLO_VERTEX_CAP environment variable overrides the default.

    :return: the maximum number of product vertices
    """
    raw: str | None = os.environ.get(VERTEX_CAP_ENV)

    if raw is None or not raw.strip():
        return DEFAULT_VERTEX_CAP

    try:
        cap = int(raw)
    except ValueError as error:
        message = f"{VERTEX_CAP_ENV} must be an integer, got {raw!r}"
        raise ConfigurationError(message) from error

    if cap <= 0:
        message = f"{VERTEX_CAP_ENV} must be positive, got {cap}"
        raise ConfigurationError(message)

    return cap
