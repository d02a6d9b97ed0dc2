from __future__ import annotations

import pytest

from exclo.constants import DEFAULT_VERTEX_CAP
from exclo.constants import VERTEX_CAP_ENV
from exclo.constants import vertex_cap
from exclo.errors import ConfigurationError


def test_vertex_cap_default(monkeypatch: pytest.MonkeyPatch) -> None:
    # Given no override in the environment
    monkeypatch.delenv(VERTEX_CAP_ENV, raising=False)

    # When reading the cap
    # Then the default is used.
    assert vertex_cap() == DEFAULT_VERTEX_CAP


def test_vertex_cap_override(monkeypatch: pytest.MonkeyPatch) -> None:
    # Given an override in the environment
    monkeypatch.setenv(VERTEX_CAP_ENV, "4096")

    # When reading the cap
    # Then the override is used.
    assert vertex_cap() == 4096


@pytest.mark.parametrize("raw", ["lots", "0", "-5", "1.5"])
def test_vertex_cap_invalid(monkeypatch: pytest.MonkeyPatch, raw: str) -> None:
    # Given an override that is not a positive integer
    monkeypatch.setenv(VERTEX_CAP_ENV, raw)

    # When reading the cap
    # Then a ConfigurationError is raised.
    with pytest.raises(ConfigurationError):
        vertex_cap()
