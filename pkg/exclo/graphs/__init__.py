"""Bitset graphs, exclusivity graphs and the structural queries run on them."""

from __future__ import annotations
