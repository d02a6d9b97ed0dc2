"""Small helpers for adjacency rows stored as Python integers."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Iterator


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(indices: Iterable[int]) -> int:
    mask = 0

    for index in indices:
        mask |= 1 << index

    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def repeat_block(block: int, width: int, times: int) -> int:
    """Tile a block of the given bit width `times` times.

    :param block: the pattern occupying the low `width` bits
    :param width: the period of the tiling
    :param times: how many copies to lay down
    :return: the tiled mask
    """
    if times <= 0:
        return 0

    if width == 0:
        return 0

    repunit = ((1 << (width * times)) - 1) // ((1 << width) - 1)
    return block * repunit
