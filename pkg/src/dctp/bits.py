"""Bitmask encoding of subsets of [n].

Element i of [n] (1-based) occupies bit i-1, so the mask of a subset S is
sum(1 << (i - 1) for i in S) and the full ground set is (1 << n) - 1.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_GROUND = 12
# padded constructions live on a doubled ground set but never build dense tables
MAX_PADDED_GROUND = 2 * MAX_GROUND


def check_ground(n: int, limit: int = MAX_GROUND) -> int:
    if not isinstance(n, int) or n < 1 or n > limit:
        raise ValueError(f"ground set size must be an integer in 1..{limit}, got {n!r}")
    return n


def check_mask(mask: int, n: int) -> int:
    if not isinstance(mask, int) or mask < 0 or mask >> n:
        raise ValueError(f"mask {mask!r} has bits outside ground set [{n}]")
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int], n: int | None = None) -> int:
    mask = 0
    for i in elements:
        if n is not None and not 1 <= i <= n:
            raise ValueError(f"element {i} outside [1, {n}]")
        if i < 1:
            raise ValueError(f"element {i} is not 1-based")
        mask |= 1 << (i - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def interval_mask(a: int, b: int) -> int:
    """Mask of the interval [a, b]; empty when a > b."""
    if a > b:
        return 0
    return ((1 << b) - 1) ^ ((1 << (a - 1)) - 1)


def cyclic_interval_mask(a: int, b: int, n: int) -> int:
    """Mask of the cyclic interval from a to b inclusive, wrapping past n."""
    if a <= b:
        return interval_mask(a, b)
    return interval_mask(a, n) | interval_mask(1, b)


def intervals(n: int) -> Iterator[tuple[int, int]]:
    """All nonempty intervals [a, b] of [n]."""
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            yield a, b


def submasks(mask: int) -> Iterator[int]:
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def masks_of_size(n: int, k: int) -> Iterator[int]:
    """All masks of k-subsets of [n], in increasing numeric order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    top = 1 << n
    while mask < top:
        yield mask
        # Gosper's hack: next mask with the same popcount.
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def maximal_runs(mask: int, n: int) -> list[tuple[int, int]]:
    """Decompose mask into maximal intervals [a, b], left to right."""
    runs = []
    i = 1
    while i <= n:
        if mask >> (i - 1) & 1:
            a = i
            while i <= n and mask >> (i - 1) & 1:
                i += 1
            runs.append((a, i - 1))
        else:
            i += 1
    return runs


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in elements_of(mask)) + "}"
