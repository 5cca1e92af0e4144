"""Weak / strong / chord separation, grid reduction, and non-crossing partitions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bits import check_ground, check_mask, elements_of, full_mask, popcount
from .setfn import Verdict


def _prec(a_mask: int, b_mask: int) -> bool:
    """A < B elementwise; vacuously true when either side is empty."""
    if a_mask == 0 or b_mask == 0:
        return True
    return a_mask.bit_length() - 1 < (b_mask & -b_mask).bit_length() - 1


def _sandwich(diff: int, middle: int) -> bool:
    """Can diff be split as D' u D'' with D' < middle < D''?"""
    if middle == 0:
        return True
    lo = (middle & -middle).bit_length()  # min of middle
    hi = middle.bit_length()  # max of middle
    # everything in diff must avoid the closed range [lo, hi]
    for i in elements_of(diff):
        if lo <= i <= hi:
            return False
    return True


def weakly_separated(a_mask: int, b_mask: int) -> bool:
    """Leclerc-Zelevinsky weak separation of two subsets of [n]."""
    a_only = a_mask & ~b_mask
    b_only = b_mask & ~a_mask
    ka, kb = popcount(a_mask), popcount(b_mask)
    if ka >= kb and _sandwich(b_only, a_only):
        return True
    if kb >= ka and _sandwich(a_only, b_only):
        return True
    return False


def strongly_separated(a_mask: int, b_mask: int) -> bool:
    """A - B < B - A or B - A < A - B."""
    a_only = a_mask & ~b_mask
    b_only = b_mask & ~a_mask
    return _prec(a_only, b_only) or _prec(b_only, a_only)


def surrounds(a_mask: int, b_mask: int) -> bool:
    """True when B surrounds A: B - A splits as B' u B'' with both parts
    nonempty and B' < A - B < B''."""
    a_only = a_mask & ~b_mask
    b_only = b_mask & ~a_mask
    if a_only == 0 or b_only == 0:
        return False
    lo = (a_only & -a_only).bit_length()
    hi = a_only.bit_length()
    below = [i for i in elements_of(b_only) if i < lo]
    above = [i for i in elements_of(b_only) if i > hi]
    return bool(below) and bool(above) and len(below) + len(above) == popcount(b_only)


def chord_separated(a_mask: int, b_mask: int) -> bool:
    """No quadruple i<j<k<l alternating between A - B and B - A.

    Defined for equal-size subsets; equivalent to weak separation there.
    """
    if popcount(a_mask) != popcount(b_mask):
        raise ValueError("chord separation requires equal-size subsets")
    a_only = a_mask & ~b_mask
    b_only = b_mask & ~a_mask
    if a_only == 0:
        return True
    # scan the merged difference left to right and count sign alternations
    runs = 0
    last = 0
    i = 1
    merged = a_only | b_only
    while merged:
        if merged & 1:
            side = 1 if a_only >> (i - 1) & 1 else -1
            if side != last:
                runs += 1
                last = side
        merged >>= 1
        i += 1
    return runs <= 3


@dataclass(frozen=True)
class SubsetFamily:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        check_ground(self.n)
        for m in self.members:
            check_mask(m, self.n)
        if len(set(self.members)) != len(self.members):
            raise ValueError("family contains duplicate subsets")


def is_ws_family(family: SubsetFamily) -> Verdict:
    members = family.members
    for a, b in combinations(members, 2):
        if not weakly_separated(a, b):
            return Verdict(False, (a, b), "pair is not weakly separated")
    return Verdict(True)


@dataclass(frozen=True)
class TwoRowGrid:
    n: int
    row1: int
    row2: int

    def __post_init__(self):
        check_ground(self.n)
        check_mask(self.row1, self.n)
        check_mask(self.row2, self.n)


def _is_ascent(row1: int, row2: int, i: int) -> bool:
    """Column swap at i is an ascent: no row shows (empty, filled) at
    (i, i+1), and some row shows (filled, empty)."""
    bi, bj = 1 << (i - 1), 1 << i
    movable = False
    for row in (row1, row2):
        has_i = bool(row & bi)
        has_j = bool(row & bj)
        if not has_i and has_j:
            return False
        if has_i and not has_j:
            movable = True
    return movable


def _swap(row: int, i: int) -> int:
    bi, bj = 1 << (i - 1), 1 << i
    has_i = bool(row & bi)
    has_j = bool(row & bj)
    if has_i == has_j:
        return row
    return row ^ (bi | bj)


def grid_reduce(grid: TwoRowGrid, rng: random.Random | None = None) -> tuple[int, int, list[int]]:
    """Swap columns at ascents until none remain.

    Returns (row1*, row2*, swap word).  The fixed point is independent of
    the swap order; passing an rng shuffles the order (used to test
    confluence).
    """
    r1, r2, n = grid.row1, grid.row2, grid.n
    word: list[int] = []
    while True:
        ascents = [i for i in range(1, n) if _is_ascent(r1, r2, i)]
        if not ascents:
            return r1, r2, word
        i = rng.choice(ascents) if rng is not None else ascents[0]
        r1, r2 = _swap(r1, i), _swap(r2, i)
        word.append(i)


def sections(n: int, row1: int, row2: int) -> list[tuple[int, str]]:
    """Interval partition [n] = A_0 u ... u A_s of an ascent-free grid.

    Returns (mask, kind) pairs in left-to-right order with kind in
    {"none", "row1", "row2", "both"}; A_0 has kind "none" and the last
    section has kind "both" (either may be absent).
    """
    check_ground(n)
    for i in range(1, n):
        if _is_ascent(row1, row2, i):
            raise ValueError(f"grid has an ascent at {i}; reduce it first")
    kinds = []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        in1, in2 = bool(row1 & bit), bool(row2 & bit)
        kinds.append("both" if in1 and in2 else "row1" if in1 else "row2" if in2 else "none")
    out: list[tuple[int, str]] = []
    for i, kind in enumerate(kinds, start=1):
        if out and out[-1][1] == kind:
            out[-1] = (out[-1][0] | 1 << (i - 1), kind)
        else:
            out.append((1 << (i - 1), kind))
    return out


def max_ws_extend(family: SubsetFamily) -> SubsetFamily:
    """Greedy maximal weakly separated superset, in (size, mask) order.

    By purity every maximal family has size C(n+1, 2) + 1, which is checked
    before returning.
    """
    verdict = is_ws_family(family)
    if not verdict.ok:
        raise ValueError(f"family is not weakly separated: witness {verdict.witness}")
    n = family.n
    out = list(family.members)
    for mask in sorted(range(1 << n), key=lambda m: (popcount(m), m)):
        if mask in out:
            continue
        if all(weakly_separated(mask, other) for other in out):
            out.append(mask)
    expected = comb(n + 1, 2) + 1
    if len(out) != expected:
        raise AssertionError(f"maximal family has size {len(out)}, expected {expected}")
    return SubsetFamily(n, tuple(sorted(out)))


def is_noncrossing_partition(n: int, parts: list[int]) -> bool:
    """No indices a<b<c<d with a, c in one part and b, d in another.

    The parts must partition [n].
    """
    check_ground(n)
    union = 0
    for p in parts:
        check_mask(p, n)
        if p & union:
            raise ValueError("parts overlap")
        union |= p
    if union != full_mask(n):
        raise ValueError("parts do not cover [n]")
    for p, q in combinations(parts, 2):
        merged = sorted(elements_of(p | q))
        pattern = [1 if p >> (i - 1) & 1 else 0 for i in merged]
        runs = 1
        for x, y in zip(pattern, pattern[1:]):
            if x != y:
                runs += 1
        if runs >= 4:
            return False
    return True
