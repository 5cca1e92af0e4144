"""Schubert matroids: bases, bracket-word rank, cyclic cones, concave extensions.

The rank of a subset J in the Schubert matroid on index set I is computed by
filling a 1 x n word with brackets and stars and pairing brackets with a
left-to-right stack scan.  The concave extension of the rank function has an
explicit piecewise-linear form indexed by the cyclic-interval decomposition
of I (and of its pad on the doubled ground set for the full cube).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bits import (
    MAX_PADDED_GROUND,
    check_ground,
    check_mask,
    cyclic_interval_mask,
    elements_of,
    full_mask,
    interval_mask,
    mask_of,
    masks_of_size,
    popcount,
)
from .setfn import Rat, SetFunction


def gale_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise comparison of two sorted tuples of equal length."""
    return all(x <= y for x, y in zip(a, b))


def bases(n: int, index_mask: int) -> list[int]:
    """All k-subsets L of [n] with L <=_G I, as masks in increasing order."""
    check_ground(n, MAX_PADDED_GROUND)
    check_mask(index_mask, n)
    target = elements_of(index_mask)
    k = len(target)
    out = []
    for mask in masks_of_size(n, k):
        if gale_leq(elements_of(mask), target):
            out.append(mask)
    return out


def rank_bracket(n: int, index_mask: int, subset_mask: int) -> int:
    """Schubert rank: paired ()'s plus *'s in the bracket word of (I, J).

    Box i holds "(" when i is in J only, ")" when in I only, "*" when in
    both.  A ")" pairs with the nearest unmatched "(" to its left.
    """
    check_ground(n, MAX_PADDED_GROUND)
    check_mask(index_mask, n)
    check_mask(subset_mask, n)
    rank = popcount(index_mask & subset_mask)
    open_brackets = 0
    only_j = subset_mask & ~index_mask
    only_i = index_mask & ~subset_mask
    for i in range(n):
        bit = 1 << i
        if only_j & bit:
            open_brackets += 1
        elif only_i & bit and open_brackets:
            open_brackets -= 1
            rank += 1
    return rank


def rank_function(n: int, index_mask: int) -> SetFunction:
    """The rank of the Schubert matroid on I as a dense set function."""
    return SetFunction(n, [rank_bracket(n, index_mask, m) for m in range(1 << n)])


@dataclass(frozen=True)
class Block:
    """One cyclic block S_i = (C_i, I_i) of the decomposition of [n]."""

    s_mask: int
    i_mask: int
    c_mask: int
    end: int  # E(S_i), the last element of the cyclic interval S_i


@dataclass(frozen=True)
class CyclicDecomposition:
    n: int
    index_mask: int
    blocks: tuple[Block, ...]

    @property
    def sigma(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> list[int]:
        return [popcount(b.i_mask) for b in self.blocks]


def _cyclic_runs(n: int, mask: int) -> list[tuple[int, int]]:
    """Maximal cyclic runs (start, end) of mask, in cyclic order."""
    if mask == full_mask(n):
        return [(1, n)]
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
    # merge a run ending at n with a run starting at 1
    if len(runs) >= 2 and runs[0][0] == 1 and runs[-1][1] == n:
        a, _ = runs[-1]
        _, b = runs[0]
        runs = runs[1:-1] + [(a, b)]
    return runs


def cyclic_decomposition(n: int, index_mask: int) -> CyclicDecomposition:
    """Unique decomposition [n] = (C_1, I_1, ..., C_l, I_l) with 1 in S_1."""
    check_ground(n, MAX_PADDED_GROUND)
    check_mask(index_mask, n)
    if index_mask == 0:
        raise ValueError("cyclic decomposition requires a nonempty index set")
    runs = _cyclic_runs(n, index_mask)
    blocks = []
    for pos, (a, b) in enumerate(runs):
        prev_end = runs[pos - 1][1]
        gap_start = prev_end % n + 1
        gap_end = (a - 2) % n + 1
        if gap_start == a:  # no gap (only when I = [n])
            c_mask = 0
        else:
            c_mask = cyclic_interval_mask(gap_start, gap_end, n)
        i_mask = cyclic_interval_mask(a, b, n)
        blocks.append(Block(c_mask | i_mask, i_mask, c_mask, b))
    first = next(i for i, blk in enumerate(blocks) if blk.s_mask & 1)
    blocks = blocks[first:] + blocks[:first]
    return CyclicDecomposition(n, index_mask, tuple(blocks))


@dataclass(frozen=True)
class ConeSystem:
    """The maximal cones Pi_1..Pi_l on the hyperplane x([n]) = k (Def. of the
    cyclic fan): cone i is cut out by x(S_i u ... u S_j) >= |I_i| + ... + |I_j|
    over all proper cyclic runs starting at i."""

    n: int
    k: int
    decomposition: CyclicDecomposition
    constraints: tuple[tuple[tuple[int, int], ...], ...]  # per cone: (region_mask, rhs)

    @property
    def sigma(self) -> int:
        return len(self.constraints)


def cone_system(n: int, index_mask: int) -> ConeSystem:
    dec = cyclic_decomposition(n, index_mask)
    l = dec.sigma
    sizes = dec.block_sizes()
    cones = []
    for i in range(l):
        cons = []
        region = 0
        rhs = 0
        for step in range(l - 1):
            j = (i + step) % l
            region |= dec.blocks[j].s_mask
            rhs += sizes[j]
            cons.append((region, rhs))
        cones.append(tuple(cons))
    return ConeSystem(n, popcount(index_mask), dec, tuple(cones))


def _point_sum(x: Sequence[Rat], mask: int) -> Rat:
    total: Rat = 0
    i = 0
    while mask:
        if mask & 1:
            total += x[i]
        mask >>= 1
        i += 1
    return total


def cone_membership(cones: ConeSystem, x: Sequence[Rat]) -> int:
    """Smallest 1-based i with x in Pi_i; requires x on the hyperplane."""
    if len(x) != cones.n:
        raise ValueError("point dimension mismatch")
    if sum(x) != cones.k:
        raise ValueError(f"point is off the hyperplane x([n]) = {cones.k}")
    for i, cons in enumerate(cones.constraints):
        if all(_point_sum(x, region) >= rhs for region, rhs in cons):
            return i + 1
    raise AssertionError("cones do not cover the hyperplane")  # Prop: complete fan


def hypersimplex_forms(n: int, index_mask: int) -> list[tuple[int, int]]:
    """Affine forms whose min is the concave extension on the layer x([n]) = k.

    Each form is (e, c) standing for x_1 + ... + x_e + c; form i corresponds
    to the cone Pi_i.
    """
    dec = cyclic_decomposition(n, index_mask)
    blocks = dec.blocks
    l = dec.sigma
    sizes = dec.block_sizes()
    head = popcount(blocks[0].i_mask & ~interval_mask(1, blocks[0].end))  # |I_1 \ [1, E(S_1)]|
    forms = [(blocks[-1].end, head)]
    for i in range(1, l):
        forms.append((blocks[i - 1].end, head + sum(sizes[i:])))
    return forms


def concave_ext_hypersimplex(n: int, index_mask: int, x: Sequence[Rat]) -> Rat:
    """Closed-form concave extension of the Schubert rank on Delta_{k,n}."""
    if len(x) != n:
        raise ValueError("point dimension mismatch")
    k = popcount(index_mask)
    if any(xi < 0 or xi > 1 for xi in x):
        raise ValueError("point outside [0,1]^n")
    if sum(x) != k:
        raise ValueError(f"point is off the hypersimplex layer x([n]) = {k}")
    prefix = [0]
    for xi in x:
        prefix.append(prefix[-1] + xi)
    return min(prefix[e] + c for e, c in hypersimplex_forms(n, index_mask))


def pad(n: int, index_mask: int) -> int:
    """The n-subset I u [n+k+1, 2n] of the doubled ground set [2n]."""
    check_ground(n)
    check_mask(index_mask, n)
    k = popcount(index_mask)
    return index_mask | interval_mask(n + k + 1, 2 * n)


def pad_tilde(n: int, upper_mask: int) -> int:
    """The n-subset [|I|+1, n] u I of [2n] for I contained in [n+1, 2n]."""
    check_ground(n)
    if upper_mask & full_mask(n):
        raise ValueError("pad_tilde expects a subset of [n+1, 2n]")
    check_mask(upper_mask, 2 * n)
    k = popcount(upper_mask)
    return interval_mask(k + 1, n) | upper_mask


def cube_forms(n: int, index_mask: int) -> list[tuple[int, Rat]]:
    """Affine forms whose min is the concave extension over all of [0,1]^n.

    Derived from the layer forms of the padded index on [2n]: the pad
    relation says the padded rank is the rank of the trace on [n] plus n-k,
    so each padded form projects to a form in x_1..x_n after subtracting
    n-k.  A prefix reaching past n sums to n on the padded layer and
    projects to a constant.
    """
    check_ground(n)
    check_mask(index_mask, n)
    k = popcount(index_mask)
    if index_mask == 0:
        return [(0, 0)]
    if k == n:
        return [(n, 0)]
    dec = cyclic_decomposition(2 * n, pad(n, index_mask))
    blocks = dec.blocks
    l = dec.sigma
    sizes = dec.block_sizes()
    head = popcount(blocks[0].i_mask & ~interval_mask(1, blocks[0].end))
    forms = []
    for i in range(l):
        e = blocks[i - 1].end if i else blocks[-1].end
        c = head + (sum(sizes[i:]) if i else 0) - (n - k)
        if e <= n:
            forms.append((e, c))
        else:  # prefix covers the whole padded layer
            forms.append((0, c + n))
    return forms


def concave_ext_cube(n: int, index_mask: int, x: Sequence[Rat]) -> Rat:
    """Closed-form concave extension of the Schubert rank over [0,1]^n."""
    if len(x) != n:
        raise ValueError("point dimension mismatch")
    if any(xi < 0 or xi > 1 for xi in x):
        raise ValueError("point outside [0,1]^n")
    prefix = [0]
    for xi in x:
        prefix.append(prefix[-1] + xi)
    return min(prefix[e] + c for e, c in cube_forms(n, index_mask))


def _pad_big_block(dec: CyclicDecomposition, n: int) -> int:
    """Index of the block of pad(I) whose S contains the doubled tail."""
    top_bit = 1 << (2 * n - 1)
    for i, blk in enumerate(dec.blocks):
        if blk.s_mask & top_bit:
            return i
    raise AssertionError("no block contains 2n")


def cube_cone_constraints(n: int, index_mask: int) -> list[list[tuple[int, int, str]]]:
    """Halfspace descriptions of the projected cones tiling [0,1]^n.

    Cone i is the projection of the padded-layer cone Pi~_i; constraints
    whose block run would cross the block holding [n+1, 2n] are flipped to
    their complementary run so that every support stays inside [n].
    Each constraint is (mask, rhs, sense) with sense '>=' or '<='.
    """
    check_ground(n)
    check_mask(index_mask, n)
    k = popcount(index_mask)
    if index_mask == 0 or k == n:
        return [[]]
    dec = cyclic_decomposition(2 * n, pad(n, index_mask))
    blocks = dec.blocks
    l = dec.sigma
    sizes = dec.block_sizes()
    big = _pad_big_block(dec, n)
    cones = []
    for i in range(l):
        cons = []
        run = []
        for step in range(l - 1):
            j = (i + step) % l
            run.append(j)
            if big not in run:
                region = 0
                rhs = 0
                for m in run:
                    region |= blocks[m].s_mask
                    rhs += sizes[m]
                cons.append((region, rhs, ">="))
            else:
                comp = [m for m in range(l) if m not in run]
                region = 0
                rhs = 0
                for m in comp:
                    region |= blocks[m].s_mask
                    rhs += sizes[m]
                cons.append((region, rhs, "<="))
        cones.append(cons)
    return cones


def cube_cone_cells(n: int, index_mask: int) -> list[frozenset[int]]:
    """01 points of each projected cone: the predicted cells of the induced
    cube subdivision."""
    cells = []
    for cons in cube_cone_constraints(n, index_mask):
        members = []
        for mask in range(1 << n):
            ok = True
            for region, rhs, sense in cons:
                c = popcount(mask & region)
                if (sense == ">=" and c < rhs) or (sense == "<=" and c > rhs):
                    ok = False
                    break
            if ok:
                members.append(mask)
        cells.append(frozenset(members))
    return cells


def blade_split_cells(n: int, index_mask: int) -> list[frozenset[int]]:
    """01 vertices of each piece Pi_i n Delta_{k,n} of the layer split."""
    cs = cone_system(n, index_mask)
    k = cs.k
    cells = []
    for cons in cs.constraints:
        members = []
        for mask in masks_of_size(n, k):
            if all(popcount(mask & region) >= rhs for region, rhs in cons):
                members.append(mask)
        cells.append(frozenset(members))
    return cells


@dataclass(frozen=True)
class FaceDescription:
    """Product-of-factors description of the common face of the multi-split.

    factors: ("simplex", mask, r) stands for the slice of [0,1]^mask at
    coordinate sum r; ("cube", mask) for the full cube on those coordinates.
    """

    n: int
    factors: tuple[tuple, ...]

    def masks(self) -> frozenset[int]:
        """All 01 points of the face."""
        out = []
        for mask in range(1 << self.n):
            ok = True
            for factor in self.factors:
                if factor[0] == "simplex" and popcount(mask & factor[1]) != factor[2]:
                    ok = False
                    break
            if ok:
                out.append(mask)
        return frozenset(out)


def common_face(n: int, index_mask: int) -> FaceDescription:
    """Common face of all maximal cells of the cube subdivision of I.

    Simplex factors sit on the blocks of pad(I) away from the doubled tail;
    the block holding the tail contributes a free cube factor.  Raises for
    prefix indices, whose subdivision is trivial.
    """
    check_ground(n)
    check_mask(index_mask, n)
    k = popcount(index_mask)
    if index_mask == 0 or k == n:
        raise ValueError("trivial subdivision: single cell")
    dec = cyclic_decomposition(2 * n, pad(n, index_mask))
    if dec.sigma == 1:
        raise ValueError("trivial subdivision: single cell")
    big = _pad_big_block(dec, n)
    low = full_mask(n)
    factors = []
    for i, blk in enumerate(dec.blocks):
        if i == big:
            cube_part = blk.s_mask & low
            if cube_part:
                factors.append(("cube", cube_part))
        else:
            factors.append(("simplex", blk.s_mask, popcount(blk.i_mask)))
    return FaceDescription(n, tuple(factors))
