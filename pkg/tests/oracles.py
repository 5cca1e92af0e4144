"""Independent brute-force oracles used to freeze expected values.

Everything here deliberately avoids the production code paths it is used
to check: ranks go through explicit basis enumeration, separation through
exhaustive partition search, and concave values through convex-combination
LPs over all subsets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from dctp.bits import elements_of, mask_of, popcount
from dctp.setfn import SetFunction


def gale_bases(n: int, index_elems: list[int]) -> list[int]:
    """All k-subsets componentwise below the sorted index set, as masks."""
    k = len(index_elems)
    out = []
    for combo in combinations(range(1, n + 1), k):
        if all(x <= y for x, y in zip(combo, sorted(index_elems))):
            out.append(mask_of(combo))
    return out


def matroid_rank(bases_masks: list[int], subset_mask: int) -> int:
    """max |B n J| over the bases."""
    return max(popcount(b & subset_mask) for b in bases_masks)


def rank_oracle(n: int, index_mask: int, subset_mask: int) -> int:
    return matroid_rank(gale_bases(n, elements_of(index_mask)), subset_mask)


def submodular_global(f: SetFunction) -> bool:
    """Quantifier over all pairs X, Y (the O(4^n) form)."""
    vals, n = f.values, f.n
    for x in range(1 << n):
        for y in range(1 << n):
            if vals[x] + vals[y] < vals[x & y] + vals[x | y]:
                return False
    return True


def weakly_separated_oracle(a_mask: int, b_mask: int) -> bool:
    """Exhaustive search over the prefix splits of both difference sets."""
    a_only = sorted(elements_of(a_mask & ~b_mask))
    b_only = sorted(elements_of(b_mask & ~a_mask))
    ka, kb = popcount(a_mask), popcount(b_mask)

    def splits(diff: list[int], middle: list[int]) -> bool:
        for cut in range(len(diff) + 1):
            lo, hi = diff[:cut], diff[cut:]
            if all(x < y for x in lo for y in middle) and all(x < y for x in middle for y in hi):
                return True
        return False

    if ka >= kb and splits(b_only, a_only):
        return True
    if kb >= ka and splits(a_only, b_only):
        return True
    return False


def chord_separated_oracle(a_mask: int, b_mask: int) -> bool:
    a_only = a_mask & ~b_mask
    b_only = b_mask & ~a_mask
    n = max(a_mask.bit_length(), b_mask.bit_length())
    for i, j, k, l in combinations(range(1, n + 1), 4):
        for one, other in ((a_only, b_only), (b_only, a_only)):
            if (one >> (i - 1) & 1 and one >> (k - 1) & 1
                    and other >> (j - 1) & 1 and other >> (l - 1) & 1):
                return False
    return True


def concave_closure_oracle(f: SetFunction, x: list[Fraction]):
    """Simplex-free oracle: enumerate every affine functional through n+1 of
    the lifted points, keep those dominating f, and take the pointwise min.

    Exponential in n; only used for n <= 3.
    """
    from dctp.lp import solve_linear_system

    n = f.n
    best = None
    for masks in combinations(range(1 << n), n + 1):
        rows = [[(mask >> i) & 1 for i in range(n)] + [1] for mask in masks]
        sol = solve_linear_system(rows, [f.values[mask] for mask in masks])
        if sol is None:
            continue
        a, b = sol[:n], sol[n]
        if any(sum(a[i] for i in range(n) if mask >> i & 1) + b < f.values[mask]
               for mask in range(1 << n)):
            continue
        value = sum(ai * xi for ai, xi in zip(a, x)) + b
        if best is None or value < best:
            best = value
    assert best is not None
    return best
