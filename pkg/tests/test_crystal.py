import random

import pytest

from dctp.bits import mask_of, popcount
from dctp.crystal import lower_, raise_, raise_power
from dctp.schubert import rank_function
from dctp.separation import TwoRowGrid, grid_reduce, weakly_separated
from dctp.setfn import SetFunction, is_dctp, zero_function


def _ascents(n, r1, r2):
    out = []
    for i in range(1, n):
        bi, bj = 1 << (i - 1), 1 << i
        if any((row & bj) and not (row & bi) for row in (r1, r2)):
            continue
        if any((row & bi) and not (row & bj) for row in (r1, r2)):
            out.append(i)
    return out


def _swap_set(mask, i):
    bi, bj = 1 << (i - 1), 1 << i
    if bool(mask & bi) != bool(mask & bj):
        return mask ^ (bi | bj)
    return mask


def test_raise_requires_dctp():
    bad = SetFunction(3, [popcount(m) ** 2 for m in range(8)])
    with pytest.raises(ValueError):
        raise_(bad, 1)


def test_raise_inactive_region_unchanged():
    n = 4
    f = rank_function(n, mask_of([2, 4]))
    for i in range(1, n):
        g = raise_(f, i)
        bi, bj = 1 << (i - 1), 1 << i
        for mask in range(1 << n):
            if not (mask & bj and not mask & bi):
                assert g(mask) == f(mask)


def test_raise_simple_transposition():
    # e_1 moves the rank of {1} to the rank of {2} on n=2
    f = rank_function(2, mask_of([1]))
    assert raise_(f, 1) == rank_function(2, mask_of([2]))


def test_theorem_ascent_swap_identity():
    # at an ascent i, e_i^l carries theta_I1 + theta_I2 to the swapped pair
    for n in (3, 4):
        for r1 in range(1 << n):
            for r2 in range(1 << n):
                f = rank_function(n, r1) + rank_function(n, r2) if r1 and r2 else None
                for i in _ascents(n, r1, r2):
                    l = sum(
                        1
                        for row in (r1, r2)
                        if row & 1 << (i - 1) and not row & 1 << i
                    )
                    assert l in (1, 2)
                    start = rank_function(n, r1) + rank_function(n, r2)
                    # formal-operator mode: the sum need not be DCTP
                    lifted = raise_power(start, i, l, validate=False)
                    target = rank_function(n, _swap_set(r1, i)) + rank_function(n, _swap_set(r2, i))
                    assert lifted == target, (n, r1, r2, i)


def test_raise_preserves_dctp_on_ws_sums():
    for n in (3, 4):
        for r1 in range(1, 1 << n):
            for r2 in range(1, 1 << n):
                if not weakly_separated(r1, r2):
                    continue
                f = rank_function(n, r1) + rank_function(n, r2)
                for i in range(1, n):
                    assert is_dctp(raise_(f, i)).ok


def test_lower_roundtrip_on_rank_sums():
    for n in (3, 4):
        for r1 in range(1, 1 << n):
            for r2 in range(1, 1 << n):
                for i in _ascents(n, r1, r2):
                    if not weakly_separated(r1, r2):
                        continue
                    f = rank_function(n, r1) + rank_function(n, r2)
                    g = raise_(f, i)
                    assert g != f
                    back = lower_(g, i)
                    assert back == f, (n, r1, r2, i)


def test_lower_unraisable_is_absent():
    # the zero function has no preimage: the candidate is not raised back
    assert lower_(zero_function(3), 1) is None


def test_example_swap_word_inverse():
    # the reduction word of the paper's 2x6 grid, replayed both ways through
    # the ascent-swap identity (the pair is not weakly separated, so the
    # sums along the way are formal tables, not crystal elements)
    n = 6
    i1, i2 = mask_of([1, 4, 5]), mask_of([1, 3, 4, 6])
    r1, r2, word = grid_reduce(TwoRowGrid(n, i1, i2))
    states = [(i1, i2)]
    powers = []
    cur1, cur2 = i1, i2
    for i in word:
        l = sum(1 for row in (cur1, cur2) if row & 1 << (i - 1) and not row & 1 << i)
        powers.append(l)
        cur1, cur2 = _swap_set(cur1, i), _swap_set(cur2, i)
        states.append((cur1, cur2))
    assert (cur1, cur2) == (r1, r2)
    for (a1, a2), (b1, b2), i, l in zip(states, states[1:], word, powers):
        before = rank_function(n, a1) + rank_function(n, a2)
        after = rank_function(n, b1) + rank_function(n, b2)
        assert raise_power(before, i, l, validate=False) == after
        # read backwards, "before" is the inverse image of "after" under e_i^l


def test_lower_replay_on_ws_pair():
    # full f_i replay of a reduction word on a weakly separated pair, where
    # every intermediate sum is DCTP
    n = 5
    i1, i2 = mask_of([2, 3]), mask_of([3, 5])
    assert weakly_separated(i1, i2)
    r1, r2, word = grid_reduce(TwoRowGrid(n, i1, i2))
    assert word
    f = rank_function(n, i1) + rank_function(n, i2)
    powers = []
    cur1, cur2 = i1, i2
    for i in word:
        l = sum(1 for row in (cur1, cur2) if row & 1 << (i - 1) and not row & 1 << i)
        powers.append(l)
        f = raise_power(f, i, l)
        cur1, cur2 = _swap_set(cur1, i), _swap_set(cur2, i)
        assert f == rank_function(n, cur1) + rank_function(n, cur2)
    for i, l in zip(reversed(word), reversed(powers)):
        for _ in range(l):
            f = lower_(f, i)
            assert f is not None
    assert f == rank_function(n, i1) + rank_function(n, i2)
