import random
from itertools import combinations
from math import comb

import pytest

from dctp.bits import elements_of, interval_mask, mask_of, masks_of_size, popcount
from dctp.separation import (
    SubsetFamily,
    TwoRowGrid,
    chord_separated,
    grid_reduce,
    is_noncrossing_partition,
    is_ws_family,
    max_ws_extend,
    sections,
    strongly_separated,
    surrounds,
    weakly_separated,
)

from oracles import chord_separated_oracle, weakly_separated_oracle


def test_weak_separation_examples():
    assert weakly_separated(mask_of([1, 2]), mask_of([1, 2, 3]))  # subset
    assert not weakly_separated(mask_of([1, 3]), mask_of([2, 4]))
    assert not weakly_separated(mask_of([1, 3]), mask_of([2]))
    assert weakly_separated(0, mask_of([2, 5]))


def test_weak_separation_matches_partition_oracle():
    for n in (4, 5, 6):
        for a in range(1 << n):
            for b in range(1 << n):
                assert weakly_separated(a, b) == weakly_separated_oracle(a, b), (a, b)


def test_weak_separation_symmetric_and_implied_by_strong():
    for n in (5,):
        for a in range(1 << n):
            for b in range(1 << n):
                assert weakly_separated(a, b) == weakly_separated(b, a)
                if strongly_separated(a, b):
                    assert weakly_separated(a, b)


def test_strong_and_surround_examples():
    assert strongly_separated(mask_of([1, 2]), mask_of([3, 4]))
    assert strongly_separated(mask_of([1, 3]), mask_of([1, 3]))
    assert surrounds(mask_of([2]), mask_of([1, 3]))
    assert not surrounds(mask_of([1, 3]), mask_of([2]))
    assert not surrounds(mask_of([2]), mask_of([1]))


def test_chord_separation_examples():
    assert not chord_separated(mask_of([1, 3]), mask_of([2, 4]))
    assert chord_separated(mask_of([1, 2]), mask_of([2, 3]))
    with pytest.raises(ValueError):
        chord_separated(mask_of([1]), mask_of([1, 2]))


def test_chord_equals_weak_on_equal_sizes():
    for n in (6, 7):
        for k in range(1, n + 1):
            for a in masks_of_size(n, k):
                for b in masks_of_size(n, k):
                    cs = chord_separated(a, b)
                    assert cs == chord_separated_oracle(a, b)
                    assert cs == weakly_separated(a, b)


def test_ws_family_examples():
    n = 6
    intervals = [interval_mask(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    assert is_ws_family(SubsetFamily(n, tuple(intervals))).ok
    v = is_ws_family(SubsetFamily(4, (mask_of([1, 3]), mask_of([2, 4]))))
    assert not v.ok and set(v.witness) == {mask_of([1, 3]), mask_of([2, 4])}
    assert is_ws_family(SubsetFamily(3, ())).ok


def test_grid_reduce_paper_example():
    g = TwoRowGrid(6, mask_of([1, 4, 5]), mask_of([1, 3, 4, 6]))
    r1, r2, word = grid_reduce(g)
    assert r1 == mask_of([3, 5, 6])
    assert r2 == mask_of([2, 4, 5, 6])
    assert len(word) <= 6 * 5


def test_grid_reduce_fixed_point_and_confluence():
    rng = random.Random(17)
    for n in (4, 5, 6):
        for _ in range(40):
            g = TwoRowGrid(n, rng.randrange(1 << n), rng.randrange(1 << n))
            base = grid_reduce(g)[:2]
            assert popcount(base[0]) == popcount(g.row1)
            assert popcount(base[1]) == popcount(g.row2)
            for _ in range(4):
                assert grid_reduce(g, rng=rng)[:2] == base
            assert len(grid_reduce(g)[2]) <= n * (n - 1)


def test_grid_reduce_empty_grid():
    assert grid_reduce(TwoRowGrid(4, 0, 0)) == (0, 0, [])


def test_grid_reduce_preserves_weak_separation():
    for n in (4, 5, 6):
        for r1 in range(1 << n):
            for r2 in range(1 << n):
                s1, s2, _ = grid_reduce(TwoRowGrid(n, r1, r2))
                assert weakly_separated(r1, r2) == weakly_separated(s1, s2)


def test_sections_examples():
    secs = sections(6, mask_of([3, 5, 6]), mask_of([2, 4, 5, 6]))
    assert secs == [
        (mask_of([1]), "none"),
        (mask_of([2]), "row2"),
        (mask_of([3]), "row1"),
        (mask_of([4]), "row2"),
        (mask_of([5, 6]), "both"),
    ]
    assert sections(3, mask_of([1, 2, 3]), mask_of([1, 2, 3])) == [(mask_of([1, 2, 3]), "both")]
    with pytest.raises(ValueError):
        sections(6, mask_of([1, 4, 5]), mask_of([1, 3, 4, 6]))


def test_sections_structure_and_ws_criterion():
    # reduced grids: optional none-prefix, alternating middle, both-suffix;
    # weak separation fails exactly on a short middle section
    for n in (4, 5, 6):
        for r1 in range(1 << n):
            for r2 in range(1 << n):
                s1, s2, _ = grid_reduce(TwoRowGrid(n, r1, r2))
                secs = sections(n, s1, s2)
                kinds = [kind for _, kind in secs]
                assert all(k != "none" for k in kinds[1:])
                assert all(k != "both" for k in kinds[:-1])
                middle = [(m, k) for m, k in secs if k in ("row1", "row2")]
                for (_, ka), (_, kb) in zip(middle, middle[1:]):
                    assert ka != kb
                bad = any(
                    popcount(middle[i - 1][0]) + popcount(middle[i + 1][0]) > popcount(middle[i][0])
                    for i in range(1, len(middle) - 1)
                )
                assert bad == (not weakly_separated(s1, s2))


def test_max_ws_extend_sizes():
    assert len(max_ws_extend(SubsetFamily(2, ())).members) == 4
    for n in (3, 4, 5):
        fam = max_ws_extend(SubsetFamily(n, ()))
        assert len(fam.members) == comb(n + 1, 2) + 1
        assert is_ws_family(fam).ok
    seeded = max_ws_extend(SubsetFamily(4, (mask_of([2, 4]),)))
    assert mask_of([2, 4]) in seeded.members
    assert len(seeded.members) == 11
    with pytest.raises(ValueError):
        max_ws_extend(SubsetFamily(4, (mask_of([1, 3]), mask_of([2, 4]))))


def test_noncrossing_partition_examples():
    assert is_noncrossing_partition(4, [mask_of([1, 2]), mask_of([3, 4])])
    assert not is_noncrossing_partition(4, [mask_of([1, 3]), mask_of([2, 4])])
    assert is_noncrossing_partition(4, [mask_of([1, 4]), mask_of([2, 3])])
    with pytest.raises(ValueError):
        is_noncrossing_partition(4, [mask_of([1, 2]), mask_of([2, 3, 4])])
    with pytest.raises(ValueError):
        is_noncrossing_partition(4, [mask_of([1, 2])])
