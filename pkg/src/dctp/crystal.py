"""Type-A crystal raising/lowering operators on DCTP set functions.

raise_ applies the local max-update at every subset containing i+1 but not
i; its constant compares the function at the two staircase complements.
lower_ searches for the preimage pinned by the crystal axiom
b' = e_i . b  iff  b = f_i . b'.
"""

from __future__ import annotations

from itertools import combinations

from .bits import full_mask, interval_mask
from .setfn import SetFunction, is_dctp


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n - 1:
        raise ValueError(f"crystal index must lie in 1..{n - 1}, got {i}")


def _raise_constant(f: SetFunction, i: int):
    # c = f([n] \ s_i[i]) - f([n] \ [i]) - 1, where s_i[i] = [i-1] u {i+1}
    n = f.n
    top = full_mask(n)
    si_prefix = (interval_mask(1, i) ^ (1 << (i - 1))) | (1 << i)
    return f(top ^ si_prefix) - f(top ^ interval_mask(1, i)) - 1


def raise_(f: SetFunction, i: int, validate: bool = True) -> SetFunction:
    """The raising operator e_i; input must be DCTP."""
    n = f.n
    _check_index(n, i)
    if validate:
        v = is_dctp(f)
        if not v.ok:
            raise ValueError(f"raise requires a DCTP function: {v.reason} at {v.witness}")
    c = _raise_constant(f, i)
    bi, bj = 1 << (i - 1), 1 << i
    vals = list(f.values)
    for mask in range(1 << n):
        if mask & bj and not mask & bi:
            swapped = (mask ^ bj) | bi
            vals[mask] = max(vals[mask], f.values[swapped] - c)
    return SetFunction(n, vals)


def lower_(f: SetFunction, i: int, validate: bool = True) -> SetFunction | None:
    """The lowering operator f_i: a DCTP preimage of f under raise_, or None.

    Any preimage agrees with f off the active region, sits one below f on
    [i+1, n], and may sit one below f on other active subsets where the
    raising max is tied.  Those tied subsets are searched by increasing
    decrement count; the first candidate that is DCTP (every candidate
    raises back to f by construction) is returned.
    """
    n = f.n
    _check_index(n, i)
    if validate:
        v = is_dctp(f)
        if not v.ok:
            raise ValueError(f"lower requires a DCTP function: {v.reason} at {v.witness}")
    suffix = interval_mask(i + 1, n)
    c_preimage = _raise_constant(f, i) + 1  # preimage constant exceeds f's by one
    bi, bj = 1 << (i - 1), 1 << i
    tied = []
    for mask in range(1 << n):
        if mask & bj and not mask & bi:
            swapped = (mask ^ bj) | bi
            target = f.values[swapped] - c_preimage
            if target > f.values[mask]:
                return None
            if target == f.values[mask] and mask != suffix:
                tied.append(mask)
    if f.values[(suffix ^ bj) | bi] - c_preimage != f.values[suffix]:
        return None  # the forced decrement on [i+1, n] would not raise back
    for r in range(len(tied) + 1):
        for extra in combinations(tied, r):
            vals = list(f.values)
            vals[suffix] -= 1
            for mask in extra:
                vals[mask] -= 1
            candidate = SetFunction(n, vals)
            if is_dctp(candidate).ok:
                return candidate
    return None


def raise_power(f: SetFunction, i: int, power: int, validate: bool = True) -> SetFunction:
    for _ in range(power):
        f = raise_(f, i, validate=validate)
        validate = False
    return f
