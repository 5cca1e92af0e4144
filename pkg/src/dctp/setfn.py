"""Exact set functions on 2^[n] and the predicates that classify them.

Values are exact (Python ints or Fractions); no floating point is used
anywhere.  A function is stored as a dense table of length 2^n indexed by
subset bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .bits import (
    check_ground,
    check_mask,
    elements_of,
    full_mask,
    interval_mask,
    maximal_runs,
    popcount,
)

Rat = int | Fraction


@dataclass
class Verdict:
    """Boolean verdict with a certifying witness for the false case."""

    ok: bool
    witness: tuple | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class SetFunction:
    """Exact-valued function on all subsets of [n], indexed by bitmask."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Sequence[Rat]):
        check_ground(n)
        values = list(values)
        if len(values) != 1 << n:
            raise ValueError(f"need {1 << n} values for n={n}, got {len(values)}")
        self.n = n
        self.values = values

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int], Rat]) -> "SetFunction":
        """Build the dense table from a function of the subset mask."""
        return cls(n, [fn(mask) for mask in range(1 << n)])

    def __call__(self, mask: int) -> Rat:
        return self.values[mask]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFunction)
            and self.n == other.n
            and all(a == b for a, b in zip(self.values, other.values))
        )

    def __hash__(self):
        return hash((self.n, tuple(Fraction(v) for v in self.values)))

    def __add__(self, other: "SetFunction") -> "SetFunction":
        if self.n != other.n:
            raise ValueError("ground set mismatch")
        return SetFunction(self.n, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "SetFunction") -> "SetFunction":
        if self.n != other.n:
            raise ValueError("ground set mismatch")
        return SetFunction(self.n, [a - b for a, b in zip(self.values, other.values)])

    def __rmul__(self, c: Rat) -> "SetFunction":
        return SetFunction(self.n, [c * v for v in self.values])

    def __repr__(self):
        return f"SetFunction(n={self.n}, values={self.values!r})"

    @property
    def is_normalized(self) -> bool:
        return self.values[0] == 0

    def normalized(self) -> "SetFunction":
        """Shift by a constant so that the empty set maps to 0."""
        c = self.values[0]
        if c == 0:
            return self
        return SetFunction(self.n, [v - c for v in self.values])

    def require_normalized(self, what: str = "operation") -> "SetFunction":
        if not self.is_normalized:
            raise ValueError(f"{what} requires a normalized function (value 0 on the empty set)")
        return self


class MobiusVector:
    """Moebius coefficients of a set function, indexed by subset mask."""

    __slots__ = ("n", "mu")

    def __init__(self, n: int, mu: Sequence[Rat]):
        check_ground(n)
        mu = list(mu)
        if len(mu) != 1 << n:
            raise ValueError(f"need {1 << n} coefficients for n={n}")
        self.n = n
        self.mu = mu

    def __call__(self, mask: int) -> Rat:
        return self.mu[mask]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MobiusVector)
            and self.n == other.n
            and all(a == b for a, b in zip(self.mu, other.mu))
        )

    def __hash__(self):
        return hash((self.n, tuple(Fraction(v) for v in self.mu)))


def zero_function(n: int) -> SetFunction:
    return SetFunction(n, [0] * (1 << n))


def cardinality_function(n: int) -> SetFunction:
    return SetFunction(n, [popcount(m) for m in range(1 << n)])


def linear_function(n: int, z: Sequence[Rat]) -> SetFunction:
    """f(S) = sum of z_i over i in S."""
    if len(z) != n:
        raise ValueError("need one weight per element")
    vals = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        vals[mask] = vals[mask ^ low] + z[low.bit_length() - 1]
    return SetFunction(n, vals)


def is_submodular(f: SetFunction) -> Verdict:
    """Local pairwise test: f(Xi)+f(Xj) >= f(X)+f(Xij) for i,j outside X.

    Equivalent to global submodularity; the equivalence is covered by tests.
    """
    n, vals = f.n, f.values
    for mask in range(1 << n):
        free = elements_of(full_mask(n) ^ mask)
        for i, j in combinations(free, 2):
            bi, bj = 1 << (i - 1), 1 << (j - 1)
            if vals[mask | bi] + vals[mask | bj] < vals[mask] + vals[mask | bi | bj]:
                return Verdict(False, (mask, i, j), "submodularity fails")
    return Verdict(True)


def is_supermodular(g: SetFunction) -> Verdict:
    n, vals = g.n, g.values
    for mask in range(1 << n):
        free = elements_of(full_mask(n) ^ mask)
        for i, j in combinations(free, 2):
            bi, bj = 1 << (i - 1), 1 << (j - 1)
            if vals[mask | bi] + vals[mask | bj] > vals[mask] + vals[mask | bi | bj]:
                return Verdict(False, (mask, i, j), "supermodularity fails")
    return Verdict(True)


def is_tropical_plucker(f: SetFunction) -> Verdict:
    """Check f(Xik)+f(Xj) = max(f(Xij)+f(Xk), f(Xjk)+f(Xi)) for all X, i<j<k.

    Vacuously true when n < 3.
    """
    n, vals = f.n, f.values
    for mask in range(1 << n):
        free = elements_of(full_mask(n) ^ mask)
        for i, j, k in combinations(free, 3):
            bi, bj, bk = 1 << (i - 1), 1 << (j - 1), 1 << (k - 1)
            lhs = vals[mask | bi | bk] + vals[mask | bj]
            rhs = max(vals[mask | bi | bj] + vals[mask | bk], vals[mask | bj | bk] + vals[mask | bi])
            if lhs != rhs:
                return Verdict(False, (mask, i, j, k), "tropical Plucker relation fails")
    return Verdict(True)


def is_dctp(f: SetFunction) -> Verdict:
    v = is_submodular(f)
    if not v.ok:
        return v
    return is_tropical_plucker(f)


def is_strong_pair(f: SetFunction, g: SetFunction) -> Verdict:
    """f submodular, g supermodular, and f(B)-f(B-A) >= g(A)-g(A-B) for all A, B."""
    if f.n != g.n:
        raise ValueError("ground set mismatch")
    v = is_submodular(f)
    if not v.ok:
        return Verdict(False, ("submodular", v.witness), v.reason)
    v = is_supermodular(g)
    if not v.ok:
        return Verdict(False, ("supermodular", v.witness), v.reason)
    n = f.n
    fv, gv = f.values, g.values
    for a in range(1 << n):
        ga, gav = gv[a], gv
        for b in range(1 << n):
            if fv[b] - fv[b & ~a] < ga - gav[a & ~b]:
                return Verdict(False, ("cross", (a, b)), "cross inequality fails")
    return Verdict(True)


def mobius(f: SetFunction) -> MobiusVector:
    """mu(T) = sum over S subseteq T of (-1)^(|T|-|S|) f(S)."""
    n = f.n
    mu = list(f.values)
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                mu[mask] = mu[mask] - mu[mask ^ bit]
    return MobiusVector(n, mu)


def inverse_mobius(mu: MobiusVector) -> SetFunction:
    """f(S) = sum over T subseteq S of mu(T)."""
    n = mu.n
    vals = list(mu.mu)
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                vals[mask] = vals[mask] + vals[mask ^ bit]
    return SetFunction(n, vals)


def natural_dual(f: SetFunction) -> SetFunction:
    """f^natural(A) = f([n]) - f([n]-A); supermodular when f is submodular."""
    n = f.n
    top = full_mask(n)
    ftop = f.values[top]
    return SetFunction(n, [ftop - f.values[top ^ mask] for mask in range(1 << n)])


def interval_extension(h: dict[tuple[int, int], Rat], n: int) -> SetFunction:
    """Extend a function on intervals of [n] by summing over maximal runs.

    h must provide a value for every interval [a, b]; the extension of the
    empty set is 0.
    """
    check_ground(n)
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if (a, b) not in h:
                raise ValueError(f"missing interval value for [{a},{b}]")
    vals: list[Rat] = [0] * (1 << n)
    for mask in range(1, 1 << n):
        vals[mask] = sum(h[run] for run in maximal_runs(mask, n))
    return SetFunction(n, vals)


def local_exchange(f: SetFunction, x_mask: int, a: int, b: int) -> Rat:
    """Exchange deficiency f(Xa)+f(Xb)-f(Xab)-f(X) for a, b outside X.

    For matroid rank functions the value lies in {0, 1}.
    """
    check_mask(x_mask, f.n)
    if a == b:
        raise ValueError("exchange elements must be distinct")
    ba, bb = 1 << (a - 1), 1 << (b - 1)
    if x_mask & (ba | bb):
        raise ValueError("exchange elements must lie outside the base set")
    if not (1 <= a <= f.n and 1 <= b <= f.n):
        raise ValueError("exchange elements outside the ground set")
    v = f.values
    return v[x_mask | ba] + v[x_mask | bb] - v[x_mask | ba | bb] - v[x_mask]


def compatibility(f1: SetFunction, f2: SetFunction) -> Verdict:
    """Two DCTP functions are compatible when their sum is again DCTP."""
    if f1.n != f2.n:
        raise ValueError("ground set mismatch")
    if not is_dctp(f1).ok or not is_dctp(f2).ok:
        raise ValueError("compatibility requires DCTP inputs")
    return is_dctp(f1 + f2)


def laminar_function(n: int, pieces: Iterable[tuple[tuple[int, int], Sequence[Rat]]]) -> SetFunction:
    """Sum of concave functions of |A & X| over a laminar family of intervals.

    Each piece is ((a, b), w) where w[t] is the value at t = 0..b-a+1 and w
    must be concave.  The restriction of the sum to {0,1}^n is a DCTP
    function.
    """
    check_ground(n)
    pieces = list(pieces)
    masks = []
    for (a, b), w in pieces:
        if not (1 <= a <= b <= n):
            raise ValueError(f"not an interval of [{n}]: [{a},{b}]")
        if len(w) != b - a + 2:
            raise ValueError("weight sequence must cover 0..|A|")
        for t in range(1, len(w) - 1):
            if w[t - 1] + w[t + 1] > 2 * w[t]:
                raise ValueError("weight sequence is not concave")
        masks.append(interval_mask(a, b))
    for (ia, _), (ib, _) in combinations(zip(masks, pieces), 2):
        meet = ia & ib
        if meet and meet != ia and meet != ib:
            raise ValueError("interval family is not laminar")
    vals: list[Rat] = []
    for mask in range(1 << n):
        total: Rat = 0
        for m, (_, w) in zip(masks, pieces):
            total += w[popcount(mask & m)]
        vals.append(total)
    return SetFunction(n, vals)
