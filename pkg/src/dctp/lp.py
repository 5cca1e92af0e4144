"""Dense exact-rational simplex and small linear-algebra helpers.

Everything runs on Fractions; Bland's rule guarantees termination.  Sizes
here are desk scale (at most a few hundred columns), so the plain tableau
method is plenty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vec = list[Fraction]


def _frac_rows(rows: Sequence[Sequence]) -> list[Vec]:
    return [[Fraction(v) for v in row] for row in rows]


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    m = _frac_rows(rows)
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col]
        m[row] = [v / inv for v in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of the points (-1 for no points)."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in pts[1:]]
    return matrix_rank(rows) if rows else 0


def solve_linear_system(rows: Sequence[Sequence], rhs: Sequence) -> Vec | None:
    """One solution of A x = b, or None when inconsistent (A may be rectangular)."""
    m = _frac_rows(rows)
    b = [Fraction(v) for v in rhs]
    if not m:
        return []
    cols = len(m[0])
    piv_cols = []
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        b[row], b[pivot] = b[pivot], b[row]
        inv = m[row][col]
        m[row] = [v / inv for v in m[row]]
        b[row] /= inv
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * c for a, c in zip(m[r], m[row])]
                b[r] -= factor * b[row]
        piv_cols.append(col)
        row += 1
        if row == len(m):
            break
    for r in range(row, len(m)):
        if b[r] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, col in enumerate(piv_cols):
        x[col] = b[r]
    return x


class _Unbounded(Exception):
    pass


class LPResult:
    __slots__ = ("status", "x", "value", "dual")

    def __init__(self, status: str, x: Vec | None = None, value: Fraction | None = None, dual: Vec | None = None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.x = x
        self.value = value
        self.dual = dual

    def __repr__(self):
        return f"LPResult({self.status}, value={self.value})"


def solve_standard(
    A: Sequence[Sequence], b: Sequence, c: Sequence
) -> LPResult:
    """min c.x  s.t.  A x = b, x >= 0 (two-phase tableau simplex, Bland).

    The dual vector y (one entry per row, with y.b = optimal value) is
    returned alongside the primal solution.
    """
    rows = _frac_rows(A)
    rhs = [Fraction(v) for v in b]
    cost = [Fraction(v) for v in c]
    m = len(rows)
    n = len(cost)
    flipped = [False] * m
    for r in range(m):
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]
            flipped[r] = True
    # tableau columns: n structural + m artificial, artificials double as B^-1
    tab = [rows[r] + [Fraction(1) if j == r else Fraction(0) for j in range(m)] + [rhs[r]] for r in range(m)]
    basis = [n + r for r in range(m)]

    def pivot(row: int, col: int) -> None:
        inv = tab[row][col]
        tab[row] = [v / inv for v in tab[row]]
        for r in range(m):
            if r != row and tab[r][col] != 0:
                factor = tab[r][col]
                tr, tp = tab[r], tab[row]
                tab[r] = [a - factor * bb for a, bb in zip(tr, tp)]

    basis_set = set(basis)

    def run(costs: Vec, allowed: int) -> None:
        # Bland's rule: smallest improving column, ratio ties to smallest
        # basis variable; guarantees termination under degeneracy.
        while True:
            cb = [costs[j] for j in basis]
            entering = -1
            for j in range(allowed):
                if j in basis_set:
                    continue
                red = costs[j] - sum(cb[r] * tab[r][j] for r in range(m) if tab[r][j] != 0)
                if red < 0:
                    entering = j
                    break
            if entering < 0:
                return
            leaving = -1
            best = None
            for r in range(m):
                a = tab[r][entering]
                if a > 0:
                    ratio = tab[r][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[r] < basis[leaving]):
                        best = ratio
                        leaving = r
            if leaving < 0:
                raise _Unbounded
            pivot(leaving, entering)
            basis_set.discard(basis[leaving])
            basis[leaving] = entering
            basis_set.add(entering)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    try:
        run(phase1, n + m)
    except _Unbounded:  # pragma: no cover - phase 1 is always bounded
        raise AssertionError("phase 1 unbounded")
    if sum(tab[r][-1] for r in range(m) if basis[r] >= n) > 0:
        return LPResult("infeasible")
    # drive leftover artificials out of the basis; drop rows that cannot pivot
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if tab[r][j] != 0), None)
            if col is not None:
                pivot(r, col)
                basis_set.discard(basis[r])
                basis[r] = col
                basis_set.add(col)
    # rows still basic in an artificial are identically zero; they stay inert
    padded = cost + [Fraction(0)] * m
    try:
        run(padded, n)
    except _Unbounded:
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][-1]
    cb = [padded[j] for j in basis]
    dual = [sum(cb[r] * tab[r][n + i] for r in range(m) if tab[r][n + i] != 0) for i in range(m)]
    dual = [-d if flip else d for d, flip in zip(dual, flipped)]
    value = sum(cost[j] * x[j] for j in range(n) if x[j] != 0)
    return LPResult("optimal", x, value, dual)


def solve_general(
    c: Sequence,
    A_ub: Sequence[Sequence] | None = None,
    b_ub: Sequence | None = None,
    A_eq: Sequence[Sequence] | None = None,
    b_eq: Sequence | None = None,
    maximize: bool = False,
) -> LPResult:
    """min (or max) c.x over free variables with <= and == constraints.

    Free variables are split into positive and negative parts and slack
    variables absorb the inequalities.
    """
    A_ub = _frac_rows(A_ub or [])
    b_ub = [Fraction(v) for v in (b_ub or [])]
    A_eq = _frac_rows(A_eq or [])
    b_eq = [Fraction(v) for v in (b_eq or [])]
    n = len(c)
    cost = [Fraction(v) for v in c]
    if maximize:
        cost = [-v for v in cost]
    n_ub = len(A_ub)
    rows = []
    rhs = []
    for r in range(n_ub):
        row = A_ub[r]
        rows.append([*(row[j] for j in range(n)), *(-row[j] for j in range(n))] +
                    [Fraction(1) if s == r else Fraction(0) for s in range(n_ub)])
        rhs.append(b_ub[r])
    for r, row in enumerate(A_eq):
        rows.append([*(row[j] for j in range(n)), *(-row[j] for j in range(n))] +
                    [Fraction(0)] * n_ub)
        rhs.append(b_eq[r])
    std_cost = [*cost, *(-v for v in cost)] + [Fraction(0)] * n_ub
    res = solve_standard(rows, rhs, std_cost)
    if res.status != "optimal":
        return res
    x = [res.x[j] - res.x[n + j] for j in range(n)]
    value = sum(Fraction(cj) * xj for cj, xj in zip(c, x))
    return LPResult("optimal", x, value, res.dual)
