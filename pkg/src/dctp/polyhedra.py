"""Generalized polymatroid and polypositroid geometry on exact rationals.

A bounded g-polymatroid is determined by its strong pair (f, g), recovered
from any vertex set by support maxima/minima.  Vertices are produced by the
greedy rule on the lifted base polyhedron; membership questions on 01
points reduce to popcount comparisons against the pair tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .bits import (
    check_ground,
    elements_of,
    full_mask,
    intervals,
    interval_mask,
    mask_of,
    maximal_runs,
    popcount,
)
from .lp import affine_rank, matrix_rank
from .polytope import Point, Polytope, dd_vertices, extreme_points, minkowski_sum_points
from .setfn import (
    MobiusVector,
    Rat,
    SetFunction,
    Verdict,
    is_strong_pair,
    is_submodular,
    is_supermodular,
    mobius,
    natural_dual,
)


def base_polytope(f: SetFunction) -> Polytope:
    """Vertices of {x : x(S) <= f(S), x([n]) = f([n])} by the greedy rule."""
    v = is_submodular(f)
    if not v.ok:
        raise ValueError(f"base polytope requires a submodular function: witness {v.witness}")
    f.require_normalized("base polytope")
    n = f.n
    verts = set()
    for perm in permutations(range(n)):
        x = [Fraction(0)] * n
        mask = 0
        prev = f.values[0]
        for i in perm:
            mask |= 1 << i
            cur = f.values[mask]
            x[i] = Fraction(cur - prev)
            prev = cur
        verts.add(tuple(x))
    return Polytope(n, sorted(verts), assume_extreme=True)


def supermodular_base_polytope(h: SetFunction) -> Polytope:
    """Vertices of {x : x(S) >= h(S), x([n]) = h([n])} for supermodular h."""
    v = is_supermodular(h)
    if not v.ok:
        raise ValueError(f"requires a supermodular function: witness {v.witness}")
    h.require_normalized("base polytope")
    n = h.n
    verts = set()
    for perm in permutations(range(n)):
        x = [Fraction(0)] * n
        mask = 0
        prev = h.values[0]
        for i in perm:
            mask |= 1 << i
            cur = h.values[mask]
            x[i] = Fraction(cur - prev)
            prev = cur
        verts.add(tuple(x))
    return Polytope(n, sorted(verts), assume_extreme=True)


def support_pair(P: Polytope) -> tuple[SetFunction, SetFunction]:
    """(f, g) with f(A) = max x(A) and g(A) = min x(A) over the polytope."""
    n = P.n
    f_vals: list[Rat] = []
    g_vals: list[Rat] = []
    for mask in range(1 << n):
        sums = [sum(v[i] for i in range(n) if mask >> i & 1) for v in P.vertices]
        f_vals.append(max(sums))
        g_vals.append(min(sums))
    return SetFunction(n, f_vals), SetFunction(n, g_vals)


def _lift_pair(f: SetFunction, g: SetFunction) -> SetFunction:
    """Supermodular h on [n+1] whose base polyhedron projects onto Q(f, g):
    h(X) = g(X) and h(X + top) = f([n]) - f([n] - X)."""
    n = f.n
    top_bit = 1 << n
    full = full_mask(n)
    f_top = f.values[full]
    vals: list[Rat] = [0] * (1 << (n + 1))
    for mask in range(1 << n):
        vals[mask] = g.values[mask]
        vals[mask | top_bit] = f_top - f.values[full ^ mask]
    return SetFunction(n + 1, vals)


def gpoly_vertices(f: SetFunction, g: SetFunction) -> list[Point]:
    """Vertices of Q(f, g) = {x : g(A) <= x(A) <= f(A)} for a strong pair.

    The lifted supermodular base polyhedron is enumerated by the greedy
    rule; its vertices project onto a superset of the vertices of Q(f, g),
    which is then pruned by a tight-constraint rank test.
    """
    n = f.n
    h = _lift_pair(f, g)
    candidates = set()
    for perm in permutations(range(n + 1)):
        x = [Fraction(0)] * (n + 1)
        mask = 0
        prev = h.values[0]
        for i in perm:
            mask |= 1 << i
            cur = h.values[mask]
            x[i] = Fraction(cur - prev)
            prev = cur
        candidates.add(tuple(x[:n]))
    out = []
    for x in sorted(candidates):
        if _is_pair_vertex(f, g, x):
            out.append(x)
    return out


def _is_pair_vertex(f: SetFunction, g: SetFunction, x: Point) -> bool:
    n = f.n
    sums: list[Fraction] = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + x[low.bit_length() - 1]
    rows = []
    for mask in range(1, 1 << n):
        if sums[mask] == f.values[mask] or sums[mask] == g.values[mask]:
            rows.append([(mask >> i) & 1 for i in range(n)])
    return bool(rows) and matrix_rank(rows) == n


def gpoly_from_pair(f: SetFunction, g: SetFunction) -> Polytope:
    """The g-polymatroid of a strong pair, via the lifted base polyhedron."""
    v = is_strong_pair(f, g)
    if not v.ok:
        raise ValueError(f"not a strong pair: {v.reason} at {v.witness}")
    f.require_normalized("g-polymatroid")
    g.require_normalized("g-polymatroid")
    return Polytope(f.n, gpoly_vertices(f, g), assume_extreme=True)


def as_gpolymatroid_pair(P: Polytope) -> tuple[SetFunction, SetFunction] | None:
    """The strong pair of P when P is a bounded g-polymatroid, else None."""
    f, g = support_pair(P)
    if not is_strong_pair(f, g).ok:
        return None
    if sorted(gpoly_vertices(f, g)) != sorted(P.vertices):
        return None
    return f, g


_UNIT_DIRECTIONS_CACHE: dict[tuple[Point, ...], bool] = {}


def _direction_in_a_n(direction: Sequence[Fraction]) -> bool:
    nonzero = [(i, d) for i, d in enumerate(direction) if d != 0]
    if len(nonzero) == 1:
        return True  # parallel to +-e_i
    if len(nonzero) == 2:
        return nonzero[0][1] + nonzero[1][1] == 0  # parallel to e_i - e_j
    return False


def is_gpolymatroid(P: Polytope) -> Verdict:
    """Edge test: every 1-face direction parallel to +-e_i or e_i - e_j."""
    for u, v in P.edges():
        d = tuple(a - b for a, b in zip(u, v))
        if not _direction_in_a_n(d):
            return Verdict(False, (u, v), "edge direction outside the unimodular system")
    return Verdict(True)


def is_gmatroid_masks(n: int, masks: frozenset[int] | set[int]) -> bool:
    """Is the hull of these 01 points a g-matroid?

    Equivalent to: the support pair recovered from the points is a strong
    pair whose polymatroid has exactly these 01 points.  This avoids edge
    enumeration and agrees with the edge test (covered by tests).
    """
    masks = frozenset(masks)
    if not masks:
        return False
    f_vals = [0] * (1 << n)
    g_vals = [0] * (1 << n)
    for region in range(1 << n):
        counts = [popcount(m & region) for m in masks]
        f_vals[region] = max(counts)
        g_vals[region] = min(counts)
    f = SetFunction(n, f_vals)
    g = SetFunction(n, g_vals)
    if not is_strong_pair(f, g).ok:
        return False
    return _pair_masks(n, f_vals, g_vals) == masks


def _pair_masks(n: int, f_vals: Sequence[Rat], g_vals: Sequence[Rat]) -> frozenset[int]:
    """01 points of Q(f, g)."""
    out = []
    for m in range(1 << n):
        ok = True
        for region in range(1, 1 << n):
            c = popcount(m & region)
            if c > f_vals[region] or c < g_vals[region]:
                ok = False
                break
        if ok:
            out.append(m)
    return frozenset(out)


def interval_masks(n: int, f_vals: Sequence[Rat], g_vals: Sequence[Rat]) -> frozenset[int]:
    """01 points of QI(f, g): only interval constraints are enforced."""
    cons = [(interval_mask(a, b)) for a, b in intervals(n)]
    out = []
    for m in range(1 << n):
        ok = True
        for region in cons:
            c = popcount(m & region)
            if c > f_vals[region] or c < g_vals[region]:
                ok = False
                break
        if ok:
            out.append(m)
    return frozenset(out)


@dataclass
class GPositroidVerdict:
    """Outcome of the three generalized-positroid tests.

    interval_route: Q(f,g) = QI(f,g) on 01 points.
    product_route: non-crossing decomposition with positroid factors.
    face_route: no forbidden two-dimensional face.
    """

    interval_route: bool
    product_route: bool
    face_route: bool
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.interval_route

    def agree(self) -> bool:
        return self.interval_route == self.product_route == self.face_route


def is_gpositroid(P_or_masks, n: int | None = None) -> GPositroidVerdict:
    """Run all three g-positroid characterizations on a g-matroid.

    Accepts a Polytope with 01 vertices or a set of masks (with n given).
    Raises when the input is not a g-matroid.
    """
    if isinstance(P_or_masks, Polytope):
        n = P_or_masks.n
        masks = P_or_masks.zero_one_masks()
        if masks is None:
            raise ValueError("not a g-matroid: vertices are not 01 points")
    else:
        if n is None:
            raise ValueError("n is required when passing masks")
        masks = frozenset(P_or_masks)
    if not is_gmatroid_masks(n, masks):
        raise ValueError("not a g-matroid")
    face_ok, witness = _route_faces(n, masks)
    return GPositroidVerdict(_route_interval(n, masks), _route_product(n, masks), face_ok, witness)


def _route_interval(n: int, masks: frozenset[int]) -> bool:
    f_vals = [max(popcount(m & region) for m in masks) for region in range(1 << n)]
    g_vals = [min(popcount(m & region) for m in masks) for region in range(1 << n)]
    return interval_masks(n, f_vals, g_vals) == masks


def _surrounds_sets(s_mask: int, t_mask: int) -> bool:
    """S surrounds T: a nontrivial split of S strictly around all of T."""
    if t_mask == 0 or s_mask == 0:
        return False
    lo = (t_mask & -t_mask).bit_length()
    hi = t_mask.bit_length()
    below = [i for i in elements_of(s_mask) if i < lo]
    above = [i for i in elements_of(s_mask) if i > hi]
    return bool(below) and bool(above) and len(below) + len(above) == popcount(s_mask)


def _noncrossing(p_mask: int, q_mask: int) -> bool:
    merged = sorted(elements_of(p_mask | q_mask))
    runs = 0
    last = 0
    for i in merged:
        side = 1 if p_mask >> (i - 1) & 1 else -1
        if side != last:
            runs += 1
            last = side
    return runs <= 3


def minimal_sum_sets(n: int, masks: frozenset[int]) -> list[int]:
    """Inclusion-minimal nonempty S with f(S) = g(S) for the recovered pair."""
    tight = []
    for region in range(1, 1 << n):
        counts = [popcount(m & region) for m in masks]
        if max(counts) == min(counts):
            tight.append(region)
    minimal = []
    for s in sorted(tight, key=popcount):
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    return minimal


def _restrict_masks(masks: frozenset[int], region: int) -> tuple[int, frozenset[int]]:
    """Project the 01 points onto the coordinates of region (order inherited)."""
    positions = [i for i in range(region.bit_length()) if region >> i & 1]
    out = set()
    for m in masks:
        sub = 0
        for j, i in enumerate(positions):
            if m >> i & 1:
                sub |= 1 << j
        out.add(sub)
    return len(positions), frozenset(out)


def _route_product(n: int, masks: frozenset[int]) -> bool:
    parts = minimal_sum_sets(n, masks)
    union = 0
    for p in parts:
        if p & union:
            return False  # minimal sum-sets of a g-polymatroid never overlap
        union |= p
    rest = full_mask(n) ^ union
    blocks = parts + ([rest] if rest else [])
    for p, q in combinations(blocks, 2):
        if not _noncrossing(p, q):
            return False
    for p in parts:
        if rest and _surrounds_sets(p, rest):
            return False
    for block in blocks:
        sub_n, sub_masks = _restrict_masks(masks, block)
        if not _route_interval(sub_n, sub_masks):
            return False
    return True


def _route_faces(n: int, masks: frozenset[int]) -> tuple[bool, tuple | None]:
    """Scan for the two forbidden 2-face vertex patterns."""
    f_vals = [max(popcount(m & region) for m in masks) for region in range(1 << n)]
    g_vals = [min(popcount(m & region) for m in masks) for region in range(1 << n)]

    def minimal_face(points: list[int]) -> set[int]:
        # tight constraints at the barycenter cut out the minimal face
        k = len(points)
        face = set(masks)
        for region in range(1, 1 << n):
            total = sum(popcount(p & region) for p in points)
            if total == k * f_vals[region]:
                face = {m for m in face if popcount(m & region) == f_vals[region]}
            elif total == k * g_vals[region]:
                face = {m for m in face if popcount(m & region) == g_vals[region]}
        return face

    for trip in combinations(range(1, n + 1), 3):
        i, j, k = trip
        bi, bj, bk = 1 << (i - 1), 1 << (j - 1), 1 << (k - 1)
        free = full_mask(n) ^ bi ^ bj ^ bk
        sub = free
        while True:
            square = [sub | bi | bj, sub | bj | bk, sub | bk, sub | bi]
            if all(p in masks for p in square):
                if minimal_face(square) == set(square):
                    return False, (sub, i, j, k)
            if sub == 0:
                break
            sub = (sub - 1) & free
    for quad in combinations(range(1, n + 1), 4):
        i, j, k, l = quad
        bi, bj, bk, bl = (1 << (i - 1), 1 << (j - 1), 1 << (k - 1), 1 << (l - 1))
        free = full_mask(n) ^ bi ^ bj ^ bk ^ bl
        sub = free
        while True:
            square = [sub | bi | bj, sub | bj | bk, sub | bk | bl, sub | bl | bi]
            if all(p in masks for p in square):
                if minimal_face(square) == set(square):
                    return False, (sub, i, j, k, l)
            if sub == 0:
                break
            sub = (sub - 1) & free
    return True, None


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    """Exact Minkowski sum; adds support pairs when both are g-polymatroids."""
    if P.n != Q.n:
        raise ValueError("ambient dimension mismatch")
    pp = as_gpolymatroid_pair(P)
    qq = as_gpolymatroid_pair(Q)
    if pp is not None and qq is not None:
        f = pp[0] + qq[0]
        g = pp[1] + qq[1]
        return Polytope(P.n, gpoly_vertices(f, g), assume_extreme=True)
    return minkowski_sum_points(P, Q)


def minkowski_difference(A: Polytope, B: Polytope) -> Polytope | None:
    """A - B = {x : x + B <= A}; None when empty."""
    if A.n != B.n:
        raise ValueError("ambient dimension mismatch")
    n = A.n
    base, dirs = A.affine_basis()
    # x + B must fit inside the affine hull of A
    b0 = B.vertices[0]
    dir_rows = [list(d) for d in dirs]
    for b in B.vertices[1:]:
        delta = [x - y for x, y in zip(b, b0)]
        if matrix_rank(dir_rows + [delta]) != len(dirs):
            return None
    facets = A.facets()
    shifted = []
    for a, b in facets:
        shrink = B.support(a)
        shifted.append((a, b - shrink))
    if not facets:  # A is a single point
        diff = [x - y for x, y in zip(A.vertices[0], b0)]
        if all(tuple(x + d for x, d in zip(v, diff)) in set(A.vertices) for v in B.vertices):
            return Polytope(n, [diff], assume_extreme=True)
        return None
    d = len(dirs)
    if d == 0:
        return None  # unreachable: handled by the point case above
    # solve in the affine-hull coordinates of A shifted by -b0
    from .polytope import _reduce_coords

    ineqs = []
    for a, b in shifted:
        # x = base - b0 + sum t_i dirs_i; a.x <= b
        const = sum(ai * (pi - qi) for ai, pi, qi in zip(a, base, b0))
        coeffs = tuple(sum(ai * di for ai, di in zip(a, dvec)) for dvec in dirs)
        ineqs.append((coeffs, b - const))
    verts = dd_vertices(d, ineqs)
    if not verts:
        return None
    pts = []
    for t in verts:
        pts.append(tuple(
            basei - b0i + sum(t[j] * dirs[j][i] for j in range(d))
            for i, (basei, b0i) in enumerate(zip(base, b0))
        ))
    return Polytope(n, pts)


@dataclass
class SimplexDecomposition:
    """Signed Minkowski combination of simplex slices.

    terms: (mask, coefficient, kind) with kind "simplex" for Delta_S or
    "truncated" for Conv(0, Delta_S); negative coefficients are Minkowski
    differences.
    """

    n: int
    terms: list[tuple[int, Fraction, str]]

    def positive_part(self) -> list[tuple[int, Fraction, str]]:
        return [t for t in self.terms if t[1] > 0]

    def negative_part(self) -> list[tuple[int, Fraction, str]]:
        return [(m, -c, k) for m, c, k in self.terms if c < 0]


def simplex_polytope(n: int, mask: int, kind: str = "simplex") -> Polytope:
    pts = [tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n) if mask >> i & 1]
    if kind == "truncated":
        pts.append(tuple(Fraction(0) for _ in range(n)))
    return Polytope(n, pts, assume_extreme=True)


def mix_terms(n: int, terms: Sequence[tuple[int, Fraction, str]]) -> Polytope:
    """Minkowski sum of scaled simplex terms (all coefficients positive)."""
    acc = Polytope(n, [tuple(Fraction(0) for _ in range(n))], assume_extreme=True)
    for mask, coeff, kind in terms:
        if coeff <= 0:
            raise ValueError("mix_terms needs positive coefficients")
        acc = minkowski_sum(acc, simplex_polytope(n, mask, kind).scale(coeff))
    return acc


def simplex_decomposition_base(h: SetFunction) -> SimplexDecomposition:
    """Moebius-coefficient decomposition of the supermodular base polyhedron
    {x : x(S) >= h(S), x([n]) = h([n])} into simplex summands."""
    v = is_supermodular(h)
    if not v.ok:
        raise ValueError(f"requires a supermodular function: witness {v.witness}")
    h.require_normalized("simplex decomposition")
    mu = mobius(h)
    terms = [(mask, Fraction(mu.mu[mask]), "simplex")
             for mask in range(1, 1 << h.n) if mu.mu[mask] != 0]
    return SimplexDecomposition(h.n, terms)


def simplex_decomposition_gpoly(f: SetFunction, g: SetFunction) -> SimplexDecomposition:
    """Decomposition of Q(f, g) with truncated simplexes weighted by
    mu_{f-natural} - mu_g and plain simplexes by mu_g."""
    v = is_strong_pair(f, g)
    if not v.ok:
        raise ValueError(f"not a strong pair: {v.reason} at {v.witness}")
    f.require_normalized("simplex decomposition")
    g.require_normalized("simplex decomposition")
    mu_fn = mobius(natural_dual(f))
    mu_g = mobius(g)
    terms: list[tuple[int, Fraction, str]] = []
    for mask in range(1, 1 << f.n):
        bar = Fraction(mu_fn.mu[mask]) - Fraction(mu_g.mu[mask])
        if bar != 0:
            terms.append((mask, bar, "truncated"))
        plain = Fraction(mu_g.mu[mask])
        if plain != 0:
            terms.append((mask, plain, "simplex"))
    return SimplexDecomposition(f.n, terms)


def _clip_halfspace(P: Polytope, a: Sequence, b: Fraction) -> Polytope | None:
    """P n {a.x <= b} via kept vertices and cut edges."""
    vals = [sum(ai * vi for ai, vi in zip(a, v)) - b for v in P.vertices]
    if all(val <= 0 for val in vals):
        return P
    keep = [v for v, val in zip(P.vertices, vals) if val <= 0]
    pts = list(keep)
    val_of = dict(zip(P.vertices, vals))
    for u, v in P.edges():
        vu, vv = val_of[u], val_of[v]
        if (vu < 0 < vv) or (vv < 0 < vu):
            t = vu / (vu - vv)
            pts.append(tuple(x + t * (y - x) for x, y in zip(u, v)))
    if not pts:
        return None
    return Polytope(P.n, pts)


def intersect_plank(P: Polytope, alpha, beta) -> Polytope | None:
    """P n {alpha <= x([n]) <= beta}."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha > beta:
        raise ValueError("plank bounds out of order")
    ones = [1] * P.n
    out = _clip_halfspace(P, ones, beta)
    if out is None:
        return None
    return _clip_halfspace(out, [-1] * P.n, -alpha)


def intersect_box(P: Polytope, alpha, beta) -> Polytope | None:
    """P n {alpha <= x_i <= beta for all i}."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha > beta:
        raise ValueError("box bounds out of order")
    out: Polytope | None = P
    for i in range(P.n):
        if out is None:
            return None
        e = [0] * P.n
        e[i] = 1
        out = _clip_halfspace(out, e, beta)
        if out is None:
            return None
        e = [0] * P.n
        e[i] = -1
        out = _clip_halfspace(out, e, -alpha)
    return out


def project_prefix(P: Polytope, m: int) -> Polytope:
    """Image under the projection onto the first m coordinates."""
    if not 1 <= m <= P.n:
        raise ValueError("projection length out of range")
    return Polytope(m, [v[:m] for v in P.vertices])


@dataclass
class ProductDecomposition:
    sum_sets: list[int]
    rest: int
    factors: list[Polytope]  # aligned with sum_sets + [rest] when rest != 0
    dim: int


def product_decomposition(P: Polytope) -> ProductDecomposition:
    """Split a g-polymatroid along its minimal sum-sets.

    Factors are the coordinate projections onto each part; dim(P) = n - k
    (k the number of sum-sets) is verified.
    """
    pair = as_gpolymatroid_pair(P)
    if pair is None:
        raise ValueError("not a g-polymatroid")
    f, g = pair
    n = P.n
    tight = [region for region in range(1, 1 << n) if f.values[region] == g.values[region]]
    minimal: list[int] = []
    for s in sorted(tight, key=popcount):
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    union = 0
    for s in minimal:
        union |= s
    rest = full_mask(n) ^ union
    blocks = minimal + ([rest] if rest else [])
    factors = []
    for block in blocks:
        positions = [i for i in range(n) if block >> i & 1]
        factors.append(Polytope(len(positions), [tuple(v[i] for i in positions) for v in P.vertices]))
    dim = P.dim
    if dim != n - len(minimal):
        raise AssertionError(f"dimension {dim} differs from n - k = {n - len(minimal)}")
    return ProductDecomposition(minimal, rest, factors, dim)
