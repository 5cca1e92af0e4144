"""Exact-rational polytopes given by vertex sets.

Everything is bounded and desk scale; hulls, edges, and facets are computed
with exact arithmetic only.  Vertex enumeration from halfspaces uses the
double description method seeded with a bounding box; facet enumeration
goes through the polar.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .lp import affine_rank, matrix_rank, solve_general, solve_linear_system, solve_standard

Point = tuple[Fraction, ...]


def _point(p: Sequence) -> Point:
    return tuple(Fraction(v) for v in p)


def is_extreme(point: Sequence, others: Iterable[Sequence]) -> bool:
    """point not in conv(others), decided by an exact feasibility LP."""
    others = [_point(o) for o in others]
    p = _point(point)
    if not others:
        return True
    d = len(p)
    A = [[o[i] for o in others] for i in range(d)]
    A.append([1] * len(others))
    res = solve_standard(A, list(p) + [1], [0] * len(others))
    return res.status == "infeasible"


def extreme_points(points: Iterable[Sequence]) -> list[Point]:
    """Irredundant vertex set of the convex hull of the points."""
    pts = sorted(set(_point(p) for p in points))
    out = []
    for i, p in enumerate(pts):
        if is_extreme(p, [q for q in pts if q != p]):
            out.append(p)
    return out


class Polytope:
    """Convex hull of finitely many rational points, stored by its vertices."""

    __slots__ = ("n", "vertices")

    def __init__(self, n: int, vertices: Sequence[Sequence], *, assume_extreme: bool = False):
        self.n = n
        pts = [_point(v) for v in vertices]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        if any(len(p) != n for p in pts):
            raise ValueError("point dimension mismatch")
        self.vertices = tuple(sorted(set(pts))) if assume_extreme else tuple(extreme_points(pts))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Polytope":
        pts = [tuple(Fraction((m >> i) & 1) for i in range(n)) for m in masks]
        # 01 points are always in convex position
        return cls(n, pts, assume_extreme=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and self.n == other.n and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.n, self.vertices))

    def __repr__(self):
        return f"Polytope(n={self.n}, {len(self.vertices)} vertices)"

    @property
    def dim(self) -> int:
        return affine_rank(self.vertices)

    def support(self, direction: Sequence) -> Fraction:
        d = _point(direction)
        return max(sum(a * b for a, b in zip(d, v)) for v in self.vertices)

    def contains(self, point: Sequence) -> bool:
        p = _point(point)
        A = [[v[i] for v in self.vertices] for i in range(self.n)]
        A.append([1] * len(self.vertices))
        res = solve_standard(A, list(p) + [1], [0] * len(self.vertices))
        return res.status == "optimal"

    def mask_of_vertex(self, v: Point) -> int | None:
        mask = 0
        for i, coord in enumerate(v):
            if coord == 1:
                mask |= 1 << i
            elif coord != 0:
                return None
        return mask

    def zero_one_masks(self) -> frozenset[int] | None:
        """Vertex set as subset masks; None when some vertex is not 01."""
        out = []
        for v in self.vertices:
            m = self.mask_of_vertex(v)
            if m is None:
                return None
            out.append(m)
        return frozenset(out)

    def translate(self, z: Sequence) -> "Polytope":
        zz = _point(z)
        return Polytope(self.n, [tuple(a + b for a, b in zip(v, zz)) for v in self.vertices],
                        assume_extreme=True)

    def scale(self, c) -> "Polytope":
        c = Fraction(c)
        if c < 0:
            raise ValueError("scaling factor must be nonnegative")
        if c == 0:
            return Polytope(self.n, [tuple(Fraction(0) for _ in range(self.n))], assume_extreme=True)
        return Polytope(self.n, [tuple(c * a for a in v) for v in self.vertices], assume_extreme=True)

    def edges(self) -> list[tuple[Point, Point]]:
        """All 1-faces, by exact separating-functional feasibility tests."""
        verts = self.vertices
        out = []
        for u, v in combinations(verts, 2):
            others = [w for w in verts if w != u and w != v]
            if not others:
                out.append((u, v))
                continue
            # find phi with phi.(v-u) = 0 and phi.(w-u) <= -1 for all others
            A_eq = [[vv - uu for vv, uu in zip(v, u)]]
            A_ub = [[ww - uu for ww, uu in zip(w, u)] for w in others]
            res = solve_general([0] * self.n, A_ub=A_ub, b_ub=[-1] * len(others),
                                A_eq=A_eq, b_eq=[0])
            if res.status == "optimal":
                out.append((u, v))
        return out

    def affine_basis(self) -> tuple[Point, list[Point]]:
        """(base point, independent direction vectors spanning the hull)."""
        base = self.vertices[0]
        dirs: list[Point] = []
        rows: list[list[Fraction]] = []
        for v in self.vertices[1:]:
            d = tuple(a - b for a, b in zip(v, base))
            if matrix_rank(rows + [list(d)]) > len(dirs):
                dirs.append(d)
                rows.append(list(d))
        return base, dirs

    def facets(self) -> list[tuple[Point, Fraction]]:
        """Facet inequalities (a, b) with a.x <= b, valid within the affine
        hull (for lower-dimensional polytopes these cut out relative facets).
        """
        base, dirs = self.affine_basis()
        d = len(dirs)
        if d == 0:
            return []
        coords = [_reduce_coords(v, base, dirs) for v in self.vertices]
        centroid = tuple(sum(c[i] for c in coords) / len(coords) for i in range(d))
        shifted = [tuple(a - b for a, b in zip(c, centroid)) for c in coords]
        if d == 1:
            lo = min(c[0] for c in shifted)
            hi = max(c[0] for c in shifted)
            polar_verts = [(1 / hi,), (1 / lo,)]
        else:
            polar_verts = dd_vertices(d, [(w, Fraction(1)) for w in shifted])
        out = []
        for y in polar_verts:
            # y.(x' - centroid) <= 1 in reduced coords; lift to ambient space
            a = tuple(sum(y[i] * dirs[i][j] for i in range(d)) for j in range(self.n))
            b = Fraction(1) + sum(y[i] * centroid[i] for i in range(d)) + sum(
                aj * bj for aj, bj in zip(a, base))
            out.append((a, b))
        return out


def _reduce_coords(p: Sequence, base: Sequence, dirs: list[Point]) -> Point:
    delta = [Fraction(a) - Fraction(b) for a, b in zip(p, base)]
    cols = [[d[j] for d in dirs] for j in range(len(base))]
    sol = solve_linear_system(cols, delta)
    if sol is None:
        raise ValueError("point outside the affine hull")
    return tuple(sol)


def dd_vertices(d: int, inequalities: list[tuple[Sequence, Fraction]]) -> list[Point]:
    """Vertices of {y : a.y <= b for all (a, b)}, assumed bounded and solid.

    Double description seeded with an exact bounding box obtained from 2d
    support LPs.
    """
    ineqs = [(_point(a), Fraction(b)) for a, b in inequalities]
    bound = Fraction(1)
    for i in range(d):
        for sign in (1, -1):
            c = [0] * d
            c[i] = sign
            res = solve_general(c, A_ub=[list(a) for a, _ in ineqs], b_ub=[b for _, b in ineqs],
                                maximize=True)
            if res.status == "infeasible":
                return []
            if res.status == "unbounded":
                raise ValueError("unbounded feasible region")
            bound = max(bound, abs(res.value))
    m = bound + 1
    box: list[tuple[Point, Fraction]] = []
    for i in range(d):
        for sign in (1, -1):
            a = [Fraction(0)] * d
            a[i] = Fraction(sign)
            box.append((tuple(a), m))
    all_ineqs = box + ineqs
    # start from the box corners
    verts: list[Point] = []
    for corner in range(1 << d):
        verts.append(tuple(m if corner >> i & 1 else -m for i in range(d)))

    def tight_set(v: Point, upto: int) -> frozenset[int]:
        return frozenset(
            idx for idx in range(upto)
            if sum(a * x for a, x in zip(all_ineqs[idx][0], v)) == all_ineqs[idx][1]
        )

    tights = [tight_set(v, 2 * d) for v in verts]
    for idx in range(2 * d, len(all_ineqs)):
        a, b = all_ineqs[idx]
        vals = [sum(ai * x for ai, x in zip(a, v)) - b for v in verts]
        if all(val <= 0 for val in vals):
            for j, val in enumerate(vals):
                if val == 0:
                    tights[j] = tights[j] | {idx}
            continue
        keep_idx = [j for j, val in enumerate(vals) if val < 0]
        zero_idx = [j for j, val in enumerate(vals) if val == 0]
        drop_idx = [j for j, val in enumerate(vals) if val > 0]
        new_verts: list[Point] = []
        new_tights: list[frozenset[int]] = []
        for jn in keep_idx:
            for jp in drop_idx:
                common = tights[jn] & tights[jp]
                if len(common) < d - 1:
                    continue
                # combinatorial adjacency: no third generator is tight on all
                # common constraints
                adjacent = True
                for jo in range(len(verts)):
                    if jo in (jn, jp):
                        continue
                    if common <= tights[jo]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vn, vp = verts[jn], verts[jp]
                t = vals[jn] / (vals[jn] - vals[jp])  # in (0,1)
                cut = tuple(x + t * (y - x) for x, y in zip(vn, vp))
                new_verts.append(cut)
                new_tights.append((tights[jn] & tights[jp]) | {idx})
        verts = [verts[j] for j in keep_idx + zero_idx] + new_verts
        tights = [tights[j] for j in keep_idx] + [tights[j] | {idx} for j in zero_idx] + new_tights
        # dedupe coincident generators, merging their tight sets
        merged: dict[Point, frozenset[int]] = {}
        for v, t in zip(verts, tights):
            merged[v] = merged.get(v, frozenset()) | t
        verts = list(merged.keys())
        tights = [merged[v] for v in verts]
    # the box strictly bounds the region, so no surviving vertex touches it
    for v in verts:
        assert all(abs(x) < m for x in v), "double description escaped its bounding box"
    return sorted(set(verts))


def minkowski_sum_points(P: Polytope, Q: Polytope) -> Polytope:
    """Hull of pairwise vertex sums (general fallback path)."""
    if P.n != Q.n:
        raise ValueError("ambient dimension mismatch")
    pts = {tuple(a + b for a, b in zip(u, v)) for u in P.vertices for v in Q.vertices}
    return Polytope(P.n, list(pts))
