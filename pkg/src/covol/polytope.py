"""Exact convex hulls, Minkowski sums and volumes of rational polytopes in dimension <= 3."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd, lcm
from typing import Iterable, Sequence

Point = tuple[Fraction, ...]
MAX_DIM = 3


def _point(p: Sequence) -> Point:
    return tuple(Fraction(x) for x in p)


def _sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _cross(a: Point, b: Point) -> Point:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _det(rows: Sequence[Sequence[Fraction]]):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return _dot(rows[0], _cross(rows[1], rows[2]))


def _affine_frame(points: list[Point]) -> tuple[Point, list[Point]]:
    """Origin and a maximal independent set of difference vectors."""
    origin = points[0]
    basis: list[Point] = []
    reduced: list[tuple[Point, int]] = []
    for p in points[1:]:
        v = list(_sub(p, origin))
        for r, j in reduced:
            if v[j]:
                f = v[j] / r[j]
                v = [a - f * b for a, b in zip(v, r)]
        if any(v):
            j = next(k for k, x in enumerate(v) if x)
            reduced.append((tuple(v), j))
            basis.append(_sub(p, origin))
    return origin, basis


def _hull_2d(points: list[Point]) -> list[Point]:
    """Vertices in counter-clockwise order (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1]


def _integral(points: list[Point]) -> tuple[int, list[tuple[int, ...]]]:
    """A common denominator and the points scaled by it, as Python ints."""
    den = 1
    for p in points:
        for x in p:
            den = lcm(den, x.denominator)
    return den, [tuple(int(x * den) for x in p) for p in points]


def _facets_3d(points: list[Point]) -> list[tuple[Point, Fraction, list[Point]]]:
    """Supporting planes ``n.x <= c`` of a full-dimensional point set, with the points on each."""
    den, ipts = _integral(points)
    tried = set()
    out = []
    for i, j, k in combinations(range(len(ipts)), 3):
        a = ipts[i]
        n = _cross(_sub(ipts[j], a), _sub(ipts[k], a))
        if not any(n):
            continue
        g = gcd(*n)
        n = tuple(x // g for x in n)
        if n < tuple(-x for x in n):
            n = tuple(-x for x in n)
        off = _dot(n, a)
        if (n, off) in tried:
            continue
        tried.add((n, off))
        above = below = False
        for q in ipts:
            s = _dot(n, q) - off
            if s > 0:
                above = True
            elif s < 0:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:
            n, off = tuple(-x for x in n), -off
        on = sorted(p for p, q in zip(points, ipts) if _dot(n, q) == off)
        out.append((tuple(Fraction(x) for x in n), Fraction(off, den), on))
    return out


def _order_facet(n: Point, pts: list[Point]) -> list[Point]:
    """Facet vertices in cyclic order, via a 2D hull in a projection that keeps the facet flat."""
    drop = max(range(3), key=lambda k: abs(n[k]))
    keep = [k for k in range(3) if k != drop]
    proj = {tuple(p[k] for k in keep): p for p in pts}
    return [proj[q] for q in _hull_2d(list(proj))]


def _extreme_points(points: list[Point], dim: int) -> list[Point]:
    pts = sorted(set(points))
    if len(pts) <= 1:
        return pts
    origin, basis = _affine_frame(pts)
    k = len(basis)
    if k == 0:
        return pts[:1]
    if k == 1:
        v = basis[0]
        key = [_dot(_sub(p, origin), v) for p in pts]
        return sorted({pts[key.index(min(key))], pts[key.index(max(key))]})
    if dim == 2 or k == 2:
        if dim == 2:
            return sorted(_hull_2d(pts))
        n = _cross(basis[0], basis[1])
        return sorted(_order_facet(n, pts))
    verts = set()
    for n, _, on in _facets_3d(pts):
        verts.update(_order_facet(n, on))
    return sorted(verts)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many rational points; ``vertices`` are its extreme points."""

    dim: int
    vertices: tuple[Point, ...]

    @classmethod
    def hull(cls, points: Iterable[Sequence], dim: int | None = None) -> "LatticePolytope":
        pts = [_point(p) for p in points]
        if not pts:
            raise ValueError("empty polytope")
        dim = len(pts[0]) if dim is None else dim
        if any(len(p) != dim for p in pts):
            raise ValueError("points of mixed dimension")
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension {dim} is outside 1..{MAX_DIM}")
        return cls(dim, tuple(_extreme_points(pts, dim)))

    @classmethod
    def point(cls, dim: int) -> "LatticePolytope":
        return cls.hull([(0,) * dim], dim)

    def scale(self, k) -> "LatticePolytope":
        if k == 0:
            return LatticePolytope.point(self.dim)
        if k < 0:
            raise ValueError("only nonnegative dilations")
        return LatticePolytope(self.dim, tuple(tuple(x * k for x in v) for v in self.vertices))

    def affine_dim(self) -> int:
        return len(_affine_frame(list(self.vertices))[1])

    def to_json(self) -> list:
        return [[str(x) for x in v] for v in self.vertices]


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return LatticePolytope.hull([tuple(x + y for x, y in zip(a, b)) for a in p.vertices for b in q.vertices], p.dim)


def minkowski_combination(polys: Sequence[LatticePolytope], weights: Sequence[int], dim: int) -> LatticePolytope:
    total = LatticePolytope.point(dim)
    for poly, w in zip(polys, weights):
        if w:
            total = minkowski_sum(total, poly.scale(w))
    return total


def volume(p: LatticePolytope) -> Fraction:
    """Euclidean volume normalized so the unit cube has volume 1; 0 if not full-dimensional."""
    verts = list(p.vertices)
    if p.affine_dim() < p.dim:
        return Fraction(0)
    if p.dim == 1:
        return max(v[0] for v in verts) - min(v[0] for v in verts)
    if p.dim == 2:
        ring = _hull_2d(verts)
        area2 = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1]))
        return abs(area2) / 2
    centre = tuple(sum(v[k] for v in verts) / len(verts) for k in range(3))
    total = Fraction(0)
    for n, _, on in _facets_3d(verts):
        ring = _order_facet(n, on)
        for a, b in zip(ring[1:], ring[2:]):
            total += abs(_det([_sub(ring[0], centre), _sub(a, centre), _sub(b, centre)]))
    return total / factorial(3)
