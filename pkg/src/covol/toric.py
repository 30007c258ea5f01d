"""Smooth complete fans, their cohomology presentations, divisor polytopes and mixed volumes.

Mixed volumes are normalized as ``MV_a = a! * [y^a] Vol(sum y_i P_i)``, so
``MV_a`` is the intersection number of the divisors. With the ``d!/a!``
weighting in the Minkowski expansion instead, the Hirzebruch surface would
give ``MV_(0,2) = r/2`` for ``D_4``, whereas ``D_4^2 = r``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import atan2, factorial, gcd, prod
from typing import Sequence

from . import macaulay
from .certify import Verdict
from .macaulay import Presentation, PresentedRing
from .poly import Exponent, MultiPoly, default_names, normalize
from .polytope import LatticePolytope, minkowski_combination, volume


class FanError(ValueError):
    pass


class NotNef(ValueError):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return sum(
        (-1) ** j * rows[0][j] * _int_det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n)
    )


@dataclass(frozen=True)
class Fan:
    """Smooth complete fan: primitive rays and maximal cones given as ray-index sets."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in u) for u in self.rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        self._validate()

    def _validate(self):
        d = self.dim
        if not 1 <= d <= 3:
            raise FanError(f"fan dimension {d} outside 1..3")
        for i, u in enumerate(self.rays):
            if len(u) != d:
                raise FanError(f"ray {i + 1} has length {len(u)}")
            if not any(u) or gcd(*u) != 1:
                raise FanError(f"ray {i + 1} = {list(u)} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise FanError("repeated ray")
        used = set()
        for c in self.max_cones:
            if len(c) != d or len(set(c)) != d:
                raise FanError(f"cone {list(c)} does not have {d} distinct rays")
            if any(not 0 <= i < len(self.rays) for i in c):
                raise FanError(f"cone {list(c)} refers to a missing ray")
            if abs(_int_det([list(self.rays[i]) for i in c])) != 1:
                raise FanError(f"cone {list(c)} is not unimodular")
            used.update(c)
        if used != set(range(len(self.rays))):
            raise FanError("some ray lies in no maximal cone")
        if len(set(self.max_cones)) != len(self.max_cones):
            raise FanError("repeated cone")
        if d == 1:
            if sorted(self.rays) != [(-1,), (1,)]:
                raise FanError("a complete 1-dimensional fan has rays -1 and 1")
        elif d == 2:
            self._check_complete_2d()
        else:
            self._check_closed_3d()

    def _check_complete_2d(self):
        order = sorted(range(len(self.rays)), key=lambda i: atan2(self.rays[i][1], self.rays[i][0]))
        expected = set()
        for a, b in zip(order, order[1:] + order[:1]):
            ua, ub = self.rays[a], self.rays[b]
            if ua[0] * ub[1] - ua[1] * ub[0] <= 0:
                raise FanError(f"rays {a + 1} and {b + 1} do not span a strictly convex cone")
            expected.add(tuple(sorted((a, b))))
        if expected != set(self.max_cones):
            raise FanError("maximal cones are not the consecutive ray pairs in angular order")

    def _check_closed_3d(self):
        # every 2-face lies in exactly two maximal cones, on opposite sides of it
        walls: dict[tuple[int, int], list[int]] = {}
        for c in self.max_cones:
            for pair in combinations(c, 2):
                (other,) = set(c) - set(pair)
                walls.setdefault(pair, []).append(other)
        for (a, b), others in walls.items():
            if len(others) != 2:
                raise FanError(f"wall {{{a + 1},{b + 1}}} lies in {len(others)} maximal cones")
            sides = [_int_det([list(self.rays[a]), list(self.rays[b]), list(self.rays[o])]) for o in others]
            if sides[0] * sides[1] >= 0:
                raise FanError(f"cones across wall {{{a + 1},{b + 1}}} overlap")

    @property
    def nrays(self) -> int:
        return len(self.rays)

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(combinations(c, k))
        return frozenset(out)

    def minimal_nonfaces(self) -> list[tuple[int, ...]]:
        out = []
        for k in range(2, self.dim + 2):
            for s in combinations(range(self.nrays), k):
                if s in self.faces:
                    continue
                if all(t in self.faces for t in combinations(s, k - 1)):
                    out.append(s)
        return out

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(u) for u in self.rays], "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, obj) -> "Fan":
        try:
            return cls(int(obj["dim"]), tuple(map(tuple, obj["rays"])), tuple(map(tuple, obj["max_cones"])))
        except (KeyError, TypeError) as exc:
            raise FanError(f"malformed fan JSON: {exc}") from exc


def load_fan(path: str) -> Fan:
    with open(path) as fh:
        return Fan.from_json(json.load(fh))


def projective_line() -> Fan:
    return Fan(1, ((1,), (-1,)), ((0,), (1,)))


def projective_plane() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))


def hirzebruch(r: int) -> Fan:
    return Fan(2, ((-1, r), (0, 1), (1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))


def projective_space_3() -> Fan:
    rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
    return Fan(3, rays, tuple(combinations(range(4), 3)))


def p1_cubed() -> Fan:
    rays = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
    cones = tuple((a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5))
    return Fan(3, rays, cones)


def unit_divisor(fan: Fan, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(fan.nrays))


def jd_presentation(fan: Fan) -> Presentation:
    """Stanley-Reisner monomials plus the linear relations from the dual lattice."""
    n = fan.nrays
    gens = [MultiPoly.monomial(tuple(1 if i in s else 0 for i in range(n))) for s in fan.minimal_nonfaces()]
    for k in range(fan.dim):
        gens.append(MultiPoly(n, {unit_divisor(fan, i): u[k] for i, u in enumerate(fan.rays) if u[k]}))
    positive = tuple(1 if i in fan.max_cones[0] else 0 for i in range(n))
    ring = PresentedRing((1,) * n, tuple(gens), fan.dim)
    return Presentation(ring, positive, tuple(default_names(n, "x")))


def _solve_unimodular(rows: list[list[int]], rhs: list[int]) -> tuple[int, ...]:
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    sol = [a[i][n] / a[i][i] for i in range(n)]
    assert all(x.denominator == 1 for x in sol)
    return tuple(int(x) for x in sol)


def cartier_data(fan: Fan, divisor: Sequence[int]) -> dict[tuple[int, ...], tuple[int, ...]]:
    """``m_sigma`` with ``<m_sigma, u_i> = -a_i`` for the rays of each maximal cone."""
    a = list(divisor)
    if len(a) != fan.nrays:
        raise ValueError(f"divisor has {len(a)} coefficients, fan has {fan.nrays} rays")
    return {c: _solve_unimodular([list(fan.rays[i]) for i in c], [-a[i] for i in c]) for c in fan.max_cones}


def nef_verdict(fan: Fan, divisor: Sequence[int]) -> Verdict:
    a = list(divisor)
    for c, m in cartier_data(fan, a).items():
        for i, u in enumerate(fan.rays):
            if sum(x * y for x, y in zip(m, u)) < -a[i]:
                return Verdict(False, {"cone": list(c), "ray": i, "m": list(m)})
    return Verdict(True)


def is_nef(fan: Fan, divisor: Sequence[int]) -> bool:
    return bool(nef_verdict(fan, divisor))


def divisor_polytope(fan: Fan, divisor: Sequence[int]) -> LatticePolytope:
    v = nef_verdict(fan, divisor)
    if not v:
        raise NotNef(f"divisor {list(divisor)} is not nef", v.witness)
    return LatticePolytope.hull(cartier_data(fan, divisor).values(), fan.dim)


def _compositions(n: int, d: int) -> list[Exponent]:
    if n == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in _compositions(n - 1, d - a)]


@lru_cache(maxsize=None)
def _simplex_interpolator(n: int, d: int) -> tuple[tuple[Exponent, ...], tuple[tuple[Fraction, ...], ...]]:
    """Nodes ``|l| = d`` and the exact inverse of ``M[l][a] = l^a`` over ``|a| = d``.

    A form of degree d is determined by its values on the hyperplane
    ``sum y_i = d``, and the lattice points there are unisolvent.
    """
    nodes = tuple(_compositions(n, d))
    size = len(nodes)
    a = [
        [Fraction(prod(x ** e for x, e in zip(lam, alpha))) for alpha in nodes]
        + [Fraction(int(i == k)) for k in range(size)]
        for i, lam in enumerate(nodes)
    ]
    for c in range(size):
        piv = next(i for i in range(c, size) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for i in range(size):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return nodes, tuple(tuple(row[size:]) for row in a)


def volume_values(polytopes: Sequence[LatticePolytope], d: int) -> dict[tuple[int, ...], Fraction]:
    """``Vol(sum y_i P_i)`` at the lattice points with ``sum y_i = d``."""
    return {y: volume(minkowski_combination(polytopes, y, d)) for y in _compositions(len(polytopes), d)}


def mixed_volumes(polytopes: Sequence[LatticePolytope], d: int) -> dict[Exponent, Fraction]:
    """``MV_a`` for all ``|a| = d``, by exact interpolation of the Minkowski volume form."""
    if any(p.dim != d for p in polytopes):
        raise ValueError(f"all polytopes must live in dimension {d}")
    nodes, inv = _simplex_interpolator(len(polytopes), d)
    values = volume_values(polytopes, d)
    vec = [values[lam] for lam in nodes]
    out = {}
    for alpha, row in zip(nodes, inv):
        c = sum((x * v for x, v in zip(row, vec)), Fraction(0))
        out[alpha] = c * prod(factorial(x) for x in alpha)
    return out


def mixed_volume_polarization(polytopes: Sequence[LatticePolytope], alpha: Sequence[int]) -> Fraction:
    """``MV_a`` by inclusion-exclusion over subsets of the multiset with ``P_i`` repeated ``a_i`` times."""
    seq = [p for p, k in zip(polytopes, alpha) for _ in range(k)]
    d = len(seq)
    total = Fraction(0)
    for k in range(1, d + 1):
        for s in combinations(range(d), k):
            total += (-1) ** (d - k) * volume(minkowski_combination([seq[i] for i in s], [1] * k, d))
    return total


def _as_poly(n: int, coeffs: dict[Exponent, Fraction]) -> MultiPoly:
    return MultiPoly(n, {a: c for a, c in coeffs.items() if c})


def toric_dual_generator(fan: Fan, divisors: Sequence[Sequence[int]]) -> MultiPoly:
    """``sum_a MV_a(P_1..P_n) y^a`` for nef divisors."""
    polys = [divisor_polytope(fan, D) for D in divisors]
    return _as_poly(len(divisors), mixed_volumes(polys, fan.dim))


def degree_map(fan: Fan) -> macaulay.DegreeMap:
    p = jd_presentation(fan)
    return macaulay.derive_degree_map(p.ring, p.positive_monomial)


def point_class_verdict(fan: Fan) -> Verdict:
    rho = degree_map(fan)
    for c in fan.max_cones:
        e = tuple(1 if i in c else 0 for i in range(fan.nrays))
        if rho(e) != 1:
            return Verdict(False, {"cone": list(c), "value": rho(e)})
    return Verdict(True)


def intersection_dual_generator(fan: Fan, divisors: Sequence[Sequence[int]] | None = None) -> MultiPoly:
    """``sum_a rho(D_1^a_1 ... D_n^a_n) y^a`` from the degree map of the presentation.

    Works for any divisors, nef or not; with the ray divisors it is the full ``G_R``.
    """
    n = fan.nrays
    if divisors is None:
        divisors = [unit_divisor(fan, i) for i in range(n)]
    rho = degree_map(fan)
    forms = []
    for D in divisors:
        if len(D) != n:
            raise ValueError(f"divisor {list(D)} does not have {n} coefficients")
        forms.append(MultiPoly(n, {unit_divisor(fan, i): c for i, c in enumerate(D) if c}))
    out = {}
    for a in _compositions(len(forms), fan.dim):
        f = MultiPoly.constant(n)
        for form, k in zip(forms, a):
            if k:
                f = f * form ** k
        v = rho.apply(f)
        if v:
            out[a] = v
    return MultiPoly(len(forms), out)


def volume_polynomial(
    fan: Fan,
    divisors: Sequence[Sequence[int]] | None = None,
    reduced: Sequence[int] | None = None,
    route: str = "degree_map",
) -> MultiPoly:
    """``d! N(G)`` for the chosen divisors (ray divisors by default, or a reduced basis of ray indices)."""
    if reduced is not None:
        divisors = [unit_divisor(fan, i) for i in reduced]
    if route == "mixed":
        if divisors is None:
            divisors = [unit_divisor(fan, i) for i in range(fan.nrays)]
        g = toric_dual_generator(fan, divisors)
    elif route == "degree_map":
        g = intersection_dual_generator(fan, divisors)
    else:
        raise ValueError(f"unknown route {route!r}")
    return normalize(g).scale(factorial(fan.dim))


def reduced_presentation(fan: Fan, basis: Sequence[int]) -> Presentation:
    """Presentation in the chosen ray divisors, recovered as the annihilator of their dual generator."""
    g = intersection_dual_generator(fan, [unit_divisor(fan, i) for i in basis])
    k = len(basis)
    gens = macaulay.annihilator(g, (1,) * k)
    names = tuple(f"x{i + 1}" for i in basis)
    ring = PresentedRing((1,) * k, tuple(gens), fan.dim)
    positive = max(g.terms, key=lambda e: (g.terms[e] == 1, e)) if g else None
    if positive is not None and g.terms[positive] not in (1, -1):
        positive = None
    return Presentation(ring, positive, names)
