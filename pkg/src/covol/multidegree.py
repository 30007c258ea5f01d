"""K-polynomials and multidegrees of monomial ideals in multigraded polynomial rings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .poly import Coeff, Exponent, MultiPoly, flip_signs, normalize, reverse, subst_one_minus


class GradingError(ValueError):
    """A grading violates the positivity or twisted-positivity requirement.

    ``witness`` names the offending variable (and coordinate, if any).
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class GradingSpec:
    """Degrees ``deg(x_i)`` in Z^p, one per ring variable; ``q`` splits twisted gradings."""

    p: int
    degrees: tuple[tuple[int, ...], ...]
    q: int | None = None

    def __post_init__(self):
        degs = tuple(tuple(int(x) for x in d) for d in self.degrees)
        object.__setattr__(self, "degrees", degs)
        for i, d in enumerate(degs):
            if len(d) != self.p:
                raise ValueError(f"degree of x{i + 1} has length {len(d)}, expected {self.p}")

    @property
    def nvars(self) -> int:
        return len(self.degrees)

    def is_positive(self) -> bool:
        return all(all(x >= 0 for x in d) and any(d) for d in self.degrees)

    def is_standard(self) -> bool:
        return all(all(x >= 0 for x in d) and sum(d) == 1 for d in self.degrees)

    def require_positive(self) -> None:
        for i, d in enumerate(self.degrees):
            if any(x < 0 for x in d) or not any(d):
                raise GradingError(
                    f"deg(x{i + 1}) = {d} is not in N^p minus 0", {"variable": i, "degree": list(d)}
                )

    def degree_of(self, exponent: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.p
        for a, d in zip(exponent, self.degrees):
            if a:
                for k in range(self.p):
                    out[k] += a * d[k]
        return tuple(out)

    def to_json(self) -> dict:
        obj = {"p": self.p, "degrees": [list(d) for d in self.degrees]}
        if self.q is not None:
            obj["q"] = self.q
        return obj

    @classmethod
    def from_json(cls, obj) -> "GradingSpec":
        try:
            return cls(int(obj["p"]), tuple(map(tuple, obj["degrees"])), obj.get("q"))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed grading JSON: {exc}") from exc


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by exponent vectors; generators are minimalized on construction."""

    nvars: int
    gens: tuple[Exponent, ...]

    def __post_init__(self):
        gens = sorted({tuple(int(x) for x in g) for g in self.gens})
        for g in gens:
            if len(g) != self.nvars:
                raise ValueError(f"generator {g} does not have {self.nvars} entries")
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in {g}")
        minimal = [g for g in gens if not any(h != g and _divides(h, g) for h in gens)]
        object.__setattr__(self, "gens", tuple(minimal))

    @classmethod
    def of(cls, gens: Sequence[Sequence[int]], nvars: int | None = None) -> "MonomialIdeal":
        gens = [tuple(g) for g in gens]
        if nvars is None:
            if not gens:
                raise ValueError("cannot infer the number of variables of the zero ideal")
            nvars = len(gens[0])
        return cls(nvars, tuple(gens))

    def contains(self, exponent: Sequence[int]) -> bool:
        return any(_divides(g, exponent) for g in self.gens)

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def to_json(self) -> dict:
        return {"gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, obj, nvars: int | None = None) -> "MonomialIdeal":
        try:
            return cls.of(obj["gens"], nvars)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed ideal JSON: {exc}") from exc


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Sequence[int], b: Sequence[int]) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _check_ring(ideal: MonomialIdeal, grading: GradingSpec) -> None:
    if ideal.nvars != grading.nvars:
        raise ValueError(f"ideal has {ideal.nvars} variables but the grading has {grading.nvars}")
    if ideal.is_unit():
        raise ValueError("the unit ideal has no multidegree")


def taylor_k_terms(ideal: MonomialIdeal, grading: GradingSpec) -> dict[tuple[int, ...], int]:
    """Signed Laurent K-polynomial as ``{degree vector: coefficient}`` (any Z^p grading).

    Inclusion-exclusion over generator subsets (the Taylor complex), fully cancelled.
    """
    out: dict[tuple[int, ...], int] = {}

    def walk(start: int, current: Exponent | None, size: int):
        deg = grading.degree_of(current) if current is not None else (0,) * grading.p
        out[deg] = out.get(deg, 0) + (-1) ** size
        for k in range(start, len(ideal.gens)):
            g = ideal.gens[k]
            walk(k + 1, g if current is None else _lcm(current, g), size + 1)

    walk(0, None, 0)
    return {d: c for d, c in out.items() if c}


def k_polynomial(ideal: MonomialIdeal, grading: GradingSpec) -> MultiPoly:
    """K-polynomial of S/I in a positive grading."""
    _check_ring(ideal, grading)
    grading.require_positive()
    return MultiPoly(grading.p, taylor_k_terms(ideal, grading))


def codim(ideal: MonomialIdeal) -> int:
    """Smallest set of variables meeting every generator's support."""
    if ideal.is_unit():
        raise ValueError("the unit ideal has no codimension")
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in ideal.gens]
    if not supports:
        return 0
    candidates = sorted(set().union(*supports))
    for k in range(1, len(candidates) + 1):
        for cover in combinations(candidates, k):
            cs = set(cover)
            if all(s & cs for s in supports):
                return k
    raise AssertionError("unreachable: all variables always cover")


def multidegree(ideal: MonomialIdeal, grading: GradingSpec) -> MultiPoly:
    """Lowest-degree part of K(1 - t) in a positive grading; its degree is codim(I)."""
    k = k_polynomial(ideal, grading)
    c = codim(ideal)
    expanded = subst_one_minus(k)
    low = expanded.min_degree()
    if expanded and low < c:
        raise AssertionError(f"K(1-t) has terms of degree {low} below the codimension {c}")
    return expanded.homogeneous_part(c)


def variable_ideal_multidegree(variables: Sequence[int], grading: GradingSpec) -> MultiPoly:
    """Product of the linear forms ``<deg(x_i), t>`` over the given variables."""
    result = MultiPoly.constant(grading.p)
    for i in variables:
        result = result * MultiPoly(
            grading.p, {tuple(1 if k == j else 0 for k in range(grading.p)): c for j, c in enumerate(grading.degrees[i]) if c}
        )
    return result


def check_twisted(grading: GradingSpec, q: int) -> None:
    """Raise ``GradingError`` unless coordinates < q are >= 0, the rest <= 0, and no degree is 0."""
    if not 0 <= q <= grading.p:
        raise GradingError(f"split {q} outside 0..{grading.p}")
    for i, d in enumerate(grading.degrees):
        for k, x in enumerate(d):
            if (k < q and x < 0) or (k >= q and x > 0):
                side = "nonnegative" if k < q else "nonpositive"
                raise GradingError(
                    f"coordinate {k + 1} of deg(x{i + 1}) = {d} must be {side}",
                    {"variable": i, "coordinate": k, "degree": list(d)},
                )
        if not any(d):
            raise GradingError(f"deg(x{i + 1}) is zero", {"variable": i, "degree": list(d)})


def flip_grading(grading: GradingSpec, q: int | None = None) -> GradingSpec:
    """Negate coordinates q+1..p of a twisted positive grading, giving a positive grading."""
    q = grading.q if q is None else q
    if q is None:
        raise ValueError("twisted grading needs a split q")
    check_twisted(grading, q)
    degs = tuple(tuple(x if k < q else -x for k, x in enumerate(d)) for d in grading.degrees)
    return GradingSpec(grading.p, degs)


def multidegree_twisted(ideal: MonomialIdeal, grading: GradingSpec, q: int | None = None) -> MultiPoly:
    """Multidegree in a twisted positive grading via the flipped positive grading."""
    q = grading.q if q is None else q
    flipped = flip_grading(grading, q)
    return flip_signs(multidegree(ideal, flipped), range(q, grading.p))


def _series_one_minus_power(k: int, order: int) -> list[int]:
    """Coefficients of (1 - t)^k up to t^order, for any integer k."""
    if k >= 0:
        return [comb(k, j) * (-1) ** j if j <= k else 0 for j in range(order + 1)]
    n = -k
    return [comb(n + j - 1, j) for j in range(order + 1)]


def multidegree_direct(ideal: MonomialIdeal, grading: GradingSpec) -> MultiPoly:
    """Multidegree for an arbitrary Z^p grading, without flipping.

    Each signed Laurent term of the K-polynomial is expanded as a power
    series in ``1 - t`` (``t^-1 -> sum t^k``), truncated at total degree
    codim(I). Serves as the independent route for twisted gradings and
    handles gradings that are not twisted positive at all.
    """
    _check_ring(ideal, grading)
    c = codim(ideal)
    p = grading.p
    total: dict[Exponent, Coeff] = {}
    for deg, coef in taylor_k_terms(ideal, grading).items():
        partial: dict[Exponent, int] = {(): coef}
        for k in deg:
            series = _series_one_minus_power(k, c)
            nxt: dict[Exponent, int] = {}
            for e, v in partial.items():
                used = sum(e)
                for j in range(c - used + 1):
                    if series[j]:
                        key = e + (j,)
                        nxt[key] = nxt.get(key, 0) + v * series[j]
            partial = nxt
        for e, v in partial.items():
            total[e] = total.get(e, 0) + v
    series_poly = MultiPoly(p, total)
    if series_poly.min_degree() != -1 and series_poly.min_degree() < c:
        raise AssertionError("series expansion has terms below the codimension")
    return series_poly.homogeneous_part(c)


def standardize(ideal: MonomialIdeal, grading: GradingSpec) -> tuple[MonomialIdeal, GradingSpec]:
    """Replace each x_i by a product of |deg x_i| variables of unit degree."""
    new_ideal, new_grading, _ = standardize_with_blocks(ideal, grading)
    return new_ideal, new_grading


def standardize_with_blocks(ideal: MonomialIdeal, grading: GradingSpec):
    """As ``standardize``, also returning for each old variable the new variables it becomes."""
    _check_ring(ideal, grading)
    grading.require_positive()
    new_degs: list[tuple[int, ...]] = []
    blocks: list[list[int]] = []
    for d in grading.degrees:
        block = []
        for k, mult in enumerate(d):
            for _ in range(mult):
                block.append(len(new_degs))
                new_degs.append(tuple(1 if j == k else 0 for j in range(grading.p)))
        blocks.append(block)
    n_new = len(new_degs)
    gens = []
    for g in ideal.gens:
        e = [0] * n_new
        for i, a in enumerate(g):
            for v in blocks[i]:
                e[v] += a
        gens.append(tuple(e))
    return MonomialIdeal(n_new, tuple(gens)), GradingSpec(grading.p, tuple(new_degs)), blocks


def volume_poly_from_multidegree(c: MultiPoly, m: Sequence[int], d: int) -> MultiPoly:
    """``d! N(t^m C(1/t))``, the volume polynomial of a subvariety of a product of projective spaces."""
    if c and sum(m) - c.degree() != d:
        raise ValueError(f"dimension {d} does not equal |m| - deg C = {sum(m) - c.degree()}")
    return normalize(reverse(c, m)).scale(factorial(d))


def _box(bound: Sequence[int]):
    if not bound:
        yield ()
        return
    for a in range(bound[0] + 1):
        for rest in _box(bound[1:]):
            yield (a,) + rest


def hilbert_function(ideal: MonomialIdeal, grading: GradingSpec, bound: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Number of standard monomials in each multidegree ``<= bound`` (componentwise)."""
    _check_ring(ideal, grading)
    grading.require_positive()
    bound = tuple(bound)
    counts: dict[tuple[int, ...], int] = {}

    def walk(i: int, exp: list[int], deg: list[int]):
        if i == grading.nvars:
            if not ideal.contains(exp):
                key = tuple(deg)
                counts[key] = counts.get(key, 0) + 1
            return
        d = grading.degrees[i]
        a = 0
        cur = list(deg)
        while all(x <= b for x, b in zip(cur, bound)):
            exp.append(a)
            walk(i + 1, exp, cur)
            exp.pop()
            a += 1
            cur = [x + y for x, y in zip(cur, d)]

    walk(0, [], [0] * grading.p)
    return {k: v for k, v in counts.items() if v}


def hilbert_series_coefficients(k: MultiPoly, grading: GradingSpec, bound: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Expand ``K(t) / prod(1 - t^deg x_i)`` as a power series up to ``bound``."""
    bound = tuple(bound)
    series: dict[tuple[int, ...], int] = {
        e: c for e, c in k.terms.items() if all(x <= b for x, b in zip(e, bound))
    }
    for d in grading.degrees:
        nxt: dict[tuple[int, ...], int] = {}
        for e, c in series.items():
            cur = e
            while all(x <= b for x, b in zip(cur, bound)):
                nxt[cur] = nxt.get(cur, 0) + c
                cur = tuple(x + y for x, y in zip(cur, d))
        series = nxt
    return {e: c for e, c in series.items() if c}
