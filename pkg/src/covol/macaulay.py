"""Macaulay inverse systems over the integers.

A presentation ``S/I`` with ``S = Z[x_1..x_n]``, weighted by positive
variable degrees, is compared against inverse polynomials in
``T = Z[y_1..y_n]`` under contraction. All slice computations are exact
Hermite/Smith normal forms, so torsion shows up rather than being divided away.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, prod
from typing import Mapping, Sequence

from . import intlin
from .certify import Verdict
from .poly import Exponent, MultiPoly, default_names, from_json_obj, poly_from_string

InversePoly = MultiPoly


class PresentationError(ValueError):
    pass


def weighted_degree(e: Sequence[int], var_degrees: Sequence[int]) -> int:
    return sum(a * d for a, d in zip(e, var_degrees))


def weighted_homogeneous_degree(f: MultiPoly, var_degrees: Sequence[int]) -> int | None:
    """Common weighted degree of all terms, or None if ``f`` is zero or mixed."""
    degs = {weighted_degree(e, var_degrees) for e in f.terms}
    return degs.pop() if len(degs) == 1 else None


@lru_cache(maxsize=None)
def weighted_monomials(var_degrees: tuple[int, ...], nu: int) -> tuple[Exponent, ...]:
    """Exponents of weighted degree ``nu``, in descending lex order."""
    if nu < 0:
        return ()
    if not var_degrees:
        return ((),) if nu == 0 else ()
    head, rest = var_degrees[0], var_degrees[1:]
    out = []
    for a in range(nu // head, -1, -1):
        for tail in weighted_monomials(rest, nu - a * head):
            out.append((a,) + tail)
    return tuple(out)


@dataclass(frozen=True)
class PresentedRing:
    """``Z[x_1..x_n] / (generators)`` with weighted variable degrees and socle degree d."""

    var_degrees: tuple[int, ...]
    generators: tuple[MultiPoly, ...]
    socle_degree: int
    gen_degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        degs = tuple(int(x) for x in self.var_degrees)
        if any(x <= 0 for x in degs):
            raise PresentationError(f"variable degrees must be positive, got {list(degs)}")
        if self.socle_degree < 0:
            raise PresentationError("socle degree must be nonnegative")
        gens = tuple(g for g in self.generators if g)
        gdeg = []
        for g in gens:
            if g.nvars != len(degs):
                raise PresentationError(f"generator {g} has {g.nvars} variables, expected {len(degs)}")
            if not g.is_integral():
                raise PresentationError(f"generator {g} has non-integer coefficients")
            k = weighted_homogeneous_degree(g, degs)
            if k is None:
                raise PresentationError(f"generator {g} is not weighted-homogeneous")
            gdeg.append(k)
        object.__setattr__(self, "var_degrees", degs)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "gen_degrees", tuple(gdeg))

    @property
    def nvars(self) -> int:
        return len(self.var_degrees)


@dataclass(frozen=True)
class GradedSlice:
    degree: int
    monomials: tuple[Exponent, ...]
    ideal_basis: tuple[tuple[int, ...], ...]
    rank: int
    invariants: tuple[int, ...]

    @property
    def torsion_free(self) -> bool:
        return all(x == 1 for x in self.invariants)


def _slice_rows(polys: Sequence[MultiPoly], monos: Sequence[Exponent]) -> list[list[int]]:
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in polys:
        row = [0] * len(monos)
        for e, c in f.terms.items():
            row[index[e]] += int(c)
        rows.append(row)
    return rows


def _ideal_slice_polys(ring: PresentedRing, nu: int) -> list[MultiPoly]:
    out = []
    for g, k in zip(ring.generators, ring.gen_degrees):
        for m in weighted_monomials(ring.var_degrees, nu - k):
            out.append(g * MultiPoly.monomial(m))
    return out


@lru_cache(maxsize=256)
def graded_basis(ring: PresentedRing, nu: int) -> GradedSlice:
    """Monomials of degree ``nu``, the ideal slice in HNF, quotient rank and invariant factors."""
    if nu < 0:
        raise ValueError("degree must be nonnegative")
    monos = weighted_monomials(ring.var_degrees, nu)
    rows = _slice_rows(_ideal_slice_polys(ring, nu), monos)
    h = intlin.hnf(rows, len(monos)) if rows else []
    inv = intlin.smith_invariants(h, len(monos)) if h else []
    return GradedSlice(nu, monos, tuple(map(tuple, h)), len(monos) - len(h), tuple(inv))


def _flat_window(ring: PresentedRing) -> int:
    return max(list(ring.gen_degrees) + list(ring.var_degrees))


def check_flat(ring: PresentedRing) -> Verdict:
    """Slices up to d are torsion-free; slices d+1 .. d+max degree are the whole space."""
    d = ring.socle_degree
    for nu in range(d + 1):
        sl = graded_basis(ring, nu)
        if not sl.torsion_free:
            return Verdict(False, {"kind": "torsion", "degree": nu, "invariants": list(sl.invariants)})
    for nu in range(d + 1, d + _flat_window(ring) + 1):
        sl = graded_basis(ring, nu)
        if sl.rank or not sl.torsion_free:
            return Verdict(
                False,
                {"kind": "not_full", "degree": nu, "rank": sl.rank, "invariants": list(sl.invariants)},
            )
    return Verdict(True)


@dataclass(frozen=True)
class DegreeMap:
    """Integer values of rho on the monomials of socle degree."""

    var_degrees: tuple[int, ...]
    degree: int
    values: Mapping[Exponent, int]

    def __call__(self, e: Sequence[int]) -> int:
        e = tuple(e)
        if weighted_degree(e, self.var_degrees) != self.degree:
            return 0
        return self.values.get(e, 0)

    def apply(self, f: MultiPoly) -> int:
        return sum(int(c) * self(e) for e, c in f.terms.items())

    def negate(self) -> "DegreeMap":
        return DegreeMap(self.var_degrees, self.degree, {e: -v for e, v in self.values.items()})


def derive_degree_map(ring: PresentedRing, positive_monomial: Sequence[int]) -> DegreeMap:
    """The isomorphism ``R_d -> Z`` oriented so ``positive_monomial`` goes to 1."""
    d = ring.socle_degree
    pm = tuple(positive_monomial)
    if len(pm) != ring.nvars or weighted_degree(pm, ring.var_degrees) != d:
        raise PresentationError(f"positive monomial {list(pm)} does not have weighted degree {d}")
    sl = graded_basis(ring, d)
    if not sl.torsion_free:
        raise PresentationError(f"R_{d} has torsion (invariant factors {list(sl.invariants)})")
    if sl.rank != 1:
        raise PresentationError(f"R_{d} has rank {sl.rank}, expected 1")
    kern = intlin.right_kernel([list(r) for r in sl.ideal_basis], len(sl.monomials))
    assert len(kern) == 1
    v = kern[0]
    g = 0
    for x in v:
        g = gcd(g, x)
    v = [x // g for x in v]
    values = dict(zip(sl.monomials, v))
    at = values[pm]
    if at not in (1, -1):
        raise PresentationError(f"positive monomial maps to {at} times a generator of R_{d}")
    values = {e: x * at for e, x in values.items() if x}
    return DegreeMap(ring.var_degrees, d, values)


def dual_generator(ring: PresentedRing, rho: DegreeMap) -> InversePoly:
    """``G_R = sum rho(x^a) y^a`` over monomials of socle degree."""
    return MultiPoly(ring.nvars, dict(rho.values))


def contract(g: MultiPoly, G: InversePoly) -> InversePoly:
    """Bilinear action ``x^a . y^b = y^(b-a)`` when ``b >= a``, else 0."""
    if g.nvars != G.nvars:
        raise ValueError("contraction needs matching variable counts")
    out: dict[Exponent, object] = {}
    for a, c in g.terms.items():
        for b, k in G.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                key = tuple(y - x for x, y in zip(a, b))
                out[key] = out.get(key, 0) + c * k
    return MultiPoly(G.nvars, out)


def _contraction_kernel(G: InversePoly, var_degrees: tuple[int, ...], d: int, nu: int) -> list[list[int]]:
    """HNF basis of ``{f in S_nu : f . G = 0}``."""
    monos = weighted_monomials(var_degrees, nu)
    if nu > d:
        return [[1 if i == j else 0 for j in range(len(monos))] for i in range(len(monos))]
    targets = weighted_monomials(var_degrees, d - nu)
    rows = _slice_rows([contract(MultiPoly.monomial(m), G) for m in monos], targets)
    return intlin.left_kernel(rows, len(targets)) if targets else [
        [1 if i == j else 0 for j in range(len(monos))] for i in range(len(monos))
    ]


def _times_variable(vec: Sequence[int], src: Sequence[Exponent], i: int, dst_index: dict) -> list[int]:
    out = [0] * len(dst_index)
    for c, m in zip(vec, src):
        if c:
            e = list(m)
            e[i] += 1
            out[dst_index[tuple(e)]] += c
    return out


def _canonical_sign(v: list[int]) -> list[int]:
    lead = next((x for x in v if x), 0)
    return [-x for x in v] if lead < 0 else v


def annihilator_slices(G: InversePoly, var_degrees: Sequence[int], through: int) -> dict[int, list[list[int]]]:
    degs = tuple(var_degrees)
    d = _inverse_degree(G, degs)
    return {nu: _contraction_kernel(G, degs, d, nu) for nu in range(through + 1)}


def _inverse_degree(G: InversePoly, var_degrees: tuple[int, ...]) -> int:
    if G.nvars != len(var_degrees):
        raise ValueError(f"inverse polynomial has {G.nvars} variables, degrees given for {len(var_degrees)}")
    d = weighted_homogeneous_degree(G, var_degrees)
    if d is None:
        raise ValueError("inverse polynomial must be nonzero and weighted-homogeneous")
    return d


def annihilator(G: InversePoly, var_degrees: Sequence[int], through: int | None = None) -> list[MultiPoly]:
    """Minimal generators of ``Ann(G)`` found degree by degree through ``through`` (default d+1)."""
    degs = tuple(var_degrees)
    d = _inverse_degree(G, degs)
    through = d + 1 if through is None else through
    kernels: dict[int, list[list[int]]] = {}
    gens: list[MultiPoly] = []
    for nu in range(through + 1):
        monos = weighted_monomials(degs, nu)
        index = {m: k for k, m in enumerate(monos)}
        kern = _contraction_kernel(G, degs, d, nu)
        kernels[nu] = kern
        lower = []
        for i, di in enumerate(degs):
            prev = nu - di
            if prev >= 0:
                src = weighted_monomials(degs, prev)
                lower.extend(_times_variable(v, src, i, index) for v in kernels[prev])
        # new generators span K_nu modulo the part generated from lower degrees
        coords = [intlin.coordinates(kern, v) for v in lower]
        for c in intlin.cokernel_generators(coords, len(kern)):
            v = [sum(x * row[k] for x, row in zip(c, kern)) for k in range(len(monos))]
            v = _canonical_sign(v)
            gens.append(MultiPoly(len(degs), {m: x for m, x in zip(monos, v) if x}))
    return gens


def _separating(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[int] | None:
    """A row of ``a`` outside the lattice spanned by ``b``."""
    b = [list(r) for r in b]
    for row in a:
        if not b or not intlin.lattice_contains(b, row):
            return list(row)
    return None


def verify_inverse_pair(ring: PresentedRing, G: InversePoly) -> Verdict:
    """Check that ``I`` and ``Ann(G)`` agree in every degree through d+1."""
    d = ring.socle_degree
    if G.nvars != ring.nvars:
        return Verdict(False, {"kind": "shape", "nvars": G.nvars, "expected": ring.nvars})
    gd = weighted_homogeneous_degree(G, ring.var_degrees)
    if gd != d:
        return Verdict(False, {"kind": "shape", "degree": gd, "expected": d})
    for nu in range(d + 2):
        ideal = [list(r) for r in graded_basis(ring, nu).ideal_basis]
        ann = _contraction_kernel(G, ring.var_degrees, d, nu)
        if ideal != ann:
            monos = weighted_monomials(ring.var_degrees, nu)
            extra = _separating(ann, ideal)
            side = "annihilator_only"
            if extra is None:
                extra, side = _separating(ideal, ann), "ideal_only"
            if extra is None:
                continue
            vec = MultiPoly(ring.nvars, {m: c for m, c in zip(monos, extra) if c})
            return Verdict(False, {"kind": "slice", "degree": nu, "side": side, "vector": extra,
                                   "element": vec.to_string(default_names(ring.nvars, "x"))})
    for k, g in enumerate(ring.generators):
        if contract(g, G):
            return Verdict(False, {"kind": "generator", "index": k})
    return Verdict(True)


def check_poincare(ring: PresentedRing, rho: DegreeMap) -> Verdict:
    """Perfectness of ``R_i x R_{d-i} -> Z`` for every i.

    The pairing is read on monomials, i.e. through the surjections
    ``Z^{S_i} -> R_i``; it is perfect iff the monomial matrix has rank
    ``r_i = r_{d-i}`` and all its invariant factors are 1.
    """
    d = ring.socle_degree
    for i in range(d + 1):
        a = graded_basis(ring, i)
        b = graded_basis(ring, d - i)
        if a.rank != b.rank:
            return Verdict(False, {"kind": "rank", "i": i, "ranks": [a.rank, b.rank]})
        if a.rank == 0:
            continue
        mat = [[rho(tuple(x + y for x, y in zip(m, n))) for n in b.monomials] for m in a.monomials]
        inv = intlin.smith_invariants(mat, len(b.monomials))
        if len(inv) != a.rank or any(x != 1 for x in inv):
            det = prod(inv) if len(inv) == a.rank else 0
            return Verdict(False, {"kind": "pairing", "i": i, "determinant": det, "invariants": inv})
    return Verdict(True)


@dataclass(frozen=True)
class Presentation:
    ring: PresentedRing
    positive_monomial: tuple[int, ...] | None
    names: tuple[str, ...]


def _read_poly(obj, names: Sequence[str]) -> MultiPoly:
    if isinstance(obj, str):
        return poly_from_string(obj, names)
    poly, got = from_json_obj(obj)
    if poly.nvars != len(names):
        raise PresentationError(f"generator has {poly.nvars} variables, expected {len(names)}")
    return poly


def presentation_from_json(obj) -> Presentation:
    """Parse ``{"var_degrees", "gens", "socle_degree", "positive_monomial", "names"?}``.

    Generators may be polynomial JSON objects or strings in the variable names
    (default ``x1..xn``).
    """
    try:
        degs = [int(x) for x in obj["var_degrees"]]
        names = list(obj.get("names") or default_names(len(degs), "x"))
        if len(names) != len(degs):
            raise PresentationError("names and var_degrees differ in length")
        gens = tuple(_read_poly(g, names) for g in obj["gens"])
        d = int(obj["socle_degree"])
        pm = obj.get("positive_monomial")
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"malformed presentation JSON: {exc}") from exc
    ring = PresentedRing(tuple(degs), gens, d)
    return Presentation(ring, tuple(int(x) for x in pm) if pm is not None else None, tuple(names))


def presentation_to_json(p: Presentation) -> dict:
    from .poly import to_json_obj

    obj = {
        "var_degrees": list(p.ring.var_degrees),
        "names": list(p.names),
        "gens": [to_json_obj(g, p.names) for g in p.ring.generators],
        "socle_degree": p.ring.socle_degree,
    }
    if p.positive_monomial is not None:
        obj["positive_monomial"] = list(p.positive_monomial)
    return obj


def load_presentation(path: str) -> Presentation:
    with open(path) as fh:
        return presentation_from_json(json.load(fh))
