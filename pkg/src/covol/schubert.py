"""Schubert, double Schubert and Richardson polynomials.

Double polynomials live in ``2p`` variables ordered ``t1..tp, s1..sp``.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from . import intlin
from .perm import Permutation, bruhat_leq, compose, length, w0
from .poly import Coeff, Exponent, MultiPoly

PIPE_DREAM_BOUND = 7


class IncomparablePair(ValueError):
    """Raised for ``u`` not below ``w`` in Bruhat order (the Richardson variety is empty)."""


def divided_difference(f: MultiPoly, i: int) -> MultiPoly:
    """Apply the i-th divided difference (1-based) in variables ``t_i, t_{i+1}``.

    Computed term by term: ``(t_i^a t_{i+1}^b - t_i^b t_{i+1}^a)/(t_i - t_{i+1})``
    is ``(t_i t_{i+1})^min * h_{|a-b|-1}(t_i, t_{i+1})`` up to sign, which is
    the exact quotient.
    """
    if not 1 <= i < f.nvars:
        raise IndexError(f"divided difference index {i} out of range for {f.nvars} variables")
    a_idx, b_idx = i - 1, i
    out: dict[Exponent, Coeff] = {}
    for e, c in f.terms.items():
        a, b = e[a_idx], e[b_idx]
        if a == b:
            continue
        sign = 1 if a > b else -1
        lo, gap = min(a, b), abs(a - b)
        base = list(e)
        for k in range(gap):
            base[a_idx] = lo + gap - 1 - k
            base[b_idx] = lo + k
            key = tuple(base)
            out[key] = out.get(key, 0) + sign * c
    return MultiPoly(f.nvars, out)


def top_schubert(p: int, double: bool = False) -> MultiPoly:
    """Initial data for the longest permutation of S_p."""
    if not double:
        return MultiPoly.monomial(tuple(p - i for i in range(1, p + 1)))
    nv = 2 * p
    result = MultiPoly.constant(nv)
    for i in range(1, p + 1):
        for j in range(1, p + 1 - i):
            result = result * (MultiPoly.var(nv, i - 1) - MultiPoly.var(nv, p + j - 1))
    return result


class SchubertCache:
    """Memo of Schubert polynomials keyed by (permutation, double flag).

    Guarded by a lock so concurrent readers see complete entries.
    """

    def __init__(self):
        self._data: dict[tuple[tuple[int, ...], bool], MultiPoly] = {}
        self._lock = threading.Lock()

    def get(self, w: Permutation, double: bool) -> MultiPoly:
        key = (w.word, double)
        with self._lock:
            hit = self._data.get(key)
        if hit is not None:
            return hit
        value = self._compute(w, double)
        with self._lock:
            self._data.setdefault(key, value)
        return value

    def _compute(self, w: Permutation, double: bool) -> MultiPoly:
        p = w.size
        chain = []
        cur = w
        top = w0(p)
        while cur != top:
            i = cur.ascents()[0]
            chain.append(i)
            cur = compose(cur, Permutation.transposition(p, i))
        value = top_schubert(p, double)
        # walk back down from w0, applying the recorded operators in reverse
        for i in reversed(chain):
            value = divided_difference(value, i)
        return value

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_CACHE = SchubertCache()


def schubert(w: Permutation, double: bool = False, cache: SchubertCache | None = None) -> MultiPoly:
    """Schubert polynomial of ``w`` by divided differences from the top permutation."""
    return (_CACHE if cache is None else cache).get(w, double)


def pipe_dreams(w: Permutation, bound: int = PIPE_DREAM_BOUND) -> list[tuple[tuple[int, int], ...]]:
    """All reduced pipe dreams of ``w`` as tuples of cross positions ``(row, col)``.

    A cross at (i, j) in the staircase ``i + j <= p`` stands for the simple
    transposition ``s_{i+j-1}``; reading rows top to bottom, each row right to
    left, the word must be a reduced word of ``w``.
    """
    p = w.size
    if p > bound:
        raise ValueError(f"pipe dream enumeration is limited to S_{bound}")
    cells = [(i, j) for i in range(1, p) for j in range(p - i, 0, -1)]
    target = w.word
    need = length(w)
    found: list[tuple[tuple[int, int], ...]] = []

    def walk(pos: int, cur: list[int], crosses: list[tuple[int, int]]):
        if len(crosses) == need:
            if tuple(cur) == target:
                found.append(tuple(crosses))
            return
        if len(cells) - pos < need - len(crosses):
            return
        i, j = cells[pos]
        a = i + j - 1
        # right-multiplying by s_a adds an inversion iff cur(a) < cur(a+1)
        if cur[a - 1] < cur[a]:
            cur[a - 1], cur[a] = cur[a], cur[a - 1]
            crosses.append((i, j))
            walk(pos + 1, cur, crosses)
            crosses.pop()
            cur[a - 1], cur[a] = cur[a], cur[a - 1]
        walk(pos + 1, cur, crosses)

    walk(0, list(range(1, p + 1)), [])
    return found


def pipe_dream_schubert(w: Permutation, double: bool = False, bound: int = PIPE_DREAM_BOUND) -> MultiPoly:
    """Schubert polynomial as a sum over reduced pipe dreams (independent of divided differences)."""
    p = w.size
    nv = 2 * p if double else p
    total = MultiPoly.zero(nv)
    for dream in pipe_dreams(w, bound):
        term = MultiPoly.constant(nv)
        for i, j in dream:
            factor = MultiPoly.var(nv, i - 1)
            if double:
                factor = factor - MultiPoly.var(nv, p + j - 1)
            term = term * factor
        total = total + term
    return total


def reverse_s_variables(f: MultiPoly, p: int) -> MultiPoly:
    """Substitute ``s_j -> s_{p+1-j}`` in a polynomial on ``t1..tp, s1..sp``."""
    perm = list(range(p)) + [2 * p - 1 - j for j in range(p)]
    return f.permute_variables(perm)


def s_variables(p: int) -> list[int]:
    return list(range(p, 2 * p))


def richardson(w: Permutation, u: Permutation, double: bool = False) -> MultiPoly:
    """``S_u(t, s) * S_{w0 w}(t, s reversed)``; the single version sets ``s = 0``."""
    if not bruhat_leq(u, w):
        raise IncomparablePair(f"{u} is not below {w} in Bruhat order")
    p = w.size
    lower = schubert(u, double)
    upper = schubert(compose(w0(p), w), double)
    if double:
        upper = reverse_s_variables(upper, p)
    return lower * upper


@lru_cache(maxsize=None)
def _coinvariant_reducer(n: int, k: int):
    """HNF of the degree-k slice of the ideal (e_1..e_n), columns ordered non-basis first.

    Returns (column order, HNF rows, number of non-basis monomials).
    """
    monos = _monomials(n, k)
    nonbasis = [m for m in monos if any(a > n - 1 - i for i, a in enumerate(m))]
    basis = [m for m in monos if all(a <= n - 1 - i for i, a in enumerate(m))]
    order = nonbasis + basis
    index = {m: i for i, m in enumerate(order)}
    rows = []
    for j in range(1, min(n, k) + 1):
        ej = _elementary(n, j)
        for m in _monomials(n, k - j):
            row = [0] * len(order)
            for e, c in ej.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] += c
            rows.append(row)
    h = intlin.hnf(rows, len(order))
    # the ideal slice maps isomorphically onto the non-basis coordinates over Z
    pivots = [next(j for j, x in enumerate(r) if x) for r in h]
    if pivots != list(range(len(nonbasis))) or any(h[r][r] != 1 for r in range(len(nonbasis))):
        raise AssertionError(f"staircase monomials are not a Z-basis complement in degree {k}")
    return order, h, len(nonbasis)


@lru_cache(maxsize=None)
def _monomials(n: int, k: int) -> tuple[Exponent, ...]:
    if n == 0:
        return ((),) if k == 0 else ()
    out = []
    for a in range(k, -1, -1):
        for rest in _monomials(n - 1, k - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _elementary(n: int, j: int) -> MultiPoly:
    from itertools import combinations

    terms = {}
    for subset in combinations(range(n), j):
        terms[tuple(1 if i in subset else 0 for i in range(n))] = 1
    return MultiPoly(n, terms)


def normal_form(f: MultiPoly, n: int | None = None) -> MultiPoly:
    """Representative of ``f`` modulo (e_1, ..., e_n) in the basis ``t^a, a_i <= n - i``."""
    n = f.nvars if n is None else n
    if f.nvars != n:
        raise ValueError(f"expected a polynomial in {n} variables")
    if not f.is_integral():
        raise ValueError("normal form is computed over the integers")
    out: dict[Exponent, Coeff] = {}
    for k in sorted({sum(e) for e in f.terms}):
        order, h, nb = _coinvariant_reducer(n, k)
        vec = [0] * len(order)
        index = {m: i for i, m in enumerate(order)}
        for e, c in f.homogeneous_part(k).terms.items():
            vec[index[e]] = c
        vec = intlin.reduce_vector(h[:nb], vec)
        assert not any(vec[:nb]), "normal form reduction left a non-basis monomial"
        for m, c in zip(order[nb:], vec[nb:]):
            if c:
                out[m] = c
    return MultiPoly(n, out)


def skew_schubert(w: Permutation, u: Permutation) -> MultiPoly:
    """Normal form of the single Richardson polynomial in the coinvariant algebra."""
    return normal_form(richardson(w, u, double=False), w.size)
