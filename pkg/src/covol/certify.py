"""Log-concavity certification: M-convex support, discrete log-concavity,
Lorentzian and dually Lorentzian tests, with explicit failure witnesses.

The zero polynomial passes every structural check (degenerate convention).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .poly import Exponent, MultiPoly, normalize, reverse

_INT64_SAFE = 2**62
_COEF_SAFE = 2**30


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check; falsy on failure, in which case ``witness`` is set."""

    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)


def _radix(points: Sequence[Exponent], pad: int) -> np.ndarray | None:
    bounds = [max(col) + pad for col in zip(*points)]
    weights, acc = [], 1
    for b in reversed(bounds):
        weights.append(acc)
        acc *= b
    if acc >= _INT64_SAFE:
        return None
    return np.array(list(reversed(weights)), dtype=np.int64)


def is_mconvex(support: Iterable[Sequence[int]]) -> Verdict:
    """Exchange-axiom test; on failure the witness names ``q``, ``r`` and ``i``."""
    pts = sorted({tuple(int(x) for x in e) for e in support})
    if not pts:
        return PASS
    degrees = {sum(e) for e in pts}
    if len(degrees) > 1:
        lo = min(pts, key=sum)
        hi = max(pts, key=sum)
        return Verdict(False, {"kind": "degree", "q": list(lo), "r": list(hi)})
    weights = _radix(pts, 1)
    if weights is None:
        found = _exchange_python(pts)
    else:
        arr = np.array(pts, dtype=np.int64)
        codes = arr @ weights
        q, r, i = _kernels.exchange_violation(arr, codes, weights)
        found = None if q < 0 else (pts[q], pts[r], i)
    if found is None:
        return PASS
    q, r, i = found
    return Verdict(False, {"kind": "exchange", "q": list(q), "r": list(r), "i": i})


def _exchange_python(pts: list[Exponent]):
    members = set(pts)
    p = len(pts[0])
    for q in pts:
        for r in pts:
            for i in range(p):
                if q[i] >= r[i]:
                    continue
                ok = False
                for j in range(p):
                    if q[j] <= r[j]:
                        continue
                    a = list(q)
                    a[i] += 1
                    a[j] -= 1
                    b = list(r)
                    b[i] -= 1
                    b[j] += 1
                    if tuple(a) in members and tuple(b) in members:
                        ok = True
                        break
                if not ok:
                    return q, r, i
    return None


def _integer_coefficients(h: MultiPoly) -> dict[Exponent, int]:
    """Scale by the positive common denominator (the DLC inequalities are scale-invariant)."""
    den = lcm(*(Fraction(c).denominator for c in h.terms.values()))
    return {e: int(c * den) for e, c in h.terms.items()}


def _dlc_candidates(support: Iterable[Exponent], p: int) -> list[Exponent]:
    # Outside this set both neighbours of n vanish, so the inequality is 0 >= 0.
    cands = set(support)
    for q in list(cands):
        for i in range(p):
            if q[i] == 0:
                continue
            for j in range(p):
                if j != i:
                    n = list(q)
                    n[i] -= 1
                    n[j] += 1
                    cands.add(tuple(n))
    return sorted(cands)


def is_dlc(h: MultiPoly) -> Verdict:
    """Nonnegativity plus ``a_n^2 >= a_{n+e_i-e_j} a_{n-e_i+e_j}`` for all n, i, j."""
    neg = sorted(e for e, c in h.terms.items() if c < 0)
    if neg:
        return Verdict(False, {"kind": "negative", "n": list(neg[0]), "c": str(h.terms[neg[0]])})
    if not h.terms:
        return PASS
    coef = _integer_coefficients(h)
    p = h.nvars
    cands = _dlc_candidates(coef, p)
    weights = _radix(cands, 3)
    if weights is not None and max(coef.values()) < _COEF_SAFE:
        sup = sorted(coef)
        sup_arr = np.array(sup, dtype=np.int64)
        sup_codes = sup_arr @ weights
        order = np.argsort(sup_codes)
        sup_codes = sup_codes[order]
        sup_coef = np.array([coef[e] for e in sup], dtype=np.int64)[order]
        cand_arr = np.array(cands, dtype=np.int64)
        n, i, j = _kernels.dlc_violation(cand_arr, sup_codes, sup_coef, weights)
        found = None if n < 0 else (cands[n], i, j)
    else:
        found = _dlc_python(coef, cands, p)
    if found is None:
        return PASS
    n, i, j = found
    return Verdict(False, {"kind": "dlc", "n": list(n), "i": i, "j": j})


def _dlc_python(coef: dict[Exponent, int], cands: list[Exponent], p: int):
    for n in cands:
        a = coef.get(n, 0)
        for i in range(p):
            for j in range(p):
                if i == j or n[i] < 1 or n[j] < 1:
                    continue
                up = list(n)
                up[i] += 1
                up[j] -= 1
                dn = list(n)
                dn[i] -= 1
                dn[j] += 1
                if a * a < coef.get(tuple(up), 0) * coef.get(tuple(dn), 0):
                    return n, i, j
    return None


def signature(q: Sequence[Sequence]) -> tuple[int, int, int]:
    """Inertia ``(n_plus, n_zero, n_minus)`` of a symmetric matrix by exact congruence."""
    a = [[Fraction(x) for x in row] for row in q]
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    plus = minus = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/column i += row/column j makes a[i][i] = 2 a[i][j] != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            k = i
        piv = a[k][k]
        if piv > 0:
            plus += 1
        else:
            minus += 1
        rest = [i for i in active if i != k]
        for i in rest:
            f = a[i][k] / piv
            if f:
                for c in rest:
                    a[i][c] -= f * a[k][c]
        for i in rest:
            a[i][k] = a[k][i] = Fraction(0)
        active = rest
    return plus, n - plus - minus, minus


def _quadratic_form_matrix(q: MultiPoly) -> tuple[list[int], list[list[Fraction]]]:
    """Symmetric matrix of a quadratic form, restricted to the variables it uses."""
    used = q.used_variables()
    pos = {v: k for k, v in enumerate(used)}
    m = [[Fraction(0)] * len(used) for _ in used]
    for e, c in q.terms.items():
        vs = [i for i, x in enumerate(e) if x]
        if len(vs) == 1:
            m[pos[vs[0]]][pos[vs[0]]] += Fraction(c)
        else:
            a, b = pos[vs[0]], pos[vs[1]]
            m[a][b] += Fraction(c) / 2
            m[b][a] += Fraction(c) / 2
    return used, m


def _derivative_multisets(h: MultiPoly, e: int) -> list[Exponent]:
    """Exponent vectors alpha with |alpha| = e lying below some support point.

    Any other multiset of derivatives kills ``h``.
    """
    out: set[Exponent] = set()

    def below(n: Exponent, k: int, left: int, prefix: tuple):
        if k == len(n):
            if left == 0:
                out.add(prefix)
            return
        rest = sum(n[k + 1:])
        for a in range(max(0, left - rest), min(n[k], left) + 1):
            below(n, k + 1, left - a, prefix + (a,))

    for n in h.terms:
        below(n, 0, e, ())
    return sorted(out, reverse=True)


def is_lorentzian(h: MultiPoly) -> Verdict:
    """Exact Lorentzian test for a homogeneous polynomial.

    Raises ``ValueError`` for inhomogeneous input.
    """
    if not h.is_homogeneous():
        raise ValueError("Lorentzian test needs a homogeneous polynomial")
    neg = sorted(e for e, c in h.terms.items() if c < 0)
    if neg:
        return Verdict(False, {"kind": "negative", "n": list(neg[0]), "c": str(h.terms[neg[0]])})
    mc = is_mconvex(h.terms)
    if not mc:
        return mc
    d = h.degree()
    if d <= 1:
        return PASS
    for alpha in _derivative_multisets(h, d - 2):
        form = h.derivative(alpha)
        used, mat = _quadratic_form_matrix(form)
        plus, zero, minus = signature(mat)
        if plus > 1:
            return Verdict(
                False,
                {
                    "kind": "hessian",
                    "alpha": list(alpha),
                    "variables": used,
                    "form": [[str(x) for x in row] for row in mat],
                    "inertia": [plus, zero, minus],
                },
            )
    return PASS


def is_dually_lorentzian(h: MultiPoly, m: Sequence[int] | None = None) -> Verdict:
    """Lorentzian test of ``N(t^m h(1/t))``; ``m`` defaults to the per-variable maximum exponent."""
    if not h.terms:
        return PASS
    neg = sorted(e for e, c in h.terms.items() if c < 0)
    if neg:
        return Verdict(False, {"kind": "negative", "n": list(neg[0]), "c": str(h.terms[neg[0]])})
    m = h.max_exponents() if m is None else tuple(m)
    if not h.is_homogeneous():
        degs = sorted({sum(e) for e in h.terms})
        return Verdict(False, {"kind": "inhomogeneous", "degrees": degs})
    verdict = is_lorentzian(normalize(reverse(h, m)))
    if verdict:
        return PASS
    return Verdict(False, {**verdict.witness, "reversal": list(m)})


CHECKS = ("nonnegative", "homogeneous", "m_convex", "dlc", "lorentzian", "dually_lorentzian")


@dataclass
class CertReport:
    """Aggregated verdicts; flags not requested are ``None``."""

    nonnegative: bool | None = None
    homogeneous: bool | None = None
    m_convex: bool | None = None
    dlc: bool | None = None
    lorentzian: bool | None = None
    dually_lorentzian: bool | None = None
    witnesses: dict[str, dict] = field(default_factory=dict)
    degree: int | None = None
    degenerate: bool = False

    @property
    def covolume_necessary(self) -> bool | None:
        return self.dually_lorentzian

    def passed(self, names: Iterable[str] | None = None) -> bool:
        names = CHECKS if names is None else names
        return all(getattr(self, n) is not False for n in names)

    def failures(self) -> list[str]:
        return [n for n in CHECKS if getattr(self, n) is False]

    def to_json(self) -> dict:
        out = {n: getattr(self, n) for n in CHECKS if getattr(self, n) is not None}
        out["degree"] = self.degree
        if self.degenerate:
            out["degenerate"] = True
        if self.witnesses:
            out["witnesses"] = {k: self.witnesses[k] for k in sorted(self.witnesses)}
        return out


def certify_report(h: MultiPoly, checks: Iterable[str] | None = None) -> CertReport:
    """Run the requested checks (all by default) and cross-check the implications."""
    wanted = set(CHECKS if checks is None else checks)
    unknown = wanted - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    rep = CertReport()
    if not h.terms:
        rep.degenerate = True
        for name in wanted:
            setattr(rep, name, True)
        return rep
    rep.degree = h.degree()

    def record(name, verdict):
        setattr(rep, name, verdict.ok)
        if not verdict.ok:
            rep.witnesses[name] = verdict.witness

    if "nonnegative" in wanted:
        neg = sorted(e for e, c in h.terms.items() if c < 0)
        record("nonnegative", Verdict(not neg, {"n": list(neg[0]), "c": str(h.terms[neg[0]])} if neg else None))
    if "homogeneous" in wanted:
        degs = sorted({sum(e) for e in h.terms})
        record("homogeneous", Verdict(len(degs) == 1, None if len(degs) == 1 else {"degrees": degs}))
    if "m_convex" in wanted:
        record("m_convex", is_mconvex(h.terms))
    if "dlc" in wanted:
        record("dlc", is_dlc(h))
    if "lorentzian" in wanted:
        if h.is_homogeneous():
            record("lorentzian", is_lorentzian(h))
        else:
            record("lorentzian", Verdict(False, {"kind": "inhomogeneous"}))
    if "dually_lorentzian" in wanted:
        record("dually_lorentzian", is_dually_lorentzian(h))
        if rep.dually_lorentzian:
            # dually Lorentzian forces M-convex support and discrete log-concavity
            if not is_mconvex(h.terms) or not is_dlc(h):
                raise AssertionError("dually Lorentzian polynomial failed the support or DLC cross-check")
    return rep
