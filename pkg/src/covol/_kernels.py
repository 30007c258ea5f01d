"""Integer scan kernels for the support checks.

Two interchangeable backends: loop kernels compiled with numba ``@njit``
and vectorized numpy versions. Set ``COVOL_DISABLE_NUMBA=1`` (or run
without numba installed) to use the numpy path. Both return the first
violation in the same scan order, so witnesses do not depend on the backend.

Points are encoded as mixed-radix int64 codes; callers guarantee the codes
and coefficient products fit in int64 (see ``certify``).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

USE_NUMBA = njit is not None and os.environ.get("COVOL_DISABLE_NUMBA", "0") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"

NONE = (-1, -1, -1)


def _member_numpy(sorted_codes: np.ndarray, codes: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(sorted_codes, codes)
    idx = np.clip(idx, 0, len(sorted_codes) - 1)
    return sorted_codes[idx] == codes


def exchange_violation_numpy(pts: np.ndarray, codes: np.ndarray, weights: np.ndarray):
    """First ``(q, r, i)`` violating the exchange axiom, or ``(-1, -1, -1)``.

    ``pts`` is (N, p) int64, ``codes`` the codes of its rows, ``weights`` the
    radix weights. Scan order: q, then r, then i.
    """
    sorted_codes = np.sort(codes)
    shift = weights[:, None] - weights[None, :]  # e_i - e_j
    for q in range(pts.shape[0]):
        diff = pts - pts[q]
        pos = diff > 0
        if not pos.any():
            continue
        neg = diff < 0
        m1 = _member_numpy(sorted_codes, codes[q] + shift)
        m2 = _member_numpy(sorted_codes, codes[:, None, None] - shift[None, :, :])
        ok = neg[:, None, :] & m1[None, :, :] & m2
        fail = pos & ~ok.any(axis=2)
        if fail.any():
            r, i = np.argwhere(fail)[0]
            return int(q), int(r), int(i)
    return NONE


def dlc_violation_numpy(cand: np.ndarray, sup_codes: np.ndarray, sup_coef: np.ndarray, weights: np.ndarray):
    """First ``(n, i, j)`` with ``a_n^2 < a_{n+e_i-e_j} a_{n-e_i+e_j}``.

    ``cand`` is (M, p); ``sup_codes`` sorted with ``sup_coef`` aligned.
    Scan order: candidate, then i, then j.
    """
    m, p = cand.shape

    def lookup(codes):
        idx = np.clip(np.searchsorted(sup_codes, codes), 0, len(sup_codes) - 1)
        return np.where(sup_codes[idx] == codes, sup_coef[idx], 0)

    ccodes = cand @ weights
    a = lookup(ccodes)
    shift = weights[:, None] - weights[None, :]
    up = ccodes[:, None, None] + shift[None]
    down = ccodes[:, None, None] - shift[None]
    # n + e_i - e_j needs n_j >= 1; n - e_i + e_j needs n_i >= 1
    valid_up = np.broadcast_to(cand[:, None, :] >= 1, (m, p, p))
    valid_down = np.broadcast_to(cand[:, :, None] >= 1, (m, p, p))
    b = np.where(valid_up, lookup(up), 0)
    c = np.where(valid_down, lookup(down), 0)
    bad = (a * a)[:, None, None] < b * c
    bad &= ~np.eye(p, dtype=bool)[None]
    if bad.any():
        n, i, j = np.argwhere(bad)[0]
        return int(n), int(i), int(j)
    return NONE


def _exchange_loops(pts, codes, weights):
    sorted_codes = np.sort(codes)
    n, p = pts.shape
    last = len(sorted_codes) - 1
    for q in range(n):
        for r in range(n):
            for i in range(p):
                if pts[q, i] >= pts[r, i]:
                    continue
                found = False
                for j in range(p):
                    if pts[q, j] <= pts[r, j]:
                        continue
                    c1 = codes[q] + weights[i] - weights[j]
                    k = min(np.searchsorted(sorted_codes, c1), last)
                    if sorted_codes[k] != c1:
                        continue
                    c2 = codes[r] - weights[i] + weights[j]
                    k = min(np.searchsorted(sorted_codes, c2), last)
                    if sorted_codes[k] == c2:
                        found = True
                        break
                if not found:
                    return q, r, i
    return -1, -1, -1


def _dlc_loops(cand, sup_codes, sup_coef, weights):
    m, p = cand.shape
    last = len(sup_codes) - 1
    for n in range(m):
        code = 0
        for k in range(p):
            code += cand[n, k] * weights[k]
        idx = min(np.searchsorted(sup_codes, code), last)
        a = sup_coef[idx] if sup_codes[idx] == code else 0
        for i in range(p):
            for j in range(p):
                if i == j or cand[n, j] < 1 or cand[n, i] < 1:
                    continue
                c_up = code + weights[i] - weights[j]
                idx = min(np.searchsorted(sup_codes, c_up), last)
                if sup_codes[idx] != c_up:
                    continue
                b = sup_coef[idx]
                c_dn = code - weights[i] + weights[j]
                idx = min(np.searchsorted(sup_codes, c_dn), last)
                if sup_codes[idx] != c_dn:
                    continue
                if a * a < b * sup_coef[idx]:
                    return n, i, j
    return -1, -1, -1


if njit is not None:
    exchange_violation_numba = njit(cache=True)(_exchange_loops)
    dlc_violation_numba = njit(cache=True)(_dlc_loops)
else:  # pragma: no cover
    exchange_violation_numba = _exchange_loops
    dlc_violation_numba = _dlc_loops


def exchange_violation(pts, codes, weights):
    if USE_NUMBA:
        return tuple(int(x) for x in exchange_violation_numba(pts, codes, weights))
    return exchange_violation_numpy(pts, codes, weights)


def dlc_violation(cand, sup_codes, sup_coef, weights):
    if USE_NUMBA:
        return tuple(int(x) for x in dlc_violation_numba(cand, sup_codes, sup_coef, weights))
    return dlc_violation_numpy(cand, sup_codes, sup_coef, weights)
