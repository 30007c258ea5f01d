"""Certification survey over comparable pairs of S_n, persisted as JSONL.

Families ``schubert``, ``double_schubert``, ``richardson`` and
``double_richardson`` are theorem checks: a failure on an asserted check
aborts the survey. ``skew_schubert`` is exploratory and only reported.
Double families are certified after substituting ``s -> -s``.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .certify import CertReport, certify_report
from .perm import BoundExceeded, Permutation, enumerate_bruhat_pairs, max_n
from .poly import MultiPoly, default_names, double_names, dumps, flip_signs
from .schubert import richardson, s_variables, schubert, skew_schubert

ASSERTION_FAMILIES = ("schubert", "double_schubert", "richardson", "double_richardson")
EXPLORATION_FAMILIES = ("skew_schubert",)
FAMILIES = ASSERTION_FAMILIES + EXPLORATION_FAMILIES
ASSERTED_CHECKS = ("nonnegative", "homogeneous", "m_convex", "dlc", "dually_lorentzian")
DEFAULT_CHECKS = ("m_convex", "dlc")


class SurveyFailure(RuntimeError):
    def __init__(self, record: dict):
        super().__init__(f"{record['family']} {record['u']} <= {record['w']} failed {record['failed']}")
        self.record = record


def family_polynomial(family: str, u: Permutation, w: Permutation) -> tuple[MultiPoly, list[str]]:
    """The polynomial certified for ``family`` at the pair ``u <= w``, with variable names."""
    p = w.size
    if family == "schubert":
        return schubert(u), default_names(p)
    if family == "double_schubert":
        return flip_signs(schubert(u, double=True), s_variables(p)), double_names(p)
    if family == "richardson":
        return richardson(w, u), default_names(p)
    if family == "double_richardson":
        return flip_signs(richardson(w, u, double=True), s_variables(p)), double_names(p)
    if family == "skew_schubert":
        return skew_schubert(w, u), default_names(p)
    raise ValueError(f"unknown family {family!r}")


def digest(poly: MultiPoly, names: Sequence[str]) -> str:
    return hashlib.sha256(dumps(poly, names).encode()).hexdigest()


@dataclass(frozen=True)
class Job:
    family: str
    u: tuple[int, ...]
    w: tuple[int, ...]


def _run_job(job: Job, checks: tuple[str, ...], timings: bool) -> dict:
    u, w = Permutation(job.u), Permutation(job.w)
    start = time.perf_counter()
    poly, names = family_polynomial(job.family, u, w)
    report = certify_report(poly, checks)
    return make_record(job, poly, names, report, time.perf_counter() - start if timings else None)


def make_record(job: Job, poly: MultiPoly, names, report: CertReport, wall: float | None) -> dict:
    rec = {
        "family": job.family,
        "u": str(Permutation(job.u)),
        "w": str(Permutation(job.w)),
        "digest": digest(poly, names),
        "poly": poly.to_string(names),
        "report": report.to_json(),
    }
    asserted = [c for c in report.failures() if c in ASSERTED_CHECKS]
    rec["asserted"] = job.family in ASSERTION_FAMILIES
    rec["failed"] = asserted
    if wall is not None:
        rec["wall_time"] = round(wall, 6)
    return rec


def plan(n: int, families: Iterable[str]) -> list[Job]:
    if n > max_n():
        raise BoundExceeded(f"n = {n} exceeds the bound {max_n()} (set COVOL_MAX_N to raise it)")
    if n < 1:
        raise ValueError("n must be positive")
    families = list(families)
    for f in families:
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")
    pairs = sorted((u.word, w.word) for u, w in enumerate_bruhat_pairs(n))
    return [Job(f, u, w) for f in families for u, w in pairs]


def _key(rec: dict) -> tuple:
    return rec["family"], rec["u"], rec["w"], rec["digest"]


def _load_existing(paths: Iterable[str]) -> dict[tuple, dict]:
    done: dict[tuple, dict] = {}
    for path in paths:
        if not os.path.exists(path):
            continue
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    # a torn final line from an interrupted run
                    continue
                done[_key(rec)] = rec
    return done


def _encode(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def survey(
    n: int,
    families: Sequence[str] = FAMILIES,
    checks: Sequence[str] = DEFAULT_CHECKS,
    out_path: str | None = None,
    jobs: int = 1,
    resume: bool = False,
    timings: bool = False,
) -> list[dict]:
    """Certify every comparable pair of S_n for each family.

    Records come back (and are written) in family order, then sorted pair
    order, whatever order the workers finish in. With ``out_path`` the file
    is replaced atomically at the end; completed records are streamed to
    ``out_path + ".partial"`` so an interrupted run can resume.
    """
    checks = tuple(checks)
    todo = plan(n, families)
    partial = out_path + ".partial" if out_path else None
    done = _load_existing([out_path, partial]) if (resume and out_path) else {}

    records: list[dict | None] = [None] * len(todo)
    pending: list[int] = []
    for k, job in enumerate(todo):
        if done:
            poly, names = family_polynomial(job.family, Permutation(job.u), Permutation(job.w))
            key = (job.family, str(Permutation(job.u)), str(Permutation(job.w)), digest(poly, names))
            if key in done and all(c in done[key]["report"] for c in checks):
                records[k] = done[key]
                continue
        pending.append(k)

    sink = open(partial, "a") if partial else None
    try:
        if jobs > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = pool.map(_run_job, [todo[k] for k in pending], [checks] * len(pending),
                                   [timings] * len(pending), chunksize=max(1, len(pending) // (4 * jobs)))
                _collect(pending, results, records, sink)
        else:
            _collect(pending, (_run_job(todo[k], checks, timings) for k in pending), records, sink)
    finally:
        if sink:
            sink.close()

    final = [r for r in records if r is not None]
    if out_path:
        tmp = out_path + ".tmp"
        with open(tmp, "w") as fh:
            for rec in final:
                fh.write(_encode(rec) + "\n")
        os.replace(tmp, out_path)
        if os.path.exists(partial):
            os.remove(partial)
    return final


def _collect(indices, results, records, sink) -> None:
    for k, rec in zip(indices, results):
        records[k] = rec
        if sink:
            sink.write(_encode(rec) + "\n")
            sink.flush()
        if rec["asserted"] and rec["failed"]:
            raise SurveyFailure(rec)
