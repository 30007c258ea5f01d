"""Acceptance criteria, one test per criterion.

Each test records a ``[PASS]`` or ``[FAIL]`` line (with wall time) that is
printed in the pytest terminal summary. Run standalone with
``python3 -m tests.test_acceptance`` (it calls pytest on this file).
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from covol.catalog import expected_dual_generators, hirzebruch_volume
from covol.certify import certify_report, is_dually_lorentzian, is_lorentzian, signature
from covol.cli import run
from covol.macaulay import (
    PresentedRing,
    annihilator,
    check_flat,
    check_poincare,
    contract,
    derive_degree_map,
    dual_generator,
    graded_basis,
    verify_inverse_pair,
)
from covol.multidegree import (
    GradingSpec,
    MonomialIdeal,
    codim,
    k_polynomial,
    multidegree_direct,
    multidegree_twisted,
    standardize,
)
from covol.perm import Permutation, all_permutations, enumerate_bruhat_pairs, w0
from covol.poly import (
    MultiPoly,
    default_names,
    denormalize,
    flip_signs,
    normalize,
    poly_from_string,
    truncate,
)
from covol.schubert import (
    divided_difference,
    pipe_dream_schubert,
    richardson,
    schubert,
    skew_schubert,
    top_schubert,
)
from covol.survey import ASSERTED_CHECKS, ASSERTION_FAMILIES, DEFAULT_CHECKS, family_polynomial, survey
from covol.toric import (
    divisor_polytope,
    hirzebruch,
    intersection_dual_generator,
    mixed_volume_polarization,
    mixed_volumes,
    projective_line,
    projective_plane,
    toric_dual_generator,
    unit_divisor,
)
from tests import acceptance_log
from tests.corpus import nonstandard_corpus, twisted_corpus

SEED = 20240601


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            raise AssertionError(f"took {elapsed:.2f}s, limit {limit}s")
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        acceptance_log.LINES.append(f"[FAIL] C{number} {title} ({elapsed:.2f}s): {exc}")
        print(acceptance_log.LINES[-1])
        raise
    acceptance_log.LINES.append(f"[PASS] C{number} {title} ({elapsed:.2f}s)")
    print(acceptance_log.LINES[-1])


def T(text: str, n: int) -> MultiPoly:
    return poly_from_string(text, default_names(n))


def test_c01_richardson_exact(capsys):
    with criterion(1, "Richardson polynomial R_{3412/2143}", limit=1.0):
        expected = T("t1^4 + 2*t1^3*t2 + t1^2*t2^2 + 2*t1^3*t3 + 2*t1^2*t2*t3 + t1^2*t3^2", 4)
        assert richardson(Permutation.parse("3412"), Permutation.parse("2143")) == expected
        assert run(["richardson", "--w", "3412", "--u", "2143"]) == 0
        printed = capsys.readouterr().out.strip()
        assert T(printed, 4) == expected, printed


def test_c02_skew_schubert_normal_form():
    with criterion(2, "skew Schubert normal form of R_{3412/2143}", limit=1.0):
        got = skew_schubert(Permutation.parse("3412"), Permutation.parse("2143"))
        assert got == T("t1^3*t2 + t1^3*t3 + t1^2*t2*t3", 4)


def test_c03_initial_data():
    with criterion(3, "top Schubert polynomials, single p=3,4 and double p=3"):
        for p in (3, 4):
            assert schubert(w0(p)) == MultiPoly.monomial(tuple(p - i for i in range(1, p + 1)))
        names = ["t1", "t2", "t3", "s1", "s2", "s3"]
        expected = poly_from_string("(t1 - s1)*(t1 - s2)*(t2 - s1)", names)
        assert top_schubert(3, double=True) == expected == schubert(w0(3), double=True)


def test_c04_pipe_dream_oracle():
    with criterion(4, "divided differences agree with pipe dreams on S4", limit=30.0):
        for double in (False, True):
            for w in all_permutations(4):
                assert pipe_dream_schubert(w, double) == schubert(w, double), (str(w), double)


def test_c05_theorem_survey():
    with criterion(5, "S4 M-convex + DLC for four families, S3 full dually Lorentzian", limit=600.0):
        recs = survey(4, ASSERTION_FAMILIES, DEFAULT_CHECKS)
        assert len(recs) == 4 * len(list(enumerate_bruhat_pairs(4)))
        assert all(r["report"]["m_convex"] and r["report"]["dlc"] for r in recs)
        recs = survey(3, ASSERTION_FAMILIES, ASSERTED_CHECKS)
        assert len(recs) == 4 * len(list(enumerate_bruhat_pairs(3)))
        assert all(r["report"]["dually_lorentzian"] for r in recs)


def _truncation_samples(count: int):
    rng = random.Random(SEED)
    pools = []
    for n in (3, 4):
        for u, w in enumerate_bruhat_pairs(n):
            for fam in ASSERTION_FAMILIES:
                pools.append((fam, u, w))
    samples = []
    while len(samples) < count:
        fam, u, w = rng.choice(pools)
        h, _ = family_polynomial(fam, u, w)
        box = h.max_exponents()
        bound = tuple(rng.randint(0, b) for b in box)
        t = truncate(h, bound)
        if t:  # the zero truncation passes by convention and would make the sample vacuous
            samples.append((fam, u, w, bound, t))
    return samples


def test_c06_truncation_closure():
    with criterion(6, "100 nonzero truncations are dually Lorentzian"):
        samples = _truncation_samples(100)
        assert len(samples) == 100
        for fam, u, w, bound, t in samples:
            assert is_dually_lorentzian(t), (fam, str(u), str(w), bound)


def test_c07_mixed_sign_example():
    with criterion(7, "mixed-sign grading gives t1^2 - t2^2 with exchange witness"):
        ideal = MonomialIdeal.of([(1, 0), (0, 1)])
        grading = GradingSpec(2, ((1, 1), (1, -1)))
        h = multidegree_direct(ideal, grading)
        assert h == T("t1^2 - t2^2", 2)
        rep = certify_report(flip_signs(h, [1]))
        assert rep.m_convex is False
        wit = rep.witnesses["m_convex"]
        assert {tuple(wit["q"]), tuple(wit["r"])} == {(2, 0), (0, 2)}


def test_c08_flip_lemma():
    with criterion(8, "flip route equals direct route on 24 twisted ideals"):
        corpus = twisted_corpus(24)
        assert len(corpus) >= 20
        for ideal, grading, q in corpus:
            assert multidegree_twisted(ideal, grading, q) == multidegree_direct(ideal, grading), (ideal, grading)


def test_c09_standardization():
    with criterion(9, "standardize keeps codim and K on 24 non-standard ideals"):
        corpus = nonstandard_corpus(24)
        assert len(corpus) >= 20
        for ideal, grading in corpus:
            assert not grading.is_standard()
            new_ideal, new_grading = standardize(ideal, grading)
            assert new_grading.is_standard()
            assert codim(new_ideal) == codim(ideal)
            assert k_polynomial(new_ideal, new_grading) == k_polynomial(ideal, grading)


def test_c10_macaulay_examples():
    with criterion(10, "Macaulay dual generators for 11 presentations", limit=60.0):
        examples = expected_dual_generators()
        assert len(examples) == 11
        for name, (pres, G) in examples.items():
            ring = pres.ring
            assert check_flat(ring), name
            rho = derive_degree_map(ring, pres.positive_monomial)
            assert dual_generator(ring, rho) == G, name
            assert verify_inverse_pair(ring, G), name
            # the computed annihilator presents the same ideal in every slice through d+1
            ann_ring = PresentedRing(ring.var_degrees, tuple(annihilator(G, ring.var_degrees)), ring.socle_degree)
            for nu in range(ring.socle_degree + 2):
                assert graded_basis(ann_ring, nu).ideal_basis == graded_basis(ring, nu).ideal_basis, (name, nu)
            assert check_poincare(ring, rho), name


def test_c11_lorentzian_positivity():
    with criterion(11, "nef dual generators are Lorentzian and give the Hirzebruch volume polynomials"):
        examples = expected_dual_generators()
        assert is_lorentzian(normalize(examples["flag3_nef"][1]))
        for r in range(4):
            reduced = examples[f"hirzebruch_reduced_{r}"][1]
            assert is_lorentzian(normalize(reduced)), r
            assert normalize(reduced).scale(2) == hirzebruch_volume(r, reduced=True), r
            full = examples[f"hirzebruch_full_{r}"][1]
            assert normalize(full).scale(2) == hirzebruch_volume(r), r


def test_c12_toric_routes():
    with criterion(12, "mixed-volume and degree-map routes agree; interpolation equals inclusion-exclusion"):
        cases = [(hirzebruch(r), [2, 3]) for r in range(4)]
        cases += [(projective_line(), [0, 1]), (projective_plane(), [0, 1, 2])]
        for fan, rays in cases:
            divisors = [unit_divisor(fan, i) for i in rays]
            assert toric_dual_generator(fan, divisors) == intersection_dual_generator(fan, divisors), fan
            polys = [divisor_polytope(fan, D) for D in divisors]
            for alpha, value in mixed_volumes(polys, fan.dim).items():
                assert value == mixed_volume_polarization(polys, alpha), (fan, alpha)


# property suites, seeded and counted


def _random_poly(rng: random.Random, nvars: int, terms: int, max_exp: int, lo: int = -5, hi: int = 5) -> MultiPoly:
    return MultiPoly(nvars, {tuple(rng.randint(0, max_exp) for _ in range(nvars)): rng.randint(lo, hi) for _ in range(terms)})


def _random_symmetric(rng: random.Random, n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(-4, 4)
    return a


CASES = 120


def _dd_squares(rng):
    f = _random_poly(rng, 4, rng.randint(1, 6), 4)
    i = rng.randint(1, 3)
    return not divided_difference(divided_difference(f, i), i)


def _braid(rng):
    f = _random_poly(rng, 4, rng.randint(1, 6), 3)
    i = rng.randint(1, 2)
    a = divided_difference
    return a(a(a(f, i), i + 1), i) == a(a(a(f, i + 1), i), i + 1)


def _normalize_round_trip(rng):
    f = _random_poly(rng, 3, rng.randint(1, 6), 4)
    return denormalize(normalize(f)) == f and normalize(denormalize(f)) == f


def _congruence(rng):
    n = rng.randint(1, 5)
    a = _random_symmetric(rng, n)
    p = [[Fraction(rng.randint(-3, 3) + (10 if i == j else 0)) for j in range(n)] for i in range(n)]
    b = [[sum(p[k][i] * a[k][l] * p[l][j] for k in range(n) for l in range(n)) for j in range(n)] for i in range(n)]
    return signature(b) == signature(a)


def _module_axioms(rng):
    f = _random_poly(rng, 2, rng.randint(1, 4), 2, -3, 3)
    g = _random_poly(rng, 2, rng.randint(1, 4), 2, -3, 3)
    G = _random_poly(rng, 2, rng.randint(1, 5), 5, -3, 3)
    return contract(f * g, G) == contract(f, contract(g, G)) and contract(f + g, G) == contract(f, G) + contract(g, G)


PROPERTIES = {
    "divided difference squares to zero": _dd_squares,
    "braid relation": _braid,
    "normalize/denormalize round trip": _normalize_round_trip,
    "signature congruence invariance": _congruence,
    "contraction module axioms": _module_axioms,
}


def test_c13_property_suites():
    with criterion(13, f"five property suites, {CASES} seeded cases each"):
        for k, (name, prop) in enumerate(PROPERTIES.items()):
            rng = random.Random(SEED + k)
            failures = [c for c in range(CASES) if not prop(rng)]
            assert not failures, f"{name}: cases {failures[:5]} failed"


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
