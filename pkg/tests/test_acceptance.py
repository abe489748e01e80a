"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import time

import pytest

import test_groebner as tg
import test_properties as tp
from mmverify.idealops import equal, height, intersect, intersect_all, member, quotient, split_colon
from mmverify.mayr_meyer import (
    MMParams,
    PrimeLabel,
    build_J,
    build_J_long,
    build_component,
    build_p,
    build_p_minus4,
    build_prime,
    certificate_terms,
    expected_height,
    prime_labels,
    substitution_sigma,
    short_name,
    witness,
)
from mmverify.ring import GF, QQ, substitute
from mmverify.verify import Instance, run_check


def test_01_counts_and_degrees(report_line):
    t0 = time.perf_counter()
    bad_counts, bad_degrees = [], []
    for n in range(2, 6):
        for d in range(2, 5):
            P = MMParams(n, d)
            J, Jl = build_J(P), build_J_long(P)
            # the generator lists give 8n+1 and 10n+1 (17 and 21 at n=2)
            if len(J.gens) != 8 * n + 1 or len(Jl.gens) != 10 * n + 1:
                bad_counts.append((n, d, len(J.gens), len(Jl.gens)))
            claim = max(n + 2, d + 2)
            if J.max_degree() != claim:
                bad_degrees.append(f"(n={n},d={d}: {J.max_degree()} vs {claim})")
    elapsed = time.perf_counter() - t0
    ok = not bad_counts and not bad_degrees and elapsed < 1.0
    report_line(1, ok, f"counts ok={not bad_counts}, degree mismatches {' '.join(bad_degrees) or 'none'}, "
                       f"{elapsed:.2f}s")
    assert not bad_counts, bad_counts
    assert elapsed < 1.0
    assert not bad_degrees, "max generator degree of J differs from max{n+2, d+2}: " + " ".join(bad_degrees)


def test_02_substitution(report_line):
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        for d in (2, 3):
            P = MMParams(n, d)
            sigma = substitution_sigma(P)
            short = build_J(P).named()
            for name, H in build_J_long(P).named().items():
                img = substitute(H, sigma, P.ring)
                r, i = name[1:].split("_")
                target = None if r != "0" and i in ("1", "2") else short[short_name(name)]
                if (target is None and img) or (target is not None and img != target):
                    bad.append((n, d, name))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5
    report_line(2, ok, f"sigma(H) = h for n=2..4, d=2..3, {elapsed:.2f}s")
    assert not bad and elapsed < 5


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2)])
def test_03_witness_membership(report_line, n, d):
    P = MMParams(n, d)
    t0 = time.perf_counter()
    G = build_J(P).groebner()
    ok = not G.normal_form(witness(P))
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60
    report_line(3, ok, f"w in J({n},{d}), basis {len(G)} elements, {elapsed:.2f}s")
    assert ok


def test_04_certificate(report_line):
    P = MMParams(2, 2)
    t0 = time.perf_counter()
    terms = certificate_terms(P)
    total = P.ring.zero()
    for t in terms:
        total = total + t.product
    M = Instance(P).min_intersection()
    inside = all(member(t.product, M) for t in terms)
    term_deg = max(t.product.degree() for t in terms)
    elapsed = time.perf_counter() - t0
    ok = total == witness(P) and inside and term_deg == 2 * P.d + P.n + 1 == 7 and elapsed < 10
    report_line(4, ok, f"sum = w: {total == witness(P)}, terms in intersection: {inside}, "
                       f"max term degree {term_deg}, {elapsed:.2f}s")
    assert ok


def test_05_pr_intersection(report_line):
    t0 = time.perf_counter()
    results = []
    P = MMParams(2, 2)
    for r in (1, 2):
        primes = [build_prime(L, P) for L in prime_labels(P) if L.tag == "Pr" and L.r == r]
        results.append(len(primes) == 4 and equal(intersect_all(primes), build_p(r, P)))
    P13 = MMParams(2, 3, GF(13))
    primes = [build_prime(L, P13) for L in prime_labels(P13) if L.tag == "Pr" and L.r == 1]
    results.append(len(primes) == 9 and equal(intersect_all(primes), build_p(1, P13)))
    elapsed = time.perf_counter() - t0
    ok = all(results) and elapsed < 300
    report_line(5, ok, f"Q r=1,2 and GF(13) d=3 r=1: {results}, {elapsed:.2f}s")
    assert ok


def test_06_p_minus4(report_line):
    P = MMParams(2, 2)
    R = P.ring
    t0 = time.perf_counter()
    p4 = build_p_minus4(P)
    c11 = R.var("c1_1")
    stable = equal(quotient(p4, c11), quotient(p4, c11 ** 2))
    A, B = split_colon(p4, c11)
    split = equal(intersect(A, B), p4)
    comps = [build_component(PrimeLabel("Pm4", mask=m), P) for m in range(16)]
    lam = equal(intersect_all(comps), p4)
    elapsed = time.perf_counter() - t0
    ok = stable and split and lam and elapsed < 300
    report_line(6, ok, f"colon stable {stable}, split {split}, 16 Lambda components {lam}, {elapsed:.2f}s")
    assert ok


@pytest.mark.extended
@pytest.mark.parametrize("n", [2, 3])
def test_07_lemma(report_line, n):
    res = run_check("section2-lemma", n, 2, QQ)
    ok = res.passed
    report_line(7, ok, f"n={n}: r={res.details.get('r_values')} {res.status} {res.witness or ''}")
    assert ok


@pytest.mark.extended
@pytest.mark.parametrize("n", [2, 3])
def test_08_theorem(report_line, n):
    t0 = time.perf_counter()
    res = run_check("min-intersection-theorem", n, 2, QQ)
    elapsed = time.perf_counter() - t0
    ok = res.passed and elapsed < 1800
    report_line(8, ok, f"n={n}: fold of {res.details.get('components')} components {res.status}, {elapsed:.2f}s")
    assert ok, res.witness


def test_09_heights(report_line):
    P = MMParams(2, 2)
    t0 = time.perf_counter()
    labels = prime_labels(P)
    table = {"P0": 4, "P1": 11, "P2": 14, "Pm1": 2, "Pm2": 6, "Pm3": 6, "Pm4": 10}
    bad = []
    for L in labels:
        key = f"P{L.r}" if L.tag == "Pr" else L.tag
        h = height(build_prime(L, P))
        if h != table[key] or h != expected_height(L, P):
            bad.append((str(L), h))
    elapsed = time.perf_counter() - t0
    ok = not bad and len(labels) == 28 and elapsed < 120
    report_line(9, ok, f"{len(labels)} labels, mismatches {bad or 'none'}, {elapsed:.2f}s")
    assert ok


def test_10_not_radical(report_line):
    t0 = time.perf_counter()
    res = run_check("not-radical", 2, 2, QQ)
    elapsed = time.perf_counter() - t0
    wit = res.details.get("element_of_radical_not_in_J")
    ok = res.passed and wit is not None and elapsed < 600
    report_line(10, ok, f"J(2,2) differs from the intersection of its minimal primes, witness {wit}")
    assert ok


PROPERTY_SUITES = [
    tg.test_division_identity,
    tg.test_gb_properties,
    tg.test_membership_matches_certificate,
    tp.test_intersect_member_coherence,
    tp.test_quotient_laws,
    tp.test_saturation_laws,
    tp.test_modular_law,
    tp.test_principal_intersection,
    tp.test_colon_split_reassembles,
]


def test_11_property_suites(report_line):
    t0 = time.perf_counter()
    failed = []
    for prop in PROPERTY_SUITES:
        try:
            prop()
        except Exception as e:  # report every suite, then fail
            failed.append(f"{prop.__name__}: {type(e).__name__}")
    elapsed = time.perf_counter() - t0
    ok = not failed and elapsed < 300
    report_line(11, ok, f"{len(PROPERTY_SUITES)} suites x 200 cases, failures {failed or 'none'}, {elapsed:.1f}s")
    assert ok


def test_12_mutation(report_line):
    P = MMParams(2, 2)
    base = Instance(P)
    flipped = []
    comp = build_component(PrimeLabel("Pm2"), P)
    for i in range(len(comp.gens)):
        res = run_check("component-radicals", instance=base.mutate("comp:Pm2", comp.without(i)))
        flipped.append(res.status == "fail" and res.witness is not None)
    J = build_J(P)
    mutJ = base.mutate("J", J.without(J.names.index("h1_5")))
    res_h = [run_check(c, instance=mutJ) for c in ("substitution", "witness-membership")]
    h15 = any(r.status == "fail" and r.witness for r in res_h)
    ok = all(flipped) and h15
    report_line(12, ok, f"p_-2 drops flagged {sum(flipped)}/{len(flipped)}, h1_5 drop flagged {h15}")
    assert ok
