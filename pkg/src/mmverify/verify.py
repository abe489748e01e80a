"""Registry of named checks over the Mayr-Meyer ideals at concrete (n, d, field).

Each check returns a :class:`CheckResult`; failures carry a witness (an
element that is missing, an unequal basis element, or an error diagnostic).
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import __version__
from .groebner import BudgetExceeded, CoefficientGrowthError, ExponentOverflow, get_limits
from .idealops import (
    Ideal,
    InconsistentResult,
    Primality,
    SaturationCapExceeded,
    contains,
    equal,
    first_not_contained,
    height,
    ideal_sum,
    intersect,
    intersect_all,
    principal,
    quotient,
    radical_member,
    saturate,
    split_colon,
    structural_primality,
)
from .mayr_meyer import (
    MMParams,
    PrimeLabel,
    RootsUnavailable,
    auto_prime,
    build_component,
    build_J,
    build_J_long,
    build_p,
    build_p_minus4,
    build_prime,
    certificate_terms,
    expected_height,
    lemma_intersection,
    min_intersection_summands,
    prime_labels,
    short_name,
    substitution_sigma,
    witness,
)
from .ring import GF, QQ, Field, RingContext, render_poly, substitute

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    id: str
    params: dict
    status: str
    witness: object = None
    elapsed_ms: float | None = None
    reason: str | None = None
    details: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def status_text(self) -> str:
        return f"skipped({self.reason})" if self.status == SKIPPED else self.status

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "params": self.params,
            "status": self.status_text(),
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 1) if timing and self.elapsed_ms is not None else None,
        }
        if self.details:
            out["details"] = self.details
        return out


class Instance:
    """Built ideals for one parameter set, cached; overrides replace built ideals.

    Override keys: ``J``, ``Jl``, ``prime:<label>``, ``comp:<label>``.
    """

    def __init__(self, params: MMParams, overrides: dict | None = None):
        self.params = params
        self.overrides = dict(overrides or {})
        self._cache: dict = {}

    @property
    def ring(self) -> RingContext:
        return self.params.ring

    def mutate(self, key: str, ideal: Ideal) -> "Instance":
        return Instance(self.params, {**self.overrides, key: ideal})

    def _get(self, key, build):
        if key in self.overrides:
            return self.overrides[key]
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def J(self) -> Ideal:
        return self._get("J", lambda: build_J(self.params))

    def J_long(self) -> Ideal:
        return self._get("Jl", lambda: build_J_long(self.params))

    def labels(self) -> list:
        return prime_labels(self.params)

    def prime(self, label: PrimeLabel) -> Ideal:
        return self._get(f"prime:{label}", lambda: build_prime(label, self.params))

    def component(self, label: PrimeLabel) -> Ideal:
        if label.tag not in ("Pm2", "Pm4"):
            key = f"comp:{label}"
            if key in self.overrides:
                return self.overrides[key]
            return self.prime(label)
        return self._get(f"comp:{label}", lambda: build_component(label, self.params))

    def p(self, r: int) -> Ideal:
        return self._get(f"p:{r}", lambda: build_p(r, self.params))

    def p_minus4(self) -> Ideal:
        return self._get("p4", lambda: build_p_minus4(self.params))

    def min_intersection(self) -> Ideal:
        def build():
            gens = []
            for name, I in min_intersection_summands(self.params):
                gens += list(self.J().gens if name == "J" else I.gens)
            return Ideal(self.ring, gens)
        return self._get("minint", build)


class _Fail(Exception):
    def __init__(self, witness, **details):
        super().__init__(str(witness))
        self.witness = witness
        self.details = details


def _r(p) -> str:
    return render_poly(p)


def _require(cond: bool, witness, **details):
    if not cond:
        raise _Fail(witness, **details)


def _require_equal(a: Ideal, b: Ideal, what_a: str, what_b: str):
    g = first_not_contained(a, b)
    if g is not None:
        raise _Fail({"missing_from": what_a, "element": _r(g)})
    g = first_not_contained(b, a)
    if g is not None:
        raise _Fail({"missing_from": what_b, "element": _r(g)})
    if not equal(a, b):  # cannot happen once mutual containment holds
        raise _Fail({"reduced_bases_differ": [what_a, what_b]})


# ---------------------------------------------------------------- checks


def check_substitution(inst: Instance) -> dict:
    P = inst.params
    sigma = substitution_sigma(P)
    short = inst.J().named()
    seen = set()
    for name, H in inst.J_long().named().items():
        img = substitute(H, sigma, inst.ring)
        r, i = name[1:].split("_")
        if r != "0" and i in ("1", "2"):
            _require(not img, {"generator": name, "image": _r(img), "expected": "0"})
            continue
        target = short_name(name)
        _require(target in short, {"generator": name, "image": _r(img), "expected": f"{target} (absent)"})
        _require(img == short[target], {"generator": name, "image": _r(img), "expected": _r(short[target])})
        seen.add(target)
    extra = sorted(set(short) - seen)
    _require(not extra, {"short_generators_without_preimage": extra})
    return {"generators": len(short)}


def check_witness_membership(inst: Instance) -> dict:
    J = inst.J()
    w = witness(inst.params)
    G = J.groebner()
    nf = G.normal_form(w)
    _require(not nf, {"element": _r(w), "normal_form": _r(nf)})
    return {"element": _r(w), "basis_size": len(G)}


def _certificate_payload(terms) -> list:
    return [{"coefficient": _r(t.coefficient), "generator": t.name,
             "coefficient_degree": t.coefficient.degree(),
             "term_degree": t.product.degree()} for t in terms]


def check_certificate_identity(inst: Instance) -> dict:
    P = inst.params
    terms = certificate_terms(P)
    w = witness(P)
    total = inst.ring.zero()
    for t in terms:
        total = total + t.product
    _require(total == w, {"difference": _r(total - w)})
    M = inst.min_intersection()
    G = M.groebner()
    for t in terms:
        _require(G.contains(t.product), {"term_outside_intersection": t.name, "product": _r(t.product)})
    return {"certificate": _certificate_payload(terms)}


def check_certificate_degree(inst: Instance) -> dict:
    P = inst.params
    terms = certificate_terms(P)
    term_deg = max(t.product.degree() for t in terms)
    coeff_deg = max(t.coefficient.degree() for t in terms)
    expected = 2 * P.d + P.n + 1
    info = {"max_term_degree": term_deg, "max_coefficient_degree": coeff_deg,
            "expected": expected, "growth_reference": f"d^(2^n) = {P.d ** (2 ** P.n)}"}
    _require(term_deg == expected, info)
    return info


def check_J_in_primes(inst: Instance) -> dict:
    J = inst.J()
    for L in inst.labels():
        g = first_not_contained(inst.prime(L), J)
        _require(g is None, {"prime": L.display(inst.params.field), "generator": _r(g) if g else None})
    return {"primes": len(inst.labels())}


def check_pr_intersection(inst: Instance) -> dict:
    labels = inst.labels()
    for r in range(1, inst.params.n + 1):
        I = intersect_all([inst.prime(L) for L in labels if L.tag == "Pr" and L.r == r])
        try:
            _require_equal(I, inst.p(r), "intersection of the P_r primes", f"p_{r}")
        except _Fail as e:
            e.witness["r"] = r
            raise
    return {"r_values": list(range(1, inst.params.n + 1))}


def check_p4_lambda(inst: Instance) -> dict:
    comps = [inst.component(PrimeLabel("Pm4", mask=m)) for m in range(16)]
    I = intersect_all(comps)
    _require_equal(I, inst.p_minus4(), "intersection over Lambda", "p_-4")
    return {"components": 16}


def check_p4_colon_stable(inst: Instance) -> dict:
    p4 = inst.p_minus4()
    c11 = inst.ring.var("c1_1")
    q1, q2 = quotient(p4, c11), quotient(p4, c11 ** 2)
    _require_equal(q1, q2, "p_-4 : c1_1", "p_-4 : c1_1^2")
    A, B = split_colon(p4, c11)
    _require_equal(intersect(A, B), p4, "(p_-4 : c1_1^k) meet (p_-4 + c1_1^k)", "p_-4")
    return {"colon_generators": len(q1.gens)}


def check_section2_lemma(inst: Instance) -> dict:
    n = inst.params.n
    acc = inst.p(1)
    for r in range(2, n + 1):
        acc = intersect(acc, inst.p(r))
        try:
            _require_equal(acc, lemma_intersection(r, inst.params), f"p_1..p_{r} intersection", "closed form")
        except _Fail as e:
            e.witness["r"] = r
            raise
    return {"r_values": list(range(2, n + 1))}


def check_min_intersection_theorem(inst: Instance) -> dict:
    comps = [inst.component(L) for L in inst.labels()]
    acc = comps[0]
    for C in comps[1:]:
        acc = intersect(acc, C)
    _require_equal(acc, inst.min_intersection(), "fold intersection of components", "closed form")
    return {"components": len(comps), "basis_size": len(acc.groebner())}


def check_heights(inst: Instance) -> dict:
    got = {}
    for L in inst.labels():
        h = height(inst.prime(L))
        exp = expected_height(L, inst.params)
        name = L.display(inst.params.field)
        _require(h == exp, {"prime": name, "height": h, "expected": exp})
        got[name] = h
    return {"heights": got}


def check_not_radical(inst: Instance) -> dict:
    J = inst.J()
    rad = intersect_all([inst.prime(L) for L in inst.labels()])
    _require(contains(rad, J), {"error": "J is not contained in the intersection of its minimal primes"})
    g = first_not_contained(J, Ideal(inst.ring, rad.groebner().elements))
    _require(g is not None, {"error": "J equals the intersection of its minimal primes"})
    return {"element_of_radical_not_in_J": _r(g)}


def check_prime_structure(inst: Instance) -> dict:
    for L in inst.labels():
        res = structural_primality(inst.prime(L), triangular=True)
        _require(res is Primality.PROVEN, {"prime": L.display(inst.params.field), "result": res.value})
    return {"primes": len(inst.labels())}


def check_component_radicals(inst: Instance) -> dict:
    J = inst.J()
    labels = [PrimeLabel("Pm2")] + [PrimeLabel("Pm4", mask=m) for m in range(16)]
    for L in labels:
        comp, prime = inst.component(L), inst.prime(L)
        name = str(L)
        g = first_not_contained(comp, J)
        _require(g is None, {"component": name, "generator_of_J_outside": _r(g) if g else None})
        g = first_not_contained(prime, comp)
        _require(g is None, {"component": name, "generator_outside_prime": _r(g) if g else None})
        for p in prime.gens:
            _require(radical_member(p, comp), {"component": name, "prime_generator_not_in_radical": _r(p)})
    return {"components": len(labels)}


def check_no_containments(inst: Instance) -> dict:
    labels = inst.labels()
    primes = [inst.prime(L) for L in labels]
    fld = inst.params.field
    for i, Pi in enumerate(primes):
        for j, Pj in enumerate(primes):
            if i != j:
                _require(not contains(Pi, Pj),
                         {"contained": labels[j].display(fld), "in": labels[i].display(fld)})
    return {"pairs": len(primes) * (len(primes) - 1)}


def _random_poly(ring: RingContext, rng: random.Random, terms: int = 3, deg: int = 3):
    out = ring.zero()
    for _ in range(rng.randint(1, terms)):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, deg)):
            exp[rng.randrange(ring.nvars)] += 1
        out = out + ring.monomial(exp, rng.choice([-3, -2, -1, 1, 2, 3]))
    return out


def _random_ideal(ring, rng, k=2):
    gens = [g for g in (_random_poly(ring, rng) for _ in range(rng.randint(1, k))) if g]
    return Ideal(ring, gens or [ring.var(ring.names[0])])


def check_fact_sandbox(inst: Instance, cases: int = 12) -> dict:
    P = inst.params
    rng = random.Random(f"sandbox-{P.n}-{P.d}-{P.field}")
    ring = RingContext(("x", "y", "z", "w"), P.field)
    x = ring.var("x")
    for k in range(cases):
        # sum-intersection law with I inside I''
        I2 = _random_ideal(ring, rng)
        I = Ideal(ring, [_random_poly(ring, rng, 2, 1) * g for g in I2.gens])
        I1 = _random_ideal(ring, rng)
        lhs = intersect(ideal_sum(I, I1), I2)
        rhs = ideal_sum(I, intersect(I1, I2))
        _require(equal(lhs, rhs), {"fact": "modular law", "case": k})
        # principal intersection equals x times the colon
        K = _random_ideal(ring, rng)
        lhs = intersect(principal(x), K)
        rhs = Ideal(ring, [x * g for g in quotient(K, x).gens])
        _require(equal(lhs, rhs), {"fact": "principal intersection", "case": k})
        # colon split reassembles
        _, e = saturate(K, x)
        xe = x ** e
        A = quotient(K, xe) if e else K
        _require(equal(intersect(A, ideal_sum(K, principal(xe))), K), {"fact": "colon split", "case": k})
        # a triangular change of variables over a prime stays prime, with height raised by one per variable
        q = _random_poly(ring, rng)
        q = sum((ring.monomial((0,) + m[1:], c) for m, c in q._d.items()), ring.zero())
        tri = Ideal(ring, [x - q, ring.var("y") - ring.var("z") ** 2])
        _require(structural_primality(tri, triangular=True) is Primality.PROVEN and height(tri) == 2,
                 {"fact": "triangular substitution", "case": k})
    return {"cases": cases}


@dataclass(frozen=True)
class CheckSpec:
    id: str
    func: Callable
    claim: str
    needs_roots: bool


REGISTRY = [
    CheckSpec("substitution", check_substitution,
              "long-ring generators map onto the short generators", False),
    CheckSpec("witness-membership", check_witness_membership,
              "the witness element lies in J", False),
    CheckSpec("certificate-identity", check_certificate_identity,
              "four-term combination expands to the witness inside the minimal-component intersection", False),
    CheckSpec("certificate-degree", check_certificate_degree,
              "certificate degree is 2d+n+1", False),
    CheckSpec("J-in-primes", check_J_in_primes, "J lies in every listed minimal prime", True),
    CheckSpec("pr-intersection", check_pr_intersection,
              "intersection over the roots of unity of P_r primes is p_r", True),
    CheckSpec("p4-lambda", check_p4_lambda, "p_-4 is the intersection of the 16 Lambda components", False),
    CheckSpec("p4-colon-stable", check_p4_colon_stable,
              "p_-4 : c1_1 = p_-4 : c1_1^2 and the colon split reassembles p_-4", False),
    CheckSpec("section2-lemma", check_section2_lemma,
              "closed form for p_1 meet ... meet p_r", False),
    CheckSpec("min-intersection-theorem", check_min_intersection_theorem,
              "fold of every minimal component matches its closed form", True),
    CheckSpec("heights", check_heights, "prime heights match the table", True),
    CheckSpec("not-radical", check_not_radical, "J differs from the intersection of its minimal primes", True),
    CheckSpec("prime-structure", check_prime_structure, "every listed prime has a structural primality proof", True),
    CheckSpec("component-radicals", check_component_radicals,
              "p_-2 and p_-4Lambda contain J and have the listed primes as radicals", False),
    CheckSpec("no-containments", check_no_containments, "no containments among the minimal primes", True),
    CheckSpec("fact-sandbox", check_fact_sandbox, "ideal identities on random small ideals", False),
]
CHECK_IDS = [c.id for c in REGISTRY]
_BY_ID = {c.id: c for c in REGISTRY}


def resolve_field(spec, d: int, needs_roots: bool) -> Field:
    """``auto`` picks the rationals unless roots are needed and missing there."""
    if isinstance(spec, Field):
        return spec
    if spec in (None, "auto"):
        if needs_roots and MMParams(2, d, QQ).roots is None:
            return GF(auto_prime(d))
        return QQ
    return Field.parse(spec)


def run_check(check_id: str, n: int = 2, d: int = 2, field="auto", instance: Instance | None = None,
              _instances: dict | None = None) -> CheckResult:
    spec = _BY_ID.get(check_id)
    if spec is None:
        raise KeyError(f"unknown check {check_id!r}; known: {', '.join(CHECK_IDS)}")
    if instance is None:
        fld = resolve_field(field, d, spec.needs_roots)
        key = (n, d, fld)
        if _instances is not None and key in _instances:
            instance = _instances[key]
        else:
            instance = Instance(MMParams(n, d, fld))
            if _instances is not None:
                _instances[key] = instance
    P = instance.params
    params = {"n": P.n, "d": P.d, "field": str(P.field)}
    details = {}
    if spec.needs_roots:
        roots = P.roots
        if roots is None:
            return CheckResult(check_id, params, SKIPPED, None, 0.0, "RootsUnavailable")
        if P.field.p:
            details["roots"] = roots
    t0 = time.perf_counter()
    try:
        info = spec.func(instance)
        status, wit = PASS, None
        details.update(info or {})
    except _Fail as e:
        status, wit = FAIL, e.witness
    except (BudgetExceeded, CoefficientGrowthError, ExponentOverflow, SaturationCapExceeded,
            InconsistentResult) as e:
        status, wit = FAIL, {"error": type(e).__name__, "message": str(e)}
    except RootsUnavailable:
        return CheckResult(check_id, params, SKIPPED, None, 0.0, "RootsUnavailable")
    elapsed = (time.perf_counter() - t0) * 1000
    return CheckResult(check_id, params, status, wit, elapsed, None, details)


def _run_one(args):
    cid, n, d, field = args
    return run_check(cid, n, d, field)


@dataclass
class Report:
    results: list
    environment: dict

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps([r.to_dict(timing) for r in self.results], indent=2, sort_keys=False)

    def summary(self) -> str:
        env = self.environment
        lines = [f"mmverify {env['version']}  n={env['n']} d={env['d']} field={env['field']} "
                 f"step_budget={env['step_budget']}"]
        for r in self.results:
            claim = _BY_ID[r.id].claim
            ms = f"{r.elapsed_ms:.0f} ms" if r.elapsed_ms is not None else ""
            lines.append(f"{r.status_text():<28} {r.id:<26} [{r.params['field']}] {ms:>10}  {claim}")
            if r.status == FAIL:
                lines.append(f"    witness: {json.dumps(r.witness)}")
        c = self.counts()
        lines.append(f"{c[PASS]} passed, {c[FAIL]} failed, {c[SKIPPED]} skipped")
        return "\n".join(lines)


def run_suite(n: int = 2, d: int = 2, field="auto", selection=None, jobs: int = 1) -> Report:
    """Run the selected checks (registry order) and collect a report."""
    if selection is None:
        ids = list(CHECK_IDS)
    else:
        wanted = set(selection)
        unknown = wanted - set(CHECK_IDS)
        if unknown:
            raise KeyError(f"unknown checks: {', '.join(sorted(unknown))}")
        ids = [c for c in CHECK_IDS if c in wanted]
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, [(cid, n, d, field) for cid in ids]))
    else:
        cache: dict = {}
        results = [run_check(cid, n, d, field, _instances=cache) for cid in ids]
    env = {"version": __version__, "n": n, "d": d, "field": str(field),
           "step_budget": get_limits().steps}
    return Report(results, env)
