import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from mmverify.groebner import (
    BudgetExceeded,
    Limits,
    NotMember,
    buchberger,
    groebner,
    lift_certificate,
    reduce,
    reduce_basis,
)
from mmverify.mayr_meyer import MMParams, build_J, witness
from mmverify.ring import GREVLEX, LEX, Polynomial, RingContext, mono_div, mono_lcm

from strategies import R3, polys, small_gens

XY = RingContext(("x", "y"))
x, y = XY.gens()


def test_reduce_examples():
    res = reduce(x ** 2 * y, [x * y - 1], LEX)
    assert res.remainder == x and res.cofactors == [x]
    g = x ** 2 + y
    res = reduce(g, [g])
    assert not res.remainder and res.cofactors == [XY.one()]
    res = reduce(x, [])
    assert res.remainder == x and res.cofactors == []


def test_reduce_h15_by_J():
    J = build_J(MMParams(2, 2))
    assert not reduce(J.named()["h1_5"], list(J.gens)).remainder


def test_buchberger_examples():
    assert groebner([x]).elements == (x,)
    G = groebner([x * y - 1, y ** 2 - 1], LEX)
    assert set(G.elements) == {x - y, y ** 2 - 1}
    J = build_J(MMParams(2, 2))
    assert buchberger(list(J.gens)).contains(witness(MMParams(2, 2)))


def test_reduce_basis_examples():
    G = reduce_basis(buchberger([x, 2 * x]))
    assert G.elements == (x,)
    G = reduce_basis(buchberger([x + y, y]))
    assert set(G.elements) == {x, y}


def test_reduced_basis_unique_for_J_permutation():
    J = build_J(MMParams(2, 2))
    gens = list(J.gens)
    rng = random.Random(5)
    rng.shuffle(gens)
    assert groebner(gens).elements == groebner(list(J.gens)).elements


def test_lift_certificate_examples():
    g1, g2 = x ** 2 - y, x * y + 1
    c = lift_certificate(g1, [g1, g2])
    assert c.cofactors == (XY.one(), XY.zero()) and c.max_cofactor_degree == 0
    P = MMParams(2, 2)
    J = build_J(P)
    f = J.named()["h0_1"] * P.ring.var("c1_1")
    c = lift_certificate(f, list(J.gens))
    assert c.verify()
    c = lift_certificate(witness(P), list(J.gens))
    assert c.verify()
    with pytest.raises(NotMember):
        lift_certificate(P.ring.var("s"), list(J.gens))


def test_budget_exhaustion():
    J = build_J(MMParams(2, 2))
    with pytest.raises(BudgetExceeded):
        groebner(list(J.gens), limits=Limits(steps=50))


def _to_sympy(g, xs):
    return sum(c * sympy.prod([v ** e for v, e in zip(xs, m)]) for m, c in g.as_dict().items())


def _from_sympy(expr, xs):
    d = sympy.Poly(expr, *xs, domain="QQ").as_dict()
    return Polynomial(R3, [(m, Fraction(int(c.p), int(c.q))) for m, c in d.items()])


@pytest.mark.parametrize("order,name", [(GREVLEX, "grevlex"), (LEX, "lex")])
@given(gens=small_gens(R3, max_gens=3, max_deg=3, max_terms=3))
def test_matches_sympy(order, name, gens):
    xs = sympy.symbols(R3.names)
    S = sympy.groebner([_to_sympy(g, xs) for g in gens], *xs, order=name, domain="QQ")
    theirs = {_from_sympy(e, xs).monic(order) for e in S.exprs}
    theirs.discard(R3.zero())
    assert set(groebner(gens, order).elements) == theirs


@given(f=polys(), divs=small_gens(R3))
def test_division_identity(f, divs):
    res = reduce(f, divs)
    total = res.remainder
    for q, g in zip(res.cofactors, divs):
        total = total + q * g
    assert total == f
    leads = [g.lm() for g in divs]
    for m in res.remainder.as_dict():
        assert not any(all(a <= b for a, b in zip(l, m)) for l in leads)
    again = reduce(res.remainder, divs)
    assert again.remainder == res.remainder


@given(gens=small_gens(R3))
def test_gb_properties(gens):
    G = groebner(gens)
    assert all(G.contains(g) for g in gens)
    els = G.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            a, b = els[i], els[j]
            L = mono_lcm(a.lm(), b.lm())
            s = a.mul_monomial(mono_div(L, a.lm())) - b.mul_monomial(mono_div(L, b.lm()))
            assert G.contains(s)
    shuffled = list(reversed(gens)) + gens[:1]
    assert groebner(shuffled).elements == els


@given(gens=small_gens(R3), f=polys(max_deg=2, max_terms=3))
def test_membership_matches_certificate(gens, f):
    G = groebner(gens, lift=True)
    if G.contains(f):
        c = lift_certificate(f, gens, gb=G)
        assert c.expand() == f
    else:
        with pytest.raises(NotMember):
            lift_certificate(f, gens, gb=G)


@given(gens=small_gens(R3))
def test_lift_rows_express_elements(gens):
    G = groebner(gens, lift=True)
    for el, row in zip(G.elements, G.lift):
        total = R3.zero()
        for q, g in zip(row, gens):
            total = total + q * g
        assert total == el
