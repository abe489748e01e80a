from fractions import Fraction

import pytest
from hypothesis import given

from mmverify.mayr_meyer import MMParams, build_J
from mmverify.ring import (
    GF,
    GREVLEX,
    LEX,
    QQ,
    Field,
    ParseError,
    RingContext,
    RingError,
    UnmappedVariableError,
    block_order,
    make_mm_ring,
    mono_mul,
    parse_poly,
    render_poly,
    substitute,
)

from strategies import R3, R3_GF, exponents, polys, rationals


def test_mm_ring_sizes():
    assert make_mm_ring(2, 2).nvars == 18
    assert make_mm_ring(2, 2, long=True).nvars == 22
    assert make_mm_ring(3, 2).names[:4] == ("s", "f", "b0_1", "b0_2")
    with pytest.raises(RingError):
        make_mm_ring(1, 2)
    with pytest.raises(RingError):
        make_mm_ring(2, 1)


def test_field_normalization():
    assert QQ(Fraction(4, 2)) == 2 and type(QQ(Fraction(4, 2))) is int
    assert QQ(Fraction(6, 4)) == Fraction(3, 2)
    F = GF(7)
    assert F(-1) == 6 and F(Fraction(1, 2)) == 4
    assert Field.parse("gf:13") == GF(13) and Field.parse("q") == QQ
    with pytest.raises(RingError):
        GF(15)
    with pytest.raises(RingError):
        GF(2 ** 31 + 11)


def test_compare_examples():
    assert GREVLEX.compare((2, 1), (1, 2)) == 1
    assert LEX.compare((1, 2), (1, 2)) == 0
    assert block_order(1).compare((1, 0), (0, 100)) == 1
    with pytest.raises(RingError):
        GREVLEX.compare((1,), (1, 0))


def test_arith_examples():
    R = make_mm_ring(2, 2)
    p = R.parse("s - f*b0_1^2")
    assert p + (-p) == R.zero()
    assert p * R.var("c0_1") == build_J(MMParams(2, 2)).named()["h0_1"]
    assert p * R.one() == p


def test_substitute_examples():
    R = make_mm_ring(2, 2)
    p = R.parse("s*c0_1 - f")
    ident = {n: R.var(n) for n in R.names}
    assert substitute(p, ident) == p
    with pytest.raises(UnmappedVariableError):
        substitute(p, {"s": R.var("s")})


def test_parse_render_examples():
    R = make_mm_ring(2, 2)
    p = parse_poly("s - f*b0_1^2", R)
    assert p == R.var("s") - R.var("f") * R.var("b0_1") ** 2
    assert render_poly(R.zero()) == "0"
    h16 = build_J(MMParams(2, 2)).named()["h1_6"]
    assert parse_poly(render_poly(h16), R) == h16
    assert parse_poly("3/6*s", R) == R.var("s").scale(Fraction(1, 2))
    with pytest.raises(ParseError) as e:
        parse_poly("s + * f", R)
    assert e.value.position >= 0
    with pytest.raises(ValueError):
        parse_poly("s + q", R)


def test_render_terms_decreasing_grevlex():
    R = RingContext(("x", "y", "z"))
    p = R.parse("z + x^2 + y*z + 1 + x*y")
    assert render_poly(p) == "x^2 + x*y + y*z + z + 1"


# -- properties


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == R3.zero()


@given(polys(R3_GF), polys(R3_GF))
def test_ring_axioms_gf(a, b):
    assert (a + b) * (a - b) == a * a - b * b
    assert all(0 <= c < 7 for _, c in a.terms)


@given(polys(coeffs=rationals()))
def test_round_trip(p):
    assert parse_poly(render_poly(p), R3) == p


@pytest.mark.parametrize("order", [GREVLEX, LEX, block_order(1), block_order(2)], ids=str)
@given(a=exponents(3), b=exponents(3), c=exponents(3))
def test_order_axioms(order, a, b, c):
    ab, ba = order.compare(a, b), order.compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    if order.compare(a, b) > 0 and order.compare(b, c) > 0:
        assert order.compare(a, c) > 0
    assert order.compare(mono_mul(a, c), mono_mul(b, c)) == ab
    assert order.compare(a, (0, 0, 0)) >= 0


@given(m1=exponents(4), m2=exponents(3, 6))
def test_block_elimination(m1, m2):
    if m1[0] == 0:
        m1 = (1,) + m1[1:]
    assert block_order(1).compare(m1, (0,) + m2) == 1
