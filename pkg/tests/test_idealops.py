import pytest

from mmverify.idealops import (
    Ideal,
    Primality,
    contains,
    dimension,
    eliminate,
    equal,
    height,
    ideal_sum,
    intersect,
    intersect_all,
    lift_certificate,
    member,
    product,
    quotient,
    radical_member,
    saturate,
    split_colon,
    structural_primality,
)
from mmverify.mayr_meyer import (
    MMParams,
    build_J,
    build_component,
    build_p,
    build_p_minus4,
    build_prime,
    parse_label,
    prime_labels,
)
from mmverify.ring import RingContext, RingError

P22 = MMParams(2, 2)
R = P22.ring
XYT = RingContext(("t", "x", "y"))
t, x, y = XYT.gens()


def I(*gens):
    return Ideal(XYT, gens)


def test_member_examples():
    J = build_J(P22)
    assert member(R.zero(), J)
    assert member(R.parse("s*c0_1*(c1_1 - c1_4)"), J)
    assert not member(R.var("s"), J)


def test_contains_equal_examples():
    J = build_J(P22)
    assert contains(J, J)
    assert contains(build_p(1, P22), J)
    primes = [build_prime(lab, P22) for lab in prime_labels(P22)]
    assert not equal(J, intersect_all(primes))


def test_ring_mismatch():
    with pytest.raises(RingError):
        contains(build_J(P22), Ideal(XYT, [x]))


def test_sum_product_examples():
    A = I(x * y + 1, y ** 2)
    assert equal(ideal_sum(A, Ideal(XYT)), A)
    assert equal(product(I(x), I(y)), I(x * y))


def test_intersect_examples():
    assert equal(intersect(I(x), I(y)), I(x * y))
    A = I(x ** 2 - y, x * y)
    assert equal(intersect(A, A), A)


def test_quotient_examples():
    assert equal(quotient(I(x * y), x), I(y))
    A = I(x ** 2 - y, x * y)
    assert quotient(A, XYT.one()) is A
    with pytest.raises(ZeroDivisionError):
        quotient(A, XYT.zero())


def test_saturate_examples():
    Q, k = saturate(I(x ** 2 * y), x)
    assert equal(Q, I(y)) and k == 2
    A = I(x ** 2 - y)
    Q, k = saturate(A, XYT.one())
    assert equal(Q, A) and k == 0
    _, k = saturate(build_p_minus4(P22), R.var("c1_1"))
    assert k == 1


def test_split_colon_examples():
    A, B = split_colon(I(x ** 2 * y), x)
    assert equal(A, I(y)) and equal(B, I(x ** 2 * y, x ** 2))
    C = I(x ** 2 - y)
    A, B = split_colon(C, XYT.one())
    assert equal(A, C) and B.is_unit()
    p4 = build_p_minus4(P22)
    A, B = split_colon(p4, R.var("c1_1"))
    assert equal(intersect(A, B), p4)


def test_eliminate_examples():
    assert equal(eliminate(I(t * x - 1, t * y), ["t"]), I(y))
    A = I(x ** 2 - y)
    assert eliminate(A, []) is A
    assert eliminate(I(t - x ** 2), ["t"]).is_zero()


def test_dimension_examples():
    assert dimension(Ideal(R)) == 18
    assert height(build_prime(parse_label("P0", P22), P22)) == 4
    assert height(build_prime(parse_label("Pm4{1,2}", P22), P22)) == 10
    assert dimension(I(x, y)) == 1
    with pytest.raises(ValueError):
        dimension(I(XYT.one()))


def test_radical_member_examples():
    assert radical_member(x, I(x ** 2))
    assert not member(x, I(x ** 2))
    assert radical_member(R.var("b0_3"), build_component(parse_label("Pm2", P22), P22))
    assert not radical_member(R.var("b0_3"), build_J(P22))


def test_structural_primality_examples():
    assert structural_primality(Ideal(R, [R.var("s"), R.var("f")])) is Primality.PROVEN
    assert structural_primality(build_prime(parse_label("Pm3", P22), P22)) is Primality.PROVEN
    assert structural_primality(I(x ** 2 - y)) is Primality.UNKNOWN
    assert structural_primality(I(x * y)) is Primality.UNKNOWN
    assert structural_primality(I(x ** 2)) is Primality.UNKNOWN


def test_structural_triangular_mode():
    tri = I(x - y ** 2, t)
    assert structural_primality(tri) is Primality.UNKNOWN
    assert structural_primality(tri, triangular=True) is Primality.PROVEN
    # x - y^2 x is not solvable for x: x occurs in two terms
    assert structural_primality(I(x - x * y ** 2), triangular=True) is Primality.UNKNOWN


def test_lift_certificate_over_ideal():
    J = build_J(P22)
    f = J.named()["h0_1"] * R.var("c1_1")
    c = lift_certificate(f, J)
    assert c.expand() == f and c.generators == J.gens


def test_cache_consistency():
    J = build_J(P22)
    J.groebner()
    assert J.check_cache()


def test_operators():
    A, B = I(x), I(y)
    assert equal(A & B, I(x * y))
    assert equal(A * B, I(x * y))
    assert equal(A + B, I(x, y))
    assert x * y in A
