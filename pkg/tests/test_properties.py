"""Randomized identities for ideal operations over small rings."""

from hypothesis import given, strategies as st

from mmverify.idealops import (
    Ideal,
    Primality,
    contains,
    equal,
    ideal_sum,
    intersect,
    member,
    principal,
    product,
    quotient,
    radical_member,
    saturate,
    split_colon,
    structural_primality,
)

from strategies import R3, R3_GF, nonzero_polys, polys, small_gens

x, y, z = R3.gens()


def ideals(ring=R3, max_gens=2):
    return small_gens(ring, max_gens=max_gens).map(lambda gs: Ideal(ring, gs))


small_polys = nonzero_polys(R3, max_terms=2, max_deg=2)


@given(A=ideals(), B=ideals(), f=polys(max_terms=2, max_deg=2), g=polys(max_terms=2, max_deg=2))
def test_intersect_member_coherence(A, B, f, g):
    K = intersect(A, B)
    assert contains(A, K) and contains(B, K)
    assert contains(K, product(A, B))
    for h in (f, f * A.gens[0] * B.gens[0], f * A.gens[0] + g * B.gens[0]):
        assert member(h, K) == (member(h, A) and member(h, B))


@given(A=ideals(R3_GF), B=ideals(R3_GF))
def test_intersect_over_gf(A, B):
    K = intersect(A, B)
    assert contains(A, K) and contains(B, K) and contains(K, product(A, B))


@given(I=ideals(), f=small_polys, g=polys(max_terms=2, max_deg=2))
def test_quotient_laws(I, f, g):
    Q = quotient(I, f)
    assert contains(Q, I)
    assert contains(I, Ideal(R3, [f * q for q in Q.gens]))
    assert member(g, Q) == member(f * g, I)


@given(I=ideals(), f=small_polys)
def test_saturation_laws(I, f):
    S, k = saturate(I, f)
    assert contains(S, I)
    assert equal(quotient(S, f), S)
    fk = f ** k
    assert equal(S, quotient(I, fk) if k else I)
    assert contains(S, quotient(I, f ** (k + 1)))


@given(I=ideals(), I1=ideals(), I2=ideals(), h=small_polys)
def test_modular_law(I, I1, I2, h):
    # shrink I into I2 by multiplying with generators of I2
    inner = Ideal(R3, [h * g for g in I2.gens] + [a * I2.gens[0] for a in I.gens])
    assert equal(intersect(ideal_sum(inner, I1), I2), ideal_sum(inner, intersect(I1, I2)))


@given(I=ideals(), f=small_polys)
def test_principal_intersection(I, f):
    lhs = intersect(principal(f), I)
    rhs = Ideal(R3, [f * q for q in quotient(I, f).gens])
    assert equal(lhs, rhs)


@given(I=ideals(), v=st.sampled_from([x, y, z, x * y, x + y]))
def test_colon_split_reassembles(I, v):
    A, B = split_colon(I, v)
    assert equal(intersect(A, B), I)
    assert contains(A, I) and contains(B, I)


R4 = R3.extend(["w"], front=False)
lin_or_quad = st.sampled_from(["x", "y", "x - 2*y", "z - x^2*y", "x*y - z*w", "x*y", "y^2", "x - y*z + w^2",
                               "z*w - 1", "x + y + z + w"])


@given(texts=st.lists(lin_or_quad, min_size=1, max_size=3, unique=True),
       f=polys(R4, max_terms=2, max_deg=2), g=polys(R4, max_terms=2, max_deg=2))
def test_structural_primality_is_sound(texts, f, g):
    P = Ideal(R4, [R4.parse(t) for t in texts])
    res = structural_primality(P, triangular=True)
    if res is Primality.PROVEN:
        assert not P.is_unit()
        if member(f * g, P):
            assert member(f, P) or member(g, P)
        assert radical_member(f, P) == member(f, P)
