"""Ideal-level algebra on top of the Gröbner engine.

Ideals cache their reduced Gröbner bases per monomial order. Equality is
decided by comparing reduced grevlex bases; intersections, quotients and
eliminations go through block elimination orders.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

from .groebner import (
    Certificate,
    GroebnerBasis,
    Limits,
    NotMember,
    groebner,
    lift_certificate as _lift,
    reduce,
)
from .ring import GREVLEX, MonomialOrder, Polynomial, RingContext, RingError, block_order

SATURATION_CAP = 50


class SaturationCapExceeded(RuntimeError):
    pass


class InconsistentResult(AssertionError):
    """An internal cross-check between two routes disagreed."""


class Primality(str, Enum):
    PROVEN = "proven"
    UNKNOWN = "unknown"


class Ideal:
    """Finitely generated ideal; zero generators are dropped."""

    def __init__(self, ring: RingContext, gens: Iterable[Polynomial] = (), names: Sequence[str] | None = None):
        gens = list(gens)
        if names is not None and len(names) != len(gens):
            raise ValueError("one name per generator")
        kept, kept_names = [], []
        for i, g in enumerate(gens):
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring is not ring and g.ring != ring:
                raise RingError("generator from a different ring")
            if g:
                kept.append(g)
                kept_names.append(names[i] if names is not None else None)
        self.ring = ring
        self.gens = tuple(kept)
        self.names = tuple(kept_names) if names is not None else None
        self._gb: dict = {}
        self._lifted: GroebnerBasis | None = None

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {self.ring.nvars} variables)"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, f):
        return member(f, self)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def named(self) -> dict:
        if self.names is None:
            return {str(i): g for i, g in enumerate(self.gens)}
        return dict(zip(self.names, self.gens))

    def without(self, index: int) -> "Ideal":
        """Copy with one generator dropped (used for mutation tests)."""
        gens = self.gens[:index] + self.gens[index + 1:]
        names = None if self.names is None else self.names[:index] + self.names[index + 1:]
        return Ideal(self.ring, gens, names)

    def groebner(self, order: MonomialOrder = GREVLEX, limits: Limits | None = None) -> GroebnerBasis:
        G = self._gb.get(order)
        if G is None:
            if not self.gens:
                G = GroebnerBasis(self.ring, order, (), reduced=True)
            else:
                G = groebner(self.gens, order, limits=limits, ring=self.ring)
            self._gb[order] = G
        return G

    def basis(self) -> tuple:
        """Cached reduced grevlex basis if present, else the generators."""
        G = self._gb.get(GREVLEX)
        return G.elements if G is not None else self.gens

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.gens):
            return True
        return self.groebner().is_unit()

    def max_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=-1)

    def check_cache(self) -> bool:
        """Every generator reduces to zero against each cached basis and vice versa."""
        for G in self._gb.values():
            if not all(G.contains(g) for g in self.gens):
                return False
            mine = groebner(self.gens, G.order, ring=self.ring) if self.gens else G
            if not all(mine.contains(g) for g in G.elements):
                return False
        return True


def _same(I: Ideal, J: Ideal):
    if I.ring is not J.ring and I.ring != J.ring:
        raise RingError("ideals belong to different rings")


def principal(f: Polynomial) -> Ideal:
    return Ideal(f.ring, [f])


# ---------------------------------------------------------------- membership


def member(f: Polynomial, I: Ideal) -> bool:
    if f.ring is not I.ring and f.ring != I.ring:
        raise RingError("polynomial and ideal belong to different rings")
    if not f:
        return True
    return I.groebner().contains(f)


def contains(I: Ideal, J: Ideal) -> bool:
    """True when J is a subset of I."""
    _same(I, J)
    G = I.groebner()
    return all(G.contains(g) for g in J.gens)


def first_not_contained(I: Ideal, J: Ideal):
    """A generator of J outside I, or None."""
    _same(I, J)
    G = I.groebner()
    for g in J.gens:
        if not G.contains(g):
            return g
    return None


def equal(I: Ideal, J: Ideal) -> bool:
    _same(I, J)
    return I.groebner().elements == J.groebner().elements


def lift_certificate(f: Polynomial, I: Ideal) -> Certificate:
    """Certificate for ``f`` over the original generators of ``I``; raises NotMember."""
    if not member(f, I):
        raise NotMember("polynomial is not in the ideal")
    cert = _lift(f, I.gens, gb=I._lifted)
    return cert


# ---------------------------------------------------------------- constructions


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    seen = set()
    gens = []
    for a in I.gens:
        for b in J.gens:
            g = a * b
            if g not in seen:
                seen.add(g)
                gens.append(g)
    return Ideal(I.ring, gens)


def product_all(ideals: Sequence[Ideal], ring: RingContext) -> Ideal:
    out = Ideal(ring, [ring.one()])
    for I in ideals:
        out = product(out, I)
    return out


def _embed(p: Polynomial, ext: RingContext, k: int = 1) -> Polynomial:
    pad = (0,) * k
    return Polynomial._raw(ext, {pad + m: c for m, c in p._d.items()})


def _strip(p: Polynomial, ring: RingContext, k: int = 1) -> Polynomial:
    return Polynomial._raw(ring, {m[k:]: c for m, c in p._d.items()})


def _eliminated_result(ring: RingContext, ext: RingContext, G: GroebnerBasis, k: int) -> Ideal:
    kept = [g for g in G.elements if all(not any(m[:k]) for m in g._d)]
    gens = [_strip(g, ring, k) for g in kept]
    out = Ideal(ring, gens)
    # the t-free part of a reduced block basis is the reduced grevlex basis of the elimination ideal
    out._gb[GREVLEX] = GroebnerBasis(ring, GREVLEX, tuple(gens), reduced=True)
    return out


def intersect(I: Ideal, J: Ideal, limits: Limits | None = None) -> Ideal:
    """I ∩ J as (t·I + (1−t)·J) ∩ R under a block order eliminating t."""
    _same(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    if any(g.is_constant() for g in I.gens):
        return J
    if any(g.is_constant() for g in J.gens):
        return I
    t = ring.fresh_name("t")
    ext = ring.extend([t])
    tv = ext.var(t)
    one_minus_t = ext.one() - tv
    gens = [tv * _embed(g, ext) for g in I.basis()]
    gens += [one_minus_t * _embed(g, ext) for g in J.basis()]
    G = groebner(gens, block_order(1), limits=limits, ring=ext)
    return _eliminated_result(ring, ext, G, 1)


def intersect_all(ideals: Sequence[Ideal], limits: Limits | None = None) -> Ideal:
    """Left fold of pairwise intersections, smallest generator counts first."""
    if not ideals:
        raise ValueError("need at least one ideal")
    todo = sorted(ideals, key=lambda I: len(I.gens))
    acc = todo[0]
    for I in todo[1:]:
        acc = intersect(acc, I, limits)
    return acc


def _exact_div(g: Polynomial, f: Polynomial) -> Polynomial:
    res = reduce(g, [f])
    if res.remainder:
        raise InconsistentResult("colon generator not divisible by the divisor")
    return res.cofactors[0]


def quotient(I: Ideal, f: Polynomial, limits: Limits | None = None) -> Ideal:
    """I : f, through (I ∩ (f)) / f."""
    if not f:
        raise ZeroDivisionError("quotient by the zero polynomial")
    if f.ring is not I.ring and f.ring != I.ring:
        raise RingError("polynomial and ideal belong to different rings")
    if f.is_constant():
        return I
    K = intersect(I, principal(f), limits)
    return Ideal(I.ring, [_exact_div(g, f) for g in K.gens])


def saturate(I: Ideal, f: Polynomial, cap: int = SATURATION_CAP, cross_check: bool = True,
             limits: Limits | None = None):
    """``(I : f^∞, k)`` with k the least exponent where I : f^k = I : f^(k+1)."""
    if not f:
        raise ZeroDivisionError("saturation by the zero polynomial")
    Q, k = I, 0
    while True:
        nxt = quotient(Q, f, limits)
        if equal(nxt, Q):
            break
        Q, k = nxt, k + 1
        if k > cap:
            raise SaturationCapExceeded(f"saturation did not stabilize within {cap} steps")
    if cross_check and not f.is_constant():
        ring = I.ring
        u = ring.fresh_name("u")
        ext = ring.extend([u])
        gens = [_embed(g, ext) for g in I.basis()] + [ext.one() - ext.var(u) * _embed(f, ext)]
        G = groebner(gens, block_order(1), limits=limits, ring=ext)
        single = _eliminated_result(ring, ext, G, 1)
        if not equal(single, Q):
            raise InconsistentResult("iterated and single-shot saturation disagree")
    return Q, k


def split_colon(I: Ideal, x: Polynomial, limits: Limits | None = None):
    """``(I : x^k, I + (x^k))`` whose intersection is I (checked)."""
    _, k = saturate(I, x, limits=limits)
    xk = x ** k
    A = quotient(I, xk, limits) if k else I
    B = ideal_sum(I, principal(xk))
    if not equal(intersect(A, B, limits), I):
        raise InconsistentResult("colon split does not reassemble the ideal")
    return A, B


def eliminate(I: Ideal, names: Iterable[str], limits: Limits | None = None) -> Ideal:
    """I ∩ k[remaining variables], as an ideal of the same ring."""
    ring = I.ring
    elim = sorted({ring.index(n) for n in names})
    if not elim or I.is_zero():
        return I
    rest = [i for i in range(ring.nvars) if i not in set(elim)]
    if not rest:
        return Ideal(ring, [ring.one()]) if I.is_unit() else Ideal(ring)
    perm = elim + rest
    pr = RingContext(tuple(ring.names[i] for i in perm), ring.field)
    gens = [Polynomial._raw(pr, {tuple(m[i] for i in perm): c for m, c in g._d.items()})
            for g in I.basis()]
    G = groebner(gens, block_order(len(elim)), limits=limits, ring=pr)
    k = len(elim)
    out = []
    for g in G.elements:
        if any(any(m[:k]) for m in g._d):
            continue
        d = {}
        for m, c in g._d.items():
            e = [0] * ring.nvars
            for j, v in enumerate(m):
                e[perm[j]] = v
            d[tuple(e)] = c
        out.append(Polynomial._raw(ring, d))
    return Ideal(ring, out)


# ---------------------------------------------------------------- dimension


def _min_hitting_set(sets: list) -> int:
    sets = sorted(set(sets), key=len)
    minimal = []
    for s in sets:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    best = len(set().union(*minimal)) if minimal else 0

    def search(remaining, used):
        nonlocal best
        if used >= best:
            return
        if not remaining:
            best = used
            return
        pick = min(remaining, key=len)
        for v in sorted(pick):
            search([s for s in remaining if v not in s], used + 1)

    search(minimal, 0)
    return best


def dimension(I: Ideal) -> int:
    """Krull dimension of R/I from the leading monomials of the grevlex basis."""
    G = I.groebner()
    if G.is_unit():
        raise ValueError("the unit ideal has no dimension")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in G.lead_monomials()]
    return I.ring.nvars - _min_hitting_set(supports)


def height(P: Ideal) -> int:
    """Number of variables minus dimension (meaningful for primes)."""
    return P.ring.nvars - dimension(P)


def radical_member(f: Polynomial, I: Ideal, limits: Limits | None = None) -> bool:
    """f ∈ √I via 1 ∈ I + (1 − u·f) over the ring extended by u."""
    if not f:
        return True
    ring = I.ring
    u = ring.fresh_name("u")
    ext = ring.extend([u])
    gens = [_embed(g, ext) for g in I.basis()] + [ext.one() - ext.var(u) * _embed(f, ext)]
    return groebner(gens, GREVLEX, limits=limits, ring=ext).is_unit()


# ---------------------------------------------------------------- primality


def _linear_target(g: Polynomial, triangular: bool):
    """Variable index to solve for in g, with the image as {exp: coeff}, or None."""
    d = g._d
    linear = []
    for m, c in d.items():
        if sum(m) == 1:
            linear.append((m.index(1), m, c))
    linear.sort()
    if not triangular:
        if len(d) == 1 and linear:
            return linear[0][0], {}
        if len(d) == 2 and len(linear) == 2:
            (i, mi, ci), (_, mj, cj) = linear
            field = g.ring.field
            return i, {mj: field.normalize(-field.div(cj, ci))}
        return None
    for i, mi, ci in linear:
        if all(m[i] == 0 for m in d if m != mi):
            field = g.ring.field
            inv = field.div(1, ci)
            return i, {m: field.normalize(-c * inv) for m, c in d.items() if m != mi}
    return None


def _substitute_var(h: Polynomial, i: int, image: Polynomial) -> Polynomial:
    if all(m[i] == 0 for m in h._d):
        return h
    ring = h.ring
    out = ring.zero()
    powers = {}
    for m, c in h._d.items():
        e = m[i]
        base = Polynomial._raw(ring, {m[:i] + (0,) + m[i + 1:]: c})
        if e:
            if e not in powers:
                powers[e] = image ** e
            base = base * powers[e]
        out = out + base
    return out


def structural_primality(P: Ideal, triangular: bool = False) -> Primality:
    """Sound but incomplete primality certificate.

    Generators that are a single variable, or a difference of a variable and
    a scalar multiple of another variable, are solved and substituted away.
    With ``triangular`` any generator containing a variable that occurs only
    in one linear term is solved as well (x - g with x not in g). The ideal is
    reported prime when nothing is left or a single quadric ``a·xy + b·zw``
    in four distinct variables remains.
    """
    ring = P.ring
    field = ring.field
    gens = [g for g in P.gens if g]
    while True:
        if any(g.is_constant() for g in gens):
            return Primality.UNKNOWN
        pick = None
        for gi, g in enumerate(gens):
            target = _linear_target(g, triangular)
            if target is not None:
                pick = (gi, target)
                break
        if pick is None:
            break
        gi, (i, image_terms) = pick
        image = Polynomial._raw(ring, {m: field.normalize(c) for m, c in image_terms.items() if c})
        gens = [h for h in (_substitute_var(h, i, image) for j, h in enumerate(gens) if j != gi) if h]
    if not gens:
        return Primality.PROVEN
    if len(gens) == 1:
        g = gens[0]
        mons = list(g._d)
        if len(mons) == 2 and all(sum(m) == 2 and max(m) == 1 for m in mons):
            vars_used = [i for m in mons for i, e in enumerate(m) if e]
            if len(set(vars_used)) == 4:
                return Primality.PROVEN
    return Primality.UNKNOWN
