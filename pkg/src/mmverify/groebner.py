"""Division with cofactors, Buchberger's algorithm, reduced bases and lifting.

Internally every monomial is packed into one Python integer whose natural
ordering agrees with the active monomial order and whose addition is monomial
multiplication. Exponents live in fixed-width bit fields with a guard bit on
top, which makes divisibility a single subtraction and mask.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ring import GREVLEX, MonomialOrder, Polynomial, RingContext, RingError

FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
_DEG_BITS = 24

DEFAULT_STEP_BUDGET = 10**7
DEFAULT_COEFF_BITS = 2**16


class BudgetExceeded(RuntimeError):
    """A computation ran past its reduction-step budget."""


class CoefficientGrowthError(RuntimeError):
    pass


class ExponentOverflow(RuntimeError):
    pass


class NotMember(ValueError):
    pass


@dataclass
class Limits:
    steps: int = DEFAULT_STEP_BUDGET
    coeff_bits: int | None = DEFAULT_COEFF_BITS

    @classmethod
    def from_env(cls) -> "Limits":
        raw = os.environ.get("MM_BUDGET_STEPS")
        return cls(steps=int(raw)) if raw else cls()


_limits = Limits.from_env()


def get_limits() -> Limits:
    return _limits


def set_limits(steps: int | None = None, coeff_bits: int | None = -1) -> None:
    """Change the process-wide budgets (``coeff_bits=None`` disables the guard)."""
    if steps is not None:
        _limits.steps = steps
    if coeff_bits != -1:
        _limits.coeff_bits = coeff_bits


# ---------------------------------------------------------------- packing


class _Packer:
    """Order-compatible, additive integer encoding of exponent vectors."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        W = FIELD_BITS
        self.guard = sum(1 << (W * i + W - 1) for i in range(nvars))
        self.mask = (1 << W) - 1
        if order.kind == "block":
            if not 0 < order.split < nvars:
                raise RingError("block split must lie strictly inside the variable list")
            self.k1 = order.split
            self.n2 = nvars - order.split
            self.sb = W * self.n2 + _DEG_BITS
            self.low = (1 << self.sb) - 1
        self.kind = order.kind

    # exponent pack: field i holds the exponent of variable i
    def pack(self, exp) -> int:
        W = FIELD_BITS
        v = 0
        for i, e in enumerate(exp):
            if e:
                if e > MAX_EXPONENT:
                    raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
                v |= e << (W * i)
        return v

    def unpack(self, E: int) -> tuple:
        W, mask = FIELD_BITS, self.mask
        return tuple((E >> (W * i)) & mask for i in range(self.nvars))

    def encode(self, exp) -> int:
        kind = self.kind
        if kind == "grevlex":
            return (sum(exp) << (FIELD_BITS * self.nvars)) - self.pack(exp)
        if kind == "lex":
            return self.pack(exp[::-1])
        k = self.k1
        P1 = _Packer.pack(self, exp[:k])
        P2 = _Packer.pack(self, exp[k:])
        K1 = (sum(exp[:k]) << (FIELD_BITS * k)) - P1
        d2 = sum(exp[k:])
        if d2 >= 1 << _DEG_BITS:
            raise ExponentOverflow("degree too large for block order")
        K2 = (d2 << (FIELD_BITS * self.n2)) - P2
        return (K1 << self.sb) + K2

    def exps(self, key: int) -> int:
        """Exponent pack (for divisibility tests) of an encoded monomial."""
        kind = self.kind
        if kind == "grevlex":
            s = FIELD_BITS * self.nvars
            return ((-((-key) >> s)) << s) - key
        if kind == "lex":
            return key  # fields reversed; divisibility is field-wise so this is fine
        K1 = key >> self.sb
        K2 = key & self.low
        s1 = FIELD_BITS * self.k1
        s2 = FIELD_BITS * self.n2
        P1 = ((-((-K1) >> s1)) << s1) - K1
        P2 = ((-((-K2) >> s2)) << s2) - K2
        return P1 | (P2 << s1)

    def decode(self, key: int) -> tuple:
        if self.kind == "lex":
            return self.unpack(key)[::-1]
        return self.unpack(self.exps(key))


class _Elt:
    """Basis element in packed form: monic, lead split off from the tail."""

    __slots__ = ("lk", "le", "lexp", "deg", "tail", "poly", "supp")

    def __init__(self, packer: _Packer, poly: dict, lk: int):
        self.lk = lk
        self.le = packer.exps(lk)
        self.lexp = packer.decode(lk)
        self.deg = sum(self.lexp)
        self.supp = frozenset(i for i, e in enumerate(self.lexp) if e)
        self.poly = poly
        self.tail = [(k, c) for k, c in poly.items() if k != lk]


# ---------------------------------------------------------------- engine


class _Engine:
    def __init__(self, ring: RingContext, order: MonomialOrder, limits: Limits | None = None):
        self.ring = ring
        self.order = order
        self.packer = _Packer(ring.nvars, order)
        self.p = ring.field.p
        self.field = ring.field
        self.limits = limits or get_limits()
        self.steps = 0

    # -- conversion
    def encode(self, poly: Polynomial) -> dict:
        if poly.ring is not self.ring and poly.ring != self.ring:
            raise RingError("polynomial is not in the engine's ring")
        enc = self.packer.encode
        return {enc(m): c for m, c in poly._d.items()}

    def decode(self, d: dict) -> Polynomial:
        dec = self.packer.decode
        return Polynomial._raw(self.ring, {dec(k): c for k, c in d.items()})

    # -- coefficient helpers
    def monic(self, d: dict, lk: int) -> dict:
        lc = d[lk]
        if lc == 1:
            return d
        p = self.p
        if p:
            inv = pow(lc, -1, p)
            return {k: c * inv % p for k, c in d.items()}
        if lc == -1:
            return {k: -c for k, c in d.items()}
        inv = Fraction(1) / lc
        out = {}
        for k, c in d.items():
            v = c * inv
            if type(v) is Fraction and v.denominator == 1:
                v = v.numerator
            out[k] = v
        return out

    def check_growth(self, d: dict):
        bound = self.limits.coeff_bits
        if self.p or bound is None:
            return
        for c in d.values():
            if type(c) is int:
                if c.bit_length() > bound:
                    break
            elif max(c.numerator.bit_length(), c.denominator.bit_length()) > bound:
                break
        else:
            return
        raise CoefficientGrowthError(f"coefficient exceeded {bound} bits")

    # -- reduction
    def reduce(self, f: dict, red: Sequence[_Elt], quot: list | None = None,
               lcs: Sequence | None = None) -> dict:
        """Fully reduce ``f`` (consumed) by ``red``; returns the remainder.

        ``quot`` (optional) receives per-divisor dicts shift -> coefficient.
        ``lcs`` gives leading coefficients when divisors are not monic.
        """
        if not f:
            return {}
        p = self.p
        packer = self.packer
        exps = packer.exps
        guard = packer.guard
        budget = self.limits.steps
        steps = self.steps
        heap = [-k for k in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rem = {}
        leads = [(g.le, g.deg, j) for j, g in enumerate(red)]
        field_div = self.field.div
        while heap:
            k = -pop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            E = exps(k)
            if E & guard:
                raise ExponentOverflow("exponent overflow during reduction")
            for le, _, j in leads:
                if not ((E - le) & guard):
                    break
            else:
                rem[k] = c
                continue
            g = red[j]
            if lcs is not None and lcs[j] != 1:
                c = field_div(c, lcs[j])
            shift = k - g.lk
            if quot is not None:
                qj = quot[j]
                v = qj.get(shift, 0) + c
                if p:
                    v %= p
                if v:
                    qj[shift] = v
                else:
                    qj.pop(shift, None)
            steps += 1
            if steps > budget:
                self.steps = steps
                raise BudgetExceeded(f"reduction step budget of {budget} exhausted")
            get = f.get
            if p:
                for gk, gc in g.tail:
                    nk = gk + shift
                    old = get(nk)
                    if old is None:
                        f[nk] = (-c * gc) % p
                        push(heap, -nk)
                    else:
                        v = (old - c * gc) % p
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
            else:
                for gk, gc in g.tail:
                    nk = gk + shift
                    old = get(nk)
                    if old is None:
                        f[nk] = -c * gc
                        push(heap, -nk)
                    else:
                        v = old - c * gc
                        if v:
                            if type(v) is Fraction and v.denominator == 1:
                                v = v.numerator
                            f[nk] = v
                        else:
                            del f[nk]
        self.steps = steps
        return rem

    # -- row arithmetic for lift matrices
    def axpy(self, acc: dict, d: dict, c, shift: int):
        """acc += c * x^shift * d (in place)."""
        p = self.p
        for k, v in d.items():
            nk = k + shift
            w = acc.get(nk, 0) + c * v
            if p:
                w %= p
            elif type(w) is Fraction and w.denominator == 1:
                w = w.numerator
            if w:
                acc[nk] = w
            else:
                acc.pop(nk, None)

    def row_combine(self, terms) -> dict:
        """Sum of c * x^shift * row over ``(c, shift, row)``; rows are {gen: dict}."""
        out: dict = {}
        for c, shift, row in terms:
            for gi, d in row.items():
                acc = out.setdefault(gi, {})
                self.axpy(acc, d, c, shift)
        return {gi: d for gi, d in out.items() if d}

    def row_sub_quotients(self, row: dict, quot: list, rows: list) -> dict:
        """row - sum_j quot[j] * rows[j]."""
        out = {gi: dict(d) for gi, d in row.items()}
        p = self.p
        for j, q in enumerate(quot):
            if not q:
                continue
            for gi, d in rows[j].items():
                acc = out.setdefault(gi, {})
                for shift, c in q.items():
                    self.axpy(acc, d, -c % p if p else -c, shift)
        return {gi: d for gi, d in out.items() if d}

    # -- Buchberger
    def buchberger(self, gens: Sequence[dict], track: bool = False):
        """Gröbner basis of packed generators.

        Returns ``(elements, rows)``: the active (minimal, monic) basis and,
        when ``track`` is set, each element's cofactor row over ``gens``.
        """
        packer = self.packer
        encode, exps, guard = packer.encode, packer.exps, packer.guard
        basis: list[_Elt] = []
        rows: list = []
        active: list[int] = []
        live: dict = {}
        heap: list = []
        seq = 0

        def lcm_info(a: _Elt, b: _Elt):
            lexp = tuple(map(max, a.lexp, b.lexp))
            key = encode(lexp)
            return key, exps(key), sum(lexp), lexp

        def add(d: dict, row):
            nonlocal seq
            lk = max(d)
            d = self.monic(d, lk)
            self.check_growth(d)
            h = _Elt(packer, d, lk)
            if h.le & guard:
                raise ExponentOverflow("exponent overflow in basis element")
            hi = len(basis)
            basis.append(h)
            rows.append(row)
            # chain criterion on the new pairs: keep one pair per minimal lcm,
            # and none if some pair with that lcm is coprime (product criterion)
            by_lcm: dict = {}
            for gi in active:
                key, E, deg, lexp = lcm_info(basis[gi], h)
                by_lcm.setdefault(key, (E, deg, lexp, []))[3].append(gi)
            minimal = []
            new_pairs = []
            for key in sorted(by_lcm):
                E, deg, lexp, members = by_lcm[key]
                if any(not ((E - E2) & guard) for E2 in minimal):
                    continue
                minimal.append(E)
                if any(not (basis[gi].supp & h.supp) for gi in members):
                    continue
                new_pairs.append((deg, min(members), hi, key, E, lexp))
            # old pairs whose lcm is strictly covered through h
            hle, hexp = h.le, h.lexp
            for sid in list(live):
                _, i, j, key, E, lexp = live[sid]
                if (E - hle) & guard:
                    continue
                if (tuple(map(max, basis[i].lexp, hexp)) != lexp
                        and tuple(map(max, basis[j].lexp, hexp)) != lexp):
                    del live[sid]
            for pair in new_pairs:
                live[seq] = pair
                heapq.heappush(heap, (pair[3], seq))
                seq += 1
            active[:] = [gi for gi in active if (basis[gi].le - hle) & guard] + [hi]

        one = self._one_key()
        for idx, g in enumerate(gens):
            if not g:
                continue
            red = [basis[i] for i in active]
            quot = [dict() for _ in red] if track else None
            r = self.reduce(dict(g), red, quot)
            if r:
                row = None
                if track:
                    row = self.row_sub_quotients({idx: {one: 1}}, quot, [rows[i] for i in active])
                    row = self._scale_row(row, r)
                add(r, row)

        while heap:
            _, sid = heapq.heappop(heap)
            pair = live.pop(sid, None)
            if pair is None:
                continue
            _, i, j, key, _, _ = pair
            gi, gj = basis[i], basis[j]
            si, sj = key - gi.lk, key - gj.lk
            s: dict = {}
            self.axpy(s, dict(gi.tail), 1, si)
            self.axpy(s, dict(gj.tail), -1 % self.p if self.p else -1, sj)
            if not s:
                continue
            red = [basis[a] for a in active]
            quot = [dict() for _ in red] if track else None
            r = self.reduce(s, red, quot)
            if r:
                row = None
                if track:
                    srow = self.row_combine([(1, si, rows[i]),
                                             (-1 % self.p if self.p else -1, sj, rows[j])])
                    row = self.row_sub_quotients(srow, quot, [rows[a] for a in active])
                    row = self._scale_row(row, r)
                add(r, row)
        elements = [basis[i] for i in active]
        return elements, ([rows[i] for i in active] if track else None)

    def _one_key(self) -> int:
        return self.packer.encode((0,) * self.packer.nvars)

    def _scale_row(self, row: dict, r: dict) -> dict:
        """Scale a cofactor row the same way ``monic`` scales ``r``."""
        lc = r[max(r)]
        if lc == 1:
            return row
        inv = self.field.div(1, lc)
        out = {}
        for gi, d in row.items():
            acc: dict = {}
            self.axpy(acc, d, inv, 0)
            if acc:
                out[gi] = acc
        return out

    def interreduce(self, elements: list, rows: list | None = None):
        """Reduced basis from a minimal monic basis; sorted by increasing lead."""
        out = []
        out_rows = [] if rows is not None else None
        for idx, g in enumerate(elements):
            others = elements[:idx] + elements[idx + 1:]
            quot = [dict() for _ in others] if rows is not None else None
            tail = self.reduce(dict(g.tail), others, quot)
            tail[g.lk] = 1
            out.append(_Elt(self.packer, tail, g.lk))
            if rows is not None:
                out_rows.append(self.row_sub_quotients(rows[idx], quot, rows[:idx] + rows[idx + 1:]))
        order = sorted(range(len(out)), key=lambda i: out[i].lk)
        out = [out[i] for i in order]
        if rows is not None:
            out_rows = [out_rows[i] for i in order]
        return out, out_rows


# ---------------------------------------------------------------- public API


@dataclass
class DivisionResult:
    remainder: Polynomial
    cofactors: list


@dataclass(eq=False)
class GroebnerBasis:
    """A Gröbner basis under ``order``; ``lift[k][i]`` expresses element k over ``generators[i]``."""

    ring: RingContext
    order: MonomialOrder
    elements: tuple
    generators: tuple = ()
    lift: tuple | None = None
    reduced: bool = False
    _engine: _Engine | None = field(default=None, repr=False)
    _elts: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def _prepare(self):
        if self._elts is None:
            eng = _Engine(self.ring, self.order)
            elts = []
            for g in self.elements:
                d = eng.encode(g)
                lk = max(d)
                elts.append(_Elt(eng.packer, eng.monic(d, lk), lk))
            self._engine, self._elts = eng, elts
        return self._engine, self._elts

    def normal_form(self, f: Polynomial) -> Polynomial:
        eng, elts = self._prepare()
        eng.steps = 0
        return eng.decode(eng.reduce(eng.encode(f), elts))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def lead_monomials(self) -> list:
        return [g.lm(self.order) for g in self.elements]


def _from_engine(eng: _Engine, elts, rows, gens, reduced) -> GroebnerBasis:
    elements = tuple(eng.decode(g.poly) for g in elts)
    lift = None
    if rows is not None:
        zero = eng.ring.zero()
        lift = tuple(
            tuple(eng.decode(row[i]) if i in row else zero for i in range(len(gens)))
            for row in rows
        )
    return GroebnerBasis(eng.ring, eng.order, elements, tuple(gens), lift, reduced, eng, list(elts))


def _common_ring(polys) -> RingContext:
    polys = list(polys)
    if not polys:
        raise RingError("need at least one polynomial to determine the ring")
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring is not ring and p.ring != ring:
            raise RingError("polynomials belong to different rings")
    return ring


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, *,
               lift: bool = False, limits: Limits | None = None,
               ring: RingContext | None = None) -> GroebnerBasis:
    """Gröbner basis of ``gens`` (monic and minimal, not yet interreduced).

    Uses the product and chain criteria and the normal selection strategy
    (smallest lcm under ``order``, ties by pair creation order).
    """
    gens = list(gens)
    ring = ring or _common_ring(gens)
    eng = _Engine(ring, order, limits)
    packed = [eng.encode(g) for g in gens]
    elts, rows = eng.buchberger(packed, track=lift)
    return _from_engine(eng, elts, rows, gens, reduced=False)


def reduce_basis(G: GroebnerBasis) -> GroebnerBasis:
    """Monic, autoreduced, sorted form of a Gröbner basis (unique per ideal and order)."""
    if G.reduced:
        return G
    eng = _Engine(G.ring, G.order)
    elts = []
    rows = [] if G.lift is not None else None
    for k, g in enumerate(G.elements):
        if not g:
            continue
        d = eng.encode(g)
        lk = max(d)
        elts.append((lk, _Elt(eng.packer, eng.monic(d, lk), lk), k, d[lk]))
    # minimalize: drop elements whose lead is divisible by another lead
    elts.sort(key=lambda t: t[0])
    guard = eng.packer.guard
    kept = []
    for lk, e, k, lc in elts:
        if any(not ((e.le - o.le) & guard) for _, o, _, _ in kept):
            continue
        kept.append((lk, e, k, lc))
    minimal = [e for _, e, _, _ in kept]
    if rows is not None:
        field = G.ring.field
        for _, _, k, lc in kept:
            row = {}
            for i, q in enumerate(G.lift[k]):
                if q:
                    row[i] = eng.encode(q.scale(field.div(1, lc)))
            rows.append(row)
    out, out_rows = eng.interreduce(minimal, rows)
    return _from_engine(eng, out, out_rows, G.generators, reduced=True)


def groebner(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, *,
             lift: bool = False, limits: Limits | None = None,
             ring: RingContext | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis in one call."""
    gens = list(gens)
    ring = ring or _common_ring(gens)
    eng = _Engine(ring, order, limits)
    packed = [eng.encode(g) for g in gens]
    elts, rows = eng.buchberger(packed, track=lift)
    elts, rows = eng.interreduce(elts, rows)
    return _from_engine(eng, elts, rows, gens, reduced=True)


def reduce(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
           limits: Limits | None = None) -> DivisionResult:
    """Multivariate division of ``f`` by ``divisors`` in list order."""
    ring = f.ring
    if not divisors:
        return DivisionResult(f, [])
    for g in divisors:
        if g.ring is not ring and g.ring != ring:
            raise RingError("divisor from a different ring")
    eng = _Engine(ring, order, limits)
    idx = [i for i, g in enumerate(divisors) if g]
    elts, lcs = [], []
    for i in idx:
        d = eng.encode(divisors[i])
        lk = max(d)
        elts.append(_Elt(eng.packer, d, lk))
        lcs.append(d[lk])
    quot = [dict() for _ in elts]
    rem = eng.reduce(eng.encode(f), elts, quot, lcs)
    cof = [ring.zero() for _ in divisors]
    for pos, i in enumerate(idx):
        cof[i] = eng.decode(quot[pos])
    return DivisionResult(eng.decode(rem), cof)


@dataclass
class Certificate:
    """``member == sum(cofactors[i] * generators[i])``, exactly."""

    member: Polynomial
    generators: tuple
    cofactors: tuple
    max_cofactor_degree: int

    def expand(self) -> Polynomial:
        total = self.member.ring.zero()
        for q, g in zip(self.cofactors, self.generators):
            if q:
                total = total + q * g
        return total

    def verify(self) -> bool:
        return self.expand() == self.member

    @property
    def max_term_degree(self) -> int:
        """Largest total degree of a product cofactor * generator."""
        return max((q.degree() + g.degree() for q, g in zip(self.cofactors, self.generators) if q),
                   default=-1)


def make_certificate(member: Polynomial, generators, cofactors) -> Certificate:
    deg = max((q.degree() for q in cofactors if q), default=-1)
    return Certificate(member, tuple(generators), tuple(cofactors), deg)


def lift_certificate(f: Polynomial, generators: Sequence[Polynomial],
                     gb: GroebnerBasis | None = None, order: MonomialOrder = GREVLEX,
                     limits: Limits | None = None) -> Certificate:
    """Cofactors expressing ``f`` over the original ``generators``.

    Plain division by the generators is tried first; if that leaves a
    remainder the cofactors are composed from the division over a lifted
    Gröbner basis and its lift matrix. Raises :class:`NotMember` otherwise.
    """
    generators = list(generators)
    direct = reduce(f, generators, order, limits)
    if not direct.remainder:
        return make_certificate(f, generators, direct.cofactors)
    if gb is None or gb.lift is None or list(gb.generators) != generators:
        gb = groebner(generators, order, lift=True, limits=limits, ring=f.ring)
    div = reduce(f, list(gb.elements), gb.order, limits)
    if div.remainder:
        raise NotMember("polynomial is not in the ideal")
    ring = f.ring
    cof = [ring.zero() for _ in generators]
    for q, row in zip(div.cofactors, gb.lift):
        if not q:
            continue
        for i, a in enumerate(row):
            if a:
                cof[i] = cof[i] + q * a
    return make_certificate(f, generators, cof)
