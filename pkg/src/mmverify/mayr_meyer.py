"""Factories for the Mayr-Meyer ideals and the ideals attached to them.

Variables follow the naming ``s, f, b<r>_<i>, c<r>_<i>`` (long ring also
``s<r>, f<r>``). Empty index ranges in products give 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import re

from .idealops import Ideal, product
from .ring import QQ, Field, Polynomial, RingContext, RingError, make_mm_ring


class RootsUnavailable(ValueError):
    """The requested roots of unity do not exist in the coefficient field."""


def dprime(d: int, characteristic: int) -> int:
    if characteristic == 0:
        return d
    while d % characteristic == 0:
        d //= characteristic
    return d


def _prime_factors(m: int) -> list:
    out, q = [], 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    if p == 2:
        return 1
    fs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    raise ValueError("no primitive root")  # unreachable for primes


def roots_of_unity(k: int, fld: Field):
    """All k-th roots of unity as powers of a fixed primitive one, or None."""
    if k == 1:
        return [1]
    if fld.p == 0:
        return [1, -1] if k == 2 else None
    p = fld.p
    if (p - 1) % k:
        return None
    zeta = pow(primitive_root(p), (p - 1) // k, p)
    return [pow(zeta, j, p) for j in range(k)]


def auto_prime(d: int, lower: int = 1000) -> int:
    """Smallest prime p > lower with p = 1 mod d and p not dividing d."""
    p = lower + 1
    while True:
        if p % d == 1 and d % p and all(p % q for q in range(2, int(p ** 0.5) + 1)):
            return p
        p += 1


@dataclass(frozen=True)
class MMParams:
    n: int
    d: int
    field: Field = QQ

    def __post_init__(self):
        if self.n < 2 or self.d < 2:
            raise RingError("Mayr-Meyer parameters need n >= 2 and d >= 2")

    @property
    def dprime(self) -> int:
        return dprime(self.d, self.field.p)

    @property
    def roots(self):
        return roots_of_unity(self.dprime, self.field)

    @property
    def roots_available(self) -> bool:
        return self.roots is not None

    @cached_property
    def ring(self) -> RingContext:
        return make_mm_ring(self.n, self.d, self.field)

    @cached_property
    def long_ring(self) -> RingContext:
        return make_mm_ring(self.n, self.d, self.field, long=True)

    def with_field(self, fld: Field) -> "MMParams":
        return MMParams(self.n, self.d, fld)


# ---------------------------------------------------------------- labels

_TAGS = ("P0", "Pr", "Pm1", "Pm2", "Pm3", "Pm4")


@dataclass(frozen=True, order=True)
class PrimeLabel:
    """Minimal prime label; ``alpha``/``beta`` are field elements, ``mask`` encodes Lambda."""

    tag: str
    r: int = 0
    alpha: int = 0
    beta: int = 0
    mask: int = 0

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown prime tag {self.tag!r}")

    @property
    def lam(self) -> tuple:
        return tuple(i for i in range(1, 5) if self.mask >> (i - 1) & 1)

    def __str__(self):
        if self.tag == "Pr":
            return f"P{self.r}({self.alpha},{self.beta})"
        if self.tag == "Pm4":
            return "Pm4{" + ",".join(map(str, self.lam)) + "}"
        return self.tag

    def display(self, fld: Field) -> str:
        """Like str() but with GF(p) residues shown in the symmetric range."""
        if self.tag != "Pr" or fld.p == 0:
            return str(self)
        sym = lambda a: a - fld.p if a > fld.p // 2 else a
        return f"P{self.r}({sym(self.alpha)},{sym(self.beta)})"


_PR_RE = re.compile(r"^(?:P|r|Pr)(\d+)(?:\(|,)\s*(?:a=)?(-?\d+)\s*,\s*(?:b=)?(-?\d+)\)?$")
_PM4_RE = re.compile(r"^Pm4(?:\{([\d,\s]*)\}|:mask=(\d+)|\[([\d,\s]*)\])$")


def parse_label(text: str, params: MMParams) -> PrimeLabel:
    """Accepts P0, Pm1..Pm3, Pm4{1,3}, Pm4:mask=5, P1(1,-1), r1,a=1,b=-1."""
    text = text.strip()
    if text in ("P0", "Pm1", "Pm2", "Pm3"):
        return PrimeLabel(text)
    m = _PM4_RE.match(text)
    if m:
        if m.group(2) is not None:
            mask = int(m.group(2))
        else:
            body = m.group(1) if m.group(1) is not None else m.group(3)
            mask = 0
            for tok in filter(None, (t.strip() for t in body.split(","))):
                i = int(tok)
                if not 1 <= i <= 4:
                    raise ValueError(f"Lambda entries must be in 1..4, got {i}")
                mask |= 1 << (i - 1)
        if not 0 <= mask < 16:
            raise ValueError("Lambda mask must be in 0..15")
        return PrimeLabel("Pm4", mask=mask)
    m = _PR_RE.match(text)
    if m:
        r = int(m.group(1))
        fld = params.field
        return PrimeLabel("Pr", r, fld.normalize(fld(int(m.group(2)))), fld.normalize(fld(int(m.group(3)))))
    raise ValueError(f"cannot parse prime label {text!r}")


def prime_labels(params: MMParams) -> list:
    """All minimal prime labels in report order; raises RootsUnavailable."""
    roots = params.roots
    if roots is None:
        raise RootsUnavailable(f"{params.dprime}-th roots of unity are not in {params.field}")
    out = [PrimeLabel("P0")]
    for r in range(1, params.n + 1):
        for a in roots:
            for b in roots:
                out.append(PrimeLabel("Pr", r, params.field.normalize(a), params.field.normalize(b)))
    out += [PrimeLabel("Pm1"), PrimeLabel("Pm2"), PrimeLabel("Pm3")]
    out += [PrimeLabel("Pm4", mask=m) for m in range(16)]
    return out


def expected_height(label: PrimeLabel, params: MMParams) -> int:
    if label.tag == "P0":
        return 4
    if label.tag == "Pr":
        if label.r == 1:
            return 11
        return 7 * label.r + 4 if label.r < params.n else 7 * params.n
    return {"Pm1": 2, "Pm2": 6, "Pm3": 6, "Pm4": 10}[label.tag]


# ---------------------------------------------------------------- helpers


class _V:
    """Variable lookup by paper-style indices."""

    def __init__(self, ring: RingContext):
        self.ring = ring

    def __call__(self, name: str) -> Polynomial:
        return self.ring.var(name)

    def b(self, r, i):
        return self.ring.var(f"b{r}_{i}")

    def c(self, r, i):
        return self.ring.var(f"c{r}_{i}")

    def s_(self, r):
        return self.ring.var("s" if r == 0 else f"s{r}")

    def f_(self, r):
        return self.ring.var("f" if r == 0 else f"f{r}")

    def prod(self, factors) -> Polynomial:
        out = self.ring.one()
        for x in factors:
            out = out * x
        return out

    def c1_chain(self, lo: int, hi: int) -> Polynomial:
        """c_{lo,1} c_{lo+1,1} ... c_{hi,1}; 1 when hi < lo."""
        return self.prod(self.c(j, 1) for j in range(lo, hi + 1))


def _check_r(r: int, lo: int, hi: int, what: str):
    if not lo <= r <= hi:
        raise ValueError(f"{what} index r={r} outside {lo}..{hi}")


# ---------------------------------------------------------------- the families


def build_J_long(params: MMParams) -> Ideal:
    R = params.long_ring
    v = _V(R)
    n, d = params.n, params.d
    gens, names = [], []

    def add(name, g):
        names.append(name)
        gens.append(g)

    s, f = v.s_(0), v.f_(0)
    for i in range(1, 5):
        add(f"H0_{i}", v.c(0, i) * (s - f * v.b(0, i) ** d))
    for r in range(1, n + 1):
        sp, fp = v.s_(r - 1), v.f_(r - 1)
        q = r - 1
        add(f"H{r}_1", v.s_(r) - sp * v.c(q, 1))
        add(f"H{r}_2", v.f_(r) - sp * v.c(q, 4))
        add(f"H{r}_3", fp * v.c(q, 1) - sp * v.c(q, 2))
        add(f"H{r}_4", fp * v.c(q, 4) - sp * v.c(q, 3))
        add(f"H{r}_5", sp * (v.c(q, 3) - v.c(q, 2)))
        add(f"H{r}_6", fp * (v.c(q, 2) * v.b(q, 1) - v.c(q, 3) * v.b(q, 4)))
        if r <= n - 1:
            for i in range(1, 5):
                add(f"H{r}_{6 + i}",
                    fp * v.c(q, 2) * v.c(r, i) * (v.b(q, 2) - v.b(r, i) * v.b(q, 3)))
    q = n - 1
    add(f"H{n}_7", v.f_(q) * v.c(q, 2) * (v.b(q, 2) - v.b(q, 3)))
    return Ideal(R, gens, names)


def build_J(params: MMParams) -> Ideal:
    R = params.ring
    v = _V(R)
    n, d = params.n, params.d
    s, f = v("s"), v("f")
    gens, names = [], []

    def add(name, g):
        names.append(name)
        gens.append(g)

    for i in range(1, 5):
        add(f"h0_{i}", v.c(0, i) * (s - f * v.b(0, i) ** d))
    add("h1_3", f * v.c(0, 1) - s * v.c(0, 2))
    add("h1_4", f * v.c(0, 4) - s * v.c(0, 3))
    add("h1_5", s * (v.c(0, 3) - v.c(0, 2)))
    add("h1_6", f * (v.c(0, 2) * v.b(0, 1) - v.c(0, 3) * v.b(0, 4)))
    for i in range(1, 5):
        add(f"h1_{6 + i}", f * v.c(0, 2) * v.c(1, i) * (v.b(0, 2) - v.b(1, i) * v.b(0, 3)))
    for r in range(2, n + 1):
        pre = s * v.c(0, 1) * v.c1_chain(1, r - 3) if r >= 3 else s
        a, b = r - 2, r - 1
        add(f"h{r}_3", pre * (v.c(a, 4) * v.c(b, 1) - v.c(a, 1) * v.c(b, 2)))
        add(f"h{r}_4", pre * (v.c(a, 4) * v.c(b, 4) - v.c(a, 1) * v.c(b, 3)))
        add(f"h{r}_5", s * v.c1_chain(0, r - 2) * (v.c(b, 3) - v.c(b, 2)))
        add(f"h{r}_6", pre * v.c(a, 4) * (v.c(b, 2) * v.b(b, 1) - v.c(b, 3) * v.b(b, 4)))
        if r <= n - 1:
            for i in range(1, 5):
                add(f"h{r}_{6 + i}", pre * v.c(a, 4) * v.c(b, 2) * v.c(r, i)
                    * (v.b(b, 2) - v.b(r, i) * v.b(b, 3)))
    pre = s * v.c(0, 1) * v.c1_chain(1, n - 3) if n >= 3 else s
    add(f"h{n}_7", pre * v.c(n - 2, 4) * v.c(n - 1, 2) * (v.b(n - 1, 2) - v.b(n - 1, 3)))
    return Ideal(R, gens, names)


def substitution_sigma(params: MMParams) -> dict:
    """Images in the short ring of every long-ring variable."""
    R = params.ring
    v = _V(R)
    s = v("s")
    m = {name: R.var(name) for name in R.names}
    for r in range(1, params.n + 1):
        m[f"s{r}"] = s * v.c1_chain(0, r - 1)
        m[f"f{r}"] = s * v.c1_chain(0, r - 2) * v.c(r - 1, 4)
    return m


def short_name(long_name: str) -> str:
    """H<r>_<i> -> h<r>_<i>."""
    return "h" + long_name[1:]


# ---------------------------------------------------------------- block ideals


def block_ideal(kind: str, params: MMParams, r: int | None = None) -> Ideal:
    """C(r), D(r), B(r), E, F or E''' as listed generators."""
    R = params.ring
    v = _V(R)
    n, d = params.n, params.d
    s, f = v("s"), v("f")
    kind = kind.upper() if kind not in ("E'''", "E3") else "E3"
    if kind == "C":
        _check_r(r, 0, n, "C")
        gens = [] if r == n else [v.c(r, i) for i in range(1, 5)]
    elif kind == "D":
        _check_r(r, 0, n, "D")
        if r == 0:
            gens = [v.c(0, 4) - v.c(0, 1), v.c(0, 3) - v.c(0, 2), v.c(0, 1) - v.c(0, 2) * v.b(0, 1) ** d]
        elif r == n:
            gens = []
        else:
            gens = [v.c(r, 4) - v.c(r, 1), v.c(r, 3) - v.c(r, 2), v.c(r, 2) - v.c(r, 1)]
    elif kind == "B":
        _check_r(r, 0, n - 1, "B")
        gens = [R.one() - v.b(j, i) for j in range(2, r + 1) for i in range(1, 5)]
    elif kind == "E":
        b1, b2, b3, b4 = (v.b(0, i) for i in range(1, 5))
        gens = [s - f * b1 ** d, b1 - b4, b2 ** d - b3 ** d, b1 ** d - b2 ** d]
    elif kind == "E3":
        b1, b3, b4 = v.b(0, 1), v.b(0, 3), v.b(0, 4)
        gens = [s - f * b1 ** d, b1 - b4, b3 ** d - v.b(0, 2) ** d]
    elif kind == "F":
        b11 = v.b(1, 1)
        gens = [v.b(0, 2) - b11 * v.b(0, 3), v.b(1, 4) - b11, v.b(1, 3) - b11,
                v.b(1, 2) - b11, v.b(1, 2) ** d - 1]
    else:
        raise ValueError(f"unknown block ideal {kind!r}")
    return Ideal(R, gens)


def _sum(R, *ideals) -> Ideal:
    gens = []
    for I in ideals:
        gens += list(I.gens)
    return Ideal(R, _dedupe(gens))


def _dedupe(gens):
    seen, out = set(), []
    for g in gens:
        if g and g not in seen:
            seen.add(g)
            out.append(g)
    return out


def _times(p: Polynomial, I: Ideal) -> Ideal:
    return Ideal(I.ring, [p * g for g in I.gens])


def build_p(r: int, params: MMParams) -> Ideal:
    _check_r(r, 1, params.n, "p")
    R = params.ring
    C = lambda k: block_ideal("C", params, k)
    D = lambda k: block_ideal("D", params, k)
    if r == 1:
        return _sum(R, C(1), block_ideal("E", params), D(0))
    parts = [C(r), block_ideal("E", params), block_ideal("F", params), block_ideal("B", params, r - 1)]
    parts += [D(k) for k in range(r)]
    return _sum(R, *parts)


# ---------------------------------------------------------------- primes and components


def build_prime(label: PrimeLabel, params: MMParams) -> Ideal:
    R = params.ring
    v = _V(R)
    if label.tag == "Pr":
        roots = params.roots
        fld = params.field
        if roots is None or fld.normalize(label.alpha) not in [fld.normalize(x) for x in roots] \
                or fld.normalize(label.beta) not in [fld.normalize(x) for x in roots]:
            raise RootsUnavailable(
                f"alpha={label.alpha}, beta={label.beta} are not {params.dprime}-th roots of unity in {fld}")
        _check_r(label.r, 1, params.n, "P")
        a, b = label.alpha, label.beta
        extra = [v.b(0, 1) - v.b(0, 2).scale(a), v.b(0, 2) - v.b(0, 3).scale(b)]
        if label.r > 1:
            extra += [R.const(b) - v.b(1, i) for i in range(1, 5)]
        return _sum(R, build_p(label.r, params), Ideal(R, extra))
    s, f = v("s"), v("f")
    if label.tag == "P0":
        return block_ideal("C", params, 0)
    if label.tag == "Pm1":
        return Ideal(R, [s, f])
    if label.tag == "Pm2":
        return Ideal(R, [s, v.c(0, 1), v.c(0, 2), v.c(0, 4), v.b(0, 3), v.b(0, 4)])
    if label.tag == "Pm3":
        return Ideal(R, [s, v.c(0, 1), v.c(0, 4), v.b(0, 2), v.b(0, 3),
                         v.c(0, 2) * v.b(0, 1) - v.c(0, 3) * v.b(0, 4)])
    lam = label.lam
    gens = [v.c(1, i) for i in range(1, 5) if i not in lam]
    gens += [v.b(1, i) for i in lam]
    gens += [s, v.c(0, 1), v.c(0, 3), v.c(0, 4), v.b(0, 1), v.b(0, 2)]
    return Ideal(R, gens)


def build_component(label: PrimeLabel, params: MMParams) -> Ideal:
    R = params.ring
    v = _V(R)
    d = params.d
    s = v("s")
    if label.tag == "Pm2":
        return Ideal(R, [s, v.c(0, 1), v.c(0, 2), v.c(0, 4), v.b(0, 3) ** d, v.b(0, 4)])
    if label.tag == "Pm4":
        lam = label.lam
        gens = [v.c(1, i) for i in range(1, 5) if i not in lam]
        for i in lam:
            gens += [v.b(1, i) ** d, v.b(0, 2) - v.b(1, i) * v.b(0, 3)]
        for i in lam:
            for j in lam:
                if i != j:
                    gens.append(v.b(1, i) - v.b(1, j))
        gens += [s, v.c(0, 1), v.c(0, 3), v.c(0, 4), v.b(0, 1), v.b(0, 2) ** d]
        return Ideal(R, _dedupe(gens))
    return build_prime(label, params)


def build_p_minus4(params: MMParams) -> Ideal:
    R = params.ring
    v = _V(R)
    d = params.d
    gens = [v("s"), v.c(0, 1), v.c(0, 3), v.c(0, 4), v.b(0, 1), v.b(0, 2) ** d]
    for i in range(1, 5):
        gens.append(v.c(1, i) * (v.b(0, 2) - v.b(1, i) * v.b(0, 3)))
        gens.append(v.c(1, i) * v.b(1, i) ** d)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            gens.append(v.c(1, i) * v.c(1, j) * (v.b(1, i) - v.b(1, j)))
    return Ideal(R, gens)


# ---------------------------------------------------------------- closed formulas


def _chain_sum(params: MMParams, upto: int, ideal_products: bool, start: int = 1) -> Ideal:
    """Sum over i = 0..upto of (prefix_i)(D_{i+1} + B_i).

    The prefix is the ideal product C_start ... C_i when ``ideal_products`` is
    set, else the monomial c_{start,1} ... c_{i,1}.
    """
    R = params.ring
    v = _V(R)
    gens = []
    for i in range(0, upto + 1):
        inner = _sum(R, block_ideal("D", params, i + 1), block_ideal("B", params, i))
        if ideal_products:
            pre = Ideal(R, [R.one()])
            for k in range(start, i + 1):
                pre = product(pre, block_ideal("C", params, k))
            gens += product(pre, inner).gens
        else:
            gens += _times(v.c1_chain(start, i), inner).gens
    return Ideal(R, _dedupe(gens))


def lemma_intersection(r: int, params: MMParams) -> Ideal:
    """Closed form for p_1 ∩ ... ∩ p_r (2 <= r <= n)."""
    _check_r(r, 2, params.n, "lemma")
    R = params.ring
    C1 = block_ideal("C", params, 1)
    top = Ideal(R, [R.one()])
    for k in range(1, r + 1):
        top = product(top, block_ideal("C", params, k))
    return _sum(R, block_ideal("E", params), block_ideal("D", params, 0),
                product(C1, block_ideal("F", params)),
                _chain_sum(params, r - 1, ideal_products=True), top)


def build_L(variant: str, params: MMParams) -> Ideal:
    """L' , L'' or L''' (also accepted as L1, L2, L3)."""
    R = params.ring
    v = _V(R)
    d, n = params.d, params.n
    s, f = v("s"), v("f")
    b1, b3, b4 = v.b(0, 1), v.b(0, 3), v.b(0, 4)
    key = {"L'": 1, "L1": 1, "L''": 2, "L2": 2, "L'''": 3, "L3": 3}.get(variant)
    if key is None:
        raise ValueError(f"unknown L variant {variant!r}")
    L2 = _sum(R, Ideal(R, [s - f * b1 ** d, b1 - b4, b1 ** d - b3 ** d]),
              block_ideal("D", params, 0), block_ideal("D", params, 1))
    if key == 2:
        return L2
    if key == 1:
        c11 = v.c(1, 1)
        extra = [c11 * (v.b(1, i) - v.b(1, j)) for i in range(1, 5) for j in range(i + 1, 5)]
        extra.append(c11 * (v.b(1, 2) ** d - 1))
        return _sum(R, L2, Ideal(R, extra), _chain_sum(params, n - 1, ideal_products=False))
    C1 = block_ideal("C", params, 1)
    return _sum(R, Ideal(R, [s - f * b1 ** d, b1 - b4, v.b(0, 2) ** d - b3 ** d]),
                block_ideal("D", params, 0), product(C1, block_ideal("F", params)),
                _chain_sum(params, n - 1, ideal_products=True))


def min_intersection_summands(params: MMParams) -> list:
    """(label, Ideal) pieces whose sum is the closed form for the minimal-component intersection."""
    R = params.ring
    v = _V(R)
    d, n = params.d, params.n
    s, f = v("s"), v("f")
    b = [None] + [v.b(0, i) for i in range(1, 5)]
    c02, c03 = v.c(0, 2), v.c(0, 3)
    c11, b11 = v.c(1, 1), v.b(1, 1)
    fc = f * c02
    E = block_ideal("E", params)
    E3 = block_ideal("E'''", params)
    D0, D1 = block_ideal("D", params, 0), block_ideal("D", params, 1)
    F = block_ideal("F", params)
    C1F = product(block_ideal("C", params, 1), F)
    chain = _chain_sum(params, n - 1, ideal_products=False)
    chain2 = _chain_sum(params, n - 1, ideal_products=False, start=2)
    c03_b01 = Ideal(R, [c03, b[1]])
    out = [
        ("J", build_J(params)),
        ("sD0", _times(s, D0)),
        ("fc02b02(c03,b01)(s-fb01^d,b01-b04)",
         _times(fc * b[2], product(c03_b01, Ideal(R, [s - f * b[1] ** d, b[1] - b[4]])))),
        ("fc02b02(c03,b01)(D0+D1)", _times(fc * b[2], product(c03_b01, _sum(R, D0, D1)))),
        ("fc02c03(...)", _times(fc * c03, Ideal(R, [b[2] ** d - b[3] ** d,
                                                     b[2] * (b[1] ** d - b[3] ** d)]))),
        ("fc02c03b03(E+D0+C1F+chain)", _times(fc * c03 * b[3], _sum(R, E, D0, C1F, chain))),
        ("fc02(b02(..),b03(..),b03(..))",
         _times(fc, Ideal(R, [b[2] * (b[1] ** d - b[2] ** d)]
                          + [b[3] * (v.c(1, i) * v.b(1, i) ** d - c11 * b11 ** d) for i in range(1, 5)]
                          + [b[3] * (b[1] ** d - b[2] ** d)]))),
        ("fc02(b01(..),c11b11^d(..))",
         _times(fc, Ideal(R, [b[1] * (b[3] ** d - b[2] ** d),
                              c11 * b11 ** d * (b[3] ** d - b[2] ** d)]))),
        ("fc02b03b01(E'''+D0+C1F+chain)", _times(fc * b[3] * b[1], _sum(R, E3, D0, C1F, chain))),
        ("fc02b03b11^dc11(E'''+D0+F+chain2)",
         _times(fc * b[3] * b11 ** d * c11, _sum(R, E3, D0, F, chain2))),
        ("fc02b02^d(E+D0+C1F+chain)", _times(fc * b[2] ** d, _sum(R, E, D0, C1F, chain))),
    ]
    return out


def build_min_intersection(params: MMParams) -> Ideal:
    R = params.ring
    return _sum(R, *(I for _, I in min_intersection_summands(params)))


# ---------------------------------------------------------------- witness and certificate


def c_prime(params: MMParams) -> Polynomial:
    v = _V(params.ring)
    n = params.n
    return v.c1_chain(1, n - 2) * (v.c(n - 1, 1) - v.c(n - 1, 4))


def witness(params: MMParams) -> Polynomial:
    v = _V(params.ring)
    n = params.n
    return v("s") * v.c1_chain(0, n - 2) * (v.c(n - 1, 1) - v.c(n - 1, 4))


@dataclass
class CertificateTerm:
    coefficient: Polynomial
    generator: Polynomial
    name: str

    @property
    def product(self) -> Polynomial:
        return self.coefficient * self.generator


def certificate_terms(params: MMParams) -> list:
    """Four (coefficient, generator) pairs summing to the witness.

    The generators are h0_1, h1_3, h0_2 and f*c0_2*b0_2^d*c', the last one a
    generator of the minimal-component intersection.
    """
    R = params.ring
    v = _V(R)
    d = params.d
    J = build_J(params).named()
    cp = c_prime(params)
    b01d = v.b(0, 1) ** d
    g4 = v("f") * v.c(0, 2) * v.b(0, 2) ** d * cp
    return [
        CertificateTerm(cp, J["h0_1"], "h0_1"),
        CertificateTerm(b01d * cp, J["h1_3"], "h1_3"),
        CertificateTerm(b01d * cp, J["h0_2"], "h0_2"),
        CertificateTerm(b01d, g4, "f*c0_2*b0_2^d*c'"),
    ]
