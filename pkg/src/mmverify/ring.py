"""Exact coefficients, variables, monomial orders and sparse polynomials.

Monomials are plain exponent tuples. Polynomials are immutable maps from
exponent tuples to nonzero field elements; every rendering lists terms in
decreasing graded reverse lexicographic order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple  # exponent vector, one entry per ring variable
Scalar = Union[int, Fraction]


class RingError(ValueError):
    """Raised for mixing objects from different rings or invalid rings."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnmappedVariableError(KeyError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field GF(p), with p < 2**31."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and (self.p >= 2**31 or not _is_prime(self.p)):
            raise RingError(f"GF({self.p}) is not a supported prime field")

    @property
    def characteristic(self) -> int:
        return self.p

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(0)
        m = re.fullmatch(r"gf[:(]?(\d+)\)?", text)
        if m:
            return cls(int(m.group(1)))
        raise RingError(f"unknown field descriptor {text!r}")

    def __str__(self):
        return "q" if self.p == 0 else f"gf:{self.p}"

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or numeric string into this field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def normalize(self, c):
        if self.p:
            return c % self.p
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in field")
        if self.p:
            return a * pow(b, -1, self.p) % self.p
        return self.normalize(Fraction(a) / b)

    def bits(self, c) -> int:
        if self.p:
            return 0
        if type(c) is int:
            return c.bit_length()
        return max(c.numerator.bit_length(), c.denominator.bit_length())


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------- monomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError("monomial does not divide")
    return q


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a two-block elimination order.

    ``block`` orders compare the variables before ``split`` by grevlex first
    and break ties by grevlex on the remaining variables, so any monomial
    involving an eliminated variable exceeds every monomial free of them.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    def key(self, exp: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        if self.kind == "lex":
            return tuple(exp)
        k = self.split
        return (_grevlex_key(exp[:k]), _grevlex_key(exp[k:]))

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise RingError("monomials of different lengths")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


# ---------------------------------------------------------------- rings

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class RingContext:
    """Ordered variable names over a coefficient field.

    For Mayr-Meyer rings ``n`` and ``d`` are recorded; ``aux_index`` marks the
    position of auxiliary variables added for elimination.
    """

    names: tuple
    field: Field = QQ
    n: int | None = None
    d: int | None = None
    long: bool = False
    aux_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise RingError("variable names must be unique")
        for name in self.names:
            if not _NAME_RE.fullmatch(name):
                raise RingError(f"invalid variable name {name!r}")

    @cached_property
    def _index(self) -> dict:
        return {name: i for i, name in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> "Polynomial":
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Polynomial._raw(self, {tuple(exp): 1})

    def gens(self) -> list:
        return [self.var(name) for name in self.names]

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial._raw(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp: Monomial, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def extend(self, names: Sequence[str], front: bool = True) -> "RingContext":
        """Ring with auxiliary variables added (in front by default)."""
        names = tuple(names)
        if front:
            new = names + self.names
            aux = 0
        else:
            new = self.names + names
            aux = self.nvars
        return RingContext(new, self.field, self.n, self.d, self.long, aux)

    def fresh_name(self, base: str) -> str:
        name = base
        while name in self._index:
            name += "_"
        return name

    def describe(self) -> str:
        return f"{self.field}[{', '.join(self.names)}]"


def mm_variable_names(n: int, long: bool = False) -> tuple:
    names = ["s", "f"]
    for r in range(n):
        names += [f"b{r}_{i}" for i in range(1, 5)]
        names += [f"c{r}_{i}" for i in range(1, 5)]
    if long:
        names += [f"s{r}" for r in range(1, n + 1)]
        names += [f"f{r}" for r in range(1, n + 1)]
    return tuple(names)


def make_mm_ring(n: int, d: int, field: Field = QQ, long: bool = False) -> RingContext:
    """The short (8n+2 variables) or long (10n+2 variables) Mayr-Meyer ring."""
    if n < 2 or d < 2:
        raise RingError("Mayr-Meyer rings need n >= 2 and d >= 2")
    return RingContext(mm_variable_names(n, long), field, n, d, long)


# ---------------------------------------------------------------- polynomials


def _check_same(a: "Polynomial", b: "Polynomial"):
    if a.ring is not b.ring and a.ring != b.ring:
        raise RingError("polynomials belong to different rings")


class Polynomial:
    """Immutable sparse polynomial over a :class:`RingContext`."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping | Iterable = ()):
        field = ring.field
        nv = ring.nvars
        d = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != nv or any(e < 0 for e in exp):
                raise RingError(f"bad exponent vector {exp!r}")
            c = field(c) + d.get(exp, 0)
            c = field.normalize(c)
            if c:
                d[exp] = c
            else:
                d.pop(exp, None)
        self.ring = ring
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, ring, d: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p._d = d
        p._hash = None
        return p

    # -- inspection
    @property
    def terms(self) -> tuple:
        """``(monomial, coefficient)`` pairs in decreasing grevlex order."""
        return tuple(sorted(self._d.items(), key=lambda t: _grevlex_key(t[0]), reverse=True))

    def as_dict(self) -> dict:
        return dict(self._d)

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def coefficient(self, exp: Monomial):
        return self._d.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._d), default=-1)

    def support(self) -> set:
        """Indices of variables occurring in the polynomial."""
        out = set()
        for m in self._d:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def variables(self) -> list:
        return [self.ring.names[i] for i in sorted(self.support())]

    def lead(self, order: MonomialOrder = GREVLEX):
        """Leading ``(monomial, coefficient)``; raises on zero."""
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._d, key=order.key)
        return m, self._d[m]

    def lm(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return self.lead(order)[0]

    def lc(self, order: MonomialOrder = GREVLEX):
        return self.lead(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._d:
            return self
        return self.scale(self.ring.field.div(1, self.lc(order)))

    # -- arithmetic
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.ring is other.ring or self.ring == other.ring) and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_same(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.normalize
        d = dict(self._d)
        for m, c in other._d.items():
            v = norm(d.get(m, 0) + c)
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.normalize
        return Polynomial._raw(self.ring, {m: norm(-c) for m, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: field.normalize(v * c) for m, v in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        norm = self.ring.field.normalize
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                d[m] = d.get(m, 0) + c1 * c2
        d = {m: v for m, v in ((m, norm(v)) for m, v in d.items()) if v}
        return Polynomial._raw(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exp: Monomial, c=1) -> "Polynomial":
        field = self.ring.field
        return Polynomial._raw(
            self.ring,
            {mono_mul(m, exp): field.normalize(v * c) for m, v in self._d.items()},
        )

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Polynomial({render_poly(self)!r})"


# ---------------------------------------------------------------- substitution


def substitute(p: Polynomial, mapping: Mapping, target: RingContext | None = None) -> Polynomial:
    """Ring-homomorphism image of ``p``; ``mapping`` sends names to images in ``target``.

    Variables occurring in ``p`` must all be mapped.
    """
    target = target or p.ring
    images = []
    for i, name in enumerate(p.ring.names):
        img = mapping.get(name)
        if img is None:
            images.append(None)
            continue
        if not isinstance(img, Polynomial):
            img = target.const(img)
        elif img.ring != target:
            raise RingError(f"image of {name} is not in the target ring")
        images.append(img)
    powers: dict = {}
    out = target.zero()
    for exp, c in p._d.items():
        term = target.const(c)
        for i, e in enumerate(exp):
            if not e:
                continue
            if images[i] is None:
                raise UnmappedVariableError(p.ring.names[i])
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            term = term * powers[key]
        out = out + term
    return out


# ---------------------------------------------------------------- text form

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             len(text) - len(text[pos:].lstrip()), text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer", tok)
            base = base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("expected integer denominator", den)
                if den[1] == 0:
                    self.error("zero denominator", den)
                return self.ring.const(Fraction(value, den[1]))
            return self.ring.const(value)
        if kind == "name":
            if value not in self.ring._index:
                raise ParseError(f"unknown variable {value!r}", pos, self.text)
            return self.ring.var(value)
        if kind == "op" and value == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        self.error(f"unexpected token {value!r}" if value is not None else "unexpected end", tok)


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    """Parse the textual polynomial grammar (parentheses are accepted as well)."""
    return _Parser(text, ring).parse()


def _render_monomial(exp, names) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_poly(p: Polynomial) -> str:
    if not p._d:
        return "0"
    names = p.ring.names
    out = []
    for i, (exp, c) in enumerate(p.terms):
        mono = _render_monomial(exp, names)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
