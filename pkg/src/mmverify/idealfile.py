"""Reading and writing ideal files.

Format: UTF-8 text, ``#`` starts a comment, first non-comment line is the
header ``ring n=<n> d=<d> field=<q|gf:p> vars=<count>``, then one polynomial
per line. Rings that are not Mayr-Meyer rings replace ``n``/``d`` with
``names=x,y,z``. A trailing comment after a polynomial is kept as the
generator name.
"""

from __future__ import annotations

import os

from .idealops import Ideal
from .ring import Field, RingContext, make_mm_ring, parse_poly, render_poly


class IdealFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _header(ring: RingContext) -> str:
    parts = ["ring"]
    if ring.n is not None and ring.aux_index is None:
        parts += [f"n={ring.n}", f"d={ring.d}"]
    parts += [f"field={ring.field}", f"vars={ring.nvars}"]
    if ring.n is None or ring.aux_index is not None:
        parts.append("names=" + ",".join(ring.names))
    return " ".join(parts)


def format_ideal(I: Ideal, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" if c else "#" for c in comment.splitlines()]
    lines.append(_header(I.ring))
    names = I.names or (None,) * len(I.gens)
    for g, name in zip(I.gens, names):
        text = render_poly(g)
        lines.append(f"{text}  # {name}" if name else text)
    return "\n".join(lines) + "\n"


def write_ideal(I: Ideal, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_ideal(I, comment))


def _parse_header(text: str, lineno: int) -> RingContext:
    toks = text.split()
    if not toks or toks[0] != "ring":
        raise IdealFileError("expected header 'ring n=<n> d=<d> field=<q|gf:p> vars=<count>'", lineno)
    kv = {}
    for tok in toks[1:]:
        if "=" not in tok:
            raise IdealFileError(f"bad header token {tok!r}", lineno)
        k, v = tok.split("=", 1)
        kv[k] = v
    try:
        fld = Field.parse(kv.get("field", "q"))
    except ValueError as e:
        raise IdealFileError(str(e), lineno) from None
    nvars = int(kv["vars"]) if "vars" in kv else None
    if "names" in kv:
        ring = RingContext(tuple(kv["names"].split(",")), fld)
    elif "n" in kv and "d" in kv:
        n, d = int(kv["n"]), int(kv["d"])
        if nvars is None or nvars == 8 * n + 2:
            ring = make_mm_ring(n, d, fld)
        elif nvars == 10 * n + 2:
            ring = make_mm_ring(n, d, fld, long=True)
        else:
            raise IdealFileError(f"vars={nvars} fits neither the short nor the long ring for n={n}", lineno)
    else:
        raise IdealFileError("header needs n and d, or names", lineno)
    if nvars is not None and nvars != ring.nvars:
        raise IdealFileError(f"vars={nvars} but the ring has {ring.nvars} variables", lineno)
    return ring


def parse_ideal(text: str, ring: RingContext | None = None) -> Ideal:
    """Parse ideal-file text; ``ring`` overrides a missing header."""
    gens, names = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        if ring is None or body.startswith("ring "):
            if body.startswith("ring ") or body == "ring":
                ring = _parse_header(body, lineno)
                continue
            raise IdealFileError("missing ring header", lineno)
        try:
            g = parse_poly(body, ring)
        except ValueError as e:
            raise IdealFileError(str(e), lineno) from None
        gens.append(g)
        names.append(comment.strip() or None)
    if ring is None:
        raise IdealFileError("missing ring header")
    if any(names):
        names = [nm or f"g{i}" for i, nm in enumerate(names)]
        return Ideal(ring, gens, names)
    return Ideal(ring, gens)


def read_ideal(path) -> Ideal:
    if not os.path.exists(path):
        raise IdealFileError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())
