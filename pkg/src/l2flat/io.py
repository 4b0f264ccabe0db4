"""Line-based text formats.

========== =====================================================
header     body
========== =====================================================
cellcomplex v1  ``dim <n>``, ``cell <id> <k>``, ``bd <id> <c>:<face> ...``
subcomplex v1   ``sel <id>``
weights v1      ``w <id> <p>/<q>``
cochain v1      ``c <id> <value>`` (unlisted cells are 0)
glz v1          ``rank <m>`` then blocks ``gen`` + m rows of m integers
========== =====================================================

``#`` starts a comment.  Parsers raise :class:`ParseError` with the line number.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .complex import CellComplex, Subcomplex
from .errors import InvalidComplex, ParseError
from .flatends import DEFAULT_CAP, EndDescriptor, LatticeGroup, closure
from .hodge import WeightedComplex

_ID = re.compile(r"^[!-~]+$")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _header(lines: list[tuple[int, list[str]]], expected: str, source: str | None) -> list[tuple[int, list[str]]]:
    if not lines:
        raise ParseError(f"empty input, expected header '{expected}'", 1, source)
    no, toks = lines[0]
    if " ".join(toks) != expected:
        raise ParseError(f"expected header '{expected}', got '{' '.join(toks)}'", no, source)
    return lines[1:]


def _int(tok: str, no: int, source: str | None, what: str = "integer") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", no, source) from None


def _check_id(tok: str, no: int, source: str | None) -> str:
    if not _ID.match(tok):
        raise ParseError(f"bad cell id {tok!r}", no, source)
    return tok


def parse_complex(text: str, source: str | None = None) -> CellComplex:
    body = _header(list(_lines(text)), "cellcomplex v1", source)
    top = None
    cells: dict[str, tuple[int, int]] = {}
    order: list[str] = []
    bd: dict[str, dict[str, int]] = {}
    bd_line: dict[str, int] = {}
    for no, toks in body:
        key = toks[0]
        if key == "dim":
            if len(toks) != 2:
                raise ParseError("usage: dim <n>", no, source)
            if top is not None:
                raise ParseError("dim declared twice", no, source)
            top = _int(toks[1], no, source, "dimension")
            if top < 0:
                raise ParseError("dimension must be non-negative", no, source)
        elif key == "cell":
            if len(toks) != 3:
                raise ParseError("usage: cell <id> <k>", no, source)
            cid = _check_id(toks[1], no, source)
            k = _int(toks[2], no, source, "cell dimension")
            if cid in cells:
                raise ParseError(f"duplicate cell id {cid!r} (first declared on line {cells[cid][1]})", no, source)
            if k < 0 or (top is not None and k > top):
                raise ParseError(f"cell dimension {k} outside 0..{top}", no, source)
            cells[cid] = (k, no)
            order.append(cid)
        elif key == "bd":
            if len(toks) < 2:
                raise ParseError("usage: bd <id> <coef>:<face> ...", no, source)
            cid = toks[1]
            if cid in bd:
                raise ParseError(f"boundary of {cid!r} given twice", no, source)
            chain: dict[str, int] = {}
            for term in toks[2:]:
                coef, sep, face = term.partition(":")
                if not sep or not face:
                    raise ParseError(f"bad boundary term {term!r}, expected <coef>:<face>", no, source)
                c = _int(coef, no, source, "coefficient")
                chain[face] = chain.get(face, 0) + c
            bd[cid] = chain
            bd_line[cid] = no
        else:
            raise ParseError(f"unknown directive {key!r}", no, source)
    if top is None:
        raise ParseError("missing 'dim' line", None, source)
    for cid, chain in bd.items():
        no = bd_line[cid]
        if cid not in cells:
            raise ParseError(f"boundary given for undeclared cell {cid!r}", no, source)
        if cells[cid][0] == 0 and any(chain.values()):
            raise ParseError(f"0-cell {cid!r} cannot have a boundary", no, source)
        for face in chain:
            if face not in cells:
                raise ParseError(f"unknown face {face!r} in boundary of {cid!r}", no, source)
    by_dim: list[list[str]] = [[] for _ in range(top + 1)]
    for cid in order:
        by_dim[cells[cid][0]].append(cid)
    try:
        return CellComplex(by_dim, bd)
    except InvalidComplex as exc:
        raise ParseError(str(exc), None, source) from exc


def format_complex(X: CellComplex) -> str:
    out = ["cellcomplex v1", f"dim {X.top_dim}"]
    for k in range(X.top_dim + 1):
        for c in X.cells_of(k):
            out.append(f"cell {c} {k}")
    for k in range(1, X.top_dim + 1):
        for c in X.cells_of(k):
            faces = X.faces(c)
            if faces:
                terms = " ".join(f"{v}:{f}" for f, v in faces.items())
                out.append(f"bd {c} {terms}")
    return "\n".join(out) + "\n"


def parse_subcomplex(text: str, X: CellComplex, source: str | None = None) -> Subcomplex:
    body = _header(list(_lines(text)), "subcomplex v1", source)
    sel: dict[str, int] = {}
    for no, toks in body:
        if toks[0] != "sel" or len(toks) != 2:
            raise ParseError("usage: sel <id>", no, source)
        cid = toks[1]
        if cid in sel:
            raise ParseError(f"duplicate id {cid!r} (first on line {sel[cid]})", no, source)
        if cid not in X:
            raise ParseError(f"unknown cell id {cid!r}", no, source)
        sel[cid] = no
    return Subcomplex(X, sel)


def format_subcomplex(A: Subcomplex) -> str:
    return "subcomplex v1\n" + "".join(f"sel {c}\n" for c in A.sorted_ids())


def _fraction(tok: str, no: int, source: str | None, positive: bool = False) -> Fraction:
    m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", tok)
    if not m:
        raise ParseError(f"bad rational {tok!r}", no, source)
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {tok!r}", no, source)
    value = Fraction(int(m.group(1)), den)
    if positive and value <= 0:
        raise ParseError(f"weight {tok!r} is not positive", no, source)
    return value


def parse_weights(text: str, X: CellComplex, default_unit: bool = False, source: str | None = None) -> WeightedComplex:
    body = _header(list(_lines(text)), "weights v1", source)
    w: dict[str, Fraction] = {}
    for no, toks in body:
        if toks[0] != "w" or len(toks) != 3:
            raise ParseError("usage: w <id> <p>/<q>", no, source)
        cid = toks[1]
        if cid not in X:
            raise ParseError(f"unknown cell id {cid!r}", no, source)
        if cid in w:
            raise ParseError(f"duplicate weight for {cid!r}", no, source)
        w[cid] = _fraction(toks[2], no, source, positive=True)
    for c in X:
        if c not in w:
            if not default_unit:
                raise ParseError(f"no weight for cell {c!r} (pass --default-unit to use 1)", None, source)
            w[c] = Fraction(1)
    return WeightedComplex(X, w)


def format_weights(W: WeightedComplex) -> str:
    return "weights v1\n" + "".join(f"w {c} {format_rational(W.weights[c], always_fraction=True)}\n"
                                    for c in W.complex)


def parse_cochain(text: str, X: CellComplex, k: int, source: str | None = None) -> tuple[Fraction, ...]:
    body = _header(list(_lines(text)), "cochain v1", source)
    values: dict[str, Fraction] = {}
    for no, toks in body:
        if toks[0] != "c" or len(toks) != 3:
            raise ParseError("usage: c <id> <value>", no, source)
        cid = toks[1]
        if cid not in X:
            raise ParseError(f"unknown cell id {cid!r}", no, source)
        if X.dim_of(cid) != k:
            raise ParseError(f"cell {cid!r} is not a {k}-cell", no, source)
        if cid in values:
            raise ParseError(f"duplicate value for {cid!r}", no, source)
        values[cid] = _fraction(toks[2], no, source)
    return tuple(values.get(c, Fraction(0)) for c in X.cells_of(k))


def parse_group(text: str, cap: int = DEFAULT_CAP, source: str | None = None) -> LatticeGroup:
    body = _header(list(_lines(text)), "glz v1", source)
    if not body or body[0][1][0] != "rank" or len(body[0][1]) != 2:
        raise ParseError("expected 'rank <m>'", body[0][0] if body else None, source)
    no, toks = body[0]
    m = _int(toks[1], no, source, "rank")
    if m < 0:
        raise ParseError("rank must be non-negative", no, source)
    gens = []
    rest = body[1:]
    i = 0
    while i < len(rest):
        no, toks = rest[i]
        if toks != ["gen"]:
            raise ParseError(f"expected 'gen', got {' '.join(toks)!r}", no, source)
        rows = []
        for r in range(m):
            if i + 1 + r >= len(rest):
                raise ParseError(f"generator needs {m} rows", no, source)
            rno, rtoks = rest[i + 1 + r]
            if len(rtoks) != m:
                raise ParseError(f"expected {m} integers", rno, source)
            rows.append([_int(t, rno, source) for t in rtoks])
        gens.append(rows)
        i += 1 + m
    return closure(gens, cap=cap, m=m)


def format_group(G: LatticeGroup, elements: bool = False) -> str:
    out = ["glz v1", f"rank {G.m}"]
    for g in (G.elements if elements else G.generators):
        out.append("gen")
        out.extend(" ".join(str(x) for x in row) for row in g)
    return "\n".join(out) + "\n"


def parse_end(spec: str, cap: int = DEFAULT_CAP, base: Path | None = None) -> EndDescriptor:
    """``nu=<nu>,n=<n>,group=<file>|trivial,cover=<c>[,parabolic]``."""
    fields: dict[str, str] = {}
    parabolic = False
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "parabolic":
            parabolic = True
            continue
        key, sep, value = part.partition("=")
        if not sep or key not in ("nu", "n", "group", "cover"):
            raise ParseError(f"--end: bad field {part!r}")
        if key in fields:
            raise ParseError(f"--end: field {key!r} given twice")
        fields[key] = value
    for key in ("nu", "n"):
        if key not in fields:
            raise ParseError(f"--end: missing field {key!r}")
    try:
        nu, n = int(fields["nu"]), int(fields["n"])
        cover = int(fields.get("cover", "1"))
    except ValueError:
        raise ParseError(f"--end: non-integer value in {spec!r}") from None
    group = None
    gspec = fields.get("group", "trivial")
    if parabolic:
        if "group" in fields and gspec != "trivial":
            raise ParseError("--end: parabolic ends carry no group data")
        return EndDescriptor(nu, n, None, cover, True)
    if gspec != "trivial":
        path = Path(gspec) if base is None else base / gspec
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"--end: cannot read group file {gspec!r}: {exc.strerror}") from None
        group = parse_group(text, cap=cap, source=str(gspec))
    return EndDescriptor(nu, n, group, cover, False)


def format_rational(q, always_fraction: bool = False) -> str:
    q = Fraction(q)
    if q.denominator == 1 and not always_fraction:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
