"""Plain-text matrix files.

The first line is ``m n field`` with field ``real`` or ``complex``; then come m
rows of n whitespace-separated scalars. Complex scalars are written ``a+bi``
without spaces. Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from .errors import DimensionError, ParseError
from .operators import OperatorMatrix
from .vectors import Field

MAX_SIZE = 16
_COMPLEX = re.compile(
    r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?:(?P<im>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i)?$"
)


def _parse_real(tok: str, line: int, col: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"not a real number: {tok!r}", line, col) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {tok!r}", line, col)
    return v


def _parse_complex(tok: str, line: int, col: int) -> complex:
    mt = _COMPLEX.match(tok)
    if not tok or mt is None or (mt.group("re") is None and mt.group("im") is None):
        # a bare imaginary part such as "2i" or "-i"
        mi = re.match(r"^([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i$", tok)
        if mi is None:
            raise ParseError(f"not a complex number: {tok!r}", line, col)
        im = mi.group(1)
        return complex(0.0, float(im + "1") if im in ("", "+", "-") else float(im))
    re_part = float(mt.group("re")) if mt.group("re") else 0.0
    im = mt.group("im")
    if im is None:
        im_part = 0.0
    elif im in ("+", "-"):
        im_part = float(im + "1")
    else:
        im_part = float(im)
    if not (math.isfinite(re_part) and math.isfinite(im_part)):
        raise ParseError(f"non-finite value {tok!r}", line, col)
    return complex(re_part, im_part)


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(mt.group(), mt.start() + 1) for mt in re.finditer(r"\S+", body)]
        if toks:
            yield lineno, toks


def parse_matrix_text(text: str) -> OperatorMatrix:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty matrix file", 1)
    lineno, head = lines[0]
    if len(head) != 3:
        raise ParseError("header must read 'm n field'", lineno, 1)
    dims = []
    for tok, col in head[:2]:
        if not re.fullmatch(r"\d+", tok):
            raise ParseError(f"dimension must be a positive integer, got {tok!r}", lineno, col)
        dims.append(int(tok))
    m, n = dims
    if m < 1 or n < 1:
        raise DimensionError("dimensions must be at least 1", lineno, head[0][1])
    if m > MAX_SIZE or n > MAX_SIZE:
        raise DimensionError(f"dimensions are limited to {MAX_SIZE}", lineno, head[0][1])
    ftok, fcol = head[2]
    if ftok not in ("real", "complex"):
        raise ParseError(f"field must be 'real' or 'complex', got {ftok!r}", lineno, fcol)
    fld = Field.REAL if ftok == "real" else Field.COMPLEX
    rows = lines[1:]
    if len(rows) != m:
        where = rows[m][0] if len(rows) > m else (rows[-1][0] + 1 if rows else lineno + 1)
        raise ParseError(f"expected {m} rows, found {len(rows)}", where)
    parse = _parse_real if fld is Field.REAL else _parse_complex
    data = np.zeros((m, n), dtype=float if fld is Field.REAL else complex)
    for i, (ln, toks) in enumerate(rows):
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else toks[-1][1]
            raise ParseError(f"expected {n} columns, found {len(toks)}", ln, col)
        for j, (tok, col) in enumerate(toks):
            data[i, j] = parse(tok, ln, col)
    return OperatorMatrix(data, fld)


def parse_matrix(path) -> OperatorMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix_text(text)


def _fmt(v: float) -> str:
    return "%.17g" % v


def format_scalar(z, field_: Field) -> str:
    if field_ is Field.REAL:
        return _fmt(float(np.real(z)))
    z = complex(z)
    im = _fmt(z.imag)
    if not im.startswith("-"):
        im = "+" + im
    return f"{_fmt(z.real)}{im}i"


def format_matrix(T) -> str:
    T = T if isinstance(T, OperatorMatrix) else OperatorMatrix(T)
    lines = [f"{T.m} {T.n} {T.field.value}"]
    for row in T.entries:
        lines.append(" ".join(format_scalar(v, T.field) for v in row))
    return "\n".join(lines) + "\n"


def write_matrix(T, path) -> None:
    Path(path).write_text(format_matrix(T))
