"""4ti2-compatible matrix text: "<rows> <cols>" header, then the entries.

Basis files use the same format with the basis elements as rows.  The
emitter is canonical (single spaces, one row per line, trailing newline)
and parse/emit round-trip bit-exactly on canonical files.
"""

from __future__ import annotations

import os
from typing import Sequence

from .core import Configuration, IntVec, ParseError


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for tok in line.split():
            out.append((tok, lineno))
    return out


def _to_int(tok: str, lineno: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"line {lineno}: {tok!r} is not an integer") from None


def parse_matrix_text(text: str) -> tuple[int, int, list[list[int]]]:
    """Parse header and entries; reject wrong counts and non-integer tokens."""
    toks = _tokens(text)
    if len(toks) < 2:
        raise ParseError("line 1: missing '<rows> <cols>' header")
    rows = _to_int(*toks[0])
    cols = _to_int(*toks[1])
    if rows < 0 or cols < 0:
        raise ParseError(f"line {toks[0][1]}: dimensions must be nonnegative")
    need = rows * cols
    if len(toks) - 2 != need:
        where = toks[-1][1] if len(toks) > 2 else toks[1][1]
        raise ParseError(
            f"line {where}: expected {need} entries for a {rows}x{cols} "
            f"matrix, found {len(toks) - 2}")
    entries = [_to_int(tok, ln) for tok, ln in toks[2:]]
    matrix = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
    return rows, cols, matrix


def format_matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> str:
    rows = [list(r) for r in rows]
    if cols is None:
        if not rows:
            raise ParseError("cannot infer the column count of an empty matrix")
        cols = len(rows[0])
    lines = [f"{len(rows)} {cols}"]
    for r in rows:
        lines.append(" ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"


def parse_matrix_file(path: str | os.PathLike) -> Configuration:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    rows, cols, matrix = parse_matrix_text(text)
    if rows == 0 or cols == 0:
        raise ParseError(f"{path}: a configuration matrix cannot be {rows}x{cols}")
    return Configuration(matrix)


def write_matrix_file(path: str | os.PathLike,
                      rows: Sequence[Sequence[int]], cols: int | None = None) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(rows, cols))


def format_basis(elements: Sequence[IntVec], n: int) -> str:
    """Basis as a matrix whose rows are the elements (works for empty bases)."""
    return format_matrix(list(elements), n)
