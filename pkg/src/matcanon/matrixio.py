"""Plain-text matrix files and deterministic float formatting.

File grammar: blank lines and lines whose first non-blank character is
'#' are ignored; the first significant line holds "ROWS COLS" as decimal
integers, followed by exactly ROWS significant lines of exactly COLS
whitespace-separated decimal floats.  Anything else is rejected.  All
floats are printed with 17 significant digits, which round-trips float64
exactly, so parse -> serialize -> parse is the identity on values.
"""

import numpy as np


class MatrixFormatError(ValueError):
    """The file does not follow the matrix grammar."""


def format_float(x):
    """17-significant-digit decimal form; exact round-trip for float64."""
    return format(float(x), ".17g")


def _significant_lines(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def parse_matrix_text(text, source="<string>"):
    lines = _significant_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise MatrixFormatError(f"{source}: empty matrix file") from None
    tokens = header.split()
    if len(tokens) != 2:
        raise MatrixFormatError(
            f"{source}:{lineno}: malformed header, expected 'ROWS COLS'"
        )
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MatrixFormatError(
            f"{source}:{lineno}: malformed header, expected 'ROWS COLS'"
        ) from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"{source}:{lineno}: dimensions must be positive")
    out = np.empty((rows, cols), dtype=np.float64)
    for i in range(rows):
        try:
            lineno, row = next(lines)
        except StopIteration:
            raise MatrixFormatError(
                f"{source}: expected {rows} rows, found {i}"
            ) from None
        tokens = row.split()
        if len(tokens) != cols:
            raise MatrixFormatError(
                f"{source}:{lineno}: expected {cols} values, found {len(tokens)}"
            )
        for jcol, tok in enumerate(tokens):
            try:
                val = float(tok)
            except ValueError:
                raise MatrixFormatError(
                    f"{source}:{lineno}: invalid float {tok!r}"
                ) from None
            if not np.isfinite(val):
                raise MatrixFormatError(
                    f"{source}:{lineno}: non-finite value {tok!r}"
                )
            out[i, jcol] = val
    extra = next(lines, None)
    if extra is not None:
        raise MatrixFormatError(
            f"{source}:{extra[0]}: unexpected content after the matrix"
        )
    return out


def parse_matrix(path):
    """Read a matrix file; raises OSError for I/O problems and
    MatrixFormatError for grammar violations."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_matrix_text(text, source=str(path))


def serialize_matrix(a):
    m = np.asarray(a, dtype=np.float64)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def write_matrix(path, a):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_matrix(a))
