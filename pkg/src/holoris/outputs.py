"""Deterministic CSV and gnuplot-script emission for experiment results.

Every CSV starts with comment lines naming the reference figure or table
it mirrors and the column order; floats are formatted with %.12g so
re-running an experiment reproduces files byte for byte.
"""

import math
from pathlib import Path

_FLOAT_FMT = "%.12g"


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _FLOAT_FMT % value
    return str(value)


def write_csv(path: Path, target: str, columns: list[str], rows,
              notes: list[str] | None = None) -> Path:
    lines = [f"# target: {target}"]
    for note in notes or []:
        lines.append(f"# {note}")
    lines.append("# columns: " + ", ".join(columns))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


def spacing_label(spacing: float) -> str:
    return (_FLOAT_FMT % spacing).replace(".", "p").replace("-", "m")


def impedance_label(prefix: str, z: complex) -> str:
    re = _FLOAT_FMT % z.real
    im = _FLOAT_FMT % z.imag
    return f"{prefix}_{re}_{im}".replace(".", "p").replace("-", "m")


def write_gnuplot(path: Path, title: str, lines: list[str]) -> Path:
    body = [
        "# gnuplot script; run with: gnuplot " + path.name,
        "set datafile separator ','",
        "set datafile commentschars '#'",
        f"set title '{title}'",
        "set grid",
    ]
    body.extend(lines)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(body) + "\n")
    return path


def complex_matrix_rows(values) -> list[tuple]:
    """Rows (row, col, re, im) for a complex matrix, row-major order."""
    rows = []
    for i in range(values.shape[0]):
        for j in range(values.shape[1]):
            v = complex(values[i, j])
            rows.append((i, j, v.real, v.imag))
    return rows


def eigen_rows(values) -> list[tuple]:
    """Rows (index, eigenvalue, eigenvalue_db, cumulative_fraction) for a
    non-increasing eigenvalue list."""
    total = float(values.sum())
    rows = []
    cum = 0.0
    for i, v in enumerate(values):
        cum += float(v)
        db = 10.0 * _safe_log10(float(v))
        rows.append((i, float(v), db, cum / total if total else 0.0))
    return rows


def _safe_log10(v: float) -> float:
    if v <= 0.0:
        return float("-inf")
    return math.log10(v)
