"""CSV readers for atoms / points / zeros, deterministic JSON and CSV writers,
and space descriptors such as ``hardy:ball:2`` or ``bergman:ball:1:k=1``."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import ArgumentError
from .spaces import Bergman, Hardy


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_numeric_csv(path, what: str = "file") -> tuple[list[str] | None, np.ndarray]:
    """Rows of floats; a non-numeric first row is taken as the header.

    Errors name the file, the row and the column that failed to parse.
    """
    path = Path(path)
    if not path.is_file():
        raise ArgumentError(f"{what}: file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise ArgumentError(f"{what}: {path} is empty")
    header = None
    if not all(_is_number(c) for c in rows[0]):
        header, rows = [c.strip() for c in rows[0]], rows[1:]
    if not rows:
        raise ArgumentError(f"{what}: {path} has a header but no data rows")
    width = len(rows[0])
    out = np.empty((len(rows), width))
    for i, row in enumerate(rows, start=2 if header else 1):
        if len(row) != width:
            raise ArgumentError(f"{what}: row {i} of {path} has {len(row)} columns, expected {width}")
        for j, cell in enumerate(row):
            try:
                out[i - (2 if header else 1), j] = float(cell)
            except ValueError:
                col = header[j] if header and j < len(header) else f"column {j + 1}"
                raise ArgumentError(f"{what}: row {i}, field {col!r}: not a number: {cell!r}") from None
    if not np.all(np.isfinite(out)):
        raise ArgumentError(f"{what}: {path} contains non-finite values")
    return header, out


def _pairs_to_complex(block: np.ndarray) -> np.ndarray:
    return block[:, 0::2] + 1j * block[:, 1::2]


def read_atoms(path):
    """``re(z1),im(z1),...,mass`` rows -> (points, masses)."""
    _, data = read_numeric_csv(path, "measure")
    if data.shape[1] < 3 or (data.shape[1] - 1) % 2:
        raise ArgumentError("measure: rows must be re,im pairs followed by a mass column")
    return _pairs_to_complex(data[:, :-1]), data[:, -1]


def read_points(path):
    """``re(z1),im(z1),...`` rows -> complex (M, n) array."""
    _, data = read_numeric_csv(path, "points")
    if data.shape[1] % 2:
        raise ArgumentError("points: rows must consist of re,im pairs")
    return _pairs_to_complex(data)


def read_zeros(path):
    """``re,im,multiplicity`` rows -> (points, multiplicities)."""
    _, data = read_numeric_csv(path, "zeros")
    if data.shape[1] != 3:
        raise ArgumentError("zeros: rows must be re,im,multiplicity")
    mult = data[:, 2]
    if np.any(mult != np.round(mult)):
        raise ArgumentError("zeros: field 'multiplicity' must be an integer")
    return data[:, 0] + 1j * data[:, 1], mult.astype(int)


def write_points_csv(path, points, extra=None, extra_name: str = "mass") -> None:
    """Inverse of :func:`read_points` / :func:`read_atoms`."""
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    n = pts.shape[1]
    header = [f"{p}(z{j + 1})" for j in range(n) for p in ("re", "im")]
    rows = []
    for i, z in enumerate(pts):
        row = [v for c in z for v in (c.real, c.imag)]
        if extra is not None:
            row.append(np.asarray(extra)[i])
        rows.append(row)
    write_csv(path, header + ([extra_name] if extra is not None else []), rows)


def to_jsonable(obj):
    """numpy scalars/arrays to builtins; complex as [re, im]; non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(float(obj.real)), to_jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _cell(v) -> str:
    if isinstance(v, (complex, np.complexfloating)):
        return f"{_cell(v.real)}{'+' if v.imag >= 0 else '-'}{_cell(abs(v.imag))}j"
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(_cell(x) for x in v)
    return str(v)


def write_csv(path, header, rows) -> None:
    """UTF-8, comma separated, header row, shortest round-trip float repr."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])


def parse_space(text: str):
    """``hardy:ball:N[:reciprocal]`` or ``bergman:ball:n:k=K`` (also ``disc`` for n = 1)."""
    parts = [p for p in text.strip().lower().replace(" ", "").split(":") if p]
    if len(parts) < 2:
        raise ArgumentError(f"unparsable space descriptor {text!r}")
    kind, rest = parts[0], parts[1:]
    if rest[0] == "disc":
        rest = ["ball", "1"] + rest[1:]
    if rest[0] != "ball" or len(rest) < 2:
        raise ArgumentError(f"space descriptor {text!r}: only ball spaces have kernels")
    try:
        dim = int(rest[1])
    except ValueError:
        raise ArgumentError(f"space descriptor {text!r}: bad dimension") from None
    opts = rest[2:]
    if kind == "hardy":
        norm = "coarea"
        for o in opts:
            if o in ("reciprocal", "coarea"):
                norm = o
            else:
                raise ArgumentError(f"space descriptor {text!r}: unknown option {o!r}")
        return Hardy(dim, norm)
    if kind == "bergman":
        k = 0
        for o in opts:
            if o.startswith("k="):
                try:
                    k = int(o[2:])
                except ValueError:
                    raise ArgumentError(f"space descriptor {text!r}: bad weight {o!r}") from None
            else:
                raise ArgumentError(f"space descriptor {text!r}: unknown option {o!r}")
        return Bergman(dim, k)
    raise ArgumentError(f"space descriptor {text!r}: kind must be hardy or bergman")
