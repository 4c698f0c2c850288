"""Parse the textual input formats: exponents, norm specs and numeric CSV files."""
import csv
import math
from pathlib import Path
from typing import List, Union

import numpy as np

from .errors import DomainError, SpecParseError
from .norms import NormSpec


def parse_exponent(text: Union[str, float]) -> float:
    """Parse an exponent, accepting 'inf' for infinity."""
    if isinstance(text, (int, float)):
        return float(text)
    token = text.strip().lower()
    if token in ("inf", "infinity", "oo"):
        return math.inf
    try:
        value = float(token)
    except ValueError:
        raise SpecParseError(f"not an exponent: {text!r}")
    if math.isnan(value):
        raise SpecParseError(f"not an exponent: {text!r}")
    return value


def read_matrix_csv(path: Union[str, Path]) -> np.ndarray:
    """Read a rectangular CSV of floats; '#' lines and blank lines are skipped."""
    path = Path(path)
    if not path.exists():
        raise SpecParseError("file not found", source=str(path))

    rows: List[List[float]] = []
    width = None
    with open(path, "r", encoding="utf-8", newline="") as f:
        for line_no, record in enumerate(csv.reader(f), start=1):
            cells = [cell.strip() for cell in record]
            if not cells or all(not cell for cell in cells) or cells[0].startswith("#"):
                continue
            try:
                row = [float(cell) for cell in cells]
            except ValueError as e:
                raise SpecParseError(f"non-numeric entry ({e})", source=str(path), line=line_no)
            if not all(math.isfinite(value) for value in row):
                raise SpecParseError("entries must be finite", source=str(path), line=line_no)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise SpecParseError(
                    f"expected {width} columns, found {len(row)}", source=str(path), line=line_no
                )
            rows.append(row)

    if not rows:
        raise SpecParseError("no numeric rows", source=str(path))
    return np.array(rows, dtype=float)


def parse_norm_spec(text: str) -> NormSpec:
    """Parse `lp:<r>:<d>` or `polytope:<path-to-vertex-csv>`."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    if kind == "lp":
        parts = rest.split(":")
        if len(parts) != 2:
            raise SpecParseError(f"expected lp:<r>:<d>, got {text!r}")
        try:
            dim = int(parts[1])
        except ValueError:
            raise SpecParseError(f"dimension is not an integer in {text!r}")
        try:
            return NormSpec.lp(parse_exponent(parts[0]), dim)
        except DomainError as e:
            raise SpecParseError(str(e))
    if kind == "polytope":
        if not rest:
            raise SpecParseError("polytope spec needs a vertex CSV path")
        vertices = read_matrix_csv(rest)
        try:
            return NormSpec.polytope(vertices)
        except DomainError as e:
            raise SpecParseError(str(e), source=rest)
    raise SpecParseError(f"unknown norm kind {kind!r} in {text!r}")


def parse_float_list(text: str) -> List[float]:
    """Parse a comma separated list of floats."""
    try:
        return [float(cell) for cell in text.split(",") if cell.strip()]
    except ValueError:
        raise SpecParseError(f"not a list of numbers: {text!r}")
