"""JSON/CSV serialisation of spaces, partitions and ball maps.

Rationals are written as strings, ``"p/q"`` or ``"p"``; ``"inf"`` marks the
extended value.  Space JSON is ``{"n": k, "d": [[...], ...]}``; the CSV form
is ``n`` lines of ``n`` comma-separated rationals.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import GHLabError
from .isometry import BallMap
from .metric import INF, FiniteMetricSpace, as_rational, validate
from .partition import LabeledPartition

__all__ = [
    "rational_str",
    "parse_rational",
    "space_to_dict",
    "space_from_dict",
    "space_to_csv",
    "space_from_csv",
    "load_space",
    "save_space",
    "partition_to_dict",
    "partition_from_dict",
    "ballmap_to_dict",
    "ballmap_from_dict",
]


def rational_str(value) -> str:
    if value == INF:
        return "inf"
    return str(as_rational(value))


def parse_rational(text):
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    if isinstance(text, float):
        raise GHLabError(f"floating-point value {text!r}; write rationals as strings")
    try:
        return as_rational(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise GHLabError(f"not a rational: {text!r}") from exc


def space_to_dict(X: FiniteMetricSpace) -> dict:
    return {"n": X.n, "d": [[rational_str(v) for v in row] for row in X.d]}


def space_from_dict(data: dict) -> FiniteMetricSpace:
    try:
        rows = data["d"]
    except (KeyError, TypeError) as exc:
        raise GHLabError("space JSON needs a 'd' matrix") from exc
    if "n" in data and data["n"] != len(rows):
        raise GHLabError(f"'n' is {data['n']} but the matrix has {len(rows)} rows")
    return validate([[parse_rational(v) for v in row] for row in rows])


def space_to_csv(X: FiniteMetricSpace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in X.d:
        writer.writerow(rational_str(v) for v in row)
    return buf.getvalue()


def space_from_csv(text: str) -> FiniteMetricSpace:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    return validate([[parse_rational(v) for v in row] for row in rows])


def load_space(path) -> FiniteMetricSpace:
    """Read a space from a ``.json`` or ``.csv`` file (sniffed by content)."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            return space_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GHLabError(f"{path}: {exc}") from exc
    return space_from_csv(text)


def save_space(X: FiniteMetricSpace, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(space_to_csv(X), encoding="utf-8")
    else:
        path.write_text(json.dumps(space_to_dict(X)) + "\n", encoding="utf-8")


def partition_to_dict(P: LabeledPartition) -> dict:
    return {"labels": P.labels()}


def partition_from_dict(data: dict, reference_n=None) -> LabeledPartition:
    return LabeledPartition.from_labels(data["labels"], reference_n)


def ballmap_to_dict(m: BallMap) -> dict:
    return {"M": space_to_dict(m.M), "N": space_to_dict(m.N), "epsilon": rational_str(m.epsilon)}


def ballmap_from_dict(data: dict) -> BallMap:
    return BallMap(space_from_dict(data["M"]), space_from_dict(data["N"]), parse_rational(data["epsilon"]))
