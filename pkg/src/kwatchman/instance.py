"""JSON instance and report files.

Coordinates may be written as integers, decimal strings (or bare JSON
decimals) or ``[numerator, denominator]`` pairs; all are read exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path as FilePath

from .errors import InvalidPolygon
from .geometry import L1, L2, Point, SimplePolygon, as_number, as_point, require_inside, validate_polygon


@dataclass(frozen=True)
class Instance:
    polygon: SimplePolygon
    start: Point
    defaults: dict = field(default_factory=dict, compare=False)


def encode_number(v):
    v = as_number(v)
    if isinstance(v, Fraction):
        return [v.numerator, v.denominator]
    return v


def encode_point(p) -> list:
    return [encode_number(p[0]), encode_number(p[1])]


def _loads(text: str):
    # keep JSON decimals as strings so they become exact rationals
    return json.loads(text, parse_float=str)


def parse_instance(doc) -> Instance:
    if isinstance(doc, (str, bytes)):
        doc = _loads(doc)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InvalidPolygon("instance must be an object with a 'vertices' list")
    try:
        P = validate_polygon([as_point(v) for v in doc["vertices"]])
        start = doc.get("start", doc.get("s"))
        if start is None:
            raise InvalidPolygon("instance needs a 'start' point")
        s = require_inside(P, as_point(start), "start")
    except (TypeError, ValueError, ZeroDivisionError, IndexError) as exc:
        raise InvalidPolygon(f"malformed instance: {exc}") from exc
    defaults = {key: doc[key] for key in ("k", "metric", "quota_frac", "quota_area", "epsilon") if key in doc}
    if defaults.get("metric", L1) not in (L1, L2):
        raise InvalidPolygon(f"unknown metric {defaults['metric']!r}")
    return Instance(P, s, defaults)


def instance_doc(inst: Instance) -> dict:
    doc = {"vertices": [encode_point(v) for v in inst.polygon.vertices], "start": encode_point(inst.start)}
    doc.update(inst.defaults)
    return doc


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_doc(inst), indent=2)


def load_instance(path) -> Instance:
    return parse_instance(FilePath(path).read_text())


def load_json(path):
    return _loads(FilePath(path).read_text())


def jsonable(v):
    """Make certificate values JSON friendly (exact numbers stay exact)."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return encode_number(v)
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return str(v)
