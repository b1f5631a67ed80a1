"""Parsing and document serialization for the CLI.

The JSON document schema is stable:
    {"quasipolynomial": {"k": int, "a": {"re": float, "im": float}},
     "command": str, "params": object, "results": array, "summary": object}
Zero records serialize as
    {"nu": int | "origin", "re": float, "im": float, "residual": float,
     "certified": bool, "isolation_radius": float, "multiplicity": int}.
Floats rely on shortest round-trip repr, so re-parsing recovers the exact
double value.
"""

import csv
import io
import json
import re

from .errors import DomainError
from .zeros import ZeroRecord

_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_FLOAT})([+-]{_FLOAT})[ij]$")
_IMAG_RE = re.compile(rf"^([+-]?{_FLOAT})[ij]$")
_REAL_RE = re.compile(rf"^([+-]?{_FLOAT})$")
_RANGE_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def parse_complex(text):
    """Parse 'a+bi' (also plain 'a' or 'bi') into a complex number."""
    s = text.strip()
    m = _COMPLEX_RE.match(s)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    m = _IMAG_RE.match(s)
    if m:
        return complex(0.0, float(m.group(1)))
    m = _REAL_RE.match(s)
    if m:
        return complex(float(m.group(1)), 0.0)
    raise DomainError(f"cannot parse complex number {text!r}; expected 'a+bi'")


def parse_nu_range(text):
    """Parse 'lo..hi' (inclusive) into a pair of ints."""
    m = _RANGE_RE.match(text.strip())
    if not m:
        raise DomainError(f"cannot parse index range {text!r}; expected 'lo..hi'")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise DomainError(f"empty index range {text!r}")
    return lo, hi


def record_to_obj(rec):
    return {
        "nu": "origin" if rec.nu is None else rec.nu,
        "re": rec.value.real,
        "im": rec.value.imag,
        "residual": rec.residual,
        "certified": rec.certified,
        "isolation_radius": rec.isolation_radius if rec.isolation_radius is not None else 0.0,
        "multiplicity": rec.multiplicity,
    }


def record_from_obj(obj):
    nu = obj["nu"]
    radius = obj.get("isolation_radius", 0.0)
    return ZeroRecord(
        nu=None if nu == "origin" else int(nu),
        value=complex(obj["re"], obj["im"]),
        residual=float(obj.get("residual", 0.0)),
        seed=complex(obj["re"], obj["im"]),
        iterations=0,
        certified=bool(obj.get("certified", False)),
        isolation_radius=radius if radius else None,
        multiplicity=int(obj.get("multiplicity", 1)),
    )


def document(qp, command, params, results, summary):
    return {
        "quasipolynomial": {"k": qp.k, "a": {"re": qp.a.real, "im": qp.a.imag}},
        "command": command,
        "params": params,
        "results": results,
        "summary": summary,
    }


def dump_json(doc):
    return json.dumps(doc, indent=2) + "\n"


def _flatten(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return value


def dump_csv(doc):
    """CSV rendering: one row per result, or one summary row for commands
    whose payload is a single report."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    results = doc["results"]
    if results:
        header = list(results[0].keys())
        writer.writerow(header)
        for row in results:
            writer.writerow([_flatten(row.get(key)) for key in header])
    else:
        header = list(doc["summary"].keys())
        writer.writerow(header)
        writer.writerow([_flatten(doc["summary"][key]) for key in header])
    return out.getvalue()
