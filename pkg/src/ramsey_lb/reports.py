"""Report envelope and the JSON Schemas every CLI artifact follows.

All artifacts share one envelope. ``generated_at`` is the only key whose value
depends on the wall clock; strip it and two runs with the same arguments
compare byte for byte.
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import Any

from . import __version__
from .formats import dumps

SCHEMA_VERSION = 1
TOOL = "ramsey-lb"
TIMESTAMP_KEY = "generated_at"

KINDS = ("geometry", "lfamily", "checkfree", "witness", "zarankiewicz", "predict", "audit", "selftest", "error")


def envelope(kind: str, run_config: dict, result: Any) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown report kind {kind!r}")
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "version": __version__,
        "kind": kind,
        "run_config": run_config,
        TIMESTAMP_KEY: datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
        "result": result,
    }


def render(report: dict) -> str:
    return dumps(report)


def strip_timestamp(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != TIMESTAMP_KEY}


_matrix = {"type": "array", "items": {"type": "array", "items": {"enum": [0, 1]}}}
_rational = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_status = {"enum": ["exact", "lower_bound", "incomplete"]}
_girth = {"anyOf": [{"type": "integer", "minimum": 3}, {"const": "infinity"}]}

_incidence = {
    "type": "object",
    "required": ["m", "n", "edges"],
    "properties": {
        "m": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
        "labels": {"type": "object"},
        "provenance": {"type": "object"},
    },
}

RESULT_SCHEMAS: dict[str, dict] = {
    "geometry": {
        "type": "object",
        "required": ["params", "girth", "incidence"],
        "properties": {
            "params": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
            "girth": _girth,
            "incidence": _incidence,
        },
    },
    "lfamily": {
        "type": "object",
        "required": ["F", "status", "patterns", "size"],
        "properties": {
            "F": {"type": "string"},
            "status": _status,
            "patterns": {"type": "array", "items": _matrix},
            "size": {"type": "integer", "minimum": 1},
            "decompositions": {"type": "integer"},
        },
    },
    "checkfree": {
        "type": "object",
        "required": ["free", "method"],
        "properties": {"free": {"type": "boolean"}, "method": {"enum": ["girth", "embedding"]}},
    },
    "witness": {
        "type": "object",
        "required": ["F", "witness", "alpha", "f_free", "certified", "ramsey_statement", "provenance"],
        "properties": {
            "F": {"type": "object", "required": ["name", "graph6"]},
            "witness": {
                "type": "object",
                "required": ["graph6", "order", "edges"],
                "properties": {"order": {"type": "integer", "minimum": 0}},
            },
            "sampled_vertices": {"type": "array", "items": {"type": "integer"}},
            "alpha": {
                "type": "object",
                "required": ["value", "status", "upper_bound", "independent_set"],
                "properties": {
                    "value": {"type": "integer", "minimum": 0},
                    "status": _status,
                    "upper_bound": {"type": "integer", "minimum": 0},
                },
            },
            "f_free": {"type": "boolean"},
            "certified": {"type": "boolean"},
            "ramsey_statement": {"type": ["string", "null"]},
            "provenance": {"type": "object", "required": ["seed", "p", "params", "rng"]},
        },
    },
    "zarankiewicz": {
        "type": "object",
        "required": ["m", "n", "value", "status", "matrix", "nodes_explored", "family_size"],
        "properties": {
            "value": {"type": "integer", "minimum": 0},
            "status": _status,
            "matrix": _matrix,
        },
    },
    "predict": {
        "type": "object",
        "required": ["theorem"],
        "properties": {
            "theorem": {"type": "string"},
            "t_exponent": {"anyOf": [_rational, {"type": "null"}]},
            "log_exponent": {"anyOf": [_rational, {"type": "null"}]},
            "constants": {"type": "string"},
        },
    },
    "audit": {
        "type": "object",
        "required": ["distribution"],
        "properties": {
            "distribution": {
                "type": "object",
                "required": ["set_size", "trials", "min_ratio", "histogram", "dyadic_classes"],
            },
            "container": {"type": "object", "required": ["checks", "violations"]},
        },
    },
    "selftest": {
        "type": "object",
        "required": ["checks", "passed", "failed"],
        "properties": {
            "checks": {
                "type": "array",
                "items": {"type": "object", "required": ["name", "ok"]},
            },
        },
    },
    "error": {
        "type": "object",
        "required": ["error"],
        "properties": {"error": {"type": "string"}, "witness": {"type": "object"}},
    },
}


def schema_for(kind: str) -> dict:
    """Full JSON Schema (draft 2020-12) of a report of the given kind."""
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": f"{TOOL}/{kind}/v{SCHEMA_VERSION}",
        "type": "object",
        "required": ["schema_version", "tool", "version", "kind", "run_config", TIMESTAMP_KEY, "result"],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "tool": {"const": TOOL},
            "version": {"type": "string"},
            "kind": {"const": kind},
            "run_config": {
                "type": "object",
                "required": ["command", "argv", "seed", "threads"],
            },
            TIMESTAMP_KEY: {"type": "string"},
            "result": RESULT_SCHEMAS[kind],
        },
    }
