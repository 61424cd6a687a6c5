"""Canonical run reports.

A report is a JSON tree with sorted keys. Everything except ``timing`` is a
deterministic function of inputs and configuration, so two runs can be
compared byte for byte with :func:`verdict_bytes`.
"""

from __future__ import annotations

import enum
import hashlib
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, enum.Enum):
        return to_jsonable(obj.value)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, Fraction)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if hasattr(obj, "entries"):
        return to_jsonable(obj.entries)
    return obj


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def make_report(command: str, inputs: list, config: dict, status: str = "ok", result=None,
                error=None, timing=None) -> dict:
    tree = {
        "tool": "bjgeom",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "config": config,
        "status": status,
        "result": result,
        "error": error,
    }
    tree = to_jsonable(tree)
    if timing is not None:
        tree["timing"] = to_jsonable(timing)
    return tree


def dumps(report: dict) -> str:
    """One line of canonical JSON."""
    return json.dumps(report, sort_keys=True, separators=(",", ":"), allow_nan=False)


def verdict_bytes(report: dict) -> bytes:
    body = {k: v for k, v in report.items() if k != "timing"}
    return dumps(body).encode()


def human(report: dict) -> str:
    lines = []

    def walk(node, indent):
        pad = "  " * indent
        if isinstance(node, dict):
            for k in sorted(node):
                v = node[k]
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_short(v)}")
        elif isinstance(node, list):
            for i, v in enumerate(node):
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}[{i}]")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_short(v)}")

    walk(report, 0)
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)
    return False


def _short(v) -> str:
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)
