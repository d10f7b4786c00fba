"""Canonical JSON report documents.

Exact integers and rationals become decimal strings and polynomials their
canonical text, keys are sorted, and the layout is fixed, so identical runs
give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .exact import IntMatrix, MultiPoly
from .forms import DivisorExpr


def canonical(value: Any) -> Any:
    """Convert engine values into a JSON tree with exact numbers as strings."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (Fraction, MultiPoly, DivisorExpr)):
        return str(value)
    if isinstance(value, IntMatrix):
        return [[str(v) for v in row] for row in value.entries]
    if is_dataclass(value):
        return {f.name: canonical(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, Mapping):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [canonical(v) for v in value]
        return sorted(items, key=json.dumps) if isinstance(value, (set, frozenset)) else items
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(tree: Any) -> str:
    return json.dumps(tree, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def make_report(
    command: Sequence[str],
    inputs: Mapping[str, Any],
    results: Any,
    citations: Sequence[str] = (),
) -> dict:
    inputs_tree = canonical(inputs)
    digest = hashlib.sha256(dumps(inputs_tree).encode()).hexdigest()
    return {
        "command": list(command),
        "inputs_digest": digest,
        "results": canonical(results),
        "citations": list(citations),
    }
