"""JSON model files.

Schema (integers are decimal strings)::

    {
      "name": "X_phi",
      "basis": ["E000", ..., "L3"],
      "triple_products": [{"t": ["E000", "E000", "E000"], "v": "9"}, ...],
      "c2": {"E000": "-6", ...},
      "surfaces": {"E000": {"k2": "9", "e": "3"}, ...},
      "params": ["x", "y", "z"],
      "templates": {"H_phi": {"E000": "-1", ..., "L1": "x"}},
      "extra_classes": {"D_ijl": {"d3": "-3", "dc2": "18"}}
    }

Unlisted triple products are zero; permutations of a listed triple get
the same value; the same sorted triple listed twice with different values
is an error.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .chern import ChernPair, SurfaceInvariants
from .errors import Cy3Error, SchemaError, ValidationError
from .exact import parse_poly
from .forms import Basis, DivisorExpr, LinearForm, TrilinearForm
from .models import AmpleTemplate, ThreefoldModel, model_x_phi, model_x_t

BUILTINS = {"x_phi": model_x_phi, "x_t": model_x_t}

_INT = re.compile(r"-?\d+\Z")
_KEYS = ("name", "basis", "triple_products", "c2", "surfaces", "params", "templates", "extra_classes")


def _int(value: Any, where: str) -> int:
    if isinstance(value, str) and _INT.match(value.strip()):
        return int(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise SchemaError(f"{where}: expected an integer as a decimal string, got {value!r}")


def _expect(value: Any, kind: type, where: str):
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def model_from_dict(doc: Any) -> ThreefoldModel:
    _expect(doc, dict, "<root>")
    unknown = sorted(set(doc) - set(_KEYS))
    if unknown:
        raise SchemaError(f"{unknown[0]}: unknown top-level key")
    for key in ("name", "basis"):
        if key not in doc:
            raise SchemaError(f"{key}: missing required key")
    name = _expect(doc["name"], str, "name")
    labels = _expect(doc["basis"], list, "basis")
    for i, l in enumerate(labels):
        _expect(l, str, f"basis[{i}]")
    try:
        basis = Basis(tuple(labels))
    except ValidationError as exc:
        raise SchemaError(f"basis: {exc}") from None

    def label(l, where):
        _expect(l, str, where)
        if l not in basis:
            raise SchemaError(f"{where}: unknown basis label {l!r}")
        return l

    entries: dict[tuple, int] = {}
    for i, item in enumerate(_expect(doc.get("triple_products", []), list, "triple_products")):
        where = f"triple_products[{i}]"
        _expect(item, dict, where)
        triple = _expect(item.get("t"), list, f"{where}.t")
        if len(triple) != 3:
            raise SchemaError(f"{where}.t: expected three labels")
        key = basis.sort_triple([label(l, f"{where}.t") for l in triple])
        value = _int(item.get("v"), f"{where}.v")
        if key in entries and entries[key] != value:
            raise SchemaError(f"{where}: contradicts an earlier value {entries[key]} for {list(key)}")
        entries[key] = value
    cup = TrilinearForm(basis, entries)

    c2 = {label(l, f"c2.{l}"): _int(v, f"c2.{l}") for l, v in _expect(doc.get("c2", {}), dict, "c2").items()}

    surfaces = {}
    for l, s in _expect(doc.get("surfaces", {}), dict, "surfaces").items():
        label(l, f"surfaces.{l}")
        _expect(s, dict, f"surfaces.{l}")
        surfaces[l] = SurfaceInvariants(l, _int(s.get("k2"), f"surfaces.{l}.k2"), _int(s.get("e"), f"surfaces.{l}.e"))

    params = _expect(doc.get("params", []), list, "params")
    templates = {}
    for tname, coeffs in _expect(doc.get("templates", {}), dict, "templates").items():
        _expect(coeffs, dict, f"templates.{tname}")
        parsed = {}
        for l, text in coeffs.items():
            where = f"templates.{tname}.{l}"
            label(l, where)
            try:
                parsed[l] = parse_poly(_expect(text, str, where))
            except Cy3Error as exc:
                raise SchemaError(f"{where}: {exc}") from None
        expr = DivisorExpr(basis, parsed)
        undeclared = [v for v in expr.parameters if v not in params]
        if undeclared:
            raise SchemaError(f"templates.{tname}: parameters {undeclared} not declared in params")
        used = tuple(p for p in params if p in expr.parameters)
        templates[tname] = AmpleTemplate(tname, expr, used)

    extra = {}
    for l, p in _expect(doc.get("extra_classes", {}), dict, "extra_classes").items():
        _expect(p, dict, f"extra_classes.{l}")
        extra[l] = ChernPair(_int(p.get("d3"), f"extra_classes.{l}.d3"), _int(p.get("dc2"), f"extra_classes.{l}.dc2"))

    return ThreefoldModel(
        name=name,
        basis=basis,
        cup=cup,
        c2=LinearForm(basis, c2),
        surfaces=surfaces,
        templates=templates,
        extra_classes=extra,
    )


def model_to_dict(model: ThreefoldModel) -> dict:
    params: list[str] = []
    for t in model.templates.values():
        params += [p for p in t.params if p not in params]
    return {
        "name": model.name,
        "basis": list(model.basis.labels),
        "triple_products": [{"t": list(k), "v": str(v)} for k, v in model.cup.entries.items()],
        "c2": {l: str(v) for l, v in model.c2.entries.items()},
        "surfaces": {
            l: {"k2": str(model.surfaces[l].k_squared), "e": str(model.surfaces[l].euler)}
            for l in model.basis
            if l in model.surfaces
        },
        "params": params,
        "templates": {n: {l: str(c) for l, c in t.expr.coeffs.items()} for n, t in model.templates.items()},
        "extra_classes": {
            l: {"d3": str(p.numeric()[0]), "dc2": str(p.numeric()[1])} for l, p in model.extra_classes.items()
        },
    }


def dumps_model(model: ThreefoldModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, ensure_ascii=True) + "\n"


def loads_model(text: str) -> ThreefoldModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"<root>: invalid JSON ({exc})") from None
    return model_from_dict(doc)


def load_model(ref: str) -> ThreefoldModel:
    """``builtin:x_phi``, ``builtin:x_t`` or a path to a model file."""
    if ref.startswith("builtin:"):
        key = ref.split(":", 1)[1]
        if key not in BUILTINS:
            raise SchemaError(f"unknown built-in model {key!r} (have {sorted(BUILTINS)})")
        return BUILTINS[key]()
    return loads_model(Path(ref).read_text(encoding="utf-8"))


def resolve_divisor(model: ThreefoldModel, spec: str) -> DivisorExpr:
    """``template:NAME`` or a divisor written in the model's labels."""
    if spec.startswith("template:"):
        return model.template(spec.split(":", 1)[1]).expr
    return DivisorExpr.parse(model.basis, spec)


def parse_assignment(items) -> dict[str, int]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise SchemaError(f"{item!r}: expected NAME=INT")
        out[name.strip()] = _int(value, name.strip())
    return out

