"""Poset file formats.

Text (``.poset``)::

    # optional comments
    elements: a b c
    a < b
    b < c

JSON (``.json``): ``{"elements": [...], "less_than": [[a, b], ...]}`` with
an optional ``"name"``.  Relations may be any strict pairs; the order is
their transitive closure.  Serialization writes Hasse covers only.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import PosetSyntaxError
from .poset import Poset, covers, poset_from_relations


def parse_poset(text: str) -> Poset:
    labels = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("elements:"):
            if labels is not None:
                raise PosetSyntaxError("second 'elements:' line", lineno)
            labels = line[len("elements:"):].split()
            continue
        if labels is None:
            raise PosetSyntaxError("relation before the 'elements:' line", lineno)
        parts = [p.strip() for p in line.split("<")]
        if len(parts) != 2 or not all(parts) or any(len(p.split()) != 1 for p in parts):
            raise PosetSyntaxError(f"expected 'A < B', got {raw.strip()!r}", lineno)
        relations.append((parts[0], parts[1]))
    if labels is None:
        raise PosetSyntaxError("missing 'elements:' line")
    return poset_from_relations(labels, relations)


def _check_label(label: str):
    if not label or any(c.isspace() for c in label) or "<" in label or "#" in label:
        raise ValueError(f"label {label!r} cannot be written to a poset file")


def serialize_poset(X: Poset, name: str | None = None) -> str:
    for lbl in X.labels:
        _check_label(lbl)
    lines = []
    if name:
        lines.append(f"# {name}")
    lines.append("elements: " + " ".join(X.labels))
    for i, j in sorted(covers(X)):
        lines.append(f"{X.labels[i]} < {X.labels[j]}")
    return "\n".join(lines) + "\n"


def poset_to_dict(X: Poset, name: str | None = None) -> dict:
    d = {"elements": list(X.labels),
         "less_than": [[X.labels[i], X.labels[j]] for i, j in sorted(covers(X))]}
    if name:
        d = {"name": name, **d}
    return d


def poset_from_dict(data: dict) -> Poset:
    if not isinstance(data, dict) or "elements" not in data:
        raise PosetSyntaxError("JSON poset needs an 'elements' array")
    pairs = data.get("less_than", [])
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise PosetSyntaxError(f"bad relation {pair!r}")
    return poset_from_relations(data["elements"], [tuple(p) for p in pairs])


def load_poset(path) -> Poset:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PosetSyntaxError(str(exc.msg), exc.lineno) from None
        return poset_from_dict(data)
    return parse_poset(text)


def save_poset(path, X: Poset, name: str | None = None):
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(poset_to_dict(X, name), indent=2) + "\n")
    else:
        path.write_text(serialize_poset(X, name))
