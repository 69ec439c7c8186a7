"""JSON encoding of spaces, correspondences, chains and reports.

Points are strings, or nested lists for product points.  A space reference
is either an inline object ``{"points", "leq", "t0"}``, a built-in name
(``"pt"``, ``"delta:N"``, ``"interval:K"``, ``"discrete:a,b,..."``) or a
path to a JSON file holding a space.  All list outputs are canonically
sorted so reports are byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from mvhom.chain import Chain
from mvhom.corr import Corr
from mvhom.finspace import FinSpace, discrete, make_space, point_key, point_space, sort_points
from mvhom.simplicial import delta_fin, interval_fin


class FormatError(ValueError):
    """Malformed input document."""


def encode_point(p):
    if isinstance(p, tuple):
        return [encode_point(q) for q in p]
    return p


def decode_point(p):
    if isinstance(p, list):
        return tuple(decode_point(q) for q in p)
    if isinstance(p, (str, int)) and not isinstance(p, bool):
        return p
    raise FormatError(f"bad point identifier: {p!r}")


def builtin_space(name: str) -> FinSpace | None:
    if name == "pt":
        return point_space()
    kind, _, arg = name.partition(":")
    try:
        if kind == "delta" and arg:
            return delta_fin(int(arg))
        if kind == "interval" and arg:
            return interval_fin(int(arg))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if kind == "discrete" and arg:
        return discrete(arg.split(","), label=name)
    return None


def space_to_json(space: FinSpace) -> dict:
    return {
        "points": [encode_point(p) for p in sort_points(space.points)],
        "leq": [
            [encode_point(x), encode_point(y)]
            for x, y in sorted(space.leq, key=point_key)
            if x != y
        ],
        "t0": bool(space.t0),
    }


def space_ref(space: FinSpace):
    """Built-in name when one applies, else the inline object."""
    label = space.label
    if label:
        b = builtin_space(label)
        if b is not None and b == space:
            return label
    return space_to_json(space)


def space_from_json(obj, base: Path | None = None) -> FinSpace:
    if isinstance(obj, str):
        b = builtin_space(obj)
        if b is not None:
            return b
        path = Path(obj) if base is None else base / obj
        if not path.exists():
            raise FormatError(f"unknown space reference {obj!r}")
        return space_from_json(load_json(path), path.parent)
    if not isinstance(obj, dict) or "points" not in obj:
        raise FormatError("space must be an object with 'points'")
    try:
        points = [decode_point(p) for p in obj["points"]]
        pairs = [(decode_point(x), decode_point(y)) for x, y in obj.get("leq", [])]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad space description: {exc}") from None
    return make_space(points, pairs, t0=bool(obj.get("t0", False)))


def pairs_to_json(graph) -> list:
    return [[encode_point(x), encode_point(y)] for x, y in sorted(graph, key=point_key)]


def pairs_from_json(pairs) -> frozenset:
    try:
        return frozenset((decode_point(x), decode_point(y)) for x, y in pairs)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad pair list: {exc}") from None


def corr_to_json(t: Corr) -> dict:
    return {"source": space_ref(t.source), "target": space_ref(t.target), "pairs": pairs_to_json(t.graph)}


def corr_parts_from_json(obj, base: Path | None = None):
    """``(source, target, graph)`` without validating the graph."""
    if not isinstance(obj, dict) or not {"source", "target", "pairs"} <= obj.keys():
        raise FormatError("correspondence needs 'source', 'target' and 'pairs'")
    return space_from_json(obj["source"], base), space_from_json(obj["target"], base), pairs_from_json(obj["pairs"])


def corr_from_json(obj, base: Path | None = None) -> Corr:
    return Corr(*corr_parts_from_json(obj, base))


def chain_to_json(c: Chain) -> dict:
    return {
        "degree": c.degree,
        "terms": [{"simplex": corr_to_json(s), "coeff": k} for s, k in c.items()],
    }


def chain_from_json(obj, base: Path | None = None) -> Chain:
    if not isinstance(obj, dict) or "degree" not in obj:
        raise FormatError("chain needs 'degree' and 'terms'")
    terms = []
    for term in obj.get("terms", []):
        terms.append((corr_from_json(term["simplex"], base), int(term["coeff"])))
    return Chain(int(obj["degree"]), terms)


def load_json(path) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
