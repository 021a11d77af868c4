"""JSON wire formats for matrices, factor sequences, networks and seeds."""

from __future__ import annotations

import json
from typing import Any, Mapping

from .cluster import Quiver, Seed
from .jacobi import JacobiFactor, Kind
from .network import Chip, PlanarNetwork
from .numeric import GaussianRational, Matrix, ScalarSyntaxError, format_scalar, parse_scalar


class FormatError(ValueError):
    pass


def _scalar(x, where: str) -> GaussianRational:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"{where}: expected an exact scalar string, got {x!r}")
    if isinstance(x, int):
        return GaussianRational(x)
    if not isinstance(x, str):
        raise FormatError(f"{where}: expected a string, got {type(x).__name__}")
    try:
        return parse_scalar(x)
    except ScalarSyntaxError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def matrix_from_json(obj: Any) -> Matrix:
    if not isinstance(obj, Mapping):
        raise FormatError("matrix JSON must be an object")
    try:
        n_rows, n_cols, entries = obj["n_rows"], obj["n_cols"], obj["entries"]
    except KeyError as exc:
        raise FormatError(f"matrix JSON is missing {exc.args[0]!r}") from None
    if not isinstance(entries, list) or len(entries) != n_rows:
        raise FormatError(f"expected {n_rows} rows of entries")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n_cols:
            raise FormatError(f"entries[{i}]: expected {n_cols} columns")
        rows.append([_scalar(x, f"entries[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix(rows)


def matrix_to_json(M: Matrix) -> dict:
    return {"n_rows": M.n_rows, "n_cols": M.n_cols, "entries": M.tolist()}


def factors_to_json(fs) -> list[dict]:
    return [{"kind": f.kind.value, "level": f.level, "param": format_scalar(f.param)} for f in fs]


def factors_from_json(obj: Any) -> list[JacobiFactor]:
    if not isinstance(obj, list):
        raise FormatError("factor sequence must be a JSON list")
    out = []
    for k, item in enumerate(obj):
        try:
            out.append(JacobiFactor(Kind(item["kind"]), int(item["level"]), _scalar(item["param"], f"[{k}].param")))
        except (KeyError, ValueError, TypeError) as exc:
            raise FormatError(f"factor [{k}]: {exc}") from exc
    return out


def network_to_json(net: PlanarNetwork) -> dict:
    return {
        "n": net.n,
        "chips": [{"kind": c.kind.value, "level": c.level, "weight": format_scalar(c.weight)} for c in net.chips],
    }


def network_from_json(obj: Any) -> PlanarNetwork:
    try:
        chips = [
            Chip(Kind(c["kind"]), int(c["level"]), _scalar(c["weight"], f"chips[{k}].weight"))
            for k, c in enumerate(obj["chips"])
        ]
        return PlanarNetwork(int(obj["n"]), tuple(chips))
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"network JSON: {exc}") from exc


def seed_to_json(t: Seed) -> dict:
    q = t.quiver
    return {
        "vertices": [
            {"id": str(v), "label": str(v), "mutable": v in q.mutable, "value": format_scalar(t.values[v])}
            for v in q.vertices
        ],
        "arrows": [[str(u), str(w)] for u, w in q.arrow_list()],
    }


def seed_from_json(obj: Any) -> Seed:
    try:
        verts = obj["vertices"]
        ids = [v["id"] for v in verts]
        q = Quiver(ids, [v["id"] for v in verts if v["mutable"]], [tuple(a) for a in obj["arrows"]])
        return Seed(q, {v["id"]: _scalar(v["value"], f"vertex {v['id']}") for v in verts})
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"seed JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
