"""JSON file formats for systems, representations, deformations and Nijenhuis operators."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import SuperSpace, TripleSystem
from .linalg import format_rational, parse_rational, zeros


class InputError(ValueError):
    """Malformed or semantically invalid input file."""


def _read(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _parity(raw, what="parity") -> tuple[int, ...]:
    if not isinstance(raw, list) or any(isinstance(p, bool) or p not in (0, 1) for p in raw):
        raise InputError(f"{what} must be a list of 0/1 entries, got {raw!r}")
    return tuple(raw)


def _index(x, n, what):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
        raise InputError(f"{what} index {x!r} out of range 0..{n - 1}")
    return x


def _scalar(x):
    try:
        return parse_rational(x)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def trilinear_from_entries(entries, n: int, what="brackets") -> np.ndarray:
    """Dense ``(n,n,n,n)`` tensor from ``[{"args":[i,j,k], "value":{"l":"p/q"}}, ...]``."""
    c = zeros((n,) * 4)
    seen = set()
    if not isinstance(entries, list):
        raise InputError(f"{what} must be a list")
    for item in entries:
        if not isinstance(item, dict) or "args" not in item or "value" not in item:
            raise InputError(f"{what} entry needs 'args' and 'value': {item!r}")
        args = item["args"]
        if not isinstance(args, list) or len(args) != 3:
            raise InputError(f"{what} args must be a triple, got {args!r}")
        i, j, k = (_index(a, n, what) for a in args)
        value = item["value"]
        if not isinstance(value, dict):
            raise InputError(f"{what} value must be an object mapping index -> rational")
        for key, raw in value.items():
            try:
                l = int(key)
            except ValueError as exc:
                raise InputError(f"{what}: bad output index {key!r}") from exc
            _index(l, n, what)
            if (i, j, k, l) in seen:
                raise InputError(f"{what}: duplicate entry for (i,j,k,l)={(i, j, k, l)}")
            seen.add((i, j, k, l))
            c[i, j, k, l] = _scalar(raw)
    return c


def trilinear_to_entries(c) -> list[dict]:
    n = c.shape[0]
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                vals = {str(l): format_rational(c[i, j, k, l]) for l in range(n) if c[i, j, k, l]}
                if vals:
                    out.append({"args": [i, j, k], "value": vals})
    return out


def system_from_dict(doc: dict, where="system") -> TripleSystem:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    for key in ("delta", "parity"):
        if key not in doc:
            raise InputError(f"{where}: missing field {key!r}")
    delta = doc["delta"]
    if isinstance(delta, bool) or delta not in (1, -1):
        raise InputError(f"{where}: delta must be 1 or -1, got {delta!r}")
    parity = _parity(doc["parity"])
    n = len(parity)
    basis = doc.get("basis") or ()
    if basis and (not isinstance(basis, list) or len(basis) != n):
        raise InputError(f"{where}: basis must list {n} labels")
    c = trilinear_from_entries(doc.get("brackets", []), n)
    return TripleSystem(SuperSpace(parity), delta, c, name=doc.get("name", ""), basis=tuple(basis))


def system_to_dict(T: TripleSystem) -> dict:
    return {
        "name": T.name,
        "delta": T.delta,
        "parity": list(T.parity),
        "basis": list(T.basis),
        "brackets": trilinear_to_entries(T.c),
    }


def load_system(path) -> TripleSystem:
    return system_from_dict(_read(path), where=str(path))


def dump_system(T: TripleSystem, path) -> None:
    Path(path).write_text(json.dumps(system_to_dict(T), indent=2) + "\n")


def _resolve_system(raw, base: Path) -> TripleSystem:
    if isinstance(raw, str):
        p = Path(raw)
        if not p.is_absolute():
            p = base / p
        return load_system(p)
    return system_from_dict(raw)


def _matrix(raw, rows, cols, what):
    if not isinstance(raw, list) or len(raw) != rows:
        raise InputError(f"{what} must have {rows} rows")
    m = zeros((rows, cols))
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{what} row {i} must have {cols} entries")
        for j, x in enumerate(row):
            m[i, j] = _scalar(x)
    return m


def matrix_to_json(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in np.asarray(m)]


def representation_from_dict(T: TripleSystem, doc: dict, where="representation"):
    from .cohomology import Representation

    if not isinstance(doc, dict) or "module_parity" not in doc:
        raise InputError(f"{where}: missing 'module_parity'")
    module = SuperSpace(_parity(doc["module_parity"], "module_parity"))
    n, m = T.dim, module.dim
    theta = zeros((n, n, m, m))
    seen = set()
    for item in doc.get("theta", []):
        if not isinstance(item, dict) or "args" not in item or "matrix" not in item:
            raise InputError(f"{where}: theta entries need 'args' and 'matrix'")
        args = item["args"]
        if not isinstance(args, list) or len(args) != 2:
            raise InputError(f"{where}: theta args must be a pair")
        i, j = (_index(a, n, "theta") for a in args)
        if (i, j) in seen:
            raise InputError(f"{where}: duplicate theta entry {args}")
        seen.add((i, j))
        theta[i, j] = _matrix(item["matrix"], m, m, f"theta{args}")
    try:
        return Representation(T, module, theta)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def representation_to_dict(rep) -> dict:
    n = rep.system.dim
    out = []
    for i in range(n):
        for j in range(n):
            if np.any(rep.theta[i, j] != 0):
                out.append({"args": [i, j], "matrix": matrix_to_json(rep.theta[i, j])})
    return {"module_parity": list(rep.module.parity), "theta": out}


def load_representation(T: TripleSystem, path):
    return representation_from_dict(T, _read(path), where=str(path))


def load_deformation(path):
    from .deformation import FormalDeformation

    doc = _read(path)
    if "system" not in doc:
        raise InputError(f"{path}: missing 'system'")
    T = _resolve_system(doc["system"], Path(path).parent)
    orders = {}
    for term in doc.get("terms", []):
        order = term.get("order")
        if isinstance(order, bool) or not isinstance(order, int) or order < 1:
            raise InputError(f"{path}: term order must be a positive integer")
        if order in orders:
            raise InputError(f"{path}: duplicate term of order {order}")
        orders[order] = trilinear_from_entries(term.get("values", []), T.dim, f"term {order}")
    top = max(orders, default=0)
    terms = [orders.get(i, zeros((T.dim,) * 4)) for i in range(1, top + 1)]
    return FormalDeformation(T, terms)


def deformation_to_dict(fd) -> dict:
    return {
        "system": system_to_dict(fd.base),
        "terms": [
            {"order": i + 1, "values": trilinear_to_entries(f)} for i, f in enumerate(fd.terms)
        ],
    }


def load_trilinear(T: TripleSystem, path) -> np.ndarray:
    """A bare trilinear map file: ``{"values": [...]}`` or a bare entry list."""
    doc = _read(path)
    entries = doc.get("values", []) if isinstance(doc, dict) else doc
    return trilinear_from_entries(entries, T.dim, str(path))


def load_nijenhuis(path):
    doc = _read(path)
    if "system" not in doc or "N" not in doc:
        raise InputError(f"{path}: needs 'system' and 'N'")
    T = _resolve_system(doc["system"], Path(path).parent)
    N = _matrix(doc["N"], T.dim, T.dim, "N")
    return T, N
