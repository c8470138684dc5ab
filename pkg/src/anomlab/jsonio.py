"""Readers and writers for the on-disk JSON formats.

Matrices: {"rows": n, "cols": m, "data": [[re, im], ...]} with row-major
data of exactly rows*cols entries. Frames add "plus_dim". Polarizations
are {"dim": n, "plus_dim": k}. Groupoids carry object labels, arrow
records {"id", "src", "tgt"}, and compose triples [x, y, xy] over arrow
ids. Cocycles are {"modulus": N, "values": [[x, y, k], ...]} (k an
exponent; with modulus null, k is an [re, im] pair). Covers bundle a
group table, a right action, charts, transition records, and local
cocycle records; see the README for the field-by-field layout.

Schema violations raise FormatError; mathematically invalid content
raises the owning module's domain errors.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import FormatError
from .grassmann import Frame
from .groupoid import (
    FiniteGroup,
    FiniteGroupoid,
    LocalExtensionData,
    PhaseCocycle,
    group_axioms_check,
    groupoid_from_compose,
)
from .linalg import Polarization


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _expect(obj, key, kinds, where):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    val = obj[key]
    if kinds is not None and not isinstance(val, kinds):
        raise FormatError(f"{where}: key {key!r} has wrong type {type(val).__name__}")
    return val


def matrix_to_obj(m) -> dict:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise FormatError(f"matrix must be 2-d, got ndim={arr.ndim}")
    data = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    return {"rows": int(arr.shape[0]), "cols": int(arr.shape[1]), "data": data}


def matrix_from_obj(obj) -> np.ndarray:
    rows = _expect(obj, "rows", int, "matrix")
    cols = _expect(obj, "cols", int, "matrix")
    data = _expect(obj, "data", list, "matrix")
    if rows < 0 or cols < 0:
        raise FormatError("matrix: negative dimensions")
    if len(data) != rows * cols:
        raise FormatError(
            f"matrix: data has {len(data)} entries, expected {rows * cols}"
        )
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, entry in enumerate(data):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, (int, float)) for x in entry)
        ):
            raise FormatError(f"matrix: entry {i} is not an [re, im] pair")
        out[i] = complex(entry[0], entry[1])
    if not np.all(np.isfinite(out.view(np.float64))):
        raise FormatError("matrix: entries must be finite")
    return out.reshape(rows, cols)


def polarization_from_obj(obj) -> Polarization:
    dim = _expect(obj, "dim", int, "polarization")
    plus = _expect(obj, "plus_dim", int, "polarization")
    return Polarization(dim=dim, plus_dim=plus)


def polarization_to_obj(pol: Polarization) -> dict:
    return {"dim": pol.dim, "plus_dim": pol.plus_dim}


def frame_to_obj(frame: Frame) -> dict:
    obj = matrix_to_obj(frame.matrix)
    obj["plus_dim"] = frame.pol.plus_dim
    return obj


def frame_from_obj(obj) -> Frame:
    m = matrix_from_obj(obj)
    plus = _expect(obj, "plus_dim", int, "frame")
    if m.shape[1] != plus:
        raise FormatError(
            f"frame: matrix has {m.shape[1]} columns but plus_dim is {plus}"
        )
    return Frame(Polarization(dim=m.shape[0], plus_dim=plus), m)


def group_to_obj(group: FiniteGroup) -> dict:
    return {
        "elements": [_label(e) for e in group.elements],
        "mult": [list(row) for row in group.mult],
    }


def group_from_obj(obj) -> FiniteGroup:
    elements = _expect(obj, "elements", list, "group")
    mult = _expect(obj, "mult", list, "group")
    n = len(elements)
    if len(mult) != n or any(not isinstance(r, list) or len(r) != n for r in mult):
        raise FormatError("group: mult table must be n x n")
    table = []
    for row in mult:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise FormatError(f"group: mult entry {v!r} out of range")
        table.append(tuple(row))
    identity = None
    for e in range(n):
        if all(table[e][i] == i and table[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise FormatError("group: no identity element in mult table")
    inverse = []
    for i in range(n):
        invs = [j for j in range(n) if table[i][j] == identity and table[j][i] == identity]
        if len(invs) != 1:
            raise FormatError(f"group: element {i} has {len(invs)} inverses")
        inverse.append(invs[0])
    group = FiniteGroup(
        elements=tuple(elements), mult=tuple(table), identity=identity, inverse=tuple(inverse)
    )
    bad = group_axioms_check(group)
    if bad:
        raise FormatError("group: " + bad[0])
    return group


def _label(x):
    if isinstance(x, (list, tuple)):
        return [_label(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    return str(x)


def groupoid_to_obj(g: FiniteGroupoid) -> dict:
    return {
        "objects": [_label(o) for o in g.objects],
        "arrows": [
            {"id": i, "src": g.source[i], "tgt": g.target[i]} for i in range(g.n_arrows)
        ],
        "compose": [[x, y, xy] for (x, y), xy in sorted(g.compose.items())],
    }


def groupoid_from_obj(obj) -> FiniteGroupoid:
    objects = _expect(obj, "objects", list, "groupoid")
    arrow_recs = _expect(obj, "arrows", list, "groupoid")
    compose_recs = _expect(obj, "compose", list, "groupoid")
    n_obj = len(objects)
    ids = []
    source, target = [], []
    for i, rec in enumerate(arrow_recs):
        aid = _expect(rec, "id", None, f"groupoid arrow {i}")
        src = _expect(rec, "src", int, f"groupoid arrow {i}")
        tgt = _expect(rec, "tgt", int, f"groupoid arrow {i}")
        if not 0 <= src < n_obj or not 0 <= tgt < n_obj:
            raise FormatError(f"groupoid arrow {i}: endpoint out of range")
        if isinstance(aid, (list, dict)):
            raise FormatError(f"groupoid arrow {i}: id must be scalar")
        ids.append(aid)
        source.append(src)
        target.append(tgt)
    if len(set(ids)) != len(ids):
        raise FormatError("groupoid: duplicate arrow ids")
    pos = {aid: i for i, aid in enumerate(ids)}
    compose = {}
    for i, triple in enumerate(compose_recs):
        if not isinstance(triple, list) or len(triple) != 3:
            raise FormatError(f"groupoid compose entry {i}: expected [x, y, xy]")
        try:
            x, y, xy = (pos[t] for t in triple)
        except KeyError as exc:
            raise FormatError(f"groupoid compose entry {i}: unknown arrow id {exc}") from None
        if (x, y) in compose:
            raise FormatError(f"groupoid compose entry {i}: duplicate pair")
        compose[(x, y)] = xy
    return groupoid_from_compose(objects, ids, source, target, compose)


def cocycle_to_obj(g: FiniteGroupoid, c: PhaseCocycle) -> dict:
    values = []
    for (x, y) in sorted(c.values):
        v = c.values[(x, y)]
        if c.continuous:
            values.append([x, y, [float(complex(v).real), float(complex(v).imag)]])
        else:
            values.append([x, y, int(v)])
    return {"modulus": c.modulus, "values": values}


def cocycle_from_obj(obj, g: FiniteGroupoid) -> PhaseCocycle:
    if "modulus" not in obj:
        raise FormatError("cocycle: missing key 'modulus'")
    modulus = obj["modulus"]
    recs = _expect(obj, "values", list, "cocycle")
    values = {}
    for i, rec in enumerate(recs):
        if not isinstance(rec, list) or len(rec) != 3:
            raise FormatError(f"cocycle entry {i}: expected [x, y, value]")
        x, y, val = rec
        if not isinstance(x, int) or not isinstance(y, int):
            raise FormatError(f"cocycle entry {i}: arrow indices must be integers")
        if not 0 <= x < g.n_arrows or not 0 <= y < g.n_arrows:
            raise FormatError(f"cocycle entry {i}: arrow index out of range")
        if modulus is None:
            if not isinstance(val, list) or len(val) != 2:
                raise FormatError(f"cocycle entry {i}: continuous value must be [re, im]")
            values[(x, y)] = complex(val[0], val[1])
        else:
            if not isinstance(val, int):
                raise FormatError(f"cocycle entry {i}: exponent must be an integer")
            values[(x, y)] = val
    if modulus is not None and not isinstance(modulus, int):
        raise FormatError("cocycle: modulus must be an integer or null")
    return PhaseCocycle(modulus, values)


def cover_to_obj(data: LocalExtensionData, modulus: int, source_cocycle=None) -> dict:
    obj = {
        "modulus": int(modulus),
        "group": group_to_obj(data.group),
        "points": [_label(p) for p in data.points],
        "action": [list(row) for row in data.action],
        "charts": [sorted(chart) for chart in data.cover],
        "transitions": [
            {"a": a, "b": b, "g": g, "x": x, "k": int(k)}
            for (a, b, g, x), k in sorted(data.phi.items())
        ],
        "local_cocycles": [
            {"a": a, "b": b, "c": c, "f": f, "g": g, "x": x, "k": int(k)}
            for (a, b, c, f, g, x), k in sorted(data.omega.items())
        ],
    }
    if source_cocycle is not None:
        obj["source_cocycle"] = [
            [x, y, int(k)] for (x, y), k in sorted(source_cocycle.items())
        ]
    return obj


def cover_from_obj(obj):
    """Returns (LocalExtensionData, modulus, source_values_or_None)."""
    modulus = _expect(obj, "modulus", int, "cover")
    group = group_from_obj(_expect(obj, "group", dict, "cover"))
    points = _expect(obj, "points", list, "cover")
    action = _expect(obj, "action", list, "cover")
    if len(action) != len(points) or any(
        not isinstance(row, list) or len(row) != group.order for row in action
    ):
        raise FormatError("cover: action table must be |points| x |group|")
    charts_raw = _expect(obj, "charts", list, "cover")
    charts = []
    for i, chart in enumerate(charts_raw):
        if not isinstance(chart, list) or not all(
            isinstance(v, int) and 0 <= v < group.order for v in chart
        ):
            raise FormatError(f"cover: chart {i} must list group element indices")
        charts.append(set(chart))
    phi = {}
    for i, rec in enumerate(_expect(obj, "transitions", list, "cover")):
        keys = ("a", "b", "g", "x", "k")
        if not isinstance(rec, dict) or any(k not in rec for k in keys):
            raise FormatError(f"cover: transition {i} missing fields")
        phi[(rec["a"], rec["b"], rec["g"], rec["x"])] = int(rec["k"])
    omega = {}
    for i, rec in enumerate(_expect(obj, "local_cocycles", list, "cover")):
        keys = ("a", "b", "c", "f", "g", "x", "k")
        if not isinstance(rec, dict) or any(k not in rec for k in keys):
            raise FormatError(f"cover: local cocycle {i} missing fields")
        omega[(rec["a"], rec["b"], rec["c"], rec["f"], rec["g"], rec["x"])] = int(rec["k"])
    data = LocalExtensionData(
        group=group, points=points, action=action, cover=charts, phi=phi, omega=omega
    )
    source = None
    if "source_cocycle" in obj:
        source = {}
        for i, rec in enumerate(obj["source_cocycle"]):
            if not isinstance(rec, list) or len(rec) != 3:
                raise FormatError(f"cover: source cocycle entry {i} malformed")
            source[(rec[0], rec[1])] = int(rec[2])
    return data, modulus, source
