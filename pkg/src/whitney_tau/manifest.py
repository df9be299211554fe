"""JSON manifests for diagrams, pi_2 data and ring elements.

Single-sphere diagram::

    {
      "group": "cyclic:t:0",
      "double_points": [{"id": "p+", "sign": 1, "g": "t^3"}, ...],
      "disks": [{"id": "W", "positive": "p+", "negative": "p-", "g": "t^3",
                 "framing": 0, "interior": [{"sign": 1, "h": "t^4"}]}],
      "crossings": [{"disk_a": "W", "arc_a": 1, "disk_b": "V", "arc_b": -1,
                     "agree": true}],
      "pi2": [{"name": "f", "kind": "sphere", "lambda": "0", "omega2": 0}],
      "unframed": false,
      "normal_bundle_trivial": false
    }

A multi-sphere diagram has ``n``; double points carry ``spheres`` instead
of ``g``; disks carry ``spheres``, ``g_plus`` and ``g_minus``; interior
points carry ``sheet``; ``lambda`` is an object keyed by sphere index and
``normal_bundle_trivial`` is a list with one flag per sphere.  Crossings
are not allowed there.

Unknown fields are rejected everywhere.  ``emit_*`` writes every field in
a fixed order, so emit -> parse -> emit is byte-identical.
"""
from __future__ import annotations

import json
from typing import Any, Union

from .diagram import BoundaryCrossing, DoublePoint, InteriorPoint, WhitneyDiagram, WhitneyDisk
from .group import GroupError, GroupSpec, parse_word
from .multi import BasedDisk, MultiDiagram, MultiDoublePoint, SheetPoint
from .relations import Pi2ClassDatum, RelationError
from .ring import RingError, Single, format_element, parse_element


class ManifestError(ValueError):
    pass


def _fields(obj: Any, where: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(obj, dict):
        raise ManifestError(f"{where}: expected an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise ManifestError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ManifestError(f"{where}: missing field(s) {', '.join(missing)}")
    return obj


def _list(obj: Any, where: str) -> list:
    if not isinstance(obj, list):
        raise ManifestError(f"{where}: expected a list")
    return obj


def _int(obj: Any, where: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ManifestError(f"{where}: expected an integer")
    return obj


def _bool(obj: Any, where: str) -> bool:
    if not isinstance(obj, bool):
        raise ManifestError(f"{where}: expected true or false")
    return obj


def _str(obj: Any, where: str) -> str:
    if not isinstance(obj, str):
        raise ManifestError(f"{where}: expected a string")
    return obj


def _word(text: Any, spec: GroupSpec, where: str):
    try:
        return parse_word(_str(text, where), spec)
    except GroupError as exc:
        raise ManifestError(f"{where}: {exc}") from None


def _single_element(text: Any, spec: GroupSpec, where: str):
    try:
        x = parse_element(_str(text, where), spec)
    except (RingError, GroupError) as exc:
        raise ManifestError(f"{where}: {exc}") from None
    if x.terms and x.variant is not Single:
        raise ManifestError(f"{where}: expected an element of Z[pi]")
    return x


def parse_group(text: Any) -> GroupSpec:
    try:
        return GroupSpec.parse(_str(text, "group"))
    except (GroupError, ValueError) as exc:
        raise ManifestError(f"group: {exc}") from None


# ------------------------------------------------------------------ pi_2

def parse_pi2(items: Any, spec: GroupSpec, multi: bool = False) -> tuple:
    out = []
    for k, raw in enumerate(_list(items, "pi2")):
        where = f"pi2[{k}]"
        obj = _fields(raw, where, ("name",), ("kind", "lambda", "omega2", "element"))
        kind = _str(obj.get("kind", "sphere"), f"{where}.kind")
        lam_raw = obj.get("lambda", {} if multi else "0")
        lam = {}
        if isinstance(lam_raw, dict):
            for key, val in lam_raw.items():
                try:
                    idx = int(key)
                except ValueError:
                    raise ManifestError(f"{where}.lambda: sphere index {key!r}") from None
                lam[idx] = _single_element(val, spec, f"{where}.lambda.{key}")
        else:
            lam[1] = _single_element(lam_raw, spec, f"{where}.lambda")
        lam = {i: v for i, v in lam.items() if v}
        element = None
        if "element" in obj:
            element = _word(obj["element"], spec, f"{where}.element")
        try:
            out.append(Pi2ClassDatum(_str(obj["name"], f"{where}.name"), lam,
                                     _int(obj.get("omega2", 0), f"{where}.omega2"), kind, element))
        except RelationError as exc:
            raise ManifestError(f"{where}: {exc}") from None
    names = [d.name for d in out]
    if len(set(names)) != len(names):
        raise ManifestError("pi2: class names must be unique")
    return tuple(out)


def _emit_pi2(pi2, spec: GroupSpec, multi: bool, n: int = 1) -> list:
    out = []
    for d in pi2:
        obj: dict = {"name": d.name, "kind": d.kind}
        if multi:
            obj["lambda"] = {str(k): format_element(d.lam[k]) for k in sorted(d.lam) if d.lam[k]}
        else:
            obj["lambda"] = format_element(d.lam_for(1, spec))
        obj["omega2"] = d.omega2
        if d.element is not None:
            obj["element"] = str(d.element)
        out.append(obj)
    return out


# ---------------------------------------------------------- single sphere

_SINGLE_TOP = ("group", "double_points", "disks")
_SINGLE_OPT = ("crossings", "pi2", "unframed", "normal_bundle_trivial")


def diagram_from_dict(obj: Any) -> WhitneyDiagram:
    obj = _fields(obj, "manifest", _SINGLE_TOP, _SINGLE_OPT)
    spec = parse_group(obj["group"])
    points = []
    for k, raw in enumerate(_list(obj["double_points"], "double_points")):
        where = f"double_points[{k}]"
        p = _fields(raw, where, ("id", "sign", "g"))
        points.append(DoublePoint(_str(p["id"], f"{where}.id"), _int(p["sign"], f"{where}.sign"),
                                  _word(p["g"], spec, f"{where}.g")))
    disks = []
    for k, raw in enumerate(_list(obj["disks"], "disks")):
        where = f"disks[{k}]"
        w = _fields(raw, where, ("id", "positive", "negative", "g"), ("framing", "interior"))
        interior = []
        for q, x in enumerate(_list(w.get("interior", []), f"{where}.interior")):
            xw = f"{where}.interior[{q}]"
            x = _fields(x, xw, ("sign", "h"))
            interior.append(InteriorPoint(_int(x["sign"], f"{xw}.sign"), _word(x["h"], spec, f"{xw}.h")))
        disks.append(WhitneyDisk(_str(w["id"], f"{where}.id"), _str(w["positive"], f"{where}.positive"),
                                 _str(w["negative"], f"{where}.negative"), _word(w["g"], spec, f"{where}.g"),
                                 _int(w.get("framing", 0), f"{where}.framing"), tuple(interior)))
    crossings = []
    for k, raw in enumerate(_list(obj.get("crossings", []), "crossings")):
        where = f"crossings[{k}]"
        y = _fields(raw, where, ("disk_a", "arc_a", "disk_b", "arc_b"), ("agree",))
        crossings.append(BoundaryCrossing(_str(y["disk_a"], f"{where}.disk_a"), _int(y["arc_a"], f"{where}.arc_a"),
                                          _str(y["disk_b"], f"{where}.disk_b"), _int(y["arc_b"], f"{where}.arc_b"),
                                          _bool(y.get("agree", True), f"{where}.agree")))
    pi2 = parse_pi2(obj.get("pi2", []), spec)
    return WhitneyDiagram(spec, tuple(points), tuple(disks), tuple(crossings), pi2,
                          _bool(obj.get("unframed", False), "unframed"),
                          _bool(obj.get("normal_bundle_trivial", False), "normal_bundle_trivial"))


def diagram_to_dict(d: WhitneyDiagram) -> dict:
    return {
        "group": str(d.spec),
        "double_points": [{"id": p.id, "sign": p.sign, "g": str(p.g)} for p in d.double_points],
        "disks": [{"id": w.id, "positive": w.positive, "negative": w.negative, "g": str(w.g),
                   "framing": w.framing,
                   "interior": [{"sign": x.sign, "h": str(x.h)} for x in w.interior]}
                  for w in d.disks],
        "crossings": [{"disk_a": y.disk_a, "arc_a": y.arc_a, "disk_b": y.disk_b, "arc_b": y.arc_b,
                       "agree": y.agree} for y in d.crossings],
        "pi2": _emit_pi2(d.pi2, d.spec, False),
        "unframed": d.unframed,
        "normal_bundle_trivial": d.normal_bundle_trivial,
    }


# ----------------------------------------------------------- multi sphere

_MULTI_TOP = ("group", "n", "double_points", "disks")
_MULTI_OPT = ("pi2", "normal_bundle_trivial")


def _spheres(obj: Any, where: str) -> tuple:
    items = _list(obj, where)
    if len(items) != 2:
        raise ManifestError(f"{where}: expected two sphere indices")
    return tuple(_int(v, where) for v in items)


def multi_from_dict(obj: Any) -> MultiDiagram:
    if isinstance(obj, dict) and "crossings" in obj:
        raise ManifestError("crossings: multi-sphere diagrams need disjointly embedded disk boundaries")
    obj = _fields(obj, "manifest", _MULTI_TOP, _MULTI_OPT)
    spec = parse_group(obj["group"])
    n = _int(obj["n"], "n")
    points = []
    for k, raw in enumerate(_list(obj["double_points"], "double_points")):
        where = f"double_points[{k}]"
        p = _fields(raw, where, ("id", "sign", "spheres"))
        points.append(MultiDoublePoint(_str(p["id"], f"{where}.id"), _int(p["sign"], f"{where}.sign"),
                                       _spheres(p["spheres"], f"{where}.spheres")))
    disks = []
    for k, raw in enumerate(_list(obj["disks"], "disks")):
        where = f"disks[{k}]"
        w = _fields(raw, where, ("id", "spheres", "positive", "negative", "g_plus", "g_minus"),
                    ("framing", "interior"))
        interior = []
        for q, x in enumerate(_list(w.get("interior", []), f"{where}.interior")):
            xw = f"{where}.interior[{q}]"
            x = _fields(x, xw, ("sign", "sheet", "h"))
            interior.append(SheetPoint(_int(x["sign"], f"{xw}.sign"), _int(x["sheet"], f"{xw}.sheet"),
                                       _word(x["h"], spec, f"{xw}.h")))
        disks.append(BasedDisk(_str(w["id"], f"{where}.id"), _spheres(w["spheres"], f"{where}.spheres"),
                               _str(w["positive"], f"{where}.positive"), _str(w["negative"], f"{where}.negative"),
                               _word(w["g_plus"], spec, f"{where}.g_plus"),
                               _word(w["g_minus"], spec, f"{where}.g_minus"),
                               _int(w.get("framing", 0), f"{where}.framing"), tuple(interior)))
    pi2 = parse_pi2(obj.get("pi2", []), spec, multi=True)
    nbt = obj.get("normal_bundle_trivial", [False] * n)
    nbt = tuple(_bool(v, "normal_bundle_trivial") for v in _list(nbt, "normal_bundle_trivial"))
    if len(nbt) != n:
        raise ManifestError("normal_bundle_trivial: need one flag per sphere")
    return MultiDiagram(spec, n, tuple(points), tuple(disks), pi2, nbt)


def multi_to_dict(d: MultiDiagram) -> dict:
    return {
        "group": str(d.spec),
        "n": d.n,
        "double_points": [{"id": p.id, "sign": p.sign, "spheres": list(p.spheres)} for p in d.double_points],
        "disks": [{"id": w.id, "spheres": list(w.spheres), "positive": w.positive, "negative": w.negative,
                   "g_plus": str(w.g_plus), "g_minus": str(w.g_minus), "framing": w.framing,
                   "interior": [{"sign": x.sign, "sheet": x.sheet, "h": str(x.h)} for x in w.interior]}
                  for w in d.disks],
        "pi2": _emit_pi2(d.pi2, d.spec, True, d.n),
        "normal_bundle_trivial": list(d.normal_bundle_trivial),
    }


# ------------------------------------------------------------------ text

def parse_manifest(text: str) -> Union[WhitneyDiagram, MultiDiagram]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"not valid JSON: {exc}") from None
    if isinstance(obj, dict) and "n" in obj:
        return multi_from_dict(obj)
    return diagram_from_dict(obj)


def emit_manifest(d: Union[WhitneyDiagram, MultiDiagram]) -> str:
    obj = multi_to_dict(d) if isinstance(d, MultiDiagram) else diagram_to_dict(d)
    return json.dumps(obj, indent=2) + "\n"


def load_manifest(path: str) -> Union[WhitneyDiagram, MultiDiagram]:
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read())


def parse_element_file(text: str) -> dict:
    """``{"group": ..., "element": ..., "mode": framed|unframed, "n": int}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"not valid JSON: {exc}") from None
    obj = _fields(obj, "element file", ("group", "element"), ("mode", "n"))
    spec = parse_group(obj["group"])
    try:
        x = parse_element(_str(obj["element"], "element"), spec)
    except (RingError, GroupError) as exc:
        raise ManifestError(f"element: {exc}") from None
    mode = _str(obj.get("mode", "framed"), "mode")
    if mode not in ("framed", "unframed"):
        raise ManifestError(f"mode: expected framed or unframed, not {mode!r}")
    return {"spec": spec, "element": x, "unframed": mode == "unframed", "n": _int(obj.get("n", 1), "n")}


def parse_pi2_file(text: str, spec: GroupSpec) -> tuple:
    """``{"pi2": [...]}`` or a bare list of class records."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"not valid JSON: {exc}") from None
    if isinstance(obj, dict):
        obj = _fields(obj, "pi2 file", ("pi2",))["pi2"]
    return parse_pi2(obj, spec, multi=True)
