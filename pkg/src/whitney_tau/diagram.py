"""Single-sphere Whitney-disk diagrams and the invariant tau.

A diagram records the combinatorial data of an immersed sphere f with
framed Whitney disks W_i pairing its double points: the primary group
element g_i of each disk, the signed interior intersections x of W_i with
f (each carrying h_x), and the crossings y between boundary arcs.

    tau(f) = sum_i I(W_i) + sum_y J(y)
    I(W_i) = (g_i, sum_x sign(x) h_x)
    J(y)   = e_i e_j (g_i^e_i, g_j^e_j)

with (dW_i, dW_j) the ordered pair agreeing with the orientation of f.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .group import GroupSpec, Word, is_order_two
from .relations import Pi2ClassDatum, QuotientElement, reduce_modulo
from .ring import Pair, RingElement, Single


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class DoublePoint:
    id: str
    sign: int
    g: Word


@dataclass(frozen=True)
class InteriorPoint:
    sign: int
    h: Word


@dataclass(frozen=True)
class WhitneyDisk:
    id: str
    positive: str
    negative: str
    g: Word
    framing: int = 0
    interior: tuple = ()

    def with_interior(self, points) -> "WhitneyDisk":
        return replace(self, interior=tuple(points))


@dataclass(frozen=True)
class BoundaryCrossing:
    """y in d_{arc_a} W_a  cap  d_{arc_b} W_b.

    ``agree`` is True when the ordered basis (dW_a, dW_b) agrees with the
    orientation of f at y.
    """

    disk_a: str
    arc_a: int
    disk_b: str
    arc_b: int
    agree: bool = True


@dataclass(frozen=True)
class WhitneyDiagram:
    spec: GroupSpec
    double_points: tuple = ()
    disks: tuple = ()
    crossings: tuple = ()
    pi2: tuple = ()
    unframed: bool = False
    normal_bundle_trivial: bool = False

    def __post_init__(self):
        for name in ("double_points", "disks", "crossings", "pi2"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    def disk(self, disk_id: str) -> WhitneyDisk:
        for w in self.disks:
            if w.id == disk_id:
                return w
        raise DiagramError(f"no disk {disk_id!r}")

    def point(self, point_id: str) -> DoublePoint:
        for p in self.double_points:
            if p.id == point_id:
                return p
        raise DiagramError(f"no double point {point_id!r}")

    def replace_disk(self, new: WhitneyDisk) -> "WhitneyDiagram":
        self.disk(new.id)
        return replace(self, disks=tuple(new if w.id == new.id else w for w in self.disks))

    def pi2_class(self, name: str) -> Pi2ClassDatum:
        for d in self.pi2:
            if d.name == name:
                return d
        raise DiagramError(f"no pi_2 class {name!r}")


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str):
        self.violations.append((code, message))

    def codes(self) -> set:
        return {c for c, _ in self.violations}

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(f"{code}: {msg}" for code, msg in self.violations)


def validate_diagram(d: WhitneyDiagram) -> ValidationReport:
    rep = ValidationReport()
    ids = [p.id for p in d.double_points]
    if len(set(ids)) != len(ids):
        rep.add("duplicate id", "double point ids are not unique")
    disk_ids = [w.id for w in d.disks]
    if len(set(disk_ids)) != len(disk_ids):
        rep.add("duplicate id", "disk ids are not unique")
    points = {p.id: p for p in d.double_points}
    used: dict = {}
    for p in d.double_points:
        if p.sign not in (1, -1):
            rep.add("sign", f"double point {p.id} has sign {p.sign}")
        if p.g.spec != d.spec:
            rep.add("group", f"double point {p.id} lives in another group")
    for w in d.disks:
        for role, pid, want in (("positive", w.positive, 1), ("negative", w.negative, -1)):
            p = points.get(pid)
            if p is None:
                rep.add("dangling", f"disk {w.id}: no double point {pid!r}")
                continue
            used[pid] = used.get(pid, 0) + 1
            if p.sign != want:
                rep.add("sign", f"disk {w.id}: {role} point {pid} has sign {p.sign}")
            if p.g not in (w.g, w.g.inverse()):
                rep.add("group element", f"disk {w.id}: point {pid} carries {p.g}, disk has {w.g}")
        if w.positive == w.negative:
            rep.add("sign", f"disk {w.id} pairs a point with itself")
        if w.framing and not d.unframed:
            rep.add("unframed disk", f"disk {w.id} has relative Euler number {w.framing}")
        for x in w.interior:
            if x.sign not in (1, -1):
                rep.add("sign", f"disk {w.id}: interior point with sign {x.sign}")
    for pid in ids:
        n = used.get(pid, 0)
        if n == 0:
            rep.add("unpaired", f"double point {pid} is not paired by a Whitney disk")
        elif n > 1:
            rep.add("multiply paired", f"double point {pid} belongs to {n} disks")
    known = set(disk_ids)
    for n, y in enumerate(d.crossings):
        for disk, arc in ((y.disk_a, y.arc_a), (y.disk_b, y.arc_b)):
            if disk not in known:
                rep.add("dangling", f"crossing {n}: no disk {disk!r}")
            if arc not in (1, -1):
                rep.add("arc", f"crossing {n}: arc label {arc}")
        if (y.disk_a, y.arc_a) == (y.disk_b, y.arc_b):
            rep.add("arc", f"crossing {n} pairs an arc with itself")
    for datum in d.pi2:
        if datum.kind == "rp2" and (datum.element is None or not is_order_two(datum.element)):
            rep.add("rp2", f"class {datum.name}: element is not of order two")
    return rep


def self_intersection_mu(points: Sequence[DoublePoint], spec: Optional[GroupSpec] = None) -> RingElement:
    """Wall's mu: sum sign(p) [g_p] in Z[pi] modulo g ~ g^-1, identity dropped."""
    if spec is None:
        if not points:
            raise DiagramError("need a group for an empty point list")
        spec = points[0].g.spec
    acc: dict = {}
    for p in points:
        g = min(p.g, p.g.inverse(), key=lambda w: w.sort_key)
        if g.is_identity:
            continue
        acc[Single(g)] = acc.get(Single(g), 0) + p.sign
    return RingElement(spec, acc)


def disk_contribution_I(w: WhitneyDisk, unframed: bool = False) -> RingElement:
    if w.framing and not unframed:
        raise DiagramError(f"disk {w.id} is not framed")
    acc: dict = {}
    for x in w.interior:
        t = Pair(w.g, x.h)
        acc[t] = acc.get(t, 0) + x.sign
    return RingElement(w.g.spec, acc)


def crossing_roles(y: BoundaryCrossing) -> tuple[tuple[str, int], tuple[str, int]]:
    """(disk, arc) for the first and second vector of the agreeing basis."""
    first, second = (y.disk_a, y.arc_a), (y.disk_b, y.arc_b)
    return (first, second) if y.agree else (second, first)


def crossing_contribution_J(y: BoundaryCrossing, disks) -> RingElement:
    table = {w.id: w for w in disks} if not isinstance(disks, dict) else disks
    (i, ei), (j, ej) = crossing_roles(y)
    if i not in table or j not in table:
        raise DiagramError(f"crossing references a missing disk ({i}, {j})")
    gi, gj = table[i].g, table[j].g
    gi = gi if ei > 0 else gi.inverse()
    gj = gj if ej > 0 else gj.inverse()
    return RingElement(gi.spec, {Pair(gi, gj): ei * ej})


def raw_tau(d: WhitneyDiagram) -> RingElement:
    total = RingElement(d.spec)
    for w in d.disks:
        total = total + disk_contribution_I(w, d.unframed)
    table = {w.id: w for w in d.disks}
    for y in d.crossings:
        total = total + crossing_contribution_J(y, table)
    return total


def compute_tau(d: WhitneyDiagram, radius: Optional[int] = None) -> QuotientElement:
    report = validate_diagram(d)
    if not report.ok:
        raise DiagramError(f"invalid diagram:\n{report}")
    mu = self_intersection_mu(d.double_points, d.spec)
    if mu:
        raise DiagramError(f"mu(f) = {mu} is not zero")
    return reduce_modulo(raw_tau(d), d.pi2, "single", unframed=d.unframed, radius=radius)
