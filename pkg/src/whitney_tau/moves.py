"""Diagram rewrites that leave tau unchanged.

Every move is a pure function ``WhitneyDiagram -> WhitneyDiagram``.  The
raw sum of I and J contributions changes by a combination of BC, SC, FR
and INT relations (often not at all), which ``same_tau`` checks.
"""
from __future__ import annotations

import itertools
from dataclasses import replace
from typing import Iterable, Optional, Sequence

from .diagram import (BoundaryCrossing, DiagramError, DoublePoint, InteriorPoint,
                      WhitneyDiagram, WhitneyDisk, compute_tau, crossing_roles, raw_tau)
from .group import Word
from .relations import canonicalize, reduce_modulo


class MoveError(DiagramError):
    pass


def _fresh(used: Iterable[str], stem: str) -> str:
    used = set(used)
    for n in itertools.count(1):
        name = f"{stem}{n}"
        if name not in used:
            return name


def _all_ids(d: WhitneyDiagram) -> set:
    return {p.id for p in d.double_points} | {w.id for w in d.disks}


def _point_realizing(w: WhitneyDisk, eps: int, coef: int, v: Word) -> InteriorPoint:
    """Interior point on ``w`` contributing coef * (g^eps, v) up to SC."""
    if eps > 0:
        return InteriorPoint(coef, v)
    # (g^-1, v) = -(g, v g) by SC
    return InteriorPoint(-coef, v * w.g)


def _crossing(d: WhitneyDiagram, index: int) -> BoundaryCrossing:
    if not 0 <= index < len(d.crossings):
        raise MoveError(f"no crossing {index}")
    return d.crossings[index]


# ------------------------------------------------------------------ moves

def sheet_change(d: WhitneyDiagram, disk_id: str) -> WhitneyDiagram:
    """Swap the roles of the two sheets of f along W: g -> g^-1.

    Interior contributions change by SC; every crossing end on the disk
    changes arc and the crossing changes orientation, which changes J by BC.
    """
    w = d.disk(disk_id)
    gi = w.g.inverse()
    interior = tuple(InteriorPoint(-x.sign, x.h * gi) for x in w.interior)
    new_w = replace(w, g=gi, interior=interior)
    crossings = []
    for y in d.crossings:
        agree = y.agree
        arc_a, arc_b = y.arc_a, y.arc_b
        if y.disk_a == disk_id:
            arc_a, agree = -arc_a, not agree
        if y.disk_b == disk_id:
            arc_b, agree = -arc_b, not agree
        crossings.append(replace(y, arc_a=arc_a, arc_b=arc_b, agree=agree))
    return replace(d.replace_disk(new_w), crossings=tuple(crossings))


def reframe(d: WhitneyDiagram, disk_id: str, n: int, m: int, interior_twists: int = 0) -> WhitneyDiagram:
    """n boundary twists along the positive arc, m along the negative arc and
    ``interior_twists`` interior twists (each changing framing by 2)."""
    if n + m + 2 * interior_twists:
        raise MoveError(f"framing not restored: {n} + {m} + 2*{interior_twists} != 0")
    w = d.disk(disk_id)
    one = d.spec.identity()
    pts = list(w.interior)
    pts += [InteriorPoint(1 if n > 0 else -1, one)] * abs(n)
    pts += [InteriorPoint(1 if m > 0 else -1, w.g)] * abs(m)
    return d.replace_disk(w.with_interior(pts))


def tube_into_class(d: WhitneyDiagram, disk_id: str, class_name: str) -> WhitneyDiagram:
    """Tube the interior of W into a representative of a pi_2 class (or RP^2)."""
    w = d.disk(disk_id)
    datum = d.pi2_class(class_name)
    if datum.kind == "rp2" and w.g != datum.element:
        raise MoveError(f"disk {disk_id} has g = {w.g}, class {class_name} needs {datum.element}")
    pts = list(w.interior)
    for t, c in datum.lam_for(1, d.spec).items():
        pts += [InteriorPoint(1 if c > 0 else -1, t.w)] * abs(c)
    if datum.omega2:
        pts.append(InteriorPoint(1, d.spec.identity()))
    return d.replace_disk(w.with_interior(pts))


def resolve_crossing(d: WhitneyDiagram, index: int, onto: str = "a") -> WhitneyDiagram:
    """Push a boundary crossing off one disk, creating an interior point.

    Resolving onto the first disk of the agreeing basis reproduces J(y)
    (exactly when that arc is positive); onto the second disk gives its
    BC mirror.
    """
    if onto not in ("a", "b"):
        raise MoveError(f"onto must be 'a' or 'b', not {onto!r}")
    y = _crossing(d, index)
    (i, ei), (j, ej) = crossing_roles(y)
    wi, wj = d.disk(i), d.disk(j)
    ui = wi.g if ei > 0 else wi.g.inverse()
    uj = wj.g if ej > 0 else wj.g.inverse()
    target = (y.disk_a, y.arc_a) if onto == "a" else (y.disk_b, y.arc_b)
    if target == (i, ei):
        w, pt = wi, _point_realizing(wi, ei, ei * ej, uj)
    else:
        w, pt = wj, _point_realizing(wj, ej, -ei * ej, ui)
    rest = d.crossings[:index] + d.crossings[index + 1:]
    out = d.replace_disk(w.with_interior(w.interior + (pt,)))
    return replace(out, crossings=rest)


def push_across_double_point(d: WhitneyDiagram, disk_id: str, target_disk_id: str,
                             arc: int = 1, target_arc: int = 1, agree: bool = True) -> WhitneyDiagram:
    """Push the ``arc`` of W_i across a double point paired by W_j.

    Creates a crossing y in d_arc W_i cap d_target_arc W_j (with the given
    orientation) and an interior point x on W_i whose contribution cancels
    J(y) modulo SC.
    """
    if arc not in (1, -1) or target_arc not in (1, -1):
        raise MoveError("arc labels are +1 or -1")
    d.disk(disk_id)
    d.disk(target_disk_id)
    if disk_id == target_disk_id and arc == target_arc:
        raise MoveError("a crossing cannot pair an arc with itself")
    y = BoundaryCrossing(disk_id, arc, target_disk_id, target_arc, agree)
    resolved = resolve_crossing(replace(d, crossings=d.crossings + (y,)), len(d.crossings), "a")
    w = resolved.disk(disk_id)
    x = w.interior[-1]
    neg = InteriorPoint(-x.sign, x.h)
    out = d.replace_disk(d.disk(disk_id).with_interior(d.disk(disk_id).interior + (neg,)))
    return replace(out, crossings=d.crossings + (y,))


def finger_move(d: WhitneyDiagram, a: Word, disk_id: Optional[str] = None) -> WhitneyDiagram:
    """New cancelling pair of double points with group element a and a clean disk."""
    used = _all_ids(d)
    p = _fresh(used, "fp")
    q = _fresh(used | {p}, "fp")
    wid = disk_id or _fresh(used | {p, q}, "FW")
    if wid in used:
        raise MoveError(f"id {wid!r} already in use")
    pts = d.double_points + (DoublePoint(p, 1, a), DoublePoint(q, -1, a))
    disk = WhitneyDisk(wid, p, q, a)
    return replace(d, double_points=pts, disks=d.disks + (disk,))


def is_clean(d: WhitneyDiagram, disk_id: str) -> bool:
    w = d.disk(disk_id)
    touches = any(disk_id in (y.disk_a, y.disk_b) for y in d.crossings)
    return not w.interior and not touches and w.framing == 0


def whitney_move(d: WhitneyDiagram, disk_id: str,
                 transfers: Sequence[tuple[str, Word]] = ()) -> WhitneyDiagram:
    """Remove a clean disk and its double points.

    Each ``(other_disk, h)`` transfer records an intersection of the
    removed disk with another disk; the move turns it into a cancelling
    pair (+, h), (-, h) on that disk.
    """
    if not is_clean(d, disk_id):
        raise MoveError(f"disk {disk_id} is not clean")
    w = d.disk(disk_id)
    disks = [v for v in d.disks if v.id != disk_id]
    for other, h in transfers:
        if other == disk_id:
            raise MoveError("a transfer cannot land on the removed disk")
        for k, v in enumerate(disks):
            if v.id == other:
                disks[k] = v.with_interior(v.interior + (InteriorPoint(1, h), InteriorPoint(-1, h)))
                break
        else:
            raise MoveError(f"no disk {other!r}")
    pts = tuple(p for p in d.double_points if p.id not in (w.positive, w.negative))
    return replace(d, double_points=pts, disks=tuple(disks))


def cancel_pair(d: WhitneyDiagram, disk_id: str, h: Word) -> WhitneyDiagram:
    """Remove one (+, h) and one (-, h) from the interior of a disk."""
    w = d.disk(disk_id)
    pts = list(w.interior)
    try:
        pts.remove(InteriorPoint(1, h))
        pts.remove(InteriorPoint(-1, h))
    except ValueError:
        raise MoveError(f"disk {disk_id} has no cancelling pair at {h}") from None
    return d.replace_disk(w.with_interior(pts))


def repair_swap(d: WhitneyDiagram, disk_i: str, disk_j: str, selection: Sequence[int] = (),
                extra: Sequence[InteriorPoint] = ()) -> WhitneyDiagram:
    """Re-pair the double points of two disks with equal g crosswise.

    With U the union of both interiors (W_i's points first), the new disk
    W pairs p_i^+ with p_j^- and carries U[selection] plus ``extra``;
    W' pairs p_j^+ with p_i^- and carries the rest of U plus -extra.
    """
    wi, wj = d.disk(disk_i), d.disk(disk_j)
    if disk_i == disk_j:
        raise MoveError("repair_swap needs two different disks")
    if wi.g != wj.g:
        raise MoveError(f"g mismatch: {wi.g} != {wj.g}")
    union = wi.interior + wj.interior
    chosen = set(selection)
    if any(not 0 <= k < len(union) for k in chosen):
        raise MoveError("selection index out of range")
    extra = tuple(extra)
    new_i = replace(wi, negative=wj.negative,
                    interior=tuple(union[k] for k in sorted(chosen)) + extra)
    new_j = replace(wj, negative=wi.negative,
                    interior=tuple(x for k, x in enumerate(union) if k not in chosen)
                    + tuple(InteriorPoint(-x.sign, x.h) for x in extra))
    return d.replace_disk(new_i).replace_disk(new_j)


def trade_intersection(d: WhitneyDiagram, source: str, target: str, point: int,
                       through: str = "positive") -> WhitneyDiagram:
    """Move an interior point of W_source to W_target.

    ``positive`` needs g_target = g_source and keeps the contribution;
    ``negative`` needs g_target = g_source^-1 and rewrites it by SC.  An
    auxiliary disk with a cancelling pair of interior points and a new
    cancelling pair of double points is appended.
    """
    ws, wt = d.disk(source), d.disk(target)
    if source == target:
        raise MoveError("source and target must differ")
    if not 0 <= point < len(ws.interior):
        raise MoveError(f"disk {source} has no interior point {point}")
    x = ws.interior[point]
    if through == "positive":
        if wt.g != ws.g:
            raise MoveError("positive trade needs equal group elements")
        moved = x
    elif through == "negative":
        if wt.g != ws.g.inverse():
            raise MoveError("negative trade needs inverse group elements")
        moved = InteriorPoint(-x.sign, x.h * wt.g)
    else:
        raise MoveError(f"through must be positive or negative, not {through!r}")
    a, b = wt.g, moved.h
    d = d.replace_disk(ws.with_interior(ws.interior[:point] + ws.interior[point + 1:]))
    d = d.replace_disk(wt.with_interior(wt.interior + (moved,)))
    used = _all_ids(d)
    p = _fresh(used, "tp")
    q = _fresh(used | {p}, "tp")
    wid = _fresh(used | {p, q}, "TW")
    aux = WhitneyDisk(wid, p, q, b, 0, (InteriorPoint(1, a), InteriorPoint(-1, a)))
    pts = d.double_points + (DoublePoint(p, 1, b), DoublePoint(q, -1, b))
    return replace(d, double_points=pts, disks=d.disks + (aux,))


# ------------------------------------------------------------ comparisons

def same_tau(d1: WhitneyDiagram, d2: WhitneyDiagram, radius: Optional[int] = None) -> bool:
    """True when the two diagrams have equal tau: equal canonical forms, or a
    difference certified zero modulo the global relations of d1."""
    t1, t2 = compute_tau(d1, radius), compute_tau(d2, radius)
    if t1.canonical == t2.canonical:
        return True
    diff = reduce_modulo(raw_tau(d1) - raw_tau(d2), d1.pi2, "single",
                         unframed=d1.unframed, radius=radius)
    return diff.certified_zero


def canonical_tau(d: WhitneyDiagram):
    return canonicalize(raw_tau(d), "unframed" if d.unframed else "framed")


MOVES = {
    "sheet_change": sheet_change,
    "reframe": reframe,
    "tube_into_class": tube_into_class,
    "resolve_crossing": resolve_crossing,
    "push_across_double_point": push_across_double_point,
    "finger_move": finger_move,
    "whitney_move": whitney_move,
    "cancel_pair": cancel_pair,
    "repair_swap": repair_swap,
    "trade_intersection": trade_intersection,
}
