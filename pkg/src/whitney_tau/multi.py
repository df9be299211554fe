"""Several immersed spheres: the invariant tau(f_1, ..., f_n) and the triple lambda.

Disks are *based*: a disk W pairing intersections between f_P and f_N
(P <= N, positive arc on f_P) carries g+ and g-, the group elements of the
whiskered arcs on the two sheets, and each interior point x carries the
index K of the sphere it meets and h_x.

The contribution of x is routed to one Lambda component.  Sort the three
entries (g+, g-, h_x) by their sphere indices (P, N, K), breaking ties in
the order positive arc, negative arc, interior; the term is

    sign(x) * sign(sorting permutation) * (sorted entries)_{sorted indices}.

For n = 1 this is (g+, g-, h)_{111}, which maps to (g, h) under
(a, b, c) -> (b a^-1, c a^-1) when g+ = 1 and g- = g.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .diagram import DiagramError, WhitneyDiagram, raw_tau
from .group import GroupSpec, Word
from .relations import Pi2ClassDatum, QuotientElement, reduce_modulo
from .ring import (Component, RingElement, Triple, component, pair_to_triple, permutation_sign,
                   permute_triple)

ACTIONS = ("signed", "unsigned")


@dataclass(frozen=True)
class MultiDoublePoint:
    id: str
    sign: int
    spheres: tuple


@dataclass(frozen=True)
class SheetPoint:
    sign: int
    sheet: int
    h: Word


@dataclass(frozen=True)
class BasedDisk:
    id: str
    spheres: tuple
    positive: str
    negative: str
    g_plus: Word
    g_minus: Word
    framing: int = 0
    interior: tuple = ()

    def flipped(self) -> "BasedDisk":
        """Same disk described from its other arc: (P, N) -> (N, P)."""
        return replace(self, spheres=(self.spheres[1], self.spheres[0]),
                       g_plus=self.g_minus, g_minus=self.g_plus,
                       interior=tuple(SheetPoint(-x.sign, x.sheet, x.h) for x in self.interior))

    def normalized(self) -> "BasedDisk":
        return self.flipped() if self.spheres[0] > self.spheres[1] else self


@dataclass(frozen=True)
class MultiDiagram:
    spec: GroupSpec
    n: int
    double_points: tuple = ()
    disks: tuple = ()
    pi2: tuple = ()
    normal_bundle_trivial: tuple = ()

    def __post_init__(self):
        for name in ("double_points", "disks", "pi2"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        nbt = tuple(self.normal_bundle_trivial) or (False,) * self.n
        object.__setattr__(self, "normal_bundle_trivial", nbt)


class MultiError(DiagramError):
    pass


def validate_multi(d: MultiDiagram) -> list[tuple[str, str]]:
    out = []
    if d.n < 1:
        out.append(("n", "need at least one sphere"))
    if len(d.normal_bundle_trivial) != d.n:
        out.append(("normal bundle", "one normal_bundle_trivial flag per sphere"))
    points = {}
    for p in d.double_points:
        if p.id in points:
            out.append(("duplicate id", f"double point {p.id}"))
        points[p.id] = p
        if p.sign not in (1, -1):
            out.append(("sign", f"double point {p.id} has sign {p.sign}"))
        if len(p.spheres) != 2 or any(not 1 <= k <= d.n for k in p.spheres):
            out.append(("sphere", f"double point {p.id}: bad spheres {p.spheres}"))
    used: dict = {}
    seen = set()
    valid = range(1, d.n + 1)
    for w in d.disks:
        if w.id in seen:
            out.append(("duplicate id", f"disk {w.id}"))
        seen.add(w.id)
        if len(w.spheres) != 2 or any(k not in valid for k in w.spheres):
            out.append(("sphere", f"disk {w.id}: bad spheres {w.spheres}"))
            continue
        if w.spheres[0] > w.spheres[1]:
            out.append(("arc convention", f"disk {w.id}: positive arc must lie on the lower sphere"))
        if w.framing:
            out.append(("unframed disk", f"disk {w.id} has relative Euler number {w.framing}"))
        for pid, want in ((w.positive, 1), (w.negative, -1)):
            p = points.get(pid)
            if p is None:
                out.append(("dangling", f"disk {w.id}: no double point {pid!r}"))
                continue
            used[pid] = used.get(pid, 0) + 1
            if p.sign != want:
                out.append(("sign", f"disk {w.id}: point {pid} has sign {p.sign}"))
            if tuple(sorted(p.spheres)) != tuple(sorted(w.spheres)):
                out.append(("sphere", f"disk {w.id}: point {pid} lies on spheres {p.spheres}"))
        for x in w.interior:
            if x.sign not in (1, -1):
                out.append(("sign", f"disk {w.id}: interior sign {x.sign}"))
            if x.sheet not in valid:
                out.append(("sphere", f"disk {w.id}: interior point on sphere {x.sheet}"))
    for pid in points:
        if used.get(pid, 0) != 1:
            out.append(("unpaired", f"double point {pid} is paired {used.get(pid, 0)} times"))
    return out


def _check(d: MultiDiagram):
    problems = validate_multi(d)
    if problems:
        raise MultiError("invalid diagram:\n" + "\n".join(f"{c}: {m}" for c, m in problems))


def route_point(w: BasedDisk, x: SheetPoint) -> tuple[int, Component]:
    """Sign and Lambda component term of one interior point."""
    p, q = w.spheres
    entries = [(p, 0, w.g_plus), (q, 1, w.g_minus), (x.sheet, 2, x.h)]
    order = sorted(range(3), key=lambda k: entries[k][:2])
    spheres = tuple(entries[k][0] for k in order)
    words = [entries[k][2] for k in order]
    return x.sign * permutation_sign(order), component(spheres, *words)


def raw_tau_n(d: MultiDiagram) -> RingElement:
    acc: dict = {}
    for w in d.disks:
        for x in w.interior:
            s, t = route_point(w, x)
            acc[t] = acc.get(t, 0) + s
    return RingElement(d.spec, acc)


def compute_tau_n(d: MultiDiagram, radius: Optional[int] = None) -> QuotientElement:
    _check(d)
    return reduce_modulo(raw_tau_n(d), d.pi2, "nsphere", n=d.n, radius=radius)


def distinct_part(x: RingElement) -> RingElement:
    """Lambda_123 component of an n = 3 element, as Triple cosets."""
    acc: dict = {}
    for t, c in x.terms.items():
        if t.spheres == (1, 2, 3):
            k = Triple(t.a, t.b, t.c)
            acc[k] = acc.get(k, 0) + c
    return RingElement(x.spec, acc)


def raw_triple_lambda(d: MultiDiagram) -> RingElement:
    return distinct_part(raw_tau_n(d))


def compute_triple_lambda(d: MultiDiagram, radius: Optional[int] = None) -> QuotientElement:
    if d.n != 3:
        raise MultiError(f"the triple invariant needs n = 3, got {d.n}")
    _check(d)
    for w in d.disks:
        if w.spheres[0] == w.spheres[1]:
            raise MultiError(f"disk {w.id} pairs self-intersections of f_{w.spheres[0]}")
    return reduce_modulo(raw_triple_lambda(d), d.pi2, "triple", radius=radius)


# ------------------------------------------------------------- transforms

def _translate_lam(datum: Pi2ClassDatum, i: int, a: Word) -> Pi2ClassDatum:
    lam = dict(datum.lam)
    if i in lam:
        lam[i] = lam[i].map_terms(lambda t: (1, type(t)(a * t.w)))
    return replace(datum, lam=lam)


def translate_sphere(d: MultiDiagram, i: int, a: Word) -> MultiDiagram:
    """Change the whisker of f_i by a: every element read on f_i is left-multiplied."""
    if not 1 <= i <= d.n:
        raise MultiError(f"no sphere {i}")
    disks = []
    for w in d.disks:
        gp = a * w.g_plus if w.spheres[0] == i else w.g_plus
        gm = a * w.g_minus if w.spheres[1] == i else w.g_minus
        pts = tuple(SheetPoint(x.sign, x.sheet, a * x.h) if x.sheet == i else x for x in w.interior)
        disks.append(replace(w, g_plus=gp, g_minus=gm, interior=pts))
    pi2 = tuple(_translate_lam(p, i, a) for p in d.pi2)
    return replace(d, disks=tuple(disks), pi2=pi2)


def permute_spheres(d: MultiDiagram, sigma: Sequence[int]) -> MultiDiagram:
    """Relabel sphere i as sigma[i-1] (1-based), re-normalizing disk arcs."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, d.n + 1)):
        raise MultiError(f"{sigma} is not a permutation of 1..{d.n}")
    s = {i + 1: v for i, v in enumerate(sigma)}
    pts = tuple(replace(p, spheres=tuple(sorted(s[k] for k in p.spheres))) for p in d.double_points)
    disks = []
    for w in d.disks:
        moved = replace(w, spheres=(s[w.spheres[0]], s[w.spheres[1]]),
                        interior=tuple(SheetPoint(x.sign, s[x.sheet], x.h) for x in w.interior))
        disks.append(moved.normalized())
    pi2 = tuple(replace(p, lam={s[k]: v for k, v in p.lam.items()}) for p in d.pi2)
    nbt = [False] * d.n
    for i, flag in enumerate(d.normal_bundle_trivial):
        nbt[s[i + 1] - 1] = flag
    return replace(d, double_points=pts, disks=tuple(disks), pi2=pi2, normal_bundle_trivial=tuple(nbt))


def _resolve_all(d: WhitneyDiagram) -> WhitneyDiagram:
    from .moves import resolve_crossing
    while d.crossings:
        d = resolve_crossing(d, 0, "a")
    return d


def from_single(d: WhitneyDiagram) -> MultiDiagram:
    """The n = 1 based model of a single-sphere diagram (crossings resolved)."""
    d = _resolve_all(d)
    one = d.spec.identity()
    pts = tuple(MultiDoublePoint(p.id, p.sign, (1, 1)) for p in d.double_points)
    disks = tuple(BasedDisk(w.id, (1, 1), w.positive, w.negative, one, w.g, w.framing,
                            tuple(SheetPoint(x.sign, 1, x.h) for x in w.interior))
                  for w in d.disks)
    pi2 = tuple(p for p in d.pi2)
    return MultiDiagram(d.spec, 1, pts, disks, pi2, (d.normal_bundle_trivial,))


def parallel_copies(d: WhitneyDiagram) -> MultiDiagram:
    """Three parallel copies f_1, f_2, f_3 of f, keeping only cross data.

    Each disk W of f yields six disks, one for every ordered pair (P, N) of
    distinct copies, carrying W's interior points on the remaining copy.
    """
    if not d.normal_bundle_trivial:
        raise MultiError("parallel copies need a trivial normal bundle")
    d = _resolve_all(d)
    one = d.spec.identity()
    pts, disks = [], []
    for w in d.disks:
        for pp, nn in itertools.permutations((1, 2, 3), 2):
            k = 6 - pp - nn
            tag = f"{w.id}.{pp}{nn}"
            pts.append(MultiDoublePoint(f"{tag}+", 1, tuple(sorted((pp, nn)))))
            pts.append(MultiDoublePoint(f"{tag}-", -1, tuple(sorted((pp, nn)))))
            disk = BasedDisk(tag, (pp, nn), f"{tag}+", f"{tag}-", one, w.g, 0,
                             tuple(SheetPoint(x.sign, k, x.h) for x in w.interior))
            if pp > nn:
                disk = replace(disk.flipped(), positive=f"{tag}+", negative=f"{tag}-")
            disks.append(disk)
    pi2 = tuple(replace(p, lam={k: p.lam_for(1, d.spec) for k in (1, 2, 3)})
                for p in d.pi2 if p.kind == "sphere")
    return MultiDiagram(d.spec, 3, tuple(pts), tuple(disks), pi2, (True,) * 3)


# ----------------------------------------------------- S_3 action on tau

def symmetrize(pairs: RingElement, action: str = "signed") -> RingElement:
    """sum over sigma in S_3 of (1, a, b)^sigma for every pair term (a, b)."""
    if action not in ACTIONS:
        raise MultiError(f"unknown action convention {action!r}")
    base = pair_to_triple(pairs)
    total = RingElement(pairs.spec)
    for sigma in itertools.permutations(range(3)):
        total = total + permute_triple(base, sigma, signed=action == "signed")
    return total


def action_matches(d: WhitneyDiagram, action: str) -> bool:
    return raw_triple_lambda(parallel_copies(d)) == symmetrize(raw_tau(d), action)


def select_action_convention(corpus: Sequence[WhitneyDiagram]) -> str:
    """The S_3 action convention under which lambda(f, f, f) equals the
    symmetrized tau on every diagram of the corpus.

    Diagrams whose symmetrization is zero under both conventions carry no
    information and are skipped.
    """
    alive = {a: True for a in ACTIONS}
    witnessed = False
    for d in corpus:
        if not d.normal_bundle_trivial:
            continue
        lam = raw_triple_lambda(parallel_copies(d))
        sums = {a: symmetrize(raw_tau(d), a) for a in ACTIONS}
        if not any(sums.values()) and not lam:
            continue
        witnessed = True
        for a in ACTIONS:
            alive[a] = alive[a] and sums[a] == lam
    good = [a for a in ACTIONS if alive[a]]
    if not witnessed or len(good) != 1:
        raise MultiError(f"corpus does not single out a convention (candidates: {good})")
    return good[0]


def conjugate_pairs(x: RingElement, a: Word) -> RingElement:
    """(g, h) -> (a g a^-1, a h a^-1)."""
    return x.map_terms(lambda t: (1, type(t)(t.a.conjugate(a), t.b.conjugate(a))))
