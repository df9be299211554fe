"""Example diagrams and random generators used by tests, demos and the CLI."""
from __future__ import annotations

import random
from typing import Optional

from .diagram import BoundaryCrossing, DoublePoint, InteriorPoint, WhitneyDiagram, WhitneyDisk
from .group import GroupSpec, Word
from .multi import BasedDisk, MultiDiagram, MultiDoublePoint, SheetPoint
from .relations import Pi2ClassDatum
from .ring import RingElement, Single


def paper4_diagram(l: int, m: int, n: int) -> WhitneyDiagram:
    """The one-disk family over Z = <t>: g = t^n and l points with h = t^m.

    pi_2 is generated by f itself with lambda(f, f) = 0 and omega_2(f) = 0,
    so the INT relation is trivial.
    """
    spec = GroupSpec.cyclic(0, "t")
    t = spec.generator(0)
    g, h = t ** n, t ** m
    sign = 1 if l >= 0 else -1
    disk = WhitneyDisk("W", "p+", "p-", g, 0, tuple(InteriorPoint(sign, h) for _ in range(abs(l))))
    points = (DoublePoint("p+", 1, g), DoublePoint("p-", -1, g))
    f = Pi2ClassDatum("f", {}, 0)
    return WhitneyDiagram(spec, points, (disk,), (), (f,))


def empty_diagram(spec: Optional[GroupSpec] = None) -> WhitneyDiagram:
    return WhitneyDiagram(spec or GroupSpec.free("a", "b"))


def random_word(rng: random.Random, spec: GroupSpec, max_len: int = 3) -> Word:
    syms = [(rng.randrange(spec.rank), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]
    w = spec.identity()
    for i, e in syms:
        w = w * spec.generator(i, e)
    return w


def random_diagram(rng: random.Random, spec: Optional[GroupSpec] = None, max_disks: int = 5,
                   max_points: int = 4, max_crossings: int = 3, max_len: int = 2,
                   pi2: tuple = (), normal_bundle_trivial: bool = False) -> WhitneyDiagram:
    """A random valid framed diagram (mu = 0 automatically)."""
    spec = spec or GroupSpec.free("a", "b")
    pts, disks = [], []
    for k in range(rng.randint(0, max_disks)):
        g = random_word(rng, spec, max_len)
        p, q = f"p{k}+", f"p{k}-"
        pts.append(DoublePoint(p, 1, g))
        pts.append(DoublePoint(q, -1, g if rng.random() < 0.5 else g.inverse()))
        interior = tuple(InteriorPoint(rng.choice((1, -1)), random_word(rng, spec, max_len))
                         for _ in range(rng.randint(0, max_points)))
        disks.append(WhitneyDisk(f"W{k}", p, q, g, 0, interior))
    crossings = []
    if disks:
        for _ in range(rng.randint(0, max_crossings)):
            a, b = rng.choice(disks).id, rng.choice(disks).id
            ea, eb = rng.choice((1, -1)), rng.choice((1, -1))
            if (a, ea) == (b, eb):
                continue
            crossings.append(BoundaryCrossing(a, ea, b, eb, rng.random() < 0.5))
    return WhitneyDiagram(spec, tuple(pts), tuple(disks), tuple(crossings), pi2,
                          False, normal_bundle_trivial)


def random_pi2(rng: random.Random, spec: GroupSpec, n_spheres: int = 1, max_len: int = 1,
               max_terms: int = 2) -> Pi2ClassDatum:
    lam = {}
    for k in range(1, n_spheres + 1):
        acc: dict = {}
        for _ in range(rng.randint(0, max_terms)):
            t = Single(random_word(rng, spec, max_len))
            acc[t] = acc.get(t, 0) + rng.choice((1, -1))
        lam[k] = RingElement(spec, acc)
    return Pi2ClassDatum("A", lam, rng.randint(0, 1))


def random_multi(rng: random.Random, n: int = 3, spec: Optional[GroupSpec] = None,
                 max_disks: int = 4, max_points: int = 3, max_len: int = 2,
                 cross_only: bool = False, pi2: tuple = ()) -> MultiDiagram:
    spec = spec or GroupSpec.free("a", "b")
    pts, disks = [], []
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1) if not (cross_only and i == j)]
    for k in range(rng.randint(0, max_disks)):
        i, j = rng.choice(pairs)
        p, q = f"q{k}+", f"q{k}-"
        pts += [MultiDoublePoint(p, 1, (i, j)), MultiDoublePoint(q, -1, (i, j))]
        interior = tuple(SheetPoint(rng.choice((1, -1)), rng.randint(1, n), random_word(rng, spec, max_len))
                         for _ in range(rng.randint(0, max_points)))
        disks.append(BasedDisk(f"V{k}", (i, j), p, q, random_word(rng, spec, max_len),
                               random_word(rng, spec, max_len), 0, interior))
    return MultiDiagram(spec, n, tuple(pts), tuple(disks), pi2)


def single_sphere_corpus(seed: int = 0, size: int = 60) -> list[WhitneyDiagram]:
    """Hand-picked diagrams followed by random ones, some with pi_2 data."""
    rng = random.Random(seed)
    out = [empty_diagram(), paper4_diagram(2, 4, 3), paper4_diagram(-3, 1, 2), paper4_diagram(1, 0, 5)]
    free = GroupSpec.free("a", "b")
    for k in range(size):
        pi2 = ()
        if k % 3 == 1:
            pi2 = (random_pi2(rng, free),)
        out.append(random_diagram(rng, free, pi2=pi2, normal_bundle_trivial=True))
    return out
