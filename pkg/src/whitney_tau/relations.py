"""Canonical forms modulo the local relations and reduction modulo INT.

Local relations act on single basis terms and are handled by signed orbit
closure:

* pair terms: BC ``(a,b) = -(b,a)``, SC ``(a,b) = -(a^-1, b a^-1)`` and,
  in framed mode, FR ``(a,1) = (a,a)``.  In unframed mode every class
  containing a term ``(a,1)`` is zero.
* component terms: ``(a,b,c)_iij = -(b,a,c)_iij``,
  ``(a,b,c)_ijj = -(a,c,b)_ijj`` and ``(a,a,b)_iij = (a,b,b)_ijj``.

Global relations (intersections with pi_2 classes) are infinite families.
They are enumerated up to a word-length horizon and decided by integer
lattice membership.
"""
from __future__ import annotations

import itertools
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .group import GroupSpec, Word, enumerate_ball, is_order_two
from .lattice import lattice_reduce
from .ring import (Component, Pair, RingElement, Single, Triple, component, coords,
                   delta_canonicalize, term_key)

MODES = ("framed", "unframed", "local", "none")
COLLAPSED = "collapsed"


class RelationError(ValueError):
    pass


# ------------------------------------------------------------ orbit closure

def _pair_moves(t: Pair, framed: bool):
    a, b = t
    yield -1, Pair(b, a)
    ai = a.inverse()
    yield -1, Pair(ai, b * ai)
    if framed:
        if b.is_identity and not a.is_identity:
            yield 1, Pair(a, a)
        if a == b and not a.is_identity:
            yield 1, Pair(a, a.spec.identity())


def _component_moves(t: Component):
    p, q, r = t.spheres
    a, b, c = t.a, t.b, t.c
    if p == q:
        yield -1, component(t.spheres, b, a, c)
        if a == b:
            yield 1, component((p, r, r), a, c, c)
    if q == r:
        yield -1, component(t.spheres, a, c, b)
        if b == c:
            yield 1, component((p, p, r), a, a, c)


def default_mode(term) -> str:
    if isinstance(term, Pair):
        return "framed"
    if isinstance(term, Component):
        return "local"
    return "none"


def _moves(t, mode: str):
    if mode in ("framed", "unframed"):
        if not isinstance(t, Pair):
            raise RelationError(f"mode {mode} needs pair terms")
        return _pair_moves(t, mode == "framed")
    if mode == "local":
        if not isinstance(t, Component):
            raise RelationError("mode local needs component terms")
        return _component_moves(t)
    if mode == "none":
        return iter(())
    raise RelationError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class SignedClass:
    representative: object
    members: frozenset
    torsion2: bool
    vanishes: bool = False

    def sign_of(self, term) -> int:
        """Sign s with term = s * representative (1 on torsion classes)."""
        signs = {s for s, u in self.members if u == term}
        if not signs:
            raise KeyError(term)
        return 1 if self.torsion2 else signs.pop()

    @property
    def terms(self) -> list:
        return sorted({u for _, u in self.members}, key=term_key)


def signed_class_closure(t, mode: Optional[str] = None) -> SignedClass:
    """Breadth-first closure of ``{+t}`` under the local relations."""
    mode = mode or default_mode(t)
    signs: dict = {t: {1}}
    queue = deque([(t, 1)])
    while queue:
        u, s = queue.popleft()
        for m, v in _moves(u, mode):
            got = signs.setdefault(v, set())
            if s * m not in got:
                got.add(s * m)
                queue.append((v, s * m))
    torsion2 = any(len(s) == 2 for s in signs.values())
    rep = min(signs, key=term_key)
    rep_sign = 1 if torsion2 else next(iter(signs[rep]))
    members = frozenset((s * rep_sign, u) for u, ss in signs.items() for s in ss)
    vanishes = mode == "unframed" and any(u.b.is_identity for u in signs)
    return SignedClass(rep, members, torsion2, vanishes)


class ClosureCache:
    """Memo of class data keyed by (mode, term).

    Reads are lock-free dictionary lookups; insertions take a lock, so
    concurrent readers are safe and a single writer inserts at a time.
    """

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, t, mode: str) -> tuple[SignedClass, int]:
        hit = self._data.get((mode, t))
        if hit is not None:
            return hit
        cls = signed_class_closure(t, mode)
        with self._lock:
            for s, u in cls.members:
                self._data.setdefault((mode, u), (cls, 1 if cls.torsion2 else s))
            return self._data[(mode, t)]

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


CACHE = ClosureCache()


def class_of(t, mode: Optional[str] = None) -> tuple[SignedClass, int]:
    """The class of ``t`` and the sign s with t = s * representative."""
    return CACHE.get(t, mode or default_mode(t))


def canonicalize(x: RingElement, mode: Optional[str] = None) -> RingElement:
    """Rewrite every term as a signed class representative.

    Coefficients on torsion2 classes are reduced to {0, 1}; vanishing
    (unframed) classes are dropped.
    """
    acc: dict = {}
    torsion = set()
    for t, c in x.terms.items():
        cls, s = class_of(t, mode)
        if cls.vanishes:
            continue
        rep = cls.representative
        acc[rep] = acc.get(rep, 0) + s * c
        if cls.torsion2:
            torsion.add(rep)
    for rep in torsion:
        acc[rep] %= 2
    return RingElement(x.spec, acc)


# ---------------------------------------------------------------- pi_2 data

@dataclass
class Pi2ClassDatum:
    """A class A in pi_2 (or an immersed RP^2) with its intersection data.

    ``lam`` maps a sphere index k to lambda(f_k, A) as a single-variant
    element; a one-sphere diagram uses index 1.
    """

    name: str
    lam: dict = field(default_factory=dict)
    omega2: int = 0
    kind: str = "sphere"
    element: Optional[Word] = None

    def __post_init__(self):
        self.omega2 %= 2
        if self.kind not in ("sphere", "rp2"):
            raise RelationError(f"unknown class kind {self.kind!r}")
        for k, v in self.lam.items():
            if v.terms and v.variant is not Single:
                raise RelationError(f"lambda entry for sphere {k} must be in Z[pi]")
        if self.kind == "rp2":
            if self.element is None:
                raise RelationError(f"RP^2 class {self.name} needs its group element")
            if not is_order_two(self.element):
                raise RelationError(f"RP^2 class {self.name}: {self.element} is not of order two")

    def lam_for(self, k: int, spec: GroupSpec) -> RingElement:
        return self.lam.get(k) or RingElement(spec)

    def words(self) -> list[Word]:
        return [t.w for v in self.lam.values() for t in v.terms]


# ------------------------------------------------------- relation families

@dataclass(frozen=True)
class Slot:
    """One coordinate of a relation pattern.

    ``free``: ``word * free[index]`` (word None means 1);
    ``lam``: runs over the terms of lambda(f_index, A);
    ``const``: the fixed ``word``.
    """

    kind: str
    index: int = 0
    word: Optional[Word] = None


@dataclass(frozen=True)
class Pattern:
    coef: int
    slots: tuple
    spheres: Optional[tuple] = None


@dataclass
class RelationFamily:
    """Relations ``sum(pattern)`` indexed by free words up to the horizon."""

    name: str
    datum: Pi2ClassDatum
    patterns: list
    n_free: int
    variant: type
    spec: GroupSpec

    def _lam_terms(self, slot: Slot) -> list[tuple[int, Word]]:
        v = self.datum.lam_for(slot.index, self.spec)
        return [(c, t.w) for t, c in v.items()]

    def _term(self, pattern: Pattern, values):
        if self.variant is Pair:
            return Pair(*values)
        if self.variant is Triple:
            return delta_canonicalize(*values)
        return component(pattern.spheres, *values)

    def instance(self, free: Sequence[Word]) -> RingElement:
        acc: dict = {}
        for pat in self.patterns:
            options = [[(1, None)]]
            for slot in pat.slots:
                options.append(self._lam_terms(slot) if slot.kind == "lam" else [(1, None)])
            for choice in itertools.product(*options[1:]):
                coef = pat.coef
                values = []
                for slot, (c, h) in zip(pat.slots, choice):
                    coef *= c
                    if slot.kind == "lam":
                        values.append(h)
                    elif slot.kind == "const":
                        values.append(slot.word)
                    else:
                        w = free[slot.index]
                        values.append(slot.word * w if slot.word is not None else w)
                t = self._term(pat, values)
                acc[t] = acc.get(t, 0) + coef
        return RingElement(self.spec, acc)

    def touching(self, u, radius: int, ball: list[Word], whole: bool = False):
        """Free tuples within the horizon whose instance has a raw term
        equal to ``u``; also reports whether candidates beyond it exist."""
        found = set()
        pruned = False
        if not isinstance(u, self.variant):
            return found, pruned
        cu = coords(u)
        delta = self.variant is not Pair
        for pat in self.patterns:
            if pat.spheres is not None and pat.spheres != u.spheres:
                continue
            options = []
            for slot in pat.slots:
                options.append([h for _, h in self._lam_terms(slot)] if slot.kind == "lam" else [None])
            for choice in itertools.product(*options):
                fixed = {}
                for q, (slot, h) in enumerate(zip(pat.slots, choice)):
                    if slot.kind == "lam":
                        fixed[q] = h
                    elif slot.kind == "const":
                        fixed[q] = slot.word
                if delta:
                    # repeated free slots must agree before any right shift
                    bare: dict = {}
                    clash = False
                    for q, slot in enumerate(pat.slots):
                        if slot.kind == "free":
                            val = slot.word.inverse() * cu[q] if slot.word is not None else cu[q]
                            if bare.setdefault(slot.index, val) != val:
                                clash = True
                                break
                    if clash:
                        continue
                    shifts = {cu[q].inverse() * v for q, v in fixed.items()}
                    if len(shifts) > 1:
                        continue
                    if shifts:
                        candidates = [shifts.pop()]
                    else:
                        q0 = next(q for q, s in enumerate(pat.slots) if s.kind == "free")
                        s0 = pat.slots[q0]
                        pre = cu[q0].inverse()
                        mult = s0.word
                        candidates = [pre * (mult * w if mult is not None else w) for w in ball]
                        pruned = pruned or not whole
                else:
                    if any(cu[q] != v for q, v in fixed.items()):
                        continue
                    candidates = [cu[0].spec.identity()]
                for g in candidates:
                    free: dict = {}
                    ok = True
                    for q, slot in enumerate(pat.slots):
                        if slot.kind != "free":
                            continue
                        val = cu[q] * g if delta else cu[q]
                        w = slot.word.inverse() * val if slot.word is not None else val
                        if free.setdefault(slot.index, w) != w:
                            ok = False
                            break
                    if not ok or len(free) != self.n_free:
                        continue
                    tup = tuple(free[i] for i in range(self.n_free))
                    if any(len(w) > radius for w in tup):
                        pruned = True
                        continue
                    found.add(tup)
        return found, pruned


def _single_families(pi2, spec, unframed: bool) -> list[RelationFamily]:
    one = spec.identity()
    fams = []
    for d in pi2:
        lam = Slot("lam", 1)
        if d.kind == "rp2":
            a, n_free = Slot("const", word=d.element), 0
        else:
            a, n_free = Slot("free", 0), 1
        pats = [Pattern(1, (a, lam))]
        if d.omega2 and not unframed:
            pats.append(Pattern(-1, (a, Slot("const", word=one))))
        fams.append(RelationFamily(f"INT[{d.name}]", d, pats, n_free, Pair, spec))
    return fams


def _triple_families(pi2, spec) -> list[RelationFamily]:
    a, b = Slot("free", 0), Slot("free", 1)
    fams = []
    for d in pi2:
        if d.kind == "rp2":
            continue
        for name, slots in (("(a,b,lam3)", (a, b, Slot("lam", 3))),
                            ("(a,lam2,b)", (a, Slot("lam", 2), b)),
                            ("(lam1,a,b)", (Slot("lam", 1), a, b))):
            fams.append(RelationFamily(f"R{name}[{d.name}]", d, [Pattern(1, slots)], 2, Triple, spec))
    return fams


def _nsphere_families(pi2, spec, n: int) -> list[RelationFamily]:
    fams = []
    for d in pi2:
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if d.kind == "rp2":
                    if i != j:
                        continue
                    a = Slot("free", 0)
                    b = Slot("free", 0, d.element)
                    n_free = 1
                else:
                    a, b, n_free = Slot("free", 0), Slot("free", 1), 2
                pats = []
                for k in range(1, n + 1):
                    lam = Slot("lam", k)
                    if k >= j:
                        # k = i = j is counted once, in this sum
                        pats.append(Pattern(1, (a, b, lam), (i, j, k)))
                    elif k <= i:
                        pats.append(Pattern(1, (lam, a, b), (k, i, j)))
                    else:
                        pats.append(Pattern(-1, (a, lam, b), (i, k, j)))
                if d.omega2:
                    pats.append(Pattern(1, (a, b, b), (i, j, j)))
                fams.append(RelationFamily(f"R[{d.name};{i},{j}]", d, pats, n_free, Component, spec))
    return fams


def relation_families(pi2: Sequence[Pi2ClassDatum], spec: GroupSpec, context: str = "single",
                      n: int = 1, unframed: bool = False) -> list[RelationFamily]:
    """Families of global relations for ``context`` in {single, triple, nsphere}."""
    for d in pi2:
        if d.kind == "rp2" and d.element is not None and not is_order_two(d.element):
            raise RelationError(f"{d.element} is not of order two")
    if context == "single":
        return _single_families(pi2, spec, unframed)
    if context == "triple":
        return _triple_families(pi2, spec)
    if context == "nsphere":
        return _nsphere_families(pi2, spec, n)
    raise RelationError(f"unknown context {context!r}")


def context_mode(context: str, unframed: bool = False) -> str:
    if context == "single":
        return "unframed" if unframed else "framed"
    return "none" if context == "triple" else "local"


def doubling_vectors(support: Iterable, mode: str, spec: GroupSpec) -> list[RingElement]:
    reps = set()
    for t in support:
        cls, _ = class_of(t, mode)
        if cls.torsion2 and not cls.vanishes:
            reps.add(cls.representative)
    return [RingElement(spec, {r: 2}) for r in sorted(reps, key=term_key)]


def build_relation_instances(pi2: Sequence[Pi2ClassDatum], radius: int, context: str = "single",
                             spec: Optional[GroupSpec] = None, n: int = 1,
                             unframed: bool = False, support: Iterable = ()) -> list[RingElement]:
    """Every canonicalized relation instance with free words of length <= radius,
    followed by doubling vectors for torsion2 classes they (or ``support``) touch."""
    if radius < 0:
        raise RelationError("radius must be nonnegative")
    support = list(support)
    if spec is None:
        words = [w for d in pi2 for w in d.words()] + [d.element for d in pi2 if d.element]
        words += [coords(t)[0] for t in support]
        if not words:
            return []
        spec = words[0].spec
    mode = context_mode(context, unframed)
    ball = enumerate_ball(spec, radius)
    out = []
    touched = set(support)
    for fam in relation_families(pi2, spec, context, n, unframed):
        for free in itertools.product(ball, repeat=fam.n_free):
            g = canonicalize(fam.instance(free), mode)
            if g:
                out.append(g)
                touched.update(g.terms)
    return out + doubling_vectors(touched, mode, spec)


# --------------------------------------------------------------- quotients

@dataclass
class QuotientElement:
    """A canonical form together with its reduction modulo global relations."""

    raw: RingElement
    canonical: RingElement
    residue: RingElement
    certified_zero: bool
    definitive: bool
    horizon: int
    n_generators: int
    mode: str
    families: list = field(default_factory=list)
    certificate: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.certified_zero:
            return "ZERO"
        return "NONZERO"

    @property
    def status_text(self) -> str:
        if self.certified_zero:
            return "0 (certified)"
        if self.definitive:
            return "NONZERO (definitive)"
        return f"NONZERO (modulo relations enumerated to horizon {self.horizon})"

    def report(self) -> str:
        lines = [
            f"raw:        {self.raw}",
            f"canonical:  {self.canonical}",
            f"residue:    {self.residue}",
            f"relations:  {self.n_generators} instances from "
            f"{len(self.families)} families, horizon L={self.horizon}",
            f"status:     {self.status_text}",
        ]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "raw": str(self.raw),
            "canonical": str(self.canonical),
            "residue": str(self.residue),
            "status": self.status,
            "certified_zero": self.certified_zero,
            "definitive": self.definitive,
            "horizon": self.horizon,
            "generators": self.n_generators,
            "mode": self.mode,
        }


def default_horizon(x: RingElement, pi2: Sequence[Pi2ClassDatum]) -> int:
    support = max((len(w) for t in x.terms for w in coords(t)), default=0)
    lam = max((len(w) for d in pi2 for w in d.words()), default=0)
    return support + lam + 2


def _is_whole_group(spec: GroupSpec, ball: list[Word]) -> bool:
    if spec.rank == 0:
        return True
    return spec.kind == "cyclic" and spec.modulus > 0 and len(ball) == spec.modulus


def collect_instances(target: RingElement, families: Sequence[RelationFamily], mode: str,
                      radius: int, cap: int = 4000) -> tuple[list[RingElement], bool]:
    """Relation instances (within the horizon) connected to the target's support.

    Membership of the target in the span of all instances up to the
    horizon only depends on this connected part.  The flag is True when
    every connected instance has been found, i.e. no candidate was cut
    off by the horizon or the cap.
    """
    spec = target.spec
    if not families:
        return doubling_vectors(target.terms, mode, spec), True
    ball = enumerate_ball(spec, radius)
    whole = _is_whole_group(spec, ball)
    complete = True
    seen_classes = set()
    gens: dict = {}
    frontier = deque(sorted(target.terms, key=term_key))
    hit_cap = False
    while frontier and not hit_cap:
        rep = frontier.popleft()
        if rep in seen_classes:
            continue
        seen_classes.add(rep)
        cls, _ = class_of(rep, mode)
        for u in cls.terms:
            for fi, fam in enumerate(families):
                found, pruned = fam.touching(u, radius, ball, whole)
                complete = complete and not pruned
                for free in sorted(found, key=lambda tup: [w.sort_key for w in tup]):
                    key = (fi, free)
                    if key in gens:
                        continue
                    if len(gens) >= cap:
                        hit_cap = True
                        break
                    g = canonicalize(fam.instance(free), mode)
                    gens[key] = g
                    for t in g.terms:
                        if t not in seen_classes:
                            frontier.append(t)
    complete = complete and not hit_cap
    out = [g for g in gens.values() if g]
    support = set(target.terms)
    for g in out:
        support.update(g.terms)
    return out + doubling_vectors(support, mode, spec), complete


def reduce_modulo(raw: RingElement, pi2: Sequence[Pi2ClassDatum], context: str = "single",
                  n: int = 1, unframed: bool = False, radius: Optional[int] = None,
                  cap: int = 4000) -> QuotientElement:
    """Canonicalize ``raw`` and reduce it modulo the global relations."""
    mode = context_mode(context, unframed)
    canon = canonicalize(raw, mode)
    if radius is None:
        radius = default_horizon(canon, pi2)
    families = relation_families(pi2, raw.spec, context, n, unframed)
    gens, complete = collect_instances(canon, families, mode, radius, cap)
    red = lattice_reduce(canon, gens)
    return QuotientElement(raw, canon, red.residue, red.certified_zero, complete, radius,
                           len(gens), mode, [f.name for f in families], red.certificate)


def reduce_to_km(x: QuotientElement, pi2: Sequence[Pi2ClassDatum]):
    """Push forward along pi -> {1}: 0 or 1 in Z/2, or COLLAPSED."""
    for d in pi2:
        lam = sum(v.augmentation() for v in d.lam.values())
        if (lam + d.omega2) % 2:
            return COLLAPSED
    for t in x.canonical.terms:
        if not isinstance(t, Pair):
            raise RelationError("km reduction needs pair terms")
    return x.canonical.augmentation() % 2
