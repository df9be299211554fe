"""Free abelian groups on words, pairs, Δ-cosets of triples and tagged components.

A ``RingElement`` is a finite integer combination of basis terms.  The
basis terms are plain named tuples so they hash and compare cheaply:

* ``Single(w)``            -- an element of Z[pi]
* ``Pair(a, b)``           -- an element of Z[pi x pi]
* ``Triple(a, b, c)``      -- a coset in (pi x pi x pi)/Δ(pi), stored with c = 1
* ``Component(spheres, a, b, c)`` -- a Δ-coset tagged by the sorted sphere
  triple (i, i, i), (i, i, j), (i, j, j) or (i, j, k) of its summand.

No multiplication of general elements is provided.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple, Sequence

from .group import GroupError, GroupSpec, Word, parse_word


class RingError(ValueError):
    pass


class Single(NamedTuple):
    w: Word


class Pair(NamedTuple):
    a: Word
    b: Word


class Triple(NamedTuple):
    a: Word
    b: Word
    c: Word


class Component(NamedTuple):
    spheres: tuple
    a: Word
    b: Word
    c: Word

    @property
    def sort(self) -> str:
        i, j, k = self.spheres
        if i == j == k:
            return "iii"
        if i == j:
            return "iij"
        if j == k:
            return "ijj"
        return "ijk"

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c)


ARITY = {Single: 1, Pair: 2, Triple: 3, Component: 3}


def coords(term) -> tuple:
    if isinstance(term, Component):
        return (term.a, term.b, term.c)
    return tuple(term)


def term_key(term) -> tuple:
    """Total order on basis terms (word order coordinatewise)."""
    if isinstance(term, Component):
        return (term.spheres, term.a.sort_key, term.b.sort_key, term.c.sort_key)
    return tuple(w.sort_key for w in term)


def delta_canonicalize(a: Word, b: Word, c: Word) -> Triple:
    """Representative (a c^-1, b c^-1, 1) of the diagonal right coset."""
    ci = c.inverse()
    return Triple(a * ci, b * ci, c.spec.identity())


def component(spheres: Sequence[int], a: Word, b: Word, c: Word) -> Component:
    spheres = tuple(spheres)
    if len(spheres) != 3 or list(spheres) != sorted(spheres):
        raise RingError(f"component label {spheres} must be a sorted triple")
    t = delta_canonicalize(a, b, c)
    return Component(spheres, t.a, t.b, t.c)


def rebuild(term, new_coords: Sequence[Word]):
    """Term of the same variant with new coordinates (recanonicalized)."""
    if isinstance(term, Single):
        return Single(new_coords[0])
    if isinstance(term, Pair):
        return Pair(*new_coords)
    if isinstance(term, Triple):
        return delta_canonicalize(*new_coords)
    return component(term.spheres, *new_coords)


class RingElement:
    """Finite map from basis terms to nonzero integers."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: GroupSpec, terms=None):
        self.spec = spec
        clean = {}
        variant = None
        for t, c in (terms or {}).items():
            if not c:
                continue
            kind = type(t)
            if variant is None:
                variant = kind
            elif kind is not variant:
                raise RingError("mixed basis-term variants in one element")
            clean[t] = c
        self.terms = clean

    @classmethod
    def from_terms(cls, spec: GroupSpec, pairs: Iterable[tuple]) -> "RingElement":
        acc: dict = {}
        for coef, t in pairs:
            acc[t] = acc.get(t, 0) + coef
        return cls(spec, acc)

    @classmethod
    def term(cls, t, coef: int = 1) -> "RingElement":
        return cls(coords(t)[0].spec, {t: coef})

    @classmethod
    def zero(cls, spec: GroupSpec) -> "RingElement":
        return cls(spec)

    @property
    def variant(self):
        for t in self.terms:
            return type(t)
        return None

    def items(self) -> list[tuple]:
        """Terms in canonical order as ``(term, coefficient)``."""
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def __iter__(self) -> Iterator:
        return iter(t for t, _ in self.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, t) -> int:
        return self.terms.get(t, 0)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms and (not self.terms or self.spec == other.spec)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "RingElement") -> "RingElement":
        return ring_combine(self, other, 1)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return ring_combine(self, other, -1)

    def __neg__(self) -> "RingElement":
        return RingElement(self.spec, {t: -c for t, c in self.terms.items()})

    def __mul__(self, k: int) -> "RingElement":
        if not isinstance(k, int):
            return NotImplemented
        return RingElement(self.spec, {t: k * c for t, c in self.terms.items()})

    __rmul__ = __mul__

    def map_terms(self, fn) -> "RingElement":
        """Apply ``fn(term) -> (sign, term)`` termwise and collect."""
        acc: dict = {}
        for t, c in self.terms.items():
            s, new = fn(t)
            if s:
                acc[new] = acc.get(new, 0) + s * c
        return RingElement(self.spec, acc)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __repr__(self):
        return f"RingElement({self})"

    def __str__(self):
        return format_element(self)


def ring_combine(x: RingElement, y: RingElement, scalar: int = 1) -> RingElement:
    """x + scalar * y."""
    if x.terms and y.terms:
        if x.spec != y.spec:
            raise RingError("elements over different groups")
        if x.variant is not y.variant:
            raise RingError(f"cannot combine {x.variant.__name__} with {y.variant.__name__}")
    acc = dict(x.terms)
    for t, c in y.terms.items():
        acc[t] = acc.get(t, 0) + scalar * c
    return RingElement(x.spec if x.terms or not y.terms else y.spec, acc)


def triple_to_pair(x: RingElement) -> RingElement:
    """Termwise image under (a, b, c) -> (b a^-1, c a^-1)."""
    def fn(t):
        if not isinstance(t, (Triple, Component)):
            raise RingError("triple_to_pair needs triple-coset terms")
        a, b, c = coords(t)
        ai = a.inverse()
        return 1, Pair(b * ai, c * ai)
    return x.map_terms(fn)


def pair_to_triple(x: RingElement) -> RingElement:
    """Section of ``triple_to_pair``: (a, b) -> coset of (1, a, b)."""
    def fn(t):
        if not isinstance(t, Pair):
            raise RingError("pair_to_triple needs pair terms")
        return 1, delta_canonicalize(t.a.spec.identity(), t.a, t.b)
    return x.map_terms(fn)


def permutation_sign(sigma: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(sigma)) for j in range(i + 1, len(sigma))
                     if sigma[i] > sigma[j])
    return -1 if inversions % 2 else 1


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple:
    """The permutation sigma o tau (apply tau first)."""
    return tuple(sigma[tau[i]] for i in range(len(tau)))


def inverse_permutation(sigma: Sequence[int]) -> tuple:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def permute_coords(values: Sequence, sigma: Sequence[int]) -> tuple:
    """Move the entry in slot i to slot sigma[i] (a left action)."""
    out = [None] * len(values)
    for i, v in enumerate(values):
        out[sigma[i]] = v
    return tuple(out)


def permute_triple(x: RingElement, sigma: Sequence[int], signed: bool = False) -> RingElement:
    """Permute the three coordinates of every coset by ``sigma`` (0-based).

    The entry in slot i moves to slot ``sigma[i]``, so that
    ``P(sigma o tau) = P(sigma) o P(tau)``.  With ``signed`` the
    coefficient is multiplied by the sign of ``sigma``.
    """
    sigma = tuple(sigma)
    if sorted(sigma) != [0, 1, 2]:
        raise RingError(f"{sigma} is not a permutation of three slots")
    s = permutation_sign(sigma) if signed else 1

    def fn(t):
        if not isinstance(t, Triple):
            raise RingError("permute_triple needs Triple terms")
        return s, delta_canonicalize(*permute_coords(t, sigma))
    return x.map_terms(fn)


def left_translate(x: RingElement, multipliers: Sequence[Word]) -> RingElement:
    """Left-multiply coordinate i of every term by ``multipliers[i]``."""
    def fn(t):
        cs = coords(t)
        if len(cs) != len(multipliers):
            raise RingError(f"need {len(cs)} multipliers, got {len(multipliers)}")
        return 1, rebuild(t, [m * w for m, w in zip(multipliers, cs)])
    return x.map_terms(fn)


# ---------------------------------------------------------------- text form

def format_term(t) -> str:
    if isinstance(t, Single):
        return str(t.w)
    body = "(" + ",".join(str(w) for w in coords(t)) + ")"
    if isinstance(t, Component):
        body += "_{" + ",".join(str(i) for i in t.spheres) + "}"
    return body


def format_element(x: RingElement) -> str:
    if not x.terms:
        return "0"
    out = []
    for i, (t, c) in enumerate(x.items()):
        body = format_term(t)
        mag = abs(c)
        piece = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            out.append(piece if c > 0 else "-" + piece)
        else:
            out.append(("+ " if c > 0 else "- ") + piece)
    return " ".join(out)


_COMPONENT = re.compile(r"_\{([\d,\s]+)\}$|_(\d+)$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split at top-level +/- signs that are not exponent signs."""
    pieces = []
    depth = 0
    sign = 1
    start = 0
    prev = ""
    for i, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch in "+-" and depth == 0 and prev not in ("^", ""):
            pieces.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
            prev = ""
            continue
        elif ch in "+-" and depth == 0 and prev == "":
            sign *= 1 if ch == "+" else -1
            start = i + 1
            continue
        if not ch.isspace():
            prev = ch
    pieces.append((sign, text[start:]))
    return pieces


def _parse_term(body: str, spec: GroupSpec):
    body = body.strip()
    if body.startswith("("):
        m = _COMPONENT.search(body)
        label = None
        if m:
            raw = m.group(1) or ",".join(m.group(2))
            label = tuple(int(s) for s in raw.split(",") if s.strip())
            body = body[:m.start()].strip()
        if not body.endswith(")"):
            raise RingError(f"unbalanced term {body!r}")
        words = [parse_word(w, spec) for w in body[1:-1].split(",")]
        if label is not None:
            if len(words) != 3:
                raise RingError("component terms need three coordinates")
            return component(label, *words)
        if len(words) == 1:
            return Single(words[0])
        if len(words) == 2:
            return Pair(*words)
        if len(words) == 3:
            return delta_canonicalize(*words)
        raise RingError(f"too many coordinates in {body!r}")
    return Single(parse_word(body, spec))


def parse_element(text: str, spec: GroupSpec) -> RingElement:
    """Parse e.g. ``2*(t^3,t^4) - (1,t)``, ``t - 2*t^2`` or ``(a,b,c)_{1,2,3}``."""
    acc: dict = {}
    text = text.strip()
    if text in ("", "0"):
        return RingElement(spec)
    for sign, piece in _split_terms(text):
        piece = piece.strip()
        if not piece:
            raise RingError(f"empty term in {text!r}")
        m = re.match(r"(\d+)\s*\*\s*(.+)$", piece, re.S)
        coef = 1
        if m:
            coef, piece = int(m.group(1)), m.group(2)
        elif piece.isdigit():
            coef, piece = int(piece), "1"
        try:
            t = _parse_term(piece, spec)
        except GroupError as exc:
            raise RingError(str(exc)) from None
        acc[t] = acc.get(t, 0) + sign * coef
    return RingElement(spec, acc)


def single(spec: GroupSpec, pairs: Iterable[tuple[int, Word]]) -> RingElement:
    return RingElement.from_terms(spec, ((c, Single(w)) for c, w in pairs))
