"""Fundamental-group elements with decidable normal forms.

Three group classes are supported: free groups, free abelian groups and
cyclic groups (modulus 0 meaning the infinite cyclic group).  Every
``Word`` is stored in normal form, so equality of words is equality of
group elements.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

KINDS = ("free", "abelian", "cyclic")


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    generators: tuple[str, ...]
    modulus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.kind not in KINDS:
            raise GroupError(f"unsupported group class {self.kind!r}")
        if len(set(self.generators)) != len(self.generators):
            raise GroupError(f"duplicate generator names in {self.generators}")
        for name in self.generators:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise GroupError(f"invalid generator name {name!r}")
        if self.kind == "cyclic":
            if len(self.generators) != 1:
                raise GroupError("a cyclic group has exactly one generator")
            if self.modulus < 0:
                raise GroupError("cyclic modulus must be >= 0")
        elif self.modulus:
            raise GroupError("modulus only applies to cyclic groups")

    @classmethod
    def free(cls, *names: str) -> "GroupSpec":
        return cls("free", names)

    @classmethod
    def abelian(cls, *names: str) -> "GroupSpec":
        return cls("abelian", names)

    @classmethod
    def cyclic(cls, modulus: int = 0, name: str = "t") -> "GroupSpec":
        return cls("cyclic", (name,), modulus)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``free:a,b``, ``abelian:x,y`` or ``cyclic:t:6``."""
        parts = text.strip().split(":")
        kind = parts[0]
        names = tuple(n for n in parts[1].split(",") if n) if len(parts) > 1 else ()
        if kind == "cyclic":
            modulus = int(parts[2]) if len(parts) > 2 else 0
            return cls("cyclic", names or ("t",), modulus)
        if len(parts) > 2:
            raise GroupError(f"bad group description {text!r}")
        return cls(kind, names)

    def __str__(self):
        text = f"{self.kind}:{','.join(self.generators)}"
        return f"{text}:{self.modulus}" if self.kind == "cyclic" else text

    @property
    def rank(self) -> int:
        return len(self.generators)

    def identity(self) -> "Word":
        if self.kind == "free":
            return Word(self, ())
        return Word(self, (0,) * self.rank)

    def gens(self) -> list["Word"]:
        return [self.generator(i) for i in range(self.rank)]

    def generator(self, index: int, exponent: int = 1) -> "Word":
        return normalize_word([(index, exponent)], self)

    def word(self, text: str) -> "Word":
        return parse_word(text, self)

    def index_of(self, symbol) -> int:
        if isinstance(symbol, int):
            if not 0 <= symbol < self.rank:
                raise GroupError(f"generator index {symbol} out of range")
            return symbol
        try:
            return self.generators.index(symbol)
        except ValueError:
            raise GroupError(f"unknown generator {symbol!r} for {self}") from None


class Word:
    """A group element in normal form.

    ``data`` is a tuple of ``(generator index, nonzero exponent)`` pairs for
    free groups (adjacent indices distinct) and an exponent vector for the
    abelian and cyclic classes.
    """

    __slots__ = ("spec", "data", "_hash")

    def __init__(self, spec: GroupSpec, data: tuple):
        self.spec = spec
        self.data = data
        self._hash = hash(data)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.data == other.data and self.spec == other.spec

    def __lt__(self, other: "Word"):
        return self.sort_key < other.sort_key

    def __le__(self, other: "Word"):
        return self.sort_key <= other.sort_key

    def __repr__(self):
        return f"Word({self})"

    def __str__(self):
        names = self.spec.generators
        if self.spec.kind == "free":
            pieces = [(names[i], e) for i, e in self.data]
        else:
            pieces = [(names[i], e) for i, e in enumerate(self.data) if e]
        if not pieces:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in pieces)

    @property
    def is_identity(self) -> bool:
        if self.spec.kind == "free":
            return not self.data
        return not any(self.data)

    def __len__(self):
        spec = self.spec
        if spec.kind == "free":
            return sum(abs(e) for _, e in self.data)
        if spec.kind == "cyclic" and spec.modulus:
            e = self.data[0]
            return min(e, spec.modulus - e)
        return sum(abs(e) for e in self.data)

    @property
    def sort_key(self) -> tuple:
        # length first, then lexicographic on the stored normal form
        return (len(self), self.data)

    def __mul__(self, other: "Word") -> "Word":
        return group_multiply(self, other)

    def inverse(self) -> "Word":
        spec = self.spec
        if spec.kind == "free":
            return Word(spec, tuple((i, -e) for i, e in reversed(self.data)))
        if spec.kind == "cyclic" and spec.modulus:
            return Word(spec, ((-self.data[0]) % spec.modulus,))
        return Word(spec, tuple(-e for e in self.data))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        result = self.spec.identity()
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    def conjugate(self, by: "Word") -> "Word":
        """``by * self * by^-1``."""
        return by * self * by.inverse()


def normalize_word(raw: Iterable[tuple], spec: GroupSpec) -> Word:
    """Normal form of a sequence of ``(generator, exponent)`` symbols.

    Generators may be given by name or by index.
    """
    if spec.kind == "free":
        out: list[list[int]] = []
        for symbol, exp in raw:
            idx = spec.index_of(symbol)
            if not exp:
                continue
            if out and out[-1][0] == idx:
                out[-1][1] += exp
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([idx, exp])
        return Word(spec, tuple((i, e) for i, e in out))
    vec = [0] * spec.rank
    for symbol, exp in raw:
        vec[spec.index_of(symbol)] += exp
    if spec.kind == "cyclic" and spec.modulus:
        vec = [e % spec.modulus for e in vec]
    return Word(spec, tuple(vec))


_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|1)\s*(?:\^\s*([+-]?\d+))?\s*$")


def parse_word(text: str, spec: GroupSpec) -> Word:
    """Parse ``a*b^-1``, ``t^3`` or ``1``."""
    symbols = []
    for chunk in text.split("*"):
        m = _TOKEN.match(chunk)
        if not m:
            raise GroupError(f"cannot parse word {text!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name == "1":
            continue
        symbols.append((spec.index_of(name), exp))
    return normalize_word(symbols, spec)


def group_multiply(x: Word, y: Word, invert_y: bool = False) -> Word:
    if x.spec != y.spec:
        raise GroupError(f"cannot multiply words of {x.spec} and {y.spec}")
    if invert_y:
        y = y.inverse()
    spec = x.spec
    if spec.kind == "free":
        left = list(x.data)
        right = list(y.data)
        while left and right and left[-1][0] == right[0][0]:
            i, e = left.pop()
            j, f = right.pop(0)
            if e + f:
                left.append((i, e + f))
                break
        return Word(spec, tuple(left + right))
    vec = tuple(a + b for a, b in zip(x.data, y.data))
    if spec.kind == "cyclic" and spec.modulus:
        vec = tuple(e % spec.modulus for e in vec)
    return Word(spec, vec)


def is_order_two(x: Word) -> bool:
    return not x.is_identity and (x * x).is_identity


def enumerate_ball(spec: GroupSpec, radius: int) -> list[Word]:
    """All distinct words of length <= radius, sorted by the word order."""
    if radius < 0:
        raise GroupError("radius must be nonnegative")
    if spec.kind == "free":
        words = [spec.identity()]
        frontier = [()]
        for _ in range(radius):
            nxt = []
            for data in frontier:
                for i in range(spec.rank):
                    for e in (1, -1):
                        if data and data[-1][0] == i:
                            if (data[-1][1] > 0) != (e > 0):
                                continue
                            new = data[:-1] + ((i, data[-1][1] + e),)
                        else:
                            new = data + ((i, e),)
                        nxt.append(new)
            frontier = nxt
            words.extend(Word(spec, d) for d in frontier)
        return sorted(words, key=lambda w: w.sort_key)
    if spec.kind == "cyclic" and spec.modulus:
        m = spec.modulus
        exps = {e % m for e in range(-radius, radius + 1)}
        return sorted((Word(spec, (e,)) for e in exps), key=lambda w: w.sort_key)
    found = []
    for vec in itertools.product(range(-radius, radius + 1), repeat=spec.rank):
        if sum(abs(e) for e in vec) <= radius:
            found.append(Word(spec, vec))
    return sorted(found, key=lambda w: w.sort_key)


def ball_size(rank: int, radius: int) -> int:
    """Closed-form size of the radius ball in a free group of given rank."""
    if rank == 0 or radius == 0:
        return 1
    return 1 + sum(2 * rank * (2 * rank - 1) ** (k - 1) for k in range(1, radius + 1))


def common_spec(words: Sequence[Word]) -> GroupSpec:
    specs = {w.spec for w in words}
    if len(specs) != 1:
        raise GroupError("words belong to different groups")
    return specs.pop()
