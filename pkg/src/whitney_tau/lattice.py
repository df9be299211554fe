"""Integer lattices: Hermite normal form and span membership over Z."""
from __future__ import annotations

from dataclasses import dataclass, field

from .ring import RingElement, term_key


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _axpy(y: dict, k: int, x: dict) -> None:
    """y += k * x, in place, pruning zeros."""
    if not k:
        return
    for j, v in x.items():
        nv = y.get(j, 0) + k * v
        if nv:
            y[j] = nv
        else:
            y.pop(j, None)


def _lin(a: int, x: dict, b: int, y: dict) -> dict:
    out = {}
    _axpy(out, a, x)
    _axpy(out, b, y)
    return out


class IntegerLattice:
    """Row lattice in echelon form, grown one sparse vector at a time.

    Each basis row is stored under its leading column with a positive
    pivot, together with its expression in the inserted vectors.
    """

    def __init__(self):
        self.rows: dict[int, tuple[dict, dict]] = {}

    def add(self, vec: dict, label=None) -> None:
        v = {j: c for j, c in vec.items() if c}
        w = {label: 1} if label is not None else {}
        while v:
            j = min(v)
            if j not in self.rows:
                if v[j] < 0:
                    v = {k: -c for k, c in v.items()}
                    w = {k: -c for k, c in w.items()}
                self.rows[j] = (v, w)
                return
            p, pw = self.rows[j]
            a, b = p[j], v[j]
            if b % a == 0:
                q = b // a
                _axpy(v, -q, p)
                _axpy(w, -q, pw)
                continue
            g, x, y = xgcd(a, b)
            new_p, new_pw = _lin(x, p, y, v), _lin(x, pw, y, w)
            v, w = _lin(a // g, v, -(b // g), p), _lin(a // g, w, -(b // g), pw)
            self.rows[j] = (new_p, new_pw)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Residue of ``vec`` with pivot entries in [0, pivot), and the
        combination of inserted vectors that was subtracted."""
        v = {j: c for j, c in vec.items() if c}
        used: dict = {}
        for j in sorted(self.rows):
            c = v.get(j, 0)
            if not c:
                continue
            p, pw = self.rows[j]
            q = c // p[j]
            if q:
                _axpy(v, -q, p)
                _axpy(used, q, pw)
        return v, used

    def __contains__(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def pivots(self) -> dict[int, int]:
        return {j: row[j] for j, (row, _) in self.rows.items()}


def hermite_normal_form(matrix: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Rows of the result are in echelon form with positive pivots, entries
    above each pivot reduced into [0, pivot), and zero rows removed.
    """
    lat = IntegerLattice()
    for row in matrix:
        lat.add({j: c for j, c in enumerate(row) if c})
    width = len(matrix[0]) if matrix else 0
    order = sorted(lat.rows)
    rows = [dict(lat.rows[j][0]) for j in order]
    for i, j in enumerate(order):
        piv = rows[i][j]
        for k in range(i):
            c = rows[k].get(j, 0)
            q = c // piv
            if q:
                _axpy(rows[k], -q, rows[i])
    return [[r.get(j, 0) for j in range(width)] for r in rows]


@dataclass
class Reduction:
    """Outcome of reducing a target modulo the integer span of generators."""

    target: RingElement
    residue: RingElement
    certified_zero: bool
    certificate: list = field(default_factory=list)
    n_generators: int = 0


def lattice_reduce(target: RingElement, generators: list[RingElement]) -> Reduction:
    """Decide whether ``target`` lies in the integer span of ``generators``.

    The residue is the unique representative whose entries at pivot
    columns lie in [0, pivot); it is zero exactly when the target is in
    the span.  When it is, ``certificate`` lists ``(index, coefficient)``
    with ``sum(coef * generators[index]) == target``.
    """
    spec = target.spec
    for g in generators:
        if g.terms and target.terms and g.variant is not target.variant:
            raise ValueError("generators and target use different bases")
    support = set(target.terms)
    for g in generators:
        support.update(g.terms)
    basis = sorted(support, key=term_key)
    index = {t: i for i, t in enumerate(basis)}
    lat = IntegerLattice()
    for n, g in enumerate(generators):
        if g.terms:
            lat.add({index[t]: c for t, c in g.terms.items()}, label=n)
    vec = {index[t]: c for t, c in target.terms.items()}
    residue, used = lat.reduce(vec)
    res = RingElement(spec, {basis[j]: c for j, c in residue.items()})
    cert = sorted(used.items()) if not residue else []
    return Reduction(target, res, not residue, cert, len(generators))
