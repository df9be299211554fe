"""Walk a diagram through a sequence of moves and watch tau stay put.

The raw sum changes at most steps; the canonical form or the lattice
certificate shows it is the same element of the quotient.
"""
from whitney_tau.diagram import (BoundaryCrossing, DoublePoint, InteriorPoint, WhitneyDiagram,
                                 WhitneyDisk, compute_tau, raw_tau)
from whitney_tau.group import GroupSpec, parse_word
from whitney_tau import moves
from whitney_tau.relations import Pi2ClassDatum
from whitney_tau.ring import parse_element

F = GroupSpec.free("a", "b")
w = lambda text: parse_word(text, F)

A = Pi2ClassDatum("A", {1: parse_element("a*b^2", F)}, 1)
d = WhitneyDiagram(
    F,
    [DoublePoint("p", 1, w("a")), DoublePoint("q", -1, w("a")),
     DoublePoint("r", 1, w("b")), DoublePoint("s", -1, w("b^-1"))],
    [WhitneyDisk("V", "p", "q", w("a"), 0, (InteriorPoint(1, w("b")),)),
     WhitneyDisk("W", "r", "s", w("b"))],
    [BoundaryCrossing("V", 1, "W", -1)],
    pi2=[A],
)
print("start")
print(compute_tau(d).report())

steps = [
    ("resolve the crossing onto W", lambda d: moves.resolve_crossing(d, 0, "b")),
    ("sheet change on V", lambda d: moves.sheet_change(d, "V")),
    ("two boundary twists and one interior twist on W", lambda d: moves.reframe(d, "W", 1, 1, -1)),
    ("tube W into A", lambda d: moves.tube_into_class(d, "W", "A")),
    ("finger move with a*b", lambda d: moves.finger_move(d, w("a*b"), "F")),
    ("re-pair V with a copy", lambda d: moves.finger_move(d, w("a^-1"), "U")),
    ("swap partners of V and U", lambda d: moves.repair_swap(d, "V", "U", [0], [InteriorPoint(1, w("b^2"))])),
    ("Whitney move on the clean disk F", lambda d: moves.whitney_move(d, "F", [("W", w("a"))])),
]
for label, step in steps:
    e = step(d)
    print(f"\n{label}")
    print(f"    raw tau   {raw_tau(e)}")
    print(f"    canonical {compute_tau(e).canonical}")
    print(f"    same tau as before: {moves.same_tau(d, e)}")
    d = e
