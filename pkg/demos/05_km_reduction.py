"""Over the trivial group tau lives in Z/2 and reduces to the Kervaire-Milnor value.

If some sphere A has lambda(f,A) + omega_2(A) odd (f not spherically
characteristic), the INT relation kills (1,1) and the value collapses.
"""
from whitney_tau.diagram import DoublePoint, InteriorPoint, WhitneyDiagram, WhitneyDisk, compute_tau
from whitney_tau.group import GroupSpec
from whitney_tau.relations import Pi2ClassDatum, reduce_to_km
from whitney_tau.ring import single

G = GroupSpec.free()
one = G.identity()


def diagram(n_points, pi2):
    disk = WhitneyDisk("W", "p", "q", one, 0, (InteriorPoint(1, one),) * n_points)
    return WhitneyDiagram(G, [DoublePoint("p", 1, one), DoublePoint("q", -1, one)], [disk], pi2=pi2)


characteristic = [Pi2ClassDatum("A", {1: single(G, [(1, one)])}, 1)]
not_characteristic = [Pi2ClassDatum("A", {1: single(G, [(1, one)])}, 0)]

for label, pi2 in [("no spheres", []), ("characteristic", characteristic),
                   ("not characteristic", not_characteristic)]:
    for k in (1, 2, 3):
        q = compute_tau(diagram(k, pi2))
        print(f"{label:20s} {k} point(s): {q.status_text:18s} km = {reduce_to_km(q, pi2)}")
