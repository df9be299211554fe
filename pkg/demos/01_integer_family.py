"""One Whitney disk over pi = Z: the family (l, m, n).

The disk has group element t^n and l interior points, each with h = t^m.
tau is l (t^n, t^m).  For m outside {0, n} the class is free and tau is
nonzero whenever l is; for m = 0 or m = n only l mod 2 survives.
"""
from whitney_tau.corpus import paper4_diagram
from whitney_tau.diagram import compute_tau
from whitney_tau.manifest import emit_manifest

d = paper4_diagram(2, 4, 3)
print(emit_manifest(d))
print(compute_tau(d).report())
print()

# sweep a few members of the family
for l, m, n in [(1, 0, 1), (3, 2, 5), (-2, 1, 1), (0, 4, 3)]:
    q = compute_tau(paper4_diagram(l, m, n))
    print(f"(l,m,n) = ({l},{m},{n}):  raw {q.raw}  ->  {q.status_text}")

# (t^n,1) ~ (t^n,t^n) is a torsion class
for l in (1, 2, 3):
    q = compute_tau(paper4_diagram(l, 0, 2))
    print(f"l = {l}, m = 0: canonical {q.canonical}")
