"""The triple invariant of three spheres, and three parallel copies of one sphere.

For three copies of f (trivial normal bundle) lambda(f,f,f) is the sum of
the signed S_3 images of tau(f).  The unsigned sum does not match.
"""
from whitney_tau.corpus import single_sphere_corpus
from whitney_tau.diagram import DoublePoint, InteriorPoint, WhitneyDiagram, WhitneyDisk, raw_tau
from whitney_tau.group import GroupSpec
from whitney_tau.multi import (BasedDisk, MultiDiagram, MultiDoublePoint, SheetPoint,
                               compute_triple_lambda, parallel_copies, permute_spheres,
                               raw_triple_lambda, select_action_convention, symmetrize,
                               translate_sphere)

G = GroupSpec.free("s", "t", "u")
s, t, u = G.generator(0), G.generator(1), G.generator(2)

# one disk pairing f1 and f2, one interior point on f3
d = MultiDiagram(G, 3,
                 [MultiDoublePoint("p", 1, (1, 2)), MultiDoublePoint("q", -1, (1, 2))],
                 [BasedDisk("W", (1, 2), "p", "q", s, t, 0, (SheetPoint(1, 3, u),))])
print(compute_triple_lambda(d).report())
print("relabel spheres (2,3,1):", raw_triple_lambda(permute_spheres(d, (2, 3, 1))))
print("change whisker of f1 by s:", raw_triple_lambda(translate_sphere(d, 1, s)))

print("\naction convention picked by the corpus:", select_action_convention(single_sphere_corpus(size=20)))

F = GroupSpec.free("a", "b")
a, b = F.generator(0), F.generator(1)
f = WhitneyDiagram(F, [DoublePoint("p", 1, a), DoublePoint("q", -1, a)],
                   [WhitneyDisk("W", "p", "q", a, 0, (InteriorPoint(1, b),))],
                   normal_bundle_trivial=True)
lam = raw_triple_lambda(parallel_copies(f))
print("\ntau(f)               ", raw_tau(f))
print("lambda(f,f,f)        ", lam)
print("signed symmetrized   ", symmetrize(raw_tau(f), "signed"))
print("matches signed:      ", lam == symmetrize(raw_tau(f), "signed"))
print("matches unsigned:    ", lam == symmetrize(raw_tau(f), "unsigned"))
