"""Signed orbits of the boundary-crossing and sheet-change relations.

A generic pair (a,b) has six signed images; they are the S_3 images of the
coset of (1,a,b).  Pairs such as (a,1) meet themselves with both signs,
so their coefficient only matters mod 2.
"""
from whitney_tau.group import GroupSpec
from whitney_tau.relations import canonicalize, signed_class_closure
from whitney_tau.ring import Pair, format_term, pair_to_triple, parse_element, permute_triple

F = GroupSpec.free("a", "b")
a, b, one = F.generator(0), F.generator(1), F.identity()

for term in [Pair(a, b), Pair(a, one), Pair(one, one)]:
    cls = signed_class_closure(term)
    signed = ", ".join(("+" if s > 0 else "-") + format_term(u) for s, u in sorted(cls.members, key=str))
    print(f"{format_term(term)}: rep {format_term(cls.representative)}, torsion2={cls.torsion2}")
    print(f"    {signed}")

# the same six terms through the permutation action on triples
x = pair_to_triple(parse_element("(a,b)", F))
for sigma in [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]:
    print(sigma, permute_triple(x, sigma, signed=True))

for text in ["(a,b) + (b,a)", "(a,b) + (a^-1,b*a^-1)", "(a,1) - (a,a)", "2*(a,1)", "3*(a,b) - (b,a)"]:
    x = parse_element(text, F)
    print(f"{text:28s} canonical: {canonicalize(x)}")
print("unframed (a,b) + (a,1):", canonicalize(parse_element("(a,b) + (a,1)", F), "unframed"))
