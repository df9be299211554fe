"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import itertools
import random
import time
from fractions import Fraction

from whitney_tau.corpus import (paper4_diagram, random_diagram, random_multi, random_pi2,
                                random_word, single_sphere_corpus)
from whitney_tau.diagram import (DoublePoint, InteriorPoint, WhitneyDiagram, WhitneyDisk, compute_tau,
                                 raw_tau)
from whitney_tau.group import GroupSpec
from whitney_tau.lattice import lattice_reduce
from whitney_tau.moves import MOVES, same_tau
from whitney_tau.multi import (action_matches, compute_tau_n, conjugate_pairs, from_single,
                               permute_spheres, raw_tau_n, raw_triple_lambda,
                               select_action_convention, translate_sphere)
from whitney_tau.relations import COLLAPSED, Pi2ClassDatum, canonicalize, class_of, reduce_to_km
from whitney_tau.ring import (Pair, RingElement, left_translate, pair_to_triple, permutation_sign,
                              permute_coords, permute_triple, single, triple_to_pair)

from movefuzz import random_move

FREE2 = GroupSpec.free("a", "b")
ZED = GroupSpec.cyclic(0, "t")
S3 = list(itertools.permutations(range(3)))


def verdict(capsys, number, title, ok, elapsed, limit=None, detail=""):
    budget = f" / limit {limit:g}s" if limit else ""
    line = f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title} ({elapsed:.2f}s{budget}) {detail}".rstrip()
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


# 1 ----------------------------------------------------------------------

def test_acceptance_1_paper4_family(capsys):
    start = time.perf_counter()
    rng = random.Random(1)
    t = ZED.generator(0)
    q = compute_tau(paper4_diagram(2, 4, 3))
    ok = q.raw == RingElement(ZED, {Pair(t ** 3, t ** 4): 2}) and q.status == "NONZERO" and q.definitive
    trials = 0
    while trials < 200:
        l, m, n = rng.randint(-6, 6), rng.randint(-8, 8), rng.randint(-8, 8)
        if l == 0:
            continue
        trials += 1
        ok = ok and raw_tau(paper4_diagram(l, m, n)) == RingElement(ZED, {Pair(t ** n, t ** m): l})
    elapsed = time.perf_counter() - start
    verdict(capsys, 1, "(2,4,3) gives 2(t^3,t^4) NONZERO (definitive); l(t^n,t^m) on 200 random triples",
            ok and elapsed < 1.0, elapsed, 1)


# 2 ----------------------------------------------------------------------

def _orbit_oracle(a, b):
    one = a.spec.identity()
    out = set()
    for sigma in S3:
        x, y, z = permute_coords((one, a, b), sigma)
        out.add((permutation_sign(sigma), Pair(y * x.inverse(), z * x.inverse())))
    return out


def test_acceptance_2_relation_algebra(capsys):
    start = time.perf_counter()
    rng = random.Random(2)
    ok, generic = True, 0
    for _ in range(1000):
        a, b = random_word(rng, FREE2, 4), random_word(rng, FREE2, 4)
        one = FREE2.identity()
        ai = a.inverse()
        killed = [
            RingElement.from_terms(FREE2, [(1, Pair(a, b)), (1, Pair(b, a))]),
            RingElement.from_terms(FREE2, [(1, Pair(a, b)), (1, Pair(ai, b * ai))]),
            RingElement.from_terms(FREE2, [(1, Pair(a, one)), (-1, Pair(a, a))]),
            RingElement.from_terms(FREE2, [(2, Pair(a, one))]),
        ]
        ok = ok and all(canonicalize(x) == 0 for x in killed)
        oracle = _orbit_oracle(a, b)
        terms = {u for _, u in oracle}
        degenerate = len(terms) < 6 or any(u.b.is_identity or u.a.is_identity or u.a == u.b for u in terms)
        if degenerate:
            continue
        generic += 1
        cls, _ = class_of(Pair(a, b))
        ok = ok and len(cls.members) == 6 and not cls.torsion2
        # members agree with the signed S_3 images, up to one global sign
        s = cls.sign_of(Pair(a, b))
        ok = ok and {(s * e, u) for e, u in oracle} == set(cls.members)
        # the signed permutation action is a faithful action of S_3
        x = pair_to_triple(RingElement(FREE2, {Pair(a, b): 1}))
        images = {tuple(sorted(permute_triple(x, sg, True).terms.items(), key=str)) for sg in S3}
        ok = ok and len(images) == 6
        for s1, s2 in itertools.product(S3, S3):
            composed = tuple(s1[s2[k]] for k in range(3))
            lhs = permute_triple(x, composed, True)
            rhs = permute_triple(permute_triple(x, s2, True), s1, True)
            ok = ok and lhs == rhs
    elapsed = time.perf_counter() - start
    verdict(capsys, 2, f"4 relations killed on 1000 pairs; {generic} generic orbits of size 6 form S_3",
            ok and generic >= 300 and elapsed < 10.0, elapsed, 10)


# 3 ----------------------------------------------------------------------

def test_acceptance_3_move_invariance(capsys):
    start = time.perf_counter()
    rng = random.Random(3)
    counts = dict.fromkeys(MOVES, 0)
    diagrams, failures = 0, []
    names = sorted(MOVES)
    while diagrams < 1000 or min(counts.values()) < 60:
        pi2 = (random_pi2(rng, FREE2),) if diagrams % 4 == 0 else ()
        d = random_diagram(rng, FREE2, max_disks=5, pi2=pi2)
        out = random_move(rng, d, names[diagrams % len(names)])
        diagrams += 1
        if out is None:
            continue
        name, before, after = out
        counts[name] += 1
        if not same_tau(before, after):
            failures.append(name)
    elapsed = time.perf_counter() - start
    ok = not failures and sum(counts.values()) >= 1000 and elapsed < 60.0
    detail = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    verdict(capsys, 3, f"{sum(counts.values())} moves on {diagrams} diagrams, none changed tau [{detail}]",
            ok, elapsed, 60)


# 4 ----------------------------------------------------------------------

def _rational_solution(gens, target, keys):
    """Unique rational coefficients (gens independent), or None if target is outside their span."""
    rows = [[Fraction(g[k]) for g in gens] + [Fraction(target[k])] for k in keys]
    n = len(gens)
    pivots, r = [], 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            return "dependent"
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    return [rows[i][-1] for i in range(n)]


def _brute_force(gens, target, keys, bound=3):
    for coefs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        if all(sum(c * g[k] for c, g in zip(coefs, gens)) == target[k] for k in keys):
            return True
    return False


def test_acceptance_4_lattice_oracle(capsys):
    start = time.perf_counter()
    rng = random.Random(4)
    t = ZED.generator(0)
    instances, members, disagreements = 0, 0, 0
    while instances < 250:
        size = rng.randint(1, 6)
        keys = [Pair(t ** rng.randint(-3, 3), t ** k) for k in range(size)]
        k = rng.randint(1, min(4, size))
        gens = [{key: rng.randint(-3, 3) for key in keys} for _ in range(k)]
        if rng.random() < 0.5:
            coefs = [rng.randint(-3, 3) for _ in range(k)]
            target = {key: sum(c * g[key] for c, g in zip(coefs, gens)) for key in keys}
            if rng.random() < 0.3:
                key = rng.choice(keys)
                target[key] += rng.choice((-1, 1))
        else:
            target = {key: rng.randint(-6, 6) for key in keys}
        sol = _rational_solution(gens, target, keys)
        if sol == "dependent":
            continue
        if sol is not None and all(x.denominator == 1 for x in sol) and any(abs(x) > 3 for x in sol):
            continue  # a member the bounded search could not see
        instances += 1
        expected = _brute_force(gens, target, keys)
        elems = [RingElement(ZED, g) for g in gens]
        red = lattice_reduce(RingElement(ZED, target), elems)
        members += expected
        if red.certified_zero != expected:
            disagreements += 1
        if red.certified_zero:
            total = RingElement(ZED)
            for i, c in red.certificate:
                total = total + elems[i] * c
            if total != RingElement(ZED, target):
                disagreements += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and 0 < members < instances and elapsed < 30.0
    verdict(capsys, 4, f"lattice_reduce agrees with [-3,3] search on {instances} instances "
            f"({members} members)", ok, elapsed, 30)


# 5 ----------------------------------------------------------------------

def test_acceptance_5_n1_consistency(capsys):
    start = time.perf_counter()
    corpus = single_sphere_corpus()
    mismatches = 0
    for d in corpus:
        a = compute_tau(d)
        b = compute_tau_n(from_single(d))
        if canonicalize(triple_to_pair(b.canonical)) != a.canonical:
            mismatches += 1
        if canonicalize(triple_to_pair(raw_tau_n(from_single(d)))) != canonicalize(raw_tau(d)):
            mismatches += 1
        if not d.pi2 and a.status != b.status:
            mismatches += 1
    elapsed = time.perf_counter() - start
    verdict(capsys, 5, f"n=1 tau_n equals tau under (a,b,c) -> (ba^-1,ca^-1) on all {len(corpus)} corpus diagrams",
            mismatches == 0, elapsed)


# 6 ----------------------------------------------------------------------

def test_acceptance_6_triple_identities(capsys):
    start = time.perf_counter()
    rng = random.Random(6)
    action = select_action_convention(single_sphere_corpus())
    signed = action == "signed"
    one = FREE2.identity()
    counts = dict.fromkeys(("i", "ii", "iii", "v"), 0)
    bad = dict.fromkeys(counts, 0)
    for _ in range(120):
        d = random_multi(rng, cross_only=True)
        lam = raw_triple_lambda(d)
        i = rng.randint(1, 3)
        a = random_word(rng, FREE2)
        shift = tuple(a if k == i else one for k in (1, 2, 3))
        counts["i"] += 1
        bad["i"] += raw_triple_lambda(translate_sphere(d, i, a)) != left_translate(lam, shift)
        counts["ii"] += 1
        for sigma in itertools.permutations((1, 2, 3)):
            sigma0 = tuple(k - 1 for k in sigma)
            if raw_triple_lambda(permute_spheres(d, sigma)) != permute_triple(lam, sigma0, signed):
                bad["ii"] += 1
                break
    for _ in range(120):
        d = random_diagram(rng, FREE2, normal_bundle_trivial=True)
        counts["iii"] += 1
        bad["iii"] += not action_matches(d, action)
        a = random_word(rng, FREE2)
        moved = translate_sphere(from_single(d), 1, a)
        counts["v"] += 1
        bad["v"] += canonicalize(triple_to_pair(raw_tau_n(moved))) != canonicalize(conjugate_pairs(raw_tau(d), a))
    elapsed = time.perf_counter() - start
    ok = not any(bad.values()) and min(counts.values()) >= 100 and elapsed < 60.0
    detail = ", ".join(f"({k}) {counts[k] - bad[k]}/{counts[k]}" for k in counts)
    verdict(capsys, 6, f"triple identities with the {action} action: {detail}", ok, elapsed, 60)


# 7 ----------------------------------------------------------------------

def _trivial_group_diagram(points, pi2):
    spec = GroupSpec.free()
    one = spec.identity()
    pts = (DoublePoint("p", 1, one), DoublePoint("q", -1, one))
    disk = WhitneyDisk("W", "p", "q", one, 0, tuple(InteriorPoint(s, one) for s in points))
    return WhitneyDiagram(spec, pts, (disk,), (), pi2)


def test_acceptance_7_km(capsys):
    start = time.perf_counter()
    spec = GroupSpec.free()
    lam_one = single(spec, [(1, spec.identity())])
    characteristic = [(), (Pi2ClassDatum("A", {1: lam_one}, 1),), (Pi2ClassDatum("B", {}, 0),)]
    values = set()
    ok = True
    for pi2 in characteristic:
        for points in [(), (1,), (1, 1), (1, -1, 1), (-1,)]:
            q = compute_tau(_trivial_group_diagram(points, pi2))
            km = reduce_to_km(q, pi2)
            values.add(km)
            ok = ok and km == len(points) % 2
    non_char = (Pi2ClassDatum("C", {1: lam_one}, 0),)
    collapsed = set()
    for points in [(), (1,), (1, 1)]:
        d = _trivial_group_diagram(points, non_char)
        collapsed.add(reduce_to_km(compute_tau(d), non_char))
    ok = ok and values == {0, 1} and collapsed == {COLLAPSED}
    elapsed = time.perf_counter() - start
    verdict(capsys, 7, "trivial group: characteristic data give Z/2 values {0,1}; "
            "non-characteristic data give 'collapsed'", ok, elapsed)
