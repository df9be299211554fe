import random

import pytest
from hypothesis import given, settings, strategies as st

from whitney_tau.corpus import paper4_diagram, random_diagram, random_pi2
from whitney_tau.diagram import (BoundaryCrossing, DoublePoint, InteriorPoint, WhitneyDiagram,
                                 WhitneyDisk, compute_tau, raw_tau, validate_diagram)
from whitney_tau.group import GroupSpec, parse_word
from whitney_tau.moves import (MOVES, MoveError, cancel_pair, canonical_tau, finger_move, is_clean,
                               push_across_double_point, reframe, repair_swap, resolve_crossing,
                               same_tau, sheet_change, trade_intersection, tube_into_class,
                               whitney_move)
from whitney_tau.relations import Pi2ClassDatum, canonicalize
from whitney_tau.ring import parse_element

from conftest import FREE2, ZED
from movefuzz import random_move


def w(text, spec=FREE2):
    return parse_word(text, spec)


def el(text, spec=FREE2):
    return parse_element(text, spec)


def crossed():
    pts = [DoublePoint("p", 1, w("a")), DoublePoint("q", -1, w("a")),
           DoublePoint("r", 1, w("b")), DoublePoint("s", -1, w("b"))]
    disks = [WhitneyDisk("V", "p", "q", w("a"), 0, (InteriorPoint(1, w("b")),)),
             WhitneyDisk("W", "r", "s", w("b"))]
    return WhitneyDiagram(FREE2, pts, disks, (BoundaryCrossing("V", 1, "W", -1),))


def test_sheet_change_example():
    d = crossed()
    e = sheet_change(d, "V")
    assert e.disk("V").g == w("a^-1")
    assert e.disk("V").interior == (InteriorPoint(-1, w("b*a^-1")),)
    assert e.crossings == (BoundaryCrossing("V", -1, "W", -1, False),)
    assert validate_diagram(e).ok and same_tau(d, e)


def test_sheet_change_involution():
    d = crossed()
    assert sheet_change(sheet_change(d, "V"), "V") == d


def test_reframe_example():
    d = crossed()
    e = reframe(d, "W", 2, 0, -1)
    assert e.disk("W").interior == (InteriorPoint(1, w("1")),) * 2
    assert raw_tau(e) - raw_tau(d) == el("2*(b,1)")
    assert same_tau(d, e)
    with pytest.raises(MoveError):
        reframe(d, "W", 1, 0, 0)


def test_reframe_negative_arc():
    d = crossed()
    e = reframe(d, "W", 0, -2, 1)
    assert raw_tau(e) - raw_tau(d) == el("-2*(b,b)")
    assert same_tau(d, e)


def test_tube_into_class_example():
    datum = Pi2ClassDatum("A", {1: el("a - b")}, 1)
    d = WhitneyDiagram(FREE2, crossed().double_points, crossed().disks, crossed().crossings, (datum,))
    e = tube_into_class(d, "W", "A")
    assert raw_tau(e) - raw_tau(d) == el("(b,a) - (b,b) + (b,1)")
    assert same_tau(d, e)
    with pytest.raises(Exception):
        tube_into_class(d, "W", "B")


def test_tube_rp2_needs_matching_g():
    c2 = GroupSpec.cyclic(2, "t")
    t = parse_word("t", c2)
    datum = Pi2ClassDatum("P", {1: parse_element("t", c2)}, 0, "rp2", t)
    d = WhitneyDiagram(c2, (DoublePoint("p", 1, t), DoublePoint("q", -1, t)),
                       (WhitneyDisk("W", "p", "q", t),), (), (datum,))
    e = tube_into_class(d, "W", "P")
    assert raw_tau(e) == parse_element("(t,t)", c2)
    assert same_tau(d, e)
    one = c2.identity()
    d2 = WhitneyDiagram(c2, (DoublePoint("p", 1, one), DoublePoint("q", -1, one)),
                        (WhitneyDisk("W", "p", "q", one),), (), (datum,))
    with pytest.raises(MoveError):
        tube_into_class(d2, "W", "P")


@pytest.mark.parametrize("onto", ["a", "b"])
def test_resolve_crossing(onto):
    d = crossed()
    e = resolve_crossing(d, 0, onto)
    assert e.crossings == ()
    assert same_tau(d, e)
    with pytest.raises(MoveError):
        resolve_crossing(d, 3, onto)


def test_resolve_positive_arc_exact():
    # onto the first role with a positive arc the raw sum is unchanged
    d = crossed()
    assert raw_tau(resolve_crossing(d, 0, "a")) == raw_tau(d)


def test_push_then_resolve_cancels():
    d = crossed()
    e = push_across_double_point(d, "V", "W", -1, 1, False)
    assert len(e.crossings) == 2
    assert canonical_tau(e) == canonical_tau(d)
    with pytest.raises(MoveError):
        push_across_double_point(d, "V", "V", 1, 1)


def test_finger_and_whitney_inverse():
    d = crossed()
    e = finger_move(d, w("a*b"))
    new = e.disks[-1]
    assert is_clean(e, new.id) and new.g == w("a*b")
    assert whitney_move(e, new.id) == d
    with pytest.raises(MoveError):
        whitney_move(d, "V")
    with pytest.raises(MoveError):
        finger_move(d, w("a"), "V")


def test_whitney_transfers():
    d = finger_move(crossed(), w("a"))
    e = whitney_move(d, d.disks[-1].id, [("W", w("a^2"))])
    assert e.disk("W").interior == (InteriorPoint(1, w("a^2")), InteriorPoint(-1, w("a^2")))
    assert same_tau(d, e)
    assert cancel_pair(e, "W", w("a^2")) == crossed()
    with pytest.raises(MoveError):
        cancel_pair(e, "W", w("b"))


def test_repair_swap_example():
    d = finger_move(crossed(), w("a"), "U")
    d = d.replace_disk(d.disk("U").with_interior((InteriorPoint(-1, w("b^2")),)))
    e = repair_swap(d, "V", "U", [1], [InteriorPoint(1, w("a"))])
    assert e.disk("V").negative == d.disk("U").negative
    assert e.disk("V").interior == (InteriorPoint(-1, w("b^2")), InteriorPoint(1, w("a")))
    assert e.disk("U").interior == (InteriorPoint(1, w("b")), InteriorPoint(-1, w("a")))
    assert validate_diagram(e).ok and same_tau(d, e)
    with pytest.raises(MoveError):
        repair_swap(d, "V", "W")


@pytest.mark.parametrize("through", ["positive", "negative"])
def test_trade_intersection(through):
    d = crossed()
    d = finger_move(d, w("a") if through == "positive" else w("a^-1"), "U")
    e = trade_intersection(d, "V", "U", 0, through)
    assert e.disk("V").interior == ()
    assert len(e.disk("U").interior) == 1
    assert validate_diagram(e).ok and same_tau(d, e)


def test_trade_requires_compatible_g():
    d = finger_move(crossed(), w("b"), "U")
    with pytest.raises(MoveError):
        trade_intersection(d, "V", "U", 0, "positive")
    with pytest.raises(MoveError):
        trade_intersection(d, "V", "U", 5, "positive")


def test_paper4_moves_keep_status():
    d = paper4_diagram(2, 4, 3)
    e = sheet_change(d, "W")
    q = compute_tau(e)
    assert q.canonical == compute_tau(d).canonical
    assert raw_tau(e) == el("-2*(t^-3,t)", ZED)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from(sorted(MOVES)))
def test_every_move_preserves_tau(seed, name):
    rng = random.Random(seed)
    pi2 = (random_pi2(rng, FREE2),) if seed % 3 == 0 else ()
    d = random_diagram(rng, FREE2, pi2=pi2)
    out = random_move(rng, d, name)
    if out is None:
        return
    _, before, after = out
    assert validate_diagram(after).ok
    assert same_tau(before, after)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_move_chains(seed):
    rng = random.Random(seed)
    d = start = random_diagram(rng, FREE2)
    for _ in range(4):
        out = random_move(rng, d)
        if out is not None:
            d = out[2]
    assert same_tau(start, d)


def test_different_tau_detected():
    assert not same_tau(paper4_diagram(2, 4, 3), paper4_diagram(1, 4, 3))


def test_reframe_identity_and_pair():
    d = crossed()
    assert reframe(d, "W", 0, 0, 0) == d
    e = reframe(d, "W", 1, 1, -1)
    assert raw_tau(e) - raw_tau(d) == el("(b,1) + (b,b)")
    assert canonical_tau(e) == canonical_tau(d)


def test_tube_trivial_class_identity():
    d = paper4_diagram(2, 4, 3)
    e = tube_into_class(d, "W", "f")
    assert raw_tau(e) == raw_tau(d)


def test_resolve_other_side_is_bc_mirror():
    d = crossed()
    y = d.crossings[0]
    e = resolve_crossing(d, 0, "b")
    # J(y) = -(a,b^-1); the mirror adds +(b^-1,a); their sum is a BC relation
    assert y.arc_b == -1
    mirror = raw_tau(e) - raw_tau(d) + el("-(a,b^-1)")
    assert canonicalize(raw_tau(e) - raw_tau(d)) == 0
    assert canonicalize(mirror + el("(a,b^-1)")) == 0


@pytest.mark.parametrize("arc_i,arc_j,agree", [(1, 1, True), (1, -1, True), (-1, 1, False), (-1, -1, False),
                                               (1, 1, False), (-1, -1, True)])
def test_push_cases(arc_i, arc_j, agree):
    d = crossed()
    e = push_across_double_point(d, "V", "W", arc_i, arc_j, agree)
    assert canonical_tau(e) == canonical_tau(d)


def test_push_basic_case_contributions():
    d = crossed()
    e = push_across_double_point(d, "V", "W", 1, 1, True)
    x = e.disk("V").interior[-1]
    assert x == InteriorPoint(-1, w("b"))
    assert crossing_J(e.crossings[-1], e) == el("(a,b)")


def crossing_J(y, d):
    from whitney_tau.diagram import crossing_contribution_J
    return crossing_contribution_J(y, d.disks)


def test_push_inverse_restores():
    d = crossed()
    e = push_across_double_point(d, "V", "W", 1, -1, True)
    back = resolve_crossing(e, len(e.crossings) - 1, "a")
    x = e.disk("V").interior[-1]
    assert cancel_pair(back, "V", x.h) == d


def test_repair_swap_raw_identities():
    d = finger_move(crossed(), w("a"), "U")
    d = d.replace_disk(d.disk("U").with_interior((InteriorPoint(-1, w("b^2")),)))
    wholesale = repair_swap(d, "V", "U", [1])
    assert raw_tau(wholesale) == raw_tau(d)
    extra = repair_swap(d, "V", "U", [0], [InteriorPoint(1, w("a*b"))])
    assert raw_tau(extra) == raw_tau(d)


def test_trade_raw_bookkeeping():
    d = finger_move(crossed(), w("a"), "U")
    e = trade_intersection(d, "V", "U", 0, "positive")
    assert raw_tau(e) == raw_tau(d)
    d = finger_move(crossed(), w("a^-1"), "U")
    e = trade_intersection(d, "V", "U", 0, "negative")
    # (a,b) on V becomes -(a^-1,b*a^-1) on U
    assert raw_tau(e) - raw_tau(d) == el("-(a,b) - (a^-1,b*a^-1)")
    assert canonicalize(raw_tau(e) - raw_tau(d)) == 0


def test_trades_empty_a_disk():
    # with tau = 0 the interior of V can be traded away and cancelled
    pts = [DoublePoint("p", 1, w("a")), DoublePoint("q", -1, w("a"))]
    disk = WhitneyDisk("V", "p", "q", w("a"), 0, (InteriorPoint(1, w("b")), InteriorPoint(-1, w("b"))))
    d = WhitneyDiagram(FREE2, pts, [disk])
    assert compute_tau(d).certified_zero
    d = finger_move(d, w("a"), "U")
    d = trade_intersection(d, "V", "U", 0, "positive")
    d = trade_intersection(d, "V", "U", 0, "positive")
    assert d.disk("V").interior == ()
    d = cancel_pair(d, "U", w("b"))
    assert all(raw_tau(d.replace_disk(v)) is not None for v in d.disks)
    assert all(disk_contribution(v) == 0 for v in d.disks)


def disk_contribution(v):
    from whitney_tau.diagram import disk_contribution_I
    return disk_contribution_I(v)


def test_sheet_change_crossings_differ_by_bc():
    from whitney_tau.diagram import crossing_contribution_J
    d = crossed()
    e = sheet_change(d, "W")
    for y0, y1 in zip(d.crossings, e.crossings):
        j0 = crossing_contribution_J(y0, d.disks)
        j1 = crossing_contribution_J(y1, e.disks)
        (t0, c0), = j0.terms.items()
        (t1, c1), = j1.terms.items()
        # BC rewrite: (x, y) -> -(y, x)
        assert (t1.a, t1.b, c1) == (t0.b, t0.a, -c0) or (t1, c1) == (t0, c0)
