"""Move calculus: catalogue, application, inverses, canonical forms, and the
bounded equivalence search."""

import random

import pytest

from curvelift import (
    CircleBundle,
    Diagram,
    InapplicableMove,
    ModeMismatch,
    MoveInstance,
    SearchBudget,
    Surface,
    applicable_moves,
    apply_move,
    canonical_key,
    contract_kink,
    diagrams_equal,
    equivalent_bounded,
    expand_kink,
    invert_move,
    lift_class,
    move_from_json,
    move_to_json,
    replay,
    transvection,
    transvection_fiber_shift,
    vertex_link_curve,
)
from curvelift.diagrams import cross, cusp, edge, kink, qturn

from helpers import random_diagram

S2 = Surface(2)
UT = CircleBundle.unit_tangent(S2)
PT = CircleBundle.projective_tangent(S2)


def smooth(*events):
    return Diagram(S2, "smooth", (tuple(events),))


def circle():
    return smooth(qturn(1), qturn(1), qturn(1), qturn(1))


# ----------------------------------------------------------------------
# catalogue and application


def test_empty_component_offers_stab_and_r2():
    d = Diagram(S2, "smooth", ((),))
    kinds = {m.kind for m in applicable_moves(d)}
    assert kinds == {"stab", "r2_insert"}


def test_stab_destab_round_trip():
    d = circle()
    stab = MoveInstance("stab", (0, 2, "lr"))
    d2 = apply_move(d, stab)
    assert d2.components[0][2:4] == (("kink", 1), ("kink", -1))
    destab = invert_move(d, stab)
    assert destab == MoveInstance("destab", (0, 2))
    assert apply_move(d2, destab) == d


def test_destab_then_stab_round_trip():
    d = smooth(qturn(1), kink(1), kink(-1), qturn(1), qturn(1), qturn(1))
    destab = MoveInstance("destab", (0, 1))
    d2 = apply_move(d, destab)
    stab = invert_move(d, destab)
    assert apply_move(d2, stab) == d


def test_destab_wrap_pair():
    d = smooth(kink(-1), qturn(1), qturn(1), qturn(1), qturn(1), kink(1))
    destab = MoveInstance("destab", (0, 5))
    d2 = apply_move(d, destab)
    assert d2 == circle()
    stab = invert_move(d, destab)
    assert diagrams_equal(apply_move(d2, stab), d)


def test_destab_rejects_same_side_pair():
    d = smooth(kink(1), kink(1))
    with pytest.raises(InapplicableMove):
        apply_move(d, MoveInstance("destab", (0, 0)))


def test_pt_stab_uses_cusps():
    d = Diagram(S2, "cusp", ((cusp(1), cusp(1)),))
    moves = [m for m in applicable_moves(d) if m.kind == "stab"]
    assert all(m.site[2] == "ud" for m in moves)
    d2 = apply_move(d, moves[0])
    assert sum(1 for ev in d2.components[0] if ev[0] == "cusp") == 4
    with pytest.raises(InapplicableMove):
        apply_move(d, MoveInstance("stab", (0, 0, "lr")))


def test_kink_slide():
    d = smooth(kink(1), edge("a1"), qturn(1), qturn(1), qturn(1), qturn(1), qturn(1))
    slide = MoveInstance("kink_slide", (0, 0))
    d2 = apply_move(d, slide)
    assert d2.components[0][:2] == (("edge", "a1"), ("kink", 1))
    assert apply_move(d2, invert_move(d, slide)) == d
    with pytest.raises(InapplicableMove):
        apply_move(d, MoveInstance("kink_slide", (0, 2)))  # qturn/qturn


def test_r2_insert_remove_round_trip():
    d = circle()
    ins = MoveInstance("r2_insert", (0, 1, 0, 3))
    d2 = apply_move(d, ins)
    assert len(d2.components[0]) == 8
    rem = invert_move(d, ins)
    assert apply_move(d2, rem) == d


def test_r2_insert_same_gap():
    d = circle()
    ins = MoveInstance("r2_insert", (0, 2, 0, 2))
    d2 = apply_move(d, ins)
    rem = invert_move(d, ins)
    assert apply_move(d2, rem) == d


def test_r2_remove_detected_in_catalogue():
    d = apply_move(circle(), MoveInstance("r2_insert", (0, 0, 0, 2)))
    removes = [m for m in applicable_moves(d) if m.kind == "r2_remove"]
    assert removes
    for rem in removes:
        assert diagrams_equal(apply_move(d, rem), circle())


def test_r2_remove_then_insert_recreates_canonically():
    d = apply_move(circle(), MoveInstance("r2_insert", (0, 1, 0, 3)))
    rem = [m for m in applicable_moves(d) if m.kind == "r2_remove"][0]
    d2 = apply_move(d, rem)
    ins = invert_move(d, rem)
    assert diagrams_equal(apply_move(d2, ins), d)


def test_r3_swaps_and_self_inverts():
    # three strands pairwise crossing: a triangle on one component
    d = smooth(
        cross("1", 1),
        cross("2", 1),
        qturn(1),
        cross("2", 2),
        cross("3", 1),
        qturn(1),
        cross("3", 2),
        cross("1", 2),
        qturn(1),
        qturn(1),
    )
    r3s = [m for m in applicable_moves(d) if m.kind == "r3"]
    assert r3s
    move = r3s[0]
    d2 = apply_move(d, move)
    assert d2 != d
    assert invert_move(d, move) == move  # self-inverse
    assert apply_move(d2, move) == d


def test_transvection_shifts_fiber_only():
    d = circle()
    mv = transvection([("ab", 2, [(0, 1, 1), (0, 3, -1)])])
    d2 = apply_move(d, mv)
    assert transvection_fiber_shift(mv, 0) == 0
    lc, lc2 = lift_class(d, UT, 0), lift_class(d2, UT, 0)
    assert lc2.base_part == lc.base_part and lc2.fiber_part == lc.fiber_part

    mv = transvection([("a", 1, [(0, 0, 1)])])
    d3 = apply_move(d, mv)
    assert d3.components[0][0] == ("kink", 1)
    assert transvection_fiber_shift(mv, 0) == 1


def test_transvection_pt_inserts_single_cusps():
    d = Diagram(S2, "cusp", ((cusp(1), cusp(1)),))
    mv = transvection([("a", 1, [(0, 0, 1)])])
    d2 = apply_move(d, mv)
    assert d2.components[0][0] == ("cusp", 1)
    assert len(d2.components[0]) == 3


def test_transvection_validation():
    with pytest.raises(ValueError):
        transvection([("a", 0, [(0, 0, 1)])])
    with pytest.raises(ValueError):
        transvection([("a", 1, [(0, 0, 2)])])
    with pytest.raises(InapplicableMove):
        invert_move(circle(), transvection([("a", 1, [(0, 0, 1)])]))


# ----------------------------------------------------------------------
# kink macros


def test_expand_contract_kink():
    d = smooth(kink(1), qturn(1), qturn(1), qturn(1), qturn(1), kink(-1))
    d2 = expand_kink(d, (0, 0))
    comp = d2.components[0]
    assert comp[0][0] == "cross" and comp[5][0] == "cross"
    assert comp[1:5] == (("qturn", 1),) * 4
    assert contract_kink(d2, (0, 0)) == d
    with pytest.raises(InapplicableMove):
        expand_kink(d, (0, 1))
    with pytest.raises(InapplicableMove):
        contract_kink(d, (0, 0))


def test_expand_kink_preserves_lift_class():
    d = smooth(kink(1), qturn(1), qturn(1), qturn(1), qturn(1), kink(-1))
    d2 = expand_kink(d, (0, 0))
    assert lift_class(d, UT, 0) == lift_class(d2, UT, 0)


# ----------------------------------------------------------------------
# canonical forms


def test_canonical_key_rotation_invariant():
    events = [edge("a1"), qturn(1), edge("b1"), qturn(1), qturn(1), qturn(1)]
    keys = {canonical_key(smooth(*(events[r:] + events[:r]))) for r in range(6)}
    assert len(keys) == 1


def test_canonical_key_component_order_invariant():
    c1 = (edge("a1"), qturn(1), qturn(1), qturn(1), qturn(1), qturn(1))
    c2 = (edge("b1"), qturn(1), qturn(1), qturn(1), qturn(1), qturn(1))
    d1 = Diagram(S2, "smooth", (c1, c2))
    d2 = Diagram(S2, "smooth", (c2, c1))
    assert canonical_key(d1) == canonical_key(d2)


def test_canonical_key_id_invariant():
    d1 = smooth(cross("1", 1), cross("1", 2), qturn(1), qturn(1), qturn(1), qturn(1))
    d2 = smooth(cross("9", 1), cross("9", 2), qturn(1), qturn(1), qturn(1), qturn(1))
    assert diagrams_equal(d1, d2)


def test_canonical_key_distinguishes_structure():
    d1 = smooth(kink(1), kink(-1))
    d2 = smooth(kink(-1), kink(1))
    # as cyclic words these are rotations of each other
    assert diagrams_equal(d1, d2)
    d3 = smooth(kink(1), kink(1))
    assert not diagrams_equal(d1, d3)


# ----------------------------------------------------------------------
# search


def budget(**kw):
    defaults = dict(max_moves=6, max_states=100000)
    defaults.update(kw)
    return SearchBudget(**defaults)


def test_equiv_identical_diagrams():
    d = vertex_link_curve(S2)
    v = equivalent_bounded(d, d, UT, budget())
    assert v.equivalent and v.certificate == ()


def test_equiv_one_stab():
    d = vertex_link_curve(S2)
    d2 = apply_move(d, MoveInstance("stab", (0, 3, "lr")))
    v = equivalent_bounded(d, d2, UT, budget())
    assert v.equivalent
    assert len(v.certificate) == 1
    assert diagrams_equal(replay(d, v.certificate), d2)


def test_equiv_distinguishes_component_count():
    d = vertex_link_curve(S2)
    d2 = d.with_components(list(d.components) + [()])
    v = equivalent_bounded(d, d2, UT, budget())
    assert v.status == "distinguished"
    assert v.invariant[0] == "component_count"


def test_equiv_distinguishes_shadow_class():
    d1 = smooth(edge("a1"), qturn(1), qturn(1), qturn(1), qturn(1), qturn(1))
    d2 = smooth(edge("b1"), qturn(1), qturn(1), qturn(1), qturn(1), qturn(1))
    v = equivalent_bounded(d1, d2, UT, budget())
    assert v.status == "distinguished"
    assert v.invariant[0] == "shadow_classes"


def test_equiv_distinguishes_fiber():
    d1 = circle()  # turning 1
    d2 = smooth(kink(1), kink(1))  # turning 2; same contractible shadow
    v = equivalent_bounded(d1, d2, UT, budget())
    assert v.status == "distinguished"
    assert v.invariant[0] == "lift_class_fiber"


def test_equiv_fiber_gap_closed_by_transvection_generator():
    d1 = circle()
    gen = transvection([("a", 1, [(0, 0, 1)])])
    d2 = apply_move(d1, gen)  # one extra left loop: fiber degree 2
    v = equivalent_bounded(
        d1, d2, UT, budget(transvection_generators=(gen,), max_moves=2)
    )
    assert v.equivalent
    assert diagrams_equal(replay(d1, v.certificate), d2)


def test_equiv_unknown_under_tiny_budget():
    d = vertex_link_curve(S2)
    d2 = d
    for p in (0, 2, 4):
        d2 = apply_move(d2, MoveInstance("stab", (0, p, "lr")))
    v = equivalent_bounded(d, d2, UT, budget(max_moves=1))
    assert v.status == "unknown"


def test_equiv_mode_mismatch():
    d1 = circle()
    d2 = Diagram(S2, "cusp", ((cusp(1), cusp(1)),))
    with pytest.raises(ModeMismatch):
        equivalent_bounded(d1, d2, UT, budget())


def test_equiv_random_scrambles_replayable():
    rng = random.Random(11)
    for trial in range(8):
        d = random_diagram(rng, S2, "smooth", max_loose_events=4, max_crossings=1)
        cur = d
        for _ in range(rng.randint(1, 3)):
            moves = applicable_moves(cur)
            cur = apply_move(cur, rng.choice(moves))
        v = equivalent_bounded(d, cur, UT, budget())
        assert v.equivalent, f"trial {trial}: {v.status}"
        assert diagrams_equal(replay(d, v.certificate), cur)


def test_random_move_preserves_lift_class():
    rng = random.Random(5)
    for _ in range(40):
        mode = rng.choice(["smooth", "cusp"])
        bundle = UT if mode == "smooth" else PT
        d = random_diagram(rng, S2, mode)
        moves = applicable_moves(d)
        if not moves:
            continue
        d2 = apply_move(d, rng.choice(moves))
        for ci in range(len(d.components)):
            assert lift_class(d, bundle, ci) == lift_class(d2, bundle, ci)


# ----------------------------------------------------------------------
# serialization


def test_move_json_round_trip():
    moves = [
        MoveInstance("stab", (0, 2, "lr")),
        MoveInstance("destab", (0, 1)),
        MoveInstance("r2_remove", ((0, 1), (1, 0))),
        MoveInstance("r3", ((0, 0), (0, 3), (0, 6))),
        transvection([("ab", 2, [(0, 1, 1)])]),
    ]
    for mv in moves:
        assert move_from_json(move_to_json(mv)) == mv
