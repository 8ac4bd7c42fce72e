"""Diagram data model, validation, shadow words, and the text format."""

import pytest

from curvelift import (
    CircleBundle,
    Diagram,
    DiagramSyntaxError,
    Surface,
    parse,
    self_intersection_count,
    serialize,
    shadow_word,
    validate,
)
from curvelift.diagrams import cross, cusp, edge, kink, qturn

S2 = Surface(2)
UT = CircleBundle.unit_tangent(S2)


def smooth(*events):
    return Diagram(S2, "smooth", (tuple(events),))


def test_valid_empty_diagram():
    d = Diagram(S2, "smooth", ())
    assert validate(d) == []


def test_vertex_link_fixture_valid():
    d = smooth(*[edge(n) for n in ("a1", "b1", "a1'", "b1'", "a2", "b2", "a2'", "b2'")])
    assert validate(d) == []


def test_unknown_generator_flagged():
    d = smooth(edge("a3"))
    rules = [v.rule for v in validate(d)]
    assert "UnknownGenerator" in rules


def test_unpaired_crossing_flagged():
    d = smooth(cross("1", 1), qturn(1), qturn(1), qturn(1), qturn(1))
    violations = validate(d)
    assert any(v.rule == "UnpairedCrossing" and "1" in v.detail for v in violations)


def test_cusp_in_smooth_mode_flagged():
    d = smooth(cusp(1), cusp(-1))
    assert any(v.rule == "CuspInSmoothMode" for v in validate(d))


def test_odd_cusp_count_flagged():
    d = Diagram(S2, "cusp", ((cusp(1),),))
    assert any(v.rule == "OddCuspCount" for v in validate(d))
    ok = Diagram(S2, "cusp", ((cusp(1), cusp(1)),))
    assert validate(ok) == []


def test_non_integral_turning_flagged():
    d = smooth(qturn(1))
    assert any(v.rule == "NonIntegralTurning" for v in validate(d))
    ok = smooth(qturn(1), qturn(1), qturn(1), qturn(1))
    assert validate(ok) == []


def test_shadow_word_reduction():
    d = smooth(edge("a1"), qturn(1), edge("b1"), edge("b1'"), edge("a2"))
    # b1 b1' cancels; cyclic order keeps a1 a2
    assert shadow_word(d, 0) == S2.encode("a1 a2")


def test_shadow_word_rotation_invariant():
    events = [edge("a1"), edge("b1"), edge("a2")]
    words = set()
    for r in range(3):
        rot = events[r:] + events[:r]
        from curvelift.words import _minimal_rotation

        words.add(_minimal_rotation(shadow_word(smooth(*rot), 0)))
    assert len(words) == 1


def test_self_intersection_count():
    d = smooth(cross("1", 1), cross("1", 2), kink(1), kink(-1))
    assert self_intersection_count(d) == 3


def test_round_trip():
    text = (
        "surface genus=2 boundary=0\n"
        "bundle UT\n"
        "comp: a1 X1.1 Q+ L- b2' X1.2 Q+ Q+ Q+ Q+ Q+\n"
        "comp: L+\n"
    )
    d, b = parse(text)
    assert b == UT
    assert serialize(d, b) == text
    d2, b2 = parse(serialize(d, b))
    assert d2 == d and b2 == b


def test_parse_comments_and_blank_lines():
    text = "# header\nsurface genus=1 boundary=1\n\nbundle TRIVIAL  # note\ncomp: d1\n"
    d, b = parse(text)
    assert d.surface == Surface(1, 1)
    assert d.components == ((edge("d1"),),)


def test_parse_pt_mode():
    d, b = parse("surface genus=2 boundary=0\nbundle PT\ncomp: C^ Cv\n")
    assert d.mode == "cusp"
    assert b == CircleBundle.projective_tangent(S2)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "surface genus=2\nbundle UT\n",
        "surface genus=2 boundary=0\n",
        "surface genus=2 boundary=0\nbundle XX\n",
        "surface genus=2 boundary=0\nbundle UT\ncomp: zz\n",
        "surface genus=2 boundary=0\nbundle UT\ncomp: a9\n",
        "surface genus=2 boundary=0\nbundle UT\ncomp: X1.3\n",
        "surface genus=2 boundary=0\nbundle UT\ncomp: X1.1 X1.1\n",
        "surface genus=2 boundary=0\nbundle UT\nwhat: ever\n",
        # annotations are rejected by the plain parser
        "surface genus=2 boundary=0\nbundle UT\ncomp: a1\ntwist: 0 0 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(DiagramSyntaxError):
        parse(text)


def test_syntax_error_reports_line():
    try:
        parse("surface genus=2 boundary=0\nbundle UT\ncomp: zz\n")
    except DiagramSyntaxError as exc:
        assert exc.line == 3
    else:  # pragma: no cover
        raise AssertionError("expected a syntax error")


def test_empty_component_serializes_without_trailing_space():
    d = Diagram(S2, "smooth", ((),))
    text = serialize(d, UT)
    assert "comp:\n" in text
    d2, _ = parse(text)
    assert d2 == d


def test_fresh_crossing_id():
    d = smooth(cross("1", 1), cross("1", 2), cross("3", 1), cross("3", 2))
    assert d.fresh_crossing_id() == "2"
