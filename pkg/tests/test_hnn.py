"""Britton reduction over HNN extensions of free groups."""

import pytest

from curvelift import (
    HNNExtension,
    HNNWord,
    MalformedAssociatedSubgroup,
    britton_reduce,
    is_trivial_hnn,
)


def make_ext():
    return HNNExtension(
        generators=("a", "b", "c", "d", "e"),
        a_letters=frozenset("ab"),
        b_letters=frozenset("cd"),
        phi=(("a", "c"), ("b", "d")),
    )


def test_extension_validation():
    make_ext()
    with pytest.raises(MalformedAssociatedSubgroup):
        HNNExtension(("a", "b"), frozenset("a"), frozenset("b"), (("a", "a"),))
    with pytest.raises(MalformedAssociatedSubgroup):
        HNNExtension(("a", "b"), frozenset("az"), frozenset("b"), (("a", "b"),))


def test_phi_word():
    ext = make_ext()
    assert ext.phi_word("aB") == "cD"
    assert ext.phi_inverse_word("cD") == "aB"
    with pytest.raises(MalformedAssociatedSubgroup):
        ext.phi_word("e")


def test_from_items_and_inverse():
    ext = make_ext()
    hw = HNNWord.from_items(ext, ["a", 1, "e", -2, "b"])
    assert hw.base_words == ("a", "e", "", "b")
    assert hw.signs == (1, -1, -1)
    inv = hw.formal_inverse()
    assert inv.signs == (1, 1, -1)
    assert inv.base_words == ("B", "", "E", "A")
    assert is_trivial_hnn(hw.concat(inv))


def test_pinch_reduction():
    ext = make_ext()
    # t a t^-1 = c
    hw = HNNWord.from_items(ext, [1, "a", -1])
    red = britton_reduce(hw)
    assert red.t_length == 0
    assert red.base_words == ("c",)
    # t^-1 c t = a
    hw = HNNWord.from_items(ext, [-1, "c", 1])
    assert britton_reduce(hw).base_words == ("a",)


def test_pinch_free_is_stable():
    ext = make_ext()
    # middle 'e' lies in neither associated subgroup: no pinch
    hw = HNNWord.from_items(ext, [1, "e", -1])
    red = britton_reduce(hw)
    assert red.t_length == 2
    assert not red.has_pinch()
    assert not is_trivial_hnn(hw)


def test_nested_pinches_collapse():
    ext = make_ext()
    # t ( t a t^-1 ) A' t^-1 with the inner pinch producing c, then cA is not
    # in <a,b>... build a fully collapsing word instead: t a t^-1 C
    hw = HNNWord.from_items(ext, [1, "a", -1, "C"])
    assert is_trivial_hnn(hw)
    # nested: t^-1 ( t b t^-1 ) t = b after two pinches
    hw = HNNWord.from_items(ext, [-1, 1, "b", -1, 1])
    red = britton_reduce(hw)
    assert red.t_length == 0 and red.base_words == ("b",)


def test_trivial_detection_requires_empty_base():
    ext = make_ext()
    assert not is_trivial_hnn(HNNWord.from_items(ext, ["e"]))
    assert is_trivial_hnn(HNNWord.from_items(ext, ["aA"]))


def test_overlapping_associated_subgroups():
    ext = HNNExtension(
        generators=("a", "b", "c"),
        a_letters=frozenset("ab"),
        b_letters=frozenset("bc"),
        phi=(("a", "b"), ("b", "c")),
    )
    # t a t^-1 = b, then t b t^-1 = c
    hw = HNNWord.from_items(ext, [2, "a", -2])
    red = britton_reduce(hw)
    assert red.t_length == 0 and red.base_words == ("c",)
