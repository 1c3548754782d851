import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsscoword.element import (
    ChartError,
    GroupElement,
    Region,
    action_equal,
    compose,
    equals,
    fixes_ball,
    format_generators,
    from_word,
    identity,
    image_of_ball,
    image_parts,
    invert,
    is_identity,
    is_partition,
    meets,
    parse_generators,
    words_up_to,
)
from fsscoword.instances import load

from oracles import TRIVIAL_WORDS, act_symbol, act_word, points, word_is_trivial, word_meets



def test_identity_chart(v2):
    s, _ = v2
    e = identity(s)
    assert e.chart == (Region((), (), "e"),)
    assert is_identity(e)
    assert image_of_ball(e, (1, 2)) == (1, 2)


def test_from_word_examples(v2):
    s, g = v2
    assert from_word((), g).chart == identity(s).chart
    assert from_word(("σ",), g).chart == g["σ"].chart
    assert is_identity(from_word(("σ", "σ"), g))
    assert not is_identity(g["σ"])
    with pytest.raises(KeyError):
        from_word(("σ", "nope"), g)


def test_images(v2):
    _, g = v2
    assert image_of_ball(g["σ"], (1, 2)) == (2, 2)
    assert image_of_ball(g["σ"], ()) == frozenset({(1,), (2,)})
    st_ = compose(g["σ"], g["τ"])
    assert image_of_ball(st_, (1, 1)) == (2, 2)
    assert image_of_ball(st_, (2,)) == (1,)


def test_sigma_tau_do_not_commute(v2):
    _, g = v2
    # τ is an involution, so τ⁻¹ = τ
    assert equals(invert(g["τ"]), g["τ"])
    assert not is_identity(from_word(("σ", "τ", "σ", "τ"), g))


def test_inverse(v2):
    s, g = v2
    assert equals(invert(g["σ"]), g["σ"])
    assert equals(invert(identity(s)), identity(s))
    assert is_identity(compose(invert(g["τ"]), g["τ"]))


def test_chart_validation(v2):
    s, _ = v2
    with pytest.raises(ChartError):
        GroupElement(s, (((1,), (1,), "e"),))  # sources do not cover
    with pytest.raises(ChartError):
        GroupElement(s, (((1,), (1,), "e"), ((2,), (1,), "e")))  # targets overlap
    with pytest.raises(ChartError):
        GroupElement(s, (((), (), "zz"),))
    with pytest.raises(ChartError):
        GroupElement(s, (((3,), (3,), "e"),))


def test_chart_type_check():
    s, _ = load("t2")
    with pytest.raises(ChartError):
        GroupElement(s, (((), (), "e2"),))


def test_is_partition(v2):
    s, _ = v2
    assert is_partition(s, [(1,), (2, 1), (2, 2)])
    assert is_partition(s, [()])
    assert not is_partition(s, [(1,), (1, 2), (2,)])
    assert not is_partition(s, [(1,)])
    assert not is_partition(s, [])


def test_generator_text_round_trip(instance):
    _, s, g = instance
    again = parse_generators(format_generators(g), s)
    assert list(again) == list(g)
    assert all(again[k].chart == g[k].chart for k in g)


@pytest.mark.parametrize(
    "text",
    ["map /1 -> /2 via e", "gen a\nmap /1 /2 via e", "gen a\ngen a\n", "gen a\nmap /1 -> /1 via e", "frob"],
)
def test_generator_parse_errors(v2, text):
    s, _ = v2
    with pytest.raises(ChartError):
        parse_generators(text, s)


def test_triviality_matches_frozen_oracle(instance):
    name, s, g = instance
    for w in words_up_to(list(g), 4):
        assert is_identity(from_word(w, g)) == (" ".join(w) in TRIVIAL_WORDS[name])


def test_triviality_matches_point_action(instance):
    _, s, g = instance
    for w in words_up_to(list(g), 3):
        assert is_identity(from_word(w, g)) == word_is_trivial(s, g, w)


def test_meets_matches_point_action(instance):
    _, s, g = instance
    balls = [p for d in range(3) for p in s.descendants((), d)]
    for w in words_up_to(list(g), 2):
        el = from_word(w, g)
        for b1 in balls:
            for b2 in balls:
                assert meets(el, b1, b2) == word_meets(s, g, w, b1, b2)


def test_fixes_ball(v2):
    _, g = v2
    assert fixes_ball(g["τ"], (1,))
    assert fixes_ball(g["τ"], (2,))
    assert not fixes_ball(g["τ"], (1, 1))
    assert fixes_ball(g["σ"], ())
    assert not fixes_ball(g["σ"], (1,))


def _word_strategy(names, max_len):
    return st.lists(st.sampled_from(names), max_size=max_len).map(tuple)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["v2", "m2", "v2f", "t2"]), st.data())
def test_oracle_soundness(name, data):
    s, g = load(name)
    u = data.draw(_word_strategy(list(g), 4))
    v = data.draw(_word_strategy(list(g), 4))
    whole = from_word(u + v, g)
    assert action_equal(whole, compose(from_word(u, g), from_word(v, g)), 6)
    # points deep enough to sit inside a region at every step
    for p in points(s, depth=len(u + v) + 3):
        assert image_parts(whole, p) == [act_word(s, g, u + v, p)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["v2", "m2", "v2f", "t2"]), st.data())
def test_group_laws(name, data):
    s, g = load(name)
    a, b, c = (from_word(data.draw(_word_strategy(list(g), 3)), g) for _ in range(3))
    assert equals(compose(a, compose(b, c)), compose(compose(a, b), c))
    assert is_identity(compose(invert(a), a)) and is_identity(compose(a, invert(a)))
    assert equals(invert(invert(a)), a)
    assert equals(compose(a, identity(s)), a)
    assert action_equal(compose(a, identity(s)), a, 6)


def test_region_property(instance):
    _, s, g = instance
    for el in g.values():
        for r in el.chart:
            for p in points(s, r.source, depth=len(r.source) + 4):
                assert act_word(s, {"x": el}, ("x",), p) == r.target + act_symbol(s, r.symbol, p[len(r.source) :])
