import random

import pytest

from fsscoword.coword import CoWordInstance, coword_member, cyclic_shifts
from fsscoword.element import words_up_to
from fsscoword.instances import load

from oracles import TRIVIAL_WORDS


@pytest.fixture(scope="module")
def instances():
    out = {}
    for name in ("v2", "m2", "v2f", "t2"):
        _, g = load(name)
        out[name] = (g, CoWordInstance.build(g, verify_len=3))
    return out


def test_cyclic_shifts():
    assert cyclic_shifts("abc") == [tuple("abc"), tuple("bca"), tuple("cab")]
    assert cyclic_shifts(()) == [()]
    assert cyclic_shifts("aa") == [("a", "a"), ("a", "a")]


def test_examples(instances):
    _, inst = instances["v2"]
    assert not coword_member(inst, ("σ", "σ"))
    assert coword_member(inst, ("σ",))
    assert not coword_member(inst, ())
    assert coword_member(inst, ("σ", "τ", "σ", "τ"))


def test_pairs_cover_all_distinct_parts(instances):
    _, inst = instances["m2"]
    pairs = {(sp.b1, sp.b2) for sp in inst.specs}
    parts = inst.partition
    assert len(pairs) == len(parts) * (len(parts) - 1)
    assert all(b1 != b2 for b1, b2 in pairs)


@pytest.mark.parametrize("name", ["v2f", "t2"])
def test_matches_frozen_triviality(instances, name):
    g, inst = instances[name]
    for w in words_up_to(list(g), 4):
        assert coword_member(inst, w) == (" ".join(w) not in TRIVIAL_WORDS[name])


def test_rotation_invariance(instances):
    rng = random.Random(7)
    for g, inst in instances.values():
        names = list(g)
        for _ in range(15):
            w = tuple(rng.choice(names) for _ in range(rng.randint(1, 5)))
            answers = {coword_member(inst, r) for r in cyclic_shifts(w)}
            assert len(answers) == 1


def test_unrotated_membership_implies_member(instances):
    for g, inst in instances.values():
        for w in words_up_to(list(g), 3):
            if inst.in_union(w):
                assert coword_member(inst, w)
            if inst.witnesses(w):
                assert inst.in_union(w)


def test_unknown_generator(instances):
    _, inst = instances["v2"]
    with pytest.raises(KeyError):
        coword_member(inst, ("σ", "ω"))


def test_rejects_non_test_partition():
    _, g = load("v2")
    with pytest.raises(ValueError):
        CoWordInstance.build(g, partition=[()], verify_len=2)
    # skipping the check leaves an instance that misses σ
    inst = CoWordInstance.build(g, partition=[(1,), (2,)], verify_len=0)
    assert not coword_member(inst, ("τ",))
