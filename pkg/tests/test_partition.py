import pytest

from fsscoword.element import GroupElement, identity
from fsscoword.instances import load
from fsscoword.partition import big_partition, detection_depth, small_partition, verify_test_partition
from fsscoword.address import is_prefix

# Frozen by hand from the charts in the bundled data files.
SMALL = {
    "v2": [(1, 1), (1, 2), (2,)],
    "m2": [(1, 1), (1, 2), (2, 1), (2, 2)],
    "v2f": [(1, 1), (1, 2), (2, 1), (2, 2)],
    "t2": [(1, 1), (1, 2), (2, 1), (2, 2)],
}
BIG = {
    "v2": [(1, 1), (1, 2), (2,)],
    "m2": [(1,), (2,)],
    "v2f": [(1, 1), (1, 2), (2, 1), (2, 2)],
    "t2": [(1,), (2,)],
}


def test_big_partition_examples(v2):
    s, g = v2
    assert big_partition([g["σ"]]) == [(1,), (2,)]
    assert big_partition([g["σ"], g["τ"]]) == [(1, 1), (1, 2), (2,)]
    assert big_partition([identity(s)]) == [()]
    with pytest.raises(ValueError):
        big_partition([])


def test_bundled_partitions(instance):
    name, _, g = instance
    gens = list(g.values())
    assert big_partition(gens) == BIG[name]
    assert small_partition(gens) == SMALL[name]


def test_m2_global_mirror_splits_one_level(m2):
    _, g = m2
    assert big_partition([g["μ"]]) == [()]
    assert small_partition([g["μ"]]) == [(1,), (2,)]


def test_depth_two_symbol_splits_two_levels():
    s, g = load("t2")
    assert detection_depth(s, 1) == 2
    assert detection_depth(s, 2) == 1
    # big part () of type 1 is split two levels
    assert big_partition([g["t"]]) == [()]
    assert small_partition([g["t"]]) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    # big parts /1, /2 of type 2 are split one level, landing on the same balls
    halves = GroupElement(s, (((1,), (1,), "e2"), ((2,), (2,), "e2")))
    assert big_partition([halves]) == [(1,), (2,)]
    assert small_partition([halves]) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_small_refines_big(instance):
    _, _, g = instance
    gens = list(g.values())
    big = big_partition(gens)
    for p in small_partition(gens):
        assert sum(is_prefix(b, p) for b in big) == 1


def test_nontrivial_symbols_move_a_small_part(instance):
    _, s, g = instance
    gens = list(g.values())
    small = small_partition(gens)
    for b in big_partition(gens):
        t = s.type_of(b)
        inside = [p[len(b) :] for p in small if is_prefix(b, p)]
        for a in s.symbols_of(t):
            if s.is_trivial(a):
                continue
            assert any(s.follow(a, rel)[0] != rel for rel in inside)


def test_verify_small_partition(instance):
    _, _, g = instance
    assert verify_test_partition(small_partition(list(g.values())), g, 4)


def test_trivial_partition_fails(v2):
    _, g = v2
    assert not verify_test_partition([()], {"σ": g["σ"]}, 1)
    assert not verify_test_partition([()], g, 4)


def test_identity_only_generators_pass_vacuously(v2):
    s, _ = v2
    assert verify_test_partition([()], {"e": identity(s)}, 3)
    assert verify_test_partition([()], {"e": identity(s)}, 0)


def test_non_partition_rejected(v2):
    _, g = v2
    assert not verify_test_partition([(1,)], g, 2)
