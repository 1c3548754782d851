"""Big and small ball partitions, and the test-partition check."""

from __future__ import annotations

from typing import Mapping, Sequence

from .address import Address
from .element import GroupElement, fixes_ball, from_word, is_identity, is_partition, words_up_to

__all__ = ["Partition", "big_partition", "small_partition", "verify_test_partition", "detection_depth"]

Partition = list[Address]


def big_partition(generators: Sequence[GroupElement]) -> Partition:
    """Coarsest ball partition in which every part lies inside a region of every generator."""
    if not generators:
        raise ValueError("need at least one generator")
    structure = generators[0].structure
    parts: Partition = []

    def split(path: Address) -> None:
        if all(g.region_containing(path) is not None for g in generators):
            parts.append(path)
            return
        for n in range(1, structure.arity(structure.type_of(path)) + 1):
            split(path + (n,))

    split(())
    return sorted(parts)


def detection_depth(structure, t: int) -> int:
    """Depth below a type-``t`` ball at which every nontrivial local symbol moves some ball."""
    depths = [structure.nontriviality_depth(a) for a in structure.symbols_of(t)]
    return max((d for d in depths if d is not None), default=0)


def small_partition(generators: Sequence[GroupElement]) -> Partition:
    """Refine each big part down to the detection depth of its type."""
    structure = generators[0].structure
    parts: Partition = []
    for p in big_partition(generators):
        parts.extend(structure.descendants(p, detection_depth(structure, structure.type_of(p))))
    return sorted(parts)


def verify_test_partition(
    partition: Sequence[Address],
    generators: Mapping[str, GroupElement],
    max_len: int,
) -> bool:
    """Exhaustively check the test-partition property on words up to ``max_len``.

    A word all of whose cyclic shifts fix every part must be the identity.
    """
    names = list(generators)
    structure = next(iter(generators.values())).structure
    if not is_partition(structure, partition):
        return False
    for word in words_up_to(names, max_len):
        shifts = [word[j:] + word[:j] for j in range(max(len(word), 1))]
        if all(fixes_ball(from_word(w, generators), p) for w in shifts for p in partition):
            if not is_identity(from_word(word, generators)):
                return False
    return True
