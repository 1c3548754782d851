"""Deciding the co-word problem with witness automata.

A word is nontrivial iff one of its cyclic shifts moves part of some piece
of the test partition into a different piece.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .address import Address
from .element import GroupElement
from .partition import small_partition, verify_test_partition
from .structure import SimilarityStructure
from .witness import WitnessSpec, automaton_for

__all__ = ["cyclic_shifts", "CoWordInstance", "coword_member"]


def cyclic_shifts(word: Sequence[str]) -> list[tuple[str, ...]]:
    word = tuple(word)
    if not word:
        return [word]
    return [word[j:] + word[:j] for j in range(len(word))]


@dataclass(frozen=True, eq=False)
class CoWordInstance:
    structure: SimilarityStructure
    generators: Mapping[str, GroupElement]
    partition: tuple[Address, ...]
    specs: tuple[WitnessSpec, ...] = field(repr=False)

    @classmethod
    def build(
        cls,
        generators: Mapping[str, GroupElement],
        partition: Sequence[Address] | None = None,
        verify_len: int = 3,
    ) -> CoWordInstance:
        """Set up witness specs for every ordered pair of distinct parts.

        The partition defaults to the small partition and is checked to be a
        test partition on all words up to ``verify_len``.
        """
        generators = dict(generators)
        structure = next(iter(generators.values())).structure
        parts = tuple(partition if partition is not None else small_partition(list(generators.values())))
        if verify_len and not verify_test_partition(parts, generators, verify_len):
            raise ValueError(f"not a test partition (checked to length {verify_len})")
        specs = tuple(
            WitnessSpec(structure, tuple(generators.items()), b1, b2) for b1 in parts for b2 in parts if b1 != b2
        )
        return cls(structure, generators, parts, specs)

    def witnesses(self, word: Sequence[str]) -> list[WitnessSpec]:
        """Pairs whose witness language contains ``word`` itself (no shifting)."""
        return [spec for spec in self.specs if automaton_for(spec).accepts(word)]

    def in_union(self, word: Sequence[str]) -> bool:
        return any(automaton_for(spec).accepts(word) for spec in self.specs)

    def member(self, word: Sequence[str]) -> bool:
        for letter in word:
            if letter not in self.generators:
                raise KeyError(f"unknown generator {letter!r}")
        return any(self.in_union(w) for w in cyclic_shifts(word))


def coword_member(inst: CoWordInstance, word: Sequence[str]) -> bool:
    """True iff ``word`` represents a nontrivial element."""
    return inst.member(word)
