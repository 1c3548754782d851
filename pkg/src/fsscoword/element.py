"""Elements of the similarity group as finite charts.

A chart is a list of regions ``(source, target, symbol)``: the element maps
the ball ``source`` onto the ball ``target`` by the local ``symbol`` (read
through the canonical identifications of both balls with their type
representative).  Sources partition the space, and so do targets.

This module is the direct-action oracle: everything the automata decide is
cross-checked against the answers computed here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .address import Address, format_address, is_prefix, parse_address
from .structure import SimilarityStructure, StructureError

__all__ = [
    "ChartError",
    "Region",
    "GroupElement",
    "identity",
    "from_word",
    "compose",
    "invert",
    "image_of_ball",
    "image_parts",
    "is_identity",
    "equals",
    "fixes_ball",
    "meets",
    "is_partition",
    "parse_generators",
    "format_generators",
    "all_balls",
    "action_equal",
    "words_up_to",
]


class ChartError(ValueError):
    pass


class Region(NamedTuple):
    source: Address
    target: Address
    symbol: str

    def __str__(self) -> str:
        return f"{format_address(self.source)} -> {format_address(self.target)} via {self.symbol}"


def is_partition(structure: SimilarityStructure, parts: Iterable[Sequence[int]]) -> bool:
    """True iff the balls ``parts`` are pairwise disjoint and cover the space."""
    parts = {tuple(p) for p in parts}
    if not parts:
        return False
    inner = {p[:i] for p in parts for i in range(len(p))}
    if parts & inner:
        return False

    def covered(path: Address, t: int) -> bool:
        if path in parts:
            return True
        if path not in inner:
            return False
        return all(covered(path + (n,), structure.child_type(t, n)) for n in range(1, structure.arity(t) + 1))

    return covered((), 1)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A chart for an element of the group; equality is by action, see :func:`equals`."""

    structure: SimilarityStructure
    chart: tuple[Region, ...]

    def __post_init__(self):
        s = self.structure
        chart = tuple(Region(tuple(a), tuple(b), c) for a, b, c in self.chart)
        object.__setattr__(self, "chart", chart)
        for r in chart:
            try:
                ts, tt = s.type_of(r.source), s.type_of(r.target)
            except StructureError as exc:
                raise ChartError(str(exc)) from None
            if r.symbol not in s.symbols:
                raise ChartError(f"unknown symbol {r.symbol!r} in region {r}")
            if not ts == tt == s.symbols[r.symbol].type:
                raise ChartError(f"type mismatch in region {r}")
        if not is_partition(s, [r.source for r in chart]):
            raise ChartError("sources do not partition the space")
        if not is_partition(s, [r.target for r in chart]):
            raise ChartError("targets do not partition the space")

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __str__(self) -> str:
        return "; ".join(str(r) for r in self.chart)

    @property
    def sources(self) -> list[Address]:
        return [r.source for r in self.chart]

    def region_containing(self, ball: Sequence[int]) -> Region | None:
        ball = tuple(ball)
        for r in self.chart:
            if is_prefix(r.source, ball):
                return r
        return None

    def max_region_depth(self) -> int:
        return max(len(r.source) for r in self.chart)


def identity(structure: SimilarityStructure) -> GroupElement:
    return GroupElement(structure, (Region((), (), structure.identities[1]),))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Chart of ``g o h`` (``h`` acts first)."""
    s = g.structure
    out = []
    todo = list(reversed(h.chart))
    while todo:
        src, tgt, sym = todo.pop()
        region = g.region_containing(tgt)
        if region is not None:
            img, rest = s.follow(region.symbol, tgt[len(region.source) :])
            out.append(Region(src, region.target + img, s.compose(rest, sym)))
            continue
        # tgt strictly contains regions of g: split this region one level
        t = s.type_of(src)
        sd = s.symbols[sym]
        for n in range(s.arity(t), 0, -1):
            todo.append(Region(src + (n,), tgt + (sd.perm[n - 1],), sd.restrict[n - 1]))
    return GroupElement(s, tuple(out))


def invert(g: GroupElement) -> GroupElement:
    s = g.structure
    return GroupElement(s, tuple(Region(r.target, r.source, s.invert(r.symbol)) for r in g.chart))


def from_word(word: Sequence[str], generators: Mapping[str, GroupElement]) -> GroupElement:
    """The element ``s1 o s2 o ... o sn`` (the last letter acts first)."""
    if not generators and not word:
        raise ChartError("cannot build the identity without a structure")
    for letter in word:
        if letter not in generators:
            raise KeyError(f"unknown generator {letter!r}")
    structure = next(iter(generators.values())).structure
    result = identity(structure)
    for letter in reversed(word):
        result = compose(generators[letter], result)
    return result


def image_parts(g: GroupElement, ball: Sequence[int]) -> list[Address]:
    """Balls partitioning ``g(ball)``: one ball if ``ball`` sits in a region, else the images of the regions inside it."""
    ball = tuple(ball)
    region = g.region_containing(ball)
    if region is not None:
        img, _ = g.structure.follow(region.symbol, ball[len(region.source) :])
        return [region.target + img]
    return [r.target for r in g.chart if is_prefix(ball, r.source)]


def image_of_ball(g: GroupElement, ball: Sequence[int]) -> Address | frozenset[Address]:
    """The image ball, or the set of region images when ``ball`` properly contains regions."""
    parts = image_parts(g, ball)
    if g.region_containing(ball) is not None:
        return parts[0]
    return frozenset(parts)


def meets(g: GroupElement, b1: Sequence[int], b2: Sequence[int]) -> bool:
    """True iff ``g(b1)`` intersects ``b2``."""
    return any(is_prefix(p, b2) or is_prefix(b2, p) for p in image_parts(g, b1))


def fixes_ball(g: GroupElement, ball: Sequence[int]) -> bool:
    """True iff ``g(ball) == ball`` as sets."""
    ball = tuple(ball)
    forward = all(is_prefix(ball, p) for p in image_parts(g, ball))
    backward = all(is_prefix(ball, p) for p in image_parts(invert(g), ball))
    return forward and backward


def is_identity(g: GroupElement) -> bool:
    s = g.structure
    return all(r.source == r.target and s.is_trivial(r.symbol) for r in g.chart)


def equals(g: GroupElement, h: GroupElement) -> bool:
    """Action equality, decided exactly."""
    return is_identity(compose(invert(g), h))


def all_balls(structure: SimilarityStructure, depth: int) -> list[Address]:
    """Every ball of depth at most ``depth``."""
    return [p for d in range(depth + 1) for p in structure.descendants((), d)]


def action_equal(g: GroupElement, h: GroupElement, depth: int) -> bool:
    """Brute-force comparison of ball images up to ``depth``."""
    return all(
        sorted(image_parts(g, b)) == sorted(image_parts(h, b)) for b in all_balls(g.structure, depth)
    )


# -- text format -------------------------------------------------------------


def parse_generators(text: str, structure: SimilarityStructure) -> dict[str, GroupElement]:
    """Parse ``gen <name>`` blocks of ``map /a -> /b via <symbol>`` lines."""
    gens: dict[str, list[Region]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "gen":
            if len(words) != 2:
                raise ChartError(f"line {lineno}: expected 'gen <name>'")
            current = words[1]
            if current in gens:
                raise ChartError(f"line {lineno}: duplicate generator {current!r}")
            gens[current] = []
        elif words[0] == "map":
            if current is None:
                raise ChartError(f"line {lineno}: 'map' before any 'gen'")
            if len(words) != 6 or words[2] != "->" or words[4] != "via":
                raise ChartError(f"line {lineno}: expected 'map /path -> /path via <symbol>'")
            try:
                gens[current].append(Region(parse_address(words[1]), parse_address(words[3]), words[5]))
            except ValueError as exc:
                raise ChartError(f"line {lineno}: {exc}") from None
        else:
            raise ChartError(f"line {lineno}: unknown directive {words[0]!r}")
    out = {}
    for name, regions in gens.items():
        try:
            out[name] = GroupElement(structure, tuple(regions))
        except ChartError as exc:
            raise ChartError(f"generator {name}: {exc}") from None
    return out


def format_generators(generators: Mapping[str, GroupElement]) -> str:
    lines = []
    for name, g in generators.items():
        lines.append(f"gen {name}")
        lines.extend(f"map {r}" for r in g.chart)
    return "\n".join(lines) + "\n"


def words_up_to(letters: Sequence[str], max_len: int) -> Iterable[tuple[str, ...]]:
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)
