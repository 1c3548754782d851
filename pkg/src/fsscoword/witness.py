"""Witness automata: pushdown automata recognising ``{w : w(B1) meets B2}``.

States::

    L, L<t>   loading: guess a ball B3 inside B1 and write its address,
              deepest letter first; ``L<t>`` remembers that the letter on top
              must be a child of a type-``t`` ball
    R         ready: read a generator, rewrite the address prefix of the
              region it acts on and leave the local symbol as a bracket
    C         cleaning: push brackets down the stack with the rewriting rules
    E         eject: the top spells an address inside B2, empty the stack
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, NamedTuple, Sequence

from .address import END, ROOT, Address, Bracket, Letter, address_word, redexes, reduce_tokens
from .element import GroupElement
from .pda import CFG, GPDA, Edge, SimResult, cfg_membership, normalize_pda, pda_to_cfg, simulate_bounded
from .structure import SimilarityStructure

__all__ = [
    "Bounds",
    "WitnessSpec",
    "WitnessAutomaton",
    "compute_bounds",
    "sound_stack_bound",
    "build_witness",
    "cleaning_rules",
    "witness_member",
    "automaton_for",
]

LOAD = "L"
READY = "R"
CLEAN = "C"
EJECT = "E"


def _load(t: int) -> str:
    return f"L{t}"


class Bounds(NamedTuple):
    K: int
    depth_bound: int


def _regions(generators: Mapping[str, GroupElement]):
    return [r for g in generators.values() for r in g.chart]


def compute_bounds(generators: Mapping[str, GroupElement], b1: Address, b2: Address, word_len: int) -> Bounds:
    """``K``: longest region address.  ``depth_bound``: a generous depth for the guessed ball."""
    regions = _regions(generators)
    K = max((len(r.source) for r in regions), default=0)
    delta = max((abs(len(r.target) - len(r.source)) for r in regions), default=0)
    return Bounds(K, len(b1) + len(b2) + word_len * (delta + K))


def sound_stack_bound(generators: Mapping[str, GroupElement], b1: Address, b2: Address, word_len: int) -> int:
    """Stack height that an accepting run, if one exists, never needs to exceed.

    A guessed ball of depth ``d`` with ``d - j*delta >= K`` before the
    ``(j+1)``-th letter and ``d - n*delta >= |b2|`` at the end is always deep
    enough; the stack then holds the root, at most ``d + n*delta`` letters,
    at most ``n`` brackets and ``#``.
    """
    regions = _regions(generators)
    K = max((len(r.source) for r in regions), default=0)
    delta = max((abs(len(r.target) - len(r.source)) for r in regions), default=0)
    n = word_len
    d = max(len(b1), len(b2) + n * delta, K + (n - 1) * delta if n else 0)
    return d + n * delta + n + 2


@dataclass(frozen=True, eq=False)
class WitnessSpec:
    structure: SimilarityStructure
    generators: tuple[tuple[str, GroupElement], ...]
    b1: Address
    b2: Address

    @classmethod
    def make(cls, generators: Mapping[str, GroupElement], b1: Sequence[int], b2: Sequence[int]) -> WitnessSpec:
        structure = next(iter(generators.values())).structure if generators else None
        if structure is None:
            raise ValueError("need a structure; pass WitnessSpec(...) directly for an empty generating set")
        return cls(structure, tuple(generators.items()), tuple(b1), tuple(b2))

    def __post_init__(self):
        for b in (self.b1, self.b2):
            if not self.structure.is_address(b):
                raise ValueError(f"{b} is not a valid address")

    @property
    def gens(self) -> dict[str, GroupElement]:
        return dict(self.generators)

    @property
    def K(self) -> int:
        return max((len(r.source) for _, g in self.generators for r in g.chart), default=0)

    @property
    def window(self) -> int:
        """Longest stack prefix the cleaning loops rewrite."""
        return max(self.K, len(self.b2)) + 2

    def loading_table(self) -> dict[str, list[tuple[Letter, str]]]:
        """Loading sub-state -> [(letter pushed, next sub-state)]."""
        s = self.structure
        table: dict[str, list[tuple[Letter, str]]] = {LOAD: []}
        for t in s.types:
            table[_load(t)] = []
        for parent in s.types:
            for n in range(1, s.arity(parent) + 1):
                letter = Letter(s.child_type(parent, n), n)
                table[LOAD].append((letter, _load(parent)))
                table[_load(letter.type)].append((letter, _load(parent)))
        return table


def stack_alphabet(structure: SimilarityStructure) -> frozenset:
    letters = {
        Letter(structure.child_type(t, n), n) for t in structure.types for n in range(1, structure.arity(t) + 1)
    }
    return frozenset({END, ROOT} | letters | {Bracket(a) for a in structure.symbols})


@lru_cache(maxsize=None)
def cleaning_rules(structure: SimilarityStructure, window: int) -> tuple[tuple[tuple, tuple], ...]:
    """``(w, r(w))`` for every unreduced stack-word prefix ``w`` of length at most ``window``."""
    rules = []

    def grow(prefix: tuple, t: int) -> None:
        if redexes(structure, prefix):
            rules.append((prefix, reduce_tokens(structure, prefix)))
        if len(prefix) >= window or prefix[-1] == END:
            return
        for n in range(1, structure.arity(t) + 1):
            c = structure.child_type(t, n)
            grow(prefix + (Letter(c, n),), c)
        for a in structure.symbols_of(t):
            grow(prefix + (Bracket(a),), t)
        grow(prefix + (END,), t)

    grow((ROOT,), 1)
    return tuple(rules)


def build_witness(spec: WitnessSpec) -> GPDA:
    s = spec.structure
    edges: list[Edge] = []
    table = spec.loading_table()
    b1_type = s.type_of(spec.b1)
    b1_word = address_word(s, spec.b1, end=False)
    for src, moves in table.items():
        for letter, dst in moves:
            edges.append(Edge(src, None, (), (letter,), dst))
    edges.append(Edge(LOAD, None, (), b1_word, READY))
    edges.append(Edge(_load(b1_type), None, (), b1_word, READY))

    for name, g in spec.generators:
        for r in g.chart:
            pop = address_word(s, r.source, end=False)
            push = address_word(s, r.target, end=False) + (Bracket(r.symbol),)
            edges.append(Edge(READY, name, pop, push, CLEAN))
    # lets the empty word through when B1 and B2 overlap
    edges.append(Edge(READY, None, (), (), CLEAN))

    for w, rw in cleaning_rules(s, spec.window):
        edges.append(Edge(CLEAN, None, w, rw, CLEAN))
    edges.append(Edge(CLEAN, None, (), (), READY))
    edges.append(Edge(CLEAN, None, address_word(s, spec.b2, end=False), (), EJECT))

    alphabet = stack_alphabet(s)
    for x in sorted(alphabet, key=str):
        edges.append(Edge(EJECT, None, (x,), (), EJECT))

    states = frozenset(table) | {READY, CLEAN, EJECT}
    return GPDA(states, LOAD, tuple(edges), alphabet, END)


class WitnessAutomaton:
    """A witness automaton with its grammar built once and membership cached."""

    def __init__(self, spec: WitnessSpec):
        self.spec = spec
        self._memo: dict[tuple[str, ...], bool] = {}

    @cached_property
    def pda(self) -> GPDA:
        return build_witness(self.spec)

    @cached_property
    def normalized(self) -> GPDA:
        return normalize_pda(self.pda)

    @cached_property
    def grammar(self) -> CFG:
        g = pda_to_cfg(self.normalized)
        g.parser  # compile eagerly
        return g

    def accepts(self, word: Sequence[str]) -> bool:
        word = tuple(word)
        got = self._memo.get(word)
        if got is None:
            names = {n for n, _ in self.spec.generators}
            for letter in word:
                if letter not in names:
                    raise KeyError(f"unknown generator {letter!r}")
            got = self._memo[word] = cfg_membership(self.grammar, word)
        return got

    def simulate(self, word: Sequence[str], stack_bound: int | None = None) -> SimResult:
        if stack_bound is None:
            stack_bound = sound_stack_bound(self.spec.gens, self.spec.b1, self.spec.b2, len(word))
        return simulate_bounded(self.pda, word, stack_bound)


def automaton_for(spec: WitnessSpec) -> WitnessAutomaton:
    """The cached automaton of ``spec``."""
    auto = spec.__dict__.get("_automaton")
    if auto is None:
        auto = spec.__dict__["_automaton"] = WitnessAutomaton(spec)
    return auto


def witness_member(spec: WitnessSpec, word: Sequence[str]) -> bool:
    """True iff ``word(B1)`` meets ``B2``, decided by the witness grammar."""
    return automaton_for(spec).accepts(word)
