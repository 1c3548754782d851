"""Generalized pushdown automata accepting by empty stack, and their grammars.

An edge ``(p, s, pop, push, q)`` may be crossed when the stack begins with
``pop``; it reads ``s`` (or nothing when ``s`` is None) and replaces ``pop``
by ``push``.  Stacks are tuples with the top at index 0, and every run starts
with the single bottom symbol on the stack.

Input direction: a run that reads ``s1`` first and ``sn`` last has label
``sn ... s1``.  Words are passed around left to right as written, so the
engine consumes them from the right end.  Grammars produced by
:func:`pda_to_cfg` generate labels in the same written order.
"""

from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

__all__ = [
    "Edge",
    "GPDA",
    "CFG",
    "SimResult",
    "simulate_bounded",
    "accepting_run",
    "normalize_pda",
    "is_normalized",
    "pda_to_cfg",
    "trim",
    "cfg_membership",
    "dump",
    "to_dot",
]


@dataclass(frozen=True)
class Edge:
    source: Hashable
    read: str | None
    pop: tuple
    push: tuple
    target: Hashable

    def label(self) -> str:
        s = "ε" if self.read is None else self.read
        pop = " ".join(map(str, self.pop)) or "ε"
        push = " ".join(map(str, self.push)) or "ε"
        return f"{s} | {pop} | {push}"


@dataclass(frozen=True, eq=False)
class GPDA:
    states: frozenset
    initial: Hashable
    edges: tuple[Edge, ...]
    alphabet: frozenset
    bottom: Hashable = "#"

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        if self.bottom not in self.alphabet:
            raise ValueError(f"bottom symbol {self.bottom!r} is not in the stack alphabet")
        for e in self.edges:
            if e.source not in self.states or e.target not in self.states:
                raise ValueError(f"edge {e} references an unknown state")
            for x in e.pop + e.push:
                if x not in self.alphabet:
                    raise ValueError(f"edge {e} uses {x!r} outside the stack alphabet")

    @cached_property
    def _index(self) -> dict:
        idx: dict = defaultdict(lambda: defaultdict(list))
        for e in self.edges:
            idx[e.source][e.pop].append(e)
        return idx

    @cached_property
    def max_pop(self) -> int:
        return max((len(e.pop) for e in self.edges), default=0)

    @property
    def input_alphabet(self) -> set[str]:
        return {e.read for e in self.edges if e.read is not None}


# -- bounded simulation ------------------------------------------------------


class SimResult(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"  # search space exhausted without touching the bound
    REJECTED_WITHIN_BOUND = "rejected-within-bound"

    @property
    def accepted(self) -> bool:
        return self is SimResult.ACCEPTED


def _search(a: GPDA, word: Sequence[str], stack_bound: int, want_path: bool):
    tape = tuple(reversed(word))
    n = len(tape)
    start = (a.initial, 0, (a.bottom,))
    parent: dict = {start: None}
    queue = deque([start])
    pruned = False
    idx = a._index
    max_pop = a.max_pop
    while queue:
        config = queue.popleft()
        state, pos, stack = config
        if pos == n and not stack:
            if not want_path:
                return SimResult.ACCEPTED, None
            path = []
            while config is not None:
                path.append(config)
                config = parent[config]
            return SimResult.ACCEPTED, path[::-1]
        by_pop = idx.get(state)
        if not by_pop:
            continue
        for k in range(min(max_pop, len(stack)) + 1):
            for e in by_pop.get(stack[:k], ()):
                if e.read is None:
                    npos = pos
                elif pos < n and tape[pos] == e.read:
                    npos = pos + 1
                else:
                    continue
                nstack = e.push + stack[k:]
                if len(nstack) > stack_bound:
                    pruned = True
                    continue
                nxt = (e.target, npos, nstack)
                if nxt not in parent:
                    parent[nxt] = config
                    queue.append(nxt)
    return (SimResult.REJECTED_WITHIN_BOUND if pruned else SimResult.REJECTED), None


def simulate_bounded(a: GPDA, word: Sequence[str], stack_bound: int) -> SimResult:
    """Search every run whose stack never grows past ``stack_bound``."""
    if stack_bound < 1:
        raise ValueError("stack_bound must be at least 1")
    return _search(a, word, stack_bound, want_path=False)[0]


def accepting_run(a: GPDA, word: Sequence[str], stack_bound: int) -> list[tuple] | None:
    """Configurations ``(state, consumed, stack)`` of a shortest accepting run, or None."""
    return _search(a, word, stack_bound, want_path=True)[1]


# -- normalization -----------------------------------------------------------

BOTTOM = ("⊥",)
FINAL = ("final",)
START = ("start",)


def is_normalized(a: GPDA) -> bool:
    return all(len(e.pop) == 1 and len(e.push) <= 2 for e in a.edges)


def normalize_pda(a: GPDA) -> GPDA:
    """Equivalent automaton whose edges pop exactly one symbol and push at most two.

    Multi-symbol pops run through shared intermediate states, long pushes are
    laid down two symbols at a time, and edges that pop nothing are expanded
    over the alphabet.  A fresh bottom marker goes under the initial symbol
    and only original states may pop it: without it an intermediate state of
    a split pop could empty the stack and accept, and moves on an empty
    stack would be lost.
    """
    if is_normalized(a):
        return a
    alphabet = set(a.alphabet)
    edges: set[Edge] = set()
    states = set(a.states)
    initial = a.initial
    if any(len(e.pop) != 1 for e in a.edges):
        alphabet.add(BOTTOM)
        states |= {START, FINAL}
        initial = START
        edges.add(Edge(START, None, (a.bottom,), (a.bottom, BOTTOM), a.initial))
        for q in a.states:
            edges.add(Edge(q, None, (BOTTOM,), (), FINAL))

    def push_chain(src, read, top, push, dst):
        # pop ``top`` at ``src``, leave ``push`` on the stack, arrive at ``dst``
        if len(push) <= 2:
            edges.add(Edge(src, read, (top,), tuple(push), dst))
            return
        k = len(push)
        cur = ("push", dst, tuple(push[: k - 1]))
        edges.add(Edge(src, read, (top,), tuple(push[k - 2 :]), cur))
        for i in range(k - 1, 1, -1):
            nxt = dst if i == 2 else ("push", dst, tuple(push[: i - 1]))
            edges.add(Edge(cur, None, (push[i - 1],), (push[i - 2], push[i - 1]), nxt))
            states.add(cur)
            cur = nxt

    for e in a.edges:
        pops = [e.pop] if e.pop else [(x,) for x in sorted(alphabet, key=repr)]
        for pop in pops:
            push = e.push if e.pop else e.push + pop
            src, read = e.source, e.read
            for i in range(len(pop) - 1):
                nxt = ("pop", e.source, e.read, pop[: i + 1])
                states.add(nxt)
                edges.add(Edge(src, read, (pop[i],), (), nxt))
                src, read = nxt, None
            push_chain(src, read, pop[-1], push, e.target)
    return GPDA(frozenset(states), initial, tuple(sorted(edges, key=repr)), frozenset(alphabet), a.bottom)


# -- grammars ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CFG:
    """Context-free grammar; symbols not in ``nonterminals`` are terminals."""

    nonterminals: frozenset
    terminals: frozenset
    productions: tuple[tuple[Hashable, tuple], ...]
    start: Hashable

    def __post_init__(self):
        if self.start not in self.nonterminals:
            raise ValueError("start symbol is not a nonterminal")
        for head, body in self.productions:
            if head not in self.nonterminals:
                raise ValueError(f"production head {head!r} is not a nonterminal")
            for x in body:
                if x not in self.nonterminals and x not in self.terminals:
                    raise ValueError(f"undeclared symbol {x!r} in production for {head!r}")

    @classmethod
    def from_rules(cls, rules: dict, start, terminals: Iterable[str]) -> CFG:
        """Build from ``{head: [body, ...]}`` with bodies given as sequences."""
        prods = tuple((h, tuple(b)) for h, bodies in rules.items() for b in bodies)
        return cls(frozenset(rules), frozenset(terminals), prods, start)

    @cached_property
    def parser(self) -> _ChartParser:
        return _ChartParser(self)


def trim(g: CFG) -> CFG:
    """Drop unproductive and unreachable symbols."""
    productive: set = set()
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            if head not in productive and all(x in productive or x not in g.nonterminals for x in body):
                productive.add(head)
                changed = True
    prods = [(h, b) for h, b in g.productions if h in productive and all(x in productive or x not in g.nonterminals for x in b)]
    if g.start not in productive:
        return CFG(frozenset([g.start]), g.terminals, (), g.start)
    by_head = defaultdict(list)
    for h, b in prods:
        by_head[h].append(b)
    reachable = {g.start}
    todo = [g.start]
    while todo:
        h = todo.pop()
        for b in by_head[h]:
            for x in b:
                if x in g.nonterminals and x not in reachable:
                    reachable.add(x)
                    todo.append(x)
    prods = [(h, b) for h, b in prods if h in reachable]
    return CFG(frozenset(reachable), g.terminals, tuple(prods), g.start)


def pda_to_cfg(a: GPDA) -> CFG:
    """Triple construction: ``(p, X, q)`` derives the labels of runs from ``p``
    that pop ``X`` (net) and end in ``q``.

    Only productive triples are generated, by saturation from the edges that
    pop without pushing; the result is trimmed.
    """
    if not is_normalized(a):
        raise ValueError("automaton must be normalized first")
    known: set = set()
    ends: dict = defaultdict(set)  # (p, X) -> {q}
    prods: set = set()
    work: deque = deque()
    push1 = defaultdict(list)  # (r, Y) -> edges pushing Y and going to r
    push2 = defaultdict(list)  # (r, Y) -> edges pushing Y Z and going to r
    waiting = defaultdict(list)  # (s, Z) -> [(edge, first triple)]

    def body(e: Edge, parts: Sequence) -> tuple:
        # reversed: the last-read material comes first in the written label
        return tuple(reversed(parts)) + (() if e.read is None else (e.read,))

    def found(t, e, parts):
        prods.add((t, body(e, parts)))
        if t not in known:
            known.add(t)
            ends[t[0], t[1]].add(t[2])
            work.append(t)

    for e in a.edges:
        if len(e.push) == 0:
            found((e.source, e.pop[0], e.target), e, [])
        elif len(e.push) == 1:
            push1[e.target, e.push[0]].append(e)
        else:
            push2[e.target, e.push[0]].append(e)

    while work:
        t = work.popleft()
        r, y, s = t
        for e in push1[r, y]:
            found((e.source, e.pop[0], s), e, [t])
        for e in push2[r, y]:
            z = e.push[1]
            waiting[s, z].append((e, t))
            for q in list(ends[s, z]):
                found((e.source, e.pop[0], q), e, [t, (s, z, q)])
        for e, first in waiting[r, y]:
            found((e.source, e.pop[0], s), e, [first, t])

    start = ("S",)
    for q in sorted(ends[a.initial, a.bottom], key=repr):
        prods.add((start, ((a.initial, a.bottom, q),)))
    terminals = frozenset(a.input_alphabet)
    g = CFG(frozenset(known) | {start}, terminals, tuple(sorted(prods, key=repr)), start)
    return trim(g)


class _ChartParser:
    """CYK over a binarized grammar with ε- and unit-productions eliminated."""

    def __init__(self, g: CFG):
        counter = 0
        binary: list[tuple] = []  # (A, B, C)
        units: list[tuple] = []  # (A, B)
        lexical = defaultdict(set)  # terminal -> {A}
        nts = set(g.nonterminals)

        def sym(x):
            if x in g.nonterminals:
                return x
            pre = ("T", x)
            if pre not in nts:
                nts.add(pre)
                lexical[x].add(pre)
            return pre

        empty: set = set()
        for head, body in g.productions:
            body = [sym(x) for x in body]
            if not body:
                empty.add(head)
                continue
            while len(body) > 2:
                counter += 1
                fresh = ("B", counter)
                nts.add(fresh)
                binary.append((fresh, body[-2], body[-1]))
                body = body[:-2] + [fresh]
            if len(body) == 2:
                binary.append((head, body[0], body[1]))
            else:
                units.append((head, body[0]))

        nullable = set(empty)
        changed = True
        while changed:
            changed = False
            for a_, b in units:
                if a_ not in nullable and b in nullable:
                    nullable.add(a_)
                    changed = True
            for a_, b, c in binary:
                if a_ not in nullable and b in nullable and c in nullable:
                    nullable.add(a_)
                    changed = True
        unit_set = set(units)
        for a_, b, c in binary:
            if b in nullable:
                unit_set.add((a_, c))
            if c in nullable:
                unit_set.add((a_, b))
        self.parents = defaultdict(set)  # B -> {A : A -> B}
        for a_, b in unit_set:
            if a_ != b:
                self.parents[b].add(a_)
        self.by_left = defaultdict(lambda: defaultdict(set))
        for a_, b, c in binary:
            self.by_left[b][c].add(a_)
        self.lexical = lexical
        self.start = g.start
        self.start_nullable = g.start in nullable
        self._closure: dict = {}

    def closure(self, x) -> frozenset:
        got = self._closure.get(x)
        if got is None:
            seen = {x}
            todo = [x]
            while todo:
                y = todo.pop()
                for p in self.parents.get(y, ()):
                    if p not in seen:
                        seen.add(p)
                        todo.append(p)
            got = self._closure[x] = frozenset(seen)
        return got

    def accepts(self, word: Sequence[str]) -> bool:
        n = len(word)
        if n == 0:
            return self.start_nullable
        cell: dict = {}
        for i, t in enumerate(word):
            s: set = set()
            for x in self.lexical.get(t, ()):
                s |= self.closure(x)
            cell[i, i + 1] = s
        for span in range(2, n + 1):
            for i in range(n - span + 1):
                j = i + span
                out: set = set()
                for k in range(i + 1, j):
                    left, right = cell[i, k], cell[k, j]
                    if not left or not right:
                        continue
                    for b in left:
                        row = self.by_left.get(b)
                        if not row:
                            continue
                        if len(row) <= len(right):
                            for c, heads in row.items():
                                if c in right:
                                    for h in heads:
                                        if h not in out:
                                            out |= self.closure(h)
                        else:
                            for c in right:
                                heads = row.get(c)
                                if heads:
                                    for h in heads:
                                        if h not in out:
                                            out |= self.closure(h)
                cell[i, j] = out
        return self.start in cell[0, n]


def cfg_membership(g: CFG, word: Sequence[str]) -> bool:
    """Exact membership of ``word`` (written order) in the language of ``g``."""
    return g.parser.accepts(tuple(word))


# -- export ------------------------------------------------------------------


def _name(state) -> str:
    if isinstance(state, tuple):
        return "(" + ",".join(_name(x) if isinstance(x, tuple) else str(x) for x in state) + ")"
    return str(state)


def dump(a: GPDA) -> str:
    """One edge per line: ``p --(s | pop | push)--> q``."""
    lines = [f"# initial {_name(a.initial)}, bottom {a.bottom}, accept by empty stack"]
    lines += [f"{_name(e.source)} --({e.label()})--> {_name(e.target)}" for e in a.edges]
    return "\n".join(lines) + "\n"


def to_dot(a: GPDA) -> str:
    """Graphviz description of the automaton."""
    ids = {s: f"n{i}" for i, s in enumerate(sorted(a.states, key=_name))}
    lines = ["digraph pda {", "  rankdir=LR;"]
    for s, i in ids.items():
        shape = "doublecircle" if s == a.initial else "circle"
        lines.append(f'  {i} [label="{_name(s)}", shape={shape}];')
    for e in a.edges:
        label = e.label().replace('"', '\\"')
        lines.append(f'  {ids[e.source]} -> {ids[e.target]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
