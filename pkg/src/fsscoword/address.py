"""Ball addresses, the stack language and its rewriting system.

Words are tuples of tokens, read left to right, top of stack first::

    A(1,-) [s] A(1,2) #

``A(1,-)`` names the whole space, ``A(i,n)`` steps into child slot ``n``
(a ball of type ``i``), ``[f]`` is a local symbol acting on the ball named by
the letters before it, and ``#`` is the bottom-of-stack marker.  Reduced words
carry no brackets and are in bijection with balls.

Four rule families rewrite words without changing the ball they denote::

    restriction     [f] A(i,n)  ->  A(i,f(n)) [f|n]
    multiplication  [f] [g]     ->  [f o g]
    absorption      [f] #       ->  #
    identities      [id]        ->  (empty)
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .structure import SimilarityStructure, StructureError

__all__ = [
    "Address",
    "Letter",
    "Bracket",
    "End",
    "ROOT",
    "END",
    "Rule",
    "Redex",
    "WordError",
    "parse_address",
    "format_address",
    "address_word",
    "check_word",
    "redexes",
    "rewrite",
    "reduce_tokens",
    "normalize",
    "normal_form_trace",
    "measure",
    "evaluate",
    "is_prefix",
    "apply_phi",
    "parse_word",
    "format_word",
]

Address = tuple[int, ...]


class WordError(ValueError):
    """A token sequence that is not a word of the stack language."""


@dataclass(frozen=True)
class Letter:
    type: int
    slot: int | None  # None only for the root letter

    def __str__(self) -> str:
        return f"A({self.type},{'-' if self.slot is None else self.slot})"


@dataclass(frozen=True)
class Bracket:
    symbol: str

    def __str__(self) -> str:
        return f"[{self.symbol}]"


@dataclass(frozen=True)
class End:
    def __str__(self) -> str:
        return "#"


Token = Union[Letter, Bracket, End]
ROOT = Letter(1, None)
END = End()


def parse_address(text: str) -> Address:
    """``"/1/2"`` -> ``(1, 2)``; ``"/"`` is the root."""
    text = text.strip()
    if not text.startswith("/"):
        raise ValueError(f"address must start with '/': {text!r}")
    parts = [p for p in text.split("/") if p]
    return tuple(int(p) for p in parts)


def format_address(path: Sequence[int]) -> str:
    return "/" + "/".join(str(n) for n in path)


def is_prefix(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ball ``b`` lies inside ball ``a``."""
    return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)


def address_word(structure: SimilarityStructure, path: Sequence[int], end: bool = True) -> tuple[Token, ...]:
    """The reduced word naming the ball at ``path``."""
    toks: list[Token] = [ROOT]
    t = 1
    for n in path:
        if not 1 <= n <= structure.arity(t):
            raise WordError(f"slot {n} out of range in address {format_address(path)}")
        t = structure.child_type(t, n)
        toks.append(Letter(t, n))
    if end:
        toks.append(END)
    return tuple(toks)


def check_word(structure: SimilarityStructure, word: Sequence[Token], prefix: bool = False) -> int:
    """Raise :class:`WordError` unless ``word`` is in the stack language.

    With ``prefix=True`` any prefix of such a word is accepted.  Returns the
    type of the last ball named.
    """
    if not word:
        if prefix:
            return 1
        raise WordError("empty word")
    if word[0] != ROOT:
        raise WordError(f"word must start with {ROOT}, got {word[0]}")
    t = 1
    for pos, tok in enumerate(word[1:], start=1):
        if isinstance(tok, End):
            if pos != len(word) - 1:
                raise WordError("'#' before the end of the word")
            return t
        if isinstance(tok, Letter):
            if tok.slot is None or not 1 <= tok.slot <= structure.arity(t):
                raise WordError(f"{tok} at position {pos} is not a child slot of type {t}")
            if structure.child_type(t, tok.slot) != tok.type:
                raise WordError(f"{tok} at position {pos}: slot {tok.slot} of type {t} has type {structure.child_type(t, tok.slot)}")
            t = tok.type
        elif isinstance(tok, Bracket):
            sym = structure.symbols.get(tok.symbol)
            if sym is None:
                raise WordError(f"unknown symbol in {tok}")
            if sym.type != t:
                raise WordError(f"{tok} at position {pos} has type {sym.type}, expected {t}")
        else:
            raise WordError(f"not a token: {tok!r}")
    if not prefix:
        raise WordError("word must end with '#'")
    return t


# -- rewriting ---------------------------------------------------------------


class Rule(enum.IntEnum):
    RESTRICTION = 1
    MULTIPLICATION = 2
    ABSORPTION = 3
    IDENTITIES = 4


class Redex(NamedTuple):
    position: int
    rule: Rule
    length: int
    replacement: tuple


def redexes(structure: SimilarityStructure, word: Sequence[Token]) -> list[Redex]:
    """Every rule application available in ``word``, by position then rule."""
    out = []
    identities = set(structure.identities.values())
    for i, tok in enumerate(word):
        if not isinstance(tok, Bracket):
            continue
        nxt = word[i + 1] if i + 1 < len(word) else None
        if isinstance(nxt, Letter):
            s = structure.symbols[tok.symbol]
            repl = (Letter(nxt.type, s.perm[nxt.slot - 1]), Bracket(s.restrict[nxt.slot - 1]))
            out.append(Redex(i, Rule.RESTRICTION, 2, repl))
        elif isinstance(nxt, Bracket):
            out.append(Redex(i, Rule.MULTIPLICATION, 2, (Bracket(structure.compose(tok.symbol, nxt.symbol)),)))
        elif isinstance(nxt, End):
            out.append(Redex(i, Rule.ABSORPTION, 2, (END,)))
        if tok.symbol in identities:
            out.append(Redex(i, Rule.IDENTITIES, 1, ()))
    return out


def rewrite(word: Sequence[Token], redex: Redex) -> tuple[Token, ...]:
    i = redex.position
    return tuple(word[:i]) + redex.replacement + tuple(word[i + redex.length :])


def measure(word: Sequence[Token]) -> tuple[int, int]:
    """Termination measure: (letters to the right of each bracket, summed; bracket count)."""
    letters_right = 0
    weight = 0
    brackets = 0
    for tok in reversed(word):
        if isinstance(tok, Letter):
            letters_right += 1
        elif isinstance(tok, Bracket):
            weight += letters_right
            brackets += 1
    return weight, brackets


def _pick(options: list[Redex], strategy: str, rng: random.Random | None) -> Redex:
    if strategy == "leftmost":
        return options[0]
    if strategy == "rightmost":
        return max(options, key=lambda r: (r.position, -r.rule))
    if strategy == "random":
        return (rng or random).choice(options)
    raise ValueError(f"unknown strategy {strategy!r}")


def normal_form_trace(
    structure: SimilarityStructure,
    word: Sequence[Token],
    strategy: str = "leftmost",
    rng: random.Random | None = None,
) -> list[tuple[Token, ...]]:
    """The full rewrite sequence from ``word`` to its normal form.

    ``strategy`` is ``"leftmost"`` (leftmost redex, restriction first at a
    tie), ``"rightmost"`` or ``"random"``.
    """
    current = tuple(word)
    trace = [current]
    while True:
        options = redexes(structure, current)
        if not options:
            return trace
        current = rewrite(current, _pick(options, strategy, rng))
        trace.append(current)


def reduce_tokens(structure: SimilarityStructure, word: Sequence[Token]) -> tuple[Token, ...]:
    """Normal form of any token string that is a factor of a stack word."""
    return normal_form_trace(structure, word)[-1]


def normalize(
    structure: SimilarityStructure,
    word: Sequence[Token],
    strategy: str = "leftmost",
    rng: random.Random | None = None,
) -> tuple[Token, ...]:
    """The reduced word equivalent to ``word``."""
    check_word(structure, word)
    return normal_form_trace(structure, word, strategy, rng)[-1]


def evaluate(structure: SimilarityStructure, word: Sequence[Token]) -> Address:
    """The ball denoted by ``word``, as an address."""
    reduced = normalize(structure, word)
    return tuple(tok.slot for tok in reduced[1:-1])


def apply_phi(
    structure: SimilarityStructure,
    f: tuple[Sequence[int], Sequence[int], str],
    word: Sequence[Token],
) -> tuple[Token, ...] | None:
    """Act on a stack word by the similarity ``source -> target`` given by a symbol.

    Defined (non-None) only when ``word`` literally begins with the address
    of ``source``; the prefix is replaced by the target's address followed by
    ``[symbol]``.
    """
    source, target, sym = f
    t = structure.type_of(source)
    if structure.type_of(target) != t or structure.symbols[sym].type != t:
        raise StructureError(f"type mismatch in ({format_address(source)}, {format_address(target)}, {sym})")
    head = address_word(structure, source, end=False)
    if tuple(word[: len(head)]) != head:
        return None
    return address_word(structure, target, end=False) + (Bracket(sym),) + tuple(word[len(head) :])


# -- text form ---------------------------------------------------------------


def format_word(word: Sequence[Token]) -> str:
    return " ".join(str(t) for t in word)


def parse_word(text: str) -> tuple[Token, ...]:
    """Inverse of :func:`format_word`."""
    out: list[Token] = []
    for tok in text.split():
        if tok == "#":
            out.append(END)
        elif tok.startswith("[") and tok.endswith("]"):
            out.append(Bracket(tok[1:-1]))
        elif tok.startswith("A(") and tok.endswith(")"):
            i, n = tok[2:-1].split(",")
            out.append(Letter(int(i), None if n == "-" else int(n)))
        else:
            raise WordError(f"bad token {tok!r}")
    return tuple(out)
