"""Finite similarity structures on typed ball trees.

A compact ultrametric space with finitely many similarity classes of balls is
modelled as a typed rooted tree.  A ball of type ``i`` splits into
``arity(i)`` maximal proper subballs, numbered ``1..arity(i)``, whose types
are listed in ``BallType.children``.  Type 1 is the whole space.

The self-similarities of a type representative are *local symbols*.  Each
one is a map-state: a permutation of the child slots together with, for every
slot ``n``, the symbol that describes the map on child ``n`` once both child
``n`` and its image are identified with their type representative.  Two
symbols denote the same map iff they are bisimilar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "BallType",
    "LocalSymbol",
    "SimilarityStructure",
    "StructureError",
    "ValidationReport",
    "Violation",
    "parse_structure",
    "format_structure",
]

AXIOMS = ("Structure", "Finiteness", "Identities", "Inverses", "Compositions", "Restrictions")


class StructureError(ValueError):
    """Malformed structure data, or an operation the structure cannot support."""


@dataclass(frozen=True)
class BallType:
    index: int
    children: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.children)

    def child_type(self, n: int) -> int:
        return self.children[n - 1]


@dataclass(frozen=True)
class LocalSymbol:
    id: str
    type: int
    perm: tuple[int, ...]
    restrict: tuple[str, ...]

    def image(self, n: int) -> int:
        return self.perm[n - 1]


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str
    symbols: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.axiom}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def _number(signatures: Mapping) -> dict:
    ids: dict = {}
    return {k: ids.setdefault(sig, len(ids)) for k, sig in signatures.items()}


def bisimulation_classes(states: Mapping) -> dict:
    """Coarsest stable partition of map-states.

    ``states`` maps a key to ``(type, perm, successor_keys)``.  Returns a map
    from key to class number; two keys share a class iff they are bisimilar.
    """
    classes = _number({k: (t, p) for k, (t, p, _) in states.items()})
    count = len(set(classes.values()))
    while True:
        refined = _number(
            {k: (classes[k], tuple(classes[r] for r in succ)) for k, (_, _, succ) in states.items()}
        )
        new_count = len(set(refined.values()))
        if new_count == count:
            return refined
        classes, count = refined, new_count


@dataclass
class _Tables:
    cls: dict[str, int]
    canonical: dict[int, str]
    compose: dict[tuple[str, str], str]
    inverse: dict[str, str]
    trivial: frozenset[str]
    depth: dict[str, int]


class SimilarityStructure:
    """Ball types, local symbols and the designated identity of every type.

    Construction only checks syntax.  Call :meth:`validate` for the axioms;
    the algebraic operations raise :class:`StructureError` on structures that
    do not validate.
    """

    def __init__(
        self,
        types: Iterable[BallType],
        symbols: Iterable[LocalSymbol],
        identities: Mapping[int, str],
    ):
        self.types: dict[int, BallType] = {}
        for t in types:
            if t.index in self.types:
                raise StructureError(f"duplicate type {t.index}")
            self.types[t.index] = t
        self.symbols: dict[str, LocalSymbol] = {}
        for s in symbols:
            if s.id in self.symbols:
                raise StructureError(f"duplicate symbol {s.id!r}")
            self.symbols[s.id] = s
        self.identities: dict[int, str] = dict(identities)

    def __repr__(self) -> str:
        return f"<SimilarityStructure: {len(self.types)} types, {len(self.symbols)} symbols>"

    # -- shape ---------------------------------------------------------------

    def arity(self, t: int) -> int:
        return self.types[t].arity

    def child_type(self, t: int, n: int) -> int:
        return self.types[t].child_type(n)

    def symbols_of(self, t: int) -> list[str]:
        return [s.id for s in self.symbols.values() if s.type == t]

    def type_of(self, path: Sequence[int]) -> int:
        """Type of the ball reached from the root along ``path``."""
        t = 1
        for n in path:
            if not 1 <= n <= self.arity(t):
                raise StructureError(f"slot {n} out of range for type {t} in path {tuple(path)}")
            t = self.child_type(t, n)
        return t

    def is_address(self, path: Sequence[int]) -> bool:
        try:
            self.type_of(path)
        except (StructureError, TypeError):
            return False
        return True

    def descendants(self, path: tuple[int, ...], depth: int) -> list[tuple[int, ...]]:
        """All balls exactly ``depth`` levels below ``path``, in slot order."""
        layer = [path]
        for _ in range(depth):
            layer = [p + (n,) for p in layer for n in range(1, self.arity(self.type_of(p)) + 1)]
        return layer

    # -- validation ----------------------------------------------------------

    def _structural_violations(self) -> list[Violation]:
        out: list[Violation] = []
        if 1 not in self.types:
            out.append(Violation("Structure", "no root type 1"))
        for t in self.types.values():
            if t.arity < 2:
                out.append(Violation("Structure", f"type {t.index} has arity {t.arity} < 2"))
            for c in t.children:
                if c not in self.types:
                    out.append(Violation("Structure", f"type {t.index} has unknown child type {c}"))
        if out:
            return out
        for s in self.symbols.values():
            if s.type not in self.types:
                out.append(Violation("Structure", f"symbol {s.id} has unknown type {s.type}", (s.id,)))
                continue
            t = self.types[s.type]
            if sorted(s.perm) != list(range(1, t.arity + 1)):
                out.append(
                    Violation("Structure", f"symbol {s.id} perm {s.perm} is not a permutation of 1..{t.arity}", (s.id,))
                )
                continue
            for n in range(1, t.arity + 1):
                if t.child_type(s.image(n)) != t.child_type(n):
                    out.append(
                        Violation(
                            "Structure",
                            f"symbol {s.id} sends slot {n} (type {t.child_type(n)}) to slot {s.image(n)} "
                            f"(type {t.child_type(s.image(n))})",
                            (s.id,),
                        )
                    )
            if len(s.restrict) != t.arity:
                out.append(
                    Violation(
                        "Restrictions",
                        f"symbol {s.id} lists {len(s.restrict)} restrictions, type {t.index} has arity {t.arity}",
                        (s.id,),
                    )
                )
                continue
            for n, r in enumerate(s.restrict, start=1):
                if r not in self.symbols:
                    out.append(Violation("Restrictions", f"symbol {s.id} restricts on slot {n} to unknown {r!r}", (s.id, r)))
                elif self.symbols[r].type != t.child_type(n):
                    out.append(
                        Violation(
                            "Restrictions",
                            f"restriction {r} of {s.id} on slot {n} has type {self.symbols[r].type}, "
                            f"expected {t.child_type(n)}",
                            (s.id, r),
                        )
                    )
        for i in self.types:
            ident = self.identities.get(i)
            if ident is None:
                out.append(Violation("Identities", f"type {i} has no identity symbol"))
            elif ident not in self.symbols:
                out.append(Violation("Identities", f"identity {ident!r} of type {i} is not a symbol", (ident,)))
            elif self.symbols[ident].type != i:
                out.append(Violation("Identities", f"identity {ident} of type {i} has type {self.symbols[ident].type}", (ident,)))
        return out

    def _analyze(self) -> tuple[_Tables | None, list[Violation]]:
        violations = self._structural_violations()
        if violations:
            return None, violations

        syms = self.symbols
        states: dict = {}
        for s in syms.values():
            states[("s", s.id)] = (s.type, s.perm, tuple(("s", r) for r in s.restrict))
        for t in self.types:
            ids = self.symbols_of(t)
            for a in ids:
                for b in ids:
                    sa, sb = syms[a], syms[b]
                    perm = tuple(sa.image(sb.image(n)) for n in range(1, len(sb.perm) + 1))
                    succ = tuple(
                        ("c", sa.restrict[sb.image(n) - 1], sb.restrict[n - 1]) for n in range(1, len(sb.perm) + 1)
                    )
                    states[("c", a, b)] = (t, perm, succ)
        for s in syms.values():
            inv = [0] * len(s.perm)
            for n, m in enumerate(s.perm, start=1):
                inv[m - 1] = n
            succ = tuple(("i", s.restrict[inv[n - 1] - 1]) for n in range(1, len(s.perm) + 1))
            states[("i", s.id)] = (s.type, tuple(inv), succ)
        cls = bisimulation_classes(states)

        # greatest fixpoint: identity permutation and trivial restrictions
        trivial = {s.id for s in syms.values() if s.perm == tuple(range(1, len(s.perm) + 1))}
        changed = True
        while changed:
            changed = False
            for a in list(trivial):
                if any(r not in trivial for r in syms[a].restrict):
                    trivial.discard(a)
                    changed = True

        canonical: dict[int, str] = {}
        for a in syms:
            canonical.setdefault(cls[("s", a)], a)
        for i, ident in self.identities.items():
            canonical[cls[("s", ident)]] = ident

        for i, ident in self.identities.items():
            if ident not in trivial:
                violations.append(Violation("Identities", f"identity {ident} of type {i} is not the identity map", (ident,)))

        compose: dict[tuple[str, str], str] = {}
        for key in states:
            if key[0] != "c":
                continue
            rep = canonical.get(cls[key])
            if rep is None:
                violations.append(
                    Violation("Compositions", f"{key[1]} o {key[2]} is not in the symbol set", (key[1], key[2]))
                )
            else:
                compose[key[1], key[2]] = rep
        inverse: dict[str, str] = {}
        for a in syms:
            rep = canonical.get(cls[("i", a)])
            if rep is None:
                violations.append(Violation("Inverses", f"inverse of {a} is not in the symbol set", (a,)))
            else:
                inverse[a] = rep

        depth: dict[str, int] = {}
        for a, s in syms.items():
            if a not in trivial and s.perm != tuple(range(1, len(s.perm) + 1)):
                depth[a] = 1
        changed = True
        while changed:
            changed = False
            for a, s in syms.items():
                if a in trivial:
                    continue
                below = [depth[r] + 1 for r in s.restrict if r in depth]
                if below and min(below) < depth.get(a, len(syms) + 2):
                    depth[a] = min(below)
                    changed = True

        tables = _Tables(
            cls={a: cls[("s", a)] for a in syms},
            canonical=canonical,
            compose=compose,
            inverse=inverse,
            trivial=frozenset(trivial),
            depth=depth,
        )
        return tables, violations

    def validate(self) -> ValidationReport:
        """Check the five similarity-structure axioms plus well-formedness."""
        _, violations = self._analyze()
        return ValidationReport(tuple(violations))

    @cached_property
    def _tables(self) -> _Tables:
        tables, violations = self._analyze()
        if violations:
            raise StructureError("invalid structure:\n" + "\n".join(map(str, violations)))
        return tables

    # -- algebra -------------------------------------------------------------

    def _symbol(self, a: str) -> LocalSymbol:
        try:
            return self.symbols[a]
        except KeyError:
            raise StructureError(f"unknown symbol {a!r}") from None

    def compose(self, a: str, b: str) -> str:
        """The symbol of ``a o b`` (``b`` applied first)."""
        if self._symbol(a).type != self._symbol(b).type:
            raise StructureError(f"cannot compose {a} (type {self.symbols[a].type}) with {b} (type {self.symbols[b].type})")
        try:
            return self._tables.compose[a, b]
        except KeyError:
            raise StructureError(f"{a} o {b} is not in the symbol set") from None

    def invert(self, a: str) -> str:
        self._symbol(a)
        try:
            return self._tables.inverse[a]
        except KeyError:
            raise StructureError(f"inverse of {a} is not in the symbol set") from None

    def restrict(self, a: str, n: int) -> str:
        s = self._symbol(a)
        if not 1 <= n <= len(s.perm):
            raise StructureError(f"slot {n} out of range for symbol {a} of arity {len(s.perm)}")
        return s.restrict[n - 1]

    def equal(self, a: str, b: str) -> bool:
        """Semantic equality (bisimilarity) of two symbols."""
        return self._tables.cls[a] == self._tables.cls[b]

    def canonical(self, a: str) -> str:
        return self._tables.canonical[self._tables.cls[a]]

    def is_trivial(self, a: str) -> bool:
        return a in self._tables.trivial

    def nontriviality_depth(self, a: str) -> int | None:
        """Least depth at which ``a`` moves a descendant ball, or None for the identity."""
        self._symbol(a)
        return self._tables.depth.get(a)

    def follow(self, a: str, path: Sequence[int]) -> tuple[tuple[int, ...], str]:
        """Image of the relative ``path`` under ``a`` and the symbol left at its end."""
        out = []
        for n in path:
            s = self.symbols[a]
            out.append(s.perm[n - 1])
            a = s.restrict[n - 1]
        return tuple(out), a


# -- text format -------------------------------------------------------------

_SECTIONS = {"type": 0, "symbol": 1, "identity": 2}


def parse_structure(text: str) -> SimilarityStructure:
    """Parse the line-oriented structure format (see README)."""
    types: list[BallType] = []
    symbols: list[LocalSymbol] = []
    identities: dict[int, str] = {}
    section = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        kind = words[0]
        if kind not in _SECTIONS:
            raise StructureError(f"line {lineno}: unknown directive {kind!r}")
        if _SECTIONS[kind] < section:
            raise StructureError(f"line {lineno}: {kind} lines must come before later sections")
        section = _SECTIONS[kind]
        try:
            if kind == "type":
                m = re.fullmatch(r"type (\d+) arity (\d+) children((?: \d+)+)", " ".join(words))
                if not m:
                    raise ValueError("expected 'type <i> arity <l> children <t1> ... <tl>'")
                idx, arity = int(m[1]), int(m[2])
                children = tuple(int(c) for c in m[3].split())
                if len(children) != arity:
                    raise ValueError(f"arity {arity} but {len(children)} children")
                if any(t.index == idx for t in types):
                    raise ValueError(f"duplicate type {idx}")
                types.append(BallType(idx, children))
            elif kind == "symbol":
                if len(words) < 6 or words[2] != "type" or words[4] != "perm" or "restrict" not in words:
                    raise ValueError("expected 'symbol <id> type <i> perm <p1> ... restrict <id1> ...'")
                k = words.index("restrict")
                sid = words[1]
                if any(s.id == sid for s in symbols):
                    raise ValueError(f"duplicate symbol {sid!r}")
                symbols.append(
                    LocalSymbol(sid, int(words[3]), tuple(int(p) for p in words[5:k]), tuple(words[k + 1 :]))
                )
            else:
                if len(words) != 3:
                    raise ValueError("expected 'identity <i> <id>'")
                idx = int(words[1])
                if idx in identities:
                    raise ValueError(f"duplicate identity for type {idx}")
                identities[idx] = words[2]
        except ValueError as exc:
            raise StructureError(f"line {lineno}: {exc}") from None

    known_types = {t.index for t in types}
    known_syms = {s.id for s in symbols}
    for t in types:
        for c in t.children:
            if c not in known_types:
                raise StructureError(f"type {t.index}: dangling child type {c}")
    for s in symbols:
        if s.type not in known_types:
            raise StructureError(f"symbol {s.id}: dangling type {s.type}")
        for r in s.restrict:
            if r not in known_syms:
                raise StructureError(f"symbol {s.id}: dangling restriction {r!r}")
    for i, sid in identities.items():
        if i not in known_types:
            raise StructureError(f"identity for unknown type {i}")
        if sid not in known_syms:
            raise StructureError(f"identity of type {i}: dangling symbol {sid!r}")
    return SimilarityStructure(types, symbols, identities)


def format_structure(structure: SimilarityStructure) -> str:
    lines = []
    for t in structure.types.values():
        lines.append(f"type {t.index} arity {t.arity} children {' '.join(map(str, t.children))}")
    for s in structure.symbols.values():
        lines.append(
            f"symbol {s.id} type {s.type} perm {' '.join(map(str, s.perm))} restrict {' '.join(s.restrict)}"
        )
    for i, sid in structure.identities.items():
        lines.append(f"identity {i} {sid}")
    return "\n".join(lines) + "\n"
