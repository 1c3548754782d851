"""Command-line interface: ``fss <command> ...``.

Exit codes: 0 success (``decide``: trivial), 1 negative answer (``decide``:
nontrivial; ``validate``: violations; ``crosscheck``: mismatches), 2 error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .address import WordError, evaluate, format_address, format_word, normalize, parse_address, parse_word
from .coword import CoWordInstance, coword_member
from .element import ChartError, from_word, is_identity, meets, parse_generators, words_up_to
from .instances import INSTANCES, load
from .partition import big_partition, small_partition, verify_test_partition
from .pda import cfg_membership, dump, normalize_pda, pda_to_cfg, simulate_bounded, to_dot
from .structure import StructureError, parse_structure
from .witness import WitnessSpec, automaton_for, build_witness, sound_stack_bound


class UsageError(Exception):
    pass


def _split_word(text: str) -> tuple[str, ...]:
    return tuple(text.split())


def _load(args):
    if args.structure or args.generators:
        if not (args.structure and args.generators):
            raise UsageError("--structure and --generators must be given together")
        structure = parse_structure(Path(args.structure).read_text(encoding="utf-8"))
        report = structure.validate()
        if not report.ok:
            raise UsageError(f"invalid structure:\n{report}")
        return structure, parse_generators(Path(args.generators).read_text(encoding="utf-8"), structure)
    return load(args.instance)


def _instance_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("instance")
    g.add_argument("--instance", default="v2", choices=sorted(INSTANCES), help="bundled instance (default: v2)")
    g.add_argument("--structure", help="structure file (overrides --instance)")
    g.add_argument("--generators", help="generator file, required with --structure")


def cmd_validate(args) -> int:
    structure = parse_structure(Path(args.file).read_text(encoding="utf-8"))
    report = structure.validate()
    print(report)
    return 0 if report.ok else 1


def cmd_partitions(args) -> int:
    _, gens = _load(args)
    big = big_partition(list(gens.values()))
    small = small_partition(list(gens.values()))
    print("big:  ", " ".join(format_address(p) for p in big))
    print("small:", " ".join(format_address(p) for p in small))
    if args.verify:
        ok = verify_test_partition(small, gens, args.verify)
        print(f"test partition up to length {args.verify}: {'yes' if ok else 'NO'}")
        return 0 if ok else 1
    return 0


def cmd_decide(args) -> int:
    _, gens = _load(args)
    word = _split_word(args.word)
    inst = CoWordInstance.build(gens, verify_len=args.verify_len)
    nontrivial = coword_member(inst, word)
    print("nontrivial" if nontrivial else "trivial")
    if args.oracle:
        agree = nontrivial == (not is_identity(from_word(word, gens)))
        print(f"oracle: {'agrees' if agree else 'DISAGREES'}")
    return 1 if nontrivial else 0


def cmd_crosscheck(args) -> int:
    _, gens = _load(args)
    names = list(gens)
    started = time.perf_counter()
    inst = CoWordInstance.build(gens, verify_len=args.max_len)
    words = list(words_up_to(names, args.max_len))
    rows = []

    bad = sum(coword_member(inst, w) != (not is_identity(from_word(w, gens))) for w in words)
    rows.append(("co-word vs oracle", len(words), bad))

    checked = bad = 0
    for spec in inst.specs:
        auto = automaton_for(spec)
        for w in words:
            checked += 1
            bad += auto.accepts(w) != meets(from_word(w, gens), spec.b1, spec.b2)
    rows.append(("witness vs oracle", checked, bad))

    if args.simulate:
        checked = bad = 0
        for spec in inst.specs:
            auto = automaton_for(spec)
            for w in words_up_to(names, min(args.max_len, args.simulate)):
                checked += 1
                bad += auto.simulate(w).accepted != auto.accepts(w)
        rows.append(("grammar vs simulator", checked, bad))

    width = max(len(r[0]) for r in rows)
    print(f"{'check':<{width}}  {'cases':>7}  {'mismatches':>10}  result")
    for label, n, b in rows:
        print(f"{label:<{width}}  {n:>7}  {b:>10}  {'PASS' if b == 0 else 'FAIL'}")
    print(f"{len(inst.specs)} witness automata, {time.perf_counter() - started:.1f}s")
    return 0 if all(r[2] == 0 for r in rows) else 1


def _spec(args) -> WitnessSpec:
    _, gens = _load(args)
    return WitnessSpec.make(gens, parse_address(args.b1), parse_address(args.b2))


def cmd_witness_build(args) -> int:
    spec = _spec(args)
    pda = build_witness(spec)
    if args.dot:
        print(to_dot(pda))
        return 0
    if args.dump:
        print(dump(pda))
        return 0
    norm = normalize_pda(pda)
    grammar = pda_to_cfg(norm)
    print(f"witness ({format_address(spec.b1)}, {format_address(spec.b2)}): K={spec.K} window={spec.window}")
    print(f"  automaton:  {len(pda.states)} states, {len(pda.edges)} edges")
    print(f"  normalized: {len(norm.states)} states, {len(norm.edges)} edges")
    print(f"  grammar:    {len(grammar.nonterminals)} nonterminals, {len(grammar.productions)} productions")
    return 0


def cmd_witness_member(args) -> int:
    spec = _spec(args)
    word = _split_word(args.word)
    auto = automaton_for(spec)
    if args.simulate:
        bound = args.stack_bound or sound_stack_bound(spec.gens, spec.b1, spec.b2, len(word))
        result = simulate_bounded(auto.pda, word, bound)
        print(result.value)
        return 0 if result.accepted else 1
    accepted = cfg_membership(auto.grammar, word)
    print("accepted" if accepted else "rejected")
    return 0 if accepted else 1


def cmd_normalize(args) -> int:
    structure, _ = _load(args)
    word = parse_word(args.word)
    print(format_word(normalize(structure, word)))
    print(format_address(evaluate(structure, word)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fss", description="Co-word problem for finite similarity structure groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the axioms of a structure file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("partitions", help="print the big and small partitions")
    _instance_args(p)
    p.add_argument("--verify", type=int, default=0, metavar="N", help="also check the test-partition property to length N")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("decide", help="decide whether a positive word is nontrivial")
    _instance_args(p)
    p.add_argument("--word", required=True, help='space-separated generator names, e.g. "σ τ"')
    p.add_argument("--verify-len", type=int, default=3, help="length for the test-partition check (0 skips it)")
    p.add_argument("--oracle", action="store_true", help="compare with the direct action")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("crosscheck", help="automata against the direct-action oracle")
    _instance_args(p)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--simulate", type=int, default=0, metavar="N", help="also compare grammar and simulator on words up to N")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("normalize", help="normal form and ball of a stack word")
    _instance_args(p)
    p.add_argument("--word", required=True, help='e.g. "A(1,-) [s] A(1,2) #"')
    p.set_defaults(func=cmd_normalize)

    w = sub.add_parser("witness", help="witness automata").add_subparsers(dest="witness_command", required=True)
    for name, func in (("build", cmd_witness_build), ("member", cmd_witness_member)):
        p = w.add_parser(name)
        _instance_args(p)
        p.add_argument("--b1", required=True, help="source ball, e.g. /1")
        p.add_argument("--b2", required=True, help="target ball, e.g. /2")
        p.set_defaults(func=func)
        if name == "build":
            p.add_argument("--dump", action="store_true", help="print every edge")
            p.add_argument("--dot", action="store_true", help="print a Graphviz description")
        else:
            p.add_argument("--word", required=True)
            p.add_argument("--simulate", action="store_true", help="use the bounded simulator instead of the grammar")
            p.add_argument("--stack-bound", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StructureError, ChartError, WordError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fss: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
