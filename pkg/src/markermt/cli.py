"""Command line interface: translate, repl, validate, corpus, synth."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from markermt.network import NetworkError, load_network, validate_network
from markermt.synth import synth_network
from markermt.translator import (
    NO_PARSE,
    SUCCESS,
    UNKNOWN_WORD,
    reverse_direction,
    translate,
)

EXIT_OK = 0
EXIT_NO_PARSE = 1
EXIT_UNKNOWN_WORD = 2
EXIT_NETWORK = 3

_STATUS_EXIT = {SUCCESS: EXIT_OK, NO_PARSE: EXIT_NO_PARSE, UNKNOWN_WORD: EXIT_UNKNOWN_WORD}


def _load(path: str, out=sys.stderr):
    try:
        return load_network(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"cannot read network: {exc}", file=out)
    except NetworkError as exc:
        print(f"network error: {exc}", file=out)
    return None


def cmd_translate(args) -> int:
    net = _load(args.network)
    if net is None:
        return EXIT_NETWORK
    result = translate(net, args.sentence, args.dir)
    if args.trace:
        for event in result.trace:
            print(event.line(), file=sys.stderr)
    if result.ok:
        print(result.target_sentence)
        return EXIT_OK
    if result.status == UNKNOWN_WORD:
        print(f"unknown word at token {result.error_position}", file=sys.stderr)
    else:
        print("no parse", file=sys.stderr)
    return _STATUS_EXIT[result.status]


def cmd_validate(args) -> int:
    net = _load(args.network)
    if net is None:
        return EXIT_NETWORK
    diagnostics = validate_network(net)
    for d in diagnostics:
        print(d)
    print(f"{len(diagnostics)} problem(s)" if diagnostics else "network ok")
    return EXIT_OK if not diagnostics else EXIT_NO_PARSE


def cmd_corpus(args) -> int:
    net = _load(args.network)
    if net is None:
        return EXIT_NETWORK
    try:
        lines = Path(args.corpus).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"cannot read corpus: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    passed = failed = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            print(f"line {lineno}: FAIL malformed entry")
            failed += 1
            continue
        direction, source, expected = parts
        try:
            result = translate(net, source, direction)
        except ValueError as exc:
            print(f"line {lineno}: FAIL {exc}")
            failed += 1
            continue
        if expected == "*":
            good = result.ok
        else:
            good = result.ok and result.target_sentence == expected
        if good:
            print(f"line {lineno}: ok {source!r} -> {result.target_sentence!r}")
            passed += 1
        else:
            got = result.target_sentence if result.ok else result.status
            print(f"line {lineno}: FAIL {source!r} -> {got!r} (expected {expected!r})")
            failed += 1
    print(f"{passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_NO_PARSE


def cmd_synth(args) -> int:
    try:
        sys.stdout.write(synth_network(args.lexical_pairs, args.cs_pairs, args.seed,
                                       samples=args.samples))
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NO_PARSE
    return EXIT_OK


def cmd_repl(args) -> int:
    net = _load(args.network)
    if net is None:
        return EXIT_NETWORK
    direction = args.dir
    show_trace = False
    history: list[tuple[str, str, str]] = []

    print(f"direction {direction}; :dir, :trace on|off, :history, :quit")
    while True:
        try:
            line = input("> ").strip()
        except EOFError:
            break
        if not line:
            continue
        if line == ":quit":
            break
        if line.startswith(":dir"):
            parts = line.split()
            if len(parts) == 2 and "-" in parts[1]:
                try:
                    reverse_direction(parts[1])
                except ValueError as exc:
                    print(exc)
                    continue
                direction = parts[1]
                print(f"direction {direction}")
            else:
                print("usage: :dir ko-en|en-ko")
            continue
        if line.startswith(":trace"):
            show_trace = line.split()[-1] == "on"
            print(f"trace {'on' if show_trace else 'off'}")
            continue
        if line == ":history":
            for i, (d, src, out) in enumerate(history, start=1):
                print(f"{i}. [{d}] {src} => {out}")
            continue
        if line.startswith(":"):
            print(f"unknown command {line.split()[0]}")
            continue

        result = translate(net, line, direction, keep_state=args.debug)
        if show_trace:
            for event in result.trace:
                print(event.line())
        if result.ok:
            print(result.target_sentence)
            history.append((direction, line, result.target_sentence))
        else:
            suffix = f" at token {result.error_position}" if result.error_position else ""
            print(f"[{result.status}{suffix}]")
            history.append((direction, line, f"<{result.status}>"))
        if args.debug:
            state = result.debug_state
            print(
                f"[debug markers={len(state.markers)} instances={len(state.instances)} "
                f"agenda={len(state.agenda)} empty={state.is_empty()}]"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markermt",
        description="Bidirectional memory-based dialog translation (Korean/English, "
        "Yale romanization for Korean).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="translate one sentence")
    p.add_argument("network", help="network file path")
    p.add_argument("sentence", help="source sentence")
    p.add_argument("--dir", required=True, help="direction, ko-en or en-ko")
    p.add_argument("--trace", action="store_true", help="print marker events to stderr")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("repl", help="interactive translation loop")
    p.add_argument("network")
    p.add_argument("--dir", default="en-ko")
    p.add_argument("--debug", action="store_true", help="report session marker state per line")
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("validate", help="load a network and report diagnostics")
    p.add_argument("network")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("corpus", help="run a tab-separated test corpus")
    p.add_argument("network")
    p.add_argument("corpus", help="lines of: direction<TAB>source<TAB>expected-or-*")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("synth", help="emit a deterministic synthetic network on stdout")
    p.add_argument("lexical_pairs", type=int)
    p.add_argument("cs_pairs", type=int)
    p.add_argument("seed", type=int)
    p.add_argument("--samples", type=int, default=100, help="sample sentences to append")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
