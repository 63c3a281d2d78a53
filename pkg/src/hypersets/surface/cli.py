"""Command-line front end: ``hypersets <command> ...``.

Exit status 0 on success, 1 for domain errors (decoding failures, graphs
over the size limit, non-set results) and 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..corpus import default_corpus
from ..decoration import decorate, decorate_labeled
from ..errors import HypersetError, ParseError
from ..kernel import SetValue
from ..neural import run
from ..operators import OperatorExpr, check_k_axioms
from .parser import Applied, parse_graph, parse_network, parse_opexpr, parse_system
from .printing import dot_graph, dot_network, dot_set, format_set


class UsageError(Exception):
    pass


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(path).read_text(), path
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _system_env(path: str | None) -> dict[str, SetValue]:
    if path is None:
        return {}
    text, source = _read(path)
    return parse_system(text, source).decoration()


def cmd_eval(args) -> int:
    env = _system_env(args.system)
    term = parse_opexpr(args.expr, env, "<expr>")
    if isinstance(term, OperatorExpr):
        head = f"({term})" if " " in str(term) or "." in str(term) else str(term)
        print(f"error: {term} is an operator; apply it to a set, e.g. {head}({{}})", file=sys.stderr)
        return 1
    value = term.value() if isinstance(term, Applied) else term
    print(format_set(value))
    return 0


def cmd_canon(args) -> int:
    text, source = _read(args.file)
    print(format_set(parse_system(text, source).value()))
    return 0


def _load_graph(path: str):
    text, source = _read(path)
    if "->" in text:
        return parse_graph(text, source)
    return parse_system(text, source)


def cmd_decorate(args) -> int:
    system = _load_graph(args.file)
    if args.labeled:
        ltext, lsource = _read(args.labeled)
        labels = parse_system(ltext, lsource).decoration()
        index = {n: i for i, n in enumerate(system.names)}
        unknown = sorted(set(labels) - set(index))
        if unknown:
            raise UsageError(f"labels name unknown nodes: {', '.join(unknown)}")
        deco = decorate_labeled(system.graph, {index[n]: v for n, v in labels.items()})
    else:
        deco = decorate(system.graph)
    for i, name in enumerate(system.names):
        print(f"{name} = {format_set(deco[i])}")
    return 0


def cmd_simulate(args) -> int:
    text, source = _read(args.file)
    network = parse_network(text, source)
    net = network.net()
    traj = run(net, network.state(), args.steps, full=args.emit == "full")
    for entry in traj:
        if args.emit == "full":
            volts = " ".join(f"{n}={v}" for n, v in zip(net.names, entry.state.voltages))
            print(f"t={entry.time}: {volts}")
            for (a, b), w in entry.state.weights.items():
                print(f"  w({net.names[a]}->{net.names[b]}) = {w}")
            for n, d in zip(net.names, entry.decoration):
                print(f"  {n}: {format_set(d)}")
        else:
            print(f"t={entry.time}: {format_set(entry.thema)}")
        if args.dot_dir:
            out = Path(args.dot_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"t{entry.time:03d}.dot").write_text(dot_network(net, entry.state, f"t={entry.time}"))
    return 0


def _corpus(source_spec: str) -> list[SetValue]:
    if source_spec == "small":
        return default_corpus()
    text, source = _read(source_spec)
    sets = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            term = parse_opexpr(line, None, source)
        except ParseError as e:
            raise ParseError(e.message, lineno, e.column, source) from e
        if not isinstance(term, (SetValue, Applied)):
            raise UsageError(f"{source}:{lineno}: corpus lines must be sets")
        sets.append(term.value() if isinstance(term, Applied) else term)
    return sets


def cmd_axioms(args) -> int:
    term = parse_opexpr(args.op, _system_env(args.system), "<op>")
    if not isinstance(term, OperatorExpr):
        raise UsageError("axioms expects an operator expression, e.g. 'R' or 'K[{}]'")
    corpus = _corpus(args.corpus)
    report = check_k_axioms(term, corpus)
    print(f"operator {term} on {report.corpus_size} sets")
    for k, res in report.results.items():
        line = f"({k}) {res.name}: {'pass' if res.passed else 'FAIL'}"
        if not res.passed:
            if res.partner is not None:
                line += f"  x = {format_set(res.witness)}  y = {format_set(res.partner)}"
            else:
                line += f"  x = {format_set(res.witness)}"
        print(line)
    return 0


def cmd_dot(args) -> int:
    text, source = _read(args.file)
    if args.kind == "network":
        network = parse_network(text, source)
        print(dot_network(network.net(), network.state()), end="")
    elif args.kind == "canon":
        print(dot_set(parse_system(text, source).value()), end="")
    else:
        system = parse_system(text, source)
        names = system.names + [f"_{i}" for i in range(len(system.names), system.graph.node_count)]
        print(dot_graph(system.graph, names, system.point, "system"), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypersets", description="Non-well-founded sets, operators and neural decorations.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a set or operator application")
    e.add_argument("expr")
    e.add_argument("--system", help="system file whose names may be referenced")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("canon", help="print the canonical form of a system's point")
    c.add_argument("file")
    c.set_defaults(func=cmd_canon)

    d = sub.add_parser("decorate", help="print the set of every named node")
    d.add_argument("file", help="system file, or edge-list graph file (lines 'a -> b, c')")
    d.add_argument("--labeled", metavar="FILE", help="system file giving a label set per node name")
    d.set_defaults(func=cmd_decorate)

    s = sub.add_parser("simulate", help="run a network and print its thema over time")
    s.add_argument("file")
    s.add_argument("--steps", type=int, default=0)
    s.add_argument("--emit", choices=("thema", "full"), default="thema")
    s.add_argument("--dot-dir", metavar="DIR", help="write one DOT file per time step")
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("axioms", help="check axioms a-d for an operator on a corpus")
    a.add_argument("op")
    a.add_argument("--corpus", default="small", help="'small' or a file with one set per line")
    a.add_argument("--system", help="system file whose names may be referenced")
    a.set_defaults(func=cmd_axioms)

    g = sub.add_parser("dot", help="export Graphviz DOT")
    g.add_argument("file")
    g.add_argument("--kind", choices=("system", "canon", "network"), default="system")
    g.set_defaults(func=cmd_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 0) < 0:
        parser.error("--steps must be non-negative")
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (HypersetError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
