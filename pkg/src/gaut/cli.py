"""The ``gaut`` command line: recognize, encode, eval, axioms.

Exit codes: 0 accepted/pass, 1 rejected/fail, 2 usage or parse error.
Payloads go to stdout as JSON (``encode`` prints the raw term text);
diagnostics go to stderr only.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automaton as automaton_io
from .automaton import word_to_str
from .axioms import check_axioms
from .colorability import is_k_colorable, make_color_automaton
from .encoder import encode_graph, parse_graph_input, to_digraph
from .errors import GautError
from .hypergraph import eval_graph, to_json as graph_to_json
from .relations import eval_term, tsrel_dset
from .terms import parse_term, print_term, rank_of

FORMATS = ("edgelist", "json", "dot")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GautError as exc:
        print(f"gaut: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gaut: error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaut",
        description="graph automata: k-colorability recognition, graph encoding, "
        "term evaluation, and axiom checking",
    )
    parser.add_argument(
        "--quiet", action="store_true", help="suppress payload output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide k-colorability of a graph file")
    p.add_argument("graph_file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="edgelist")
    p.add_argument("--witness", action="store_true", help="include a coloring")
    p.set_defaults(handler=_cmd_recognize)

    p = sub.add_parser("encode", help="print a term that evaluates to the graph")
    p.add_argument("graph_file")
    p.add_argument("--format", choices=FORMATS, default="edgelist")
    p.set_defaults(handler=_cmd_encode)

    p = sub.add_parser("eval", help="evaluate a term file")
    p.add_argument("term_file")
    p.add_argument(
        "--semantics", choices=("graph", "relation"), default="graph"
    )
    p.add_argument("--states", type=int, help="state count for relation semantics")
    p.add_argument(
        "--delta-file",
        help="automaton JSON supplying transition relations for atoms "
        "(default: the k-colorability transitions on the given states)",
    )
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("axioms", help="check the graph equations over 1..N states")
    p.add_argument("--states", type=int, required=True)
    p.set_defaults(handler=_cmd_axioms)
    return parser


def _emit(args, payload) -> None:
    if not args.quiet:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_recognize(args) -> int:
    g = parse_graph_input(Path(args.graph_file).read_text(), args.format)
    digraph, ids = to_digraph(g)
    ok, coloring = is_k_colorable(digraph, args.k)
    if not ok:
        _emit(args, {"status": "rejected", "payload": {"colorable": False, "k": args.k}})
        return 1
    payload = {"colorable": True, "k": args.k}
    if args.witness:
        payload["coloring"] = {
            str(ids[i - 1]): color for i, color in sorted(coloring.colors.items())
        }
    _emit(args, {"status": "accepted", "payload": payload})
    return 0


def _cmd_encode(args) -> int:
    g = parse_graph_input(Path(args.graph_file).read_text(), args.format)
    term = encode_graph(g)
    if not args.quiet:
        print(print_term(term))
    return 0


def _cmd_eval(args) -> int:
    term = parse_term(Path(args.term_file).read_text())
    if args.semantics == "graph":
        _emit(args, {"status": "accepted", "payload": graph_to_json(eval_graph(term))})
        return 0
    if not args.states or args.states < 1:
        print("gaut: error: relation semantics needs --states N (N >= 1)", file=sys.stderr)
        return 2
    states = tuple(range(1, args.states + 1))
    if args.delta_file:
        machine = automaton_io.from_json(json.loads(Path(args.delta_file).read_text()))
        delta = dict(machine.delta)
    else:
        delta = dict(make_color_automaton(args.states).delta)
    rel = eval_term(term, states, tsrel_dset(states), delta)
    payload = {
        "rank": list(rank_of(term)),
        "pairs": sorted([word_to_str(u), word_to_str(v)] for u, v in rel.pairs),
    }
    _emit(args, {"status": "accepted", "payload": payload})
    return 0


def _cmd_axioms(args) -> int:
    if args.states < 1:
        print("gaut: error: --states must be at least 1", file=sys.stderr)
        return 2
    states = tuple(range(1, args.states + 1))
    dset = tsrel_dset(states)
    generators = [
        make_color_automaton(args.states).delta["a"],
        dset.d21,
        dset.d12,
        dset.s,
    ]
    report = check_axioms(states, dset, generators)
    _emit(args, report.to_json())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
