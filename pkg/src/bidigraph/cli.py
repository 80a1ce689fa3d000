"""Command-line front end: ``bidigraph <command> [file]``; the graph is read from the file or stdin."""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence, TextIO

from .bdg import dot_annotations, export_dot, parse_bdg, serialize_bdg
from .closure import transitive_closure
from .errors import BidigraphError, CapExceededError, GraphError, ParseError
from .graph import (
    balancing_switch_set,
    is_all_negative,
    is_all_positive,
    is_antibalanced,
    is_balanced,
    sources_and_sinks,
    switch,
)
from .graph import balanced_component_count
from .matroid import (
    enumerate_circuits,
    is_matroid_connected,
    quasibalance_witness,
    rank,
)
from .reduction import all_reductions, transitive_reduction
from .states import StateDigraph, find_bcircuit, find_bpath

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4


class UsageError(Exception):
    pass


def _env_cap() -> Optional[int]:
    raw = os.environ.get("BIDIGRAPH_CAP")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BIDIGRAPH_CAP must be an integer, got {raw!r}") from None


def _vname(G, name: str):
    """Vertex names in a parsed file are strings; accept the name as typed."""
    if not G.has_vertex(name):
        raise GraphError(f"unknown vertex {name!r}")
    return name


def _state_arg(G, text: str):
    v, sep, s = text.rpartition(":")
    if not sep or s not in ("+", "-"):
        raise UsageError(f"expected vertex:sign with sign + or -, got {text!r}")
    return _vname(G, v), (1 if s == "+" else -1)


def _id_list(text: str) -> List[str]:
    return [t for t in (p.strip() for p in text.split(",")) if t]


def _sorted_names(xs) -> List[str]:
    return sorted(str(x) for x in xs)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# --------------------------------------------------------------------------
# commands; each returns an exit code and writes to ``out``


def cmd_info(G, args, out: TextIO) -> int:
    sources, sinks = sources_and_sinks(G)
    out.write(f"vertices: {len(G.vertices)}\n")
    out.write(f"edges: {len(G.edges)}\n")
    out.write(f"sources: {' '.join(_sorted_names(sources))}\n")
    out.write(f"sinks: {' '.join(_sorted_names(sinks))}\n")
    out.write(f"all-positive: {_yes(is_all_positive(G))}\n")
    out.write(f"all-negative: {_yes(is_all_negative(G))}\n")
    out.write(f"balanced: {_yes(is_balanced(G))}\n")
    out.write(f"antibalanced: {_yes(is_antibalanced(G))}\n")
    return EXIT_OK


def cmd_closure(G, args, out: TextIO) -> int:
    res = transitive_closure(G)
    if args.dot:
        out.write(export_dot(res.graph, dot_annotations(added=res.added_ids)))
        return EXIT_OK
    comments = []
    if args.witnesses:
        for eid in res.added_ids:
            key = res.graph.edge(eid).key
            comments.append(f"added {eid}: {res.witness[key].format()}")
    out.write(serialize_bdg(res.graph, comments))
    return EXIT_OK


def cmd_reduce(G, args, out: TextIO) -> int:
    if args.all_orders:
        if args.order:
            raise UsageError("--order and --all-orders are exclusive")
        results = all_reductions(G, cap=_env_cap())
        ranked = sorted(results, key=lambda ids: sorted(G.edge_index(e) for e in ids))
        for i, ids in enumerate(ranked):
            H = G.partial(ids)
            removed = [e for e in G.edge_ids if e not in ids]
            comments = [f"reduction {i + 1} of {len(ranked)}; removed: {','.join(map(str, removed)) or '(none)'}"]
            if args.dot:
                out.write(export_dot(G, dot_annotations(removed=removed), name=f"R{i + 1}"))
            else:
                out.write(serialize_bdg(H, comments))
        return EXIT_OK
    ordering = None
    if args.order:
        ordering = [G.edge_ids[G.edge_index(e)] for e in _id_list(args.order)]
    res = transitive_reduction(G, ordering)
    if args.dot:
        out.write(export_dot(G, dot_annotations(removed=res.removed_ids)))
        return EXIT_OK
    comments = [f"removed {eid}: {p.format()}" for eid, p in res.removed]
    out.write(serialize_bdg(res.graph, comments))
    return EXIT_OK


def cmd_bpath(G, args, out: TextIO) -> int:
    x, a = _state_arg(G, args.source)
    y, b = _state_arg(G, args.target)
    exclude = [G.edge_ids[G.edge_index(e)] for e in _id_list(args.exclude or "")]
    p = find_bpath(StateDigraph(G), x, a, y, b, exclude=exclude)
    if p is None:
        out.write("none\n")
        return EXIT_NO
    out.write(p.format() + "\n")
    return EXIT_OK


def cmd_bcircuit(G, args, out: TextIO) -> int:
    c = find_bcircuit(G)
    if c is None:
        out.write("none\n")
        return EXIT_OK
    out.write(c.format() + "\n")
    return EXIT_NO


def cmd_balance(G, args, out: TextIO) -> int:
    X = balancing_switch_set(G)
    if X is None:
        out.write("unbalanced\n")
        return EXIT_NO
    out.write("balanced\n")
    if args.switch_set:
        out.write(f"switch-set: {' '.join(_sorted_names(X))}\n")
    return EXIT_OK


def cmd_switch(G, args, out: TextIO) -> int:
    X = [_vname(G, v) for v in _id_list(args.set)]
    out.write(serialize_bdg(switch(G, X)))
    return EXIT_OK


def cmd_rank(G, args, out: TextIO) -> int:
    out.write(f"rank: {rank(G)}\n")
    out.write(f"balanced-components: {balanced_component_count(G)}\n")
    return EXIT_OK


def _format_circuit(G, F) -> str:
    return ",".join(str(e) for e in sorted(F, key=G.edge_index))


def cmd_circuits(G, args, out: TextIO) -> int:
    cap = args.cap if args.cap is not None else _env_cap()
    cl = enumerate_circuits(G, cap=cap)
    for F, t in cl:
        out.write(f"{t.value} {_format_circuit(G, F)}\n")
    if cl.truncated:
        sys.stderr.write(f"circuit list truncated at {cap}\n")
        return EXIT_CAP
    return EXIT_OK


def cmd_quasibalance(G, args, out: TextIO) -> int:
    w = quasibalance_witness(G, cycle_cap=_env_cap())
    if w is None:
        out.write("yes\n")
        return EXIT_OK
    F, t = w
    out.write("no\n")
    out.write(f"witness: type {t.value} {_format_circuit(G, F)}\n")
    return EXIT_NO


def cmd_matroid_connected(G, args, out: TextIO) -> int:
    ok = is_matroid_connected(G, cap=_env_cap())
    out.write(_yes(ok) + "\n")
    return EXIT_OK if ok else EXIT_NO


def cmd_oracle_check(args, out: TextIO) -> int:
    from .crosscheck import compare
    from .oracle import random_suite

    bad = 0
    for i, G in enumerate(random_suite(args.seed, args.cases)):
        diffs = compare(G)
        if diffs:
            bad += 1
            out.write(f"case {i}: {'; '.join(diffs)}\n")
    out.write(f"checked {args.cases} graphs (seed {args.seed}): {bad} disagreements\n")
    return EXIT_OK if bad == 0 else EXIT_NO


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bidigraph", description="Closure, reduction and matroid queries on bidirected graphs.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", nargs="?", default="-", help=".bdg input (default: stdin)")
        sp.set_defaults(func=func)
        return sp

    add("info", cmd_info, "counts, sources/sinks, sign and balance summary")
    sp = add("closure", cmd_closure, "transitive closure")
    sp.add_argument("--dot", action="store_true", help="emit DOT with added edges styled")
    sp.add_argument("--witnesses", action="store_true", help="list a witness b-path per added edge")
    sp = add("reduce", cmd_reduce, "transitive reduction")
    sp.add_argument("--order", help="comma-separated edge ids (default: file order)")
    sp.add_argument("--all-orders", action="store_true", help="every reduction over all orderings")
    sp.add_argument("--dot", action="store_true", help="emit DOT with removed edges styled")
    sp = add("bpath", cmd_bpath, "shortest b-path between two signed vertices")
    sp.add_argument("--from", dest="source", required=True, metavar="V:S")
    sp.add_argument("--to", dest="target", required=True, metavar="V:S")
    sp.add_argument("--exclude", metavar="E1,E2", help="edges to avoid")
    add("bcircuit", cmd_bcircuit, "report a b-circuit (exit 1) or none")
    sp = add("balance", cmd_balance, "balance test")
    sp.add_argument("--switch-set", action="store_true", help="print a switching set making every edge positive")
    sp = add("switch", cmd_switch, "switch the graph at a vertex set")
    sp.add_argument("--set", required=True, metavar="V1,V2", help="vertices to switch")
    add("rank", cmd_rank, "frame-matroid rank")
    sp = add("circuits", cmd_circuits, "frame-matroid circuits with their types")
    sp.add_argument("--cap", type=int, help="maximum number of circuits (also BIDIGRAPH_CAP)")
    add("quasibalance", cmd_quasibalance, "quasibalance test with a witness circuit")
    add("matroid-connected", cmd_matroid_connected, "frame-matroid connectivity")
    sp = sub.add_parser("oracle-check", help="compare the engine with brute force on random graphs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=100)
    sp.set_defaults(func=None)
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cli_main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "oracle-check":
            return cmd_oracle_check(args, out)
        try:
            G = parse_bdg(_read(args.file))
        except OSError as exc:
            sys.stderr.write(f"bidigraph: cannot read {args.file}: {exc.strerror}\n")
            return EXIT_INPUT
        return args.func(G, args, out)
    except UsageError as exc:
        sys.stderr.write(f"bidigraph: {exc}\n")
        return EXIT_USAGE
    except CapExceededError as exc:
        sys.stderr.write(f"bidigraph: {exc}\n")
        return EXIT_CAP
    except (ParseError, BidigraphError, ValueError) as exc:
        sys.stderr.write(f"bidigraph: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(cli_main())
