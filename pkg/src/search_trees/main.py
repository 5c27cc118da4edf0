"""Main CLI entry point for search-trees."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path

from search_trees.config import AVAILABLE_TIE_BREAKS, Config
from search_trees.errors import SearchTreeError
from search_trees.fileio import (
    GraphFile,
    format_graph,
    format_roles,
    format_tree,
    parse_dimacs_cnf,
    parse_graph_document,
    parse_tree_file,
)
from search_trees.fixtures import FIXTURE_PREFIX, read_fixture_text
from search_trees.generators import (
    random_cnf,
    random_connected_graph,
    random_spanning_tree,
    random_split_graph,
)
from search_trees.graph import Graph, SpanningTree, VertexOrdering
from search_trees.oracle import is_chordal, is_weakly_chordal_bruteforce, oracle_recognize
from search_trees.recognizers import (
    AVAILABLE_BFS_ENGINES,
    Budget,
    Outcome,
    RecognitionResult,
    recognize,
    recognize_bfs_f_tree,
)
from search_trees.reductions import build_lbfs_instance, build_mns_instance
from search_trees.searches import (
    SearchKind,
    TieBreak,
    candidates_after,
    first_violation,
    mns_three_point_violations,
    run_search,
)
from search_trees.split import split_partition
from search_trees.trees import Side, build_tree

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_INCONCLUSIVE = 2
EXIT_ERROR = 3

KINDS = [k.value for k in SearchKind]
CLASSES = ["split", "chordal", "weakly-chordal"]


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="search-trees",
        description="Graph searches and the recognition of their F-trees and L-trees",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  search-trees search --graph fixture:c4 --kind lbfs --start 1
  search-trees recognize --kind ldfs --side l --graph fixture:c4 --tree fixture:c4_path
  search-trees oracle --kind bfs --side f --graph fixture:apex22 --tree fixture:apex22
  search-trees reduce --target lbfs --cnf fixture:sat1 --out-prefix sat1
  search-trees check-class --class split --graph fixture:split2

Exit codes: 0 yes/true, 1 no/false, 2 inconclusive, 3 usage or input error.
Graph, tree and CNF arguments accept a path or fixture:<name>.
""",
    )
    parser.add_argument("--config", type=Path, help="Config file (default: ~/.config/...)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print machine-readable JSON")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="Run a search and print its ordering")
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--tie-break", choices=AVAILABLE_TIE_BREAKS, help="Default: from config")
    p.add_argument("--side", choices=["f", "l"], help="Also print the F- or L-tree")

    p = sub.add_parser(
        "validate-order", parents=[common], help="Check an ordering against a search rule"
    )
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--order", required=True, help="Space-separated vertex ids")
    p.add_argument("--explain", action="store_true", help="Show the first failing step")

    p = sub.add_parser("build-tree", parents=[common], help="Print the F- or L-tree of an order")
    p.add_argument("--graph", required=True)
    p.add_argument("--order", required=True, help="Space-separated vertex ids")
    p.add_argument("--side", required=True, choices=["f", "l"])
    p.add_argument("--out", type=Path, help="Write the tree file here instead of stdout")

    for name, help_text in (
        ("recognize", "Decide whether a tree is an F-/L-tree of a search"),
        ("oracle", "Same question, answered by exhaustive enumeration"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--kind", required=True, choices=KINDS)
        p.add_argument("--side", required=True, choices=["f", "l"])
        p.add_argument("--graph", required=True)
        p.add_argument("--tree", required=True)
        p.add_argument("--root", type=int, help="Only consider searches starting here")
        if name == "recognize":
            p.add_argument("--budget", type=int, help="Node budget per root (default: config)")
            p.add_argument("--workers", type=int, help="Threads for per-root attempts")
            p.add_argument("--engine", choices=AVAILABLE_BFS_ENGINES, default="layers",
                           help="BFS F-tree engine (default: layers)")
            p.add_argument("--no-verify", action="store_true", help="Skip witness replay")

    p = sub.add_parser("reduce", parents=[common], help="Build a 3-SAT gadget instance")
    p.add_argument("--target", required=True, choices=["lbfs", "mns"])
    p.add_argument("--cnf", required=True)
    p.add_argument("--out-prefix", required=True, type=Path)
    p.add_argument("--strict", action="store_true", help="Reject clauses without 3 literals")

    p = sub.add_parser("check-class", parents=[common], help="Test a graph class")
    p.add_argument("--class", dest="graph_class", required=True, choices=CLASSES)
    p.add_argument("--graph", required=True)

    p = sub.add_parser("generate", parents=[common], help="Write a random instance")
    p.add_argument("--what", required=True, choices=["graph", "split", "cnf"])
    p.add_argument("--n", type=int, default=8, help="Vertices (graph)")
    p.add_argument("--m", type=int, help="Edges (graph); default uses --p")
    p.add_argument("--p", type=float, default=0.3, help="Edge probability (graph, split)")
    p.add_argument("--clique", type=int, default=4, help="Clique size (split)")
    p.add_argument("--independent", type=int, default=4, help="Independent set size (split)")
    p.add_argument("--variables", type=int, default=3, help="Variables (cnf)")
    p.add_argument("--clauses", type=int, default=3, help="Clauses (cnf)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-prefix", type=Path, help="Write files here instead of stdout")

    return parser


def _read_source(source: str, suffix: str) -> str:
    if source.startswith(FIXTURE_PREFIX):
        return read_fixture_text(source[len(FIXTURE_PREFIX) :] + suffix)
    return Path(source).read_text(encoding="utf-8")


def _load_graph(source: str) -> GraphFile:
    return parse_graph_document(_read_source(source, ".graph"))


def _load_tree(source: str, g: Graph) -> SpanningTree:
    return parse_tree_file(_read_source(source, ".tree"), g)


def _parse_order(g: Graph, text: str) -> VertexOrdering:
    try:
        ids = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise SearchTreeError(f"ordering must be integers, got {text!r}") from None
    return VertexOrdering.for_graph(g, ids)


def _render(order: Sequence[int], names: Mapping[int, str]) -> str:
    if not names:
        return " ".join(str(v) for v in order)
    return " ".join(f"{v}({names[v]})" if v in names else str(v) for v in order)


def _emit(args: argparse.Namespace, payload: dict[str, object], lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _report(args: argparse.Namespace, result: RecognitionResult, names: Mapping[int, str]) -> int:
    lines = [result.outcome.value]
    if result.witness is not None:
        lines.append(f"root {result.root}: {_render(result.witness.order, names)}")
    _emit(args, result.to_dict(), lines)
    if result.recognized:
        return EXIT_YES
    return EXIT_INCONCLUSIVE if result.inconclusive else EXIT_NO


def cmd_search(args: argparse.Namespace, config: Config) -> int:
    doc = _load_graph(args.graph)
    tb = TieBreak.parse(args.tie_break or config.tie_break)
    sigma = run_search(doc.graph, SearchKind.parse(args.kind), args.start, tb)
    payload: dict[str, object] = {"ordering": list(sigma.order)}
    lines = [_render(sigma.order, doc.names)]
    if args.side:
        t = build_tree(doc.graph, sigma, Side.parse(args.side))
        payload["tree"] = [list(e) for e in sorted(t.edges)]
        lines.append(format_tree(t).rstrip("\n"))
    _emit(args, payload, lines)
    return EXIT_YES


def cmd_validate_order(args: argparse.Namespace, config: Config) -> int:
    doc = _load_graph(args.graph)
    g = doc.graph
    kind = SearchKind.parse(args.kind)
    sigma = _parse_order(g, args.order)
    step = first_violation(g, kind, sigma)
    payload: dict[str, object] = {"valid": step is None, "first_violation": step}
    lines = ["true" if step is None else "false"]
    if args.explain and step is not None:
        allowed = sorted(candidates_after(g, kind, sigma.order[: step - 1]))
        payload["allowed"] = allowed
        lines.append(
            f"step {step}: vertex {sigma.at(step)} is not a {kind.value} candidate; "
            f"allowed: {_render(allowed, doc.names)}"
        )
    if args.explain and kind is SearchKind.MNS:
        triples = mns_three_point_violations(g, sigma)
        payload["three_point_violations"] = [list(t) for t in triples]
        lines.extend(f"three-point violation (a, b, c) = {t}" for t in triples)
    _emit(args, payload, lines)
    return EXIT_YES if step is None else EXIT_NO


def cmd_build_tree(args: argparse.Namespace, config: Config) -> int:
    g = _load_graph(args.graph).graph
    t = build_tree(g, _parse_order(g, args.order), Side.parse(args.side))
    if args.out:
        args.out.write_text(format_tree(t), encoding="utf-8")
        logger.info("Wrote %s", args.out)
    _emit(args, {"tree": [list(e) for e in sorted(t.edges)]}, [format_tree(t).rstrip("\n")])
    return EXIT_YES


def cmd_recognize(args: argparse.Namespace, config: Config) -> int:
    doc = _load_graph(args.graph)
    t = _load_tree(args.tree, doc.graph)
    kind, side = SearchKind.parse(args.kind), Side.parse(args.side)
    budget = Budget(config.budget)
    if kind is SearchKind.BFS and side is Side.F and args.engine != "layers":
        result = recognize_bfs_f_tree(
            doc.graph,
            t,
            engine=args.engine,
            root=args.root,
            budget=budget,
            workers=config.workers,
            verify=config.verify_witnesses,
        )
    else:
        result = recognize(
            doc.graph,
            t,
            kind,
            side,
            budget,
            root=args.root,
            workers=config.workers,
            verify=config.verify_witnesses,
        )
    return _report(args, result, doc.names)


def cmd_oracle(args: argparse.Namespace, config: Config) -> int:
    doc = _load_graph(args.graph)
    t = _load_tree(args.tree, doc.graph)
    sigma = oracle_recognize(
        doc.graph, t, SearchKind.parse(args.kind), Side.parse(args.side), root=args.root
    )
    outcome = Outcome.YES if sigma is not None else Outcome.NO
    return _report(args, RecognitionResult(outcome, sigma), doc.names)


def cmd_reduce(args: argparse.Namespace, config: Config) -> int:
    formula = parse_dimacs_cnf(_read_source(args.cnf, ".cnf"), strict=args.strict)
    build = build_lbfs_instance if args.target == "lbfs" else build_mns_instance
    instance = build(formula)
    prefix: Path = args.out_prefix
    written = []
    for suffix, text in (
        (".graph", format_graph(instance.graph)),
        (".tree", format_tree(instance.tree)),
        (".roles", format_roles(instance)),
    ):
        path = prefix.with_name(prefix.name + suffix)
        path.write_text(text, encoding="utf-8")
        written.append(str(path))
    payload = {"files": written, "vertices": instance.graph.n, "edges": instance.graph.m}
    _emit(args, payload, [f"wrote {path}" for path in written])
    return EXIT_YES


def cmd_check_class(args: argparse.Namespace, config: Config) -> int:
    doc = _load_graph(args.graph)
    g = doc.graph
    payload: dict[str, object] = {"class": args.graph_class}
    lines: list[str] = []
    if args.graph_class == "split":
        partition = split_partition(g)
        verdict = partition is not None
        if partition is not None:
            payload["clique"] = sorted(partition.clique)
            payload["independent"] = sorted(partition.independent)
            lines.append(f"clique: {_render(sorted(partition.clique), doc.names)}")
            lines.append(f"independent: {_render(sorted(partition.independent), doc.names)}")
    elif args.graph_class == "chordal":
        verdict = is_chordal(g)
    else:
        verdict = is_weakly_chordal_bruteforce(g)
    payload["member"] = verdict
    _emit(args, payload, ["true" if verdict else "false", *lines])
    return EXIT_YES if verdict else EXIT_NO


def cmd_generate(args: argparse.Namespace, config: Config) -> int:
    outputs: list[tuple[str, str]] = []
    if args.what == "cnf":
        formula = random_cnf(args.variables, args.clauses, seed=args.seed)
        outputs.append((".cnf", formula.to_dimacs()))
    else:
        if args.what == "graph":
            g = random_connected_graph(args.n, m=args.m, p=args.p, seed=args.seed)
        else:
            g = random_split_graph(args.clique, args.independent, p=args.p, seed=args.seed)
        tree_seed = None if args.seed is None else args.seed + 1
        outputs.append((".graph", format_graph(g)))
        outputs.append((".tree", format_tree(random_spanning_tree(g, seed=tree_seed))))
    if args.out_prefix:
        written = []
        for suffix, text in outputs:
            path = args.out_prefix.with_name(args.out_prefix.name + suffix)
            path.write_text(text, encoding="utf-8")
            written.append(str(path))
        _emit(args, {"files": written}, [f"wrote {path}" for path in written])
    else:
        _emit(
            args,
            {suffix.lstrip("."): text for suffix, text in outputs},
            [text.rstrip("\n") for _, text in outputs],
        )
    return EXIT_YES


COMMANDS = {
    "search": cmd_search,
    "validate-order": cmd_validate_order,
    "build-tree": cmd_build_tree,
    "recognize": cmd_recognize,
    "oracle": cmd_oracle,
    "reduce": cmd_reduce,
    "check-class": cmd_check_class,
    "generate": cmd_generate,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors; 2 means inconclusive here
        return EXIT_YES if e.code in (0, None) else EXIT_ERROR

    config = Config.load(args.config)
    try:
        config = config.override(
            budget=getattr(args, "budget", None),
            workers=getattr(args, "workers", None),
            verify_witnesses=False if getattr(args, "no_verify", False) else None,
            verbose=True if args.verbose else None,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args, config)
    except (SearchTreeError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    """Main entry point."""
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
