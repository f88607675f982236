"""Command-line interface.

Subcommands: construct, table, overlap, baseline, graph, vt, search.
Tabular output is CSV by default; --json switches to JSON.
"""

import argparse
import json
import sys

from . import analysis, confgraph, gateway, greedy, orchestrator, priolib, vtcodes
from .progdb import SearchConfig


def _emit(rows, args):
    text = analysis.rows_to_json(rows) if args.json else analysis.rows_to_csv(rows)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args):
    graph = confgraph.get_graph(args.n, args.s)
    f = priolib.get(args.priority)
    code = greedy.greedy_construct(graph, f.func)
    if args.out:
        greedy.save_code(code, args.out)
    else:
        print(f"{code.n} {code.s} {len(code)}")
        for word in code.codewords:
            print(word)


def cmd_table(args):
    names = args.priorities.split(",")
    rows = analysis.size_table(names, range(args.n_min, args.n_max + 1), args.s)
    _emit(rows, args)


def cmd_overlap(args):
    a = greedy.load_code(args.a)
    b = greedy.load_code(args.b)
    print(f"{analysis.overlap(a, b):.6f}")


def cmd_baseline(args):
    histogram = analysis.random_baseline(args.n, args.s, args.trials, args.seed)
    _emit(analysis.histogram_to_rows(histogram), args)


def cmd_graph_build(args):
    graph = confgraph.build_graph(args.n, args.s)
    if args.text:
        confgraph.save_graph_text(graph, args.out)
    else:
        confgraph.save_graph(graph, args.out)
    print(f"wrote {args.out}: n={graph.n} s={graph.s} edges={graph.edge_count}")


def cmd_vt(args):
    code = vtcodes.vt_code(vtcodes.VTParams(args.n, args.a))
    if args.out:
        greedy.save_code(code, args.out)
    else:
        print(f"{code.n} 1 {len(code)}")
        for word in code.codewords:
            print(word)


def cmd_search_run(args):
    with open(args.config) as fh:
        config = SearchConfig(**json.load(fh))
    if args.mock:
        client = gateway.MockClient.from_script(args.mock)
    else:
        if not args.llm_url or not args.llm_model:
            raise SystemExit("without --mock, --llm-url and --llm-model are required")
        client = gateway.HttpClient(args.llm_url, args.llm_model, style=args.llm_style)
    transport = orchestrator.queue_transport(args.transport, args.broker)
    state, db = orchestrator.run_search(
        config,
        client,
        seed=args.seed,
        template_id=args.template,
        transport=transport,
        checkpoint_path=args.snapshot,
    )
    if args.snapshot:
        db.snapshot(args.snapshot)
    print(json.dumps(state.to_dict(), indent=1))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dccsearch",
        description="Deletion-correcting code construction and priority-function search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="greedily construct a code with a built-in")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--priority", required=True, choices=sorted(priolib.BUILTINS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("table", help="code-size table for built-ins over a length range")
    p.add_argument("--priorities", required=True, help="comma-separated built-in names")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("overlap", help="sequence overlap between two code files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("baseline", help="random-permutation greedy baseline histogram")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("graph", help="graph utilities")
    gsub = p.add_subparsers(dest="graph_command", required=True)
    g = gsub.add_parser("build", help="build and serialize a confusability graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--s", type=int, default=1)
    g.add_argument("--out", required=True)
    g.add_argument("--text", action="store_true", help="debug text format")
    g.set_defaults(func=cmd_graph_build)

    p = sub.add_parser("vt", help="enumerate a VT code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_vt)

    p = sub.add_parser("search", help="evolutionary search")
    ssub = p.add_subparsers(dest="search_command", required=True)
    r = ssub.add_parser("run", help="run the search loop")
    r.add_argument("--config", required=True, help="JSON file mirroring SearchConfig")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--transport", default="in-process", choices=["in-process", "amqp"])
    r.add_argument("--broker", help="AMQP broker URL")
    r.add_argument("--mock", help="JSON array of scripted completions")
    r.add_argument("--template", default="baseline", choices=sorted(gateway.TEMPLATES))
    r.add_argument("--llm-url")
    r.add_argument("--llm-model")
    r.add_argument("--llm-style", default="completion", choices=["completion", "chat"])
    r.add_argument("--snapshot", help="write the final database snapshot here")
    r.set_defaults(func=cmd_search_run)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main()
