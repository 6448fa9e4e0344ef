"""Command-line front end: ``commring <command> [options]``.

Exit codes: 0 success, 1 verification found a failing check, 2 usage
error, 3 file error (missing or unreadable input, unwritable output),
4 validation error (bad ring table, malformed DIMACS, unsupported order),
5 enumeration budget exhausted under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from commring import domination as dom
from commring import factory, graph, harness, ring
from commring.errors import BudgetExceeded, CommringError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FILE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read_graph(path: str) -> graph.SimpleGraph:
    if path == "-":
        return graph.from_dimacs(sys.stdin.read())
    return graph.from_dimacs(Path(path).read_text(encoding="utf-8"))


# ------------------------------------------------------------- commands

def cmd_ring_make(a) -> int:
    t = a.type
    if t in ("E", "F"):
        if a.p is None:
            raise _Usage("--p is required for --type E/F")
        R = ring.presentation_E(a.p) if t == "E" else ring.presentation_F(a.p)
    elif t in ("Ek", "Fk"):
        if a.p is None or a.k is None:
            raise _Usage("--p and --k are required for --type Ek/Fk")
        R = ring.functional_ring(a.p, a.k, left=(t == "Ek"))
    elif t in ("zero", "cyclic"):
        if a.n is None:
            raise _Usage("--n is required for --type zero/cyclic")
        R = ring.zero_ring(a.n) if t == "zero" else ring.cyclic_ring(a.n)
    else:  # product
        if len(a.factors) < 1:
            raise _Usage("--factors needs at least one ring file")
        R = ring.direct_product([ring.load_ring(f) for f in a.factors])
    _emit(ring.ring_to_text(R), a.output)
    return EXIT_OK


def cmd_ring_enum(a) -> int:
    group = tuple(int(x) for x in a.group.split(",")) if a.group else None
    kwargs = {"budget": a.budget} if a.budget else {}
    spec = factory.EnumerationSpec(a.order, a.noncommutative, a.center_zero, group, **kwargs)
    result = factory.enumerate_rings(spec, jobs=a.jobs, strict=a.strict)
    factory.write_corpus(result, a.output)
    flag = "exhaustive" if result.exhaustive else "non-exhaustive"
    print(f"order {a.order}\t{len(result.rings)} rings\t{flag}\t{result.nodes} nodes")
    return EXIT_OK


def cmd_graph_build(a) -> int:
    R = ring.load_ring(a.ring)
    G = graph.commuting_graph(R)
    if a.complement:
        G = graph.complement(G)
    name = "Gbar" if a.complement else "G"
    if a.format == "dimacs":
        labels = " ".join(map(str, G.labels))
        text = graph.to_dimacs(G, comment=f"{name} of {R.name or a.ring}\nelements {labels}")
    else:
        text = graph.to_dot(G, name)
    _emit(text, a.output)
    return EXIT_OK


def cmd_solve(a) -> int:
    G = _read_graph(a.input)
    if a.what == "gamma":
        cert = dom.gamma_bruteforce(G) if a.method == "brute" else dom.gamma_exact(G)
        ok = dom.verify_dominating(G, cert.witness)
    else:
        cert = (dom.gamma_signed_bruteforce(G) if a.method == "brute"
                else dom.gamma_signed_exact(G))
        ok = dom.verify_signed(G, cert.minus_set)
    if not ok:  # defensive; the verifiers are independent of the solvers
        print("certificate failed verification", file=sys.stderr)
        return EXIT_FAIL
    _emit(cert.to_text(), a.output)
    return EXIT_OK


def cmd_verify(a) -> int:
    corpus = harness.build_corpus(a.max_order, a.corpus, jobs=a.jobs, budget=a.budget,
                                  families=not a.no_families)
    records = harness.run_suite(corpus, a.suite, jobs=a.jobs, seed=a.seed,
                                max_product=a.max_product, oracle_count=a.oracle_count)
    if a.report:
        harness.write_report(records, a.report, timing=not a.no_timing)
    else:
        for r in records:
            print(r.to_json(not a.no_timing))
    if a.figures:
        from commring.plotting import render_figures

        for p in render_figures(records, a.figures):
            print(f"figure\t{p}", file=sys.stderr)
    summary = harness.summarize(records)
    if a.report:
        print("check\tpass\tfail\tvacuous")
        for cid, s in summary.items():
            print(f"{cid}\t{s['pass']}\t{s['fail']}\t{s['vacuous']}")
    failed = sum(s["fail"] for s in summary.values())
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export(a) -> int:
    if a.report:
        records = harness.read_report(a.report)
        lines = ["check\tsubject\tstatus\tmillis\tevidence"]
        for r in records:
            lines.append(f"{r.check}\t{r.subject}\t{r.status}\t{r.millis}\t"
                         f"{json.dumps(r.evidence, sort_keys=True)}")
        _emit("\n".join(lines) + "\n", a.output)
        return EXIT_OK
    src = Path(a.corpus)
    paths = sorted(src.glob("*.ring"), key=lambda p: harness._natural_key(p.stem))
    if not paths:
        raise FileNotFoundError(f"no .ring files in {src}")
    out = Path(a.output or ".")
    out.mkdir(parents=True, exist_ok=True)
    ext = "dimacs" if a.format == "dimacs" else "dot"
    for p in paths:
        R = ring.load_ring(p)
        G = graph.commuting_graph(R)
        for name, H in (("G", G), ("Gbar", graph.complement(G))):
            text = graph.to_dimacs(H) if ext == "dimacs" else graph.to_dot(H, name)
            (out / f"{p.stem}.{name}.{ext}").write_text(text, encoding="utf-8")
    print(f"{len(paths)} rings\t{2 * len(paths)} graphs\t{out}")
    return EXIT_OK


class _Usage(Exception):
    pass


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="commring", description="Finite rings, commuting graphs and domination.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rp = sub.add_parser("ring", help="construct or enumerate rings")
    rsub = rp.add_subparsers(dest="ring_command", required=True, parser_class=_Parser)
    mk = rsub.add_parser("make", help="write a constructed ring")
    mk.add_argument("--type", required=True, choices=["E", "F", "Ek", "Fk", "zero", "cyclic", "product"])
    mk.add_argument("--p", type=int)
    mk.add_argument("--k", type=int)
    mk.add_argument("--n", type=_positive)
    mk.add_argument("--factors", nargs="+", default=[], metavar="RING")
    mk.add_argument("-o", "--output")
    mk.set_defaults(func=cmd_ring_make)

    en = rsub.add_parser("enum", help="enumerate rings of one order into a corpus directory")
    en.add_argument("--order", type=int, required=True)
    en.add_argument("--noncommutative", action="store_true")
    en.add_argument("--center-zero", action="store_true")
    en.add_argument("--group", help="invariant factors, e.g. 2,2,2")
    en.add_argument("--budget", type=_positive, help=f"search nodes (default ${factory.BUDGET_ENV} or 1e9)")
    en.add_argument("--strict", action="store_true", help="fail when the budget runs out")
    en.add_argument("--jobs", type=_positive, default=1)
    en.add_argument("-o", "--output", required=True)
    en.set_defaults(func=cmd_ring_enum)

    gp = sub.add_parser("graph", help="commuting graphs")
    gsub = gp.add_subparsers(dest="graph_command", required=True, parser_class=_Parser)
    gb = gsub.add_parser("build", help="Gamma(R) or its complement")
    gb.add_argument("--ring", required=True)
    gb.add_argument("--complement", action="store_true")
    gb.add_argument("--format", choices=["dimacs", "dot"], default="dimacs")
    gb.add_argument("-o", "--output")
    gb.set_defaults(func=cmd_graph_build)

    sp = sub.add_parser("solve", help="exact domination numbers of a DIMACS graph")
    ssub = sp.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for what in ("gamma", "gamma-s"):
        s = ssub.add_parser(what)
        s.add_argument("--in", dest="input", required=True, help="DIMACS file or -")
        s.add_argument("--method", choices=["bnb", "brute"], default="bnb")
        s.add_argument("-o", "--output")
        s.set_defaults(func=cmd_solve)

    vp = sub.add_parser("verify", help="run the theorem checks")
    vp.add_argument("--suite", default="all", help="all or a comma list of " + ", ".join(harness.SUITES))
    vp.add_argument("--max-order", type=int, default=9)
    vp.add_argument("--corpus", help="directory written by 'ring enum'")
    vp.add_argument("--report", help="JSON-lines output (default stdout)")
    vp.add_argument("--figures", help="directory for PNG figures")
    vp.add_argument("--jobs", type=_positive, default=1)
    vp.add_argument("--seed", type=int, default=0, help="random-graph oracle seed")
    vp.add_argument("--oracle-count", type=_positive, default=200)
    vp.add_argument("--max-product", type=_positive, default=36)
    vp.add_argument("--budget", type=_positive)
    vp.add_argument("--no-timing", action="store_true", help="write millis 0 for byte-stable reports")
    vp.add_argument("--no-families", action="store_true", help="skip the constructed ring families")
    vp.set_defaults(func=cmd_verify)

    xp = sub.add_parser("export", help="export a corpus as graph files or a report as TSV")
    src = xp.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus")
    src.add_argument("--report")
    xp.add_argument("--format", choices=["dimacs", "dot", "tsv"], default="dimacs")
    xp.add_argument("-o", "--output")
    xp.set_defaults(func=cmd_export)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify" and not 2 <= args.max_order <= factory.MAX_ORDER:
        print(f"commring: error: --max-order must be in 2..{factory.MAX_ORDER}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"commring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"commring: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"commring: file error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except (CommringError, ValueError) as exc:
        print(f"commring: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
