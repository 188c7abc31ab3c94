"""Command-line entry point: ``treealpha <command> ...``.

Exit codes: 0 success, 1 domain or input error, 2 resource limit,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import logging
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import balance, decompose, detect, generators, graph, separate
from .errors import InputError, InvariantViolation, TreeAlphaError
from .io import emit_graph, parse_graph

log = logging.getLogger("treealpha")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are domain errors, not resource ones
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _read(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(args):
    return parse_graph(_read(args.input))


def _weights(g, w):
    if w is None:
        return graph.uniform_weights(g)
    return graph.normalize(g, w)


def _fmt(xs) -> str:
    return " ".join(str(v) for v in sorted(xs))


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, sort_keys=True) + "\n" if args.json else text
    _write(getattr(args, "output", None), out)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_detect(args) -> int:
    g, _ = _load(args)
    res = detect.detect_3pc(g, limit=args.limit, exact=args.check)
    cfg = res.witness
    payload = {"witness": cfg.to_dict() if cfg else None, "exhaustive": res.exhaustive}
    if cfg is None:
        text = "3pc-free\n" if res.exhaustive else "3pc-free (best effort)\n"
    else:
        lines = [cfg.kind]
        lines += ["path " + " ".join(map(str, p)) for p in cfg.paths]
        text = "\n".join(lines) + "\n"
    _emit(args, payload, text)
    return 0


def cmd_separate(args) -> int:
    g, _ = _load(args)
    res = separate.separate_vertex_pair(g, args.a, args.b)
    if not graph.separates(g, res.cut, [args.a], [args.b]):
        raise InvariantViolation("returned cut does not separate")
    text = f"cut {_fmt(res.cut)}\nalpha {res.alpha}\nbound {res.bound}\ndepth {res.depth}\n"
    _emit(args, res.to_dict(), text)
    return 0 if res.alpha <= res.bound else 3


def cmd_balance(args) -> int:
    g, w = _load(args)
    w = _weights(g, w)
    bad_cap = 0 if args.eager else None
    d, res = balance.search_d(g, w, d_values=range(1, args.d + 1), bad_cap=bad_cap)
    ok = balance.is_balanced_separator(g, w, res.cut, args.c)
    payload = res.to_dict() | {"d": d, "balanced": ok}
    text = (f"cut {_fmt(res.cut)}\nalpha {res.alpha}\nbound {res.bound:.1f}\n"
            f"steps {res.steps}\nd {d}\nbalanced {str(ok).lower()}\n")
    _emit(args, payload, text)
    return 0 if ok else 3


def cmd_decompose(args) -> int:
    g, _ = _load(args)
    td, stats = decompose.tree_alpha_pipeline(g, d_max=args.d, bad_cap=0 if args.eager else None,
                                              limit=args.limit)
    _write(args.output, td.to_json() + "\n")
    print(json.dumps(stats.to_dict(), sort_keys=True) if args.json else
          " ".join(f"{k}={v}" for k, v in stats.to_dict().items()))
    return 0


def cmd_solve(args) -> int:
    g, w = _load(args)
    w = w if w is not None else {v: Fraction(1) for v in g.vertices}
    if args.td:
        td = decompose.TreeDecomposition.from_json(_read(args.td))
    else:
        td, _ = decompose.tree_alpha_pipeline(g, d_max=args.d, bad_cap=0 if args.eager else None,
                                              limit=args.limit)
    chosen, weight = decompose.mwis_td(g, w, td)
    payload = {"set": sorted(chosen), "weight": str(weight)}
    text = f"set {_fmt(chosen)}\nweight {weight}\n"
    code = 0
    if args.check:
        ref, ref_w = graph.mwis_bruteforce(g, w)
        same = ref_w == weight
        payload["check"] = "match" if same else "mismatch"
        text += payload["check"] + "\n"
        code = 0 if same else 3
    _emit(args, payload, text)
    return code


def cmd_verify(args) -> int:
    g, _ = _load(args)
    td = decompose.TreeDecomposition.from_json(_read(args.td))
    report = decompose.validate_tree_decomposition(g, td)
    payload = {"valid": report.valid, "problems": report.problems}
    if report.valid:
        a = decompose.td_independence_number(g, td)
        payload["independence_number"] = a
        text = f"valid\nindependence_number {a}\n"
    else:
        text = "invalid\n" + "".join(p + "\n" for p in report.problems)
    _emit(args, payload, text)
    return 0 if report.valid else 1


def cmd_gen(args) -> int:
    spec = generators.GeneratorSpec.parse(args.spec)
    if args.seed is not None and spec.family in ("chordal-random", "tpcfree-random", "tpcfree-glued", "tpcfree-wheel"):
        spec = generators.GeneratorSpec(spec.family, {**spec.params, "seed": args.seed})
    g = generators.generate(spec)
    _write(args.output, emit_graph(g))
    return 0


def bench_rows(family: str, sizes: List[int], count: int, seed: int, d_max: int, eager: bool) -> List[dict]:
    rows = []
    for n in sizes:
        for k in range(count):
            s = seed + 1000 * n + k
            if family == "chordal-random":
                g = generators.chordal_random(n, 0.3, s)
            elif family == "tpcfree-wheel":
                g = generators.tpcfree_wheel(n, s)
            else:
                g = generators.tpcfree_glued(n, 0.4, s)
            blog = decompose.BuildLog()
            t0 = time.perf_counter()
            td, stats = decompose.tree_alpha_pipeline(g, d_max=d_max, bad_cap=0 if eager else None, log=blog)
            rows.append({
                "n": g.n,
                "seed": s,
                "d": stats.d,
                "bound": round(stats.bound, 1),
                "realized_alpha": stats.independence_number,
                "cut_alpha": stats.realized_cut_alpha,
                "bags": stats.bag_count,
                "runtime_s": round(time.perf_counter() - t0, 4),
            })
    return rows


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    rows = bench_rows(args.family, sizes, args.count, args.seed or 0, args.d, args.eager)
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["n"], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(args.output, buf.getvalue())
    if args.plot:
        from .report import plot_bench

        plot_bench(rows, args.plot)
    return 0


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treealpha", description="3PC detection, balanced separators and tree decompositions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, output=True):
        sp.add_argument("-i", "--input", help="graph file (default stdin)")
        if output:
            sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--limit", type=int, default=detect.DEFAULT_LIMIT,
                        help="largest clique-cutset piece searched exactly (default %(default)s)")

    def knobs(sp):
        sp.add_argument("--d", type=int, default=balance.DEFAULT_D, help="largest d tried (default %(default)s)")
        sp.add_argument("--eager", action="store_true",
                        help="apply the stable filter whenever Bad is nonempty instead of above 96 d^2")

    sp = sub.add_parser("detect", help="find a theta, pyramid or generalized prism")
    common(sp)
    sp.add_argument("--check", action="store_true", help="fail unless the search is exhaustive")
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("separate", help="separate two nonadjacent vertices")
    common(sp)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("balance", help="balanced separator of small stability number")
    common(sp)
    knobs(sp)
    sp.add_argument("--c", type=_fraction, default=Fraction(1, 2), help="balance parameter p/q")
    sp.set_defaults(func=cmd_balance)

    sp = sub.add_parser("decompose", help="tree decomposition with small bag stability")
    common(sp)
    knobs(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("solve", help="maximum weight independent set")
    sp.add_argument("problem", choices=["mwis"])
    common(sp)
    knobs(sp)
    sp.add_argument("--td", help="decomposition JSON (default: build one)")
    sp.add_argument("--check", action="store_true", help="compare with brute force")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="validate a decomposition against a graph")
    common(sp, output=False)
    sp.add_argument("--td", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="emit a generated graph")
    sp.add_argument("spec", help="e.g. 'theta(2,2,2)' or 'tpcfree-glued(n=60,p=0.4)'")
    sp.add_argument("-o", "--output")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="run a corpus through the pipeline and emit CSV")
    sp.add_argument("--family", default="tpcfree-glued", choices=["tpcfree-glued", "tpcfree-wheel", "chordal-random"])
    sp.add_argument("--sizes", default="20,40,80")
    sp.add_argument("--count", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.add_argument("--plot", help="also write a PNG figure here")
    knobs(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except TreeAlphaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
