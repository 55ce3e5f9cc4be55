"""Command line interface: ``findim <command> FILE ...``."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .errors import (
    FindimError,
    InfiniteDimensional,
    InvalidBasedAlgebra,
    InvalidExponentMatrix,
    InvalidPresentation,
    NotABasisPath,
    ParseError,
)
from .report import (
    analyze,
    dumps,
    gldim_report,
    import_tiled_report,
    load_input,
    pdim_report,
    repindex_report,
    syzygy_trace,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFINITE = 2
EXIT_UNDETERMINED = 3
EXIT_MISMATCH = 4

INPUT_ERRORS = (ParseError, InvalidPresentation, InvalidExponentMatrix, InvalidBasedAlgebra,
                NotABasisPath, OSError, UnicodeDecodeError)


def _seed_default():
    raw = os.environ.get("FINDIM_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"findim: FINDIM_SEED must be an integer, got {raw!r}") from None


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--cutoff", type=_nonneg, default=12, help="oracle syzygy cutoff (default 12)")
    common.add_argument("--dim-bound", type=_nonneg, default=60,
                        help="oracle decomposition dimension bound (default 60)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized oracle steps "
                        "(default: $FINDIM_SEED or 0)")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when an answer is cut off by --cutoff or --dim-bound")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = argparse.ArgumentParser(prog="findim", description=__doc__)
    p.add_argument("--version", action="version", version=f"findim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full report for a .qalg or .tord file")
    a.add_argument("file")
    a.add_argument("--side", choices=("left", "right", "both"), default="both")

    s = sub.add_parser("syzygy", parents=[common], help="layer matrices of the first k syzygies")
    s.add_argument("file")
    s.add_argument("module")
    s.add_argument("-k", type=_nonneg, default=2, help="number of syzygy steps (default 2)")

    for name, text in (("pdim", "projective dimension of a module"),
                       ("repindex", "repetition index of a module")):
        c = sub.add_parser(name, parents=[common], help=text)
        c.add_argument("file")
        c.add_argument("module")

    g = sub.add_parser("gldim", parents=[common], help="global dimension")
    g.add_argument("file")

    t = sub.add_parser("import-tiled", parents=[common], help="quiver and relations of a tiled reduction")
    t.add_argument("file")

    o = sub.add_parser("oracle-check", parents=[common],
                       help="engine against oracle on a file and on seeded random algebras")
    o.add_argument("file", nargs="?")
    o.add_argument("--samples", type=_nonneg, default=None,
                   help="random algebras to check (default 100 without FILE, 0 with FILE)")
    return p


# --- text rendering -------------------------------------------------------------


def _v(x):
    if x is None:
        return "unknown"
    if x["finite"] is True:
        return str(x["value"])
    if x["finite"] is False:
        return "infinity"
    if "exceeds_cutoff" in x:
        return f">{x['exceeds_cutoff']} (cutoff)"
    return f"undetermined (cutoff {x['undetermined_at_cutoff']})"


def _algebra_line(r):
    a = r["algebra"]
    kind = "monomial" if a["monomial"] else "non-monomial based algebra"
    name = f"algebra {a['name']}: " if a["name"] else "algebra: "
    return (f"{name}n={a['n']}, dim={a['dimension']}, dim J={a['dim_radical']}, "
            f"Loewy length {a['loewy_length']}, {kind}")


def _pdims_line(label, items):
    return label + ", ".join(f"S({x['vertex']}) {_v(x['pdim'])}" for x in items)


def _render_analyze(r):
    out = [_algebra_line(r), _pdims_line("simple pdims (left): ", r["simple_pdims"])]
    if "right_simple_pdims" in r:
        out.append(_pdims_line("simple pdims (right): ", r["right_simple_pdims"]))
    iv = r["findim_interval"]
    if iv is not None:
        line = f"s = {r['s']}; fin dim and Fin dim lie in [{iv['lower']}, {iv['upper']}]"
        if iv["empty_sup"]:
            line += " (sup over the empty set taken as -1)"
        out.append(line)
        if iv["witness"]:
            out.append(f"witness {iv['witness']}: oracle pdim {_v(iv['witness_oracle_pdim'])}")
    rho = r["rho"]
    if "left_simples" in rho:
        out.append("repetition index of simples: " + ", ".join(
            f"S({x['vertex']}) {_v(x['value'])}" for x in rho["left_simples"]))
    parts = []
    if "left" in rho:
        parts.append(f"left Lambda/J {_v(rho['left'])}")
    if "right" in rho:
        parts.append(f"right Lambda/J {_v(rho['right'])}")
    out.append("repetition index: " + ", ".join(parts) + f" (dim J = {rho['dim_radical']})")
    t = r["tiled"]
    if t is not None:
        fl, fo = t["findim_lambda"], t["findim_order"]

        def rng(d):
            if d["exact"]:
                return f"= {d['lower']}"
            return f"in [{d['lower']}, {d['upper'] if d['upper'] is not None else 'unknown'}]"

        out.append(f"tiled order: fin dim Lambda {rng(fl)} (lower witness: {fl['lower_witness']})")
        out.append(f"tiled order: fin dim O {rng(fo)}")
        gl = {True: "yes", False: "no", None: "undetermined"}[t["gl_dim_infinite"]]
        out.append(f"tiled order: gl dim Lambda infinite: {gl}")
        if t["identifications"]:
            out.append(f"tiled order: {len(t['identifications'])} binomial identifications, oracle used")
    out.append("bounds:")
    for b in r["bounds"]:
        if not b["applies"]:
            val = f"not applicable ({b['hypothesis']})"
        elif b["value"] is None:
            val = f"undetermined ({b['note']})" if b["note"] else "hypothesis fails"
        else:
            val = str(b["value"]) + (f" ({b['note']})" if b["note"] else "")
        out.append(f"  {b['name']:<16} {val}")
    for m in r["modules"]:
        out.append(f"module {m['name']} = {m['expression']}: pdim {_v(m['pdim'])}")
    return out


def _render_syzygy(r):
    out = [_algebra_line(r), f"syzygies of {r['module']} ({r['method']}):"]
    for s in r["steps"]:
        rows = "; ".join("[" + " ".join(map(str, row)) + "]" for row in s["layers"]) or "0"
        out.append(f"  Omega^{s['k']}: dim {s['dimension']}, layers {rows}")
    return out


def _render_simple(key, label):
    def render(r):
        return [_algebra_line(r), f"{label} of {r['module']} ({r['method']}): {_v(r[key])}"]
    return render


def _render_gldim(r):
    return [_algebra_line(r), _pdims_line("simple pdims: ", r["simple_pdims"]), f"gl dim: {_v(r['gl_dim'])}"]


def _render_import(r):
    out = [_algebra_line(r), "arrows: " + ", ".join(f"{a['name']}: {a['source']} -> {a['target']}"
                                                     for a in r["arrows"])]
    if r["relations"] is not None:
        out.append("monomial relations: " + (", ".join(r["relations"]) or "none"))
    else:
        out.append("not monomial; paths reaching the same basis element:")
        out.extend(f"  {p} = {q} = {z}" for p, q, z in r["identifications"])
    return out


def _render_check(r):
    out = [f"checked {r['checked']} algebras, {len(r['mismatches'])} mismatches"]
    out.extend("  " + m for m in r["mismatches"])
    return out


# --- dispatch -------------------------------------------------------------------------


def _oracle_check(args, seed):
    from .crosscheck import crosscheck_algebra, crosscheck_corpus

    report = {"tool": "findim", "version": __version__, "command": "oracle-check",
              "seed": seed, "cutoff": args.cutoff, "dim_bound": args.dim_bound, "undetermined": []}
    mismatches, checked = [], 0
    samples = args.samples
    if args.file is not None:
        ctx = load_input(args.file)
        if not ctx.monomial:
            raise InvalidPresentation("oracle-check compares against the engine, which needs a monomial algebra")
        report["input"] = {"kind": ctx.kind, "digest": ctx.digest}
        mismatches += crosscheck_algebra(ctx.algebra, args.cutoff, seed, args.dim_bound, label=args.file)
        checked += 1
        samples = samples or 0
    elif samples is None:
        samples = 100
    algs, bad = crosscheck_corpus(samples, seed, args.cutoff, args.dim_bound)
    checked += len(algs)
    mismatches += bad
    report["samples"] = samples
    report["checked"] = checked
    report["mismatches"] = [str(m) for m in mismatches]
    return report


def run(argv=None):
    args = build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else _seed_default()
    opts = dict(seed=seed, cutoff=args.cutoff, dim_bound=args.dim_bound)
    start = time.perf_counter()
    try:
        if args.command == "oracle-check":
            report, render = _oracle_check(args, seed), _render_check
        else:
            ctx = load_input(args.file)
            if args.command == "analyze":
                report, render = analyze(ctx, side=args.side, **opts), _render_analyze
            elif args.command == "syzygy":
                report, render = syzygy_trace(ctx, args.module, args.k, **opts), _render_syzygy
            elif args.command == "pdim":
                report, render = pdim_report(ctx, args.module, **opts), _render_simple("pdim", "pdim")
            elif args.command == "repindex":
                report, render = repindex_report(ctx, args.module, **opts), _render_simple("rho_value", "repetition index")
            elif args.command == "gldim":
                report, render = gldim_report(ctx, **opts), _render_gldim
            else:
                report, render = import_tiled_report(ctx, **opts), _render_import
    except InfiniteDimensional as exc:
        print(f"findim: infinite dimensional algebra: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except INPUT_ERRORS as exc:
        where = getattr(args, "file", None)
        print(f"findim: {where + ': ' if where else ''}{exc}", file=sys.stderr)
        return EXIT_INPUT
    except FindimError as exc:
        print(f"findim: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)

    if args.json:
        print(dumps(report))
    else:
        lines = render(report)
        if report.get("undetermined"):
            lines.append("undetermined:")
            lines.extend("  " + u for u in report["undetermined"])
        if args.timing:
            lines.append(f"time: {report['timing_seconds']:.3f} s")
        print("\n".join(lines))
    if args.command == "oracle-check" and report["mismatches"]:
        return EXIT_MISMATCH
    if args.strict and report.get("undetermined"):
        return EXIT_UNDETERMINED
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
