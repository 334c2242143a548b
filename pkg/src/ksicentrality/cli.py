"""Command-line interface: ``ksi compute|coefficient|generate|fit|sweep|plot``.

Exit codes: 0 success, 1 input/data error, 2 invalid flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import centrality, distribution, plot, sweep
from .generators import GeneratorSpec, generate
from .graph import GraphError, atomic_write_text, largest_connected_component, load_edge_list, write_edge_list

log = logging.getLogger("ksicentrality")


class InputError(Exception):
    pass


def _read_graph(path, lcc: bool):
    g = load_edge_list(path)
    if lcc:
        g = largest_connected_component(g)
        log.info("largest component: n=%d m=%d", g.n, g.m)
    return g


def _emit(text: str, output) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write_text(output, text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def sniff_kind(path) -> str:
    """Guess what a fit/plot input holds from its first meaningful line."""
    p = Path(path)
    if p.suffix == ".gz":
        return "graph"
    with open(p, encoding="utf-8") as fh:
        for line in fh:
            s = line.strip()
            if not s:
                continue
            if s.startswith(("#", "%")):
                return "graph"
            head = s.replace(" ", "")
            if head.startswith("vertex,label,"):
                return "ksi"
            if head == "bin_left,bin_right,count":
                return "histogram"
            if head.startswith(("p\\k,", "row\\m,")):
                return "heatmap"
            tokens = [t for t in s.replace(",", " ").split() if t]
            return "values" if len(tokens) == 1 else "graph"
    raise InputError(f"{path}: empty input")


def _read_values(path, kind: str) -> np.ndarray:
    text = Path(path).read_text(encoding="utf-8")
    if kind == "ksi":
        rows = list(csv.DictReader(io.StringIO(text)))
        vals = [float(r["ksi"]) for r in rows]
    else:
        vals = []
        for lineno, line in enumerate(text.splitlines(), 1):
            s = line.strip()
            if not s:
                continue
            try:
                vals.append(float(s))
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise InputError(f"{path}:{lineno}: not a number: {s!r}") from None
    if not vals:
        raise InputError(f"{path}: no values")
    return np.asarray(vals, dtype=np.float64)


def _load_distribution(args):
    """Histogram and optional raw values for fit/plot inputs."""
    kind = args.kind if args.kind != "auto" else sniff_kind(args.input)
    if kind == "histogram":
        return distribution.histogram_from_csv(Path(args.input).read_text(encoding="utf-8")), None
    if kind == "graph":
        vals = centrality.ksi_all(_read_graph(args.input, args.lcc)).ksi
    elif kind in ("ksi", "values"):
        vals = _read_values(args.input, kind)
    else:
        raise InputError(f"{args.input}: input kind {kind!r} not usable here")
    return distribution.histogram(vals, args.bins), vals


def cmd_compute(args) -> int:
    g = _read_graph(args.input, args.lcc)
    scores = centrality.ksi_all(g)
    if args.format == "csv":
        text = centrality.scores_to_csv(g, scores)
    else:
        text = _dump_json(
            [
                {
                    "vertex": i,
                    "label": g.labels[i],
                    "degree": int(scores.degrees[i]),
                    "boundary_edges": int(scores.boundary_edges[i]),
                    "ksi": float(f"{scores.ksi[i]:.10g}"),
                    "ksi_norm": float(f"{scores.ksi_norm[i]:.10g}"),
                }
                for i in range(g.n)
            ]
        )
    _emit(text, args.output)
    summ = centrality.summary(g, scores)
    summary_path = args.summary
    if summary_path is None and args.output not in (None, "-"):
        summary_path = f"{args.output}.summary.json"
    if summary_path:
        atomic_write_text(summary_path, _dump_json(summ))
    if args.histogram:
        atomic_write_text(args.histogram, distribution.histogram(scores.ksi, args.bins).to_csv())
    log.info("n=%d m=%d average normalized ksi=%.6g (1/n=%.3g)", g.n, g.m, summ["average_normalized_ksi"], 1 / g.n)
    return 0


def cmd_coefficient(args) -> int:
    g = _read_graph(args.input, args.lcc)
    scores = centrality.ksi_all(g)
    _emit(
        _dump_json(
            {"n": g.n, "m": g.m, "average_normalized_ksi": centrality.average_normalized_ksi(scores), "inverse_n": 1 / g.n}
        ),
        args.output,
    )
    return 0


def _spec_from_args(args) -> GeneratorSpec:
    model = args.model.upper()
    need = {"ER": ["p"], "BA": ["m"], "WS": ["k", "p"]}[model]
    missing = [f"--{a}" for a in need if getattr(args, a) is None]
    if missing:
        raise _FlagError(f"model {model} requires {', '.join(missing)}")
    try:
        return GeneratorSpec(model, args.n, args.seed, er_p=args.p if model == "ER" else None,
                             ba_m=args.m, ws_k=args.k, ws_p=args.p if model == "WS" else None)
    except ValueError as exc:
        raise _FlagError(str(exc)) from None


class _FlagError(Exception):
    pass


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    g = generate(spec)
    if args.output in (None, "-"):
        e = g.edges()
        sys.stdout.write(f"# undirected simple graph n={g.n} m={g.m}\n")
        sys.stdout.write("".join(f"{u} {v}\n" for u, v in e))
    else:
        write_edge_list(g, args.output)
    log.info("%s %s seed=%d: n=%d m=%d", spec.model, spec.params(), spec.seed, g.n, g.m)
    return 0


def cmd_fit(args) -> int:
    h, vals = _load_distribution(args)
    skew = distribution.sample_skewness(vals) if vals is not None else None
    report = distribution.fit_report(h, skew, args.skip_bins)
    _emit(report.to_json(), args.output)
    if args.histogram:
        atomic_write_text(args.histogram, h.to_csv())
    log.info("verdict: %s", report.verdict)
    return 0


def _float_list(s: str) -> list[float]:
    return [float(t) for t in s.split(",") if t.strip()]


def _int_list(s: str) -> list[int]:
    return [int(t) for t in s.split(",") if t.strip()]


def cmd_sweep(args) -> int:
    model = args.model.upper()
    if model == "BA":
        if not args.m_values:
            raise _FlagError("BA sweep requires --m-values")
        axes = {"m": _int_list(args.m_values)}
    else:
        if not args.k_values or not args.p_values:
            raise _FlagError("WS sweep requires --k-values and --p-values")
        axes = {"k": _int_list(args.k_values), "p": _float_list(args.p_values)}
    try:
        spec = sweep.SweepSpec(model, axes, n=args.n, replicates=args.replicates, base_seed=args.seed,
                               bins=args.bins, skip_bins=args.skip_bins)
    except ValueError as exc:
        raise _FlagError(str(exc)) from None
    result = sweep.run_sweep(spec, workers=args.workers)
    res_path, heat_path = sweep.write_outputs(result, args.output_dir)
    for c in result.cells:
        for err in c.errors:
            log.warning("%s: %s", c.params, err)
    log.info("wrote %s and %s", res_path, heat_path)
    return 0


def cmd_plot(args) -> int:
    kind = args.kind if args.kind != "auto" else sniff_kind(args.input)
    if kind == "heatmap":
        cols, rows, data = sweep.parse_heatmap(Path(args.input).read_text(encoding="utf-8"))
        xlabel = "m" if Path(args.input).read_text(encoding="utf-8").startswith("row\\m") else "k"
        svg = plot.heatmap_svg(cols, rows, data, title=args.title or "mean log-fit RMSE", xlabel=xlabel,
                               ylabel="p" if xlabel == "k" else "")
    else:
        args.kind = kind
        h, vals = _load_distribution(args)
        fit = None
        if args.fit:
            try:
                slope, intercept, _ = distribution.fit_exponential(h, args.skip_bins)
                fit = (slope, intercept)
            except distribution.DegenerateFitError as exc:
                log.warning("no fit overlay: %s", exc)
        spec = plot.PlotSpec(y_scale=args.y_scale, title=args.title or "", fit=fit)
        svg = plot.histogram_svg(h, spec)
    plot.write_svg(svg, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ksi", description="Ksi-centrality analytics for undirected graphs.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p, lcc=True):
        p.add_argument("input", help="edge-list file (whitespace or comma separated, optional .gz)")
        if lcc:
            p.add_argument("--lcc", action="store_true", help="restrict to the largest connected component")

    def add_bins(p):
        p.add_argument("--bins", type=int, default=distribution.DEFAULT_BINS, help="histogram bins (default 50)")

    p = sub.add_parser("compute", help="per-vertex ksi scores and a summary")
    add_input(p)
    add_bins(p)
    p.add_argument("--output", "-o", help="per-vertex output file (default stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--summary", help="summary JSON path (default <output>.summary.json)")
    p.add_argument("--histogram", help="also write the ksi histogram CSV here")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("coefficient", help="average normalized ksi coefficient")
    add_input(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_coefficient)

    p = sub.add_parser("generate", help="seeded ER/BA/WS graph as an edge list")
    p.add_argument("--model", required=True, type=str.upper, choices=["ER", "BA", "WS"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, help="ER edge probability or WS rewiring probability")
    p.add_argument("--m", type=int, help="BA edges per new vertex")
    p.add_argument("--k", type=int, help="WS ring-lattice degree (odd values rounded down)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_generate)

    kinds = ["auto", "graph", "ksi", "histogram", "values"]
    p = sub.add_parser("fit", help="exponential and Gaussian log-space fits with a verdict")
    add_input(p)
    add_bins(p)
    p.add_argument("--kind", choices=kinds, default="auto", help="input type (default: detect)")
    p.add_argument("--skip-bins", type=int, default=0, help="ignore this many leading bins in the fits")
    p.add_argument("--output", "-o", help="FitReport JSON path (default stdout)")
    p.add_argument("--histogram", help="also write the histogram CSV here")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sweep", help="BA m-sweep or WS (k, p) grid")
    p.add_argument("--model", required=True, type=str.upper, choices=["BA", "WS"])
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--m-values", help="comma-separated m values (BA)")
    p.add_argument("--k-values", help="comma-separated k values (WS)")
    p.add_argument("--p-values", help="comma-separated p values (WS)")
    p.add_argument("--replicates", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    add_bins(p)
    p.add_argument("--skip-bins", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="parallel processes over cells")
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="SVG histogram (linear or log y) or sweep heatmap")
    add_input(p)
    add_bins(p)
    p.add_argument("--kind", choices=kinds + ["heatmap"], default="auto")
    p.add_argument("--y-scale", choices=["linear", "log"], default="linear")
    p.add_argument("--fit", action="store_true", help="overlay the fitted exponential")
    p.add_argument("--skip-bins", type=int, default=0)
    p.add_argument("--title")
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    for name in ("bins", "skip_bins", "replicates", "n", "workers"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name == "skip_bins" else 1):
            ap.error(f"--{name.replace('_', '-')} out of range: {v}")
    try:
        return args.func(args)
    except _FlagError as exc:
        ap.error(str(exc))
    except (GraphError, InputError, ValueError, OSError, KeyError) as exc:
        print(f"ksi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
