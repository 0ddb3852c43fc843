"""Command-line interface.  Exit codes: 0 ok, 1 bad input, 2 internal error."""
from __future__ import annotations

import argparse
import logging
import math
import sys

from .bench import RunConfig, run_bench, run_simplify
from .errors import compute_all_errors
from .geometry import InputError, Measure
from .graph import build_graph_chan_chin, build_graph_from_errors, stats, write_csv, write_pgm
from .io import ingest, open_output, read_simplification, write_continuous, write_curve
from .progressive import ALGORITHMS, check_monotone, min_progressive_continuous
from .render import render_svg
from .synth import KINDS, synth_curve

log = logging.getLogger("progsimp")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _cutoff(text: str) -> float:
    v = float(text)
    if v < 0 or math.isnan(v):
        raise argparse.ArgumentTypeError("cutoff must be >= 0 (or inf)")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="progsimp", description="Progressive polyline simplification.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    measures = [m.value for m in Measure]

    e = sub.add_parser("errors", help="export the shortcut error matrix as i,j,epsilon")
    e.add_argument("input")
    e.add_argument("--measure", choices=measures, default="hausdorff")
    e.add_argument("--method", choices=["auto", "naive", "hull"], default="auto")
    e.add_argument("--threads", type=int)
    e.add_argument("-o", "--output", default="-")

    g = sub.add_parser("graph", help="export the shortcut interval set as i,x,y")
    g.add_argument("input")
    g.add_argument("--epsilon", type=float, required=True)
    g.add_argument("--measure", choices=measures, default="hausdorff")
    g.add_argument("--method", choices=["chan-chin", "filter"], default="chan-chin")
    g.add_argument("--pgm", help="also write a density raster")
    g.add_argument("--pgm-size", type=int, default=512)
    g.add_argument("-o", "--output", default="-")

    s = sub.add_parser("simplify", help="compute a progressive simplification")
    s.add_argument("input")
    s.add_argument("--algo", choices=list(ALGORITHMS), default="optimal")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--epsilons", type=_floats)
    grp.add_argument("--num-scales", type=int)
    s.add_argument("--sampling", choices=["decile", "all"], default="decile")
    s.add_argument("--measure", choices=measures, default="hausdorff")
    s.add_argument("--cutoff", type=_cutoff, default=4.0)
    s.add_argument("--threads", type=int)
    s.add_argument("--limit", type=int, help="use only the first N points")
    s.add_argument("--out-dir", default="out")

    c = sub.add_parser("continuous", help="minimal continuous progressive simplification")
    c.add_argument("input")
    c.add_argument("--measure", choices=measures, default="hausdorff")
    c.add_argument("-o", "--output", default="-")

    b = sub.add_parser("bench", help="compare algorithms over curve prefixes")
    b.add_argument("--input", help="CSV trajectory; default is a synthetic curve")
    b.add_argument("--kind", choices=KINDS, default="random-walk")
    b.add_argument("--sizes", type=_ints, default=[100, 200])
    b.add_argument("--algos", default=",".join(ALGORITHMS))
    b.add_argument("--num-scales", type=int, default=5)
    b.add_argument("--sampling", choices=["decile", "all"], default="decile")
    b.add_argument("--measure", choices=measures, default="hausdorff")
    b.add_argument("--cutoff", type=_cutoff, default=4.0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out-dir", default="bench_out")

    r = sub.add_parser("render", help="draw a simplification pyramid as SVG")
    r.add_argument("input")
    r.add_argument("simplification", nargs="?", help="CSV written by 'simplify'")
    r.add_argument("-o", "--output", required=True)

    y = sub.add_parser("synth", help="write a synthetic curve")
    y.add_argument("kind", choices=KINDS)
    y.add_argument("n", type=int)
    y.add_argument("--seed", type=int, default=0)
    y.add_argument("-o", "--output", default="-")
    return p


def _cmd_errors(a):
    curve, _ = ingest(a.input)
    em = compute_all_errors(curve, a.measure, a.method, a.threads)
    with open_output(a.output) as fh:
        em.write_csv(fh)


def _cmd_graph(a):
    curve, _ = ingest(a.input)
    measure = Measure.parse(a.measure)
    if a.method == "chan-chin":
        if measure is not Measure.HAUSDORFF:
            raise InputError("the chan-chin method needs the Hausdorff measure")
        g = build_graph_chan_chin(curve, a.epsilon)
    else:
        g = build_graph_from_errors(compute_all_errors(curve, measure), a.epsilon)
    with open_output(a.output) as fh:
        write_csv(g, fh)
    if a.pgm:
        with open(a.pgm, "wb") as fh:
            write_pgm(g, fh, a.pgm_size)
    st = stats(g)
    print(f"shortcuts={st['shortcut_count']} intervals={st['interval_count']} "
          f"density={st['density']:.6f}", file=sys.stderr)


def _cmd_simplify(a):
    cfg = RunConfig(input=a.input, measure=a.measure, algorithm=a.algo, epsilons=a.epsilons,
                    num_scales=a.num_scales, sampling=a.sampling, cutoff=a.cutoff,
                    threads=a.threads, out_dir=a.out_dir, n=a.limit)
    summary = run_simplify(cfg)
    print(f"{summary['algorithm']}: sizes={summary['sizes']} "
          f"cumulative={summary['cumulative_size']}", file=sys.stderr)


def _cmd_continuous(a):
    curve, _ = ingest(a.input)
    cs = min_progressive_continuous(curve, a.measure)
    with open_output(a.output) as fh:
        write_continuous(cs, fh)


def _cmd_bench(a):
    algos = [x.strip() for x in a.algos.split(",") if x.strip()]
    recs = run_bench(a.sizes, algos, a.num_scales, a.sampling, a.kind, a.seed, a.input,
                     a.measure, a.cutoff, a.out_dir)
    for r in recs:
        print(f"{r.algorithm:14s} n={r.n:6d} cumulative={r.cumulative_size:8d} "
              f"{r.wall_ms:10.1f} ms {r.status}", file=sys.stderr)


def _cmd_render(a):
    curve, _ = ingest(a.input)
    ps = None
    if a.simplification:
        with open(a.simplification, encoding="utf-8") as fh:
            ps = read_simplification(fh)
        check_monotone(ps, curve.n)
    render_svg(curve, ps, a.output)


def _cmd_synth(a):
    curve = synth_curve(a.kind, a.n, a.seed)
    with open_output(a.output) as fh:
        write_curve(curve, fh)


COMMANDS = {
    "errors": _cmd_errors,
    "graph": _cmd_graph,
    "simplify": _cmd_simplify,
    "continuous": _cmd_continuous,
    "bench": _cmd_bench,
    "render": _cmd_render,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (InputError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
