"""Run configurations, single simplification runs and the benchmark harness."""
from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numba

from .errors import ErrorMatrix, compute_all_errors
from .geometry import Curve, InputError, Measure
from .graph import stats
from .io import ingest, write_simplification
from .progressive import ALGORITHMS, ScaleSequence, _Graphs, run_algorithm, sample_scales
from .synth import synth_curve

log = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """One simplification job.  Give either ``epsilons`` or ``num_scales``."""

    input: str | None = None
    measure: str = "hausdorff"
    algorithm: str = "optimal"
    epsilons: list[float] | None = None
    num_scales: int | None = None
    sampling: str = "decile"
    cutoff: float = 4.0
    threads: int | None = None
    out_dir: str = "out"
    seed: int = 0
    kind: str = "random-walk"
    n: int | None = None

    def validate(self) -> None:
        if (self.epsilons is None) == (self.num_scales is None):
            raise InputError("give exactly one of an explicit scale list or a scale count")
        if self.algorithm not in ALGORITHMS:
            raise InputError(f"unknown algorithm {self.algorithm!r}")
        Measure.parse(self.measure)
        if self.sampling not in ("decile", "all"):
            raise InputError("sampling must be 'decile' or 'all'")


@dataclass
class BenchRecord:
    algorithm: str
    n: int
    m: int
    wall_ms: float
    cumulative_size: int
    sizes: list[int] = field(default_factory=list)
    shortcut_count: int = 0
    interval_count: int = 0
    status: str = "ok"


def load_curve(cfg: RunConfig) -> tuple[Curve, int]:
    if cfg.input is not None:
        return ingest(cfg.input, cfg.n)
    if cfg.n is None:
        raise InputError("a synthetic run needs n")
    return synth_curve(cfg.kind, cfg.n, cfg.seed), 0


def _set_threads(threads):
    if threads is not None:
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def resolve_scales(cfg: RunConfig, curve: Curve, em: ErrorMatrix | None) -> tuple[ScaleSequence, ErrorMatrix | None]:
    if cfg.epsilons is not None:
        return ScaleSequence(cfg.epsilons), em
    if em is None:
        em = compute_all_errors(curve, cfg.measure, threads=cfg.threads)
    return sample_scales(em, cfg.num_scales, cfg.sampling), em


def run_simplify(cfg: RunConfig) -> dict:
    """Execute one configured run; writes ``simplification.csv`` and ``summary.json``."""
    cfg.validate()
    _set_threads(cfg.threads)
    curve, dropped = load_curve(cfg)
    measure = Measure.parse(cfg.measure)
    em = None
    if measure is not Measure.HAUSDORFF:
        em = compute_all_errors(curve, measure)
    scales, em = resolve_scales(cfg, curve, em)
    t0 = time.perf_counter()
    ps = run_algorithm(cfg.algorithm, curve, scales, measure, em, cfg.cutoff)
    wall_ms = (time.perf_counter() - t0) * 1e3
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "simplification.csv", "w", encoding="utf-8") as fh:
        write_simplification(ps, fh)
    summary = {
        "algorithm": cfg.algorithm,
        "measure": measure.value,
        "n": curve.n,
        "dropped_duplicates": dropped,
        "m": scales.m,
        "scales": list(scales.eps),
        "sizes": ps.sizes,
        "cumulative_size": ps.cumulative_size,
        "wall_ms": round(wall_ms, 3),
    }
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    return summary


BENCH_FIELDS = ["algorithm", "n", "m", "cumulative_size", "sizes",
                "shortcut_count", "interval_count", "status"]


def run_bench(sizes, algorithms=None, num_scales: int = 5, sampling: str = "decile",
              kind: str = "random-walk", seed: int = 0, input: str | None = None,
              measure: str = "hausdorff", cutoff: float = 4.0,
              out_dir: str | None = None) -> list[BenchRecord]:
    """Run every algorithm on every prefix length in ``sizes``.

    ``bench.csv`` and ``sizes_by_scale.csv`` are deterministic; wall times
    go to ``timings.csv``.  A failing run is recorded and the harness moves on.
    """
    algorithms = list(algorithms or ALGORITHMS)
    for a in algorithms:
        if a not in ALGORITHMS:
            raise InputError(f"unknown algorithm {a!r}")
    measure = Measure.parse(measure)
    records = []
    for n in sizes:
        cfg = RunConfig(input=input, kind=kind, seed=seed, n=n, measure=measure.value)
        curve, _ = load_curve(cfg)
        em = compute_all_errors(curve, measure)
        scales = sample_scales(em, num_scales, sampling)
        g = _Graphs(curve, measure, em).get(scales.eps[-1])
        st = stats(g)
        for a in algorithms:
            t0 = time.perf_counter()
            try:
                ps = run_algorithm(a, curve, scales, measure, em, cutoff)
                rec = BenchRecord(a, curve.n, scales.m, 0.0, ps.cumulative_size, ps.sizes,
                                  st["shortcut_count"], st["interval_count"])
            except Exception as exc:  # recorded, not fatal
                log.error("%s at n=%d failed: %s", a, curve.n, exc)
                rec = BenchRecord(a, curve.n, scales.m, 0.0, 0, [],
                                  st["shortcut_count"], st["interval_count"],
                                  f"error: {type(exc).__name__}")
            rec.wall_ms = (time.perf_counter() - t0) * 1e3
            records.append((rec, scales))
    if out_dir is not None:
        _write_bench(records, Path(out_dir))
    return [r for r, _ in records]


def _write_bench(records, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "bench.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(BENCH_FIELDS)
        for r, _ in records:
            w.writerow([r.algorithm, r.n, r.m, r.cumulative_size, ";".join(map(str, r.sizes)),
                        r.shortcut_count, r.interval_count, r.status])
    with open(out / "sizes_by_scale.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["algorithm", "n", "scale_index", "epsilon", "size"])
        for r, scales in records:
            for k, (eps, size) in enumerate(zip(scales.eps, r.sizes), start=1):
                w.writerow([r.algorithm, r.n, k, repr(eps), size])
    with open(out / "timings.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["algorithm", "n", "wall_ms"])
        for r, _ in records:
            w.writerow([r.algorithm, r.n, f"{r.wall_ms:.3f}"])
