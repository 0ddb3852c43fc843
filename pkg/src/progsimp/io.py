"""Reading curves and reading/writing simplification tables."""
from __future__ import annotations

import csv
import logging
import math
from pathlib import Path

import numpy as np

from .geometry import Curve, InputError, collapse_duplicates
from .progressive import ContinuousSimplification, ProgressiveSimplification, ScaleSequence

log = logging.getLogger(__name__)


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_points(lines, limit: int | None = None) -> np.ndarray:
    """Parse ``x,y`` lines; the first line may be a header of non-numeric fields."""
    pts = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if lineno == 1 and len(fields) == 2 and not any(_is_number(f) for f in fields):
            continue
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected two comma-separated values")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise InputError(f"line {lineno}: cannot parse {line!r} as 'x,y'") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InputError(f"line {lineno}: coordinates must be finite")
        pts.append((x, y))
        if limit is not None and len(pts) >= limit:
            break
    return np.array(pts, dtype=np.float64).reshape(-1, 2)


def ingest(path, limit: int | None = None) -> tuple[Curve, int]:
    """Read a CSV curve; returns the curve and the number of collapsed duplicates.

    ``limit`` keeps the first ``limit`` points of the file.
    """
    with open(path, encoding="utf-8") as fh:
        xy = parse_points(fh, limit)
    xy, dropped = collapse_duplicates(xy)
    if dropped:
        log.warning("%s: collapsed %d consecutive duplicate point(s)", path, dropped)
    if len(xy) < 2:
        raise InputError(f"{path}: need at least two distinct points")
    return Curve(xy), dropped


def write_curve(curve: Curve, fh) -> None:
    fh.write("x,y\n")
    for x, y in curve.xy:
        fh.write(f"{float(x)!r},{float(y)!r}\n")


def write_simplification(ps: ProgressiveSimplification, fh) -> None:
    """Lines ``scale_index,epsilon,vertex_index``, both indices 1-based."""
    for k, (eps, level) in enumerate(zip(ps.scales.eps, ps.levels), start=1):
        for v in level:
            fh.write(f"{k},{eps!r},{v + 1}\n")


def read_simplification(fh) -> ProgressiveSimplification:
    by_scale: dict[int, tuple[float, list[int]]] = {}
    for lineno, row in enumerate(csv.reader(fh), start=1):
        if not row or row[0].startswith("#"):
            continue
        try:
            k, eps, v = int(row[0]), float(row[1]), int(row[2])
        except (ValueError, IndexError):
            raise InputError(f"line {lineno}: expected 'scale_index,epsilon,vertex_index'") from None
        e, verts = by_scale.setdefault(k, (eps, []))
        if e != eps:
            raise InputError(f"line {lineno}: scale {k} has two epsilon values")
        verts.append(v - 1)
    keys = sorted(by_scale)
    if keys != list(range(1, len(keys) + 1)):
        raise InputError("scale indices must run 1..m")
    scales = ScaleSequence([by_scale[k][0] for k in keys])
    return ProgressiveSimplification(scales, [tuple(by_scale[k][1]) for k in keys])


def write_continuous(cs: ContinuousSimplification, fh) -> None:
    """Blocks of ``breakpoint_epsilon,vertex_index`` then ``integral,value``."""
    for eps, level in cs.breakpoints:
        for v in level:
            fh.write(f"{eps!r},{v + 1}\n")
    fh.write(f"integral,{cs.integral!r}\n")


def open_output(path):
    """A writable text handle; ``None`` or ``-`` means stdout."""
    import sys

    if path is None or str(path) == "-":
        return _NoClose(sys.stdout)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="")


class _NoClose:
    def __init__(self, fh):
        self.fh = fh

    def __enter__(self):
        return self.fh

    def __exit__(self, *exc):
        self.fh.flush()
        return False
