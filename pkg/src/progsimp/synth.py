"""Deterministic synthetic curves standing in for recorded trajectories."""
from __future__ import annotations

import numpy as np

from .geometry import Curve, InputError

KINDS = ("zigzag", "random-walk", "noisy-circle")


def synth_curve(kind: str, n: int, seed: int = 0) -> Curve:
    """``zigzag``: (k, k mod 2); ``random-walk``: Gaussian steps;
    ``noisy-circle``: jittered points on the unit circle."""
    if n < 2:
        raise InputError("a synthetic curve needs n >= 2")
    rng = np.random.default_rng(seed)
    if kind == "zigzag":
        k = np.arange(n, dtype=np.float64)
        xy = np.stack([k, k % 2], axis=1)
    elif kind == "random-walk":
        xy = np.cumsum(rng.normal(size=(n, 2)), axis=0)
        xy -= xy[0]
    elif kind == "noisy-circle":
        t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        r = 1.0 + 0.05 * rng.normal(size=n)
        xy = np.stack([r * np.cos(t), r * np.sin(t)], axis=1)
    else:
        raise InputError(f"unknown curve kind {kind!r}; choose from {', '.join(KINDS)}")
    return Curve(xy)
