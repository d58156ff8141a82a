"""Bounded one-dimensional minimization: uniform pre-scan plus golden-section refinement."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[a, b]`` until the bracket is shorter than ``tol``.

    Returns ``(x, f(x))`` for the best point evaluated.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c, d = a + INV_PHI2 * h, a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(n):
        if fc <= fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def scan_minimize(
    f: Callable[[np.ndarray], np.ndarray],
    lower: float,
    upper: float,
    tol: float,
    n_scan: int = 2001,
) -> tuple[float, float]:
    """Global-ish minimum of a vectorized ``f`` on ``[lower, upper]``.

    The uniform scan brackets the best basin (the objective is not assumed
    unimodal); golden-section then refines inside the two neighbouring cells.
    The scan endpoints are always candidates, so the result never exceeds the
    best scanned value.
    """
    if upper <= lower:
        x = float(lower)
        return x, float(f(np.array([x]))[0])
    xs = np.linspace(lower, upper, n_scan)
    values = f(xs)
    i = int(np.argmin(values))
    best_x, best_v = float(xs[i]), float(values[i])
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, n_scan - 1)]
    x, v = golden_section(lambda s: float(f(np.array([s]))[0]), lo, hi, tol)
    if v < best_v:
        best_x, best_v = float(x), float(v)
    return best_x, best_v
