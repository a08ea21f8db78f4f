"""Small 1-D numeric utilities: bracketed bisection and golden-section search."""

from __future__ import annotations

import math
from typing import Callable


def bisect(
    f: Callable[[float], float],
    a: float,
    b: float,
    fa: float | None = None,
    fb: float | None = None,
    xtol: float = 0.0,
    rtol: float = 4e-16,
    max_iter: int = 200,
) -> float:
    """Root of f on a sign-change bracket [a, b] by plain bisection."""
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError("bisect requires a sign change on [a, b]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if (b - a) <= xtol + rtol * abs(m):
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def bracket_on_grid(
    f: Callable[[float], float], grid
) -> tuple[float, float, float, float] | None:
    """First sign-change interval of f on an increasing grid, or None.

    Returns (a, b, f(a), f(b)); an exact zero is returned as a width-0 bracket.
    """
    prev_x = None
    prev_v = None
    for x in grid:
        v = f(x)
        if v == 0.0:
            return (x, x, 0.0, 0.0)
        if prev_x is not None and (v > 0.0) != (prev_v > 0.0):
            return (prev_x, x, prev_v, v)
        prev_x, prev_v = x, v
    return None


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(
    f: Callable[[float], float],
    a: float,
    b: float,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimum of a unimodal f on [a, b]; returns (argmin, min)."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if (b - a) <= xtol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd
