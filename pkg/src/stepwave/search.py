"""Bracketed scalar searches used by the pulse analysis.

Small and self-contained on purpose: a golden-section maximizer with a
log-spaced pre-scan (so early diffraction wiggles cannot capture the
bracket) and a bisection root finder on a sign-changing bracket.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


class NoInteriorMaximumError(RuntimeError):
    """The scanned window contains no interior maximum."""


class NoRootError(RuntimeError):
    """No sign change could be bracketed."""


def log_spaced(lo: float, hi: float, per_decade: int = 21) -> list[float]:
    """Geometric grid from lo to hi with a fixed density per decade."""
    if not (0.0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    decades = math.log10(hi / lo)
    n = max(2, int(math.ceil(decades * per_decade)) + 1)
    ratio = (hi / lo) ** (1.0 / (n - 1))
    pts = [lo * ratio**i for i in range(n)]
    pts[-1] = hi
    return pts


def golden_section_max(
    f: Callable[[float], float], a: float, b: float, rel_tol: float = 1e-6
) -> float:
    """Argmax of a unimodal f on [a, b] to a relative bracket width rel_tol."""
    if not b > a:
        raise ValueError("need b > a")
    dist = b - a
    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    fc = f(c)
    fd = f(d)
    scale = max(abs(a), abs(b))
    while dist > rel_tol * scale:
        if fc > fd:
            b, d, fd = d, c, fc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            fd = f(d)
    return 0.5 * (a + b)


def scan_then_refine(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    per_decade: int = 21,
    rel_tol: float = 1e-6,
) -> float:
    """Locate the interior argmax of f on [lo, hi].

    Log-spaced pre-scan picks the best coarse node; its neighbors bracket
    the golden-section refinement. Raises if the best node sits on the
    window edge (no interior maximum).
    """
    grid = log_spaced(lo, hi, per_decade)
    values = [f(x) for x in grid]
    k = max(range(len(grid)), key=values.__getitem__)
    if k == 0 or k == len(grid) - 1:
        raise NoInteriorMaximumError(
            f"maximum at the window edge x={grid[k]:g}; widen [{lo:g}, {hi:g}]"
        )
    return golden_section_max(f, grid[k - 1], grid[k + 1], rel_tol=rel_tol)


def bisect_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Root of f on a bracket [a, b] with f(a), f(b) of opposite sign."""
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NoRootError(f"f({a:g}) and f({b:g}) have the same sign")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if math.copysign(1.0, fm) == math.copysign(1.0, fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
        if b - a <= rel_tol * max(abs(a), abs(b)):
            return 0.5 * (a + b)
    return 0.5 * (a + b)


def first_sign_change(xs: Sequence[float], ys: Sequence[float]) -> int | None:
    """Index i of the first strict sign change between ys[i] and ys[i+1]."""
    for i in range(len(ys) - 1):
        if ys[i] == 0.0:
            continue
        if math.copysign(1.0, ys[i]) != math.copysign(1.0, ys[i + 1]):
            return i
    return None
