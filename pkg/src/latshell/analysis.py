"""Log-log exponent fits and bound-ratio statistics for experiment grids."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument


@dataclass
class Fit:
    slope: float
    intercept: float
    stderr: float
    r_squared: float
    n: int


@dataclass
class ScanReport:
    rows: list  # (parameter, value, bound or None)
    fitted_slope: float
    slope_stderr: float
    r_squared: float
    max_ratio: float | None = None
    meta: dict = field(default_factory=dict)


def drop_nonpositive(rows):
    """Split off rows whose value is <= 0; returns (kept, number_dropped)."""
    kept = [r for r in rows if r[1] > 0]
    return kept, len(rows) - len(kept)


def fit_exponent(rows) -> Fit:
    """OLS fit of log y = slope * log x + intercept.

    Needs at least three rows with distinct positive x and positive y; zero counts
    must be filtered by the caller (see ``drop_nonpositive``).
    """
    rows = [(float(r[0]), float(r[1])) for r in rows]
    if len(rows) < 3:
        raise InvalidArgument(f"degenerate regression: need at least 3 rows, got {len(rows)}")
    x = np.array([r[0] for r in rows])
    y = np.array([r[1] for r in rows])
    if np.any(x <= 0) or np.any(y <= 0):
        raise InvalidArgument("log-log fit needs strictly positive x and y")
    if len(np.unique(x)) != len(x):
        raise InvalidArgument("degenerate regression: x values must be distinct")
    lx, ly = np.log(x), np.log(y)
    mx, my = lx.mean(), ly.mean()
    sxx = float(np.sum((lx - mx) ** 2))
    slope = float(np.sum((lx - mx) * (ly - my)) / sxx)
    intercept = float(my - slope * mx)
    resid = ly - (intercept + slope * lx)
    ssr = float(np.sum(resid ** 2))
    sst = float(np.sum((ly - my) ** 2))
    n = len(rows)
    stderr = math.sqrt(ssr / (n - 2) / sxx)
    r2 = 1.0 - ssr / sst if sst > 0 else 1.0
    return Fit(slope, intercept, stderr, r2, n)


@dataclass
class BoundRatios:
    max_ratio: float
    argmax: float
    first_half_max: float
    second_half_max: float
    ratios: list


def bound_ratio_scan(rows) -> BoundRatios:
    """Ratios value/bound over a grid of (parameter, value, bound) rows.

    Halves split the sorted parameter grid; with an odd number of rows the middle
    row belongs to both halves.
    """
    rows = sorted((float(p), float(v), float(b)) for p, v, b in rows)
    if not rows:
        raise InvalidArgument("no rows to scan")
    if any(b <= 0 for _, _, b in rows):
        raise InvalidArgument("bounds must be positive")
    ratios = [v / b for _, v, b in rows]
    n = len(rows)
    i = int(np.argmax(ratios))
    first = max(ratios[: (n + 1) // 2])
    second = max(ratios[n // 2:])
    return BoundRatios(ratios[i], rows[i][0], first, second, ratios)
