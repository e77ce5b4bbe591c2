"""Exact lattice point counters.

Every predicate is decided in integer arithmetic after clearing rational denominators.
Arrays are int64 when a precomputed bound shows no intermediate can overflow, and
numpy object arrays of Python ints otherwise. Work is split along the first
coordinate into size-determined blocks; block subtotals are Python ints, so totals do
not depend on the worker count.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geometry
from ._exact import as_rational, ceil_fraction, floor_fraction, rational_power
from ._parallel import pmap, split_range
from .errors import InvalidArgument, TooLargeError, UnsupportedPhaseError
from .geometry import INT64_SAFE, Convention, ConvexBody
from .phase import PhaseFunction

MAX_BRUTE_POINTS = 10 ** 9
BLOCK_ELEMENTS = 1 << 18  # target array size per work block


@dataclass(frozen=True)
class ShellQuery:
    body: ConvexBody
    R: Fraction
    delta: Fraction = Fraction(0)
    convention: Convention = Convention.CLOSED

    def __post_init__(self):
        object.__setattr__(self, "R", as_rational(self.R))
        object.__setattr__(self, "delta", as_rational(self.delta))
        object.__setattr__(self, "convention", Convention.parse(self.convention))
        if self.R < 0 or self.delta < 0:
            raise InvalidArgument("R and delta must be nonnegative")


@dataclass(frozen=True)
class PairQuery:
    phi: PhaseFunction
    q: Fraction
    delta: Fraction = Fraction(0)
    C: Fraction = Fraction(1)
    convention: Convention = Convention.CLOSED

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational(self.q))
        object.__setattr__(self, "delta", as_rational(self.delta))
        object.__setattr__(self, "C", as_rational(self.C))
        object.__setattr__(self, "convention", Convention.parse(self.convention))
        if self.q <= 0:
            raise InvalidArgument("q must be positive")
        if self.delta < 0 or self.C < 0:
            raise InvalidArgument("delta and C must be nonnegative")


@dataclass
class CountResult:
    count: int
    method: str
    wall_time: float
    points_examined: int
    exact_box: bool = True  # False when a box side or target came from a float power
    meta: dict = field(default_factory=dict)


def _dtype(*bounds):
    return np.int64 if max(bounds) < INT64_SAFE else object


def _blocks(lo, hi, inner):
    """Partition [lo, hi] of the first coordinate so each block holds ~BLOCK_ELEMENTS."""
    return split_range(lo, hi, max(1, BLOCK_ELEMENTS // max(1, inner)))


def _grid(ranges, dtype):
    """All integer points of a box given per-axis (lo, hi) ranges, as an (n, k) array."""
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in ranges]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    return pts.astype(object) if dtype is object else pts


def _exact_sum(arr) -> int:
    if arr.dtype == object:
        return int(sum(arr.tolist()))
    return int(arr.sum(dtype=np.int64))


# ---------------------------------------------------------------------------
# shells and balls

def _shell_mask(body, F, R, delta, convention):
    on, od = geometry.threshold(body, R + delta)
    inn, ind = geometry.threshold(body, R)
    outer = F * od <= on
    if convention is Convention.CLOSED:
        return outer & (F * ind >= inn)
    return outer & (F * ind > inn)


def shell_count_brute(query: ShellQuery, max_points: int | None = MAX_BRUTE_POINTS,
                      workers: int = 1) -> CountResult:
    """Count R <= ||k|| <= R + delta by testing every point of the enclosing box."""
    t0 = time.perf_counter()
    body = query.body
    box = geometry.enclosing_box(body, query.R + query.delta)
    total = math.prod(2 * b + 1 for b in box)
    if max_points is not None and total > max_points:
        raise TooLargeError(f"brute force would examine {total} points (> {max_points}); "
                            "use shell_count_fiber")
    e = body.exponent
    on, od = geometry.threshold(body, query.R + query.delta)
    fmax = geometry.form_coefficient_bound(body) * max(box) ** e
    dtype = _dtype(fmax * od, on, fmax * geometry.threshold(body, query.R)[1])
    inner = total // (2 * box[0] + 1)

    def work(block):
        pts = _grid([block] + [(-b, b) for b in box[1:]], dtype)
        F = geometry.power_form(body, pts)
        return int(np.count_nonzero(_shell_mask(body, F, query.R, query.delta, query.convention)))

    count = sum(pmap(work, _blocks(-box[0], box[0], inner), workers))
    return CountResult(count, "brute", time.perf_counter() - t0, total)


def _fiber_data(body, prefix):
    """Per-fiber pieces of F(k', t) for the last coordinate t.

    Returns (kind, s) with F = s + t**e for ball/pball, or (a, b, c) with
    F = a t^2 + 2 b t + c for ellipsoids.
    """
    if body.kind == "ball":
        return np.sum(prefix * prefix, axis=-1)
    if body.kind == "pball":
        return np.sum(prefix ** body.p, axis=-1)
    A, d = body.matrix, body.dim
    b = None
    for j in range(d - 1):
        term = A[d - 1][j] * prefix[:, j]
        b = term if b is None else b + term
    c = None
    for i in range(d - 1):
        term = A[i][i] * prefix[:, i] * prefix[:, i]
        for j in range(i + 1, d - 1):
            if A[i][j]:
                term = term + 2 * A[i][j] * prefix[:, i] * prefix[:, j]
        c = term if c is None else c + term
    return b, c


def _count_le_block(body, N, D, strict, block, box, dtype):
    """Number of k in the block with F(k)*D <= N (or < N) via one interval per fiber."""
    prefix = _grid([block] + [(-b, b) for b in box[1:-1]], dtype)
    bd = box[-1]
    e = body.exponent
    ok = (lambda v: v * D < N) if strict else (lambda v: v * D <= N)
    level = N / D  # float guide only; exactness comes from the snapping loops

    if body.kind == "ellipsoid":
        a = body.matrix[-1][-1]
        b, c = _fiber_data(body, prefix)
        F = lambda t: (a * t + 2 * b) * t + c  # noqa: E731
        bf, cf = b.astype(float), c.astype(float)
        centre = -bf / a
        root = np.sqrt(np.maximum(bf * bf - a * (cf - level), 0.0)) / a
        m0 = np.floor(centre).astype(np.int64)
        m0 = np.clip(m0, -bd - 1, bd + 1)
        m = m0.astype(object) if dtype is object else m0
        m = np.where(F(m + 1) < F(m), m + 1, m)
        hi_est = np.clip(np.floor(centre + root), -bd - 1, bd + 1).astype(np.int64)
        lo_est = np.clip(np.ceil(centre - root), -bd - 1, bd + 1).astype(np.int64)
    else:
        s = _fiber_data(body, prefix)
        F = lambda t: s + t ** e  # noqa: E731
        rem = level - s.astype(float)
        hi_est = np.clip(np.floor(np.maximum(rem, 0.0) ** (1.0 / e)), 0, bd + 1).astype(np.int64)
        m = np.zeros(len(s), dtype=np.int64)
        lo_est = -hi_est
    if dtype is object:
        hi_est, lo_est, m = hi_est.astype(object), lo_est.astype(object), m.astype(object)

    nonempty = ok(F(m))
    hi = np.where(nonempty, np.maximum(hi_est, m), m)
    # F is nondecreasing on t >= m, so these loops find max{t : ok(F(t))} exactly
    while True:
        bad = nonempty & ~ok(F(hi))
        if not bad.any():
            break
        hi = np.where(bad, hi - 1, hi)
    while True:
        up = nonempty & ok(F(hi + 1))
        if not up.any():
            break
        hi = np.where(up, hi + 1, hi)
    if body.kind == "ellipsoid":
        lo = np.where(nonempty, np.minimum(lo_est, m), m)
        while True:
            bad = nonempty & ~ok(F(lo))
            if not bad.any():
                break
            lo = np.where(bad, lo + 1, lo)
        while True:
            down = nonempty & ok(F(lo - 1))
            if not down.any():
                break
            lo = np.where(down, lo - 1, lo)
    else:
        lo = -hi
    widths = np.where(nonempty, hi - lo + 1, 0)
    return _exact_sum(widths), len(widths)


def _count_le(body, r, strict, workers=1):
    """#{k : ||k|| <= r} (or < r when strict) and the number of fibers scanned."""
    r = as_rational(r)
    N, D = geometry.threshold(body, r)
    box = geometry.enclosing_box(body, r)
    reach = max(box) + 2
    coef = geometry.form_coefficient_bound(body)
    dtype = _dtype(coef * reach ** body.exponent * D, N, 4 * coef * reach ** 2)
    blocks = _blocks(-box[0], box[0], math.prod(2 * b + 1 for b in box[1:-1]))
    results = pmap(lambda blk: _count_le_block(body, N, D, strict, blk, box, dtype), blocks,
                   workers)
    return sum(c for c, _ in results), sum(f for _, f in results)


def shell_count_fiber(query: ShellQuery, workers: int = 1) -> CountResult:
    """Shell count as a difference of two fiber-wise ball counts.

    closed:    #{||k|| <= R+delta} - #{||k|| < R}
    half_open: #{||k|| <= R+delta} - #{||k|| <= R}
    """
    t0 = time.perf_counter()
    outer, fibers = _count_le(query.body, query.R + query.delta, False, workers)
    inner, fibers_in = _count_le(query.body, query.R, query.convention is Convention.CLOSED,
                                 workers)
    return CountResult(outer - inner, "fiber", time.perf_counter() - t0, fibers + fibers_in)


def ball_count(body: ConvexBody, R, workers: int = 1) -> CountResult:
    """N_B(R) = #{k : ||k||_B <= R}."""
    t0 = time.perf_counter()
    R = as_rational(R)
    if R < 0:
        raise InvalidArgument("R must be nonnegative")
    count, fibers = _count_le(body, R, False, workers)
    return CountResult(count, "fiber", time.perf_counter() - t0, fibers)


def discrepancy(body: ConvexBody, R, workers: int = 1) -> float:
    """N_B(R) - |B| R^d (count exact, volume term in floating point)."""
    R = as_rational(R)
    n = ball_count(body, R, workers).count
    return n - geometry.volume(body) * float(R) ** body.dim


# ---------------------------------------------------------------------------
# pairs near level sets

@dataclass(frozen=True)
class _PairSetup:
    half_widths: tuple[int, ...]
    target: Fraction
    lower: Fraction
    upper: Fraction
    lower_strict: bool
    exact: bool


def _pair_setup(query: PairQuery) -> _PairSetup:
    phi = query.phi
    exact = True
    H = []
    for a in phi.alpha:
        side, ok = rational_power(query.q, a)
        exact &= ok
        H.append(floor_fraction(query.C * side))
    target, ok = rational_power(query.q, phi.beta)
    exact &= ok
    return _PairSetup(tuple(H), target, target - query.delta, target + query.delta,
                      query.convention is Convention.HALF_OPEN, exact)


def _level_mask(phi: PhaseFunction, k, setup: _PairSetup):
    """lower <= phi_0(k) <= upper (strict lower bound when requested), exactly."""
    lower, upper = setup.lower, setup.upper
    if phi.kind == "parabolic":
        val = k[..., -1] - np.sum(k[..., :-1] * k[..., :-1], axis=-1)
        lo = floor_fraction(lower) + 1 if setup.lower_strict else ceil_fraction(lower)
        return (val <= floor_fraction(upper)) & (val >= lo)
    body = phi.body
    F = geometry.power_form(body, k)
    if upper < 0:
        return np.zeros(F.shape, dtype=bool)
    nu, du = geometry.threshold(body, upper)
    mask = F * du <= nu
    if lower < 0:
        return mask
    nl, dl = geometry.threshold(body, lower)
    return mask & ((F * dl > nl) if setup.lower_strict else (F * dl >= nl))


def _pair_dtype(phi, reach, setup):
    if phi.kind == "parabolic":
        return _dtype(phi.dim * reach ** 2, abs(setup.upper) + abs(setup.lower) + 1)
    body = phi.body
    e = body.exponent
    fmax = geometry.form_coefficient_bound(body) * reach ** e
    dens = [geometry.threshold(body, max(x, Fraction(0)))[1] for x in (setup.lower, setup.upper)]
    nums = [geometry.threshold(body, max(x, Fraction(0)))[0] for x in (setup.lower, setup.upper)]
    return _dtype(fmax * max(dens), *nums)


def pair_count_brute(query: PairQuery, max_pairs: int | None = MAX_BRUTE_POINTS,
                     workers: int = 1) -> CountResult:
    """Count pairs (n, m) in the anisotropic box with |phi(n, m) - q^beta| <= delta directly."""
    t0 = time.perf_counter()
    phi = query.phi
    setup = _pair_setup(query)
    H = setup.half_widths
    npts = math.prod(2 * h + 1 for h in H)
    total = npts * npts
    if max_pairs is not None and total > max_pairs:
        raise TooLargeError(f"brute force would examine {total} pairs (> {max_pairs}); "
                            "use pair_count_diff_weight")
    dtype = _pair_dtype(phi, 2 * max(H) + 1, setup)
    box = _grid([(-h, h) for h in H], dtype)
    rows = max(1, BLOCK_ELEMENTS // npts)

    def work(block):
        n = box[block[0]:block[1] + 1]
        diff = n[:, None, :] - box[None, :, :]
        return int(np.count_nonzero(_level_mask(phi, diff, setup)))

    count = sum(pmap(work, split_range(0, npts - 1, rows), workers))
    return CountResult(count, "brute", time.perf_counter() - t0, total, setup.exact)


def tent_weights(k, sides):
    """w(k) = prod_j max(0, L_j - |k_j|): the number of box pairs with difference k."""
    w = None
    for j, L in enumerate(sides):
        f = np.maximum(L - np.abs(k[..., j]), 0)
        w = f if w is None else w * f
    return w


def pair_count_diff_weight(query: PairQuery, workers: int = 1) -> CountResult:
    """Pair count for translation-invariant phases as a weighted sum over differences k = n - m."""
    t0 = time.perf_counter()
    phi = query.phi
    if not phi.translation_invariant:
        raise UnsupportedPhaseError(f"{phi} is not translation invariant")
    setup = _pair_setup(query)
    H = setup.half_widths
    sides = [2 * h + 1 for h in H]
    reach = [L - 1 for L in sides]
    npts = math.prod(2 * r + 1 for r in reach)
    max_w = math.prod(sides)
    dtype = _pair_dtype(phi, max(reach) + 1, setup)
    # weights are summed in int64 only when a full block cannot overflow
    inner = npts // (2 * reach[0] + 1)
    blocks = _blocks(-reach[0], reach[0], inner)
    block_pts = max((b - a + 1) for a, b in blocks) * inner
    wdtype = _dtype(max_w * block_pts) if dtype is not object else object

    def work(block):
        k = _grid([block] + [(-r, r) for r in reach[1:]], dtype)
        mask = _level_mask(phi, k, setup)
        kk = k[mask]
        if wdtype is object:
            kk = kk.astype(object)
        return _exact_sum(tent_weights(kk, sides))

    count = sum(pmap(work, blocks, workers))
    return CountResult(count, "diff_weight", time.perf_counter() - t0, npts, setup.exact)


def sharpness_count(d: int, t: int, C=1, workers: int = 1) -> CountResult:
    """Closed-form pair count for the parabolic phase on phi = q^beta, q = t^(d+1).

    Box sides are L_j = 2 floor(C t^d) + 1 (j < d) and L_d = 2 floor(C t^(2d)) + 1; the
    count is sum over u in Z^(d-1) of prod_j (L_j - |u_j|) * max(0, L_d - |t^(2d) + |u|^2|).
    """
    t0 = time.perf_counter()
    if d < 2 or t < 1:
        raise InvalidArgument("need d >= 2 and t >= 1")
    C = as_rational(C)
    if C < 0:
        raise InvalidArgument("C must be nonnegative")
    side = 2 * floor_fraction(C * t ** d) + 1
    last = 2 * floor_fraction(C * t ** (2 * d)) + 1
    target = t ** (2 * d)
    reach = side - 1
    n_u = (2 * reach + 1) ** (d - 1)
    max_term = side ** (d - 1) * last
    dtype = _dtype(target + (d - 1) * reach ** 2 + last)
    inner = n_u // (2 * reach + 1)
    blocks = _blocks(-reach, reach, inner)
    block_pts = max(b - a + 1 for a, b in blocks) * inner
    wdtype = _dtype(max_term * block_pts) if dtype is not object else object

    def work(block):
        u = _grid([block] + [(-reach, reach)] * (d - 2), dtype)
        if wdtype is object:
            u = u.astype(object)
        v = target + np.sum(u * u, axis=-1)
        tail = np.maximum(last - np.abs(v), 0)
        w = tail
        for j in range(d - 1):
            w = w * (side - np.abs(u[:, j]))
        return _exact_sum(w)

    count = sum(pmap(work, blocks, workers))
    return CountResult(count, "closed_form", time.perf_counter() - t0, n_u,
                       meta={"q": t ** (d + 1), "side": side, "last_side": last})


def theorem_bound(q, delta, d: int, beta) -> float:
    """max(q^(d-2+2/(d+1)), q^(d-beta) * delta)."""
    q, delta, beta = float(q), float(delta), float(beta)
    if q <= 0:
        raise InvalidArgument("q must be positive")
    return max(q ** (d - 2 + 2 / (d + 1)), q ** (d - beta) * delta)
