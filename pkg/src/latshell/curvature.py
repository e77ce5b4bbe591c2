"""Finite-difference curvature checks for phase functions.

The bordered Monge-Ampere matrix is

    [ 0            grad_x phi       ]
    [ -grad_y phi^T  d2 phi/dx_i dy_j ]

and its determinant must not vanish on the level sets {phi = t}. Everything here is
vectorized over leading axes of x and y so a level-set scan costs a handful of
array evaluations of phi.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidArgument, LevelSetEmptyError, NumericalDomainError
from .phase import PhaseFunction, evaluate


@dataclass(frozen=True)
class FDScheme:
    h: float = 1e-4
    order: int = 2  # 4 = Richardson extrapolation of the order-2 stencil

    def __post_init__(self):
        if not self.h > 0:
            raise InvalidArgument("finite-difference step must be positive")
        if self.order not in (2, 4):
            raise InvalidArgument("order must be 2 or 4")

    def as_dict(self):
        return {"h": self.h, "order": self.order}


def _prepare(phi, x, y, scheme, check=True):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.shape[-1:] != (phi.dim,):
        raise InvalidArgument(f"x and y must both have shape (..., {phi.dim})")
    if check:
        sep = np.linalg.norm(x - y, axis=-1)
        if np.any(sep < 10 * scheme.h):
            raise NumericalDomainError("|x - y| is within 10*h of the diagonal")
    return x, y


def _finite(values):
    if not np.all(np.isfinite(values)):
        raise NumericalDomainError("phase function is not finite at a stencil point")
    return values


def _central_grad(phi, x, y, h, wrt):
    d = phi.dim
    out = np.empty(x.shape)
    for j in range(d):
        e = np.zeros(d)
        e[j] = h
        if wrt == "x":
            fp, fm = evaluate(phi, x + e, y), evaluate(phi, x - e, y)
        else:
            fp, fm = evaluate(phi, x, y + e), evaluate(phi, x, y - e)
        out[..., j] = (_finite(fp) - _finite(fm)) / (2 * h)
    return out


def _central_mixed(phi, x, y, h):
    d = phi.dim
    out = np.empty(x.shape + (d,))
    for i in range(d):
        ei = np.zeros(d)
        ei[i] = h
        for j in range(d):
            ej = np.zeros(d)
            ej[j] = h
            f = (evaluate(phi, x + ei, y + ej) - evaluate(phi, x + ei, y - ej)
                 - evaluate(phi, x - ei, y + ej) + evaluate(phi, x - ei, y - ej))
            out[..., i, j] = _finite(f) / (4 * h * h)
    return out


def _richardson(fn, scheme):
    coarse = fn(scheme.h)
    if scheme.order == 2:
        return coarse
    fine = fn(scheme.h / 2)
    return (4 * fine - coarse) / 3


def grad_x(phi: PhaseFunction, x, y, scheme: FDScheme = FDScheme()):
    x, y = _prepare(phi, x, y, scheme)
    return _richardson(lambda h: _central_grad(phi, x, y, h, "x"), scheme)


def grad_y(phi: PhaseFunction, x, y, scheme: FDScheme = FDScheme()):
    x, y = _prepare(phi, x, y, scheme)
    return _richardson(lambda h: _central_grad(phi, x, y, h, "y"), scheme)


def mixed_hessian(phi: PhaseFunction, x, y, scheme: FDScheme = FDScheme()):
    """M[i, j] = d^2 phi / dx_i dy_j by nested central differences."""
    x, y = _prepare(phi, x, y, scheme)
    return _richardson(lambda h: _central_mixed(phi, x, y, h), scheme)


def bordered_matrix(gx, gy, mixed):
    gx, gy, mixed = np.asarray(gx), np.asarray(gy), np.asarray(mixed)
    d = gx.shape[-1]
    M = np.zeros(gx.shape[:-1] + (d + 1, d + 1))
    M[..., 0, 1:] = gx
    M[..., 1:, 0] = -gy
    M[..., 1:, 1:] = mixed
    return M


def _curvature_data(phi, x, y, scheme):
    gx = _richardson(lambda h: _central_grad(phi, x, y, h, "x"), scheme)
    gy = _richardson(lambda h: _central_grad(phi, x, y, h, "y"), scheme)
    mixed = _richardson(lambda h: _central_mixed(phi, x, y, h), scheme)
    # numpy's det is LU with partial pivoting (LAPACK getrf)
    det = np.linalg.det(bordered_matrix(gx, gy, mixed))
    return det, gx, gy


def monge_ampere_det(phi: PhaseFunction, x, y, scheme: FDScheme = FDScheme()):
    x, y = _prepare(phi, x, y, scheme)
    det, _, _ = _curvature_data(phi, x, y, scheme)
    return float(det) if np.ndim(det) == 0 else det


@dataclass(frozen=True)
class LevelSetScan:
    phi: PhaseFunction
    t: float
    n_samples: int
    seed: int
    thickness: float = 1e-2
    axis_samples: int = 0  # extra probes with x - y along a coordinate axis

    def __post_init__(self):
        if not self.t > 0:
            raise InvalidArgument("level t must be positive")
        if self.n_samples < 1:
            raise InvalidArgument("n_samples must be >= 1")
        if self.thickness < 0 or self.axis_samples < 0:
            raise InvalidArgument("thickness and axis_samples must be nonnegative")


@dataclass
class LevelSetReport:
    min_abs_det: float
    min_grad_x_norm: float
    min_grad_y_norm: float
    n_accepted: int
    hypothesis_pass: bool
    floor: float
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "min_abs_det": self.min_abs_det,
            "min_grad_x_norm": self.min_grad_x_norm,
            "min_grad_y_norm": self.min_grad_y_norm,
            "n_accepted": self.n_accepted,
            "hypothesis_pass": self.hypothesis_pass,
            "floor": self.floor,
            "diagnostics": self.diagnostics,
        }


def _uniform_ball(rng, n, d, radius=1.0):
    u = rng.standard_normal((n, d))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    r = radius * rng.uniform(0.0, 1.0, size=(n, 1)) ** (1.0 / d)
    return u * r


def _project_along_last(phi, x, y, t, grid=65):
    """Move x_d inside the unit ball until phi(x, y) = t; drops samples with no root."""
    d = phi.dim
    keep_x, keep_y = [], []
    for xi, yi in zip(x, y):
        span = 1.0 - float(np.sum(xi[:-1] ** 2))
        if span <= 0:
            continue
        c = np.sqrt(span)
        zs = np.linspace(-c, c, grid)
        trial = np.repeat(xi[None, :], grid, axis=0)
        trial[:, -1] = zs
        g = evaluate(phi, trial, np.broadcast_to(yi, trial.shape)) - t
        idx = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) <= 0)[0]
        if idx.size == 0:
            continue
        k = int(idx[0])

        def f(z):
            pt = xi.copy()
            pt[-1] = z
            return float(evaluate(phi, pt, yi)) - t

        z = zs[k] if g[k] == 0 else brentq(f, zs[k], zs[k + 1], xtol=1e-14)
        pt = xi.copy()
        pt[-1] = z
        keep_x.append(pt)
        keep_y.append(yi)
    return np.array(keep_x).reshape(-1, d), np.array(keep_y).reshape(-1, d)


def _axis_probes(phi, t, count, rng, h):
    """Pairs with x - y = r * (+-e_j) and phi = t, cycling over the 2d axis directions."""
    d = phi.dim
    dirs = []
    for j in range(d):
        for sgn in (1.0, -1.0):
            v = np.zeros(d)
            v[j] = sgn
            rs = np.geomspace(10 * h, 1e3, 200)
            g = evaluate(phi, rs[:, None] * v, np.zeros((rs.size, d))) - t
            idx = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) <= 0)[0]
            if idx.size == 0:
                continue
            k = int(idx[0])
            r = brentq(lambda s: float(evaluate(phi, s * v, np.zeros(d))) - t, rs[k], rs[k + 1],
                       xtol=1e-14)
            dirs.append(r * v)
    if not dirs or count == 0:
        return np.empty((0, d)), np.empty((0, d))
    xs, ys = [], []
    for n in range(count):
        step = dirs[n % len(dirs)]
        room = max(0.0, 1.0 - float(np.linalg.norm(step)))
        y = _uniform_ball(rng, 1, d, room)[0] if room > 0 else np.zeros(d)
        xs.append(y + step)
        ys.append(y)
    return np.array(xs), np.array(ys)


def certify_level_set(scan: LevelSetScan, scheme: FDScheme = FDScheme(), floor: float = 1e-3,
                      max_draws: int = 10 ** 6, batch: int = 50_000) -> LevelSetReport:
    """Sample the level set {phi = t} in B x B and report the minima of |det|, |grad_x|, |grad_y|.

    Samples come from rejection sampling with the given thickness; when fewer than
    n_samples/100 survive ``max_draws`` draws, draws are projected onto the level set
    along x_d instead.
    """
    phi, d = scan.phi, scan.phi.dim
    rng = np.random.default_rng(scan.seed)
    xs, ys = [], []
    accepted = draws = near_diagonal = 0
    while accepted < scan.n_samples and draws < max_draws:
        n = min(batch, max_draws - draws)
        x = _uniform_ball(rng, n, d)
        y = _uniform_ball(rng, n, d)
        draws += n
        sep = np.linalg.norm(x - y, axis=1)
        diag = sep < 10 * scheme.h
        near_diagonal += int(diag.sum())
        ok = (~diag) & (np.abs(evaluate(phi, x, y) - scan.t) <= scan.thickness)
        xs.append(x[ok])
        ys.append(y[ok])
        accepted += int(ok.sum())
    x = np.concatenate(xs)[: scan.n_samples]
    y = np.concatenate(ys)[: scan.n_samples]
    projected = 0
    if len(x) < scan.n_samples / 100:
        px, py = _project_along_last(phi, _uniform_ball(rng, scan.n_samples, d),
                                     _uniform_ball(rng, scan.n_samples, d), scan.t)
        ok = np.linalg.norm(px - py, axis=1) >= 10 * scheme.h
        near_diagonal += int((~ok).sum())
        x, y = np.concatenate([x, px[ok]]), np.concatenate([y, py[ok]])
        projected = int(ok.sum())
    ax, ay = _axis_probes(phi, scan.t, scan.axis_samples, rng, scheme.h)
    x, y = np.concatenate([x, ax]), np.concatenate([y, ay])

    diagnostics = {"draws": draws, "rejected_near_diagonal": near_diagonal,
                   "projected": projected, "axis_probes": len(ax), "scheme": scheme.as_dict(),
                   "t": scan.t, "thickness": scan.thickness, "seed": scan.seed}
    if len(x) == 0:
        raise LevelSetEmptyError(f"no samples found on the level set phi = {scan.t}", diagnostics)

    det, gx, gy = _curvature_data(phi, x, y, scheme)
    abs_det = np.abs(det)
    gxn = np.linalg.norm(gx, axis=1)
    gyn = np.linalg.norm(gy, axis=1)
    i = int(np.argmin(abs_det))
    diagnostics["argmin_det"] = {"x": x[i].tolist(), "y": y[i].tolist()}
    mins = float(abs_det.min()), float(gxn.min()), float(gyn.min())
    return LevelSetReport(mins[0], mins[1], mins[2], len(x), all(m > floor for m in mins), floor,
                          diagnostics)
