"""Phase functions phi(x, y) with quasi-homogeneity exponents.

Two families are built in:

* ``DifferenceGauge``: phi(x, y) = ||x - y||_B, homogeneous of degree one.
* ``ParabolicExample``: phi(x, y) = (x_d - y_d) - sum_{j<d} (x_j - y_j)**2 with
  alpha_j = d/(d+1) for j < d and alpha_d = beta = 2d/(d+1).

Both depend on x - y only; ``translation_invariant`` advertises this to the counters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geometry
from ._exact import as_rational, exact_power
from .errors import InvalidArgument
from .geometry import ConvexBody

EPS_FLOOR = 1e-300


def _as_alpha(alpha) -> tuple[Fraction, ...]:
    return tuple(as_rational(a) for a in alpha)


def validate_exponents(alpha, dim: int) -> None:
    """Sum alpha_j = d and 0 < alpha_j <= 2d/(d+1), checked in exact rationals."""
    if len(alpha) != dim:
        raise InvalidArgument(f"alpha must have {dim} entries, got {len(alpha)}")
    if any(a <= 0 for a in alpha):
        raise InvalidArgument(f"alpha entries must be positive: {alpha}")
    if sum(alpha) != dim:
        raise InvalidArgument(f"alpha must sum to {dim}, got {sum(alpha)}")
    cap = Fraction(2 * dim, dim + 1)
    if any(a > cap for a in alpha):
        raise InvalidArgument(f"alpha entries must not exceed 2d/(d+1) = {cap}: {alpha}")


@dataclass(frozen=True)
class PhaseFunction:
    kind: str
    dim: int
    alpha: tuple[Fraction, ...]
    beta: Fraction
    body: ConvexBody | None = None

    def __post_init__(self):
        if self.kind not in ("diff_gauge", "parabolic"):
            raise InvalidArgument(f"unknown phase kind {self.kind!r}")
        object.__setattr__(self, "alpha", _as_alpha(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.beta <= 0:
            raise InvalidArgument("beta must be positive")
        validate_exponents(self.alpha, self.dim)
        if self.kind == "diff_gauge":
            if self.body is None or self.body.dim != self.dim:
                raise InvalidArgument("diff_gauge needs a body of matching dimension")
            if any(a != 1 for a in self.alpha) or self.beta != 1:
                raise InvalidArgument("diff_gauge is 1-homogeneous: alpha_j = beta = 1")
        else:
            d = self.dim
            expected = (Fraction(d, d + 1),) * (d - 1) + (Fraction(2 * d, d + 1),)
            if self.alpha != expected or self.beta != Fraction(2 * d, d + 1):
                raise InvalidArgument("parabolic example has fixed exponents d/(d+1), 2d/(d+1)")

    @property
    def translation_invariant(self) -> bool:
        return True

    def __str__(self):
        if self.kind == "parabolic":
            return f"parabolic(d={self.dim})"
        return f"diff_gauge({self.body})"


def difference_gauge(body: ConvexBody) -> PhaseFunction:
    return PhaseFunction("diff_gauge", body.dim, (Fraction(1),) * body.dim, Fraction(1), body)


def parabolic(dim: int) -> PhaseFunction:
    if not isinstance(dim, int) or dim < 2:
        raise InvalidArgument(f"dimension must be an integer >= 2, got {dim!r}")
    a = Fraction(dim, dim + 1)
    return PhaseFunction("parabolic", dim, (a,) * (dim - 1) + (2 * a,), 2 * a)


def phase_from_dict(cfg: dict) -> PhaseFunction:
    """``{"kind": "parabolic", "dim": 2}`` or ``{"kind": "diff_gauge", "body": {...}}``."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise InvalidArgument(f"phase config needs a 'kind' field: {cfg!r}")
    if cfg["kind"] == "parabolic":
        return parabolic(int(cfg.get("dim", 0)))
    if cfg["kind"] == "diff_gauge":
        if "body" not in cfg:
            raise InvalidArgument("diff_gauge config needs a 'body' field")
        return difference_gauge(geometry.body_from_dict(cfg["body"]))
    raise InvalidArgument(f"unknown phase kind {cfg['kind']!r}")


def phase_to_dict(phi: PhaseFunction) -> dict:
    if phi.kind == "parabolic":
        return {"kind": "parabolic", "dim": phi.dim}
    return {"kind": "diff_gauge", "body": geometry.body_to_dict(phi.body)}


def evaluate_difference(phi: PhaseFunction, z):
    """phi_0(z) where phi(x, y) = phi_0(x - y); vectorized over leading axes."""
    z = np.asarray(z, dtype=float)
    if z.shape[-1:] != (phi.dim,):
        raise InvalidArgument(f"expected vectors of dimension {phi.dim}, got shape {z.shape}")
    if phi.kind == "diff_gauge":
        return geometry.gauge(phi.body, z)
    out = z[..., -1] - np.sum(z[..., :-1] ** 2, axis=-1)
    return float(out) if out.ndim == 0 else out


def evaluate(phi: PhaseFunction, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1:] != (phi.dim,) or y.shape[-1:] != (phi.dim,):
        raise InvalidArgument(f"x and y must have dimension {phi.dim}")
    return evaluate_difference(phi, x - y)


@dataclass(frozen=True)
class AnisotropicDilation:
    alpha: tuple[Fraction, ...]
    q: float | Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_alpha(self.alpha))
        if not float(self.q) > 0:
            raise InvalidArgument("dilation parameter q must be positive")

    def factors(self) -> np.ndarray:
        return np.array([scale_factor(self.q, a) for a in self.alpha])


def scale_factor(q, a) -> float:
    """q**a, exact when q is rational and the power is rational (8**(2/3) == 4.0)."""
    if not isinstance(q, float) or float(q).is_integer():
        exact = exact_power(q, a)
        if exact is not None:
            return float(exact)
    return float(q) ** float(a)


def dilate(tau: AnisotropicDilation, x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (len(tau.alpha),):
        raise InvalidArgument("dilation and vector dimensions differ")
    return x * tau.factors()


@dataclass
class HomogeneityReport:
    max_relative_error: float
    passed: bool
    tol: float
    eps_floor: float = EPS_FLOOR
    n_checks: int = 0
    worst: dict = field(default_factory=dict)


def sample_annulus_pairs(dim: int, n: int, rng, r_min=0.5, r_max=2.0):
    """Pairs (x, y) with y uniform in [-1, 1]^d and r_min <= |x - y| <= r_max."""
    y = rng.uniform(-1.0, 1.0, size=(n, dim))
    u = rng.standard_normal((n, dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    r = rng.uniform(r_min, r_max, size=(n, 1))
    return y + r * u, y


def check_quasi_homogeneity(phi: PhaseFunction, sample_count: int, q_values, tol: float,
                            seed: int, alpha=None, beta=None) -> HomogeneityReport:
    """Measure |phi(tau x, tau y) - q**beta phi(x, y)| relative to |q**beta phi(x, y)|.

    ``alpha``/``beta`` override the exponents declared by ``phi``; this is how a
    deliberately wrong scaling claim is tested.
    """
    q_values = list(q_values)
    if not q_values:
        raise InvalidArgument("q_values must be non-empty")
    if sample_count < 1:
        raise InvalidArgument("sample_count must be >= 1")
    alpha = phi.alpha if alpha is None else _as_alpha(alpha)
    beta = phi.beta if beta is None else as_rational(beta)
    if len(alpha) != phi.dim:
        raise InvalidArgument("alpha override has the wrong length")

    rng = np.random.default_rng(seed)
    x, y = sample_annulus_pairs(phi.dim, sample_count, rng)
    base = evaluate(phi, x, y)
    worst_err, worst = 0.0, {}
    for q in q_values:
        tau = AnisotropicDilation(alpha, q)
        scaled = evaluate(phi, dilate(tau, x), dilate(tau, y))
        expect = scale_factor(q, beta) * base
        err = np.abs(scaled - expect) / (np.abs(expect) + EPS_FLOOR)
        i = int(np.argmax(err))
        if err[i] > worst_err or not worst:
            worst_err = float(err[i])
            worst = {"q": float(q), "x": x[i].tolist(), "y": y[i].tolist()}
    return HomogeneityReport(worst_err, bool(worst_err <= tol), tol,
                             n_checks=sample_count * len(q_values), worst=worst)
