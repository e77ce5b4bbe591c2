"""Symmetric convex bodies given by their gauge (Minkowski functional).

Three catalog families are supported: the Euclidean ball, integer ellipsoids
``{x : x^T A x <= 1}`` and even-p balls ``{x : sum |x_j|^p <= 1}``. Each gauge is the
``e``-th root of an integer-valued "power form" F on the lattice (e = 2 for the ball
and ellipsoid, e = p for p-balls), so ``||k|| <= a/b`` can be decided exactly as
``F(k) * b**e <= a**e``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from ._exact import as_rational
from .errors import InvalidArgument

# int64 arithmetic is used only when every intermediate stays below this bound
INT64_SAFE = 2 ** 62


class Convention(str, Enum):
    CLOSED = "closed"        # R <= ||k|| <= R + delta
    HALF_OPEN = "half_open"  # R <  ||k|| <= R + delta

    @classmethod
    def parse(cls, value) -> "Convention":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError as exc:
            raise InvalidArgument(f"unknown convention {value!r}; use 'closed' or 'half_open'") from exc


@dataclass(frozen=True)
class ConvexBody:
    kind: str
    dim: int
    matrix: tuple[tuple[int, ...], ...] | None = None
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("ball", "ellipsoid", "pball"):
            raise InvalidArgument(f"unknown body kind {self.kind!r}")
        if not isinstance(self.dim, int) or self.dim < 2:
            raise InvalidArgument(f"dimension must be an integer >= 2, got {self.dim!r}")
        if self.kind == "ellipsoid":
            _check_spd(self.matrix, self.dim)
        if self.kind == "pball":
            if not isinstance(self.p, int) or self.p < 2 or self.p % 2:
                raise InvalidArgument(f"pball needs an even integer p >= 2, got {self.p!r}")

    @property
    def exponent(self) -> int:
        """Degree e of the integer power form, gauge = F ** (1/e)."""
        return self.p if self.kind == "pball" else 2

    @property
    def curvature_vanishes(self) -> bool:
        """True for p-balls with p > 2, whose boundary is flat at the coordinate axes."""
        return self.kind == "pball" and self.p > 2

    def __str__(self):
        if self.kind == "ball":
            return f"ball(d={self.dim})"
        if self.kind == "pball":
            return f"pball(p={self.p},d={self.dim})"
        rows = ";".join(",".join(str(v) for v in row) for row in self.matrix)
        return f"ellipsoid({rows})"


def ball(dim: int) -> ConvexBody:
    return ConvexBody("ball", dim)


def pball(p: int, dim: int) -> ConvexBody:
    return ConvexBody("pball", dim, p=p)


def ellipsoid(matrix) -> ConvexBody:
    rows = tuple(tuple(int(v) for v in row) for row in matrix)
    for row in matrix:
        for v in row:
            if int(v) != v:
                raise InvalidArgument("ellipsoid matrix must have integer entries")
    return ConvexBody("ellipsoid", len(rows), matrix=rows)


def _check_spd(matrix, dim):
    if matrix is None or len(matrix) != dim or any(len(r) != dim for r in matrix):
        raise InvalidArgument(f"ellipsoid matrix must be {dim}x{dim}")
    for i in range(dim):
        for j in range(dim):
            if matrix[i][j] != matrix[j][i]:
                raise InvalidArgument("ellipsoid matrix must be symmetric")
    # exact LDL^T: positive definite iff every pivot is positive
    a = [[Fraction(v) for v in row] for row in matrix]
    for k in range(dim):
        if a[k][k] <= 0:
            raise InvalidArgument("ellipsoid matrix must be positive definite")
        for i in range(k + 1, dim):
            f = a[i][k] / a[k][k]
            for j in range(k, dim):
                a[i][j] -= f * a[k][j]


def body_from_dict(cfg: dict) -> ConvexBody:
    """Build a body from a config record such as ``{"kind": "pball", "p": 4, "dim": 3}``."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise InvalidArgument(f"body config needs a 'kind' field: {cfg!r}")
    kind = cfg["kind"]
    if kind == "ball":
        return ball(int(cfg.get("dim", 0)))
    if kind == "pball":
        return pball(int(cfg.get("p", 0)), int(cfg.get("dim", 0)))
    if kind == "ellipsoid":
        if "matrix" not in cfg:
            raise InvalidArgument("ellipsoid config needs a 'matrix' field")
        body = ellipsoid(cfg["matrix"])
        if "dim" in cfg and int(cfg["dim"]) != body.dim:
            raise InvalidArgument("ellipsoid 'dim' does not match the matrix size")
        return body
    raise InvalidArgument(f"unknown body kind {kind!r}")


def body_to_dict(body: ConvexBody) -> dict:
    out = {"kind": body.kind, "dim": body.dim}
    if body.kind == "pball":
        out["p"] = body.p
    if body.kind == "ellipsoid":
        out["matrix"] = [list(r) for r in body.matrix]
    return out


def _as_points(body, x):
    x = np.asarray(x)
    if x.shape[-1:] != (body.dim,):
        raise InvalidArgument(f"expected vectors of dimension {body.dim}, got shape {x.shape}")
    return x


def gauge(body: ConvexBody, x):
    """Minkowski functional ||x||_B, vectorized over leading axes of ``x``."""
    x = _as_points(body, x).astype(float)
    if body.kind == "ball":
        out = np.sqrt(np.sum(x * x, axis=-1))
    elif body.kind == "ellipsoid":
        A = np.asarray(body.matrix, dtype=float)
        out = np.sqrt(np.maximum(np.einsum("...i,ij,...j->...", x, A, x), 0.0))
    else:
        # scale by the max coordinate so x**p cannot overflow or underflow
        ax = np.abs(x)
        m = np.max(ax, axis=-1)
        safe = np.where(m > 0, m, 1.0)
        out = m * np.sum((ax / safe[..., None]) ** body.p, axis=-1) ** (1.0 / body.p)
    return float(out) if out.ndim == 0 else out


def int_dtype_for(bound: int):
    return np.int64 if bound < INT64_SAFE else object


def power_form(body: ConvexBody, k):
    """Integer power form F(k) with gauge(k) = F(k) ** (1/e).

    ``k`` is an integer array (int64 or object dtype) with the last axis of size d;
    the result has the same dtype, so callers pick object dtype when values may
    exceed int64.
    """
    k = _as_points(body, k)
    if body.kind == "ball":
        return np.sum(k * k, axis=-1)
    if body.kind == "pball":
        return np.sum(k ** body.p, axis=-1)
    A = body.matrix
    d = body.dim
    total = None
    for i in range(d):
        ki = k[..., i]
        term = A[i][i] * ki * ki
        for j in range(i + 1, d):
            if A[i][j]:
                term = term + 2 * A[i][j] * ki * k[..., j]
        total = term if total is None else total + term
    return total


def power_form_int(body: ConvexBody, k) -> int:
    """Scalar power form in Python integers."""
    k = [int(v) for v in k]
    if len(k) != body.dim:
        raise InvalidArgument(f"expected a point of dimension {body.dim}, got {len(k)}")
    if body.kind == "ball":
        return sum(v * v for v in k)
    if body.kind == "pball":
        return sum(v ** body.p for v in k)
    A = body.matrix
    return sum(A[i][j] * k[i] * k[j] for i in range(body.dim) for j in range(body.dim))


def form_coefficient_bound(body: ConvexBody) -> int:
    """Upper bound on F(k) / max|k_j|**e over nonzero k."""
    if body.kind == "ellipsoid":
        return sum(abs(v) for row in body.matrix for v in row)
    return body.dim


def threshold(body: ConvexBody, r) -> tuple[int, int]:
    """Return (num**e, den**e) for r = num/den >= 0, so that ||k|| <= r iff F(k)*den**e <= num**e."""
    r = as_rational(r)
    if r < 0:
        raise InvalidArgument("gauge thresholds must be nonnegative")
    e = body.exponent
    return r.numerator ** e, r.denominator ** e


def shell_predicate_exact(body: ConvexBody, k, R, delta, convention=Convention.CLOSED) -> bool:
    """Exact test of R <= ||k|| <= R + delta (or R < ||k|| for the half-open convention)."""
    R = as_rational(R)
    delta = as_rational(delta)
    if R < 0 or delta < 0:
        raise InvalidArgument("R and delta must be nonnegative")
    convention = Convention.parse(convention)
    F = power_form_int(body, k)
    on, od = threshold(body, R + delta)
    if F * od > on:
        return False
    inn, ind = threshold(body, R)
    if convention is Convention.CLOSED:
        return F * ind >= inn
    return F * ind > inn


def coordinate_radius(body: ConvexBody) -> list[float]:
    """max |x_j| over the unit body, per coordinate."""
    if body.kind == "ellipsoid":
        inv = np.linalg.inv(np.asarray(body.matrix, dtype=float))
        return [math.sqrt(inv[j, j]) for j in range(body.dim)]
    return [1.0] * body.dim


def enclosing_box(body: ConvexBody, r) -> list[int]:
    """Integer half-widths B_j with {||k|| <= r} inside the box |k_j| <= B_j."""
    r = float(as_rational(r))
    # +1 absorbs rounding in the float radius; a larger box never changes a count
    return [int(math.floor(r * c)) + 1 for c in coordinate_radius(body)]


def volume(body: ConvexBody) -> float:
    d = body.dim
    if body.kind == "pball":
        p = body.p
        return math.exp(d * math.log(2 * math.gamma(1 + 1 / p)) - math.lgamma(1 + d / p))
    unit = math.exp((d / 2) * math.log(math.pi) - math.lgamma(d / 2 + 1))
    if body.kind == "ball":
        return unit
    det = float(np.linalg.det(np.asarray(body.matrix, dtype=float)))
    return unit / math.sqrt(det)
