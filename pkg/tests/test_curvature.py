import numpy as np
import pytest

from latshell import curvature as cv
from latshell import geometry as g
from latshell import phase as ph
from latshell.errors import InvalidArgument, LevelSetEmptyError, NumericalDomainError

PAR2 = ph.parabolic(2)
PAR3 = ph.parabolic(3)
EUC2 = ph.difference_gauge(g.ball(2))
EUC3 = ph.difference_gauge(g.ball(3))


def annulus_points(dim, n=100, seed=0):
    rng = np.random.default_rng(seed)
    y = rng.uniform(-1, 1, (n, dim))
    u = rng.normal(size=(n, dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    r = rng.uniform(0.5, 2, n)
    return y + r[:, None] * u, y, r


def test_gradients():
    assert np.allclose(cv.grad_x(PAR2, [1, 5], [0, 1]), [-2, 1], atol=1e-8)
    assert np.allclose(cv.grad_y(PAR2, [1, 5], [0, 1]), [2, -1], atol=1e-8)
    assert np.allclose(cv.grad_x(EUC2, [3, 4], [0, 0]), [0.6, 0.8], atol=1e-6)


def test_mixed_hessian():
    x, y, _ = annulus_points(2, 5)
    for xi, yi in zip(x, y):
        assert np.allclose(cv.mixed_hessian(PAR2, xi, yi), [[2, 0], [0, 0]], atol=1e-4)
    x, y, _ = annulus_points(3, 5)
    for xi, yi in zip(x, y):
        assert np.allclose(cv.mixed_hessian(PAR3, xi, yi), np.diag([2, 2, 0]), atol=1e-4)
    for r in (0.5, 1, 3):
        assert np.allclose(cv.mixed_hessian(EUC2, [r, 0], [0, 0]), [[0, 0], [0, -1 / r]], atol=1e-4)


def test_determinant_examples():
    x, y, r = annulus_points(2)
    assert np.max(np.abs(cv.monge_ampere_det(PAR2, x, y) + 2)) <= 1e-3
    x3, y3, _ = annulus_points(3)
    assert np.max(np.abs(cv.monge_ampere_det(PAR3, x3, y3) + 4)) <= 1e-3
    assert np.max(np.abs(np.abs(cv.monge_ampere_det(EUC2, x, y)) - 1 / r)) <= 1e-3


def test_bordered_matrix_layout():
    m = cv.bordered_matrix(np.array([1.0, 2.0]), np.array([3.0, 4.0]), np.eye(2))
    assert np.array_equal(m, [[0, 1, 2], [-3, 1, 0], [-4, 0, 1]])


def test_parabolic_stencil_is_exact():
    # central differences reproduce quadratics, so only rounding error remains
    x, y, _ = annulus_points(2)
    for h in (1e-2, 1e-3, 1e-4):
        assert np.max(np.abs(cv.monge_ampere_det(PAR2, x, y, cv.FDScheme(h)) + 2)) <= 1e-6


@pytest.mark.parametrize("dim", [2, 3])
def test_fd_convergence_order_two(dim):
    phi = ph.difference_gauge(g.ball(dim))
    x, y, r = annulus_points(dim)
    exact = r ** (1 - dim)

    def err(h):
        return np.max(np.abs(np.abs(cv.monge_ampere_det(phi, x, y, cv.FDScheme(h))) - exact))

    for h in (2e-2, 1e-2):
        assert err(h) / err(h / 2) >= 3


def test_order_four_is_more_accurate():
    x, y, r = annulus_points(2)
    e2 = np.abs(np.abs(cv.monge_ampere_det(EUC2, x, y, cv.FDScheme(1e-2, 2))) - 1 / r).max()
    e4 = np.abs(np.abs(cv.monge_ampere_det(EUC2, x, y, cv.FDScheme(1e-2, 4))) - 1 / r).max()
    assert e4 < e2 / 10


@pytest.mark.parametrize("dim", [2, 3])
def test_determinant_homogeneity(dim):
    phi = ph.difference_gauge(g.ball(dim))
    rng = np.random.default_rng(9)
    u = rng.normal(size=(50, dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    y = rng.uniform(-1, 1, (50, dim))
    base = np.abs(cv.monge_ampere_det(phi, y + u, y))
    for t in (0.5, 1, 2):
        det = np.abs(cv.monge_ampere_det(phi, y + t * u, y))
        assert np.allclose(det, t ** (1 - dim) * base, rtol=1e-2)


def test_diagonal_and_domain_errors():
    with pytest.raises(NumericalDomainError):
        cv.monge_ampere_det(EUC2, [0, 0], [1e-5, 0])
    with pytest.raises(InvalidArgument):
        cv.grad_x(EUC2, [0, 0, 0], [1, 1, 1])
    with pytest.raises(InvalidArgument):
        cv.FDScheme(0)
    with pytest.raises(InvalidArgument):
        cv.LevelSetScan(PAR2, 0, 10, 0)


def test_certify_examples():
    rep = cv.certify_level_set(cv.LevelSetScan(PAR2, 1.0, 1000, seed=1))
    assert rep.hypothesis_pass and rep.min_abs_det == pytest.approx(2, abs=1e-3)
    rep = cv.certify_level_set(cv.LevelSetScan(EUC3, 1.0, 1000, seed=1))
    assert rep.hypothesis_pass and rep.min_abs_det == pytest.approx(1, abs=0.05)
    quartic = ph.difference_gauge(g.pball(4, 2))
    rep = cv.certify_level_set(cv.LevelSetScan(quartic, 1.0, 1000, seed=1, axis_samples=20))
    assert not rep.hypothesis_pass and rep.min_abs_det < rep.floor


def test_certify_deterministic():
    scan = cv.LevelSetScan(EUC2, 0.7, 300, seed=5)
    assert cv.certify_level_set(scan).as_dict() == cv.certify_level_set(scan).as_dict()


def test_empty_level_set():
    # |x - y| <= 2 inside the unit ball, so the level 5 is never reached
    with pytest.raises(LevelSetEmptyError) as info:
        cv.certify_level_set(cv.LevelSetScan(EUC2, 5.0, 10, seed=0), max_draws=10_000)
    assert "draws" in info.value.diagnostics
