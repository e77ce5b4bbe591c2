import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from latshell import geometry as g
from latshell.errors import InvalidArgument

BODIES = [g.ball(2), g.ball(3), g.ellipsoid([[1, 0], [0, 4]]), g.ellipsoid([[2, 1, 0], [1, 3, 1], [0, 1, 2]]),
          g.pball(4, 2), g.pball(4, 3), g.pball(6, 2)]


def test_gauge_examples():
    assert g.gauge(g.ball(2), [3, 4]) == 5
    assert g.gauge(g.ellipsoid([[1, 0], [0, 4]]), [0, 1]) == 2
    assert g.gauge(g.pball(4, 2), [1, 1]) == pytest.approx(2 ** 0.25, abs=1e-6)
    assert g.gauge(g.ball(3), [0, 0, 0]) == 0
    assert g.gauge(g.pball(4, 3), np.zeros(3)) == 0


def test_gauge_dimension_mismatch():
    with pytest.raises(InvalidArgument):
        g.gauge(g.ball(3), [1, 2])


def test_predicate_examples():
    assert g.shell_predicate_exact(g.ball(2), (3, 4), 5, 0, "closed")
    assert not g.shell_predicate_exact(g.ball(2), (3, 4), 5, 0, "half_open")
    # 2 <= 17**(1/4) <= 21/10: 16 <= 17 and 17 * 10**4 <= 21**4
    assert 17 * 10 ** 4 <= 21 ** 4
    assert g.shell_predicate_exact(g.pball(4, 2), (2, 1), 2, Fraction(1, 10), "closed")


def test_volume_examples():
    assert g.volume(g.ball(2)) == pytest.approx(math.pi, rel=1e-14)
    assert g.volume(g.ellipsoid([[1, 0], [0, 4]])) == pytest.approx(math.pi / 2, rel=1e-14)
    # independent oracle: area of |x|^4 + |y|^4 <= 1 by quadrature
    area = 4 * integrate.quad(lambda x: (1 - x ** 4) ** 0.25, 0, 1, epsabs=1e-13)[0]
    assert g.volume(g.pball(4, 2)) == pytest.approx(area, rel=1e-9)
    assert area == pytest.approx(3.7081, abs=1e-4)
    assert g.volume(g.ball(3)) == pytest.approx(4 * math.pi / 3, rel=1e-14)


def test_pball_volume_3d_quadrature():
    vol = 8 * integrate.dblquad(lambda y, x: max(1 - x ** 4 - y ** 4, 0) ** 0.25,
                                0, 1, 0, lambda x: (1 - x ** 4) ** 0.25, epsabs=1e-11)[0]
    assert g.volume(g.pball(4, 3)) == pytest.approx(vol, rel=1e-7)


@pytest.mark.parametrize("body", BODIES, ids=str)
def test_homogeneity_symmetry_triangle(body):
    rng = np.random.default_rng(7)
    x = rng.normal(size=(10_000, body.dim)) * rng.uniform(0.01, 100, size=(10_000, 1))
    y = rng.normal(size=(10_000, body.dim))
    gx = g.gauge(body, x)
    for t in (2.0, 10.0, 1 / 3):
        gt = g.gauge(body, t * x)
        assert np.all(np.abs(gt - t * gx) <= 1e-12 * gt)
    assert np.array_equal(g.gauge(body, -x), gx)
    assert np.all(g.gauge(body, x + y) <= gx + g.gauge(body, y) + 1e-12)


@pytest.mark.parametrize("body", BODIES, ids=str)
def test_exact_predicate_matches_float_away_from_boundary(body):
    rng = np.random.default_rng(11)
    R, delta = Fraction(37, 3), Fraction(5, 2)
    pts = rng.integers(-20, 21, size=(10_000, body.dim))
    vals = g.gauge(body, pts)
    lo, hi = float(R), float(R + delta)
    checked = 0
    for k, v in zip(pts, vals):
        if min(abs(v - lo), abs(v - hi)) <= 1e-6:
            continue
        checked += 1
        assert g.shell_predicate_exact(body, k, R, delta, "closed") == (lo <= v <= hi)
    assert checked > 9000


def test_power_form_vectorized_matches_scalar():
    rng = np.random.default_rng(3)
    for body in BODIES:
        pts = rng.integers(-50, 51, size=(200, body.dim))
        vec = g.power_form(body, pts)
        assert [int(v) for v in vec] == [g.power_form_int(body, p) for p in pts]
        big = pts.astype(object) * 10 ** 9
        assert [int(v) for v in g.power_form(body, big)] == [g.power_form_int(body, p) for p in big]


def test_body_validation():
    with pytest.raises(InvalidArgument):
        g.pball(3, 2)
    with pytest.raises(InvalidArgument):
        g.ellipsoid([[1, 2], [2, 1]])  # indefinite
    with pytest.raises(InvalidArgument):
        g.ellipsoid([[1, 1], [0, 1]])
    with pytest.raises(InvalidArgument):
        g.ball(1)


def test_body_config_roundtrip():
    for cfg in ({"kind": "pball", "p": 4, "dim": 3}, {"kind": "ball", "dim": 2},
                {"kind": "ellipsoid", "dim": 2, "matrix": [[1, 0], [0, 4]]}):
        body = g.body_from_dict(cfg)
        assert g.body_to_dict(body) == cfg
    with pytest.raises(InvalidArgument):
        g.body_from_dict({"kind": "cube", "dim": 2})


def test_enclosing_box_contains_body():
    rng = np.random.default_rng(5)
    for body in BODIES:
        box = g.enclosing_box(body, 7)
        u = rng.normal(size=(2000, body.dim))
        u = 7 * u / g.gauge(body, u)[:, None]
        assert np.all(np.abs(u) <= np.array(box))
