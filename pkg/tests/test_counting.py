import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latshell import counting as ct
from latshell import geometry as g
from latshell import phase as ph
from latshell._exact import iroot
from latshell.errors import InvalidArgument, TooLargeError, UnsupportedPhaseError

BODIES = [g.ball(2), g.ball(3), g.ellipsoid([[1, 0], [0, 4]]), g.ellipsoid([[2, 1], [1, 3]]),
          g.pball(4, 2), g.pball(4, 3)]
PHASES = [ph.parabolic(2), ph.parabolic(3), ph.difference_gauge(g.ball(2)),
          ph.difference_gauge(g.pball(4, 2)), ph.difference_gauge(g.ellipsoid([[2, 1], [1, 3]]))]


def shell(body, R, delta=0, conv="closed", method="fiber"):
    q = ct.ShellQuery(body, R, delta, conv)
    return (ct.shell_count_fiber(q) if method == "fiber" else ct.shell_count_brute(q)).count


def pairs(phi, q, delta=0, C=1, conv="closed", method="diff_weight", workers=1):
    query = ct.PairQuery(phi, q, delta, C, conv)
    fn = ct.pair_count_diff_weight if method == "diff_weight" else ct.pair_count_brute
    return fn(query, workers=workers).count


def loop_shell_count(body, R, delta, conv):
    """Plain-Python oracle: enumerate a box and compare exact power forms."""
    R, delta = Fraction(R), Fraction(delta)
    e = body.exponent
    span = int(math.ceil(float(R + delta) * max(g.coordinate_radius(body)))) + 1
    total = 0
    for k in itertools.product(range(-span, span + 1), repeat=body.dim):
        F = g.power_form_int(body, k)
        hi = F * (R + delta).denominator ** e <= (R + delta).numerator ** e
        if conv == "closed":
            lo = F * R.denominator ** e >= R.numerator ** e
        else:
            lo = F * R.denominator ** e > R.numerator ** e
        total += lo and hi
    return total


def test_shell_examples():
    for method in ("fiber", "brute"):
        assert shell(g.ball(2), 5, method=method) == 12
        assert shell(g.ball(2), 0, method=method) == 1
        assert shell(g.ball(3), 1, method=method) == 6
    assert shell(g.pball(4, 2), 10, Fraction(1, 2)) == shell(g.pball(4, 2), 10, Fraction(1, 2), method="brute") == 60
    assert shell(g.ellipsoid([[1, 0], [0, 4]]), 3) == shell(g.ellipsoid([[1, 0], [0, 4]]), 3, method="brute") == 2


@pytest.mark.parametrize("body", BODIES, ids=str)
def test_shell_against_loop_oracle(body):
    for R, delta, conv in [(Fraction(7, 2), Fraction(1, 3), "closed"), (4, 1, "half_open"), (3, 0, "closed")]:
        expected = loop_shell_count(body, R, delta, conv)
        assert shell(body, R, delta, conv) == expected
        assert shell(body, R, delta, conv, "brute") == expected


def test_ball_count_examples():
    assert ct.ball_count(g.ball(2), 1).count == 5
    assert ct.ball_count(g.ball(2), 2).count == 13
    for body in BODIES:
        assert ct.ball_count(body, 0).count == 1


def test_discrepancy_examples():
    assert ct.discrepancy(g.ball(2), 1) == pytest.approx(5 - math.pi, abs=1e-12)
    assert ct.discrepancy(g.ball(2), 2) == pytest.approx(13 - 4 * math.pi, abs=1e-12)
    assert ct.discrepancy(g.ball(2), 0) == 1


def test_large_quartic_uses_big_integers():
    # F = x^4 + y^4 reaches 10^20 here, past the int64 range
    R = 10 ** 5 + Fraction(1, 3)
    body = g.pball(4, 2)
    lim = math.floor(R)
    R4n, R4d = R.numerator ** 4, R.denominator ** 4
    expected = sum(2 * iroot((R4n - x ** 4 * R4d) // R4d, 4) + 1 for x in range(-lim, lim + 1))
    assert ct.ball_count(body, R).count == expected


def test_brute_guard():
    with pytest.raises(TooLargeError, match="fiber"):
        ct.shell_count_brute(ct.ShellQuery(g.ball(3), 10 ** 4, 1))
    with pytest.raises(TooLargeError):
        ct.pair_count_brute(ct.PairQuery(ph.parabolic(2), 1000))


def test_query_validation():
    with pytest.raises(InvalidArgument):
        ct.ShellQuery(g.ball(2), -1)
    with pytest.raises(InvalidArgument):
        ct.PairQuery(ph.parabolic(2), 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BODIES), st.fractions(0, 12, max_denominator=7),
       st.fractions(0, 3, max_denominator=5), st.sampled_from(["closed", "half_open"]))
def test_fiber_equals_brute(body, R, delta, conv):
    assert shell(body, R, delta, conv) == shell(body, R, delta, conv, "brute")


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(BODIES), st.fractions(0, 20, max_denominator=9), st.fractions(0, 5, max_denominator=9))
def test_telescoping(body, R, delta):
    diff = ct.ball_count(body, R + delta).count - ct.ball_count(body, R).count
    assert diff == shell(body, R, delta, "half_open")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(BODIES), st.fractions(0, 15, max_denominator=4),
       st.lists(st.fractions(0, 4, max_denominator=6), min_size=2, max_size=5),
       st.sampled_from(["closed", "half_open"]))
def test_monotone_in_delta_and_R(body, R, deltas, conv):
    deltas = sorted(deltas)
    counts = [shell(body, R, d, conv) for d in deltas]
    assert counts == sorted(counts)
    balls = [ct.ball_count(body, R + d).count for d in deltas]
    assert balls == sorted(balls)


def test_pair_examples():
    par = ph.parabolic(2)
    assert pairs(par, 1) == pairs(par, 1, method="brute") == 10
    assert pairs(ph.difference_gauge(g.ball(2)), 5, C=0) == 0
    assert pairs(par, 1, conv="half_open") == pairs(par, 1, conv="half_open", method="brute") == 0
    euc = ph.difference_gauge(g.ball(2))
    assert pairs(euc, 5, C=2) == pairs(euc, 5, C=2, method="brute") == 3792


def test_tent_weight_at_zero():
    assert ct.tent_weights(np.zeros((1, 2), dtype=np.int64), [3, 3])[0] == 9


def test_pair_loop_oracle():
    # pure-Python double loop for the parabolic phase at q = 8 (box 9 x 33)
    par = ph.parabolic(2)
    pts = list(itertools.product(range(-4, 5), range(-16, 17)))
    expected = sum(1 for (n1, n2) in pts for (m1, m2) in pts if (n2 - m2) - (n1 - m1) ** 2 == 16)
    assert pairs(par, 8) == expected == ct.sharpness_count(2, 2).count == 697


@pytest.mark.parametrize("phi", PHASES, ids=str)
def test_pair_diff_weight_equals_brute(phi):
    rng = np.random.default_rng(hash(str(phi)) % 2 ** 32)
    checked = 0
    for _ in range(20):
        q = Fraction(int(rng.integers(1, 13)), int(rng.integers(1, 4)))
        delta = Fraction(int(rng.integers(0, 7)), 4)
        C = Fraction(int(rng.integers(1, 5)), 2)
        conv = ["closed", "half_open"][int(rng.integers(0, 2))]
        setup = ct._pair_setup(ct.PairQuery(phi, q, delta, C, conv))
        if math.prod(2 * h + 1 for h in setup.half_widths) > 1500:
            continue
        checked += 1
        assert pairs(phi, q, delta, C, conv) == pairs(phi, q, delta, C, conv, "brute")
    assert checked >= 5


@pytest.mark.parametrize("body", [g.ball(2), g.pball(4, 2), g.ellipsoid([[2, 1], [1, 3]]), g.ball(3)], ids=str)
def test_shell_symmetry(body):
    R, delta = Fraction(9, 2), Fraction(3, 2)
    inside = [k for k in itertools.product(range(-8, 9), repeat=body.dim)
              if g.shell_predicate_exact(body, k, R, delta, "closed")]
    assert all(g.shell_predicate_exact(body, tuple(-c for c in k), R, delta, "closed") for k in inside)
    assert len(inside) == shell(body, R, delta)


def test_pair_symmetry_for_difference_gauge():
    # negating all coordinates maps the box to itself and keeps |x - y|_B
    phi = ph.difference_gauge(g.pball(4, 2))
    setup = ct._pair_setup(ct.PairQuery(phi, 4, 1, 1))
    H = setup.half_widths
    pts = list(itertools.product(*(range(-h, h + 1) for h in H)))
    neg = [tuple(-c for c in p) for p in pts]
    assert sorted(neg) == sorted(pts)
    assert pairs(phi, 4, 1) == pairs(phi, 4, 1, method="brute")


def test_unsupported_phase():
    class Pinned(ph.PhaseFunction):
        @property
        def translation_invariant(self):
            return False

    phi = Pinned("parabolic", 2, ph.parabolic(2).alpha, ph.parabolic(2).beta)
    with pytest.raises(UnsupportedPhaseError):
        ct.pair_count_diff_weight(ct.PairQuery(phi, 1))


def test_sharpness_examples():
    assert ct.sharpness_count(2, 1).count == 10
    assert ct.sharpness_count(2, 3).count == pairs(ph.parabolic(2), 27)
    assert ct.sharpness_count(3, 1).count == pairs(ph.parabolic(3), 1)
    for t in (1, 2, 5):
        assert ct.sharpness_count(2, t, C=0).count == 0


def test_theorem_bound_examples():
    assert ct.theorem_bound(100, 0, 2, 1) == pytest.approx(100 ** (2 / 3))
    assert ct.theorem_bound(100, 1, 2, 1) == pytest.approx(100)
    assert ct.theorem_bound(64, 0, 3, Fraction(3, 2)) == pytest.approx(512)


def test_theorem_bound_constant_stable():
    phi = ph.parabolic(2)
    ratios = []
    for t in range(1, 7):
        q = t ** 3
        for delta in (0, 1):
            c = pairs(phi, q, delta)
            ratios.append((q, q ** -2 * c / ct.theorem_bound(q, delta, 2, phi.beta)))
    qs = sorted({q for q, _ in ratios})
    lower = max(r for q, r in ratios if q <= qs[len(qs) // 2 - 1])
    upper = max(r for q, r in ratios if q > qs[len(qs) // 2 - 1])
    assert upper <= 2 * lower


def test_worker_count_invariance():
    q = ct.ShellQuery(g.ball(3), 60, 1)
    assert ct.shell_count_fiber(q, workers=1).count == ct.shell_count_fiber(q, workers=8).count
    pq = ct.PairQuery(ph.parabolic(2), 64, 1)
    assert ct.pair_count_diff_weight(pq, 1).count == ct.pair_count_diff_weight(pq, 8).count
    assert ct.sharpness_count(2, 6, workers=1).count == ct.sharpness_count(2, 6, workers=8).count
