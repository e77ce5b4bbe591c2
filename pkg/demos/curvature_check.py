"""Checking the rotational curvature condition on level sets.

The bordered determinant of (grad_x phi, grad_y phi, mixed Hessian) is sampled on
{phi = t}. The parabolic phase and the Euclidean distance stay away from zero;
the quartic norm loses curvature on the coordinate axes and fails.
"""
from latshell import FDScheme, LevelSetScan, ball, certify_level_set, difference_gauge, parabolic, pball

cases = [("parabolic d=2", parabolic(2), 0), ("euclidean d=3", difference_gauge(ball(3)), 0),
         ("quartic d=2", difference_gauge(pball(4, 2)), 8)]
for name, phi, axis in cases:
    rep = certify_level_set(LevelSetScan(phi, 1.0, 1000, seed=1, axis_samples=axis), FDScheme())
    print(f"{name:14s} min|det| = {rep.min_abs_det:.3e}  min|grad_x| = {rep.min_grad_x_norm:.3f}  "
          f"{'pass' if rep.hypothesis_pass else 'FAIL'}")
