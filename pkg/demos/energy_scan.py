"""Discrete s-energies of anisotropic grids as q grows.

At s = 1.5 the scans are nearly flat. Closer to s = d the energy still creeps
upward over this range of q, because the remaining tail shrinks only like q^-(d-s).
"""
import math
from fractions import Fraction

from latshell.energy import energy_scan

for alpha, qs in (((1, 1), [8, 16, 32, 64, 128]), ((Fraction(2, 3), Fraction(4, 3)), [8, 27, 64, 125])):
    for s in (1.5, 1.9):
        rep = energy_scan(2, alpha, 1, s, qs, workers=4)
        values = ", ".join(f"{E:.3f}" for _, E, _ in rep.rows)
        print(f"alpha={tuple(str(a) for a in alpha)} s={s}: {values}  slope {rep.fitted_slope:+.3f}")

# local slopes shrink as q grows
rep = energy_scan(2, (1, 1), 1, 1.9, [8, 16, 32, 64, 128, 256, 512], workers=4)
for (q0, e0, _), (q1, e1, _) in zip(rep.rows, rep.rows[1:]):
    print(f"  local slope {q0}->{q1}: {math.log(e1 / e0) / math.log(q1 / q0):.3f}")
