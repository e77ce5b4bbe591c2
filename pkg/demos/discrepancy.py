"""Lattice discrepancy N(R) - |B| R^d for the unit ball in three dimensions."""
from latshell import ball, discrepancy
from latshell.analysis import drop_nonpositive, fit_exponent

body = ball(3)
rows = [(R, abs(discrepancy(body, R))) for R in range(2, 101, 2)]
for R, D in rows[::7]:
    print(f"R = {R:3d}  |D| = {D:12.3f}  |D| / R^1.4651 = {D / R ** (1 + 20 / 43):.3f}")
kept, dropped = drop_nonpositive(rows)
print(f"log-log slope of |D|: {fit_exponent(kept).slope:.3f} ({dropped} zero rows dropped)")
