"""Pairs (n, m) of lattice points whose phase value sits near q^beta.

For the parabolic phase phi(x, y) = (x_2 - y_2) - (x_1 - y_1)^2 and q = t^3 the
count has a closed form, and its growth exponent 8/3 shows that the upper bound
max(q^(d-2+2/(d+1)), q^(d-beta) delta) cannot be improved at delta = 0.
"""
from latshell import PairQuery, pair_count_diff_weight, parabolic, sharpness_count, theorem_bound
from latshell.analysis import fit_exponent

phi = parabolic(2)
rows = []
for t in range(2, 9):
    q = t ** 3
    closed = sharpness_count(2, t).count
    if t <= 4:
        assert closed == pair_count_diff_weight(PairQuery(phi, q)).count
    rows.append((q, closed))
    print(f"q = {q:4d}  pairs = {closed:12d}  q^-2 pairs / bound = "
          f"{closed / q ** 2 / theorem_bound(q, 0, 2, phi.beta):.3f}")
print(f"fitted exponent {fit_exponent(rows).slope:.4f} vs 8/3 = {8 / 3:.4f}")
