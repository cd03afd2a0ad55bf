"""Built-in codes and what the package computes about them.

The 24-cell is the star exhibit: 24 unit vectors in R^4 whose pairwise
inner products never exceed 1/2, i.e. a kissing configuration. Its
distance distribution is exact rational data here, so the interval-mass
statements below are equalities, not approximations.
"""

from spherecert import builtin_code, distance_distribution, moment
from spherecert.data import load_expansion

for name in ("simplex4", "cross4", "24cell"):
    code = builtin_code(name)
    dist = distance_distribution(code)
    print(f"{name}: N = {code.size}, n = {code.n}")
    print("  distance distribution:", {str(t): str(m) for t, m in dist.entries.items()})
    print("  total mass = N - 1 =", dist.total_mass())
    print("  moments k=1..4:", [round(moment(code, k), 12) for k in range(1, 5)])
    print()

dist = distance_distribution(builtin_code("24cell"))
print("interval masses A(S) of the 24-cell (sharp for kissing configurations):")
for a, b in [(-1, -0.45), (-1, 0.05), (-0.55, 0.05), (-0.05, 0.5), (-1, -0.73), (0.35, 0.5)]:
    print(f"  A([{a}, {b}]) = {dist.interval_mass(a, b)}")

g1 = load_expansion("g1")
per_point = g1.eval(-1.0) + 8 * g1.eval(-0.5) + 6 * g1.eval(0.0) + 8 * g1.eval(0.5)
print(f"\nR_g1(24-cell) via the distribution: {per_point:.6f}")
print("(moments vanish through degree 4 above: the 24-cell is a spherical design)")
