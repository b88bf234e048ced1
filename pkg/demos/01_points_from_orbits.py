"""Rational points on C_n from the orbits of the digit map.

Walks through (p, n) = (3, 3): the admissible indices, their orbits, the
coefficient assignments each orbit allows, and the resulting points, each
checked against x - A_n x^p = y^p.
"""

from genuschange import enumerate_points, make_curve, verify_point
from genuschange.curves import assignment_count
from genuschange.orbits import IndexParams, admissible_indices, orbit_decomposition
from genuschange.poly import format_ratfn

p, n = 3, 3
params = IndexParams(p, n)
curve = make_curve(p, n)
print(f"C_{n}: x - a x^{p} = y^{p} with a = {format_ratfn(curve.a)}")

print("admissible indices:", admissible_indices(params))
for o in orbit_decomposition(params):
    print(f"  orbit of length {o.length}: {' -> '.join(map(str, o.members))}")

# over F_p every orbit contributes p choices; over F_{p^2n} an orbit of
# length r contributes p^r
for k in (1, 2 * n):
    print(f"F_{p}^{k}(t): {assignment_count(p, n, k)} assignments")

points = enumerate_points(curve, 1)
assert all(verify_point(curve, pt.x, pt.y) for pt in points)
print(f"{len(points)} points over F_{p}(t), all on the curve; the first three:")
for pt in points[:3]:
    print(f"  x = {format_ratfn(pt.x)}")
    print(f"  y = {format_ratfn(pt.y)}")

big = enumerate_points(curve, 2 * n)
print(f"{len(big)} points over F_{p}^{2 * n}(t), p^(2^n) = {p ** 2**n}")
