"""Relative genus (p-1)(p-2)/2 against absolute genus 0.

For each p the Riemann-Roch count l(m) is tabulated and the genus read off
once the slope settles at p.  At p = 3 the count is repeated by exact
elimination over F_3(s).  Then the curve is parametrised over F_p(t^(1/p))
and every point over F_9(t) is pushed through the parametrisation.
"""

from genuschange import (
    absolute_parametrization_check,
    enumerate_points,
    make_curve,
    point_parameter_roundtrip,
    relative_genus,
    rr_dimension_fast,
    rr_dimension_oracle,
)
from genuschange.genus import genus_drop_report
from genuschange.poly import format_ratfn

for p in (3, 5, 7):
    curve = make_curve(p, 1)
    ells = [rr_dimension_fast(curve, m).ell for m in range(2 * p)]
    print(f"p={p}: l(m) for m < {2 * p}: {ells}")
    rep = genus_drop_report(curve, relative_genus(curve))
    print(f"  relative genus {rep['relative_genus']}, drop divisible by (p-1)/2: "
          f"{rep['divisible']} (quotient {rep['quotient']})")

curve = make_curve(3, 1)
print("oracle at p=3:", [rr_dimension_oracle(curve, m) for m in range(5)])

param = absolute_parametrization_check(curve)
print(f"a_hat(s) = {format_ratfn(param.a_hat, 's')}, with a_hat(s)^3 = a(s^3)")
pts = enumerate_points(curve, 2)
ok = all(point_parameter_roundtrip(curve, pt, param) for pt in pts)
print(f"z^p == x for all {len(pts)} points over F_9(t): {ok}")
