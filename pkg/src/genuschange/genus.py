"""Relative and absolute genus of x - a*x^p = y^p over K = F_p(t).

Relative genus: count l(D) for D = m * (pole divisor of x), a divisor of
degree p*m, and read g_K off l(D) = deg D + 1 - g_K once the slope of l in
m has settled at p.

Every function of K(C) is f = sum_{j<p} c_j(x) y^j, and f^p lies in K(x)
because y^p = x - a x^p.  f has poles only where x does, of order at most
m there, exactly when f^p is a polynomial in x of degree <= p*m.  If
1, a, ..., a^(p-1) are independent over K^p, the leading terms of the
summands c_j^p (x - a x^p)^j cannot cancel, so the condition becomes
deg c_j <= m - j and

    l(m) = sum_{j=0}^{p-1} max(0, m - j + 1).

:func:`rr_dimension_oracle` checks this count without assuming the
no-cancellation argument.  It substitutes delta_{j,d} = c_{j,d}^p (a
Frobenius-semilinear change of unknowns, which preserves dimension), writes
each coefficient above x^(pm) as a K-linear form in the delta, splits it
along the K^p-basis 1, t, ..., t^(p-1) into forms over K^p = F_p(s)
(s = t^p), and takes a kernel dimension by exact elimination.

Absolute genus 0 is shown by the parametrisation over F_p(s), t = s^p:
x = z^p, y = z - a_hat(s) z^p with a_hat(s)^p = a(s^p).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .curves import AffinePoint, Curve
from .errors import ConstructionError, ResourceError
from .field import get_field
from .linalg import nullity
from .poly import RatFn, SparsePoly, ratfn_pth_root

ORACLE_MAX_P = 3
ORACLE_MAX_M = 4


def not_pth_power_check(a: RatFn) -> bool:
    """True iff a is not in K^p (equivalently 1, a, ..., a^(p-1) are K^p-independent)."""
    if a.is_zero():
        raise ValueError("coefficient must be nonzero")
    return ratfn_pth_root(a) is None


@dataclass(frozen=True)
class RRReport:
    m: int
    ell: int
    deg: int
    genus_estimate: int

    def to_json(self) -> dict:
        return {"m": self.m, "ell": self.ell, "deg": self.deg,
                "genus_estimate": self.genus_estimate}


def _report(p: int, m: int, ell: int) -> RRReport:
    return RRReport(m=m, ell=ell, deg=p * m, genus_estimate=p * m + 1 - ell)


def rr_dimension_fast(curve: Curve, m: int) -> RRReport:
    if m < 0:
        raise ValueError("m must be non-negative")
    if not not_pth_power_check(curve.a):
        raise ValueError("dimension formula needs a coefficient outside K^p")
    p = curve.p
    ell = sum(max(0, m - j + 1) for j in range(p))
    return _report(p, m, ell)


def _split_residues(c: SparsePoly, p: int) -> list[SparsePoly]:
    """c(t) = sum_r t^r c_r(t^p); returns the c_r as polynomials in s."""
    parts: list[dict[int, int]] = [{} for _ in range(p)]
    for e, v in c.terms.items():
        parts[e % p][e // p] = v
    return [SparsePoly._raw(c.ctx, d) for d in parts]


def oracle_system(p: int, a: RatFn, m: int, bound: int) -> tuple[list[list[RatFn]], int]:
    """Conditions over F_p(s) on the unknowns delta_{j,d}, 0 <= j < p, 0 <= d <= bound.

    Returns (rows, number of unknowns).  Unknown (j, d) has column j*(bound+1)+d.
    Nothing here assumes a is outside K^p.
    """
    ctx = get_field(p)
    alpha, beta = a.num, a.den
    # a^i scaled by beta^(p-1) to stay polynomial
    scaled = [alpha**i * beta ** (p - 1 - i) for i in range(p)]
    width = bound + 1
    ncols = p * width
    by_exp: dict[int, dict[int, SparsePoly]] = {}
    for j in range(p):
        for d in range(width):
            col = j * width + d
            for i in range(j + 1):
                e = p * d + j + (p - 1) * i
                if e <= p * m:
                    continue
                coef = scaled[i].scale(ctx.embed_prime(comb(j, i) * (-1) ** i))
                row = by_exp.setdefault(e, {})
                row[col] = row[col] + coef if col in row else coef
    rows = []
    zero = RatFn.zero(ctx)
    for e in sorted(by_exp):
        split = {col: _split_residues(c, p) for col, c in by_exp[e].items()}
        for r in range(p):
            row = [zero] * ncols
            for col, parts in split.items():
                if parts[r].terms:
                    row[col] = RatFn.from_poly(parts[r])
            if any(not v.is_zero() for v in row):
                rows.append(row)
    return rows, ncols


def oracle_dimension(p: int, a: RatFn, m: int, bound: int) -> int:
    """Kernel dimension of :func:`oracle_system` for one degree window."""
    rows, ncols = oracle_system(p, a, m, bound)
    return nullity(rows, ncols)


def rr_dimension_oracle(curve: Curve, m: int, bound: int | None = None,
                        max_p: int = ORACLE_MAX_P, max_m: int = ORACLE_MAX_M) -> int:
    """dim L(m * div_inf(x)) by semilinear elimination.

    Runs with degree windows B = m and B = m + p (or ``bound`` and
    ``bound + p``) and requires both to agree.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if curve.p > max_p or m > max_m:
        raise ResourceError(f"oracle limited to p <= {max_p}, m <= {max_m}")
    if not not_pth_power_check(curve.a):
        raise ValueError("oracle needs a coefficient outside K^p")
    b = m if bound is None else bound
    if b < m:
        raise ValueError("degree window must be at least m")
    low = oracle_dimension(curve.p, curve.a, m, b)
    high = oracle_dimension(curve.p, curve.a, m, b + curve.p)
    if low != high:
        raise ConstructionError(
            f"oracle dimension depends on the degree window: {low} (B={b}) vs {high} (B={b + curve.p})")
    return low


def expected_relative_genus(p: int) -> int:
    return (p - 1) * (p - 2) // 2


def relative_genus(curve: Curve) -> int:
    """g_K from l(m) at m = p-1 and m = p, with the stable slope checked."""
    p = curve.p
    r1 = rr_dimension_fast(curve, p - 1)
    r2 = rr_dimension_fast(curve, p)
    if r1.genus_estimate != r2.genus_estimate:
        raise ConstructionError(f"genus estimates disagree: {r1} vs {r2}")
    if r2.ell - r1.ell != p:
        raise ConstructionError("Riemann-Roch slope has not stabilised at m = p - 1")
    g = r1.genus_estimate
    if curve.is_standard and g != expected_relative_genus(p):
        raise ConstructionError(f"relative genus {g} != (p-1)(p-2)/2 for C_n")
    return g


# -- absolute genus: parametrisation over F_p(s) ----------------------------------

def _zmul(f: dict[int, RatFn], g: dict[int, RatFn]) -> dict[int, RatFn]:
    out: dict[int, RatFn] = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return {e: c for e, c in out.items() if not c.is_zero()}


def _zadd(f: dict[int, RatFn], g: dict[int, RatFn], sign: int = 1) -> dict[int, RatFn]:
    out = dict(f)
    for e, c in g.items():
        c = c if sign > 0 else -c
        out[e] = out[e] + c if e in out else c
    return {e: c for e, c in out.items() if not c.is_zero()}


@dataclass(frozen=True)
class Parametrization:
    """x = z^p, y = z - a_hat(s) z^p over F_p(s), with t = s^p."""

    p: int
    a_hat: RatFn
    a_of_sp: RatFn

    def x_of(self, z: RatFn) -> RatFn:
        return z**self.p

    def y_of(self, z: RatFn) -> RatFn:
        ah = self.a_hat.lift(z.ctx)
        return z - ah * z**self.p

    def to_json(self) -> dict:
        return {"p": self.p, "a_hat": self.a_hat.to_json(), "a_of_sp": self.a_of_sp.to_json()}


def parametrization_identity(p: int, a_hat: RatFn, a_of_sp: RatFn) -> dict[int, RatFn]:
    """x(z) - a(s^p) x(z)^p - y(z)^p expanded in z; empty dict means identically 0.

    y(z)^p is expanded by repeated multiplication, not by Frobenius.
    """
    one = RatFn.one(a_hat.ctx)
    x = {p: one}
    y = _zadd({1: one}, {p: a_hat}, sign=-1)
    y_pow = {0: one}
    for _ in range(p):
        y_pow = _zmul(y_pow, y)
    x_pow = {p * p: one}
    ax_p = {e: a_of_sp * c for e, c in x_pow.items()}
    return _zadd(_zadd(x, ax_p, sign=-1), y_pow, sign=-1)


def absolute_parametrization_check(curve: Curve) -> Parametrization:
    p = curve.p
    a_of_sp = curve.a.compose_monomial(p)
    a_hat = ratfn_pth_root(a_of_sp)
    if a_hat is None or a_hat**p != a_of_sp:
        raise ConstructionError("a(s^p) has no p-th root")
    residue = parametrization_identity(p, a_hat, a_of_sp)
    if residue:
        raise ConstructionError(f"parametrisation identity fails: {residue}")
    return Parametrization(p, a_hat, a_of_sp)


def point_parameter_roundtrip(curve: Curve, pt: AffinePoint,
                              param: Parametrization | None = None) -> bool:
    """With t = s^p and z = y + a_hat x, check z^p == x."""
    if param is None:
        param = absolute_parametrization_check(curve)
    p = curve.p
    xs = pt.x.compose_monomial(p)
    ys = pt.y.compose_monomial(p)
    z = ys + param.a_hat.lift(xs.ctx) * xs
    return z**p == xs


def genus_drop_report(curve: Curve, genus: int | None = None) -> dict:
    """Drop from g_K to the absolute genus 0 and its divisibility by (p-1)/2."""
    p = curve.p
    g = relative_genus(curve) if genus is None else genus
    divisor = (p - 1) // 2
    return {
        "relative_genus": g,
        "absolute_genus": 0,
        "drop": g,
        "divisor": divisor,
        "divisible": g % divisor == 0,
        "quotient": g // divisor,
        "quotient_expected": p - 2 if curve.is_standard else None,
    }
