"""Curves x - a*x^p = y^p over F_p(t) and their constructed rational points.

The curve C_n has coefficient A_n(t) = sum_{k=0}^{p-2} t^(k(q+1)+1), q = p^n.
Its points with x = a(t)/(t^(q+1) - 1), deg a < q, come from coefficient
vectors (alpha_i) supported on admissible indices with
alpha_i = alpha_{phi(i)}^p; each phi-orbit of length r contributes one free
value from the Frobenius-fixed subfield of degree gcd(r, k).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import ConstructionError
from .field import FieldCtx, get_field, subfield_codes
from .orbits import IndexParams, Orbit, bound_holds, orbit_decomposition
from .poly import RatFn, SparsePoly, poly_pth_root, ratfn_pth_root


def curve_coefficient(p: int, n: int) -> SparsePoly:
    """A_n(t) = t + t^(q+2) + ... + t^((p-2)q + p - 1) over GF(p)."""
    q = IndexParams(p, n).q
    return SparsePoly.from_ints(get_field(p), {k * (q + 1) + 1: 1 for k in range(p - 1)})


@dataclass(frozen=True)
class Curve:
    """The plane curve x - a*x^p = y^p with a in F_p(t) not a p-th power.

    ``n`` is kept for curves built by :func:`make_curve`; for a general
    coefficient it only records which q the point construction would use.
    """

    p: int
    n: int
    a: RatFn

    def __post_init__(self):
        if self.a.ctx != get_field(self.p):
            raise ValueError("curve coefficient must live in F_p(t)")
        if self.a.is_zero() or ratfn_pth_root(self.a) is not None:
            raise ValueError(f"coefficient {self.a} is a p-th power in F_{self.p}(t)")

    @property
    def q(self) -> int:
        return self.p**self.n

    @cached_property
    def params(self) -> IndexParams:
        return IndexParams(self.p, self.n)

    @property
    def is_standard(self) -> bool:
        """True when a is exactly A_n, so the orbit construction applies."""
        return self.a == RatFn.from_poly(curve_coefficient(self.p, self.n))

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "a": self.a.to_json()}


def make_curve(p: int, n: int) -> Curve:
    return Curve(p, n, RatFn.from_poly(curve_coefficient(p, n)))


def family_coefficient(p: int, u: RatFn) -> RatFn:
    """t * f(u) with f(u) = 1 + u + ... + u^(p-2)."""
    if u.ctx.p != p:
        raise ValueError("u must be a rational function over a field of characteristic p")
    ctx = u.ctx
    # f(N/D) = (sum N^i D^(p-2-i)) / D^(p-2): one normalisation at the end
    hom = SparsePoly.zero(ctx)
    for i in range(p - 1):
        hom = hom + u.num**i * u.den ** (p - 2 - i)
    return RatFn(hom.shift(1), u.den ** (p - 2))


# -- coefficient assignments ----------------------------------------------------

@dataclass(frozen=True)
class CoeffAssignment:
    """alpha_i values (field codes) at admissible indices; zero elsewhere."""

    ctx: FieldCtx
    alpha: tuple[tuple[int, int], ...]

    def numerator(self) -> SparsePoly:
        return SparsePoly._raw(self.ctx, {i: c for i, c in self.alpha if c})

    def as_dict(self) -> dict[int, int]:
        return dict(self.alpha)

    def to_json(self) -> list:
        return [[i, list(self.ctx.coeffs(c))] for i, c in self.alpha]


def orbit_choices(orbit: Orbit, ctx: FieldCtx) -> list[int]:
    """Allowed values at the orbit representative: beta with beta^(p^r) = beta."""
    return subfield_codes(ctx, orbit.length)


def propagate(orbit: Orbit, beta: int, ctx: FieldCtx) -> list[tuple[int, int]]:
    """alpha at the j-th member is beta^(p^((r - j) mod r))."""
    r = orbit.length
    return [(i, ctx.frob(beta, (r - j) % r)) for j, i in enumerate(orbit.members)]


def assignment_count(p: int, n: int, k: int) -> int:
    """p^(sum over orbits of gcd(r, k))."""
    orbits = orbit_decomposition(IndexParams(p, n))
    return p ** sum(math.gcd(o.length, k) for o in orbits)


def enumerate_assignments(curve: Curve, k: int) -> Iterator[CoeffAssignment]:
    """All orbit-compatible assignments over GF(p^k), in a fixed order.

    The first orbit varies slowest; within an orbit values follow the
    canonical element order.
    """
    ctx = get_field(curve.p, k)
    orbits = orbit_decomposition(curve.params)
    per_orbit = [[propagate(o, b, ctx) for b in orbit_choices(o, ctx)] for o in orbits]
    for combo in itertools.product(*per_orbit):
        alpha = sorted(itertools.chain.from_iterable(combo))
        yield CoeffAssignment(ctx, tuple(alpha))


def satisfies_recurrence(alpha: dict[int, int], p: int, n: int, ctx: FieldCtx) -> bool:
    """The three-case coefficient relations, checked at every i in [0, q).

    alpha_i = alpha_{(i+q)/p}^p for i = 0 (mod p), alpha_i = alpha_{(i-1)/p}^p
    for i = 1 (mod p), alpha_i = 0 otherwise.
    """
    q = p**n
    for i in range(q):
        a_i = alpha.get(i, 0)
        r = i % p
        if r == 0:
            want = ctx.frob(alpha.get((i + q) // p, 0))
        elif r == 1:
            want = ctx.frob(alpha.get((i - 1) // p, 0))
        else:
            want = 0
        if a_i != want:
            return False
    return True


# -- points ---------------------------------------------------------------------

@dataclass(eq=False)
class AffinePoint:
    """A point (x, y) in F_{p^k}(t)^2.

    The raw fractions are kept as built (x over the fixed denominator
    t^(q+1) - 1); ``x`` and ``y`` give the reduced forms, computed on first
    use.  Equality and serialization use the reduced forms.
    """

    x_raw: tuple[SparsePoly, SparsePoly]
    y_raw: tuple[SparsePoly, SparsePoly]
    provenance: CoeffAssignment | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def ctx(self) -> FieldCtx:
        return self.x_raw[0].ctx

    @property
    def x(self) -> RatFn:
        if "x" not in self._cache:
            self._cache["x"] = RatFn(*self.x_raw)
        return self._cache["x"]

    @property
    def y(self) -> RatFn:
        if "y" not in self._cache:
            self._cache["y"] = RatFn(*self.y_raw)
        return self._cache["y"]

    @classmethod
    def from_ratfns(cls, x: RatFn, y: RatFn, provenance=None) -> AffinePoint:
        pt = cls((x.num, x.den), (y.num, y.den), provenance)
        pt._cache.update(x=x, y=y)
        return pt

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffinePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def to_json(self, curve: Curve) -> dict:
        ctx = self.ctx
        return {
            "p": curve.p,
            "n": curve.n,
            "k": ctx.k,
            "modulus": list(ctx.modulus),
            "alpha": self.provenance.to_json() if self.provenance else [],
            "x": self.x.to_json(),
            "y": self.y.to_json(),
        }


class _PointBuilder:
    """Per-(curve, field) constants for turning assignments into points."""

    def __init__(self, curve: Curve, ctx: FieldCtx):
        p = curve.p
        self.curve = curve
        self.ctx = ctx
        self.alpha_a = curve.a.num.lift(ctx)
        self.beta_a = curve.a.den.lift(ctx)
        self.D = SparsePoly.monomial(ctx, curve.q + 1) - SparsePoly.one(ctx)
        self.D_pm1 = self.D ** (p - 1)
        self.beta_pm1 = self.beta_a ** (p - 1)
        self.y_den = self.D * self.beta_a

    def build(self, asg: CoeffAssignment) -> AffinePoint:
        a = asg.numerator()
        # x - A x^p = M / (beta D)^p with M below; (beta D)^p is a p-th power,
        # so the difference is a p-th power iff M is.
        m = (a * self.D_pm1 * self.beta_a - self.alpha_a * a.frobenius()) * self.beta_pm1
        root = poly_pth_root(m)
        if root is None:
            raise ConstructionError(f"x - a x^p is not a p-th power for alpha = {asg.alpha}")
        return AffinePoint((a, self.D), (root, self.y_den), asg)


def assignment_to_point(curve: Curve, asg: CoeffAssignment) -> AffinePoint:
    return _PointBuilder(curve, asg.ctx).build(asg)


def verify_point(curve: Curve, x: RatFn, y: RatFn) -> bool:
    """x - a*x^p == y^p in F_{p^k}(t).

    Compared by clearing denominators, which for reduced fractions is the
    same as comparing the reduced forms of both sides.
    """
    if x.ctx != y.ctx or x.ctx.p != curve.p:
        raise ValueError("point coordinates must share a field of characteristic p")
    ctx = x.ctx
    alpha, beta = curve.a.num.lift(ctx), curve.a.den.lift(ctx)
    n, d = x.num, x.den
    m, e = y.num, y.den
    lhs = (n * d ** (curve.p - 1) * beta - alpha * n.frobenius()) * e.frobenius()
    rhs = m.frobenius() * d.frobenius() * beta
    return lhs == rhs


def _build_chunk(args):
    curve, k, alphas = args
    ctx = get_field(curve.p, k)
    builder = _PointBuilder(curve, ctx)
    return [builder.build(CoeffAssignment(ctx, a)) for a in alphas]


def enumerate_points(curve: Curve, k: int = 1, limit: int | None = None,
                     workers: int = 1, chunk: int = 512) -> list[AffinePoint]:
    """Points from every assignment over GF(p^k), in assignment order.

    ``limit`` keeps a deterministic prefix.  With ``workers > 1`` chunks are
    built in a process pool; the order of the result does not depend on it.
    """
    if not curve.is_standard:
        raise ValueError("the orbit construction applies only to the curves C_n")
    asgs = enumerate_assignments(curve, k)
    if limit is not None:
        asgs = itertools.islice(asgs, limit)
    asgs = list(asgs)
    if workers > 1 and len(asgs) > chunk:
        chunks = [tuple(a.alpha for a in asgs[i:i + chunk]) for i in range(0, len(asgs), chunk)]
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_build_chunk, [(curve, k, c) for c in chunks])
            points = [pt for part in parts for pt in part]
        for pt, asg in zip(points, asgs):
            pt.provenance = asg
    else:
        builder = _PointBuilder(curve, get_field(curve.p, k))
        points = [builder.build(a) for a in asgs]
    # same fixed denominator everywhere, so distinct numerators mean distinct x
    if len({pt.x_raw[0] for pt in points}) != len(points):
        raise ConstructionError("two assignments produced the same x-coordinate")
    return points


def verify_bounds(p: int, n: int) -> dict:
    """Orbit count, point counts over F_p(t) and F_{p^2n}(t), and both bound checks."""
    params = IndexParams(p, n)
    orbits = orbit_decomposition(params)
    n_orb = len(orbits)
    lengths = [o.length for o in orbits]
    exp_small = sum(math.gcd(r, 1) for r in lengths)
    exp_big = sum(math.gcd(r, 2 * n) for r in lengths)
    return {
        "p": p,
        "n": n,
        "q": params.q,
        "n_orbits": n_orb,
        "orbit_lengths": lengths,
        "admissible": sum(lengths),
        "count_Fp_exponent": exp_small,
        "count_Fp": p**exp_small,
        "count_Fp2n_exponent": exp_big,
        "count_Fp2n": p**exp_big,
        "bound_Fp": bound_holds(params, n_orb),
        "bound_Fp2n": exp_big == 2**n,
        "lengths_divide_2n": all((2 * n) % r == 0 for r in lengths),
    }


def constructed_numerators(curve: Curve, k: int) -> list[SparsePoly]:
    return [a.numerator() for a in enumerate_assignments(curve, k)]


def point_from_x(curve: Curve, x: RatFn) -> AffinePoint | None:
    """The point over x when x - a*x^p is a p-th power, else None."""
    ctx = x.ctx
    w = x - curve.a.lift(ctx) * x.frobenius()
    y = ratfn_pth_root(w)
    return None if y is None else AffinePoint.from_ratfns(x, y)


def sorted_points(points: Sequence[AffinePoint]) -> list[AffinePoint]:
    return sorted(points, key=lambda pt: pt.x.sort_key())
