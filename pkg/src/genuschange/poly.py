"""Sparse univariate polynomials and reduced rational functions over GF(p^k).

Polynomials map exponents to nonzero field codes.  Sparse storage fits the
curve construction, which handles polynomials of degree about p*q with only a
handful of terms.  Division and gcd switch to dense lists internally when the
degree is small enough, since Euclid's remainders fill in quickly.

Rational functions are always stored reduced with a monic denominator, so
``==`` is structural.

Over a finite field every coefficient has a p-th root, so a polynomial is a
p-th power exactly when all of its exponents are divisible by p; no test on
the coefficients is needed.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import ResourceError
from .field import FieldCtx, FieldElement, get_field

DEGREE_CAP = 2**40
DENSE_LIMIT = 1 << 14


def _check_degree(d: int) -> None:
    if d > DEGREE_CAP:
        raise ResourceError(f"degree {d} exceeds cap {DEGREE_CAP}")


class SparsePoly:
    """Polynomial over a finite field in one variable (``t`` by default)."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, terms: Mapping[int, int | FieldElement] | None = None):
        self.ctx = ctx
        clean: dict[int, int] = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            _check_degree(e)
            if isinstance(c, FieldElement):
                if c.ctx != ctx:
                    raise ValueError("coefficient from a different field")
                c = c.code
            elif not 0 <= c < ctx.order:
                raise ValueError(f"coefficient code {c} outside {ctx!r}")
            if c:
                clean[int(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: FieldCtx, terms: dict[int, int]) -> SparsePoly:
        # trusted constructor: terms already clean
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> SparsePoly:
        return cls._raw(ctx, {})

    @classmethod
    def one(cls, ctx: FieldCtx) -> SparsePoly:
        return cls._raw(ctx, {0: 1})

    @classmethod
    def monomial(cls, ctx: FieldCtx, e: int, c: int = 1) -> SparsePoly:
        _check_degree(e)
        return cls._raw(ctx, {e: c} if c else {})

    @classmethod
    def from_ints(cls, ctx: FieldCtx, terms: Mapping[int, int]) -> SparsePoly:
        """Prime-field coefficients given as integers (reduced mod p)."""
        return cls(ctx, {e: ctx.embed_prime(c) for e, c in terms.items()})

    @classmethod
    def from_dense(cls, ctx: FieldCtx, coeffs: Iterable[int]) -> SparsePoly:
        return cls._raw(ctx, {e: c for e, c in enumerate(coeffs) if c})

    # -- basic queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.terms) if self.terms else -1

    def lc_code(self) -> int:
        return self.terms[max(self.terms)] if self.terms else 0

    def lc(self) -> FieldElement:
        return FieldElement(self.ctx, self.lc_code())

    def coeff(self, e: int) -> FieldElement:
        return FieldElement(self.ctx, self.terms.get(e, 0))

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def items(self) -> list[tuple[int, FieldElement]]:
        return [(e, FieldElement(self.ctx, self.terms[e])) for e in sorted(self.terms)]

    def is_monic(self) -> bool:
        return self.lc_code() == 1

    def to_dense(self) -> list[int]:
        out = [0] * (self.degree() + 1)
        for e, c in self.terms.items():
            out[e] = c
        return out

    def lift(self, ctx: FieldCtx) -> SparsePoly:
        """View a prime-field polynomial inside an extension with the same p."""
        if ctx == self.ctx:
            return self
        if self.ctx.k != 1 or ctx.p != self.ctx.p:
            raise ValueError(f"cannot lift from {self.ctx!r} to {ctx!r}")
        return SparsePoly._raw(ctx, {e: ctx.embed_prime(c) for e, c in self.terms.items()})

    # -- ring operations -------------------------------------------------

    def _same(self, other: SparsePoly) -> None:
        if other.ctx != self.ctx:
            raise ValueError(f"field mismatch: {self.ctx!r} vs {other.ctx!r}")

    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            self._same(other)
            return other
        if isinstance(other, FieldElement):
            return SparsePoly(self.ctx, {0: other})
        if isinstance(other, int):
            return SparsePoly.from_ints(self.ctx, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.ctx.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return SparsePoly._raw(self.ctx, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        sub = self.ctx.sub
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = sub(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.ctx, out)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return SparsePoly.zero(self.ctx)
        _check_degree(self.degree() + other.degree())
        ctx = self.ctx
        out: dict[int, int] = {}
        get = out.get
        if ctx.backend == "prime":
            # accumulate plain integers, reduce once
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = e1 + e2
                    out[e] = get(e, 0) + c1 * c2
            p = ctx.p
            out = {e: v % p for e, v in out.items() if v % p}
        else:
            add, mul = ctx.add, ctx.mul
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = e1 + e2
                    out[e] = add(get(e, 0), mul(c1, c2))
            out = {e: v for e, v in out.items() if v}
        return SparsePoly._raw(ctx, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> SparsePoly:
        """Multiply by the field element with code c."""
        if c == 0:
            return SparsePoly.zero(self.ctx)
        mul = self.ctx.mul
        return SparsePoly._raw(self.ctx, {e: mul(v, c) for e, v in self.terms.items()})

    def shift(self, m: int) -> SparsePoly:
        """Multiply by t^m."""
        if self.terms:
            _check_degree(self.degree() + m)
        return SparsePoly._raw(self.ctx, {e + m: c for e, c in self.terms.items()})

    def frobenius(self) -> SparsePoly:
        """f^p, computed as exponent scaling plus coefficient Frobenius."""
        ctx = self.ctx
        if self.terms:
            _check_degree(self.degree() * ctx.p)
        if ctx.k == 1:
            return SparsePoly._raw(ctx, {e * ctx.p: c for e, c in self.terms.items()})
        frob = ctx.frob
        return SparsePoly._raw(ctx, {e * ctx.p: frob(c) for e, c in self.terms.items()})

    def map_coeffs(self, fn) -> SparsePoly:
        """Apply a field automorphism (given on codes) to every coefficient."""
        return SparsePoly._raw(self.ctx, {e: fn(c) for e, c in self.terms.items()})

    def __pow__(self, n: int) -> SparsePoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if self.terms:
            _check_degree(self.degree() * n)
        result = SparsePoly.one(self.ctx)
        base = self
        p = self.ctx.p
        # peel off the p-adic digits: f^(p*m) = (f^p)^m and f^p is cheap
        while n:
            n, r = divmod(n, p)
            for _ in range(r):
                result = result * base
            if n:
                base = base.frobenius()
        return result

    def __divmod__(self, other: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
        self._same(other)
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree() < other.degree():
            return SparsePoly.zero(self.ctx), self
        if self.degree() <= DENSE_LIMIT:
            q, r = _dense_divmod(self.to_dense(), other.to_dense(), self.ctx)
            return SparsePoly.from_dense(self.ctx, q), SparsePoly.from_dense(self.ctx, r)
        return _sparse_divmod(self, other)

    def __floordiv__(self, other: SparsePoly) -> SparsePoly:
        return divmod(self, other)[0]

    def __mod__(self, other: SparsePoly) -> SparsePoly:
        return divmod(self, other)[1]

    def exact_div(self, other: SparsePoly) -> SparsePoly:
        q, r = divmod(self, other)
        if r.terms:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> SparsePoly:
        if not self.terms:
            return self
        lc = self.lc_code()
        if lc == 1:
            return self
        return self.scale(self.ctx.inv(lc))

    def derivative(self) -> SparsePoly:
        ctx = self.ctx
        out = {}
        for e, c in self.terms.items():
            v = ctx.mul(c, ctx.embed_prime(e))
            if e and v:
                out[e - 1] = v
        return SparsePoly._raw(ctx, out)

    # -- equality, ordering, hashing ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int):
            return self == SparsePoly.from_ints(self.ctx, {0: other})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.p, self.ctx.k, frozenset(self.terms.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """Canonical order: by degree, then coefficients from the top down."""
        ctx = self.ctx
        return (self.degree(), tuple(ctx.sort_key(self.terms.get(e, 0))
                                      for e in range(self.degree(), -1, -1)))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"SparsePoly({format_poly(self)!r}, {self.ctx!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- serialization --------------------------------------------------

    def to_json(self) -> list:
        ctx = self.ctx
        return [[e, list(ctx.coeffs(self.terms[e]))] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: list) -> SparsePoly:
        return cls(ctx, {int(e): ctx.code(c) for e, c in data})


def _dense_divmod(a: list[int], b: list[int], ctx: FieldCtx) -> tuple[list[int], list[int]]:
    db = len(b) - 1
    inv = ctx.inv(b[-1])
    mul, sub = ctx.mul, ctx.sub
    lower = [(j, bj) for j, bj in enumerate(b[:-1]) if bj]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = mul(c, inv)
            off = i - db
            q[off] = c
            for j, bj in lower:
                a[off + j] = sub(a[off + j], mul(c, bj))
    r = a[:db]
    while r and not r[-1]:
        r.pop()
    return q, r


def _dense_rem(a: list[int], b: list[int], ctx: FieldCtx) -> list[int]:
    # same as _dense_divmod but without the quotient; works in place on a
    db = len(b) - 1
    inv = ctx.inv(b[-1])
    mul, sub = ctx.mul, ctx.sub
    lower = [(j, bj) for j, bj in enumerate(b[:-1]) if bj]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = mul(c, inv)
            off = i - db
            for j, bj in lower:
                a[off + j] = sub(a[off + j], mul(c, bj))
    del a[db:]
    while a and not a[-1]:
        a.pop()
    return a


def _sparse_divmod(f: SparsePoly, g: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    ctx = f.ctx
    mul, sub = ctx.mul, ctx.sub
    dg = g.degree()
    inv = ctx.inv(g.lc_code())
    lower = [(e, c) for e, c in g.terms.items() if e != dg]
    r = dict(f.terms)
    q: dict[int, int] = {}
    while r:
        d = max(r)
        if d < dg:
            break
        c = mul(r.pop(d), inv)
        off = d - dg
        q[off] = c
        for e, ge in lower:
            v = sub(r.get(off + e, 0), mul(c, ge))
            if v:
                r[off + e] = v
            else:
                r.pop(off + e, None)
    return SparsePoly._raw(ctx, q), SparsePoly._raw(ctx, r)


def poly_gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Monic gcd; gcd(0, 0) is undefined and raises."""
    f._same(g)
    if not f.terms and not g.terms:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    ctx = f.ctx
    if max(f.degree(), g.degree()) <= DENSE_LIMIT:
        a, b = f.to_dense(), g.to_dense()
        if len(a) < len(b):
            a, b = b, a
        while b:
            a, b = b, _dense_rem(a, b, ctx)
        return SparsePoly.from_dense(ctx, a).monic()
    a, b = f, g
    while b.terms:
        a, b = b, a % b
    return a.monic()


def poly_arith(f: SparsePoly, g: SparsePoly, op: str):
    """Ring operation ``op`` in {add, sub, mul, divmod, gcd}."""
    f._same(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return poly_gcd(f, g)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_pth_root(f: SparsePoly) -> SparsePoly | None:
    """g with g^p == f, or None when some exponent is not divisible by p."""
    ctx = f.ctx
    p = ctx.p
    out = {}
    for e, c in f.terms.items():
        if e % p:
            return None
        out[e // p] = c
    if ctx.k > 1:
        root = ctx.pth_root
        out = {e: root(c) for e, c in out.items()}
    return SparsePoly._raw(ctx, out)


poly_pth_power_test = poly_pth_root


def substitute(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """f(g(t)), exact."""
    f._same(g)
    ctx = f.ctx
    if not f.terms:
        return f
    if len(g.terms) <= 1:
        # monomial c*t^m: scale exponents, coefficients pick up c^e
        if not g.terms:
            return SparsePoly._raw(ctx, {0: f.terms[0]} if 0 in f.terms else {})
        (m, c), = g.terms.items()
        _check_degree(f.degree() * m)
        out = {}
        for e, v in f.terms.items():
            out[e * m] = ctx.mul(v, ctx.pow(c, e))
        return SparsePoly._raw(ctx, out)
    _check_degree(f.degree() * max(g.degree(), 1))
    # Horner over the sorted exponents, jumping gaps with powers of g
    exps = sorted(f.terms, reverse=True)
    result = SparsePoly._raw(ctx, {0: f.terms[exps[0]]})
    for prev, e in zip(exps, exps[1:]):
        result = result * g ** (prev - e) + SparsePoly._raw(ctx, {0: f.terms[e]})
    return result * g ** exps[-1]


class RatFn:
    """Reduced fraction num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly | None = None):
        if den is None:
            den = SparsePoly.one(num.ctx)
        num._same(den)
        if not den.terms:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.terms:
            self.num, self.den = num, SparsePoly.one(num.ctx)
            return
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc_code()
        if lc != 1:
            inv = num.ctx.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: SparsePoly, den: SparsePoly) -> RatFn:
        # trusted constructor: already reduced with monic den
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def from_poly(cls, f: SparsePoly) -> RatFn:
        return cls._raw(f, SparsePoly.one(f.ctx))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> RatFn:
        return cls.from_poly(SparsePoly.zero(ctx))

    @classmethod
    def one(cls, ctx: FieldCtx) -> RatFn:
        return cls.from_poly(SparsePoly.one(ctx))

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_poly(self) -> bool:
        return self.den.degree() == 0

    def height(self) -> int:
        return max(self.num.degree(), self.den.degree())

    def lift(self, ctx: FieldCtx) -> RatFn:
        return RatFn._raw(self.num.lift(ctx), self.den.lift(ctx))

    def _coerce(self, other) -> RatFn:
        if isinstance(other, RatFn):
            self.num._same(other.num)
            return other
        if isinstance(other, SparsePoly):
            self.num._same(other)
            return RatFn.from_poly(other)
        if isinstance(other, (int, FieldElement)):
            return RatFn.from_poly(SparsePoly.one(self.ctx) * other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # cross-cancel first so the final gcd stays small
        g1 = poly_gcd(self.num, other.den) if self.num.terms else None
        g2 = poly_gcd(other.num, self.den) if other.num.terms else None
        n1, d2 = (self.num.exact_div(g1), other.den.exact_div(g1)) if g1 else (self.num, other.den)
        n2, d1 = (other.num.exact_div(g2), self.den.exact_div(g2)) if g2 else (other.num, self.den)
        return RatFn(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RatFn:
        if not self.num.terms:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> RatFn:
        if n < 0:
            return self.inverse() ** (-n)
        # powers of a reduced fraction stay reduced
        return RatFn._raw(self.num**n, self.den**n)

    def frobenius(self) -> RatFn:
        return RatFn._raw(self.num.frobenius(), self.den.frobenius())

    def compose_monomial(self, m: int) -> RatFn:
        """r(t^m); t -> t^m is injective, so the result is still reduced."""
        t_m = SparsePoly.monomial(self.ctx, m)
        return RatFn._raw(substitute(self.num, t_m), substitute(self.den, t_m))

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (SparsePoly, int)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def sort_key(self) -> tuple:
        return (self.height(), self.den.sort_key(), self.num.sort_key())

    def __repr__(self) -> str:
        return f"RatFn({format_ratfn(self)!r}, {self.ctx!r})"

    def __str__(self) -> str:
        return format_ratfn(self)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> RatFn:
        return cls(SparsePoly.from_json(ctx, data["num"]), SparsePoly.from_json(ctx, data["den"]))


def ratfn_normalize(num: SparsePoly, den: SparsePoly) -> RatFn:
    return RatFn(num, den)


def ratfn_pth_root(r: RatFn) -> RatFn | None:
    """s with s^p == r, or None.  Coprimality of num and den makes the test exact."""
    n = poly_pth_root(r.num)
    if n is None:
        return None
    d = poly_pth_root(r.den)
    if d is None:
        return None
    return RatFn._raw(n, d)


ratfn_pth_power_test = ratfn_pth_root


# -- text syntax --------------------------------------------------------------
# Sums of c*t^e terms, one optional '/' between parenthesised numerator and
# denominator.  Extension-field coefficients print as [c0,c1,...].

def _format_coeff(ctx: FieldCtx, c: int) -> str:
    if ctx.k == 1:
        return str(c)
    return "[" + ",".join(map(str, ctx.coeffs(c))) + "]"


def format_poly(f: SparsePoly, var: str = "t") -> str:
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        cs = _format_coeff(f.ctx, c)
        if e == 0:
            parts.append(cs)
            continue
        mono = var if e == 1 else f"{var}^{e}"
        parts.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(parts)


def format_ratfn(r: RatFn, var: str = "t") -> str:
    if r.den.degree() == 0:
        return format_poly(r.num, var)
    return f"({format_poly(r.num, var)})/({format_poly(r.den, var)})"


_TERM = re.compile(r"^(?:(\d+|\[\d+(?:,\d+)*\])\*?)?(?:(t)(?:\^(\d+))?)?$")


def parse_poly(text: str, ctx: FieldCtx, var: str = "t") -> SparsePoly:
    """Parse ``2*t^3 + t - 1`` style text.

    Extension-field coefficients are written ``[c0,c1,...]`` (low degree
    first), as :func:`format_poly` prints them.
    """
    src = text.strip().replace(var, "t")
    if not src:
        raise ValueError("empty polynomial text")
    src = re.sub(r"\s+", "", src)
    src = src.replace("-", "+-")
    if src.startswith("+"):
        src = src[1:]
    terms: dict[int, int] = {}
    for tok in src.split("+"):
        if not tok:
            raise ValueError(f"malformed polynomial {text!r}")
        neg = tok.startswith("-")
        body = tok[1:] if neg else tok
        m = _TERM.match(body)
        if not m or not body:
            raise ValueError(f"malformed term {tok!r} in {text!r}")
        coeff_s, var_s, exp_s = m.groups()
        if coeff_s is None and var_s is None:
            raise ValueError(f"malformed term {tok!r} in {text!r}")
        if exp_s is not None and var_s is None:
            raise ValueError(f"malformed term {tok!r} in {text!r}")
        if coeff_s is None:
            c = 1
        elif coeff_s.startswith("["):
            cs = [int(v) for v in coeff_s[1:-1].split(",")]
            if len(cs) > ctx.k or any(v >= ctx.p for v in cs):
                raise ValueError(f"coefficient {coeff_s} is not an element of {ctx!r}")
            c = ctx.code(cs + [0] * (ctx.k - len(cs)))
        else:
            c = ctx.embed_prime(int(coeff_s))
        e = (int(exp_s) if exp_s is not None else 1) if var_s else 0
        if neg:
            c = ctx.neg(c)
        terms[e] = ctx.add(terms.get(e, 0), c)
    return SparsePoly(ctx, {e: c for e, c in terms.items() if c})


def parse_ratfn(text: str, ctx: FieldCtx, var: str = "t") -> RatFn:
    """Parse ``num`` or ``(num)/(den)``; parentheses optional around single terms."""
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif ch == "/" and depth == 0:
            if split is not None:
                raise ValueError(f"more than one '/' in {text!r}")
            split = i
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")

    def strip(s: str) -> str:
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if "(" in s or ")" in s:
            raise ValueError(f"unexpected parentheses in {text!r}")
        return s

    if split is None:
        return RatFn.from_poly(parse_poly(strip(text), ctx, var))
    num = parse_poly(strip(text[:split]), ctx, var)
    den = parse_poly(strip(text[split + 1:]), ctx, var)
    if den.is_zero():
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return RatFn(num, den)


def t_poly(p: int, terms: Mapping[int, int], k: int = 1) -> SparsePoly:
    """Shorthand: polynomial over GF(p^k) with prime-field integer coefficients."""
    return SparsePoly.from_ints(get_field(p, k), terms)
