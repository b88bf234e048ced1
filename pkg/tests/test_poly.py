import pytest
from hypothesis import given, settings, strategies as st

from genuschange.field import get_field
from genuschange.poly import (
    RatFn,
    SparsePoly,
    format_poly,
    format_ratfn,
    parse_poly,
    parse_ratfn,
    poly_arith,
    poly_gcd,
    poly_pth_root,
    ratfn_normalize,
    ratfn_pth_root,
    substitute,
    t_poly,
)

F3 = get_field(3)


def P(text, ctx=F3):
    return parse_poly(text, ctx)


def R(text, ctx=F3):
    return parse_ratfn(text, ctx)


def test_arith_examples():
    assert P("t+1") * P("t-1") == P("t^2-1")
    assert poly_arith(P("t+1"), P("t-1"), "mul") == P("t^2+2")
    q, r = poly_arith(P("t^4-1"), P("t+1"), "divmod")
    assert q == P("t^3-t^2+t-1")
    assert r.is_zero()
    assert poly_gcd(P("t^4-1"), P("t+1")) == P("t+1")


def test_pth_root_examples():
    assert poly_pth_root(SparsePoly.zero(F3)) == SparsePoly.zero(F3)
    assert poly_pth_root(P("t^9+1")) == P("t^3+1")
    assert poly_pth_root(P("t+t^5")) is None
    # (t^3+1)^3 by plain multiplication
    c = P("t^3+1")
    assert c * c * c == P("t^9+1")


def test_pth_root_over_extension():
    f9 = get_field(3, 2)
    w = f9.gen().code
    f = SparsePoly(f9, {0: w, 2: 1})
    assert poly_pth_root(f**3) == f


def test_ratfn_normalize_examples():
    r = ratfn_normalize(P("t+1"), P("t^4-1"))
    assert r.num == SparsePoly.one(F3)
    assert r.den == P("t^3-t^2+t-1")
    z = ratfn_normalize(SparsePoly.zero(F3), P("t+2"))
    assert z.num.is_zero() and z.den == SparsePoly.one(F3)
    h = ratfn_normalize(P("2*t"), P("2"))
    assert h.num == P("t") and h.den == SparsePoly.one(F3)
    with pytest.raises(ZeroDivisionError):
        ratfn_normalize(P("t"), SparsePoly.zero(F3))


def test_ratfn_pth_root_examples():
    d = P("t^4-1")
    assert ratfn_pth_root(RatFn(P("t^9+1"), d**3)) == RatFn(P("t^3+1"), d)
    assert ratfn_pth_root(RatFn.one(F3)) == RatFn.one(F3)
    assert ratfn_pth_root(R("t+1")) is None


def test_substitute_examples():
    u = P("t^2+t")
    assert substitute(u, P("t^3")) == P("t^6+t^3")
    f = P("1+t")
    assert P("t") * substitute(f, P("t^4")) == P("t+t^5")


def test_substitute_against_horner_by_hand():
    f = P("2*t^5+t^3+1")
    g = P("t^2+2*t")
    expected = g**5 * SparsePoly.from_ints(F3, {0: 2}) + g**3 + SparsePoly.one(F3)
    assert substitute(f, g) == expected


def test_format_and_parse():
    assert format_poly(P("t^5+t")) == "t^5 + t"
    assert format_ratfn(R("(t+1)/(t^4-1)")) == "(1)/(t^3 + 2*t^2 + t + 2)"
    assert R("(2*t)/(2)") == R("t")
    assert R("0") == RatFn.zero(F3)
    f9 = get_field(3, 2)
    assert P("[1,2]*t^2 + [0,1]", f9) == SparsePoly(f9, {2: f9.code((1, 2)), 0: f9.code((0, 1))})
    for bad in ("t^", "t^-1", "3*x", "(t)/(0)", "t**2"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_ratfn(bad, F3)


def test_json_roundtrip():
    r = R("(t^4+2*t)/(t^3+t+1)")
    assert RatFn.from_json(F3, r.to_json()) == r
    f = P("t^11+t")
    assert SparsePoly.from_json(F3, f.to_json()) == f


def test_derivative_and_frobenius():
    f = P("t^4+2*t^3+t")
    assert f.derivative() == P("t^3+1")
    assert f.frobenius() == f**3


def test_compose_monomial_and_height():
    r = R("(t+1)/(t^2)")
    assert r.compose_monomial(3) == R("(t^3+1)/(t^6)")
    assert r.height() == 2
    assert t_poly(3, {1: 1, 5: 1}) == P("t+t^5")


# -- property tests -------------------------------------------------------------

FIELDS = [(3, 1), (5, 1), (3, 2)]


@st.composite
def polys(draw, ctx, max_deg=6):
    n = draw(st.integers(0, max_deg + 1))
    return SparsePoly.from_dense(ctx, [draw(st.integers(0, ctx.order - 1)) for _ in range(n)])


@st.composite
def field_and_polys(draw, count):
    ctx = get_field(*draw(st.sampled_from(FIELDS)))
    return (ctx, *[draw(polys(ctx)) for _ in range(count)])


@settings(max_examples=150, deadline=None)
@given(field_and_polys(3))
def test_ring_axioms(data):
    ctx, f, g, h = data
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == SparsePoly.zero(ctx)
    if not f.is_zero() and not g.is_zero():
        assert (f * g).degree() == f.degree() + g.degree()


@settings(max_examples=150, deadline=None)
@given(field_and_polys(2))
def test_division_identity(data):
    ctx, f, g = data
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree() < g.degree()


@settings(max_examples=150, deadline=None)
@given(field_and_polys(3))
def test_gcd_divides_and_is_monic(data):
    ctx, f, g, h = data
    if h.is_zero() or (f.is_zero() and g.is_zero()):
        return
    fh, gh = f * h, g * h
    d = poly_gcd(fh, gh)
    assert d.is_monic()
    assert (fh % d).is_zero() and (gh % d).is_zero()
    assert (d % h.monic()).is_zero()


@settings(max_examples=150, deadline=None)
@given(field_and_polys(1))
def test_pth_root_of_pth_power(data):
    ctx, f = data
    fp = f ** ctx.p
    assert poly_pth_root(fp) == f
    assert fp == f.frobenius()


@settings(max_examples=100, deadline=None)
@given(field_and_polys(4))
def test_ratfn_field_axioms(data):
    ctx, a, b, c, d = data
    if b.is_zero() or d.is_zero():
        return
    x, y = RatFn(a, b), RatFn(c, d)
    assert x + y == y + x
    assert (x * y) * x == x * (y * x)
    assert (x + y) * x == x * x + y * x
    if not x.is_zero():
        assert x * x.inverse() == RatFn.one(ctx)
        assert x / x == RatFn.one(ctx)
    # always reduced, with monic denominator
    s = x * y
    assert poly_gcd(s.num, s.den).degree() <= 0 or s.num.is_zero()
    assert s.den.is_monic()


@settings(max_examples=100, deadline=None)
@given(field_and_polys(2))
def test_ratfn_pth_root_roundtrip(data):
    ctx, a, b = data
    if b.is_zero():
        return
    x = RatFn(a, b)
    assert ratfn_pth_root(x ** ctx.p) == x


@settings(max_examples=100, deadline=None)
@given(field_and_polys(1))
def test_format_parse_roundtrip(data):
    ctx, f = data
    assert parse_poly(format_poly(f), ctx) == f


@settings(max_examples=100, deadline=None)
@given(field_and_polys(2))
def test_format_parse_ratfn_roundtrip(data):
    ctx, a, b = data
    if b.is_zero():
        return
    r = RatFn(a, b)
    assert parse_ratfn(format_ratfn(r), ctx) == r
