import pytest
from hypothesis import given, settings, strategies as st

from genuschange.curves import (
    CoeffAssignment,
    Curve,
    assignment_count,
    assignment_to_point,
    curve_coefficient,
    enumerate_assignments,
    enumerate_points,
    family_coefficient,
    make_curve,
    point_from_x,
    satisfies_recurrence,
    verify_bounds,
    verify_point,
)
from genuschange.field import get_field
from genuschange.poly import RatFn, SparsePoly, parse_poly, parse_ratfn

F3 = get_field(3)


def R(text, ctx=F3):
    return parse_ratfn(text, ctx)


def test_make_curve_examples():
    assert make_curve(3, 1).a == R("t+t^5")
    assert make_curve(3, 2).a == R("t+t^11")
    assert make_curve(5, 1).a == R("t+t^7+t^13+t^19", get_field(5))


def test_curve_rejects_pth_power():
    with pytest.raises(ValueError):
        Curve(3, 1, R("t^3"))
    with pytest.raises(ValueError):
        Curve(3, 1, R("(t^3+1)/(t^3)"))


def test_family_examples():
    assert family_coefficient(3, R("t^4")) == make_curve(3, 1).a
    assert family_coefficient(3, R("0")) == R("t")
    f5 = get_field(5)
    assert family_coefficient(5, R("t^6", f5)) == make_curve(5, 1).a


def test_family_with_rational_u():
    # t * (1 + u + u^2) for p = 5 truncates at p - 2 = 3 terms, here u = 1/t
    f5 = get_field(5)
    u = R("(1)/(t)", f5)
    expected = R("t", f5) * (RatFn.one(f5) + u + u * u + u * u * u)
    assert family_coefficient(5, u) == expected


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_family_specializes_to_curve(p, n):
    ctx = get_field(p)
    u = RatFn.from_poly(SparsePoly.monomial(ctx, p**n + 1))
    assert family_coefficient(p, u) == make_curve(p, n).a


def test_assignments_31():
    c = make_curve(3, 1)
    asgs = list(enumerate_assignments(c, 1))
    assert [a.as_dict() for a in asgs] == [{0: 0, 1: 0}, {0: 1, 1: 1}, {0: 2, 1: 2}]
    f9 = get_field(3, 2)
    asgs = list(enumerate_assignments(c, 2))
    assert len(asgs) == 9
    for a in asgs:
        d = a.as_dict()
        assert d[0] == f9.frob(d[1], 1)


def test_assignment_counts():
    assert assignment_count(3, 3, 6) == 3**8
    assert assignment_count(3, 3, 1) == 9
    assert assignment_count(3, 3, 2) == 3**4
    assert len(list(enumerate_assignments(make_curve(3, 3), 6))) == 6561


def test_point_beta_one_by_expansion():
    c = make_curve(3, 1)
    asg = CoeffAssignment(F3, ((0, 1), (1, 1)))
    pt = assignment_to_point(c, asg)
    d = parse_poly("t^4-1", F3)
    assert pt.x == RatFn(parse_poly("1+t", F3), d)
    assert pt.y == RatFn(parse_poly("t^3+1", F3), d)
    # independent check of the key identity (t^4-1)^2 (1+t) - (t+t^5)(1+t)^3 = t^9+1
    a = parse_poly("1+t", F3)
    assert d * d * a - parse_poly("t+t^5", F3) * a * a * a == parse_poly("t^9+1", F3)


def test_point_beta_two():
    c = make_curve(3, 1)
    pt = assignment_to_point(c, CoeffAssignment(F3, ((0, 2), (1, 2))))
    assert pt.x == R("(2+2*t)/(t^4-1)")
    assert pt.y == R("(2*t^3+2)/(t^4-1)")


def test_verify_point_examples():
    c = make_curve(3, 1)
    zero = RatFn.zero(F3)
    assert verify_point(c, zero, zero)
    assert verify_point(c, R("(1+t)/(t^4-1)"), R("(t^3+1)/(t^4-1)"))
    assert not verify_point(c, R("(1+t)/(t^4-1)"), zero)


def test_non_orbit_assignment_fails():
    from genuschange.errors import ConstructionError
    c = make_curve(3, 1)
    with pytest.raises(ConstructionError):
        assignment_to_point(c, CoeffAssignment(F3, ((0, 1), (1, 2))))


@pytest.mark.parametrize("p,n,count", [(3, 1, 3), (3, 2, 3), (3, 3, 9), (5, 1, 5)])
def test_point_counts_over_prime_field(p, n, count):
    c = make_curve(p, n)
    pts = enumerate_points(c, 1)
    assert len(pts) == count
    assert all(verify_point(c, pt.x, pt.y) for pt in pts)
    assert len({pt.x for pt in pts}) == count


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1)])
def test_point_counts_over_degree_2n(p, n):
    c = make_curve(p, n)
    pts = enumerate_points(c, 2 * n)
    assert len(pts) == p ** (2**n)
    assert all(verify_point(c, pt.x, pt.y) for pt in pts)


def test_limit_gives_prefix():
    c = make_curve(3, 2)
    full = enumerate_points(c, 2)
    part = enumerate_points(c, 2, limit=4)
    assert [pt.x for pt in part] == [pt.x for pt in full[:4]]


def test_parallel_enumeration_matches_serial():
    c = make_curve(3, 2)
    serial = enumerate_points(c, 4)
    parallel = enumerate_points(c, 4, workers=2, chunk=16)
    assert [pt.x for pt in serial] == [pt.x for pt in parallel]
    assert [pt.provenance for pt in serial] == [pt.provenance for pt in parallel]


def test_constructed_assignments_satisfy_recurrence():
    for p, n, k in [(3, 1, 2), (3, 2, 4), (5, 1, 2), (3, 3, 2)]:
        ctx = get_field(p, k)
        for asg in enumerate_assignments(make_curve(p, n), k):
            assert satisfies_recurrence(asg.as_dict(), p, n, ctx)


def test_point_from_x():
    c = make_curve(3, 1)
    pt = point_from_x(c, R("(1+t)/(t^4-1)"))
    assert pt is not None and pt.y == R("(t^3+1)/(t^4-1)")
    assert point_from_x(c, R("t")) is None


def test_verify_bounds():
    b = verify_bounds(3, 3)
    assert b["n_orbits"] == 2
    assert b["count_Fp"] == 9
    assert b["count_Fp2n"] == 3**8
    assert b["bound_Fp"] and b["bound_Fp2n"]
    for p, n, small, big in [(3, 1, 3, 9), (5, 1, 5, 25)]:
        b = verify_bounds(p, n)
        assert (b["count_Fp"], b["count_Fp2n"]) == (small, big)


def test_point_json():
    c = make_curve(3, 1)
    pt = enumerate_points(c, 2)[5]
    data = pt.to_json(c)
    assert set(data) == {"p", "n", "k", "modulus", "alpha", "x", "y"}
    f9 = get_field(3, 2)
    assert RatFn.from_json(f9, data["x"]) == pt.x


def test_curve_coefficient_shape():
    for p, n in [(3, 1), (5, 2), (7, 1)]:
        q = p**n
        assert sorted(curve_coefficient(p, n).terms) == [j * (q + 1) + 1 for j in range(p - 1)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1, 2), (3, 2, 2), (5, 1, 2), (3, 2, 4)]), st.data())
def test_random_points_lie_on_curve(pnk, data):
    p, n, k = pnk
    c = make_curve(p, n)
    pts = enumerate_points(c, k)
    pt = data.draw(st.sampled_from(pts))
    # independent check: x - a x^p - y^p computed in RatFn arithmetic
    a = c.a.lift(pt.ctx)
    assert pt.x - a * pt.x**p - pt.y**p == RatFn.zero(pt.ctx)
