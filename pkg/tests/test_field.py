import itertools

import pytest
from hypothesis import given, settings, strategies as st

from genuschange.field import (
    FieldElement,
    canonical_modulus,
    enumerate_subfield,
    field_arith,
    field_from_json,
    frobenius,
    get_field,
    in_subfield,
    is_irreducible,
    is_prime,
    pth_root,
)

FIELDS = [(3, 1), (5, 1), (3, 2), (3, 4), (5, 2), (7, 2), (3, 6)]


def elem(ctx, code):
    return FieldElement(ctx, code)


def test_prime_field_examples():
    f3 = get_field(3)
    assert field_arith(elem(f3, 2), elem(f3, 2), "add") == elem(f3, 1)
    assert field_arith(elem(f3, 2), elem(f3, 2), "mul") == elem(f3, 1)


def test_gf9_generator_inverse():
    f9 = get_field(3, 2)
    w = f9.gen()
    assert w * w.inverse() == elem(f9, 1)


def test_division_by_zero_and_mismatch():
    f9 = get_field(3, 2)
    with pytest.raises(ZeroDivisionError):
        f9.gen() / elem(f9, 0)
    with pytest.raises(ValueError):
        field_arith(f9.gen(), elem(get_field(3), 1), "add")


def test_canonical_moduli():
    assert canonical_modulus(3, 2) == (1, 0, 1)
    assert canonical_modulus(3, 4) == (1, 0, 1, 1, 1)
    assert canonical_modulus(3, 6) == (1, 0, 0, 0, 1, 1, 1)
    for p, k in FIELDS:
        assert is_irreducible(canonical_modulus(p, k), p)


def test_is_irreducible_against_root_search():
    # degree 2 and 3: irreducible iff no root in GF(p)
    p = 5
    for coeffs in itertools.product(range(p), repeat=3):
        f = list(coeffs) + [1]
        has_root = any(sum(c * x**i for i, c in enumerate(f)) % p == 0 for x in range(p))
        assert is_irreducible(f, p) == (not has_root)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_frobenius_examples():
    f3, f9 = get_field(3), get_field(3, 2)
    for c in range(3):
        assert frobenius(elem(f3, c), 1) == elem(f3, c)
    for a in f9.elements():
        assert frobenius(a, 2) == a
    w = f9.gen()
    cube = w * w * w
    assert frobenius(w, 1) == cube
    assert cube * cube * cube == w


def test_pth_root_examples():
    for p, k in FIELDS:
        ctx = get_field(p, k)
        assert pth_root(elem(ctx, 0)) == elem(ctx, 0)
        assert pth_root(elem(ctx, 1)) == elem(ctx, 1)


def test_in_subfield():
    f81 = get_field(3, 4)
    assert in_subfield(elem(f81, 2), 1)
    w = FieldElement(f81, f81.code(f81.primitive_element_coeffs()))
    assert not in_subfield(w, 2)
    assert all(w**e != elem(f81, 1) for e in range(1, 80))


def test_enumerate_subfield():
    f9 = get_field(3, 2)
    assert sorted(e.code for e in enumerate_subfield(f9, 1)) == [0, 1, 2]
    assert len(enumerate_subfield(f9, 2)) == 9
    f81 = get_field(3, 4)
    sub = enumerate_subfield(f81, 2)
    assert len(sub) == 9
    assert all(a**9 == a for a in sub)
    with pytest.raises(ValueError):
        enumerate_subfield(f81, 3)


def test_element_order_is_coefficient_order():
    ctx = get_field(3, 2)
    keys = [e.coeffs for e in ctx.elements()]
    assert keys == sorted(keys)
    assert len(set(keys)) == 9


def test_json_roundtrip():
    ctx = get_field(5, 2)
    assert field_from_json(ctx.to_json()) is ctx


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group_cyclic(p, k):
    ctx = get_field(p, k)
    g = FieldElement(ctx, ctx.code(ctx.primitive_element_coeffs()))
    seen = set()
    x = elem(ctx, 1)
    for _ in range(ctx.order - 1):
        seen.add(x.code)
        x = x * g
    assert x == elem(ctx, 1)
    assert len(seen) == ctx.order - 1


def _field_and_elems(n):
    return st.sampled_from(FIELDS).flatmap(
        lambda pk: st.tuples(st.just(get_field(*pk)),
                             *[st.integers(0, pk[0] ** pk[1] - 1)] * n))


@settings(max_examples=200, deadline=None)
@given(_field_and_elems(3))
def test_field_axioms(data):
    ctx, a, b, c = data
    a, b, c = elem(ctx, a), elem(ctx, b), elem(ctx, c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == elem(ctx, 0)
    if b:
        assert (a / b) * b == a


@settings(max_examples=200, deadline=None)
@given(_field_and_elems(2))
def test_frobenius_is_additive_and_invertible(data):
    ctx, a, b = data
    a, b = elem(ctx, a), elem(ctx, b)
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(pth_root(a)) == a
    assert frobenius(a, ctx.k) == a
    assert frobenius(a) == a**ctx.p
