"""Exact arithmetic in GF(p) and GF(p^k).

An element of GF(p^k) = GF(p)[w]/(modulus) is a coefficient vector
(c_0, ..., c_{k-1}) in the root ``w``.  Internally every element is packed
into a single integer code ``sum(c_j * p**j)``; polynomials and search loops
work on codes directly and only the public :class:`FieldElement` wrapper
carries the context around.

Three arithmetic back ends are chosen at construction time:

* ``k == 1``: plain modular integers.
* ``p**k <= TABLE_LIMIT``: full addition/multiplication tables.
* otherwise: polynomial multiplication modulo the modulus.

The modulus is the lexicographically smallest monic irreducible polynomial
of degree k (coefficients compared from the constant term upwards), so every
run and every serialized artifact agree on the same representation.
"""

from __future__ import annotations

import functools
import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceError

TABLE_LIMIT = 1024
MAX_EXTENSION_DEGREE = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over GF(p), lists low degree first -------------------
# Only used to pick and check the modulus and as the big-field back end.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv_lc = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df])


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (low degree first) over GF(p)."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, f, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, compared low degree first."""
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field GF(p^k) with a fixed modulus.

    Contexts are immutable and interned by :func:`get_field`; compare them
    with ``==`` (same p, k and modulus).
    """

    __slots__ = (
        "p", "k", "order", "modulus", "_powers", "_add", "_mul", "_neg",
        "_inv", "_frob", "_exp", "_log", "backend", "add", "sub", "neg", "mul",
        "__weakref__",
    )

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if k > MAX_EXTENSION_DEGREE:
            raise ResourceError(f"extension degree {k} exceeds cap {MAX_EXTENSION_DEGREE}")
        self.p = p
        self.k = k
        self.order = p**k
        if modulus is None:
            modulus = canonical_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1 or not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not monic irreducible of degree {k}")
        self.modulus = modulus
        self._powers = tuple(p**j for j in range(k))
        self._exp = self._log = None
        if k == 1:
            self.backend = "prime"
            self._neg = [(-a) % p for a in range(p)] if p <= TABLE_LIMIT else None
            self._frob = None
        elif self.order <= TABLE_LIMIT:
            self.backend = "table"
            self._build_tables()
        else:
            self.backend = "vector"
            self._frob = None
        self._bind_ops()

    def _bind_ops(self) -> None:
        # specialised closures: these sit in every polynomial inner loop
        p, Q = self.p, self.order
        if self.backend == "prime":
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: a * b % p
        elif self.backend == "table":
            add_t, mul_t, neg_t = self._add, self._mul, self._neg
            self.add = lambda a, b: add_t[a * Q + b]
            self.sub = lambda a, b: add_t[a * Q + neg_t[b]]
            self.neg = neg_t.__getitem__
            self.mul = lambda a, b: mul_t[a * Q + b]
        else:
            self.add = self._vec_add
            self.neg = self._vec_neg
            self.sub = lambda a, b: self._vec_add(a, self._vec_neg(b))
            self.mul = self._vec_mul

    # -- construction helpers --------------------------------------------

    def _build_tables(self) -> None:
        p, Q = self.p, self.order
        codes = np.arange(Q)
        digits = np.stack([(codes // pj) % p for pj in self._powers], axis=1)
        weights = np.array(self._powers)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self._add = (summed @ weights).ravel().tolist()
        self._neg = (((-digits) % p) @ weights).tolist()

        g = self.code(self.primitive_element_coeffs())
        m = Q - 1
        exp = [0] * m
        log = [0] * Q
        x = 1
        for i in range(m):
            exp[i] = x
            log[x] = i
            x = self._vec_mul(x, g)
        self._exp, self._log = exp, log
        exp_np = np.array(exp + exp)
        log_np = np.array(log)
        mul = exp_np[log_np[:, None] + log_np[None, :]]
        mul[0, :] = 0
        mul[:, 0] = 0
        self._mul = mul.ravel().tolist()
        self._inv = [0] + [exp[(-log[a]) % m] for a in range(1, Q)]
        self._frob = [0] + [exp[(log[a] * p) % m] for a in range(1, Q)]

    def primitive_element_coeffs(self) -> tuple[int, ...]:
        """First element, in canonical order, whose multiplicative order is p^k - 1."""
        m = self.order - 1
        factors = prime_factors(m) if m > 1 else []
        for coeffs in self._canonical_coeffs():
            a = self.code(coeffs)
            if a == 0:
                continue
            if all(self._vec_pow(a, m // r) != 1 for r in factors):
                return coeffs
        raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover

    def _canonical_coeffs(self) -> Iterable[tuple[int, ...]]:
        # lexicographic, constant term compared first
        return itertools.product(range(self.p), repeat=self.k)

    # -- code <-> coefficients -----------------------------------------

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * pj for c, pj in zip(coeffs, self._powers))

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def sort_key(self, a: int) -> tuple[int, ...]:
        return self.coeffs(a)

    # -- vector back end ------------------------------------------------

    def _vec_add(self, a: int, b: int) -> int:
        p = self.p
        out, pj = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * pj
            a //= p
            b //= p
            pj *= p
        return out

    def _vec_neg(self, a: int) -> int:
        p = self.p
        out, pj = 0, 1
        while a:
            out += ((-(a % p)) % p) * pj
            a //= p
            pj *= p
        return out

    def _vec_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        prod = _pmul(_trim(list(self.coeffs(a))), _trim(list(self.coeffs(b))), self.p)
        red = _pmod(prod, self.modulus, self.p)
        red += [0] * (self.k - len(red))
        return self.code(red)

    def _vec_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._vec_mul(result, a)
            a = self._vec_mul(a, a)
            e >>= 1
        return result

    # -- scalar operations on codes -----------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.backend == "prime":
            return pow(a, -1, self.p)
        if self.backend == "table":
            return self._inv[a]
        return self._vec_pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.backend == "prime":
            return pow(a, e, self.p)
        if self.backend == "table":
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._vec_pow(a, e)

    def frob(self, a: int, e: int = 1) -> int:
        """a^(p^e); Frobenius has order k, so e is reduced mod k."""
        e %= self.k
        if e == 0 or a == 0:
            return a
        if self.backend == "table":
            for _ in range(e):
                a = self._frob[a]
            return a
        return self._vec_pow(a, self.p**e)

    def pth_root(self, a: int) -> int:
        return self.frob(a, self.k - 1)

    def embed_prime(self, c: int) -> int:
        """Code of the prime-field element c (the constant coefficient)."""
        return c % self.p

    # -- element-level conveniences ------------------------------------------

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.code(value))

    def gen(self) -> FieldElement:
        """The root w of the modulus (equals 0 when k == 1 and the modulus is x)."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, self.code(c)) for c in self._canonical_coeffs()]

    def element_codes(self) -> list[int]:
        return [self.code(c) for c in self._canonical_coeffs()]

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (get_field, (self.p, self.k))


@functools.lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> FieldCtx:
    """Interned field context with the canonical modulus."""
    return FieldCtx(p, k)


def field_from_json(data: dict) -> FieldCtx:
    ctx = get_field(int(data["p"]), int(data["k"]))
    if list(ctx.modulus) != [int(c) for c in data["modulus"]]:
        raise ValueError("serialized modulus differs from the canonical one")
    return ctx


class FieldElement:
    """Value type for an element of a :class:`FieldCtx`."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError(f"field mismatch: {self.ctx!r} vs {other.ctx!r}")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.k, self.code))

    def __lt__(self, other: FieldElement) -> bool:
        return self.coeffs < other.coeffs

    def __repr__(self) -> str:
        if self.ctx.k == 1:
            return f"{self.code}"
        return f"{self.ctx!r}{list(self.coeffs)}"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div} to two elements of the same field."""
    if a.ctx != b.ctx:
        raise ValueError(f"field mismatch: {a.ctx!r} vs {b.ctx!r}")
    ops = {"add": a.ctx.add, "sub": a.ctx.sub, "mul": a.ctx.mul, "div": a.ctx.div}
    if op not in ops:
        raise ValueError(f"unknown field operation {op!r}")
    return FieldElement(a.ctx, ops[op](a.code, b.code))


def frobenius(a: FieldElement, e: int = 1) -> FieldElement:
    if e < 0:
        raise ValueError("iteration count must be non-negative")
    return FieldElement(a.ctx, a.ctx.frob(a.code, e))


def pth_root(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, a.ctx.pth_root(a.code))


def in_subfield(a: FieldElement, r: int) -> bool:
    """True iff a is fixed by the r-th power of Frobenius, i.e. a in F_{p^gcd(r,k)}."""
    if not 1 <= r <= a.ctx.k:
        raise ValueError(f"subfield degree must lie in [1, {a.ctx.k}], got {r}")
    return a.ctx.frob(a.code, r) == a.code


def subfield_codes(ctx: FieldCtx, r: int) -> list[int]:
    """Codes of the Frobenius^r-fixed elements, for any r >= 1, in canonical order."""
    d = math.gcd(r, ctx.k)
    return [c for c in ctx.element_codes() if ctx.frob(c, d) == c]


def enumerate_subfield(ctx: FieldCtx, r: int) -> list[FieldElement]:
    """All p^r elements of the copy of F_{p^r} inside GF(p^k); requires r | k."""
    if r < 1 or ctx.k % r:
        raise ValueError(f"subfield degree {r} does not divide {ctx.k}")
    return [FieldElement(ctx, c) for c in subfield_codes(ctx, r)]
