"""The index map phi on [0, q) and its orbits.

For q = p^n, phi(i) = (i + q)/p when i = 0 (mod p) and (i - 1)/p when
i = 1 (mod p); it is undefined on the other residues.  On base-p digit
strings phi drops the lowest digit e_0, shifts everything down one place and
puts 1 - e_0 in the top place.  Indices whose digits are all 0 or 1
("admissible") are exactly those on which every iterate is defined, and on
them phi^n is digit complement, so phi^(2n) is the identity.

Index 0 is included: the all-zero digit string is admissible and lies on
the orbit of 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import ResourceError
from .field import is_prime

MAX_N = 20


@dataclass(frozen=True)
class IndexParams:
    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.n > MAX_N:
            raise ResourceError(f"n = {self.n} exceeds cap {MAX_N}")

    @cached_property
    def q(self) -> int:
        return self.p**self.n


@dataclass(frozen=True)
class Orbit:
    """A cycle of phi, listed from its smallest member in traversal order."""

    members: tuple[int, ...]

    @property
    def rep(self) -> int:
        return self.members[0]

    @property
    def length(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"rep": self.rep, "members": list(self.members), "length": self.length}


def _check_index(i: int, params: IndexParams) -> None:
    if not 0 <= i < params.q:
        raise ValueError(f"index {i} outside [0, {params.q})")


def digits(i: int, params: IndexParams) -> tuple[int, ...]:
    """Base-p digits e_0, ..., e_{n-1} of i."""
    _check_index(i, params)
    out = []
    for _ in range(params.n):
        i, r = divmod(i, params.p)
        out.append(r)
    return tuple(out)


def from_digits(ds, p: int) -> int:
    return sum(d * p**j for j, d in enumerate(ds))


def phi(i: int, params: IndexParams) -> int | None:
    _check_index(i, params)
    r = i % params.p
    if r == 0:
        return (i + params.q) // params.p
    if r == 1:
        return (i - 1) // params.p
    return None


def phi_digits(i: int, params: IndexParams) -> int | None:
    """phi through the digit description; same partial domain as :func:`phi`."""
    ds = digits(i, params)
    if ds[0] not in (0, 1):
        return None
    return from_digits(ds[1:] + (1 - ds[0],), params.p)


def is_admissible(i: int, params: IndexParams) -> bool:
    return all(d in (0, 1) for d in digits(i, params))


def admissible_indices(params: IndexParams) -> list[int]:
    """All 2^n indices with 0/1 digits, ascending."""
    p, n = params.p, params.n
    return sorted(from_digits([(m >> j) & 1 for j in range(n)], p) for m in range(2**n))


def orbit_decomposition(params: IndexParams) -> list[Orbit]:
    """Partition of the admissible indices into phi-cycles, ordered by smallest member."""
    seen: set[int] = set()
    orbits = []
    for i in admissible_indices(params):
        if i in seen:
            continue
        members = [i]
        j = phi(i, params)
        while j != i:
            if j is None or len(members) > 2 * params.n:
                raise AssertionError(f"phi orbit of {i} is not a cycle")
            members.append(j)
            j = phi(j, params)
        seen.update(members)
        orbits.append(Orbit(tuple(members)))
    return orbits


def phi_iterate(i: int, r: int, params: IndexParams) -> int | None:
    for _ in range(r):
        if i is None:
            return None
        i = phi(i, params)
    return i


def complement(i: int, params: IndexParams) -> int:
    """Swap digits 0 <-> 1 of an admissible index."""
    return from_digits([1 - d for d in digits(i, params)], params.p)


def verify_phi_period(params: IndexParams) -> bool:
    """phi^(2n) = id on admissible indices, and phi^n is digit complement."""
    n = params.n
    for i in admissible_indices(params):
        half = phi_iterate(i, n, params)
        if half != complement(i, params):
            return False
        if phi_iterate(half, n, params) != i:
            return False
    return True


def escapes(i: int, params: IndexParams) -> bool:
    """True when some phi^r(i), r <= 2n, is not 0 or 1 mod p."""
    _check_index(i, params)
    p, q = params.p, params.q
    for _ in range(2 * params.n + 1):
        r = i % p
        if r == 0:
            i = (i + q) // p
        elif r == 1:
            i = (i - 1) // p
        else:
            return True
    return False


def bound_holds(params: IndexParams, n_orbits: int) -> bool:
    """2n * N_orb >= 2^n, i.e. p^N_orb >= p^(2^n / 2n), in exact integers."""
    return 2 * params.n * n_orbits >= 2**params.n


def non_admissible_escape_check(params: IndexParams, full_limit: int = 100_000) -> bool:
    """Every i in the domain of phi with a digit outside {0, 1} escapes within 2n steps.

    When q <= full_limit every index is tried.  Above that, phi moves digits
    without carries, so whether and when an index escapes depends only on
    which digits lie outside {0, 1}; the check then runs over all digit
    strings on {0, 1, b}, once for every b in [2, p), which meets every such
    pattern.
    """
    p, n = params.p, params.n
    if params.q <= full_limit:
        candidates = (i for i in range(params.q)
                      if i % p in (0, 1) and not is_admissible(i, params))
    else:
        powers = [p**j for j in range(n)]

        def strings():
            for b in range(2, p):
                for ds in itertools.product((0, 1, b), repeat=n):
                    if ds[0] != b and b in ds:
                        yield sum(d * pj for d, pj in zip(ds, powers))
        candidates = strings()
    return all(escapes(i, params) for i in candidates)
