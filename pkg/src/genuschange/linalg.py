"""Exact Gaussian elimination over a rational function field F_q(s)."""

from __future__ import annotations

from typing import Sequence

from .poly import RatFn


def _size(r: RatFn) -> int:
    return r.num.degree() + r.den.degree() + len(r.num.terms)


def rank(rows: Sequence[Sequence[RatFn]]) -> int:
    """Row rank of a matrix with RatFn entries.

    Pivots are chosen as the entry of smallest total degree in the current
    column, which keeps intermediate fractions short.
    """
    work = [list(r) for r in rows if any(not e.is_zero() for e in r)]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for col in range(ncols):
        candidates = [i for i in range(rk, len(work)) if not work[i][col].is_zero()]
        if not candidates:
            continue
        piv = min(candidates, key=lambda i: _size(work[i][col]))
        work[rk], work[piv] = work[piv], work[rk]
        prow = work[rk]
        inv = prow[col].inverse()
        prow = [e * inv if not e.is_zero() else e for e in prow]
        work[rk] = prow
        for i in range(rk + 1, len(work)):
            c = work[i][col]
            if c.is_zero():
                continue
            row = work[i]
            work[i] = [row[j] - c * prow[j] if not prow[j].is_zero() else row[j]
                       for j in range(ncols)]
        rk += 1
        if rk == len(work):
            break
    return rk


def nullity(rows: Sequence[Sequence[RatFn]], ncols: int) -> int:
    """Dimension of {v : rows * v = 0}."""
    return ncols - rank(rows)
