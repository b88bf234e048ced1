"""Brute-force oracles over finite candidate spaces.

``coefficients`` mode walks every polynomial a(t) of degree < q over
GF(p^k) and keeps those for which (t^(q+1)-1)^(p-1) a - A_n a^p is a p-th
power.  It never touches phi or the orbit structure, so it independently
checks the coefficient comparison behind the construction.

``points`` mode walks every reduced x = N/D of height <= H (D monic) and
keeps those for which x - a x^p is a p-th power.  Constructed points of
small height must all appear; anything else is reported as an extra.

Candidates are numbered by an integer cursor.  A run splits [0, size) into
partitions, scans them in chunks (optionally in a process pool) and records
each partition's cursor and survivors in a checkpoint, so an interrupted run
resumes without rescanning or duplicating.  The merged survivors are sorted
by cursor, which makes the result independent of partitioning and worker
count.
"""

from __future__ import annotations

import functools
import hashlib
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .curves import Curve, curve_coefficient, make_curve
from .errors import CheckpointError, ResourceError
from .field import get_field
from .orbits import IndexParams
from .poly import RatFn, SparsePoly, poly_gcd, poly_pth_root

DEFAULT_BUDGET = 2**28
CHECKPOINT_VERSION = 1


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class SearchSpec:
    mode: str
    p: int
    n: int
    k: int = 1
    height: int | None = None
    partitions: int = 1
    budget: int = DEFAULT_BUDGET
    coefficient: str | None = None  # JSON of a general coefficient; None means A_n

    def __post_init__(self):
        if self.mode not in ("coefficients", "points"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        IndexParams(self.p, self.n)
        if self.mode == "points" and (self.height is None or self.height < 0):
            raise ValueError("points mode needs a height bound >= 0")
        if self.partitions < 1:
            raise ValueError("need at least one partition")
        if self.mode == "coefficients" and self.coefficient is not None:
            raise ValueError("coefficients mode is defined for the curves C_n only")
        if self.size() > self.budget:
            raise ResourceError(f"{self.size()} candidates exceed the budget {self.budget}")

    def size(self) -> int:
        Q = self.p**self.k
        if self.mode == "coefficients":
            return Q ** (self.p**self.n)
        return Q ** (self.height + 1) * sum(Q**d for d in range(self.height + 1))

    def digest(self) -> str:
        d = asdict(self)
        d.pop("budget")
        return hashlib.sha256(_canonical_json(d).encode()).hexdigest()

    def curve(self) -> Curve:
        if self.coefficient is None:
            return make_curve(self.p, self.n)
        a = RatFn.from_json(get_field(self.p), json.loads(self.coefficient))
        return Curve(self.p, self.n, a)

    def ranges(self) -> list[tuple[int, int]]:
        size = self.size()
        step, extra = divmod(size, self.partitions)
        out, start = [], 0
        for i in range(self.partitions):
            end = start + step + (1 if i < extra else 0)
            out.append((start, end))
            start = end
        return out


@dataclass
class SearchResult:
    spec: SearchSpec
    survivors: list  # [cursor, item] pairs, sorted by cursor
    examined: int
    elapsed: float = 0.0
    complete: bool = True

    @property
    def items(self) -> list:
        return [item for _, item in self.survivors]

    def to_json(self, timing: bool = False) -> dict:
        s = self.spec
        out = {
            "mode": s.mode,
            "p": s.p,
            "n": s.n,
            "k": s.k,
            "height": s.height,
            "field": get_field(s.p, s.k).to_json(),
            "size": s.size(),
            "examined": self.examined,
            "complete": self.complete,
            "survivors": [item for _, item in self.survivors],
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


# -- scanning (runs inside workers) -----------------------------------------------

class _Scanner:
    def __init__(self, spec: SearchSpec):
        self.spec = spec
        p, k = spec.p, spec.k
        self.ctx = ctx = get_field(p, k)
        self.Q = ctx.order
        self.elems = ctx.element_codes()
        curve = spec.curve()
        self.alpha = curve.a.num.lift(ctx)
        self.beta = curve.a.den.lift(ctx)
        self.beta_pm1 = self.beta ** (p - 1)
        self.q = curve.q
        if spec.mode == "coefficients":
            one = SparsePoly.one(ctx)
            D = SparsePoly.monomial(ctx, self.q + 1) - one
            self.D_pm1 = D ** (p - 1)
            self.A = curve_coefficient(p, spec.n).lift(ctx)
        else:
            H = spec.height
            self.num_count = self.Q ** (H + 1)
            # cumulative counts of monic denominators by degree
            self.den_offsets = []
            acc = 0
            for d in range(H + 1):
                self.den_offsets.append(acc)
                acc += self.Q**d

    def _digits_poly(self, c: int, length: int) -> dict[int, int]:
        Q, elems = self.Q, self.elems
        terms = {}
        for i in range(length):
            c, r = divmod(c, Q)
            if r:
                terms[i] = elems[r]
        return terms

    def coefficient_candidate(self, cursor: int):
        a = SparsePoly._raw(self.ctx, self._digits_poly(cursor, self.q))
        m = self.D_pm1 * a - self.A * a.frobenius()
        if poly_pth_root(m) is None:
            return None
        return a.to_json()

    def decode_pair(self, cursor: int) -> tuple[SparsePoly, SparsePoly]:
        i_den, i_num = divmod(cursor, self.num_count)
        num = SparsePoly._raw(self.ctx, self._digits_poly(i_num, self.spec.height + 1))
        d = max(j for j, off in enumerate(self.den_offsets) if off <= i_den)
        low = self._digits_poly(i_den - self.den_offsets[d], d)
        low[d] = 1
        return num, SparsePoly._raw(self.ctx, low)

    def point_candidate(self, cursor: int):
        num, den = self.decode_pair(cursor)
        if num.is_zero():
            if den.degree() != 0:
                return None
        elif poly_gcd(num, den).degree() > 0:
            return None
        p = self.spec.p
        # x - a x^p = M / (beta D)^p
        m = (num * den ** (p - 1) * self.beta - self.alpha * num.frobenius()) * self.beta_pm1
        root = poly_pth_root(m)
        if root is None:
            return None
        x = RatFn._raw(num, den)
        y = RatFn(root, den * self.beta)
        return {"x": x.to_json(), "y": y.to_json()}

    def scan(self, start: int, end: int) -> list:
        test = self.coefficient_candidate if self.spec.mode == "coefficients" else self.point_candidate
        out = []
        for c in range(start, end):
            item = test(c)
            if item is not None:
                out.append([c, item])
        return out


@functools.lru_cache(maxsize=8)
def _scanner(spec: SearchSpec) -> _Scanner:
    return _Scanner(spec)


def _scan_chunk(args) -> tuple[int, int, list]:
    spec, part, start, end = args
    return part, start, _scanner(spec).scan(start, end)


# -- checkpoints ----------------------------------------------------------------

def _state_digest(body: dict) -> str:
    return hashlib.sha256(_canonical_json(body).encode()).hexdigest()


def save_checkpoint(path: str | os.PathLike, spec: SearchSpec, parts: list[dict]) -> None:
    """Atomically write the versioned checkpoint (temp file, then rename)."""
    body = {"version": CHECKPOINT_VERSION, "spec_digest": spec.digest(), "partitions": parts}
    payload = dict(body, digest=_state_digest(body))
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(_canonical_json(payload))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str | os.PathLike, spec: SearchSpec) -> list[dict]:
    try:
        payload = json.loads(Path(path).read_text())
        digest = payload.pop("digest")
    except (OSError, ValueError, KeyError, AttributeError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    if _state_digest(payload) != digest:
        raise CheckpointError(f"checkpoint {path} failed its digest check")
    if payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {payload.get('version')} not supported")
    if payload.get("spec_digest") != spec.digest():
        raise CheckpointError("checkpoint belongs to a different search")
    parts = payload["partitions"]
    if [(pt["start"], pt["end"]) for pt in parts] != spec.ranges():
        raise CheckpointError("checkpoint partition layout does not match")
    return parts


# -- driver -------------------------------------------------------------------------

def partitioned_run(spec: SearchSpec, workers: int = 1, checkpoint: str | os.PathLike | None = None,
                    chunk_size: int = 4096, max_chunks: int | None = None) -> SearchResult:
    """Scan every partition and merge survivors in cursor order.

    ``max_chunks`` stops after that many chunks (the checkpoint, if any, is
    left in place and the result is marked incomplete); used to exercise
    resumption.
    """
    t0 = time.perf_counter()
    if checkpoint is not None and Path(checkpoint).exists():
        parts = load_checkpoint(checkpoint, spec)
    else:
        parts = [{"start": s, "end": e, "cursor": s, "survivors": []} for s, e in spec.ranges()]

    tasks = []
    for idx, part in enumerate(parts):
        for s in range(part["cursor"], part["end"], chunk_size):
            tasks.append((spec, idx, s, min(s + chunk_size, part["end"])))
    if max_chunks is not None:
        tasks = tasks[:max_chunks]

    # chunk results wait here until every earlier chunk of their partition is in
    pending: dict[tuple[int, int], list] = {}

    def absorb(result) -> None:
        idx, start, found = result
        pending[(idx, start)] = found
        part = parts[idx]
        advanced = False
        while (idx, part["cursor"]) in pending:
            found = pending.pop((idx, part["cursor"]))
            part["survivors"].extend(found)
            part["cursor"] = min(part["cursor"] + chunk_size, part["end"])
            advanced = True
        if advanced and checkpoint is not None:
            save_checkpoint(checkpoint, spec, parts)

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            for result in pool.map(_scan_chunk, tasks):
                absorb(result)
    else:
        for task in tasks:
            absorb(_scan_chunk(task))

    complete = all(pt["cursor"] == pt["end"] for pt in parts)
    if checkpoint is not None:
        save_checkpoint(checkpoint, spec, parts)
    survivors = sorted((s for pt in parts for s in pt["survivors"]), key=lambda s: s[0])
    examined = sum(pt["cursor"] - pt["start"] for pt in parts)
    return SearchResult(spec, survivors, examined, time.perf_counter() - t0, complete)


def bruteforce_coefficients(p: int, n: int, k: int = 1, *, workers: int = 1, partitions: int = 1,
                            budget: int = DEFAULT_BUDGET, checkpoint=None) -> SearchResult:
    spec = SearchSpec("coefficients", p, n, k, partitions=partitions, budget=budget)
    return partitioned_run(spec, workers=workers, checkpoint=checkpoint)


def bruteforce_points(curve: Curve, k: int, height: int, *, workers: int = 1, partitions: int = 1,
                      budget: int = DEFAULT_BUDGET, checkpoint=None) -> SearchResult:
    coefficient = None if curve.is_standard else _canonical_json(curve.a.to_json())
    spec = SearchSpec("points", curve.p, curve.n, k, height=height, partitions=partitions,
                      budget=budget, coefficient=coefficient)
    return partitioned_run(spec, workers=workers, checkpoint=checkpoint)


def bruteforce_recurrence(p: int, n: int, k: int = 1, budget: int = DEFAULT_BUDGET) -> list[SparsePoly]:
    """Every a(t), deg < q, whose coefficients satisfy the three-case relations.

    A cheaper filter than the p-th power test, for sizes where only the
    coefficient relations themselves are being cross-checked.
    """
    from .curves import satisfies_recurrence

    ctx = get_field(p, k)
    q = p**n
    Q = ctx.order
    if Q**q > budget:
        raise ResourceError(f"{Q**q} candidates exceed the budget {budget}")
    elems = ctx.element_codes()
    out = []
    for c in range(Q**q):
        alpha = {}
        for i in range(q):
            c, r = divmod(c, Q)
            if r:
                alpha[i] = elems[r]
        if satisfies_recurrence(alpha, p, n, ctx):
            out.append(SparsePoly._raw(ctx, alpha))
    return out


def numerators(result: SearchResult) -> list[SparsePoly]:
    ctx = get_field(result.spec.p, result.spec.k)
    return [SparsePoly.from_json(ctx, item) for item in result.items]


def point_survivors(result: SearchResult) -> list[tuple[RatFn, RatFn]]:
    ctx = get_field(result.spec.p, result.spec.k)
    return [(RatFn.from_json(ctx, it["x"]), RatFn.from_json(ctx, it["y"])) for it in result.items]


def compare_with_construction(result: SearchResult) -> dict:
    """Constructed points of height <= H versus the survivors of a points search."""
    from .curves import enumerate_points

    spec = result.spec
    curve = spec.curve()
    found = {x: y for x, y in point_survivors(result)}
    constructed = []
    if curve.is_standard:
        constructed = [pt.x for pt in enumerate_points(curve, spec.k) if pt.x.height() <= spec.height]
    missing = [x for x in constructed if x not in found]
    extras = [x for x in found if x not in set(constructed)]
    return {
        "constructed": len(constructed),
        "survivors": len(found),
        "missing": [x.to_json() for x in missing],
        "extras": [x.to_json() for x in sorted(extras, key=RatFn.sort_key)],
        "constructed_subset": not missing,
    }
