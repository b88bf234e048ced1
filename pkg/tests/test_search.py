import json

import pytest

from genuschange.curves import Curve, constructed_numerators, make_curve
from genuschange.errors import CheckpointError, ResourceError
from genuschange.field import get_field
from genuschange.linalg import nullity, rank
from genuschange.poly import RatFn, SparsePoly, parse_poly, parse_ratfn
from genuschange.search import (
    SearchSpec,
    bruteforce_coefficients,
    bruteforce_points,
    bruteforce_recurrence,
    compare_with_construction,
    numerators,
    partitioned_run,
    point_survivors,
)

F3 = get_field(3)


def _sorted(polys):
    return sorted(polys, key=SparsePoly.sort_key)


def test_coefficients_31():
    res = bruteforce_coefficients(3, 1, 1)
    assert res.examined == 27
    assert set(numerators(res)) == {SparsePoly.zero(F3), parse_poly("1+t", F3), parse_poly("2+2*t", F3)}


def test_coefficients_31_k2():
    f9 = get_field(3, 2)
    res = bruteforce_coefficients(3, 1, 2)
    assert res.examined == 729
    expected = {SparsePoly(f9, {0: f9.frob(b, 1), 1: b}) for b in range(9)}
    assert set(numerators(res)) == expected


@pytest.mark.parametrize("p,n,k", [(3, 1, 1), (3, 1, 2), (5, 1, 1), (3, 2, 1)])
def test_coefficients_match_construction(p, n, k):
    res = bruteforce_coefficients(p, n, k)
    assert _sorted(numerators(res)) == _sorted(constructed_numerators(make_curve(p, n), k))


def test_recurrence_filter_matches_construction():
    for p, n, k in [(3, 1, 2), (3, 2, 1), (5, 1, 1)]:
        got = bruteforce_recurrence(p, n, k)
        assert _sorted(got) == _sorted(constructed_numerators(make_curve(p, n), k))


def test_points_height_zero():
    res = bruteforce_points(make_curve(3, 1), 1, 0)
    xs = [x for x, _ in point_survivors(res)]
    assert xs == [RatFn.zero(F3)]


def test_zero_is_a_survivor_on_general_curve():
    c = Curve(3, 1, parse_ratfn("(t)/(t+1)", F3))
    res = bruteforce_points(c, 1, 1)
    xs = [x for x, _ in point_survivors(res)]
    assert RatFn.zero(F3) in xs
    for x, y in point_survivors(res):
        assert x - c.a * x**3 == y**3


def test_points_compare_with_construction():
    res = bruteforce_points(make_curve(3, 1), 1, 4)
    cmp = compare_with_construction(res)
    assert cmp["constructed"] == 3
    assert cmp["constructed_subset"]
    assert cmp["extras"] == []


def test_candidate_space_is_exhaustive():
    # every reduced x = N/D with D monic and height <= H appears exactly once
    spec = SearchSpec("points", 3, 1, 1, height=1)
    from genuschange.search import _Scanner
    sc = _Scanner(spec)
    seen = set()
    for c in range(spec.size()):
        num, den = sc.decode_pair(c)
        assert den.is_monic()
        assert max(num.degree(), den.degree()) <= 1
        seen.add((num, den))
    assert len(seen) == spec.size()


def test_budget_enforced():
    with pytest.raises(ResourceError):
        SearchSpec("coefficients", 3, 2, 2, budget=1000)
    with pytest.raises(ValueError):
        SearchSpec("coefficients", 3, 1, coefficient='{"num": [], "den": []}')
    with pytest.raises(ValueError):
        SearchSpec("points", 3, 1)


def test_determinism_across_partitions_and_workers():
    base = bruteforce_coefficients(5, 1, 1).to_json()
    for parts, workers in [(1, 1), (3, 1), (4, 4), (7, 2)]:
        res = bruteforce_coefficients(5, 1, 1, partitions=parts, workers=workers)
        out = res.to_json()
        assert out["survivors"] == base["survivors"]
        assert out["examined"] == base["examined"]


def test_empty_partition():
    spec = SearchSpec("coefficients", 3, 1, 1, partitions=40)
    assert any(s == e for s, e in spec.ranges())
    res = partitioned_run(spec)
    assert len(res.items) == 3


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "run.json"
    spec = SearchSpec("coefficients", 5, 1, 1, partitions=3)
    first = partitioned_run(spec, checkpoint=ck, chunk_size=100, max_chunks=5)
    assert not first.complete
    assert ck.exists()
    saved = json.loads(ck.read_text())
    assert sum(p["cursor"] - p["start"] for p in saved["partitions"]) == first.examined
    second = partitioned_run(spec, checkpoint=ck, chunk_size=100)
    assert second.complete
    fresh = partitioned_run(spec)
    assert second.survivors == fresh.survivors
    assert second.examined == fresh.examined == spec.size()


def test_checkpoint_corruption_refused(tmp_path):
    ck = tmp_path / "run.json"
    spec = SearchSpec("coefficients", 3, 1, 1, partitions=2)
    partitioned_run(spec, checkpoint=ck, chunk_size=4, max_chunks=2)
    data = json.loads(ck.read_text())
    data["partitions"][0]["cursor"] += 1
    ck.write_text(json.dumps(data))
    with pytest.raises(CheckpointError):
        partitioned_run(spec, checkpoint=ck)
    ck.write_text("not json")
    with pytest.raises(CheckpointError):
        partitioned_run(spec, checkpoint=ck)


def test_checkpoint_for_other_search_refused(tmp_path):
    ck = tmp_path / "run.json"
    partitioned_run(SearchSpec("coefficients", 3, 1, 1), checkpoint=ck)
    with pytest.raises(CheckpointError):
        partitioned_run(SearchSpec("coefficients", 3, 1, 2), checkpoint=ck)
    with pytest.raises(CheckpointError):
        partitioned_run(SearchSpec("coefficients", 3, 1, 1, partitions=2), checkpoint=ck)


def test_no_temp_files_left(tmp_path):
    ck = tmp_path / "run.json"
    partitioned_run(SearchSpec("coefficients", 3, 1, 1, partitions=2), checkpoint=ck, chunk_size=5)
    assert [p.name for p in tmp_path.iterdir()] == ["run.json"]


# -- exact linear algebra over F_p(s) -------------------------------------------

def _m(rows):
    return [[parse_ratfn(c, F3) for c in row] for row in rows]


def test_rank_and_nullity():
    rows = _m([["1", "t", "t^2"], ["t", "t^2", "t^3"], ["0", "1", "(1)/(t)"]])
    assert rank(rows) == 2
    assert nullity(rows, 3) == 1
    assert rank(_m([["0", "0"]])) == 0
    assert nullity([], 4) == 4
    ident = _m([["1", "0"], ["0", "(t+1)/(t)"]])
    assert rank(ident) == 2
