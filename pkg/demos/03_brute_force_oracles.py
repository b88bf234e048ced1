"""Independent brute force against the construction.

The coefficient search tries every a(t) of degree < q and never looks at the
orbit structure.  The point search tries every x of bounded height.  A
checkpointed run is interrupted and resumed to show the result is unchanged.
"""

import tempfile
from pathlib import Path

from genuschange import make_curve
from genuschange.curves import constructed_numerators
from genuschange.poly import SparsePoly, format_poly, format_ratfn
from genuschange.search import (
    SearchSpec,
    bruteforce_coefficients,
    bruteforce_points,
    compare_with_construction,
    numerators,
    partitioned_run,
    point_survivors,
)

for p, n, k in [(3, 1, 1), (3, 1, 2), (5, 1, 1)]:
    res = bruteforce_coefficients(p, n, k)
    found = sorted(numerators(res), key=SparsePoly.sort_key)
    built = sorted(constructed_numerators(make_curve(p, n), k), key=SparsePoly.sort_key)
    print(f"(p,n,k)=({p},{n},{k}): {res.examined} candidates, {len(found)} survivors, "
          f"same as construction: {found == built}")
print("survivors at (3,1,1):", [format_poly(f) for f in numerators(bruteforce_coefficients(3, 1, 1))])

res = bruteforce_points(make_curve(3, 1), 1, 4)
cmp = compare_with_construction(res)
print(f"height <= 4: {res.examined} candidates; survivors:")
for x, _ in point_survivors(res):
    print("  x =", format_ratfn(x))
print(f"extras beyond the construction: {len(cmp['extras'])}")

with tempfile.TemporaryDirectory() as tmp:
    ck = Path(tmp) / "run.json"
    spec = SearchSpec("coefficients", 5, 1, 1, partitions=4)
    part = partitioned_run(spec, checkpoint=ck, chunk_size=200, max_chunks=6)
    print(f"interrupted after {part.examined} of {spec.size()} candidates")
    done = partitioned_run(spec, checkpoint=ck, chunk_size=200)
    print(f"resumed: complete={done.complete}, matches a fresh run: "
          f"{done.survivors == partitioned_run(spec).survivors}")
