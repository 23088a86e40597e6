"""Walk through the rank stratification of a space of complexes.

A differential on the graded space V = (V^0, ..., V^m) is a tuple of
matrices composing to zero.  Up to the action of GL(V^0) x ... x GL(V^m)
a differential is classified by its rank vector, and the rank vectors
form a finite poset R cut out by r_i + r_{i+1} <= n_i.  This script
enumerates R for a few small graded spaces, shows the attached data
(cohomology dimensions, orbit dimensions, maximality), and writes a
Graphviz picture of the poset.
"""

from varcom import (GradedDims, canonical_representative, enumerate_R,
                    hasse_dot, maximal_elements, rank_vector, stratum_dim)

for dims_tuple in [(1, 1, 1), (1, 2, 1), (2, 2), (2, 2, 2)]:
    dims = GradedDims(dims_tuple)
    R = enumerate_R(dims)
    maximal = set(maximal_elements(dims))
    print(f"\ndims {dims.n}: |R| = {len(R)}, "
          f"{len(maximal)} irreducible component(s)")
    for rv in R:
        tag = "maximal" if rv in maximal else "       "
        print(f"  r={rv.r}  |r|={rv.length()}  {tag}  "
              f"h={rv.cohomology_dims()}  orbit dim={stratum_dim(rv)}")

    # every stratum is realized by its canonical block representative
    for rv in R:
        assert rank_vector(canonical_representative(rv)) == rv

dims = GradedDims((1, 2, 1))
path = "rank_poset_121.dot"
with open(path, "w", encoding="utf-8") as fh:
    fh.write(hasse_dot(dims) + "\n")
print(f"\nwrote the Hasse diagram of R for dims {dims.n} to {path}")
print("render it with: dot -Tpng rank_poset_121.dot -o rank_poset_121.png")
