# %% [markdown]
# A census of small lattice tetrahedra
#
# Enumerate every lattice tetrahedron of normalized volume at most 20 up to
# integer affine equivalence.  Then count how many have unimodular facets,
# how many are smooth in dimension one, and how many are both.

# %%
import time
from collections import Counter

from fibercert.enumeration import classify, counterexample_family, enumerate_simplices, simplex_class

start = time.perf_counter()
classes = list(enumerate_simplices(3, 20, jobs=None))
print(f"{len(classes)} classes in {time.perf_counter() - start:.1f}s")

by_volume = Counter(c.volume for c in classes)
print("classes per volume:", dict(sorted(by_volume.items())))

# %%
records = [classify(c) for c in classes]
both = [r for r in records if r["unimodular_facets"] and r["smooth_dim1"]]
print("unimodular facets:", sum(r["unimodular_facets"] for r in records))
print("smooth in dimension one:", sum(r["smooth_dim1"] for r in records))
print("both:", [(r["volume"], r["canonical"]) for r in both])

# %% [markdown]
# Only the unimodular simplex has both properties.  Dropping either hypothesis
# lets larger volumes through.  Unimodular facets alone admit the family
# 0, e1, e2, (1, p, q) with gcd(p, q) = 1, whose volume is q.

# %%
seen = {(c.volume, c.canonical) for c in classes}
for q in (2, 5, 11, 20):
    cls = simplex_class(counterexample_family(1, q).vertices)
    print(q, cls.canonical, (cls.volume, cls.canonical) in seen)

# %%
smooth_only = [r for r in records if r["smooth_dim1"] and not r["unimodular_facets"]]
print("smooth but with a non-unimodular facet:", [(r["volume"], r["canonical"]) for r in smooth_only])
