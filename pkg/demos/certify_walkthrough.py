# %% [markdown]
# Certifying Newton polytopes
#
# Each check in the certification chain is an obstruction: a polytope that
# fails one cannot be the Newton polytope of a smooth real hypersurface with
# a real fibered logarithmic Gauss map.  We run the chain on a few small
# tetrahedra and look at where each one stops.

# %%
from fibercert import build, certify, normalized_volume
from fibercert.certify import khovanskii_betti, outer_degree, surface_obstruction

shapes = {
    "unit tetrahedron": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
    "stretched tetrahedron": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2)],
    "unit-edge tetrahedron": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)],
    "size-2 simplex": [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)],
}

for name, verts in shapes.items():
    report = certify(build(verts))
    print(f"{name:24s} volume {report.gauss_degree:2d}  {report.verdict}")

# %% [markdown]
# The stretched tetrahedron fails smoothness along the edge joining e1 and
# e2.  The two facet normals there span an index-2 sublattice.

# %%
report = certify(build(shapes["stretched tetrahedron"]))
print("edge:   ", report.smooth_dim1["edge"])
print("normals:", report.smooth_dim1["normals"])
print("reason: ", report.smooth_dim1["reason"])

# %% [markdown]
# The unit-edge tetrahedron is more subtle.  All its edges have length one and
# its faces are triangles with perimeter 3, so the combinatorial surface stages
# pass.  Smoothness is what rules it out.

# %%
poly = build(shapes["unit-edge tetrahedron"])
for stage in surface_obstruction(poly):
    print(stage.name, stage.passed)
print("facet areas:", [normalized_volume(f) for f in poly.facets])
print("complex Betti sum:", khovanskii_betti(poly))

# %% [markdown]
# Dilating a triangle by d multiplies its lattice perimeter by d, so the outer
# oval degree 3d - 2 grows past 2 as soon as d >= 2.

# %%
for d in range(1, 6):
    print(d, outer_degree(build([(0, 0), (d, 0), (0, d)])))

# %% [markdown]
# In higher dimension each facet is certified again inside its own lattice.

# %%
simplex4 = build([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
r = certify(simplex4)
print(r.verdict, [fv["verdict"] for fv in r.facet_verdicts])
