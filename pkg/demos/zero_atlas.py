"""Zero isolation and the mean counting function, on functions whose zero
sets are known in closed form.

1 - 2^(1-s) vanishes exactly at 1 + 2 pi i k / log 2, so winding numbers,
the rectangle formula, and the weighted counting limits can all be checked
against the lattice.

Run:  python demos/zero_atlas.py
"""

import math

import numpy as np

import dirichlet_lab as dl

LOG2 = math.log(2)

print("=" * 72)
print("1. Zero lattice of 1 - 2^(1-s)")
print("=" * 72)
dav = dl.corpus_build("davenport")
R = dl.Rectangle(0.5, 1.5, -30.0, 30.0)
zl = dl.isolate_zeros(dav, R, tol=1e-9)
print(f"  winding of {R}: {zl.winding}")
for h in zl.sorted_by_height():
    k = round(h.location.imag * LOG2 / (2 * math.pi))
    err = abs(h.location - (1 + 2j * math.pi * k / LOG2))
    print(f"  zero {h.location:+.12f}  (lattice k={k:+d}, error {err:.1e})")

print()
print("=" * 72)
print("2. Rectangle formula: weighted zero sum vs boundary integrals")
print("=" * 72)
res = dl.littlewood_sum(dav, dl.Rectangle(0.5, 3.0, -10.0, 10.0))
print(f"  2 pi sum (Re s - 0.5)      = {res.zero_sum:.10f}")
print(f"  boundary integral combo    = {res.boundary_sum:.10f}")
print(f"  difference                 = {res.difference:.2e}")
for key, val in res.parts.items():
    print(f"    {key:10s} = {val:+.8f}")

print()
print("=" * 72)
print("3. Mean counting function of 2^(-s): the log law")
print("=" * 72)
mono2 = dl.corpus_build("mono2")
for xi in (0.3, 0.5 * np.exp(1j), 0.8):
    res = dl.mean_counting(mono2, complex(xi))
    print(f"  |xi| = {abs(xi):.2f}: counting value {res.value:.5f}   "
          f"log(1/|xi|) = {math.log(1 / abs(xi)):.5f}   "
          f"pointwise bound {res.littlewood_bound:.5f}")

print()
print("=" * 72)
print("4. The bound is an inequality off the inner case")
print("=" * 72)
f = dl.DirichletPolynomial({2: 0.5, 3: 0.5})
sched = dl.MeanSchedule(T_list=(50.0, 100.0, 200.0))
rng = np.random.default_rng(0)
for _ in range(5):
    xi = rng.uniform(0.2, 0.8) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    res = dl.mean_counting(f, complex(xi), sched)
    print(f"  xi = {xi:+.3f}: value {res.value:.4f} <= bound "
          f"{res.littlewood_bound:.4f}  (slack "
          f"{res.littlewood_bound - res.value:+.4f})")
