"""Deterministic Gauss-Legendre integration kernels.

Three entry points cover the package's needs:

* ``gl_refine``    -- composite rule on a fixed interval, panel count doubled
                      until two successive refinements agree.
* ``gl_adaptive``  -- recursive bisection with a per-interval error share and
                      optional forced splitting near small values of a guard
                      function (integrable log singularities).
* ``torus_mean_refine`` -- tensor-product rule over the d-torus, nodes per
                      dimension doubled until stabilization, slab-chunked so
                      memory stays bounded.

Reductions use numpy sums (pairwise trees), so values are independent of any
external worker count and reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import QuadratureNonconvergence

TWO_PI = 2.0 * math.pi

_leg_cache = {}


def leggauss(order):
    if order not in _leg_cache:
        _leg_cache[order] = np.polynomial.legendre.leggauss(order)
    return _leg_cache[order]


@dataclass
class QuadResult:
    value: float
    est_error: float
    evaluations: int = 0
    converged: bool = True
    trace: list = field(default_factory=list)
    leftover_intervals: list = field(default_factory=list)


def panel_nodes(a, b, n_panels, order=16):
    """Nodes and weights of the composite rule on [a, b] as flat arrays."""
    x0, w0 = leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    weights = (half[:, None] * w0[None, :]).ravel()
    return nodes, weights


def gl_composite(g, a, b, n_panels, order=16):
    nodes, weights = panel_nodes(a, b, n_panels, order)
    return float(np.sum(weights * np.asarray(g(nodes), dtype=np.float64)))


def gl_refine(g, a, b, *, n_panels0=4, order=16, abs_tol=1e-10, rel_tol=0.0,
              max_doublings=20):
    """Composite Gauss-Legendre with panel doubling until the two latest
    estimates agree to max(abs_tol, rel_tol * |I|).  Raises
    QuadratureNonconvergence after max_doublings refinements."""
    if b <= a:
        return QuadResult(0.0, 0.0)
    n = max(1, int(n_panels0))
    prev = gl_composite(g, a, b, n, order)
    evals = n * order
    trace = [(n, prev)]
    for _ in range(max_doublings):
        n *= 2
        cur = gl_composite(g, a, b, n, order)
        evals += n * order
        trace.append((n, cur))
        diff = abs(cur - prev)
        if diff <= max(abs_tol, rel_tol * abs(cur)):
            return QuadResult(cur, diff, evals, True, trace)
        prev = cur
    raise QuadratureNonconvergence(
        f"no agreement to {abs_tol:g} after {max_doublings} doublings "
        f"on [{a:g}, {b:g}] (last diff {abs(trace[-1][1] - trace[-2][1]):.3e})")


def gl_adaptive(g, a, b, *, abs_tol=1e-10, order=12, max_depth=40,
                split_points=(), guard=None, guard_threshold=0.0,
                guard_max_depth=24):
    """Adaptive bisection: an interval is accepted when the order-`order`
    estimate and the sum of its two half-interval estimates agree within this
    interval's share of abs_tol.

    ``guard`` is an optional vectorized function whose smallness forces a
    split regardless of the error estimate (up to guard_max_depth); intervals
    still guarded at the depth cap are accepted and returned in
    ``leftover_intervals`` so the caller can assign them an analytic budget.
    """
    if b <= a:
        return QuadResult(0.0, 0.0)
    cuts = sorted({float(a), float(b), *(float(p) for p in split_points
                                         if a < p < b)})
    total_len = b - a
    x0, w0 = leggauss(order)

    def one(lo, hi):
        half = 0.5 * (hi - lo)
        nodes = 0.5 * (hi + lo) + half * x0
        return float(np.sum(w0 * np.asarray(g(nodes), dtype=np.float64)) * half), nodes

    stack = [(cuts[i], cuts[i + 1], 0) for i in range(len(cuts) - 1)][::-1]
    value = 0.0
    err = 0.0
    evals = 0
    leftovers = []
    while stack:
        lo, hi, depth = stack.pop()
        coarse, nodes = one(lo, hi)
        mid = 0.5 * (lo + hi)
        left, _ = one(lo, mid)
        right, _ = one(mid, hi)
        evals += 3 * order
        fine = left + right
        local_tol = abs_tol * (hi - lo) / total_len
        guarded = False
        if guard is not None and depth < guard_max_depth:
            gv = np.asarray(guard(nodes), dtype=np.float64)
            guarded = bool(np.min(gv) < guard_threshold)
        if guarded and depth < guard_max_depth:
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
            continue
        if abs(fine - coarse) <= local_tol or depth >= max_depth:
            value += fine
            err += abs(fine - coarse)
            if guard is not None and depth >= guard_max_depth:
                gv = np.asarray(guard(nodes), dtype=np.float64)
                if np.min(gv) < guard_threshold:
                    leftovers.append((lo, hi))
        else:
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    return QuadResult(value, err, evals, True, leftover_intervals=leftovers)


# ---------------------------------------------------------------------------
# torus quadrature
# ---------------------------------------------------------------------------

# per-dimension node caps chosen so slab-chunked tensor grids stay in memory
_MAX_NODES = {1: 1 << 20, 2: 8192, 3: 640, 4: 160}
_SLAB_BUDGET = 1 << 23  # complex values per slab


def torus_tensor_mean(values_on_angles, d, n_per_dim, order=None):
    """Mean over [0, 2pi]^d of a vectorized integrand.

    ``values_on_angles`` receives d broadcast-ready angle arrays (meshgrid
    slabs of shape (m, n, ..., n)) and returns real values of that shape.
    """
    x0, w0 = leggauss(n_per_dim if order is None else order)
    nodes = math.pi * (x0 + 1.0)
    weights = math.pi * w0
    if d == 0:
        return float(values_on_angles())
    rest = nodes.size ** (d - 1)
    slab = max(1, _SLAB_BUDGET // max(1, rest))
    total = 0.0
    for lo in range(0, nodes.size, slab):
        chunk = nodes[lo:lo + slab]
        grids = []
        for axis in range(d):
            shape = [1] * d
            shape[axis] = -1
            src = chunk if axis == 0 else nodes
            grids.append(src.reshape(shape))
        vals = np.asarray(values_on_angles(*grids), dtype=np.float64)
        wfirst = weights[lo:lo + slab]
        acc = vals
        for axis in range(d - 1, 0, -1):
            acc = np.tensordot(acc, weights, axes=([axis], [0]))
        total += float(np.sum(acc * wfirst))
    return total / TWO_PI ** d


def torus_mean_refine(values_on_angles, d, *, n0=64, abs_tol=1e-10,
                      rel_tol=0.0, max_doublings=20):
    """Tensor-product Gauss-Legendre mean over the d-torus, nodes per
    dimension doubled until two successive estimates agree."""
    if d < 0 or d > 4:
        raise QuadratureNonconvergence(f"unsupported torus dimension {d}")
    if d == 0:
        return QuadResult(float(values_on_angles()), 0.0, 1)
    cap = _MAX_NODES[d]
    n = min(max(4, int(n0)), cap)
    prev = torus_tensor_mean(values_on_angles, d, n)
    evals = n ** d
    trace = [(n, prev)]
    for _ in range(max_doublings):
        if 2 * n > cap:
            raise QuadratureNonconvergence(
                f"torus rule hit the {cap} nodes/dim cap in dimension {d} "
                f"(last diff {abs(trace[-1][1] - trace[-2][1]) if len(trace) > 1 else float('nan'):.3e})")
        n *= 2
        cur = torus_tensor_mean(values_on_angles, d, n)
        evals += n ** d
        trace.append((n, cur))
        diff = abs(cur - prev)
        if diff <= max(abs_tol, rel_tol * abs(cur)):
            return QuadResult(cur, diff, evals, True, trace)
        prev = cur
    raise QuadratureNonconvergence(
        f"torus mean did not stabilize to {abs_tol:g} in dimension {d}")


def richardson_to_zero(steps, values, order=1):
    """Polynomial-in-h extrapolation of values(h) to h = 0.

    ``steps`` must be strictly decreasing.  With three points and a halving
    ladder this is the classical two-level Richardson triangle; in general
    the unique degree-(len-1) interpolant is evaluated at 0, which removes
    error terms through h^(len-1) and in particular the O(h) term (order-1
    Richardson) when two or more points are supplied.
    """
    steps = list(map(float, steps))
    vals = list(map(float, values))
    if len(steps) != len(vals) or not steps:
        raise ValueError("steps and values must be equal-length, nonempty")
    if len(steps) == 1:
        return vals[0]
    table = vals[:]
    for level in range(1, len(steps)):
        new = []
        for i in range(len(table) - 1):
            h0, h1 = steps[i], steps[i + level]
            new.append((h0 * table[i + 1] - h1 * table[i]) / (h0 - h1))
        table = new
    return table[0]
