"""Registry of canonical test functions.

Every entry is constructible offline in well under a second; names are
unique and stable because reports and configs refer to them."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import InputError
from .series import DirichletPolynomial, GeneralizedSeries


@lru_cache(maxsize=None)
def _sec2_example(degree=24, grid_n=512):
    """Two-prime series with continuous half-plane extension whose torus
    limit function is discontinuous at the corner point (-1, -1).

    The target is exp(-(2 - z1 - z2)/(2 + z1 + z2)) on the bidisc; its
    power-series coefficients are read off the boundary torus by FFT on a
    half-cell-offset grid (the offset dodges the singular corner), then
    truncated to total degree `degree`."""
    n = grid_n
    theta = 2.0 * math.pi * (np.arange(n) + 0.5) / n
    z1 = np.exp(1j * theta)[:, None]
    z2 = np.exp(1j * theta)[None, :]
    g = np.exp(-(2.0 - z1 - z2) / (2.0 + z1 + z2))
    c = np.fft.fft2(g) / n ** 2
    k = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
    phase = np.exp(-1j * math.pi * k / n)
    c = c * phase[:, None] * phase[None, :]
    K1, K2 = np.meshgrid(k, k, indexing="ij")
    keep = (K1 >= 0) & (K2 >= 0) & (K1 + K2 <= degree) & (np.abs(c) > 1e-12)
    terms = [((int(a), int(b)), complex(v))
             for a, b, v in zip(K1[keep], K2[keep], c[keep])]
    return GeneralizedSeries(terms)


_BUILDERS = {
    "const": (lambda: DirichletPolynomial({1: 0.5}),
              "constant series, value 1/2 everywhere"),
    "mono2": (lambda: DirichletPolynomial({2: 1.0}),
              "single frequency 2^(-s); inner, |boundary values| = 1"),
    "davenport": (lambda: DirichletPolynomial({1: 1.0, 2: -2.0}),
                  "1 - 2^(1-s); explicit zero lattice at 1 + 2 pi i k / log 2"),
    "two_term": (lambda: DirichletPolynomial({1: 1.0, 2: 0.5}),
                 "1 + 2^(-s)/2; zero-free on the closed right half-plane"),
    "three_term": (lambda: DirichletPolynomial({1: 1 / 3, 2: 1 / 3, 3: 1 / 3}),
                   "(1 + 2^(-s) + 3^(-s))/3, normalized to map into the disc"),
    "sec2_example": (lambda: _sec2_example(),
                     "truncated bidisc series of exp(-(2-z1-z2)/(2+z1+z2)); "
                     "continuous on the closed half-plane, torus limit "
                     "discontinuous at (-1, -1)"),
}


def corpus_names():
    return list(_BUILDERS)


def corpus_build(name):
    try:
        builder, _ = _BUILDERS[name]
    except KeyError:
        raise InputError(
            f"unknown corpus entry {name!r}; choose from {corpus_names()}") from None
    return builder()


def corpus_table():
    rows = []
    for name, (builder, note) in _BUILDERS.items():
        f = builder()
        kind = type(f).__name__
        n_terms = len(f.terms)
        rows.append((name, kind, n_terms, note))
    return rows
