import numpy as np
import pytest

import dirichlet_lab as dl


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def davenport():
    return dl.DirichletPolynomial({1: 1.0, 2: -2.0})


@pytest.fixture
def mono2():
    return dl.DirichletPolynomial({2: 1.0})


@pytest.fixture
def two_term():
    return dl.DirichletPolynomial({1: 1.0, 2: 0.5})


@pytest.fixture
def three_term_unit():
    return dl.DirichletPolynomial({1: 1.0, 2: 1.0, 3: 1.0})


def random_polynomial(rng, max_index=12, primes=(2, 3), max_terms=5,
                      include_constant=True):
    """Seeded random polynomial supported on products of the given primes."""
    allowed = [n for n in range(1, max_index + 1)
               if all(p in primes or n % p for p in range(2, n + 1)
                      if n % p == 0 and _is_prime(p))]
    allowed = [n for n in allowed if _supported(n, primes)]
    if not include_constant:
        allowed = [n for n in allowed if n > 1]
    k = int(rng.integers(1, max_terms + 1))
    chosen = rng.choice(allowed, size=min(k, len(allowed)), replace=False)
    terms = {}
    for n in chosen:
        terms[int(n)] = complex(rng.normal(), rng.normal())
    return dl.DirichletPolynomial(terms)


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _supported(n, primes):
    m = n
    for p in primes:
        while m % p == 0:
            m //= p
    return m == 1
