"""Dirichlet polynomials, two-prime generalized series, characters and Blaschke data.

Half-plane points are plain Python/numpy complex numbers ``s = sigma + 1j*t``.
All objects are immutable after construction and every operation is a pure
function, so everything here is safe to call from parallel workers.
"""

from __future__ import annotations

import cmath
import json
import math

import numpy as np

from .errors import DegenerateDenominator, InputError, MissingPrimeAngle, PoleHit

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)

# chunk bound for outer-product evaluations (points x terms)
_EVAL_CHUNK = 1 << 22


def _as_complex_array(s):
    return np.asarray(s, dtype=np.complex128)


def factorize(n):
    """Prime factorization by trial division, as {prime: exponent}. n <= 2**31."""
    if n < 1 or n != int(n):
        raise InputError(f"factorize expects a positive integer, got {n!r}")
    n = int(n)
    if n >= (1 << 31):
        raise InputError(f"n = {n} exceeds the supported range 2**31")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    return n >= 2 and factorize(n) == {n: 1}


class DirichletPolynomial:
    """Finite sum f(s) = sum a_n n^(-s), stored with strictly increasing n.

    Evaluation accumulates terms in increasing-n order (numpy pairwise
    reduction over a fixed term axis), so results are bit-reproducible.
    """

    def __init__(self, terms):
        pairs = []
        for n, a in dict(terms).items() if isinstance(terms, dict) else terms:
            n = int(n)
            if n < 1:
                raise InputError(f"term index n must be >= 1, got {n}")
            pairs.append((n, complex(a)))
        pairs.sort(key=lambda t: t[0])
        ns = [n for n, _ in pairs]
        if len(set(ns)) != len(ns):
            raise InputError("duplicate n in Dirichlet polynomial terms")
        self._ns = np.array(ns, dtype=np.int64)
        self._coeffs = np.array([a for _, a in pairs], dtype=np.complex128)
        self._log_ns = np.log(self._ns.astype(np.float64))

    @property
    def terms(self):
        return [(int(n), complex(a)) for n, a in zip(self._ns, self._coeffs)]

    @property
    def indices(self):
        return self._ns.copy()

    @property
    def coefficients(self):
        return self._coeffs.copy()

    @property
    def frequencies(self):
        """log n per term (the exponential frequencies of the sum)."""
        return self._log_ns.copy()

    @property
    def value_at_infinity(self):
        """Coefficient of n = 1 (zero if absent)."""
        if len(self._ns) and self._ns[0] == 1:
            return complex(self._coeffs[0])
        return 0j

    def support_primes(self):
        primes = set()
        for n in self._ns:
            primes.update(factorize(int(n)))
        return sorted(primes)

    def eval(self, s):
        return complex(self.eval_many(np.array([s], dtype=np.complex128))[0])

    def __call__(self, s):
        return self.eval(s)

    def eval_many(self, s):
        s = _as_complex_array(s)
        flat = s.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        n_terms = max(1, len(self._coeffs))
        step = max(1, _EVAL_CHUNK // n_terms)
        for lo in range(0, flat.size, step):
            block = flat[lo:lo + step]
            if len(self._coeffs) == 0:
                out[lo:lo + step] = 0.0
            else:
                out[lo:lo + step] = np.exp(
                    -np.multiply.outer(block, self._log_ns)) @ self._coeffs
        return out.reshape(s.shape)

    def derivative(self):
        """Termwise d/ds: coefficients -a_n log n (the n = 1 term vanishes)."""
        return DirichletPolynomial(
            [(int(n), complex(-a * ln)) for n, a, ln in
             zip(self._ns, self._coeffs, self._log_ns)])

    def tail_bound(self, sigma):
        """sum_{n>=2} |a_n| n^(-sigma); |f(s) - a_1| <= this for Re s >= sigma."""
        mask = self._ns >= 2
        if not mask.any():
            return 0.0
        return float(np.sum(np.abs(self._coeffs[mask])
                            * np.exp(-sigma * self._log_ns[mask])))

    def coefficient_l1(self):
        return float(np.sum(np.abs(self._coeffs)))

    def __repr__(self):
        inner = ", ".join(f"{n}: {a:.6g}" for n, a in self.terms[:6])
        more = ", ..." if len(self._ns) > 6 else ""
        return f"DirichletPolynomial({{{inner}{more}}})"


class GeneralizedSeries:
    """Finite sum g(s) = sum c exp(-s * lambda) with lambda = a log2 + b log3.

    Exponent pairs (a, b) are integers; the frequency lambda must be
    nonnegative (lambda = 0 only for (a, b) = (0, 0)), so the sum is bounded
    on the closed right half-plane.  Mixed-sign pairs with positive frequency
    are allowed: the half-space completion used by the outer construction
    produces them.
    """

    def __init__(self, terms):
        pairs = []
        for (a, b), c in dict(terms).items() if isinstance(terms, dict) else terms:
            pairs.append(((int(a), int(b)), complex(c)))
        pairs.sort(key=lambda t: (t[0][0] * LOG2 + t[0][1] * LOG3, t[0]))
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            raise InputError("duplicate (a, b) in generalized series terms")
        for (a, b) in keys:
            lam = a * LOG2 + b * LOG3
            if (a, b) != (0, 0) and lam < 1e-12:
                raise InputError(
                    f"frequency for (a, b) = ({a}, {b}) is {lam:.3e}; "
                    "only nonnegative frequencies are supported")
        self._pairs = np.array(keys, dtype=np.int64).reshape(-1, 2)
        self._coeffs = np.array([c for _, c in pairs], dtype=np.complex128)
        self._lambdas = (self._pairs[:, 0] * LOG2 + self._pairs[:, 1] * LOG3
                         if len(pairs) else np.zeros(0))
        if len(pairs) and keys[0] == (0, 0):
            self._lambdas[0] = 0.0

    @property
    def terms(self):
        return [((int(a), int(b)), complex(c))
                for (a, b), c in zip(self._pairs, self._coeffs)]

    @property
    def exponent_pairs(self):
        return self._pairs.copy()

    @property
    def coefficients(self):
        return self._coeffs.copy()

    @property
    def frequencies(self):
        return self._lambdas.copy()

    @property
    def value_at_infinity(self):
        """Coefficient of the zero frequency (a, b) = (0, 0)."""
        if len(self._coeffs) and tuple(self._pairs[0]) == (0, 0):
            return complex(self._coeffs[0])
        return 0j

    def support_primes(self):
        used = set()
        for a, b in self._pairs:
            if a:
                used.add(2)
            if b:
                used.add(3)
        return sorted(used)

    def eval(self, s):
        return complex(self.eval_many(np.array([s], dtype=np.complex128))[0])

    def __call__(self, s):
        return self.eval(s)

    def _factor_matrix(self):
        """Cached (a-values, b-values, coefficient matrix) for the separable
        evaluation exp(-s a log2) C exp(-s b log3); pays off once the term
        count is large because only O(#a + #b) exponentials per point are
        needed instead of one per term."""
        if not hasattr(self, "_fact"):
            a_vals = np.unique(self._pairs[:, 0])
            b_vals = np.unique(self._pairs[:, 1])
            a_idx = np.searchsorted(a_vals, self._pairs[:, 0])
            b_idx = np.searchsorted(b_vals, self._pairs[:, 1])
            C = np.zeros((a_vals.size, b_vals.size), dtype=np.complex128)
            np.add.at(C, (a_idx, b_idx), self._coeffs)
            self._fact = (a_vals.astype(np.float64) * LOG2,
                          b_vals.astype(np.float64) * LOG3, C)
        return self._fact

    def eval_many(self, s):
        s = _as_complex_array(s)
        flat = s.ravel()
        if len(self._coeffs) == 0:
            return np.zeros(s.shape, dtype=np.complex128)
        out = np.empty(flat.shape, dtype=np.complex128)
        use_factored = len(self._coeffs) >= 128
        if use_factored:
            la, lb, C = self._factor_matrix()
            # the split exponents a log2, b log3 can be individually huge
            # even though every lambda >= 0; guard against exp overflow
            span = max(np.abs(la).max(initial=0.0), np.abs(lb).max(initial=0.0))
            step = max(1, _EVAL_CHUNK // max(la.size, lb.size, 1))
            for lo in range(0, flat.size, step):
                block = flat[lo:lo + step]
                if span * float(np.abs(block.real).max(initial=0.0)) < 600.0:
                    E2 = np.exp(-np.multiply.outer(block, la))
                    E3 = np.exp(-np.multiply.outer(block, lb))
                    out[lo:lo + step] = np.einsum("sb,sb->s", E2 @ C, E3,
                                                  optimize=True)
                else:
                    out[lo:lo + step] = np.exp(
                        -np.multiply.outer(block, self._lambdas)) @ self._coeffs
            return out.reshape(s.shape)
        n_terms = len(self._coeffs)
        step = max(1, _EVAL_CHUNK // n_terms)
        for lo in range(0, flat.size, step):
            block = flat[lo:lo + step]
            out[lo:lo + step] = np.exp(
                -np.multiply.outer(block, self._lambdas)) @ self._coeffs
        return out.reshape(s.shape)

    def eval_on_torus(self, theta2, theta3):
        """Pointwise values of the torus function at the given angle pairs
        (angles of (2^-s, 3^-s)); arrays must have matching shapes."""
        theta2 = np.asarray(theta2, dtype=np.float64).ravel()
        theta3 = np.asarray(theta3, dtype=np.float64).ravel()
        if len(self._coeffs) >= 128:
            la, lb, C = self._factor_matrix()
            E2 = np.exp(1j * np.multiply.outer(theta2, la / LOG2))
            E3 = np.exp(1j * np.multiply.outer(theta3, lb / LOG3))
            return np.einsum("sb,sb->s", E2 @ C, E3, optimize=True)
        phase = (np.multiply.outer(theta2, self._pairs[:, 0])
                 + np.multiply.outer(theta3, self._pairs[:, 1]))
        return np.exp(1j * phase) @ self._coeffs

    def derivative(self):
        return GeneralizedSeries(
            [((int(a), int(b)), complex(-c * lam)) for (a, b), c, lam in
             zip(self._pairs, self._coeffs, self._lambdas)])

    def tail_bound(self, sigma):
        """sum over positive frequencies of |c| exp(-sigma lambda)."""
        mask = self._lambdas > 0
        if not mask.any():
            return 0.0
        return float(np.sum(np.abs(self._coeffs[mask])
                            * np.exp(-sigma * self._lambdas[mask])))

    def coefficient_l1(self):
        return float(np.sum(np.abs(self._coeffs)))

    def __repr__(self):
        return (f"GeneralizedSeries({len(self._coeffs)} terms, "
                f"max frequency {self._lambdas.max() if len(self._coeffs) else 0.0:.3f})")


class Character:
    """Completely multiplicative unimodular map, stored as angles at primes.

    chi(n) = prod exp(i * theta_p * v_p(n)) over the factorization of n.
    """

    def __init__(self, angles):
        cleaned = {}
        for p, theta in dict(angles).items():
            p = int(p)
            if not is_prime(p):
                raise InputError(f"character angle at non-prime {p}")
            if p in cleaned:
                raise InputError(f"duplicate prime {p} in character angles")
            cleaned[p] = float(theta) % (2.0 * math.pi)
        self._angles = dict(sorted(cleaned.items()))

    @property
    def angles(self):
        return dict(self._angles)

    def primes(self):
        return sorted(self._angles)

    def angle_of(self, p):
        try:
            return self._angles[int(p)]
        except KeyError:
            raise MissingPrimeAngle(f"no angle stored for prime {p}") from None

    def value(self, n):
        """chi(n) from the factorization of n; |chi(n)| = 1 exactly."""
        phase = 0.0
        for p, v in factorize(int(n)).items():
            phase += self.angle_of(p) * v
        return cmath.exp(1j * phase)

    @classmethod
    def trivial(cls, primes):
        return cls({p: 0.0 for p in primes})

    @classmethod
    def vertical(cls, tau, primes):
        """Character of the vertical translation V_tau: theta_p = (-tau log p) mod 2pi."""
        return cls({p: (-tau * math.log(p)) % (2.0 * math.pi) for p in primes})

    def __repr__(self):
        return f"Character({self._angles})"


class BlaschkeData:
    """Zero list (with multiplicity, repeated) of a half-plane Blaschke product."""

    def __init__(self, zeros):
        zs = [complex(z) for z in zeros]
        for z in zs:
            if z.real <= 0:
                raise InputError(f"Blaschke zero {z} must satisfy Re > 0")
        self._zeros = np.array(zs, dtype=np.complex128)

    @property
    def zeros(self):
        return [complex(z) for z in self._zeros]

    def convergence_sum(self):
        """sum Re(alpha) / (1 + Im(alpha)^2); trivially finite for a finite list."""
        z = self._zeros
        return float(np.sum(z.real / (1.0 + z.imag ** 2)))

    def __repr__(self):
        return f"BlaschkeData({len(self._zeros)} zeros)"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def twist(f, chi):
    """f_chi with coefficients a_n chi(n); support unchanged.

    Works for both series kinds; for a generalized series the character must
    carry angles at 2 and 3 and acts by chi(2)^a chi(3)^b.
    """
    if isinstance(f, GeneralizedSeries):
        t2 = chi.angle_of(2) if any(a for (a, _), _ in f.terms) else 0.0
        t3 = chi.angle_of(3) if any(b for (_, b), _ in f.terms) else 0.0
        return GeneralizedSeries(
            [((a, b), c * cmath.exp(1j * (a * t2 + b * t3)))
             for (a, b), c in f.terms])
    return DirichletPolynomial(
        [(n, a * chi.value(n)) for n, a in f.terms])


def vertical_translate(f, tau):
    """V_tau f(s) = f(s + i tau), as the twist by chi(p) = p^(-i tau)."""
    if isinstance(f, GeneralizedSeries):
        return GeneralizedSeries(
            [((a, b), c * cmath.exp(-1j * tau * (a * LOG2 + b * LOG3)))
             for (a, b), c in f.terms])
    return DirichletPolynomial(
        [(n, a * cmath.exp(-1j * tau * math.log(n))) for n, a in f.terms])


def frostman_map(values, xi):
    """Mobius map (xi - w) / (1 - conj(xi) w) applied to an array of values."""
    values = np.asarray(values, dtype=np.complex128)
    return (xi - values) / (1.0 - np.conj(xi) * values)


def frostman_shift_eval(f, xi, s):
    """Value of the Frostman shift f_xi = (xi - f) / (1 - conj(xi) f) at s."""
    if abs(xi) >= 1.0:
        raise InputError(f"Frostman parameter must satisfy |xi| < 1, got |xi| = {abs(xi)}")
    w = f.eval(s) if hasattr(f, "eval") else complex(f(s))
    den = 1.0 - complex(xi).conjugate() * w
    if abs(den) < 1e-15:
        raise DegenerateDenominator(
            f"|1 - conj(xi) f(s)| = {abs(den):.3e} at s = {s}")
    return (xi - w) / den


def blaschke_eval(B, s, _pole_tol=1e-15):
    """Half-plane Blaschke product over the zeros of B, with multiplicity.

    Each factor is ((1 - conj(alpha)^2) / |1 - alpha^2|) (s - alpha)/(s + conj(alpha)).
    When alpha = 1 the normalizing factor degenerates (0/0); since it is a pure
    rotation it is dropped for that zero, and only |B|-dependent outputs remain
    meaningful.
    """
    s_arr = _as_complex_array(s)
    out = np.ones(s_arr.shape, dtype=np.complex128)
    for alpha in B.zeros:
        one_minus_a2 = 1.0 - alpha * alpha
        if abs(one_minus_a2) < 1e-14:
            factor = 1.0
        else:
            factor = (1.0 - alpha.conjugate() ** 2) / abs(one_minus_a2)
        den = s_arr + alpha.conjugate()
        if np.any(np.abs(den) < _pole_tol * max(1.0, abs(alpha))):
            raise PoleHit(f"evaluation at reflected zero -conj({alpha})")
        out = out * factor * (s_arr - alpha) / den
    if np.isscalar(s) or np.asarray(s).shape == ():
        return complex(out.ravel()[0])
    return out


def tail_bound(f, sigma):
    """Coefficient tail sum guaranteeing |f(s) - f(+infinity)| <= bound for Re s >= sigma."""
    return f.tail_bound(sigma)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def _no_duplicate_keys(pairs):
    keys = [k for k, _ in pairs]
    if len(set(keys)) != len(keys):
        raise InputError(f"duplicate JSON keys: {sorted(keys)}")
    return dict(pairs)


def _load_json(source):
    if isinstance(source, (dict, list)):
        return source
    return json.loads(source, object_pairs_hook=_no_duplicate_keys)


def series_from_json(source):
    """Read {"terms": [{"n": 2, "re": 1.0, "im": 0.0}, ...]}; duplicate n rejected."""
    data = _load_json(source)
    try:
        raw = data["terms"]
    except (KeyError, TypeError):
        raise InputError('series JSON must carry a "terms" list') from None
    terms = []
    for entry in raw:
        try:
            terms.append((int(entry["n"]),
                          complex(float(entry["re"]), float(entry.get("im", 0.0)))))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad series term {entry!r}: {exc}") from None
    ns = [n for n, _ in terms]
    if len(set(ns)) != len(ns):
        raise InputError("duplicate n in series terms")
    return DirichletPolynomial(terms)


def series_to_json(f):
    return {"terms": [{"n": n, "re": a.real, "im": a.imag} for n, a in f.terms]}


def generalized_from_json(source):
    """Read {"terms": [{"a": 1, "b": 0, "re": ..., "im": ...}]}; duplicate (a, b) rejected."""
    data = _load_json(source)
    try:
        raw = data["terms"]
    except (KeyError, TypeError):
        raise InputError('generalized-series JSON must carry a "terms" list') from None
    terms = []
    for entry in raw:
        try:
            terms.append(((int(entry["a"]), int(entry["b"])),
                          complex(float(entry["re"]), float(entry.get("im", 0.0)))))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad generalized term {entry!r}: {exc}") from None
    keys = [k for k, _ in terms]
    if len(set(keys)) != len(keys):
        raise InputError("duplicate (a, b) in generalized series terms")
    return GeneralizedSeries(terms)


def generalized_to_json(g):
    return {"terms": [{"a": a, "b": b, "re": c.real, "im": c.imag}
                      for (a, b), c in g.terms]}


def character_from_json(source):
    """Read {"angles": [{"p": 2, "theta": 3.14159}, ...]}; duplicate p rejected."""
    data = _load_json(source)
    try:
        raw = data["angles"]
    except (KeyError, TypeError):
        raise InputError('character JSON must carry an "angles" list') from None
    angles = {}
    for entry in raw:
        try:
            p = int(entry["p"])
            theta = float(entry["theta"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad character entry {entry!r}: {exc}") from None
        if p in angles:
            raise InputError(f"duplicate prime {p} in character angles")
        angles[p] = theta
    return Character(angles)


def character_to_json(chi):
    return {"angles": [{"p": p, "theta": theta} for p, theta in chi.angles.items()]}


def load_any_series(source):
    """Dispatch JSON to DirichletPolynomial or GeneralizedSeries by term shape."""
    data = _load_json(source)
    try:
        raw = data["terms"]
    except (KeyError, TypeError):
        raise InputError('series JSON must carry a "terms" list') from None
    if raw and isinstance(raw[0], dict) and "a" in raw[0]:
        return generalized_from_json(data)
    return series_from_json(data)
