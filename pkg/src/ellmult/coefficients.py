"""Elliptic binomial and multinomial coefficients and their q-analogues."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Sequence

from .errors import DomainError
from .theta import DEFAULT_CONFIG, EvalConfig, LogProduct, check_nome, ipow

__all__ = [
    "MultiParams",
    "prefix_sums",
    "elliptic_binomial",
    "elliptic_multinomial",
    "q_multinomial",
    "q_multinomial_poly",
]


@dataclass(frozen=True)
class MultiParams:
    """Numeric point (a_1..a_r; q, p) at which multinomial data is evaluated."""

    a: tuple
    q: complex
    p: complex

    def __post_init__(self):
        a = tuple(complex(x) for x in self.a)
        if not a:
            raise DomainError("MultiParams needs at least one a_i")
        if any(x == 0 for x in a) or complex(self.q) == 0:
            raise DomainError("a_i and q must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "p", check_nome(self.p))

    @property
    def r(self) -> int:
        return len(self.a)

    def shifted(self, exponents: Sequence[int]) -> "MultiParams":
        """Parameters with a_i replaced by a_i * q**exponents[i]."""
        if len(exponents) != self.r:
            raise DomainError("shift vector has the wrong length")
        return MultiParams(tuple(x * ipow(self.q, e) for x, e in zip(self.a, exponents)),
                           self.q, self.p)


def prefix_sums(ks: Sequence[int]) -> list[int]:
    """[K_0, K_1, ..., K_r] with K_0 = 0."""
    return [0, *accumulate(ks)]


@lru_cache(maxsize=1 << 14)
def elliptic_binomial(n: int, k: int, a, b, q, p, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Elliptic binomial coefficient [n over k]_{a,b;q,p}."""
    if k < 0 or k > n:
        return 0j
    a, b, q = complex(a), complex(b), complex(q)
    if a == 0 or b == 0 or q == 0:
        raise DomainError("elliptic binomial needs nonzero a, b and q")
    m = n - k
    acc = LogProduct(p, cfg)
    for x in (ipow(q, 1 + k), a * ipow(q, 1 + k), b * ipow(q, 1 + k), a * ipow(q, 1 - k) / b):
        acc.factorial(x, q, m)
    for x in (q, a * q, b * ipow(q, 1 + 2 * k), a * q / b):
        acc.factorial(x, q, m, -1)
    return acc.value()


def elliptic_multinomial(ks: Sequence[int], params: MultiParams,
                         cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Elliptic multinomial coefficient [K_r over k_1..k_r]_{a_1..a_r;q,p}.

    >>> elliptic_multinomial((0, 0, 0), MultiParams((2, 3, 5), 0.7, 0.1))
    (1+0j)
    """
    return _multinomial(tuple(int(k) for k in ks), params, cfg)


@lru_cache(maxsize=1 << 15)
def _multinomial(ks: tuple, params: MultiParams, cfg: EvalConfig) -> complex:
    r = params.r
    if len(ks) != r:
        raise DomainError(f"exponent vector of length {len(ks)} for r={r}")
    K = prefix_sums(ks)
    if K[r] < 0:
        raise DomainError("elliptic multinomial needs k_1 + ... + k_r >= 0")
    if any(k < 0 for k in ks):
        return 0j
    q, a = params.q, params.a
    acc = LogProduct(params.p, cfg)
    acc.factorial(q, q, K[r])
    for k in ks:
        acc.factorial(q, q, k, -1)
    for i in range(r):
        acc.factorial(a[i] * ipow(q, 1 + K[r] - ks[i]), q, ks[i])
        acc.factorial(a[i] * ipow(q, 1 + 2 * K[i]), q, ks[i], -1)
    for i in range(r):
        for j in range(i + 1, r):
            acc.factorial(a[i] * ipow(q, 1 - ks[i]) / a[j], q, ks[j])
            acc.factorial(a[i] * q / a[j], q, ks[j], -1)
    return acc.value()


@lru_cache(maxsize=256)
def q_multinomial_poly(ks: tuple) -> tuple:
    """Integer coefficients (in powers of q) of the classical q-multinomial."""
    if any(k < 0 for k in ks):
        raise DomainError("q-multinomial needs nonnegative k_i")
    poly = [1]
    total = 0
    for k in ks:
        poly = _poly_mul(poly, _q_binomial_poly(total + k, k))
        total += k
    while len(poly) > 1 and not poly[-1]:
        poly.pop()
    return tuple(poly)


def _q_binomial_poly(n: int, k: int) -> list:
    # Pascal rule [n, k] = [n-1, k-1] + q^k [n-1, k]
    rows = {(0, 0): [1]}

    def get(m, j):
        if j < 0 or j > m:
            return [0]
        if (m, j) not in rows:
            left = get(m - 1, j - 1)
            right = [0] * j + get(m - 1, j)
            size = max(len(left), len(right))
            rows[m, j] = [(left[i] if i < len(left) else 0) + (right[i] if i < len(right) else 0)
                          for i in range(size)]
        return rows[m, j]

    return get(n, k)


def _poly_mul(f: list, g: list) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return out


def q_multinomial(ks: Sequence[int], q) -> complex:
    """Classical q-multinomial (q;q)_N / prod (q;q)_{k_i}, evaluated at q."""
    q = complex(q)
    if q == 0:
        raise DomainError("q must be nonzero")
    value = 0j
    for c in reversed(q_multinomial_poly(tuple(int(k) for k in ks))):
        value = value * q + c
    return value
