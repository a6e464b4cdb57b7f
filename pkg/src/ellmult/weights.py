"""Small, big, shifted big and Q elliptic weights.

The closed forms are the production path.  The ``*_by_product``
functions evaluate the defining products term by term and exist so the
closed forms can be checked against them.
"""
from __future__ import annotations

from functools import lru_cache

from .errors import DomainError
from .theta import DEFAULT_CONFIG, EvalConfig, LogProduct, ipow

__all__ = [
    "small_weight",
    "big_weight",
    "shifted_big_weight",
    "q_weight",
    "big_weight_by_product",
    "q_weight_by_product",
]


def _check(a, b, q):
    a, b, q = complex(a), complex(b), complex(q)
    if a == 0 or b == 0 or q == 0:
        raise DomainError("weights need nonzero a, b and q")
    return a, b, q


@lru_cache(maxsize=1 << 15)
def small_weight(a, b, q, p, s: int, t: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Weight w_{a,b;q,p}(s, t) of the unit square with north-east corner (s, t)."""
    a, b, q = _check(a, b, q)
    acc = LogProduct(p, cfg)
    acc.scalar(q)
    acc.theta(a * ipow(q, s + 2 * t))
    acc.theta(b * ipow(q, 2 * s + t - 2))
    acc.theta(a * ipow(q, t - s - 1) / b)
    acc.theta(a * ipow(q, s + 2 * t - 2), -1)
    acc.theta(b * ipow(q, 2 * s + t), -1)
    acc.theta(a * ipow(q, t - s + 1) / b, -1)
    return acc.value()


@lru_cache(maxsize=1 << 15)
def big_weight(a, b, q, p, s: int, t: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Column weight W_{a,b;q,p}(s, t) = prod_{j=1}^t w(s, j), closed form."""
    if t < 0:
        raise DomainError(f"big weight is defined for t >= 0 only, got t={t}")
    a, b, q = _check(a, b, q)
    if t == 0:
        return 1 + 0j
    acc = LogProduct(p, cfg)
    acc.scalar(q, t)
    for x in (a * ipow(q, s + 2 * t), b * ipow(q, 2 * s), b * ipow(q, 2 * s - 1),
              a * ipow(q, 1 - s) / b, a * ipow(q, -s) / b):
        acc.theta(x)
    for x in (a * ipow(q, s), b * ipow(q, 2 * s + t), b * ipow(q, 2 * s + t - 1),
              a * ipow(q, 1 + t - s) / b, a * ipow(q, t - s) / b):
        acc.theta(x, -1)
    return acc.value()


def shifted_big_weight(a, b, q, p, rho: int, s: int, t: int,
                       cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """W^{(rho)}_{a,b}(s, t) := W_{a q^{2 rho}, b q^{2 rho}}(s, t)."""
    a, b, q = _check(a, b, q)
    shift = ipow(q, 2 * rho)
    return big_weight(a * shift, b * shift, q, p, s, t, cfg)


@lru_cache(maxsize=1 << 15)
def q_weight(a, b, q, p, ell: int, rho: int, s: int, t: int,
             cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Q_{a,b;q,p}(ell, rho, s, t) = prod_{i=1}^ell W^{(rho)}(i+s, t), closed form."""
    if ell < 0:
        raise DomainError(f"Q-weight is defined for ell >= 0 only, got ell={ell}")
    if t < 0:
        raise DomainError(f"Q-weight is defined for t >= 0 only, got t={t}")
    a, b, q = _check(a, b, q)
    if ell == 0 or t == 0:
        return 1 + 0j
    acc = LogProduct(p, cfg)
    acc.scalar(q, ell * t)
    acc.factorial(a * ipow(q, 1 + 2 * rho + s + 2 * t), q, ell)
    acc.factorial(b * ipow(q, 1 + 2 * rho + 2 * s), q, 2 * ell)
    acc.factorial(a * ipow(q, 1 - ell - s) / b, q, ell)
    acc.factorial(a * ipow(q, -ell - s) / b, q, ell)
    acc.factorial(a * ipow(q, 1 + 2 * rho + s), q, ell, -1)
    acc.factorial(b * ipow(q, 1 + 2 * rho + 2 * s + t), q, 2 * ell, -1)
    acc.factorial(a * ipow(q, 1 + t - ell - s) / b, q, ell, -1)
    acc.factorial(a * ipow(q, t - ell - s) / b, q, ell, -1)
    return acc.value()


def big_weight_by_product(a, b, q, p, s: int, t: int,
                          cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    if t < 0:
        raise DomainError(f"big weight is defined for t >= 0 only, got t={t}")
    value = 1 + 0j
    for j in range(1, t + 1):
        value *= small_weight(a, b, q, p, s, j, cfg)
    return value


def q_weight_by_product(a, b, q, p, ell: int, rho: int, s: int, t: int,
                        cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    if ell < 0:
        raise DomainError(f"Q-weight is defined for ell >= 0 only, got ell={ell}")
    value = 1 + 0j
    for i in range(1, ell + 1):
        value *= shifted_big_weight(a, b, q, p, rho, i + s, t, cfg)
    return value
