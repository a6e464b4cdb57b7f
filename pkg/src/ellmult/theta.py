"""Modified Jacobi theta function and theta shifted factorials.

Everything is multiplicative in the base ``q`` and the nome ``p``.  The
theta function is evaluated as a truncated double product after its
argument has been moved into the annulus ``|p| < |y| <= 1`` with the
quasi-periodicity relation, so the truncation length only depends on
``|p|``.

Long products of theta values (weights, coefficients) are accumulated in
logarithmic form by :class:`LogProduct`; individual factors can be far
outside the double range even when the final quotient is of order one.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import DomainError, PrecisionError, SingularParameterError

__all__ = [
    "EvalConfig",
    "DEFAULT_CONFIG",
    "check_nome",
    "ipow",
    "theta",
    "theta_product",
    "qp_factorial",
    "log_theta",
    "LogProduct",
]


@dataclass(frozen=True)
class EvalConfig:
    truncation_tol: float = 1e-17
    max_terms: int = 512
    guard_eps: float = 1e-12

    def __post_init__(self):
        if not self.truncation_tol > 0:
            raise DomainError("truncation_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")
        if not self.guard_eps > 0:
            raise DomainError("guard_eps must be positive")


DEFAULT_CONFIG = EvalConfig()


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def check_nome(p) -> complex:
    """Return ``p`` as a complex number, rejecting ``|p| >= 1``."""
    p = complex(p)
    if not _finite(p) or not abs(p) < 1:
        raise DomainError(f"nome must satisfy |p| < 1, got {p!r}")
    return p


def ipow(z: complex, n: int) -> complex:
    """Integer power by repeated squaring (no log/exp, so no branch cut)."""
    if n < 0:
        if z == 0:
            raise DomainError("zero raised to a negative power")
        # inverting first overflows to inf instead of underflowing to 0
        return ipow(1 / complex(z), -n)
    result = complex(1)
    base = complex(z)
    while n:
        if n & 1:
            result *= base
        base *= base
        n >>= 1
    return result


def _num_terms(p: complex, cfg: EvalConfig) -> int:
    ap = abs(p)
    if ap == 0:
        return 1
    k = max(1, math.ceil(math.log(cfg.truncation_tol) / math.log(ap)))
    while ap**k >= cfg.truncation_tol:
        k += 1
    if k > cfg.max_terms:
        raise PrecisionError(
            f"|p|={ap:.6g} needs {k} product terms, cap is {cfg.max_terms}",
            bound=ap**cfg.max_terms,
        )
    return k


@lru_cache(maxsize=1 << 16)
def _theta_annulus(y: complex, p: complex, terms: int) -> complex:
    # ∏_{k<terms} (1 - y p^k)(1 - p^{k+1}/y), valid for |p| < |y| <= 1
    result = complex(1)
    yk = y
    pk = p / y
    for _ in range(terms):
        result *= (1 - yk) * (1 - pk)
        yk *= p
        pk *= p
    return result


def _reduce(x, p: complex, cfg: EvalConfig) -> tuple[int, complex, complex]:
    """Split ``x = p**n * y`` with ``|p| < |y| <= 1``; return ``(n, y, theta(y))``.

    Then ``theta(x) = (-1)**n * y**(-n) * p**(-n(n-1)/2) * theta(y)``.
    """
    x = complex(x)
    if x == 0 or not _finite(x):
        raise DomainError(f"theta argument must be finite and nonzero, got {x!r}")
    if p == 0:
        return 0, x, 1 - x
    terms = _num_terms(p, cfg)
    n = math.floor(math.log(abs(x)) / math.log(abs(p)))
    y = x * ipow(p, -n) if n else x
    # floating point can leave |y| a hair outside the annulus
    if abs(y) > 1:
        n += 1
        y = x * ipow(p, -n)
    elif abs(y) <= abs(p):
        n -= 1
        y = x * ipow(p, -n)
    return n, y, _theta_annulus(y, p, terms)


def theta(x, p, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Modified Jacobi theta function ``(x;p)_inf (p/x;p)_inf``."""
    p = check_nome(p)
    n, y, ty = _reduce(x, p, cfg)
    if n == 0 or ty == 0:
        return ty
    value = ty * ipow(y, -n) * ipow(p, -(n * (n - 1)) // 2)
    if n % 2:
        value = -value
    if not _finite(value):
        raise PrecisionError(f"theta({x!r}) overflows double precision")
    return value


def theta_product(xs: Iterable, p, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """``theta(x_1) * ... * theta(x_m)``; the empty product is 1."""
    acc = LogProduct(p, cfg)
    for x in xs:
        acc.theta(x)
    return acc.value()


def qp_factorial(a, q, p, n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Theta shifted factorial ``(a;q,p)_n`` for any integer ``n``.

    Raises :class:`SingularParameterError` when ``n < 0`` and one of the
    reciprocal theta factors is (numerically) zero.
    """
    acc = LogProduct(p, cfg)
    acc.factorial(a, q, n)
    return acc.value()


def log_theta(x, p, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple:
    """Return ``(log theta(x), |theta(y)|)`` for the reduced argument ``y``.

    The logarithm is ``None`` when theta(x) is exactly zero.  The second
    entry measures distance from the zero set independently of the scale
    of ``x`` and is what the denominator guard compares against.
    """
    p = check_nome(p)
    n, y, ty = _reduce(x, p, cfg)
    if ty == 0:
        return None, 0.0
    lg = cmath.log(ty)
    if n:
        lg += n * (1j * math.pi - cmath.log(y)) - ((n * (n - 1)) // 2) * cmath.log(p)
    return lg, abs(ty)


class LogProduct:
    """Running product of theta factors held as a complex logarithm.

    Positive multiplicities are numerator factors; an exactly vanishing
    numerator factor makes the whole product zero.  Negative
    multiplicities are denominator factors and are guarded: a reduced
    theta value below ``cfg.guard_eps`` raises SingularParameterError.
    """

    __slots__ = ("p", "cfg", "log", "zero")

    def __init__(self, p, cfg: EvalConfig = DEFAULT_CONFIG):
        self.p = check_nome(p)
        self.cfg = cfg
        self.log = 0j
        self.zero = False

    def theta(self, x, mult: int = 1) -> "LogProduct":
        if mult == 0:
            return self
        return self.add_log(*log_theta(x, self.p, self.cfg), mult)

    def add_log(self, lg, reduced_abs: float, mult: int = 1) -> "LogProduct":
        """Multiply by exp(lg)**mult, where ``lg`` comes from :func:`log_theta`."""
        if mult < 0 and reduced_abs < self.cfg.guard_eps:
            raise SingularParameterError("theta factor vanishes in a denominator")
        if lg is None:
            self.zero = True
        else:
            self.log += mult * lg
        return self

    def factorial(self, a, q, n: int, mult: int = 1) -> "LogProduct":
        """Multiply by ``(a;q,p)_n ** mult``."""
        a = complex(a)
        q = complex(q)
        if a == 0 or q == 0:
            raise DomainError("theta shifted factorial needs nonzero a and q")
        if n >= 0:
            for k in range(n):
                self.theta(a * ipow(q, k), mult)
        else:
            for k in range(-n):
                self.theta(a * ipow(q, n + k), -mult)
        return self

    def scalar(self, z, mult: int = 1) -> "LogProduct":
        z = complex(z)
        if z == 0:
            if mult < 0:
                raise SingularParameterError("division by zero scalar")
            self.zero = True
            return self
        self.log += mult * cmath.log(z)
        return self

    def value(self) -> complex:
        if self.zero:
            return 0j
        try:
            v = cmath.exp(self.log)
        except OverflowError as exc:
            raise PrecisionError("product overflows double precision") from exc
        if not _finite(v):
            raise PrecisionError("product overflows double precision")
        return v
