"""The algebra of elliptic-commuting variables X_1..X_r over theta monomials.

Left coefficients are kept symbolically as products of theta factors
whose arguments are Laurent monomials ``q^e * a_1^m_1 ... a_r^m_r``
(:class:`ThetaAtom`).  Moving a coefficient ``f`` to the left past
``X_i`` substitutes ``a_i -> a_i q`` and ``a_j -> a_j q^2`` for ``j != i``;
on an atom this only changes the q-exponent, so all rewriting is exact
integer arithmetic.

Sums of coefficients are never simplified additively.  They are kept as
formal sums (:class:`CoeffSum`) and compared by evaluating at random
parameter points.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence, Union

from .coefficients import MultiParams
from .errors import DomainError, InconclusiveError, SingularParameterError
from .theta import DEFAULT_CONFIG, EvalConfig, LogProduct, ipow, log_theta

__all__ = [
    "ThetaAtom",
    "CoeffExpr",
    "CoeffSum",
    "NormalFormElement",
    "Word",
    "shift_coeff",
    "small_weight_expr",
    "big_weight_expr",
    "q_weight_expr",
    "normalize_word",
    "multiply",
    "power_of_sum",
    "sum_of_words",
    "Evaluator",
    "evaluate_coeff",
    "coeff_equal_probabilistic",
]


@dataclass(frozen=True, order=True)
class ThetaAtom:
    """The theta argument ``q^qexp * prod_i a_i^aexp[i]``."""

    qexp: int
    aexp: tuple

    def shift_exponent(self, k: Sequence[int]) -> int:
        # X_1^k_1 ... X_r^k_r sends a_j to a_j q^{2|k| - k_j}
        total = sum(k)
        return sum(m * (2 * total - kj) for m, kj in zip(self.aexp, k))

    def shifted(self, k: Sequence[int]) -> "ThetaAtom":
        return ThetaAtom(self.qexp + self.shift_exponent(k), self.aexp)

    def __str__(self):
        parts = [f"q^{self.qexp}"]
        parts += [f"a{i + 1}^{m}" for i, m in enumerate(self.aexp) if m]
        return " * ".join(parts)


def _unit(r: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(r))


@dataclass(frozen=True)
class CoeffExpr:
    """``scalar * q^qpow * prod theta(atom)^mult``, canonically ordered."""

    scalar: Fraction = Fraction(1)
    qpow: int = 0
    factors: tuple = ()

    @classmethod
    def build(cls, factors: Union[Mapping, Iterable] = (), qpow: int = 0, scalar=1) -> "CoeffExpr":
        merged: dict = {}
        items = factors.items() if isinstance(factors, Mapping) else factors
        for atom, mult in items:
            merged[atom] = merged.get(atom, 0) + mult
        canon = tuple(sorted((a, m) for a, m in merged.items() if m))
        return cls(Fraction(scalar), qpow, canon)

    @classmethod
    def one(cls) -> "CoeffExpr":
        return cls()

    @property
    def key(self) -> tuple:
        return self.qpow, self.factors

    def __mul__(self, other: "CoeffExpr") -> "CoeffExpr":
        if not isinstance(other, CoeffExpr):
            return NotImplemented
        if not other.factors:
            return CoeffExpr(self.scalar * other.scalar, self.qpow + other.qpow, self.factors)
        if not self.factors:
            return CoeffExpr(self.scalar * other.scalar, self.qpow + other.qpow, other.factors)
        merged = dict(self.factors)
        for atom, mult in other.factors:
            merged[atom] = merged.get(atom, 0) + mult
        canon = tuple(sorted((a, m) for a, m in merged.items() if m))
        return CoeffExpr(self.scalar * other.scalar, self.qpow + other.qpow, canon)

    def shift(self, k: Sequence[int]) -> "CoeffExpr":
        """Coefficient obtained by moving ``self`` left past X_1^k_1..X_r^k_r."""
        if not any(k) or not self.factors:
            return self
        # shifting keeps atoms distinct, but can change their sort order
        canon = tuple(sorted((a.shifted(k), m) for a, m in self.factors))
        return CoeffExpr(self.scalar, self.qpow, canon)

    def __str__(self):
        if not self.factors and not self.qpow:
            return str(self.scalar)
        parts = [] if self.scalar == 1 else [str(self.scalar)]
        parts.append(f"q^{self.qpow}")
        parts += [f"theta({a})^{m}" for a, m in self.factors]
        return " * ".join(parts)


@dataclass(frozen=True)
class CoeffSum:
    """Formal sum of :class:`CoeffExpr` terms; bags with equal key are merged."""

    terms: tuple = ()

    @classmethod
    def of(cls, exprs: Iterable[CoeffExpr]) -> "CoeffSum":
        merged: dict = {}
        for e in exprs:
            merged[e.key] = merged.get(e.key, 0) + e.scalar
        return cls(tuple(CoeffExpr(s, k[0], k[1]) for k, s in sorted(merged.items()) if s))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "CoeffSum") -> "CoeffSum":
        return CoeffSum.of(itertools.chain(self.terms, other.terms))

    def __mul__(self, other) -> "CoeffSum":
        if isinstance(other, CoeffExpr):
            return CoeffSum.of(t * other for t in self.terms)
        if isinstance(other, CoeffSum):
            return CoeffSum.of(s * t for s in self.terms for t in other.terms)
        return NotImplemented

    def shift(self, k: Sequence[int]) -> "CoeffSum":
        return CoeffSum(tuple(t.shift(k) for t in self.terms)) if any(k) else self

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"


def shift_coeff(c: CoeffExpr, i: int) -> CoeffExpr:
    """X_i c = shift_coeff(c, i) X_i, for a generator index 1 <= i <= r."""
    if not c.factors:
        return c
    r = len(c.factors[0][0].aexp)
    if not 1 <= i <= r:
        raise DomainError(f"generator index {i} outside 1..{r}")
    return c.shift(_unit(r, i - 1))


class _Bag:
    """Mutable helper for assembling theta monomials."""

    def __init__(self, r: int):
        self.r = r
        self.factors: dict = {}
        self.qpow = 0

    def theta(self, qexp: int, num=None, den=None, mult: int = 1):
        aexp = [0] * self.r
        if num is not None:
            aexp[num] += 1
        if den is not None:
            aexp[den] -= 1
        atom = ThetaAtom(qexp, tuple(aexp))
        self.factors[atom] = self.factors.get(atom, 0) + mult

    def factorial(self, qexp: int, num, den, n: int, mult: int = 1):
        # (x q^qexp; q, p)_n with x = a_num / a_den
        if n >= 0:
            for k in range(n):
                self.theta(qexp + k, num, den, mult)
        else:
            for k in range(-n):
                self.theta(qexp + n + k, num, den, -mult)

    def expr(self) -> CoeffExpr:
        return CoeffExpr.build(self.factors, self.qpow)


def _pair(i: int, j: int, r: int) -> tuple:
    if not (1 <= i <= r and 1 <= j <= r) or i == j:
        raise DomainError(f"need distinct generator indices in 1..{r}, got {i}, {j}")
    return i - 1, j - 1


@lru_cache(maxsize=1 << 14)
def small_weight_expr(i: int, j: int, s: int, t: int, r: int) -> CoeffExpr:
    """w_{a_i,a_j;q,p}(s, t) as a theta monomial."""
    a, b = _pair(i, j, r)
    bag = _Bag(r)
    bag.qpow = 1
    bag.theta(s + 2 * t, a)
    bag.theta(2 * s + t - 2, b)
    bag.theta(t - s - 1, a, b)
    bag.theta(s + 2 * t - 2, a, mult=-1)
    bag.theta(2 * s + t, b, mult=-1)
    bag.theta(t - s + 1, a, b, mult=-1)
    return bag.expr()


@lru_cache(maxsize=1 << 14)
def big_weight_expr(i: int, j: int, s: int, t: int, r: int, rho: int = 0) -> CoeffExpr:
    """W^{(rho)}_{a_i,a_j;q,p}(s, t) as a theta monomial (t >= 0)."""
    if t < 0:
        raise DomainError("big weight needs t >= 0")
    return q_weight_expr(i, j, 1, rho, s - 1, t, r)


@lru_cache(maxsize=1 << 15)
def q_weight_expr(i: int, j: int, ell: int, rho: int, s: int, t: int, r: int) -> CoeffExpr:
    """Q_{a_i,a_j;q,p}(ell, rho, s, t) as a theta monomial (ell, t >= 0)."""
    a, b = _pair(i, j, r)
    if ell < 0 or t < 0:
        raise DomainError("Q-weight needs ell >= 0 and t >= 0")
    bag = _Bag(r)
    if ell == 0 or t == 0:
        return bag.expr()
    bag.qpow = ell * t
    bag.factorial(1 + 2 * rho + s + 2 * t, a, None, ell)
    bag.factorial(1 + 2 * rho + 2 * s, b, None, 2 * ell)
    bag.factorial(1 - ell - s, a, b, ell)
    bag.factorial(-ell - s, a, b, ell)
    bag.factorial(1 + 2 * rho + s, a, None, ell, -1)
    bag.factorial(1 + 2 * rho + 2 * s + t, b, None, 2 * ell, -1)
    bag.factorial(1 + t - ell - s, a, b, ell, -1)
    bag.factorial(t - ell - s, a, b, ell, -1)
    return bag.expr()


class NormalFormElement:
    """Finite sum ``sum_k f_k X_1^k_1 ... X_r^k_r`` with formal-sum coefficients."""

    __slots__ = ("r", "_terms")

    def __init__(self, r: int, terms: Mapping = ()):
        if r < 1:
            raise DomainError("need r >= 1")
        clean = {}
        for k, c in dict(terms).items():
            k = tuple(int(x) for x in k)
            if len(k) != r or any(x < 0 for x in k):
                raise DomainError(f"bad exponent vector {k} for r={r}")
            if isinstance(c, CoeffExpr):
                c = CoeffSum.of([c])
            if c:
                clean[k] = c
        self.r = r
        self._terms = MappingProxyType(dict(sorted(clean.items())))

    @property
    def terms(self) -> Mapping:
        return self._terms

    @classmethod
    def one(cls, r: int) -> "NormalFormElement":
        return cls(r, {(0,) * r: CoeffExpr.one()})

    @classmethod
    def generator(cls, r: int, i: int) -> "NormalFormElement":
        if not 1 <= i <= r:
            raise DomainError(f"generator index {i} outside 1..{r}")
        return cls(r, {_unit(r, i - 1): CoeffExpr.one()})

    def coefficient(self, k: Sequence[int]) -> CoeffSum:
        return self._terms.get(tuple(k), CoeffSum())

    def __add__(self, other: "NormalFormElement") -> "NormalFormElement":
        if self.r != other.r:
            raise DomainError("cannot add elements with different r")
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return NormalFormElement(self.r, terms)

    def __mul__(self, other: "NormalFormElement") -> "NormalFormElement":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, NormalFormElement):
            return NotImplemented
        return self.r == other.r and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self.r, tuple(self._terms.items())))

    def __repr__(self):
        return f"NormalFormElement(r={self.r}, terms={len(self._terms)})"


@dataclass(frozen=True)
class Word:
    """``coeff * X_{letters[0]} X_{letters[1]} ...`` (generator indices from 1)."""

    letters: tuple
    coeff: CoeffExpr = field(default_factory=CoeffExpr.one)


def normalize_word(w: Word, r: int = None, rng: random.Random = None) -> NormalFormElement:
    """Sort the letters of ``w`` by adjacent swaps X_j X_i -> w_{a_i,a_j}(1,1) X_i X_j.

    The leftmost inversion is resolved first unless ``rng`` is given, in
    which case an inversion is picked uniformly at random at every step.
    """
    letters = [int(x) for x in w.letters]
    if r is None:
        r = max(letters, default=1)
        if w.coeff.factors:
            r = max(r, len(w.coeff.factors[0][0].aexp))
    if any(not 1 <= x <= r for x in letters):
        raise DomainError(f"letters must lie in 1..{r}")
    coeff = w.coeff
    while True:
        inversions = [t for t in range(len(letters) - 1) if letters[t] > letters[t + 1]]
        if not inversions:
            break
        t = rng.choice(inversions) if rng is not None else inversions[0]
        hi, lo = letters[t], letters[t + 1]
        prefix = [0] * r
        for x in letters[:t]:
            prefix[x - 1] += 1
        coeff = coeff * small_weight_expr(lo, hi, 1, 1, r).shift(prefix)
        letters[t], letters[t + 1] = lo, hi
    k = [0] * r
    for x in letters:
        k[x - 1] += 1
    return NormalFormElement(r, {tuple(k): coeff})


def _monomial_product_coeff(k: tuple, l: tuple) -> CoeffExpr:
    # X^k X^l = (prod_{i<j} Q_{a_i,a_j}(l_i, K_{j-1} - k_i + L_{i-1}, k_i, k_j)) X^{k+l}
    r = len(k)
    K = [0, *itertools.accumulate(k)]
    L = [0, *itertools.accumulate(l)]
    c = CoeffExpr.one()
    for i in range(r):
        if not l[i]:
            continue
        for j in range(i + 1, r):
            if k[j]:
                c = c * q_weight_expr(i + 1, j + 1, l[i], K[j] - k[i] + L[i], k[i], k[j], r)
    return c


def multiply(x: NormalFormElement, y: NormalFormElement) -> NormalFormElement:
    """Product of two normal forms via the monomial commutation rule."""
    if x.r != y.r:
        raise DomainError(f"cannot multiply elements with r={x.r} and r={y.r}")
    out: dict = {}
    for k, f in x.terms.items():
        for l, g in y.terms.items():
            prod = f * (g.shift(k) * _monomial_product_coeff(k, l))
            kl = tuple(a + b for a, b in zip(k, l))
            out.setdefault(kl, []).extend(prod.terms)
    return NormalFormElement(x.r, {kl: CoeffSum.of(ts) for kl, ts in out.items()})


@lru_cache(maxsize=64)
def power_of_sum(r: int, n: int) -> NormalFormElement:
    """(X_1 + ... + X_r)^n in normal form."""
    if r < 1 or n < 0:
        raise DomainError("need r >= 1 and n >= 0")
    if n == 0:
        return NormalFormElement.one(r)
    linear = NormalFormElement(r, {_unit(r, i): CoeffExpr.one() for i in range(r)})
    if n == 1:
        return linear
    return multiply(power_of_sum(r, n - 1), linear)


def sum_of_words(r: int, n: int, rng: random.Random = None) -> NormalFormElement:
    """Brute-force (X_1 + ... + X_r)^n: normalize each of the r**n words."""
    total = NormalFormElement.one(r) if n == 0 else NormalFormElement(r)
    if n == 0:
        return total
    terms: dict = {}
    for letters in itertools.product(range(1, r + 1), repeat=n):
        (k, c), = normalize_word(Word(letters), r, rng).terms.items()
        terms.setdefault(k, []).extend(c.terms)
    return NormalFormElement(r, {k: CoeffSum.of(ts) for k, ts in terms.items()})


class Evaluator:
    """Numeric evaluation of theta monomials at one parameter point.

    Theta logarithms are cached per atom, so evaluating many bags that
    share atoms costs one theta evaluation per distinct atom.
    """

    def __init__(self, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG):
        self.params = params
        self.cfg = cfg
        self._logs: dict = {}

    def atom_value(self, atom: ThetaAtom) -> complex:
        if len(atom.aexp) > self.params.r:
            raise DomainError(f"atom needs {len(atom.aexp)} parameters, point has {self.params.r}")
        x = ipow(self.params.q, atom.qexp)
        for a, m in zip(self.params.a, atom.aexp):
            if m:
                x *= ipow(a, m)
        return x

    def _log(self, atom: ThetaAtom):
        try:
            return self._logs[atom]
        except KeyError:
            lg = self._logs[atom] = log_theta(self.atom_value(atom), self.params.p, self.cfg)
            return lg

    def coeff(self, c: CoeffExpr) -> complex:
        acc = LogProduct(self.params.p, self.cfg)
        acc.scalar(self.params.q, c.qpow)
        for atom, mult in c.factors:
            acc.add_log(*self._log(atom), mult)
        return complex(c.scalar) * acc.value()

    def summands(self, s: CoeffSum) -> list:
        return [self.coeff(t) for t in s.terms]

    def __call__(self, c) -> complex:
        if isinstance(c, CoeffSum):
            return sum(self.summands(c), 0j)
        return self.coeff(c)


def evaluate_coeff(c, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Numeric value of a :class:`CoeffExpr` or :class:`CoeffSum` at ``params``."""
    return Evaluator(params, cfg)(c)


def coeff_equal_probabilistic(c1, c2, sampler: Callable[[int], MultiParams], trials: int = 5,
                              tol: float = 1e-9, cfg: EvalConfig = DEFAULT_CONFIG) -> bool:
    """Decide equality of two coefficients by evaluation at random points.

    ``sampler(i)`` must return the i-th parameter point.  Singular points
    are skipped (up to ``10 * trials`` attempts); if all of them are
    singular an :class:`InconclusiveError` is raised.
    """
    s1 = c1 if isinstance(c1, CoeffSum) else CoeffSum.of([c1])
    s2 = c2 if isinstance(c2, CoeffSum) else CoeffSum.of([c2])
    if s1 == s2:
        return True
    good = 0
    for index in range(10 * trials):
        if good == trials:
            break
        ev = Evaluator(sampler(index), cfg)
        try:
            v1, v2 = ev.summands(s1), ev.summands(s2)
        except SingularParameterError:
            continue
        good += 1
        scale = max([abs(v) for v in v1 + v2] + [abs(sum(v1)), abs(sum(v2))])
        if abs(sum(v1) - sum(v2)) > tol * scale:
            return False
    if good == 0:
        raise InconclusiveError("every sampled point was singular")
    return True
