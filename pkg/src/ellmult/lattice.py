"""Weighted unit-step lattice paths in Z^r.

A path starts at the origin; step ``i`` increments coordinate ``i``.  The
weight of a step depends only on its arrival point, and the weight of a
path is the product of its step weights.  Summing over all paths to an
endpoint gives the elliptic multinomial coefficient, which makes these
brute-force sums an oracle for the closed forms and for the algebra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterator, Optional, Sequence

from .coefficients import MultiParams
from .errors import BudgetError, DomainError
from .theta import DEFAULT_CONFIG, EvalConfig
from .weights import q_weight, shifted_big_weight, small_weight

__all__ = [
    "LatticePath",
    "PathQuery",
    "PATH_BUDGET",
    "count_paths",
    "iter_paths",
    "step_weight",
    "path_weight",
    "gf_at_endpoint",
    "convolution_split_gf",
    "convolution_split_terms",
    "path_mass",
    "crossing_points",
    "gf_through",
    "area_weight",
]

PATH_BUDGET = 10**7


@dataclass(frozen=True)
class LatticePath:
    steps: tuple
    r: int

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        if any(not 1 <= s <= self.r for s in steps):
            raise DomainError(f"steps must lie in 1..{self.r}")
        object.__setattr__(self, "steps", steps)

    def vertices(self) -> Iterator[tuple]:
        point = [0] * self.r
        yield tuple(point)
        for s in self.steps:
            point[s - 1] += 1
            yield tuple(point)

    @property
    def endpoint(self) -> tuple:
        point = [0] * self.r
        for s in self.steps:
            point[s - 1] += 1
        return tuple(point)


@dataclass(frozen=True)
class PathQuery:
    endpoint: tuple
    crossing_level: Optional[int] = None

    def __post_init__(self):
        endpoint = tuple(int(n) for n in self.endpoint)
        if not endpoint or any(n < 0 for n in endpoint):
            raise DomainError("endpoint must be a nonempty nonnegative vector")
        object.__setattr__(self, "endpoint", endpoint)
        m = self.crossing_level
        if m is not None and not 0 <= m <= sum(endpoint):
            raise DomainError(f"crossing level {m} outside 0..{sum(endpoint)}")


def count_paths(endpoint: Sequence[int]) -> int:
    """Number of unit-step paths from the origin to ``endpoint``."""
    total = math.factorial(sum(endpoint))
    for n in endpoint:
        total //= math.factorial(n)
    return total


def _check_budget(endpoint):
    n = count_paths(endpoint)
    if n > PATH_BUDGET:
        raise BudgetError(f"{n} paths to {tuple(endpoint)} exceed the budget of {PATH_BUDGET}")


def iter_paths(endpoint: Sequence[int]) -> Iterator[LatticePath]:
    """All paths from the origin to ``endpoint``, depth first."""
    endpoint = tuple(endpoint)
    _check_budget(endpoint)
    r = len(endpoint)
    left = list(endpoint)
    steps: list = []

    def walk():
        if not any(left):
            yield LatticePath(tuple(steps), r)
            return
        for i in range(r):
            if left[i]:
                left[i] -= 1
                steps.append(i + 1)
                yield from walk()
                steps.pop()
                left[i] += 1

    yield from walk()


@lru_cache(maxsize=1 << 16)
def _step_weight(at: tuple, i: int, params: MultiParams, cfg: EvalConfig) -> complex:
    K = [0, *accumulate(at)]
    a, q, p = params.a, params.q, params.p
    value = 1 + 0j
    for j in range(i + 1, len(at)):
        value *= shifted_big_weight(a[i], a[j], q, p, K[j] - at[i], at[i], at[j], cfg)
    return value


def step_weight(at: Sequence[int], i: int, params: MultiParams,
                cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Weight of the unit step in direction ``i`` (from 1) arriving at ``at``."""
    at = tuple(int(x) for x in at)
    if len(at) != params.r:
        raise DomainError(f"point of dimension {len(at)} for r={params.r}")
    if not 1 <= i <= params.r:
        raise DomainError(f"step index {i} outside 1..{params.r}")
    if at[i - 1] < 1 or any(x < 0 for x in at):
        raise DomainError(f"{at} is not the arrival point of a step in direction {i}")
    return _step_weight(at, i - 1, params, cfg)


def path_weight(path: LatticePath, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    value = 1 + 0j
    point = [0] * path.r
    for s in path.steps:
        point[s - 1] += 1
        value *= _step_weight(tuple(point), s - 1, params, cfg)
    return value


def gf_at_endpoint(query, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG,
                   memo: bool = False) -> complex:
    """Sum of path weights over all paths from the origin to the endpoint.

    By default every path is enumerated.  ``memo=True`` sums over lattice
    points instead (valid because step weights only see the arrival point).
    """
    endpoint = query.endpoint if isinstance(query, PathQuery) else PathQuery(tuple(query)).endpoint
    if len(endpoint) != params.r:
        raise DomainError(f"endpoint of dimension {len(endpoint)} for r={params.r}")
    if memo:
        return _gf_table(endpoint, params, cfg)[endpoint]
    _check_budget(endpoint)
    r = len(endpoint)
    point = [0] * r

    def walk(weight: complex) -> complex:
        total = 0j
        done = True
        for i in range(r):
            if point[i] < endpoint[i]:
                done = False
                point[i] += 1
                total += walk(weight * _step_weight(tuple(point), i, params, cfg))
                point[i] -= 1
        return weight if done else total

    return walk(1 + 0j)


def path_mass(endpoint: Sequence[int], params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Sum of |path weight| over all paths to ``endpoint``.

    This is the natural scale for rounding error in the signed sum, which
    can cancel heavily.
    """
    endpoint = tuple(endpoint)
    return _gf_table(endpoint, params, cfg, absolute=True)[endpoint]


def _gf_table(endpoint: tuple, params: MultiParams, cfg: EvalConfig, absolute: bool = False) -> dict:
    table = {}
    for pt in _box(endpoint):
        if not any(pt):
            table[pt] = 1.0 if absolute else 1 + 0j
            continue
        total = 0.0 if absolute else 0j
        for i, x in enumerate(pt):
            if x:
                prev = pt[:i] + (x - 1,) + pt[i + 1:]
                w = _step_weight(pt, i, params, cfg)
                total += table[prev] * (abs(w) if absolute else w)
        table[pt] = total
    return table


def _box(endpoint: tuple) -> Iterator[tuple]:
    # points of the box [0, endpoint], each after all of its predecessors
    if not endpoint:
        yield ()
        return
    for head in _box(endpoint[:-1]):
        for x in range(endpoint[-1] + 1):
            yield head + (x,)


def crossing_points(endpoint: Sequence[int], level: int) -> Iterator[tuple]:
    """Points k with 0 <= k <= endpoint and k_1 + ... + k_r = level."""
    endpoint = tuple(endpoint)
    if len(endpoint) == 1:
        if 0 <= level <= endpoint[0]:
            yield (level,)
        return
    for k in range(min(level, endpoint[0]) + 1):
        for rest in crossing_points(endpoint[1:], level - k):
            yield (k,) + rest


def _split_term(n: tuple, k: tuple, params: MultiParams, cfg: EvalConfig, memo: bool) -> tuple:
    r = len(n)
    M = sum(k)
    rest = tuple(a - b for a, b in zip(n, k))
    tail_params = params.shifted([2 * M - x for x in k])
    head = gf_at_endpoint(PathQuery(k), params, cfg, memo)
    tail = gf_at_endpoint(PathQuery(rest), tail_params, cfg, memo)
    mass = path_mass(k, params, cfg) * path_mass(rest, tail_params, cfg)
    N = [0, *accumulate(n)]
    K = [0, *accumulate(k)]
    a, q, p = params.a, params.q, params.p
    corr = 1 + 0j
    for i in range(r):
        for j in range(i + 1, r):
            corr *= q_weight(a[i], a[j], q, p, n[i] - k[i], N[i] + K[j] - K[i + 1], k[i], k[j], cfg)
    return head * tail * corr, mass * abs(corr)


def convolution_split_terms(query: PathQuery, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG,
                            memo: bool = False) -> list:
    """Per crossing point ``k``: ``(k, term, mass)`` where ``mass`` bounds ``|term|``."""
    if query.crossing_level is None:
        raise DomainError("convolution split needs a crossing level")
    if len(query.endpoint) != params.r:
        raise DomainError(f"endpoint of dimension {len(query.endpoint)} for r={params.r}")
    return [(k, *_split_term(query.endpoint, k, params, cfg, memo))
            for k in crossing_points(query.endpoint, query.crossing_level)]


def convolution_split_gf(query: PathQuery, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG,
                         memo: bool = False) -> complex:
    """Generating function refined by the crossing point at level M.

    The head (origin to the crossing point k) is summed with the original
    parameters, the tail with a_i replaced by a_i q^{2M - k_i}, and the
    two are joined by the Q-weight correction.
    """
    return sum((t for _, t, _ in convolution_split_terms(query, params, cfg, memo)), 0j)


def gf_through(endpoint: Sequence[int], k: Sequence[int], params: MultiParams,
               cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Sum of path weights over paths to ``endpoint`` that visit ``k``."""
    endpoint, k = tuple(endpoint), tuple(k)
    total = 0j
    for path in iter_paths(endpoint):
        if k in set(path.vertices()):
            total += path_weight(path, params, cfg)
    return total


def area_weight(path: LatticePath, params: MultiParams, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """r = 2 only: product of square weights w_{a_1,a_2}(s, t) under the path.

    Step 1 is East and step 2 is North.  A square with north-east corner
    (s, t) is covered when the s-th East step is taken at height >= t.
    """
    if path.r != 2:
        raise DomainError("the area interpretation needs r = 2")
    a, b = params.a
    value = 1 + 0j
    s = height = 0
    for step in path.steps:
        if step == 1:
            s += 1
            for t in range(1, height + 1):
                value *= small_weight(a, b, params.q, params.p, s, t, cfg)
        else:
            height += 1
    return value
