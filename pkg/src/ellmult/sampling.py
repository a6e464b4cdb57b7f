"""Seeded draws of complex parameters on annuli."""
from __future__ import annotations

import cmath
import math
import random
from typing import Callable

from .coefficients import MultiParams

NOME_RANGE = (0.05, 0.5)
BASE_RANGE = (0.3, 1.5)
PARAM_RANGE = (0.5, 2.0)


def make_rng(*key) -> random.Random:
    """Deterministic generator keyed by arbitrary printable parts.

    String seeds are hashed with SHA-512 by :mod:`random`, so the stream
    does not depend on PYTHONHASHSEED.
    """
    return random.Random(":".join(str(k) for k in key))


def annulus(rng: random.Random, lo: float, hi: float) -> complex:
    """Modulus uniform in [lo, hi], phase uniform on the circle."""
    return rng.uniform(lo, hi) * cmath.exp(2j * math.pi * rng.random())


def draw_nome(rng: random.Random) -> complex:
    return annulus(rng, *NOME_RANGE)


def draw_base(rng: random.Random) -> complex:
    return annulus(rng, *BASE_RANGE)


def draw_param(rng: random.Random) -> complex:
    return annulus(rng, *PARAM_RANGE)


def multiparams_sampler(r: int, seed=0) -> Callable[[int], MultiParams]:
    """Return ``index -> MultiParams`` drawing a_1..a_r, q and p at random."""

    def sample(index: int) -> MultiParams:
        rng = make_rng("multiparams", seed, r, index)
        q = draw_base(rng)
        p = draw_nome(rng)
        return MultiParams(tuple(draw_param(rng) for _ in range(r)), q, p)

    return sample
