
import mpmath
import pytest

from ellmult.sampling import draw_base, draw_nome, draw_param, make_rng


def rel(x, y, *scale):
    s = max([abs(x), abs(y), *map(abs, scale)])
    return abs(x - y) / s if s else 0.0


@pytest.fixture
def rng(request):
    return make_rng("tests", request.node.name)


def random_point(rng, r):
    return draw_base(rng), draw_nome(rng), tuple(draw_param(rng) for _ in range(r))


def theta_series(x, p, dps=60):
    """Jacobi triple product in high precision, independent of the product code.

    (p;p)_inf theta(x;p) = sum_n (-1)^n p^{n(n-1)/2} x^n
    """
    with mpmath.workdps(dps):
        x, p = mpmath.mpc(x), mpmath.mpc(p)
        eps = mpmath.mpf(10) ** (-dps)
        total = mpmath.mpc(0)
        n = 1
        while True:
            # terms n and 1-n have equal p-power
            t = (-1) ** n * p ** (n * (n - 1) // 2) * (x ** n - x ** (1 - n))
            total += t
            if n > 5 and abs(t) < eps * abs(total):
                break
            n += 1
        return complex(total / mpmath.qp(p, p))
