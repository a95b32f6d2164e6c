"""High-precision reference values for the continuous constants.

Written straight from the defining equations in mpmath, sharing no code with
the package. Every root is found by plain bisection on a sign-changing bracket.
"""

from functools import lru_cache

import mpmath as mp

mp.mp.dps = 60


def r(d, x):
    x = mp.mpf(x)
    return (x * (d * (1 - x ** (mp.mpf(1) / d)) + 1) - (1 - x) ** (d + 1)) / (d + 1)


def g(d, x):
    R = (d + 1) * r(d, x)
    return (R - x) / (R - x * x)


def _solve(f, lo, hi):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    flo = f(lo)
    assert flo * f(hi) < 0, "bracket has no sign change"
    for _ in range(190):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


@lru_cache(maxsize=None)
def beta(d):
    return _solve(lambda x: (1 - x) ** d - x, mp.mpf(10) ** -30, mp.mpf(1) / 2)


@lru_cache(maxsize=None)
def x_bal(d):
    return _solve(lambda x: r(d, x) - x * x / 2, beta(d), 1 - mp.mpf(10) ** -9)


@lru_cache(maxsize=None)
def x_peak(d):
    """Unconstrained stationary point of g on (beta, 1)."""
    dg = lambda x: mp.diff(lambda t: g(d, t), x)
    lo, hi = beta(d) * (1 + mp.mpf(10) ** -6), 1 - mp.mpf(10) ** -6
    return _solve(dg, lo, hi)


@lru_cache(maxsize=None)
def delta(d):
    dq = lambda x: mp.diff(lambda t: r(d, t) / t, x)
    return _solve(dq, beta(d), x_bal(d))


def cost(d, x):
    R = (d + 1) * r(d, x)
    return 2 + (d - 1) * (x - x * x) / (R - x * x)


@lru_cache(maxsize=None)
def constants(d):
    """(x_bst, x_bal, c_bal, c_bst) with x_bst the argmax of g on [beta, x_bal]."""
    xb = x_bal(d)
    xp = x_peak(d)
    xs = xp if xp < xb else xb
    return xs, xb, 2 / xb, cost(d, xs)
