"""Binary entropy, its inverse on (0, 1/2], and the lift constant gamma_t.

All logarithms are base 2.
"""

from functools import lru_cache
from math import log2

from .errors import DomainError


def entropy(x):
    if not 0 < x < 1:
        raise DomainError(f"entropy is defined on (0, 1), got {x}")
    return -x * log2(x) - (1 - x) * log2(1 - x)


def entropy_inverse(y, iterations=80):
    """Unique x in (0, 1/2] with entropy(x) == y, by bisection.

    Entropy is increasing on (0, 1/2] and its derivative blows up at 0, so
    bisection is used rather than Newton; 80 halvings of the initial
    interval put the bracket well below 1e-12.
    """
    if not 0 < y <= 1:
        raise DomainError(f"entropy_inverse is defined on (0, 1], got {y}")
    if y == 1:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def gamma(t):
    """(t * h^-1(1/t))^-1; gamma_2 is about 4.54."""
    if int(t) != t or t < 2:
        raise DomainError(f"gamma_t needs an integer t >= 2, got {t}")
    return 1.0 / (t * entropy_inverse(1.0 / t))


def log2_binomial_prefix(n, k):
    """log2 of sum_{i<=k} C(n, i), computed exactly before the log."""
    from math import comb

    return log2(sum(comb(n, i) for i in range(0, k + 1)))
