"""Degree arithmetic for rank-k graphs.

A degree is a tuple of k non-negative integers, ordered componentwise.
Extended degrees additionally allow ``math.inf`` entries and are used for
eventually-periodic infinite paths.
"""

import math

from .errors import DegreeOutOfRange

INF = math.inf


def zero(k):
    return (0,) * k


def unit(k, i):
    """The i-th standard basis degree (colors are 1-based)."""
    if not 1 <= i <= k:
        raise DegreeOutOfRange(f"color {i} out of range 1..{k}")
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def add(m, n):
    return tuple(a + b for a, b in zip(m, n))


def sub(m, n):
    """Componentwise difference m - n; requires n <= m."""
    if not le(n, m):
        raise DegreeOutOfRange(f"cannot subtract {n} from {m}")
    return tuple(a - b for a, b in zip(m, n))


def diff(m, n):
    """Componentwise difference allowing negative entries (a Z^k element)."""
    return tuple(a - b for a, b in zip(m, n))


def le(m, n):
    return all(a <= b for a, b in zip(m, n))


def join(m, n):
    return tuple(max(a, b) for a, b in zip(m, n))


def meet(m, n):
    return tuple(min(a, b) for a, b in zip(m, n))


def total(m):
    return sum(m)


def below(n):
    """All degrees m with 0 <= m <= n, in lexicographic order."""
    if not n:
        yield ()
        return
    for head in range(n[0] + 1):
        for tail in below(n[1:]):
            yield (head,) + tail


def is_finite(m):
    return all(a != INF for a in m)
