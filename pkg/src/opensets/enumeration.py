"""The pinned enumeration of the rationals in [0, 1] and pairing helpers.

Everything that says "the first rational" anywhere in this library means
first in the order fixed here: ascending denominator, then ascending
numerator, lowest terms only:

    0/1, 1/1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, 3/5, 4/5, 1/6, 5/6, ...

The order is deterministic across runs and has the property needed by the
search routines: the least element of an open interval in this order is the
unique fraction of minimal denominator inside it, which a Stern-Brocot
(continued fraction) descent finds without scanning.  That keeps "first
rational in the interval" computable even for intervals of width 2**-200.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

_memo: list[Fraction] = [Fraction(0), Fraction(1)]
_index: dict[Fraction, int] = {Fraction(0): 0, Fraction(1): 1}
_memo_den = 1  # all fractions with denominator <= _memo_den are in _memo


def _extend_to_den(d: int) -> None:
    global _memo_den
    while _memo_den < d:
        _memo_den += 1
        for num in range(1, _memo_den):
            if math.gcd(num, _memo_den) == 1:
                _index[Fraction(num, _memo_den)] = len(_memo)
                _memo.append(Fraction(num, _memo_den))


def rational(i: int) -> Fraction:
    """The i-th rational of the enumeration (0-indexed)."""
    if i < 0:
        raise ValueError("index must be >= 0")
    while len(_memo) <= i:
        _extend_to_den(_memo_den + 1)
    return _memo[i]


def rationals() -> Iterator[Fraction]:
    """All of Q∩[0,1] in enumeration order."""
    i = 0
    while True:
        yield rational(i)
        i += 1


def rational_index(q: Fraction) -> int:
    """The position of q in the enumeration.  q must lie in [0, 1]."""
    q = Fraction(q)
    if not (0 <= q <= 1):
        raise ValueError("rational outside [0,1]")
    _extend_to_den(q.denominator)
    return _index[q]


def pair(i: int, j: int) -> int:
    """Cantor pairing; inverse of unpair."""
    return (i + j) * (i + j + 1) // 2 + j


def unpair(n: int) -> tuple[int, int]:
    """Inverse Cantor pairing: unpair(pair(i, j)) == (i, j)."""
    w = (math.isqrt(8 * n + 1) - 1) // 2
    j = n - w * (w + 1) // 2
    return w - j, j


def _simplest_open(a: Fraction, b: Fraction) -> Fraction:
    """The minimal-denominator fraction strictly inside (a, b), a < b.

    Standard continued-fraction descent.  Minimality makes the result the
    first element of the interval in the enumeration order, and it is unique:
    two same-denominator fractions in an interval always have a simpler one
    between them.
    """
    n = a.numerator // a.denominator + 1  # least integer > a (a integral too)
    if n < b:
        return Fraction(n)
    k = a.numerator // a.denominator
    fa = a - k
    fb = b - k
    if fa == 0:
        m = fb.denominator // fb.numerator + 1  # least m with 1/m < fb
        return k + Fraction(1, m)
    return k + 1 / _simplest_open(1 / fb, 1 / fa)


def first_rational_in(lo: Fraction, hi: Fraction) -> Fraction | None:
    """The enumeration-least rational q with lo < q < hi and 0 <= q <= 1."""
    if hi <= 0 or lo >= 1 or lo >= hi:
        return None
    a = max(lo, Fraction(-1, 2))
    b = min(hi, Fraction(3, 2))
    if a >= b:
        return None
    q = _simplest_open(a, b)
    if q < 0 or q > 1:
        return None
    return q


def rationals_in(lo: Fraction, hi: Fraction) -> Iterator[Fraction]:
    """All rationals q with lo < q < hi, 0 <= q <= 1, in enumeration order.

    Works by lazy binary splitting: yielding the simplest element q of an
    interval splits it into (lo, q) and (q, hi), each again served by the
    descent; a heap keyed by (denominator, numerator) merges the pieces.
    Every item costs a couple of descents, never a denominator scan, so the
    generator stays fast even for intervals of width 2**-200.
    """
    import heapq

    heap: list[tuple[int, int, Fraction, Fraction, Fraction]] = []

    def push(a: Fraction, b: Fraction) -> None:
        q = first_rational_in(a, b)
        if q is not None:
            heapq.heappush(heap, (q.denominator, q.numerator, q, a, b))

    push(lo, hi)
    while heap:
        _, _, q, a, b = heapq.heappop(heap)
        yield q
        push(a, q)
        push(q, b)
