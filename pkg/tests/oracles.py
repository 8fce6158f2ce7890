"""Independent oracles for the test suite.

These deliberately do not reuse the library's sweep/normalisation code
paths: covering is decided by gap inspection plus sampling, containment by
direct interval arithmetic, and "first rational" by brute Farey scan, so the
fast implementations are checked against genuinely different computations.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction


def merge_open_spans(pieces) -> list[tuple[Fraction, Fraction]]:
    """Sorted maximal spans of a union of open intervals (no unit clipping)."""
    spans = sorted((p.lo, p.hi) for p in pieces if p.lo < p.hi)
    out: list[list[Fraction]] = []
    for lo, hi in spans:
        if out and lo < out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


def closed_gaps(pieces) -> list[tuple[Fraction, Fraction]]:
    """The closed gaps of a union of open pieces, within [0,1].

    Includes the degenerate touch points between merely-touching opens.
    """
    spans = merge_open_spans(pieces)
    gaps = []
    prev = Fraction(0)
    for lo, hi in spans:
        if hi <= 0 or lo >= 1:
            continue
        a = max(prev, Fraction(0))
        b = min(lo, Fraction(1))
        if a <= b:
            gaps.append((a, b))
        prev = hi
        # merely-touching opens leave the touch point uncovered
    if prev <= 1:
        gaps.append((max(prev, Fraction(0)), Fraction(1)))
    # the loop above misses interior touch points of merged spans only when
    # spans genuinely overlap, which merge_open_spans already collapsed; a
    # touch point between spans appears as a zero-length gap, handled above.
    return gaps


def closed_overlaps(a: tuple[Fraction, Fraction], closed_pieces) -> bool:
    return any(max(a[0], p.lo) <= min(a[1], p.hi) for p in closed_pieces)


def covers_oracle(target, pieces, rng: random.Random, samples: int = 1000) -> bool:
    """Independent covering check: every closed gap of the pieces misses the
    target, and sampled rationals of the target all land in some piece."""
    for gap in closed_gaps(pieces):
        if closed_overlaps(gap, target.pieces):
            return False
    for _ in range(samples):
        if not target.pieces:
            break
        piece = rng.choice(target.pieces)
        den = rng.randint(1, 512)
        lo_num = math.ceil(piece.lo * den)
        hi_num = math.floor(piece.hi * den)
        if lo_num > hi_num:
            q = piece.lo
        else:
            q = Fraction(rng.randint(lo_num, hi_num), den)
        if not any(p.lo < q < p.hi for p in pieces):
            return False
    return True


def sqrt_halves_oracle(digits: int = 50) -> Fraction:
    """sqrt(2)/2 to `digits` decimal digits, as an exact rational."""
    scale = 10 ** digits
    root = math.isqrt(2 * scale * scale)
    return Fraction(root, 2 * scale)


def brute_first_rational_in(lo: Fraction, hi: Fraction, max_den: int = 600) -> Fraction | None:
    """First rational of the pinned enumeration inside (lo, hi) ∩ [0,1],
    by exhaustive scan of denominators."""
    for den in range(1, max_den + 1):
        for num in range(0, den + 1):
            if math.gcd(num, den) != 1:
                continue
            q = Fraction(num, den)
            if lo < q < hi and 0 <= q <= 1:
                return q
    return None


def brute_distance(q: Fraction, closed_pieces) -> Fraction:
    best = None
    for p in closed_pieces:
        if p.lo <= q <= p.hi:
            return Fraction(0)
        d = min(abs(q - p.lo), abs(q - p.hi))
        if best is None or d < best:
            best = d
    assert best is not None
    return best


def random_finopen(rng: random.Random, max_pieces: int = 4, max_den: int = 64):
    """A random finite union of open intervals with smallish denominators."""
    from opensets import FinOpen, openiv

    n = rng.randint(0, max_pieces)
    pieces = []
    for _ in range(n):
        a = Fraction(rng.randint(-8, 72), rng.choice([8, 16, 32, max_den]))
        w = Fraction(rng.randint(1, 24), rng.choice([16, 32, max_den]))
        pieces.append(openiv(a, a + w))
    return FinOpen.of(pieces)


def random_finclosed(rng: random.Random, max_pieces: int = 3, max_den: int = 48):
    from opensets import FinClosed, closediv

    n = rng.randint(0, max_pieces)
    pieces = []
    for _ in range(n):
        a = Fraction(rng.randint(0, max_den), max_den)
        w = Fraction(rng.randint(0, 10), max_den)
        pieces.append(closediv(a, min(a + w, Fraction(1))))
    return FinClosed.of(pieces)
