"""Brute-force reference implementations, independent of the package.

Diagrams are tuples of row lengths, top row first.  A word lists, column by
column from the left, the row (counted from the bottom) of that column's dot.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations


def cells(rows) -> frozenset:
    n = len(rows)
    return frozenset((x, n - i) for i, a in enumerate(rows) for x in range(1, a + 1))


@lru_cache(maxsize=None)
def transversals(rows) -> tuple:
    n = len(rows)
    if not rows or rows[0] != n:
        return ()
    grid = cells(rows)
    return tuple(w for w in permutations(range(1, n + 1)) if all((x + 1, w[x]) in grid for x in range(n)))


def standard(values) -> tuple:
    order = sorted(values)
    return tuple(order.index(v) + 1 for v in values)


def contains(rows, word, tau) -> bool:
    """Some len(tau) dots form tau and the rightmost column meets the lowest row inside the diagram."""
    grid = cells(rows)
    k = len(tau)
    for idx in combinations(range(len(word)), k):
        vals = [word[i] for i in idx]
        if standard(vals) == tuple(tau) and (idx[-1] + 1, min(vals)) in grid:
            return True
    return False


def avoiders(rows, patterns) -> list:
    return [w for w in transversals(rows) if not any(contains(rows, w, p) for p in patterns)]


def count(rows, patterns) -> int:
    return len(avoiders(rows, patterns))


def proper_diagrams(n: int) -> list:
    """Weakly decreasing n-tuples with entries in 1..n that admit a transversal."""
    out = []

    def rec(prefix):
        if len(prefix) == n:
            if transversals(tuple(prefix)):
                out.append(tuple(prefix))
            return
        for a in range(prefix[-1] if prefix else n, 0, -1):
            rec(prefix + [a])

    rec([])
    return out


def critical_points(rows) -> list:
    """Border corners (x, y) where row y has length x and row y + 1 is longer, with x - y."""
    lengths = list(reversed(rows))
    return [((lengths[y - 1], y), lengths[y - 1] - y) for y in range(1, len(lengths)) if lengths[y] > lengths[y - 1]]


def left_to_right_maxima(word) -> list:
    out, best = [], 0
    for x, y in enumerate(word, start=1):
        if y > best:
            out.append((x, y))
            best = y
    return out


def catalan_by_recurrence(n: int) -> int:
    c = [1]
    for k in range(1, n + 1):
        c.append(sum(c[i] * c[k - 1 - i] for i in range(k)))
    return c[n]


def fibonacci_by_recurrence(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
