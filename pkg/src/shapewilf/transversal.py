"""Transversals of Young diagrams and landing-aware pattern avoidance.

A transversal is stored as a word: ``word[x - 1]`` is the row of the dot
in column ``x``.  A set of dots forms an occurrence of a pattern only if
it has the right relative order *and* lands in the diagram, meaning the
cell in the column of its rightmost dot and the row of its lowest dot
belongs to the diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

from .diagram import Cell, YoungDiagram

Pattern = tuple[int, ...]
PatternSpec = Union[Sequence[int], Sequence[Sequence[int]]]


# -- patterns -----------------------------------------------------------------

def check_pattern(tau: Sequence[int]) -> Pattern:
    tau = tuple(int(v) for v in tau)
    if sorted(tau) != list(range(1, len(tau) + 1)):
        raise ValueError(f"{tau} is not a permutation of 1..{len(tau)}")
    return tau


def standardize(values: Sequence[int]) -> Pattern:
    """Replace each value by its rank (1-based) among the values."""
    order = sorted(values)
    rank = {v: i for i, v in enumerate(order, start=1)}
    return tuple(rank[v] for v in values)


def block_pattern(alpha: Sequence[int], gamma: Sequence[int]) -> Pattern:
    """The pattern (alpha|gamma): alpha shifted above gamma, then gamma."""
    k = len(gamma)
    return tuple(a + k for a in alpha) + tuple(gamma)


def parse_pattern(text: str) -> Pattern:
    """Parse "213", "2 1 3", "2,1,3" or a block pattern "213|1"."""
    text = text.strip()
    if "|" in text:
        left, right = text.split("|", 1)
        return block_pattern(parse_pattern(left) if left.strip() else (),
                             parse_pattern(right) if right.strip() else ())
    if " " in text or "," in text:
        parts = [p for p in text.replace(",", " ").split() if p]
        return check_pattern([int(p) for p in parts])
    return check_pattern([int(ch) for ch in text])


def parse_pattern_set(text: str) -> list[Pattern]:
    """Comma-separated compact patterns, e.g. "312,321"."""
    return [parse_pattern(part) for part in text.split(",") if part.strip()]


def pattern_text(tau: Sequence[int]) -> str:
    if all(v < 10 for v in tau):
        return "".join(map(str, tau))
    return " ".join(map(str, tau))


def _as_pattern_list(patterns: PatternSpec) -> tuple[Pattern, ...]:
    if len(patterns) and isinstance(patterns[0], int):
        return (check_pattern(patterns),)
    return tuple(check_pattern(p) for p in patterns)


# -- transversals -------------------------------------------------------------

@dataclass(frozen=True)
class Transversal:
    diagram: YoungDiagram
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        object.__setattr__(self, "word", word)
        n = len(word)
        if n != self.diagram.num_rows or n != self.diagram.num_cols:
            raise ValueError(f"word of length {n} does not fit {self.diagram}")
        if sorted(word) != list(range(1, n + 1)):
            raise ValueError(f"{word} is not a permutation")
        for x, y in enumerate(word, start=1):
            if (x, y) not in self.diagram:
                raise ValueError(f"dot ({x}, {y}) lies outside {self.diagram}")

    @classmethod
    def from_dots(cls, Y: YoungDiagram, dots: Iterable[Cell]) -> "Transversal":
        dots = sorted(dots)
        if [x for x, _ in dots] != list(range(1, len(dots) + 1)):
            raise ValueError("dots do not cover every column exactly once")
        return cls(Y, tuple(y for _, y in dots))

    @property
    def size(self) -> int:
        return len(self.word)

    @property
    def dots(self) -> tuple[Cell, ...]:
        return tuple((x, y) for x, y in enumerate(self.word, start=1))

    @property
    def placement(self) -> tuple[int, ...]:
        """Row-indexed view: entry y - 1 is the column of the dot in row y."""
        cols = [0] * len(self.word)
        for x, y in enumerate(self.word, start=1):
            cols[y - 1] = x
        return tuple(cols)

    def column_of_row(self, y: int) -> int:
        return self.placement[y - 1]

    def restrict(self, cols: Iterable[int], rows: Iterable[int]) -> "Transversal":
        """The transversal induced on the submatrix of the given columns and rows."""
        cols = sorted(set(cols))
        rows = sorted(set(rows))
        rank = {y: i for i, y in enumerate(rows, start=1)}
        try:
            word = tuple(rank[self.word[x - 1]] for x in cols)
        except KeyError:
            raise ValueError("the chosen columns and rows do not carry a transversal") from None
        return Transversal(self.diagram.submatrix(cols, rows), word)

    def inversions(self) -> int:
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def contains(self, tau: Sequence[int]) -> bool:
        return contains_pattern(self, tau)

    def __str__(self) -> str:
        return "(" + pattern_text(self.word) + ")"


def parse_transversal(Y: YoungDiagram, text: str) -> Transversal:
    text = text.strip().strip("()")
    if " " in text or "," in text:
        word = [int(p) for p in text.replace(",", " ").split()]
    else:
        word = [int(ch) for ch in text]
    return Transversal(Y, tuple(word))


def is_partial_transversal(Y: YoungDiagram, dots: Iterable[Cell]) -> bool:
    dots = list(dots)
    return (
        all(d in Y for d in dots)
        and len({x for x, _ in dots}) == len(dots)
        and len({y for _, y in dots}) == len(dots)
    )


# -- containment --------------------------------------------------------------

def lands(Y: YoungDiagram, dots: Sequence[Cell]) -> bool:
    return (max(x for x, _ in dots), min(y for _, y in dots)) in Y


def occurrences(Y: YoungDiagram, dots: Iterable[Cell], tau: Sequence[int]) -> Iterator[tuple[Cell, ...]]:
    """Landing occurrences of tau among the dots, each sorted left to right."""
    tau = tuple(tau)
    dots = sorted(dots)
    for combo in combinations(dots, len(tau)):
        if standardize([y for _, y in combo]) == tau and lands(Y, combo):
            yield combo


def dots_contain(Y: YoungDiagram, dots: Iterable[Cell], tau: Sequence[int]) -> bool:
    if not tau:
        return True
    return next(occurrences(Y, dots, tau), None) is not None


def contains_pattern(T: Transversal, tau: Sequence[int]) -> bool:
    return dots_contain(T.diagram, T.dots, check_pattern(tau))


def avoids(T: Transversal, patterns: PatternSpec) -> bool:
    return not any(contains_pattern(T, tau) for tau in _as_pattern_list(patterns))


# -- pruned search ------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """Prefix constraints on a transversal.

    ``top`` is the required pattern of the dots in the top ``len(top)`` rows
    read left to right; ``left`` is the required pattern of the dots in the
    leftmost ``len(left)`` columns.
    """

    top: Pattern | None = None
    left: Pattern | None = None

    def __str__(self) -> str:
        parts = []
        if self.top is not None:
            parts.append("top=" + pattern_text(self.top))
        if self.left is not None:
            parts.append("left=" + pattern_text(self.left))
        return ",".join(parts) or "none"


NO_CONSTRAINT = Constraint()
TOP_UP = Constraint(top=(1, 2))
TOP_DOWN = Constraint(top=(2, 1))
LEFT_UP = Constraint(left=(1, 2))
LEFT_DOWN = Constraint(left=(2, 1))


def _prepare(tau: Pattern):
    """Split tau around its smallest entry: (entries left of it, pattern of the rest)."""
    p = tau.index(1)
    rest = standardize(tau[:p] + tau[p + 1:])
    return p, rest


def _forbidden_short(row_at: list[int], x_max: int, p: int, rest: Pattern) -> list[bool]:
    """Columns 1..x_max where a new lowest dot would complete a landing pattern.

    Handles patterns of length at most 3 in one pass using prefix and suffix
    extrema of the rows already placed (``row_at[c]`` is 0 for a free column).
    Only columns up to x_max matter because the new row ends there.
    """
    bad = [False] * (x_max + 2)
    k = len(rest) + 1
    if k == 1:
        return [True] * (x_max + 2)
    if k == 2:
        if p == 0:
            seen = False
            for x in range(x_max, 0, -1):
                bad[x] = seen
                seen = seen or row_at[x] > 0
        else:
            seen = False
            for x in range(1, x_max + 1):
                bad[x] = seen
                seen = seen or row_at[x] > 0
        return bad
    increasing = rest == (1, 2)
    if p == 1:
        # one placed dot on each side; compare left extreme with right extreme
        pre = [0] * (x_max + 2)
        suf = [0] * (x_max + 2)
        best = None
        for x in range(1, x_max + 1):
            pre[x] = best
            y = row_at[x]
            if y:
                best = y if best is None else (min(best, y) if increasing else max(best, y))
        best = None
        for x in range(x_max, 0, -1):
            suf[x] = best
            y = row_at[x]
            if y:
                best = y if best is None else (max(best, y) if increasing else min(best, y))
        for x in range(1, x_max + 1):
            a, b = pre[x], suf[x]
            if a is not None and b is not None:
                bad[x] = a < b if increasing else a > b
        return bad
    if p == 0:
        # a pair to the right of x; scan leftwards adding dots as the new left end
        found = False
        extreme = None
        for x in range(x_max, 0, -1):
            bad[x] = found
            y = row_at[x]
            if y:
                if extreme is not None and (y < extreme if increasing else y > extreme):
                    found = True
                extreme = y if extreme is None else (max(extreme, y) if increasing else min(extreme, y))
        return bad
    # p == 2: a pair to the left of x; scan rightwards adding dots as the new right end
    found = False
    extreme = None
    for x in range(1, x_max + 1):
        bad[x] = found
        y = row_at[x]
        if y:
            if extreme is not None and (y > extreme if increasing else y < extreme):
                found = True
            extreme = y if extreme is None else (min(extreme, y) if increasing else max(extreme, y))
    return bad


def _forbidden_long(row_at: list[int], x_max: int, p: int, rest: Pattern) -> list[bool]:
    """Same as _forbidden_short for any pattern length, by trying subsets."""
    q = len(rest) - p
    dots = [(c, row_at[c]) for c in range(1, x_max + 1) if row_at[c]]
    bad = [False] * (x_max + 2)
    for x in range(1, x_max + 1):
        if row_at[x]:
            continue
        lefts = [d for d in dots if d[0] < x]
        rights = [d for d in dots if d[0] > x]
        if len(lefts) < p or len(rights) < q:
            continue
        for lc in combinations(lefts, p):
            for rc in combinations(rights, q):
                if standardize([d[1] for d in lc + rc]) == rest:
                    bad[x] = True
                    break
            if bad[x]:
                break
    return bad


def _search(Y: YoungDiagram, patterns: tuple[Pattern, ...], constraint: Constraint, collect=None) -> int:
    """Place dots row by row from the top down, pruning as soon as a pattern lands.

    The newest dot is always the lowest one placed so far, so the only new
    occurrences it can create use it as the pattern's smallest entry, and
    they land iff all their dots sit within the new row's length.  Returns
    the number of completed transversals; if ``collect`` is a list the
    words are appended to it as well.
    """
    n = Y.num_rows
    if not Y.is_proper:
        return 0
    lengths = Y.lengths_from_bottom
    checks = []
    for tau in patterns:
        p, rest = _prepare(tau)
        checks.append((_forbidden_short if len(tau) <= 3 else _forbidden_long, p, rest))
    top = constraint.top
    left = constraint.left
    if top is not None and len(top) > n:
        raise ValueError(f"constraint {constraint} needs more rows than {Y} has")
    if left is not None and len(left) > n:
        raise ValueError(f"constraint {constraint} needs more columns than {Y} has")
    top_done = n - len(top) + 1 if top else None
    tally_last_row = collect is None and left is None and top_done != 1
    row_at = [0] * (n + 2)

    def rec(r: int) -> int:
        if r == 0:
            word = row_at[1 : n + 1]
            if left is not None and standardize(word[: len(left)]) != left:
                return 0
            if collect is not None:
                collect.append(tuple(word))
            return 1
        x_max = lengths[r - 1]
        bads = [f(row_at, x_max, p, rest) for f, p, rest in checks]
        if r == 1 and tally_last_row:
            return sum(1 for x in range(1, x_max + 1) if not row_at[x] and not any(b[x] for b in bads))
        total = 0
        for x in range(1, x_max + 1):
            if row_at[x] or any(b[x] for b in bads):
                continue
            row_at[x] = r
            if r == top_done and standardize([y for y in row_at[1 : n + 1] if y]) != top:
                row_at[x] = 0
                continue
            total += rec(r - 1)
            row_at[x] = 0
        return total

    return rec(n)


def _trim_pairs(kind: tuple[bool, int], summary, limit: int):
    _, p = kind
    if p == 2:
        return summary if summary is not None and summary <= limit else None
    pairs = [(a, b) for a, b in summary if b <= limit]
    if p == 0:
        # (a, b) is useless if another pair starts no earlier and ends no later
        keep = [(a, b) for a, b in pairs
                if not any(a2 >= a and b2 <= b and (a2, b2) != (a, b) for a2, b2 in pairs)]
    else:
        best: dict[int, int] = {}
        for a, b in pairs:
            if b not in best or a < best[b]:
                best[b] = a
        keep = [(a, b) for b, a in best.items()]
    return frozenset(keep)


def _blocked(x: int, limit: int, occ: int, kinds, summaries) -> bool:
    right_any, left_any, pair_kinds = kinds
    if right_any and occ >> (x + 1) & ((1 << (limit - x)) - 1):
        return True
    if left_any and occ & ((1 << x) - 1):
        return True
    for (_, p), summary in zip(pair_kinds, summaries):
        if p == 2:
            if summary is not None and summary < x:
                return True
        elif p == 0:
            if any(x < a and b <= limit for a, b in summary):
                return True
        elif any(a < x < b <= limit for a, b in summary):
            return True
    return False


@lru_cache(maxsize=1 << 20)
def _count_below(bottom: tuple[int, ...], occ: int, summaries: tuple, kinds) -> int:
    """Ways to fill the rows whose lengths are ``bottom`` (bottom row first).

    ``occ`` marks occupied columns that later rows can still reach, and
    ``summaries`` describes the pairs of placed dots each pattern kind needs.
    Only this bottom profile matters, so the cache is shared between all
    diagrams with the same lower rows.
    """
    r = len(bottom)
    limit = bottom[-1]
    next_limit = bottom[-2] if r >= 2 else 0
    pair_kinds = kinds[2]
    total = 0
    for x in range(1, limit + 1):
        if occ >> x & 1 or _blocked(x, limit, occ, kinds, summaries):
            continue
        if r == 1:
            total += 1
            continue
        placed = [c for c in range(1, next_limit + 1) if occ >> c & 1]
        new_summaries = []
        for kind, summary in zip(pair_kinds, summaries):
            inc, p = kind
            if inc:
                fresh = [(x, b) for b in placed if b > x]
            else:
                fresh = [(a, x) for a in placed if a < x]
            if p == 2:
                ends = [b for _, b in fresh] + ([summary] if summary is not None else [])
                merged = min(ends) if ends else None
            else:
                merged = summary | frozenset(fresh)
            new_summaries.append(_trim_pairs(kind, merged, next_limit))
        new_occ = (occ | (1 << x)) & ((1 << (next_limit + 1)) - 1)
        total += _count_below(bottom[:-1], new_occ, tuple(new_summaries), kinds)
    return total


def _count_compressed(Y: YoungDiagram, patterns: tuple[Pattern, ...]) -> int:
    """Memoized count for patterns of length at most 3.

    Rows are filled from the top down as in ``_search``.  The state passed
    downwards keeps only what the remaining (lower, shorter) rows can see:
    occupied columns within the next row's length, plus for each pattern a
    summary of the increasing or decreasing pairs of placed dots, recorded
    by their columns ``(a, b)`` with ``a < b``.
    """
    if not Y.is_proper:
        return 0
    if any(len(t) == 1 for t in patterns):
        return 0
    pair_kinds = tuple(sorted({(_prepare(t)[1] == (1, 2), _prepare(t)[0]) for t in patterns if len(t) == 3}))
    kinds = ((1, 2) in patterns, (2, 1) in patterns, pair_kinds)
    start = tuple(None if p == 2 else frozenset() for _, p in pair_kinds)
    return _count_below(Y.lengths_from_bottom, 0, start, kinds)


@lru_cache(maxsize=None)
def _count_cached(rows: tuple[int, ...], patterns: tuple[Pattern, ...], constraint: Constraint) -> int:
    if constraint == NO_CONSTRAINT and patterns and all(len(t) <= 3 for t in patterns):
        return _count_compressed(YoungDiagram(rows), patterns)
    return _search(YoungDiagram(rows), patterns, constraint)


def count_avoiders(Y: YoungDiagram, patterns: PatternSpec) -> int:
    """|S_Y(patterns)|: transversals of Y avoiding every given pattern."""
    if Y.num_rows == 0:
        return 1
    return _count_cached(Y.rows, _as_pattern_list(patterns), NO_CONSTRAINT)


def count_avoiders_constrained(Y: YoungDiagram, patterns: PatternSpec, constraint: Constraint) -> int:
    if Y.num_rows == 0:
        return 1 if constraint == NO_CONSTRAINT else 0
    return _count_cached(Y.rows, _as_pattern_list(patterns), constraint)


def enumerate_avoiders(
    Y: YoungDiagram, patterns: PatternSpec = (), constraint: Constraint = NO_CONSTRAINT
) -> list[Transversal]:
    """All avoiders, sorted lexicographically by word."""
    if Y.num_rows == 0:
        return []
    found: list[tuple[int, ...]] = []
    pats = _as_pattern_list(patterns) if len(patterns) else ()
    _search(Y, pats, constraint, found)
    found.sort()
    return [Transversal(Y, w) for w in found]


def enumerate_transversals(Y: YoungDiagram) -> list[Transversal]:
    return enumerate_avoiders(Y, ())


def count_transversals(Y: YoungDiagram) -> int:
    """Number of transversals of a proper diagram: fill rows from the bottom."""
    if not Y.is_proper:
        return 0
    total = 1
    for y, length in enumerate(Y.lengths_from_bottom, start=1):
        total *= length - (y - 1)
    return total


# -- first/second and primary/secondary subsequences ---------------------------

def _down_dominators(T: Transversal, d: Cell) -> list[Cell]:
    """Dots left of and above d; each forms a decreasing pair with d."""
    return [e for e in T.dots if e[0] < d[0] and e[1] > d[1]]


def _up_dominators(T: Transversal, d: Cell) -> list[Cell]:
    """Dots right of and above d whose increasing pair with d lands."""
    Y = T.diagram
    return [e for e in T.dots if e[0] > d[0] and e[1] > d[1] and (e[0], d[1]) in Y]


def first_subsequence(T: Transversal) -> list[Cell]:
    """Left-to-right maxima."""
    return [d for d in T.dots if not _down_dominators(T, d)]


def second_subsequence(T: Transversal) -> list[Cell]:
    first = set(first_subsequence(T))
    out = []
    for d in T.dots:
        if d in first:
            continue
        doms = _down_dominators(T, d)
        if doms and all(e in first for e in doms):
            out.append(d)
    return out


def primary_subsequence(T: Transversal) -> list[Cell]:
    return [d for d in T.dots if not _up_dominators(T, d)]


def secondary_subsequence(T: Transversal) -> list[Cell]:
    primary = set(primary_subsequence(T))
    out = []
    for d in T.dots:
        if d in primary:
            continue
        doms = _up_dominators(T, d)
        if doms and all(e in primary for e in doms):
            out.append(d)
    return out


def clear_caches() -> None:
    """Drop memoized counts (they can grow to a few hundred MB in size-8 sweeps)."""
    _count_below.cache_clear()
    _count_cached.cache_clear()
