"""Splitting transversals at a critical point of the border.

For a critical point P = (px, py) of index i the rectangle of cells left of
and above P holds exactly i dots of every transversal.  Splitting moves
those dots down into the square of the first px columns and rows (the
"lower" part) and right into the diagram of cells above row py and right
of column py (the "upper" part).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .diagram import GridPoint, YoungDiagram, square
from .formulas import catalan
from .transversal import (
    NO_CONSTRAINT,
    Constraint,
    Pattern,
    Transversal,
    check_pattern,
    count_avoiders,
    count_avoiders_constrained,
    standardize,
)


def lower_part(Y: YoungDiagram, P) -> YoungDiagram:
    """Cells in the first P.x columns and first P.x rows."""
    px = P[0]
    return Y.submatrix(range(1, px + 1), range(1, px + 1))


def upper_part(Y: YoungDiagram, P) -> YoungDiagram:
    """Cells right of column P.y and above row P.y."""
    py = P[1]
    n = Y.num_rows
    return Y.submatrix(range(py + 1, n + 1), range(py + 1, n + 1))


@dataclass(frozen=True)
class SplitResult:
    left: Transversal
    right: Transversal
    alpha_pattern: Pattern


def zeta(T: Transversal, P) -> SplitResult:
    Y = T.diagram
    cp = Y.critical_point(P)
    px, py = cp.point
    n = T.size
    # dots in the rectangle left of and above P, in column order
    boxed = [(x, y) for x, y in T.dots if x <= px and y > py]
    if len(boxed) != cp.index:
        raise AssertionError(f"rectangle at {tuple(P)} holds {len(boxed)} dots, expected {cp.index}")
    by_row = sorted(boxed, key=lambda d: d[1])
    row_rank = {d: py + k for k, d in enumerate(by_row, start=1)}
    left_word = tuple(row_rank.get((x, T.word[x - 1]), T.word[x - 1]) for x in range(1, px + 1))
    right_word = tuple(y - py for _, y in boxed) + tuple(T.word[x - 1] - py for x in range(px + 1, n + 1))
    return SplitResult(
        Transversal(lower_part(Y, cp.point), left_word),
        Transversal(upper_part(Y, cp.point), right_word),
        standardize([y for _, y in boxed]),
    )


def unzeta(Y: YoungDiagram, P, left: Transversal, right: Transversal, alpha_pattern=None) -> Transversal:
    """Glue a split pair back together; the shared dots must match in pattern."""
    cp = Y.critical_point(P)
    px, py = cp.point
    i = cp.index
    n = Y.num_rows
    if left.diagram != lower_part(Y, cp.point) or right.diagram != upper_part(Y, cp.point):
        raise ValueError("invalid glue: parts do not match the diagram")
    # shared dots: top i rows of the lower part, leftmost i columns of the upper part
    top = sorted((x, y) for x, y in left.dots if y > py)
    lefts = [right.word[c] for c in range(i)]
    top_pattern = standardize([y for _, y in top])
    if top_pattern != standardize(lefts):
        raise ValueError("invalid glue: shared dots have different patterns")
    if alpha_pattern is not None and tuple(alpha_pattern) != top_pattern:
        raise ValueError("invalid glue: alpha pattern does not match")
    word = [0] * n
    for x, y in left.dots:
        if y <= py:
            word[x - 1] = y
    for (x, _), y in zip(top, lefts):
        word[x - 1] = y + py
    for c in range(i, right.size):
        word[px + c - i] = right.word[c] + py
    return Transversal(Y, tuple(word))


@dataclass
class SplitLawReport:
    diagram: YoungDiagram
    point: GridPoint
    index: int
    pattern: Pattern
    lhs: int
    rhs: int
    terms: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def verify_splitting_law(Y: YoungDiagram, P, sigma) -> SplitLawReport:
    """Compare |S_Y(sigma)| with the sum over shared-dot patterns tau of
    (lower-part avoiders whose top rows form tau) x (upper-part avoiders whose
    left columns form tau)."""
    sigma = check_pattern(sigma)
    cp = Y.critical_point(P)
    lower = lower_part(Y, cp.point)
    upper = upper_part(Y, cp.point)
    terms = []
    for tau in permutations(range(1, cp.index + 1)):
        if cp.index <= 1:
            a = count_avoiders(lower, sigma)
            b = count_avoiders(upper, sigma)
        else:
            a = count_avoiders_constrained(lower, sigma, Constraint(top=tau))
            b = count_avoiders_constrained(upper, sigma, Constraint(left=tau))
        terms.append((tau, a, b))
    rhs = sum(a * b for _, a, b in terms)
    return SplitLawReport(Y, cp.point, cp.index, sigma, count_avoiders(Y, sigma), rhs, terms)


RECURSION_PATTERNS = ((3, 1, 2), (3, 2, 1))


def recursive_count(Y: YoungDiagram, sigma=(3, 1, 2), left_down: bool = False) -> int:
    """|S_Y(sigma)| (or, with ``left_down``, those whose two leftmost dots
    decrease) for sigma in {312, 321}, by splitting at the bottom critical point.

    Only diagrams whose critical points all have index at most 2 are accepted.
    """
    sigma = check_pattern(sigma)
    if sigma not in RECURSION_PATTERNS:
        raise ValueError("recursive_count handles only 312 and 321")
    if not Y.is_proper:
        raise ValueError(f"{Y} is not proper")
    if Y.max_critical_index >= 3:
        raise ValueError(f"{Y} has a critical point of index >= 3")
    return _recursive(Y.rows, left_down)


@lru_cache(maxsize=None)
def _recursive(rows: tuple[int, ...], left_down: bool) -> int:
    Y = YoungDiagram(rows)
    if not Y.critical_points:
        m = Y.num_rows
        if left_down:
            return catalan(m - 1) if m >= 2 else 0
        return catalan(m)
    (px, py), i = Y.critical_points[0]
    upper = upper_part(Y, (px, py)).rows
    k = py
    if i <= 1:
        rest = _recursive(upper, False)
        if not left_down:
            return catalan(px) * rest
        return catalan(px - 1) * rest if px >= 2 else 0
    # i == 2: the lower part is the square of side k + 2
    down = _recursive(upper, True)
    up = _recursive(upper, False) - down
    if left_down:
        return catalan(k) * down + (catalan(k + 1) - catalan(k)) * up
    return catalan(k + 1) * down + (catalan(k + 2) - catalan(k + 1)) * up


@dataclass(frozen=True)
class SquareCaseCounts:
    k: int
    top_down: int
    top_up: int
    up_disjoint: int
    down_disjoint: int
    shared_corner: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.top_down, self.top_up, self.up_disjoint, self.down_disjoint, self.shared_corner)


def square_case_counts(k: int) -> SquareCaseCounts:
    """Catalan values of the five counts on the square of side k + 2.

    Among avoiders of 312 (equivalently 321) on that square: top two dots
    decreasing; top two increasing; then, among those whose two leftmost dots
    decrease, the ones with increasing top pair disjoint from the leftmost
    pair, with decreasing top pair disjoint from it, and with the leftmost
    dot being the left dot of an increasing top pair.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    c = catalan
    return SquareCaseCounts(
        k,
        c(k + 1),
        c(k + 2) - c(k + 1),
        c(k + 1) - c(k) - k,
        c(k) - 1,
        k,
    )


def square_case_counts_by_enumeration(k: int, sigma=(3, 1, 2)) -> SquareCaseCounts:
    """The same five counts obtained by filtering all avoiders of the square."""
    from .transversal import enumerate_avoiders

    m = k + 2
    top_down = top_up = up_disjoint = down_disjoint = shared = 0
    for T in enumerate_avoiders(square(m), check_pattern(sigma)):
        w = T.word
        top = [T.column_of_row(m - 1), T.column_of_row(m)]
        top_increasing = top[0] < top[1]
        left_decreasing = w[0] > w[1]
        if top_increasing:
            top_up += 1
        else:
            top_down += 1
        if not left_decreasing:
            continue
        disjoint = not ({1, 2} & set(top))
        if disjoint and top_increasing:
            up_disjoint += 1
        elif disjoint:
            down_disjoint += 1
        if top_increasing and min(top) == 1:
            shared += 1
    return SquareCaseCounts(k, top_down, top_up, up_disjoint, down_disjoint, shared)
