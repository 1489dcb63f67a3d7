"""White/blue colorings and the count of (alpha|gamma)-avoiders by white subdiagrams.

A cell is white when the cells strictly right of and below it carry a
landing copy of gamma among the given dots, and blue otherwise.  Deleting
the rows and columns of blue dots from the white region leaves a smaller
diagram W holding the white dots as a full transversal, so avoiders of the
block pattern (alpha|gamma) factor into an alpha-avoider of W times a blue
partial transversal that carves out W.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .diagram import Cell, YoungDiagram, diagram_from_cells
from .transversal import (
    Transversal,
    block_pattern,
    count_avoiders,
    dots_contain,
    is_partial_transversal,
)


@dataclass(frozen=True)
class ColoredBoard:
    diagram: YoungDiagram
    dots: frozenset
    gamma: tuple[int, ...]
    white: frozenset

    def is_white(self, cell: Cell) -> bool:
        return cell in self.white

    @property
    def blue(self) -> frozenset:
        return self.diagram.cell_set - self.white

    def picture(self) -> str:
        Y = self.diagram
        lines = []
        for y in range(Y.num_rows, 0, -1):
            row = []
            for x in range(1, Y.row_length(y) + 1):
                ch = "w" if (x, y) in self.white else "b"
                row.append(ch.upper() if (x, y) in self.dots else ch)
            lines.append("".join(row))
        return "\n".join(lines)


def _white_cells(Y: YoungDiagram, dots: Sequence[Cell], gamma: tuple[int, ...]) -> frozenset:
    if not gamma:
        return Y.cell_set
    white = set()
    for cx, cy in Y.cells():
        region = [d for d in dots if d[0] > cx and d[1] < cy]
        if len(region) >= len(gamma) and dots_contain(Y, region, gamma):
            white.add((cx, cy))
    return frozenset(white)


def color_board(Y: YoungDiagram, dots: Iterable[Cell], gamma: Sequence[int]) -> ColoredBoard:
    dots = frozenset(dots)
    if not is_partial_transversal(Y, dots):
        raise ValueError("dots must form a partial transversal of the diagram")
    gamma = tuple(gamma)
    return ColoredBoard(Y, dots, gamma, _white_cells(Y, sorted(dots), gamma))


@dataclass(frozen=True)
class InducedSplit:
    white_diagram: YoungDiagram
    white_transversal: Transversal
    blue_dots: tuple[Cell, ...]
    white_cols: tuple[int, ...]
    white_rows: tuple[int, ...]


def induced_white(Y: YoungDiagram, T: Transversal, gamma: Sequence[int]) -> InducedSplit:
    """Split T into the transversal of its white diagram W and its blue dots."""
    board = color_board(Y, T.dots, gamma)
    blue_dots = tuple(d for d in T.dots if d not in board.white)
    white_dots = [d for d in T.dots if d in board.white]
    cols = tuple(sorted(x for x, _ in white_dots))
    rows = tuple(sorted(y for _, y in white_dots))
    keep_cols, keep_rows = set(cols), set(rows)
    cells = [c for c in board.white if c[0] in keep_cols and c[1] in keep_rows]
    W = diagram_from_cells(cells)
    if W.num_rows != len(rows) or W.num_cols != len(cols):
        raise AssertionError("white region lost a row or column")
    xmap = {x: i for i, x in enumerate(cols, start=1)}
    ymap = {y: i for i, y in enumerate(rows, start=1)}
    T_W = Transversal.from_dots(W, [(xmap[x], ymap[y]) for x, y in white_dots])
    return InducedSplit(W, T_W, blue_dots, cols, rows)


def replace_white_part(Y: YoungDiagram, T: Transversal, gamma, new_white: Transversal) -> Transversal:
    """Swap the white transversal of T for another transversal of the same W."""
    split = induced_white(Y, T, gamma)
    if new_white.diagram != split.white_diagram:
        raise ValueError("replacement lives on a different white diagram")
    dots = list(split.blue_dots)
    for x, y in new_white.dots:
        dots.append((split.white_cols[x - 1], split.white_rows[y - 1]))
    return Transversal.from_dots(Y, dots)


def _carved_diagram(Y: YoungDiagram, dots: Sequence[Cell], white: frozenset):
    """The white cells left after deleting the dots' rows and columns, or None
    when some surviving row or column has no white cell."""
    dead_cols = {x for x, _ in dots}
    dead_rows = {y for _, y in dots}
    cells = [c for c in white if c[0] not in dead_cols and c[1] not in dead_rows]
    live_rows = Y.num_rows - len(dead_rows)
    live_cols = Y.num_cols - len(dead_cols)
    if len({y for _, y in cells}) != live_rows or len({x for x, _ in cells}) != live_cols:
        return None
    try:
        return diagram_from_cells(cells)
    except ValueError:
        return None


def saturates(T_prime: Iterable[Cell], W: YoungDiagram, Y: YoungDiagram, gamma: Sequence[int]) -> bool:
    """Check that the partial transversal carves out exactly W:

    every dot is blue, deleting the dots' rows and columns and then the
    remaining blue cells leaves W, and |W| + |T'| = |Y|.
    """
    dots = sorted(T_prime)
    if not is_partial_transversal(Y, dots):
        return False
    gamma = tuple(gamma)
    white = _white_cells(Y, dots, gamma)
    if any(d in white for d in dots):
        return False
    if W.num_rows + len(dots) != Y.num_rows:
        return False
    return _carved_diagram(Y, dots, white) == W


@lru_cache(maxsize=None)
def _profile(rows: tuple[int, ...], gamma: tuple[int, ...]) -> tuple:
    Y = YoungDiagram(rows)
    n = Y.num_rows
    lengths = Y.lengths_from_bottom
    tally: Counter = Counter()
    placed: list[Cell] = []
    used = set()

    def blue(cell: Cell) -> bool:
        region = [d for d in placed if d[0] > cell[0] and d[1] < cell[1]]
        return len(region) < len(gamma) or not dots_contain(Y, region, gamma)

    def rec(y: int):
        # rows are decided bottom-up, so every dot below is already known
        if y > n:
            white = _white_cells(Y, placed, gamma)
            W = _carved_diagram(Y, placed, white)
            if W is not None:
                tally[W] += 1
            return
        rec(y + 1)
        if not gamma:
            return
        for x in range(1, lengths[y - 1] + 1):
            if x in used or not blue((x, y)):
                continue
            used.add(x)
            placed.append((x, y))
            rec(y + 1)
            placed.pop()
            used.discard(x)

    rec(1)
    return tuple(sorted(tally.items(), key=lambda kv: (-kv[0].num_rows, kv[0].rows)))


def saturation_profile(Y: YoungDiagram, gamma: Sequence[int]) -> dict[YoungDiagram, int]:
    """For every diagram W, the number of partial transversals of Y saturating it."""
    return dict(_profile(Y.rows, tuple(gamma)))


def count_saturating(board: YoungDiagram, W: YoungDiagram, gamma: Sequence[int]) -> int:
    return saturation_profile(board, gamma).get(W, 0)


def _count_on(W: YoungDiagram, alpha) -> int:
    if not alpha:
        raise ValueError("alpha must be a non-empty pattern")
    if W.num_rows == 0:
        return 1
    return count_avoiders(W, alpha)


@dataclass
class SplittingAudit:
    diagram: YoungDiagram
    alpha: tuple[int, ...]
    gamma: tuple[int, ...]
    rows: list[tuple[YoungDiagram, int, int]]

    @property
    def total(self) -> int:
        return sum(a * s for _, a, s in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["W", "|S_W(alpha)|", "|S_bar(gamma)|", "product"])
        for W, a, s in self.rows:
            writer.writerow([W.to_text() or "empty", a, s, a * s])
        return buf.getvalue()


def splitting_audit(Y: YoungDiagram, alpha: Sequence[int], gamma: Sequence[int]) -> SplittingAudit:
    alpha = tuple(alpha)
    rows = [(W, _count_on(W, alpha), s) for W, s in saturation_profile(Y, gamma).items()]
    return SplittingAudit(Y, alpha, tuple(gamma), rows)


def splitting_formula_count(Y: YoungDiagram, alpha: Sequence[int], gamma: Sequence[int]) -> int:
    """Sum over W of |S_W(alpha)| times the number of partial transversals saturating W."""
    if not gamma:
        return _count_on(Y, tuple(alpha))
    return splitting_audit(Y, alpha, gamma).total


def difference_audit(Y: YoungDiagram, alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]):
    """Per-W contributions to |S_Y(beta|gamma)| - |S_Y(alpha|gamma)|, nonzero terms only.

    Each entry is (W, count of alpha-avoiders, count of beta-avoiders, saturations).
    """
    out = []
    for W, s in saturation_profile(Y, gamma).items():
        a = _count_on(W, tuple(alpha))
        b = _count_on(W, tuple(beta))
        if a != b and s:
            out.append((W, a, b, s))
    return out


def construct_saturating_pair(n: int, tau: Sequence[int]) -> frozenset:
    """Two copies of tau inside the bottom-right (2k+1)-square of the n-square,
    one low on the left and one high on the right, with an empty middle row
    and column between them."""
    tau = tuple(tau)
    k = len(tau)
    if k < 1:
        raise ValueError("tau must be non-empty")
    if n < 2 * k + 2:
        raise ValueError(f"need n >= {2 * k + 2} for a pattern of length {k}")
    first_col = n - 2 * k
    low = {(first_col + j - 1, tau[j - 1]) for j in range(1, k + 1)}
    high = {(n - k + j, k + 1 + tau[j - 1]) for j in range(1, k + 1)}
    return frozenset(low | high)


def block_count(Y: YoungDiagram, alpha, gamma) -> int:
    """Direct count of (alpha|gamma)-avoiders, for comparison with the formula."""
    return count_avoiders(Y, block_pattern(alpha, gamma))


def describe(W: YoungDiagram) -> str:
    return str(W) if W.num_rows else "empty"
