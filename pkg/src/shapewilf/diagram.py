"""Young diagrams in bottom-left coordinates.

A diagram is given by its row lengths listed from the top row down, so
``YoungDiagram((5, 5, 4, 4, 3))`` has a bottom row of three cells.  Cells
are addressed as ``(x, y)`` with column ``x`` and row ``y`` both counted
from 1 at the bottom-left corner.  Grid points (cell corners) use the same
axes starting at 0, so cell ``(x, y)`` has its top-right corner at the grid
point ``(x, y)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

Cell = tuple[int, int]


class GridPoint(NamedTuple):
    x: int
    y: int

    @property
    def diagonal_index(self) -> int:
        """Index i of the diagonal line x - y = i through this point."""
        return self.x - self.y


class CriticalPoint(NamedTuple):
    point: GridPoint
    index: int


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(a) for a in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(a <= 0 for a in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"row lengths must be weakly decreasing: {rows}")

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return self.rows[0] if self.rows else 0

    @property
    def size(self) -> int:
        """Side length of a proper diagram, i.e. its number of rows."""
        return len(self.rows)

    @property
    def area(self) -> int:
        return sum(self.rows)

    @cached_property
    def lengths_from_bottom(self) -> tuple[int, ...]:
        return tuple(reversed(self.rows))

    def row_length(self, y: int) -> int:
        """Length of the row at height y (1 = bottom); 0 outside the diagram."""
        if 1 <= y <= len(self.rows):
            return self.rows[len(self.rows) - y]
        return 0

    def column_bottom(self, x: int) -> int:
        """Lowest row that has a cell in column x."""
        for y, length in enumerate(self.lengths_from_bottom, start=1):
            if length >= x:
                return y
        raise ValueError(f"column {x} is outside {self}")

    def __contains__(self, cell) -> bool:
        x, y = cell
        return 1 <= y <= len(self.rows) and 1 <= x <= self.rows[len(self.rows) - y]

    def cells(self) -> Iterator[Cell]:
        for y, length in enumerate(self.lengths_from_bottom, start=1):
            for x in range(1, length + 1):
                yield (x, y)

    @cached_property
    def cell_set(self) -> frozenset[Cell]:
        return frozenset(self.cells())

    @cached_property
    def is_proper(self) -> bool:
        n = len(self.rows)
        if n == 0 or self.rows[0] != n:
            return False
        return all(length >= y for y, length in enumerate(self.lengths_from_bottom, start=1))

    def border_path(self) -> str:
        """The border as a word of R and U steps from (0, 0) to the top-right corner."""
        steps = []
        prev = 0
        for length in self.lengths_from_bottom:
            steps.append("R" * (length - prev) + "U")
            prev = length
        return "".join(steps)

    @cached_property
    def critical_points(self) -> tuple[CriticalPoint, ...]:
        """Border corners entered by an up-step and left by a right-step, bottom to top."""
        lengths = self.lengths_from_bottom
        found = []
        for y in range(1, len(lengths)):
            if lengths[y] > lengths[y - 1]:
                p = GridPoint(lengths[y - 1], y)
                found.append(CriticalPoint(p, p.diagonal_index))
        return tuple(found)

    def critical_point(self, point) -> CriticalPoint:
        point = GridPoint(*point)
        for cp in self.critical_points:
            if cp.point == point:
                return cp
        raise ValueError(f"{tuple(point)} is not a critical point of {self}")

    @property
    def max_critical_index(self) -> int:
        """Largest critical index, or -1 when there are no critical points."""
        return max((cp.index for cp in self.critical_points), default=-1)

    def diagonal_cells(self) -> list[Cell]:
        return [(j, j) for j in range(1, len(self.rows) + 1) if (j, j) in self]

    def submatrix(self, cols: Iterable[int], rows: Iterable[int]) -> "YoungDiagram":
        """Keep only the given columns and rows and squeeze them together."""
        cols = sorted(set(cols))
        lengths = []
        for y in sorted(set(rows)):
            length = sum(1 for x in cols if (x, y) in self)
            if length:
                lengths.append(length)
        return YoungDiagram(tuple(reversed(lengths)))

    def transpose(self) -> "YoungDiagram":
        heights = [sum(1 for a in self.rows if a >= x) for x in range(1, self.num_cols + 1)]
        return YoungDiagram(tuple(heights))

    def __str__(self) -> str:
        return "Y(" + ",".join(map(str, self.rows)) + ")"

    def to_text(self) -> str:
        return ",".join(map(str, self.rows))

    def to_json(self) -> str:
        return json.dumps({"rows": list(self.rows)})

    def picture(self, dots: Iterable[Cell] = ()) -> str:
        """ASCII drawing, top row first, with dots drawn as '*'."""
        dots = set(dots)
        lines = []
        for y in range(len(self.rows), 0, -1):
            lines.append("".join("*" if (x, y) in dots else "." for x in range(1, self.row_length(y) + 1)))
        return "\n".join(lines)


EMPTY = YoungDiagram(())


def diagram_from_cells(cells: Iterable[Cell]) -> YoungDiagram:
    """Squeeze out empty rows and columns of a cell set and read off its shape.

    Raises ValueError if the squeezed set is not a Young diagram (rows
    left-justified and weakly longer going up).
    """
    cells = set(cells)
    if not cells:
        return EMPTY
    xmap = {x: i for i, x in enumerate(sorted({x for x, _ in cells}), start=1)}
    ymap = {y: i for i, y in enumerate(sorted({y for _, y in cells}), start=1)}
    by_row: dict[int, list[int]] = {}
    for x, y in cells:
        by_row.setdefault(ymap[y], []).append(xmap[x])
    lengths = []
    for y in range(1, len(ymap) + 1):
        row = sorted(by_row[y])
        if row != list(range(1, len(row) + 1)):
            raise ValueError("cell set is not left-justified")
        lengths.append(len(row))
    if any(lengths[i] > lengths[i + 1] for i in range(len(lengths) - 1)):
        raise ValueError("rows do not get longer going up")
    return YoungDiagram(tuple(reversed(lengths)))


def reduce(Y: YoungDiagram, cells: Iterable[Cell]) -> YoungDiagram:
    """Delete every row and column of Y that meets one of the given cells."""
    cells = list(cells)
    for c in cells:
        if c not in Y:
            raise ValueError(f"cell {c} is outside {Y}")
    dead_cols = {x for x, _ in cells}
    dead_rows = {y for _, y in cells}
    return Y.submatrix(
        (x for x in range(1, Y.num_cols + 1) if x not in dead_cols),
        (y for y in range(1, Y.num_rows + 1) if y not in dead_rows),
    )


# Quadrant kinds: which side of the reference in x and in y.  For a cell
# the strict flag excludes its own column and row; grid points never need it.
SUBBOARD_KINDS = {
    "upper-left": ("le", "ge"),
    "lower-right": ("ge", "le"),
    "lower-left": ("le", "le"),
    "upper-right": ("ge", "ge"),
}


@dataclass(frozen=True)
class Subboard:
    parent: YoungDiagram
    cells: frozenset

    def __len__(self):
        return len(self.cells)

    @property
    def is_empty(self) -> bool:
        return not self.cells

    def is_rectangle(self) -> bool:
        if not self.cells:
            return True
        xs = {x for x, _ in self.cells}
        ys = {y for _, y in self.cells}
        return len(self.cells) == len(xs) * len(ys)

    def to_diagram(self) -> YoungDiagram:
        return diagram_from_cells(self.cells)


def subboard(Y: YoungDiagram, ref, kind: str, strict: bool = False, point: bool = False) -> Subboard:
    """Cells of Y in one quadrant around a cell or a grid point.

    With ``point=True`` the reference is a grid point: "upper-left" means
    cells left of it and above it, and so on.  For a cell the quadrant
    includes the cell's own row and column unless ``strict`` is set.
    """
    if kind not in SUBBOARD_KINDS:
        raise ValueError(f"unknown subboard kind {kind!r}; expected one of {sorted(SUBBOARD_KINDS)}")
    sx, sy = SUBBOARD_KINDS[kind]
    rx, ry = ref
    if point:
        # cell (x, y) has top-right corner (x, y): left of P means x <= P.x
        def side(v, r, s):
            return v <= r if s == "le" else v > r
    elif strict:
        def side(v, r, s):
            return v < r if s == "le" else v > r
    else:
        def side(v, r, s):
            return v <= r if s == "le" else v >= r
    return Subboard(Y, frozenset((x, y) for (x, y) in Y.cells() if side(x, rx, sx) and side(y, ry, sy)))


def is_proper(Y: YoungDiagram) -> bool:
    return Y.is_proper


def critical_points(Y: YoungDiagram) -> tuple[CriticalPoint, ...]:
    return Y.critical_points


def square(n: int) -> YoungDiagram:
    if n < 1:
        raise ValueError("size must be positive")
    return YoungDiagram((n,) * n)


def corner_deleted(n: int) -> YoungDiagram:
    """The n x n square without its bottom-right cell."""
    if n < 2:
        raise ValueError("corner_deleted needs n >= 2")
    return YoungDiagram((n,) * (n - 1) + (n - 1,))


def staircase(i: int, n: int) -> YoungDiagram:
    """Staircase of width i: bottom rows i, i+1, ..., n-1, then i rows of length n.

    For i >= n this is the square of size n.
    """
    if n < 1 or i < 1:
        raise ValueError("staircase needs i >= 1 and n >= 1")
    if i >= n:
        return square(n)
    from_bottom = [min(n, i + y) for y in range(n)]
    return YoungDiagram(tuple(reversed(from_bottom)))


def enumerate_proper_diagrams(n: int) -> Iterator[YoungDiagram]:
    """Every proper diagram of size n, row tuples in descending lexicographic order."""
    if n < 1:
        raise ValueError("size must be positive")

    def rec(prefix: list[int]):
        k = len(prefix)
        if k == n:
            yield YoungDiagram(tuple(prefix))
            return
        # row k+1 from the top sits at height n-k and must reach that column
        lo = n - k
        hi = prefix[-1] if prefix else n
        start = hi if prefix else n
        for a in range(start, lo - 1, -1):
            prefix.append(a)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def all_proper_diagrams(max_size: int, min_size: int = 1) -> Iterator[YoungDiagram]:
    for n in range(min_size, max_size + 1):
        yield from enumerate_proper_diagrams(n)


def parse_diagram(text: str) -> YoungDiagram:
    """Parse "5,5,4,4,3" (top row first) or a JSON object {"rows": [...]}."""
    text = text.strip()
    if text.startswith("{"):
        rows = json.loads(text)["rows"]
    else:
        text = text.removeprefix("Y(").removesuffix(")")
        rows = [int(part) for part in text.replace(" ", "").split(",") if part]
    if not rows:
        raise ValueError("empty diagram")
    return YoungDiagram(tuple(rows))
