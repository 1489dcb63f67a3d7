"""Structural maps between avoider classes.

* ``phi`` sends 312-avoiders onto 321-avoiders by keeping the left-to-right
  maxima and straightening everything else into an identity.
* ``psi`` sends 213-avoiders injectively into 123-avoiders, recursively, and
  records the 123 -> 213 moves that undo it step by step.
* moves rearrange the three dots of one landing pattern occurrence.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .diagram import Cell, YoungDiagram
from .transversal import (
    Transversal,
    avoids,
    enumerate_avoiders,
    first_subsequence,
    lands,
    occurrences,
    second_subsequence,
    standardize,
)

P213 = (2, 1, 3)
P123 = (1, 2, 3)
P312 = (3, 1, 2)
P321 = (3, 2, 1)


# -- dominance graphs ---------------------------------------------------------

def _below_right(T: Transversal, beta: Cell) -> list[Cell]:
    return [d for d in T.dots if d[0] >= beta[0] and d[1] <= beta[1]]


def _cover_edges(vertices: Sequence[Cell]) -> set[tuple[Cell, Cell]]:
    """Decreasing pairs with no vertex strictly between them in both directions."""
    edges = set()
    for a in vertices:
        for b in vertices:
            if a[0] < b[0] and a[1] > b[1]:
                between = any(a[0] < c[0] < b[0] and b[1] < c[1] < a[1] for c in vertices)
                if not between:
                    edges.add((a, b))
    return edges


@dataclass
class DominanceGraph:
    transversal: Transversal
    first: list[Cell]
    second: list[Cell]
    trees: dict[Cell, tuple[frozenset, frozenset]]
    components: list[list[Cell]]

    @property
    def vertices(self) -> set[Cell]:
        out = set()
        for verts, _ in self.trees.values():
            out |= verts
        return out

    @property
    def edges(self) -> set[tuple[Cell, Cell]]:
        out = set()
        for _, edges in self.trees.values():
            out |= edges
        return out

    def component_values(self) -> list[list[int]]:
        """Each component as its rows read left to right."""
        return [[y for _, y in comp] for comp in self.components]

    def trees_are_trees(self) -> bool:
        return all(_is_tree(v, e) for v, e in self.trees.values())

    def components_increasing(self) -> bool:
        comps = self.components
        return all(
            max(x for x, _ in a) < min(x for x, _ in b) and max(y for _, y in a) < min(y for _, y in b)
            for a, b in zip(comps, comps[1:])
        )

    def components_consecutive(self) -> bool:
        """Each component is the union of the trees of consecutive second-sequence dots."""
        order = sorted(self.trees)
        owner = {}
        for idx, comp in enumerate(self.components):
            for d in comp:
                owner[d] = idx
        labels = [owner[beta] for beta in order]
        seen = set()
        for a, b in zip(labels, labels[1:] + [None]):
            if a != b:
                if a in seen:
                    return False
                seen.add(a)
        return True


def _is_tree(vertices: frozenset, edges: frozenset) -> bool:
    if not vertices:
        return True
    if len(edges) != len(vertices) - 1:
        return False
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(vertices)


def build_dominance_graph(T: Transversal) -> DominanceGraph:
    if not avoids(T, P312):
        raise ValueError(f"{T} contains 312 on {T.diagram}")
    first = first_subsequence(T)
    second = second_subsequence(T)
    trees = {}
    for beta in second:
        verts = _below_right(T, beta)
        trees[beta] = (frozenset(verts), frozenset(_cover_edges(verts)))
    # connected components of the union, undirected
    parent: dict[Cell, Cell] = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for verts, edges in trees.values():
        for v in verts:
            parent.setdefault(v, v)
        for a, b in edges:
            parent[find(a)] = find(b)
    groups = defaultdict(list)
    for v in parent:
        groups[find(v)].append(v)
    components = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    return DominanceGraph(T, first, second, trees, components)


# -- phi ----------------------------------------------------------------------

def phi(T: Transversal) -> Transversal:
    """Keep the left-to-right maxima; lay the other dots along the diagonal
    of the diagram that remains once the maxima's rows and columns are gone."""
    if not avoids(T, P312):
        raise ValueError(f"{T} contains 312 on {T.diagram}")
    first = first_subsequence(T)
    used_cols = {x for x, _ in first}
    used_rows = {y for _, y in first}
    cols = [x for x in range(1, T.size + 1) if x not in used_cols]
    rows = [y for y in range(1, T.size + 1) if y not in used_rows]
    return Transversal.from_dots(T.diagram, list(first) + list(zip(cols, rows)))


def phi_fibers(Y: YoungDiagram) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """312-avoiders grouped by their image under phi (words as keys)."""
    fibers: dict[tuple[int, ...], list[tuple[int, ...]]] = defaultdict(list)
    for T in enumerate_avoiders(Y, P312):
        fibers[phi(T).word].append(T.word)
    return dict(sorted(fibers.items()))


# -- moves --------------------------------------------------------------------

MOVE_KINDS = {
    "213->123": (P213, P123, (0, 1)),
    "123->213": (P123, P213, (0, 1)),
    "312->321": (P312, P321, (1, 2)),
    "321->312": (P321, P312, (1, 2)),
}


def _kind(kind: str) -> str:
    kind = kind.replace("→", "->").replace(" ", "")
    if kind not in MOVE_KINDS:
        raise ValueError(f"unknown move {kind!r}; expected one of {sorted(MOVE_KINDS)}")
    return kind


@dataclass(frozen=True)
class Move:
    kind: str
    dots: tuple[Cell, Cell, Cell]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "dots": [list(d) for d in self.dots]}


def apply_move(T: Transversal, kind: str, occurrence: Iterable[Cell]) -> Transversal:
    """Rearrange one landing occurrence of the source pattern into the target pattern."""
    kind = _kind(kind)
    source, _, (i, j) = MOVE_KINDS[kind]
    occ = sorted(occurrence)
    if len(occ) != 3 or any(d not in T.dots for d in occ):
        raise ValueError("occurrence must be three dots of the transversal")
    if standardize([y for _, y in occ]) != source:
        raise ValueError(f"dots {occ} do not form {source}")
    if not lands(T.diagram, occ):
        raise ValueError(f"occurrence {occ} does not land in {T.diagram}")
    moved = list(occ)
    moved[i], moved[j] = (occ[i][0], occ[j][1]), (occ[j][0], occ[i][1])
    dots = [d for d in T.dots if d not in occ] + moved
    return Transversal.from_dots(T.diagram, dots)


def _occurrence_key(occ: Sequence[Cell]):
    return (min(y for _, y in occ), min(x for x, _ in occ), tuple(occ))


def normalize_by_moves(T: Transversal, kind: str) -> Transversal:
    return normalize_with_script(T, kind)[0]


def normalize_with_script(T: Transversal, kind: str) -> tuple[Transversal, list[Move]]:
    """Apply moves until the source pattern is gone, always taking the
    occurrence with the lowest bottom row, then the leftmost column."""
    kind = _kind(kind)
    source = MOVE_KINDS[kind][0]
    script = []
    limit = comb(T.size, 2)
    while True:
        occs = list(occurrences(T.diagram, T.dots, source))
        if not occs:
            return T, script
        if len(script) >= limit:
            raise AssertionError(f"more than {limit} moves from {T}")
        occ = min(occs, key=_occurrence_key)
        script.append(Move(kind, tuple(occ)))
        T = apply_move(T, kind, occ)


def move_endpoints(T: Transversal, kind: str) -> set[tuple[int, ...]]:
    """Words reachable at the end of every maximal sequence of moves."""
    kind = _kind(kind)
    source = MOVE_KINDS[kind][0]
    memo: dict[tuple[int, ...], frozenset] = {}

    def rec(t: Transversal) -> frozenset:
        if t.word in memo:
            return memo[t.word]
        occs = list(occurrences(t.diagram, t.dots, source))
        if not occs:
            out = frozenset([t.word])
        else:
            out = frozenset().union(*(rec(apply_move(t, kind, o)) for o in occs))
        memo[t.word] = out
        return out

    return set(rec(T))


def replay(T: Transversal, script: Iterable[Move]) -> Transversal:
    for move in script:
        T = apply_move(T, move.kind, move.dots)
    return T


# -- 213-decomposition ----------------------------------------------------------

def corner_square_size(Y: YoungDiagram, x: int) -> int:
    """Side of the square whose diagonal runs at 45 degrees from the bottom-left
    corner of bottom cell x until it meets the border."""
    if not 1 <= x <= Y.row_length(1):
        raise ValueError(f"({x}, 1) is not a bottom cell of {Y}")
    for t, length in enumerate(Y.lengths_from_bottom, start=1):
        if length - t == x - 1:
            return t
    raise AssertionError("diagonal never met the border")


@dataclass(frozen=True)
class Decomposition213:
    cell: Cell
    size: int
    a_cols: tuple[int, ...]
    left_cols: tuple[int, ...]
    right_cols: tuple[int, ...]
    a_part: Transversal
    b_part: Transversal | None
    minimal: bool

    @property
    def b_cols(self) -> tuple[int, ...]:
        return self.left_cols + self.right_cols

    def rows(self, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(range(1, self.size + 1)), tuple(range(self.size + 1, n + 1))


def _respects(T: Transversal, x: int, m: int) -> bool:
    return all(x <= T.column_of_row(y) < x + m for y in range(1, m + 1))


def decomposition_at(T: Transversal, x: int) -> Decomposition213:
    """The decomposition induced by bottom cell (x, 1); T must respect it."""
    Y = T.diagram
    n = T.size
    m = corner_square_size(Y, x)
    if not _respects(T, x, m):
        raise ValueError(f"{T} does not respect the decomposition at ({x}, 1)")
    a_cols = tuple(range(x, x + m))
    left = tuple(range(1, x))
    right = tuple(range(x + m, n + 1))
    a_part = T.restrict(a_cols, range(1, m + 1))
    b_part = T.restrict(left + right, range(m + 1, n + 1)) if m < n else None
    return Decomposition213((x, 1), m, a_cols, left, right, a_part, b_part, x == T.column_of_row(1))


def decompose_213(T: Transversal) -> Decomposition213 | None:
    """The smallest non-trivial decomposition T respects, or None."""
    n = T.size
    bottom = T.column_of_row(1)
    best = None
    for x in range(bottom, 0, -1):
        m = corner_square_size(T.diagram, x)
        if m < n and _respects(T, x, m) and (best is None or m < best[1]):
            best = (x, m)
    if best is None:
        return None
    return decomposition_at(T, best[0])


# -- psi ----------------------------------------------------------------------

def _lift(dots: Iterable[Cell], cols: Sequence[int], rows: Sequence[int]) -> list[Cell]:
    return [(cols[x - 1], rows[y - 1]) for x, y in dots]


def _lift_moves(script: Iterable[Move], cols, rows) -> list[Move]:
    return [Move(m.kind, tuple(_lift(m.dots, cols, rows))) for m in script]


def _rectangle_split(dots: Sequence[Cell]) -> tuple[list[Cell], list[Cell]]:
    """Primary (undominated) and secondary dots of a set lying in full-height columns."""
    def dominators(d):
        return [e for e in dots if e[0] > d[0] and e[1] > d[1]]

    primary = [d for d in dots if not dominators(d)]
    pset = set(primary)
    secondary = [d for d in dots if d not in pset and all(e in pset for e in dominators(d))]
    return sorted(primary), sorted(secondary)


def _psi(T: Transversal) -> tuple[Transversal, list[Move]]:
    n = T.size
    if n == 1:
        return T, []
    Y = T.diagram
    bottom = T.column_of_row(1)
    m = corner_square_size(Y, bottom)
    if m < n:
        dec = decomposition_at(T, bottom)
        a_img, a_moves = _psi(dec.a_part)
        b_img, b_moves = _psi(dec.b_part)
        a_rows, b_rows = dec.rows(n)
        dots = _lift(a_img.dots, dec.a_cols, a_rows) + _lift(b_img.dots, dec.b_cols, b_rows)
        script = _lift_moves(a_moves, dec.a_cols, a_rows) + _lift_moves(b_moves, dec.b_cols, b_rows)
        return Transversal.from_dots(Y, dots), script
    # bottom dot sits in the corner and no diagonal cut exists
    assert bottom == 1
    inner = T.restrict(range(2, n + 1), range(2, n + 1))
    inner_img, inner_moves = _psi(inner)
    shift = list(range(2, n + 1))
    dots = _lift(inner_img.dots, shift, shift)
    script = _lift_moves(inner_moves, shift, shift)
    final, eta_moves = _eta(Y, [(1, 1)] + dots)
    return final, script + eta_moves


def _eta(Y: YoungDiagram, dots: list[Cell]) -> tuple[Transversal, list[Move]]:
    """Walk the corner dot rightwards past each secondary dot of the bottom
    rectangle, one 123 -> 213 move at a time."""
    width = Y.row_length(1)
    rect = [d for d in dots if d[0] <= width and d != (1, 1)]
    primary, secondary = _rectangle_split(rect)
    if len(primary) + len(secondary) != len(rect):
        raise AssertionError("the bottom rectangle above the corner contains 123")
    current = (1, 1)
    placed = {d: d for d in dots if d != current}
    script = []
    for beta in secondary:
        witness = next(a for a in primary if a[0] > beta[0] and a[1] > beta[1])
        script.append(Move("123->213", (current, beta, witness)))
        placed[beta] = (current[0], beta[1])
        current = (beta[0], 1)
    return Transversal.from_dots(Y, list(placed.values()) + [current]), script


def eta(T: Transversal) -> Transversal:
    """The final step for a transversal with a dot in the bottom-left corner
    whose remaining dots avoid 123."""
    if T.word[0] != 1:
        raise ValueError("the bottom-left corner must carry a dot")
    inner = T.restrict(range(2, T.size + 1), range(2, T.size + 1))
    if not avoids(inner, P123):
        raise ValueError("dots off the corner must avoid 123")
    return _eta(T.diagram, list(T.dots))[0]


def psi(T: Transversal) -> Transversal:
    return psi_with_moves(T)[0]


def psi_with_moves(T: Transversal) -> tuple[Transversal, list[Move]]:
    """psi(T) together with the 123 -> 213 moves that carry T to it, in order."""
    if not avoids(T, P213):
        raise ValueError(f"{T} contains 213 on {T.diagram}")
    return _psi(T)


def _psi_inverse(T2: Transversal) -> Transversal | None:
    n = T2.size
    if n == 1:
        return T2
    Y = T2.diagram
    dec = decompose_213(T2)
    if dec is not None:
        a = _psi_inverse(dec.a_part)
        b = _psi_inverse(dec.b_part)
        if a is None or b is None:
            return None
        a_rows, b_rows = dec.rows(n)
        dots = _lift(a.dots, dec.a_cols, a_rows) + _lift(b.dots, dec.b_cols, b_rows)
        return Transversal.from_dots(Y, dots)
    width = Y.row_length(1)
    rect = [d for d in T2.dots if d[0] <= width]
    primary, secondary = _rectangle_split(rect)
    bottom = (T2.column_of_row(1), 1)
    if bottom in secondary:
        if secondary[-1] != bottom:
            return None
        moved = {}
        for s, t in zip(secondary, secondary[1:]):
            moved[s] = (t[0], s[1])
        start = (secondary[0][0], 1)
        dots = [moved.get(d, d) for d in T2.dots if d != bottom] + [start]
    else:
        dots = list(T2.dots)
        start = bottom
    if start != (1, 1):
        return None
    T1 = Transversal.from_dots(Y, dots)
    inner = _psi_inverse(T1.restrict(range(2, n + 1), range(2, n + 1)))
    if inner is None:
        return None
    shift = list(range(2, n + 1))
    return Transversal.from_dots(Y, [(1, 1)] + _lift(inner.dots, shift, shift))


def psi_inverse(T2: Transversal) -> Transversal | None:
    """The 213-avoider mapped to T2 by psi, or None when T2 is not an image."""
    if not avoids(T2, P123):
        raise ValueError(f"{T2} contains 123 on {T2.diagram}")
    cand = _psi_inverse(T2)
    if cand is None or not avoids(cand, P213) or psi(cand) != T2:
        return None
    return cand


def replay_psi(T: Transversal) -> bool:
    """Replaying the recorded script on T, move by move, lands on psi(T)."""
    image, script = psi_with_moves(T)
    return replay(T, script) == image


# -- strictness witnesses ---------------------------------------------------------

def strictness_witness_213(Y: YoungDiagram) -> Transversal:
    """A 123-avoider of Y outside the image of psi.

    Needs a critical point of index >= 2 and none of index 0 or 1.
    """
    n = Y.num_rows
    indices = [cp.index for cp in Y.critical_points]
    if n < 4 or not indices or max(indices) < 2 or min(indices) < 2:
        raise ValueError(f"{Y} needs a critical point of index >= 2 and none below 2")
    fixed = [(1, n - 1), (2, 1), (n, n)]
    cols = list(range(3, n))
    rows = list(range(2, n - 1))
    inner_diagram = Y.submatrix(cols, rows)
    fillers = enumerate_avoiders(inner_diagram, (1, 2)) if cols else []
    if cols and len(fillers) != 1:
        raise AssertionError(f"expected one 12-avoider of {inner_diagram}, found {len(fillers)}")
    dots = fixed + (_lift(fillers[0].dots, cols, rows) if cols else [])
    return Transversal.from_dots(Y, dots)


def yn_witness_words(m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two 312-avoiders of the corner-deleted m-square with equal phi-images."""
    if m < 5:
        raise ValueError("needs m >= 5")
    head = tuple(range(3, m - 1))
    return head + (1, m, m - 1, 2), head + (2, m, 1, m - 1)


def strictness_witness_312(Y: YoungDiagram) -> tuple[Transversal, Transversal]:
    """Two 312-avoiders sharing their left-to-right maxima (hence their phi-image),
    built around the lowest critical point of index >= 3."""
    point = next((cp for cp in Y.critical_points if cp.index >= 3), None)
    if point is None:
        raise ValueError(f"{Y} has no critical point of index >= 3")
    (px, py), i = point
    m = i + 2
    box = list(range(py, px + 2))
    diagonal = [(j, j) for j in range(1, Y.num_rows + 1) if j < py or j > px + 1]
    out = []
    for word in yn_witness_words(m):
        dots = diagonal + [(box[a], box[v - 1]) for a, v in enumerate(word)]
        T = Transversal.from_dots(Y, dots)
        if not avoids(T, P312):
            raise AssertionError(f"witness {T} contains 312")
        out.append(T)
    return out[0], out[1]


# -- audit ------------------------------------------------------------------------

def bijection_audit(Y: YoungDiagram, which: str) -> list[dict]:
    """One record per domain element: the element, its image, the move script
    (psi only) and a fiber id shared by elements with the same image."""
    which = which.lower()
    if which == "phi":
        domain = enumerate_avoiders(Y, P312)
        pairs = [(T, phi(T), []) for T in domain]
    elif which == "psi":
        domain = enumerate_avoiders(Y, P213)
        pairs = [(T, *psi_with_moves(T)) for T in domain]
    else:
        raise ValueError("audit covers 'phi' or 'psi'")
    fiber_ids: dict[tuple[int, ...], int] = {}
    for _, image, _ in pairs:
        fiber_ids.setdefault(image.word, len(fiber_ids))
    return [
        {
            "diagram": list(Y.rows),
            "domain": list(T.word),
            "image": list(image.word),
            "moves": [m.as_dict() for m in script],
            "fiber": fiber_ids[image.word],
        }
        for T, image, script in pairs
    ]
