"""Exhaustive verification sweeps shared by the command line and the tests.

Every suite returns a ``Report``; rows are ordered by diagram so JSON output
is byte-identical whatever the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable

from .bijections import (
    MOVE_KINDS,
    P123,
    P213,
    P312,
    P321,
    apply_move,
    build_dominance_graph,
    corner_square_size,
    move_endpoints,
    phi,
    phi_fibers,
    psi_inverse,
    psi_with_moves,
    replay,
)
from .coloring import block_count, splitting_formula_count
from .diagram import YoungDiagram, all_proper_diagrams
from .splitting import recursive_count, unzeta, verify_splitting_law, zeta
from .transversal import (
    LEFT_DOWN,
    Transversal,
    avoids,
    count_avoiders,
    count_avoiders_constrained,
    dots_contain,
    enumerate_avoiders,
    enumerate_transversals,
    first_subsequence,
    occurrences,
    pattern_text,
    second_subsequence,
)

S3 = tuple(permutations((1, 2, 3)))


@dataclass
class Report:
    suite: str
    params: dict
    checked: int = 0
    rows: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "params": self.params,
                "passed": self.passed,
                "checked": self.checked,
                "failures": self.failures,
                "notes": self.notes,
                "rows": self.rows,
            },
            indent=2,
            sort_keys=True,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            keys = sorted({k for r in self.rows for k in r})
            writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: _flat(v) for k, v in row.items()})
        return buf.getvalue()

    def to_text(self) -> str:
        head = f"{self.suite}: {'PASS' if self.passed else 'FAIL'} ({self.checked} checks)"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        for f in self.failures:
            lines.append("  failure: " + ", ".join(f"{k}={_flat(v)}" for k, v in sorted(f.items())))
        return "\n".join(lines)


def _flat(value) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SHAPEWILF_JOBS", "1")))
    except ValueError:
        return 1


def _sweep(worker: Callable, diagrams: Iterable[YoungDiagram], jobs: int) -> list:
    items = [Y.rows for Y in diagrams]
    if jobs <= 1 or len(items) < 2:
        return [worker(rows) for rows in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, items, chunksize=max(1, len(items) // (4 * jobs))))


def _name(rows) -> str:
    return str(YoungDiagram(tuple(rows)))


# -- ordering of the three classes ----------------------------------------------------

def _class_counts(rows) -> dict:
    Y = YoungDiagram(rows)
    return {
        "diagram": _name(rows),
        "size": Y.num_rows,
        "213": count_avoiders(Y, P213),
        "123": count_avoiders(Y, P123),
        "312": count_avoiders(Y, P312),
        "max_critical_index": Y.max_critical_index,
        "source": "enumeration",
    }


def class_counts(max_size: int, min_size: int = 1, jobs: int = 1) -> list[dict]:
    return _sweep(_class_counts, all_proper_diagrams(max_size, min_size), jobs)


def ordering_sweep(max_size: int, min_size: int = 1, jobs: int = 1, rows: list[dict] | None = None) -> Report:
    """count(213) <= count(123) <= count(312) on every proper diagram."""
    report = Report("main-theorem", {"max_size": max_size, "min_size": min_size})
    report.rows = rows if rows is not None else class_counts(max_size, min_size, jobs)
    for r in report.rows:
        report.checked += 1
        if not r["213"] <= r["123"] <= r["312"]:
            report.failures.append({
                "diagram": r["diagram"], "pattern": "213<=123<=312",
                "lhs": [r["213"], r["123"]], "rhs": [r["123"], r["312"]],
            })
    return report


def strictness_sweep(max_size: int, min_size: int = 1, jobs: int = 1, rows: list[dict] | None = None) -> Report:
    """Strict inequalities exactly at critical indices >= 2 and >= 3."""
    report = Report("theorem2", {"max_size": max_size, "min_size": min_size})
    report.rows = rows if rows is not None else class_counts(max_size, min_size, jobs)
    for r in report.rows:
        i = r["max_critical_index"]
        for name, strict, expected in (
            ("213<123", r["213"] < r["123"], i >= 2),
            ("123<312", r["123"] < r["312"], i >= 3),
        ):
            report.checked += 1
            if strict != expected:
                report.failures.append({
                    "diagram": r["diagram"], "pattern": name, "max_critical_index": i,
                    "lhs": r["213"] if name == "213<123" else r["123"],
                    "rhs": r["123"] if name == "213<123" else r["312"],
                })
    return report


# -- bijections -------------------------------------------------------------------------

def _phi_cell(rows) -> dict:
    Y = YoungDiagram(rows)
    fibers = phi_fibers(Y)
    n321 = count_avoiders(Y, P321)
    n312 = count_avoiders(Y, P312)
    sizes = sorted(len(v) for v in fibers.values())
    problems = []
    for image, pre in fibers.items():
        for word in pre:
            T = Transversal(Y, word)
            Q = phi(T)
            if not avoids(Q, P321) or first_subsequence(Q) != first_subsequence(T):
                problems.append({"domain": list(word), "image": list(image)})
    only_small = Y.max_critical_index <= 2
    return {
        "diagram": _name(rows),
        "312": n312,
        "321": n321,
        "images": len(fibers),
        "largest_fiber": sizes[-1] if sizes else 0,
        "fibers_above_one": sum(1 for s in sizes if s > 1),
        "surjective": len(fibers) == n321 and sum(sizes) == n312,
        "injective_expected": only_small,
        "problems": problems,
    }


def phi_suite(max_size: int, jobs: int = 1) -> Report:
    report = Report("phi", {"max_size": max_size})
    for r in _sweep(_phi_cell, all_proper_diagrams(max_size), jobs):
        report.rows.append({**{k: v for k, v in r.items() if k != "problems"}, "source": "enumeration"})
        report.checked += 1
        if not r["surjective"]:
            report.failures.append({"diagram": r["diagram"], "pattern": "phi onto 321",
                                    "lhs": r["images"], "rhs": r["321"]})
        if r["injective_expected"] and r["largest_fiber"] > 1:
            report.failures.append({"diagram": r["diagram"], "pattern": "phi injective",
                                    "lhs": r["largest_fiber"], "rhs": 1})
        for p in r["problems"]:
            report.failures.append({"diagram": r["diagram"], "pattern": "phi image", **p})
    return report


def _psi_cell(rows) -> dict:
    Y = YoungDiagram(rows)
    domain = enumerate_avoiders(Y, P213)
    images = set()
    problems = []
    for T in domain:
        image, script = psi_with_moves(T)
        images.add(image.word)
        if not avoids(image, P123):
            problems.append({"domain": list(T.word), "image": list(image.word), "issue": "contains 123"})
        if replay(T, script) != image:
            problems.append({"domain": list(T.word), "image": list(image.word), "issue": "replay"})
        if psi_inverse(image) != T:
            problems.append({"domain": list(T.word), "image": list(image.word), "issue": "inverse"})
    codomain = enumerate_avoiders(Y, P123)
    preimages = sum(1 for T2 in codomain if psi_inverse(T2) is not None)
    return {
        "diagram": _name(rows),
        "213": len(domain),
        "123": len(codomain),
        "images": len(images),
        "inverted": preimages,
        "problems": problems,
    }


def psi_suite(max_size: int, jobs: int = 1) -> Report:
    report = Report("psi", {"max_size": max_size})
    for r in _sweep(_psi_cell, all_proper_diagrams(max_size), jobs):
        report.rows.append({**{k: v for k, v in r.items() if k != "problems"}, "source": "enumeration"})
        report.checked += 1
        if r["images"] != r["213"]:
            report.failures.append({"diagram": r["diagram"], "pattern": "psi injective",
                                    "lhs": r["images"], "rhs": r["213"]})
        if r["inverted"] != r["213"]:
            report.failures.append({"diagram": r["diagram"], "pattern": "psi image size",
                                    "lhs": r["inverted"], "rhs": r["213"]})
        for p in r["problems"]:
            report.failures.append({"diagram": r["diagram"], "pattern": "psi", **p})
    return report


def bijections(max_size: int, jobs: int = 1, phi_max_size: int | None = None) -> Report:
    phi_report = phi_suite(phi_max_size or max_size, jobs)
    psi_report = psi_suite(max_size, jobs)
    report = Report("bijections", {"max_size": max_size, "phi_max_size": phi_max_size or max_size})
    for sub in (phi_report, psi_report):
        report.checked += sub.checked
        report.failures += sub.failures
        report.rows += [{"map": sub.suite, **r} for r in sub.rows]
    return report


# -- splitting ----------------------------------------------------------------------------

FORMULA_MAX_SIZE = 6


def _splitting_cell(rows) -> dict:
    Y = YoungDiagram(rows)
    out = {"diagram": _name(rows), "checks": 0, "problems": []}
    problems = out["problems"]
    transversals = enumerate_transversals(Y) if Y.critical_points else []
    for cp in Y.critical_points:
        for T in transversals:
            out["checks"] += 1
            try:
                split = zeta(T, cp.point)
                back = unzeta(Y, cp.point, split.left, split.right, split.alpha_pattern)
            except (AssertionError, ValueError) as exc:
                problems.append({"point": list(cp.point), "domain": list(T.word), "issue": str(exc)})
                continue
            if back != T:
                problems.append({"point": list(cp.point), "domain": list(T.word), "issue": "round trip"})
        for sigma in S3:
            out["checks"] += 1
            law = verify_splitting_law(Y, cp.point, sigma)
            if not law.passed:
                problems.append({"point": list(cp.point), "pattern": pattern_text(sigma),
                                 "lhs": law.lhs, "rhs": law.rhs})
    if Y.max_critical_index <= 2:
        for sigma in (P312, P321):
            for left_down in (False, True):
                out["checks"] += 1
                rec = recursive_count(Y, sigma, left_down)
                if left_down:
                    direct = count_avoiders_constrained(Y, sigma, LEFT_DOWN) if Y.num_cols >= 2 else 0
                else:
                    direct = count_avoiders(Y, sigma)
                if rec != direct:
                    problems.append({"pattern": pattern_text(sigma), "left_down": left_down,
                                     "lhs": rec, "rhs": direct, "issue": "recursion"})
    if Y.num_rows <= FORMULA_MAX_SIZE:
        for alpha in S3:
            out["checks"] += 1
            formula = splitting_formula_count(Y, alpha, (1,))
            direct = block_count(Y, alpha, (1,))
            if formula != direct:
                problems.append({"pattern": pattern_text(alpha) + "|1", "lhs": formula,
                                 "rhs": direct, "issue": "splitting formula"})
    return out


def splitting(max_size: int, jobs: int = 1) -> Report:
    report = Report("splitting", {"max_size": max_size, "formula_max_size": FORMULA_MAX_SIZE})
    for r in _sweep(_splitting_cell, all_proper_diagrams(max_size), jobs):
        report.checked += r["checks"]
        report.rows.append({"diagram": r["diagram"], "checks": r["checks"], "failures": len(r["problems"]),
                            "source": "enumeration"})
        for p in r["problems"]:
            report.failures.append({"diagram": r["diagram"], **p})
    return report


# -- structural properties ------------------------------------------------------------------

def _respected_cuts(T) -> set[int]:
    n = T.size
    cuts = set()
    for x in range(1, T.diagram.row_length(1) + 1):
        m = corner_square_size(T.diagram, x)
        if m < n and all(x <= T.column_of_row(y) < x + m for y in range(1, m + 1)):
            cuts.add(x)
    return cuts


def _properties_cell(rows) -> dict:
    Y = YoungDiagram(rows)
    n = Y.num_rows
    tally = {key: 0 for key in PROPERTY_NAMES}
    problems = []

    def fail(prop, T, **extra):
        problems.append({"property": prop, "domain": list(T.word), **extra})

    for T in enumerate_transversals(Y):
        first = first_subsequence(T)
        tally["diagonal-cells"] += 1
        if any(y < x for x, y in first) or not all(
            any(x <= j and y >= j for x, y in first) for j in range(1, n + 1)
        ):
            fail("diagonal-cells", T)
        for cp in Y.critical_points:
            tally["rectangle-fill"] += 1
            px, py = cp.point
            if sum(1 for x, y in T.dots if x <= px and y > py) != cp.index:
                fail("rectangle-fill", T, point=list(cp.point))
        cuts = _respected_cuts(T)
        for kind, (source, _, _) in MOVE_KINDS.items():
            for occ in occurrences(Y, T.dots, source):
                moved = apply_move(T, kind, occ)
                tally["move-monotonicity"] += 1
                delta = moved.inversions() - T.inversions()
                if (delta < 0) != (kind in ("213->123", "321->312")) or delta == 0:
                    fail("move-monotonicity", T, move=kind)
                if kind in ("213->123", "123->213"):
                    tally["decomposition-preservation"] += 1
                    if _respected_cuts(moved) != cuts:
                        fail("decomposition-preservation", T, move=kind)

    by_first = {}
    for T in enumerate_avoiders(Y, P321):
        tally["first-second-split"] += 1
        if set(first_subsequence(T)) | set(second_subsequence(T)) != set(T.dots):
            fail("first-second-split", T)
        key = tuple(first_subsequence(T))
        tally["unique-by-maxima"] += 1
        if key in by_first:
            fail("unique-by-maxima", T, other=list(by_first[key]))
        by_first[key] = T.word

    for T in enumerate_avoiders(Y, P312):
        g = build_dominance_graph(T)
        tally["dominance-trees"] += 1
        ok = (
            g.trees_are_trees()
            and g.components_consecutive()
            and g.components_increasing()
            and g.vertices == set(T.dots) - set(g.first)
            and not any(dots_contain(Y, sorted(v), (1, 2)) for v, _ in g.trees.values())
        )
        if not ok:
            fail("dominance-trees", T)
        tally["phi-image"] += 1
        image = phi(T)
        if not avoids(image, P321) or first_subsequence(image) != g.first:
            fail("phi-image", T, image=list(image.word))

    confluence = []
    for T in enumerate_transversals(Y):
        tally["move-confluence"] += 1
        ends = move_endpoints(T, "213->123")
        if len(ends) != 1:
            confluence.append({"domain": list(T.word), "endpoints": sorted(list(e) for e in ends)})
    return {"diagram": _name(rows), "tally": tally, "problems": problems, "confluence": confluence}


PROPERTY_NAMES = (
    "diagonal-cells",
    "rectangle-fill",
    "move-monotonicity",
    "decomposition-preservation",
    "first-second-split",
    "unique-by-maxima",
    "dominance-trees",
    "phi-image",
    "move-confluence",
)


def properties(max_size: int, jobs: int = 1) -> Report:
    """Structural invariants over every transversal of every proper diagram.

    Non-confluent move sequences are reported as notes, not failures: the
    uniqueness of the endpoint is an open question being probed, not a fact.
    """
    report = Report("properties", {"max_size": max_size})
    totals = {key: 0 for key in PROPERTY_NAMES}
    counterexamples = 0
    for r in _sweep(_properties_cell, all_proper_diagrams(max_size), jobs):
        for key, value in r["tally"].items():
            totals[key] += value
        for p in r["problems"]:
            report.failures.append({"diagram": r["diagram"], **p})
        counterexamples += len(r["confluence"])
        for c in r["confluence"][:3]:
            report.notes.append(f"non-confluent: {r['diagram']} {c}")
    report.checked = sum(totals.values())
    report.rows = [{"property": key, "checked": totals[key], "source": "enumeration"} for key in PROPERTY_NAMES]
    report.notes.insert(0, f"move-confluence counterexamples: {counterexamples}")
    return report


SUITES = {
    "main-theorem": ordering_sweep,
    "theorem2": strictness_sweep,
    "bijections": bijections,
    "splitting": splitting,
    "properties": properties,
}
