"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import time
from itertools import permutations

import pytest

import oracle
from shapewilf import suites
from shapewilf.coloring import construct_saturating_pair, count_saturating, difference_audit, saturates, splitting_formula_count
from shapewilf.diagram import YoungDiagram, all_proper_diagrams, corner_deleted, square, staircase
from shapewilf.formulas import GOLDEN_RATIO_SQUARED, closed_form_St3, closed_form_Yn, st3_123_by_recursion, sw_limit_estimate
from shapewilf.splitting import recursive_count
from shapewilf.transversal import LEFT_DOWN, LEFT_UP, block_pattern, clear_caches, count_avoiders, count_avoiders_constrained

S3 = [tuple(p) for p in permutations((1, 2, 3))]
_shared = {}


@pytest.fixture
def verdict(capsys):
    def record(number, text, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        if detail:
            line += f" ({detail})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return record


def _class_rows():
    if "rows" not in _shared:
        _shared["rows"] = suites.class_counts(8, jobs=suites.default_jobs())
        clear_caches()
    return _shared["rows"]


def test_criterion_01_distinguishing_diagram(verdict):
    clear_caches()
    start = time.perf_counter()
    Y = YoungDiagram((5, 5, 5, 5, 4))
    got = [count_avoiders(Y, p) for p in ((2, 1, 3), (1, 2, 3), (3, 1, 2))]
    elapsed = time.perf_counter() - start
    verdict(1, "counts 37/41/42 on Y(5,5,5,5,4) in under 1 s", got == [37, 41, 42] and elapsed < 1,
            f"got {got} in {elapsed:.3f}s")


def test_criterion_02_length_four_squares(verdict):
    clear_caches()
    start = time.perf_counter()
    pats = ((3, 2, 4, 1), (2, 3, 4, 1), (4, 2, 3, 1))
    got = {n: [count_avoiders(square(n), p) for p in pats] for n in (6, 7)}
    elapsed = time.perf_counter() - start
    ok = got == {6: [512, 513, 513], 7: [2740, 2761, 2762]} and elapsed < 60
    verdict(2, "length-four square counts for n = 6, 7 in under 1 min", ok, f"{got} in {elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_03_ordering_sweep(verdict):
    start = time.perf_counter()
    report = suites.ordering_sweep(8, rows=_class_rows())
    elapsed = time.perf_counter() - start
    verdict(3, "213 <= 123 <= 312 on every proper diagram of size <= 8",
            report.passed and report.checked == sum(len(oracle.proper_diagrams(n)) for n in range(1, 9)),
            f"{report.checked} diagrams, {len(report.failures)} violations, {elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_04_strictness_sweep(verdict):
    report = suites.strictness_sweep(8, rows=_class_rows())
    verdict(4, "strict inequalities exactly at critical indices >= 2 and >= 3, size <= 8",
            report.passed, f"{report.checked} checks, {len(report.failures)} misclassified")


def test_criterion_05_splitting_formula(verdict):
    M7 = square(7)
    formula = {a: splitting_formula_count(M7, a, (1,)) for a in ((2, 1, 3), (1, 2, 3), (3, 1, 2))}
    direct = {a: count_avoiders(M7, block_pattern(a, (1,))) for a in formula}
    rows = difference_audit(M7, (2, 1, 3), (1, 2, 3), (1,))
    table = {W: (a, b, s) for W, a, b, s in rows}
    expected = {
        corner_deleted(5): (37, 41, 1),
        YoungDiagram((5, 5, 5, 4, 4)): (33, 37, 1),
        YoungDiagram((5, 5, 5, 5, 3)): (33, 37, 1),
        corner_deleted(4): (12, 13, 9),
    }
    total = sum((b - a) * s for a, b, s in table.values())
    ok = formula == direct and table == expected and total == 21 == direct[(1, 2, 3)] - direct[(2, 1, 3)]
    verdict(5, "splitting formula on M_7 and the difference table summing to 21", ok,
            f"formula {sorted(formula.values())}, difference {total}")


def test_criterion_06_closed_forms(verdict):
    bad = []
    for sigma in S3:
        for n in range(2, 10):
            if closed_form_Yn(sigma, n) != count_avoiders(corner_deleted(n), sigma):
                bad.append(("yn", sigma, n))
        for n in range(1, 10):
            if n == 1 and sigma in ((2, 1, 3), (1, 3, 2)):
                continue
            if closed_form_St3(sigma, n) != count_avoiders(staircase(3, n), sigma):
                bad.append(("st3", sigma, n))
    clear_caches()
    verdict(6, "closed forms equal enumeration for n <= 9 and every pattern of length three", not bad, f"mismatches {bad}")


@pytest.mark.slow
def test_criterion_07_recursions(verdict):
    bad, eligible, only_two = [], 0, 0
    for Y in all_proper_diagrams(8):
        if Y.max_critical_index > 2:
            continue
        eligible += 1
        for sigma in ((3, 1, 2), (3, 2, 1)):
            if recursive_count(Y, sigma) != count_avoiders(Y, sigma):
                bad.append((str(Y), sigma))
        if Y.num_rows >= 2 and all(cp.index == 2 for cp in Y.critical_points):
            only_two += 1
            for c in (LEFT_DOWN, LEFT_UP):
                if count_avoiders_constrained(Y, (3, 1, 2), c) != count_avoiders_constrained(Y, (3, 2, 1), c):
                    bad.append((str(Y), str(c)))
            if count_avoiders(Y, (3, 1, 2)) != count_avoiders(Y, (3, 2, 1)):
                bad.append((str(Y), "totals"))
    clear_caches()
    verdict(7, "recursions match enumeration and the three 312/321 identities hold, size <= 8", not bad,
            f"{eligible} eligible diagrams, {only_two} with only index-two points, mismatches {bad[:5]}")


@pytest.mark.slow
def test_criterion_08_bijections(verdict):
    from shapewilf.bijections import phi_fibers

    phi_report = suites.phi_suite(7, jobs=suites.default_jobs())
    psi_report = suites.psi_suite(6, jobs=suites.default_jobs())
    fibers = phi_fibers(corner_deleted(5))
    big = [img for img, pre in fibers.items() if len(pre) > 1]
    ok = phi_report.passed and psi_report.passed and big == [(3, 1, 5, 2, 4)] and len(fibers[big[0]]) == 2
    clear_caches()
    verdict(8, "phi onto with the expected fibers to size 7, psi injective and replayable to size 6", ok,
            f"phi {phi_report.checked} diagrams, psi {psi_report.checked} diagrams, "
            f"failures {len(phi_report.failures) + len(psi_report.failures)}")


def test_criterion_09_saturation(verdict):
    bad = []
    for k in range(1, 4):
        for tau in permutations(range(1, k + 1)):
            for n in range(2 * k + 2, 13):
                dots = construct_saturating_pair(n, tau)
                if not saturates(dots, corner_deleted(n - 2 * k), square(n), tau):
                    bad.append((tau, n))
    M7 = square(7)
    counts = [count_saturating(M7, W, (1,)) for W in (
        corner_deleted(5), YoungDiagram((5, 5, 5, 4, 4)), YoungDiagram((5, 5, 5, 5, 3)), corner_deleted(4))]
    verdict(9, "saturating pairs for k <= 3, n <= 12 and the 1/1/1/9 multiplicities in M_7",
            not bad and counts == [1, 1, 1, 9], f"failures {bad}, multiplicities {counts}")


def test_criterion_10_fibonacci_and_limit(verdict):
    fib = oracle.fibonacci_by_recurrence
    enum_ok = all(count_avoiders(staircase(3, n), (1, 2, 3)) == fib(2 * n - 1) for n in range(1, 10))
    rec_ok = all(st3_123_by_recursion(n) == fib(2 * n - 1) for n in range(1, 41))
    ratio = sw_limit_estimate("st3", (3, 2, 1), 20).ratios()[-1]
    clear_caches()
    verdict(10, "staircase 123 counts are odd Fibonacci numbers and the ratio reaches the golden square by n = 20",
            enum_ok and rec_ok and abs(ratio - GOLDEN_RATIO_SQUARED) < 1e-6, f"ratio {ratio:.10f}")


@pytest.mark.slow
def test_criterion_11_structural_properties(verdict):
    report = suites.properties(6, jobs=suites.default_jobs())
    clear_caches()
    zero = [r["property"] for r in report.rows if r["checked"] == 0]
    verdict(11, "structural invariants hold exhaustively at size <= 6", report.passed and not zero,
            f"{report.checked} checks, {len(report.failures)} failures, unexercised {zero}")
