from itertools import permutations

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import PROPER, patterns, proper_diagrams, transversals
from shapewilf.diagram import EMPTY, YoungDiagram, corner_deleted, enumerate_proper_diagrams, square, staircase
from shapewilf.transversal import (
    LEFT_DOWN,
    LEFT_UP,
    TOP_DOWN,
    TOP_UP,
    Constraint,
    Transversal,
    block_pattern,
    contains_pattern,
    count_avoiders,
    count_avoiders_constrained,
    count_transversals,
    enumerate_avoiders,
    enumerate_transversals,
    first_subsequence,
    is_partial_transversal,
    parse_pattern,
    parse_pattern_set,
    parse_transversal,
    primary_subsequence,
    second_subsequence,
    secondary_subsequence,
    standardize,
)

S3 = [tuple(p) for p in permutations((1, 2, 3))]
S2 = [(1, 2), (2, 1)]
DISTINGUISHING = YoungDiagram((5, 5, 5, 5, 4))


# -- patterns -----------------------------------------------------------------------

def test_block_patterns():
    assert block_pattern((2, 1, 3), (1,)) == (3, 2, 4, 1)
    assert block_pattern((1,), (1, 3, 2)) == (4, 1, 3, 2)
    assert block_pattern((2, 1), ()) == (2, 1)


def test_pattern_parsing():
    assert parse_pattern("213") == parse_pattern("2 1 3") == parse_pattern("2,1,3") == (2, 1, 3)
    assert parse_pattern("213|1") == (3, 2, 4, 1)
    assert parse_pattern_set("312,321") == [(3, 1, 2), (3, 2, 1)]
    with pytest.raises(ValueError):
        parse_pattern("113")


@given(st.lists(st.integers(-50, 50), unique=True, max_size=8))
def test_standardize_matches_oracle(values):
    assert standardize(values) == oracle.standard(values)


# -- transversal objects ------------------------------------------------------------------

def test_transversal_validation():
    Y = YoungDiagram((5, 5, 4, 4, 3))
    T = parse_transversal(Y, "51324")
    assert T.word == (5, 1, 3, 2, 4) and str(T) == "(51324)"
    with pytest.raises(ValueError):
        Transversal(Y, (5, 4, 3, 2, 1))
    with pytest.raises(ValueError):
        Transversal(Y, (1, 1, 3, 2, 4))
    with pytest.raises(ValueError):
        Transversal(square(3), (1, 2))


def test_placement_is_the_row_view():
    T = Transversal(YoungDiagram((5, 5, 4, 4, 3)), (5, 1, 3, 2, 4))
    assert T.placement == (2, 4, 3, 5, 1)
    assert [T.column_of_row(y) for y in range(1, 6)] == [2, 4, 3, 5, 1]


def test_restrict_and_partial_transversals():
    T = Transversal(square(4), (2, 4, 1, 3))
    assert T.restrict([1, 3], [1, 2]).word == (2, 1)
    with pytest.raises(ValueError):
        T.restrict([1, 2], [1, 2])
    assert is_partial_transversal(square(3), [(1, 2), (3, 1)])
    assert not is_partial_transversal(square(3), [(1, 2), (3, 2)])


@pytest.mark.parametrize("n", range(1, 7))
def test_transversal_count_matches_brute_force(n):
    for rows in PROPER[n]:
        Y = YoungDiagram(rows)
        words = [T.word for T in enumerate_transversals(Y)]
        assert words == sorted(oracle.transversals(rows))
        assert count_transversals(Y) == len(words)


# -- containment ------------------------------------------------------------------------

def test_containment_examples():
    T = Transversal(YoungDiagram((5, 5, 4, 4, 3)), (5, 1, 3, 2, 4))
    assert contains_pattern(T, (3, 1, 2))
    assert contains_pattern(T, (3, 2, 1))
    assert not contains_pattern(T, (2, 1, 3))


@given(transversals(), patterns(1, 4))
def test_containment_matches_oracle(T, tau):
    assert contains_pattern(T, tau) == oracle.contains(T.diagram.rows, T.word, tau)


@given(transversals())
def test_single_dot_always_lands(T):
    assert contains_pattern(T, (1,))


# -- counting -------------------------------------------------------------------------

def test_distinguishing_diagram_counts():
    assert count_avoiders(DISTINGUISHING, (2, 1, 3)) == 37
    assert count_avoiders(DISTINGUISHING, (1, 2, 3)) == 41
    assert count_avoiders(DISTINGUISHING, (3, 1, 2)) == 42


def test_two_pattern_avoiders_of_the_distinguishing_diagram():
    both = enumerate_avoiders(DISTINGUISHING, [(3, 1, 2), (3, 2, 1)])
    assert len(both) == count_avoiders(DISTINGUISHING, [(3, 1, 2), (3, 2, 1)]) == 21


def test_square_counts_of_length_four_patterns():
    assert count_avoiders(square(6), (3, 2, 4, 1)) == 512
    assert count_avoiders(square(6), (2, 3, 4, 1)) == 513


def test_corner_deleted_four_counts():
    Y4 = corner_deleted(4)
    assert count_avoiders(Y4, (2, 1, 3)) == 12
    assert count_avoiders(Y4, (1, 2, 3)) == 13
    assert count_avoiders(Y4, (3, 1, 2)) == 13


def test_trivial_counts():
    assert count_avoiders(square(1), (2, 1)) == 1
    assert len(enumerate_avoiders(square(3), (1, 2, 3))) == 5


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_naive_filter(n):
    for rows in PROPER[n]:
        Y = YoungDiagram(rows)
        for tau in S2 + S3:
            assert count_avoiders(Y, tau) == oracle.count(rows, [tau]), (rows, tau)


@pytest.mark.parametrize("n", range(1, 6))
def test_length_four_and_pairs_match_naive_filter(n):
    for rows in PROPER[n]:
        Y = YoungDiagram(rows)
        for pats in ([(3, 2, 4, 1)], [(2, 3, 4, 1)], [(3, 1, 2), (3, 2, 1)], [(2, 1, 3), (1, 2)]):
            assert count_avoiders(Y, pats) == oracle.count(rows, pats)


@given(proper_diagrams(), patterns(2, 3))
def test_enumeration_is_sorted_and_consistent(Y, tau):
    found = enumerate_avoiders(Y, tau)
    assert [T.word for T in found] == sorted(oracle.avoiders(Y.rows, [tau]))
    assert len(found) == count_avoiders(Y, tau)


@pytest.mark.parametrize("n", range(1, 11))
def test_square_counts_are_catalan(n):
    expected = oracle.catalan_by_recurrence(n)
    for tau in S3:
        assert count_avoiders(square(n), tau) == expected


@pytest.mark.parametrize("n", range(1, 8))
def test_shape_wilf_classes_of_length_three(n):
    for Y in enumerate_proper_diagrams(n):
        c = {tau: count_avoiders(Y, tau) for tau in S3}
        assert c[(2, 1, 3)] == c[(1, 3, 2)]
        assert c[(1, 2, 3)] == c[(2, 3, 1)] == c[(3, 2, 1)]


# -- constrained counts ----------------------------------------------------------------

def _constraint_oracle(rows, tau, constraint):
    n = len(rows)
    out = 0
    for w in oracle.avoiders(rows, [tau]):
        if constraint.top is not None:
            k = len(constraint.top)
            cols = sorted(w.index(y) for y in range(n - k + 1, n + 1))
            if oracle.standard([w[c] for c in cols]) != constraint.top:
                continue
        if constraint.left is not None:
            if oracle.standard(w[: len(constraint.left)]) != constraint.left:
                continue
        out += 1
    return out


@pytest.mark.parametrize("constraint", [TOP_UP, TOP_DOWN, LEFT_UP, LEFT_DOWN, Constraint(top=(2, 1), left=(1, 2))])
def test_constrained_counts_match_filter(constraint):
    for n in range(2, 6):
        for rows in PROPER[n]:
            Y = YoungDiagram(rows)
            for tau in S3:
                assert count_avoiders_constrained(Y, tau, constraint) == _constraint_oracle(rows, tau, constraint)


@pytest.mark.parametrize("k", range(0, 5))
def test_square_top_pair_counts(k):
    c = oracle.catalan_by_recurrence
    for sigma in ((3, 1, 2), (3, 2, 1)):
        assert count_avoiders_constrained(square(k + 2), sigma, TOP_DOWN) == c(k + 1)
        assert count_avoiders_constrained(square(k + 2), sigma, TOP_UP) == c(k + 2) - c(k + 1)


@given(proper_diagrams(min_size=2), patterns(3, 3))
def test_top_pair_constraints_partition(Y, tau):
    up = count_avoiders_constrained(Y, tau, TOP_UP)
    down = count_avoiders_constrained(Y, tau, TOP_DOWN)
    assert up + down == count_avoiders(Y, tau)


# -- subsequences ----------------------------------------------------------------------

def test_first_and_second_subsequence_example():
    T = Transversal(YoungDiagram((5, 5, 4, 4, 3)), (5, 1, 3, 2, 4))
    assert [y for _, y in first_subsequence(T)] == [5]
    assert [y for _, y in second_subsequence(T)] == [1, 3, 4]


def test_increasing_square_transversal():
    T = Transversal(square(5), (1, 2, 3, 4, 5))
    assert first_subsequence(T) == list(T.dots)
    assert second_subsequence(T) == []


@given(transversals())
def test_first_subsequence_is_left_to_right_maxima(T):
    assert first_subsequence(T) == oracle.left_to_right_maxima(T.word)


@given(transversals())
def test_second_subsequence_by_definition(T):
    first = set(first_subsequence(T))
    expected = []
    for d in T.dots:
        above_left = [e for e in T.dots if e[0] < d[0] and e[1] > d[1]]
        if d not in first and above_left and set(above_left) <= first:
            expected.append(d)
    assert second_subsequence(T) == expected


@given(transversals())
def test_primary_dots_are_not_dominated_by_landing_pairs(T):
    Y = T.diagram
    for d in primary_subsequence(T):
        assert not any(e[0] > d[0] and e[1] > d[1] and (e[0], d[1]) in Y for e in T.dots)
    primary = set(primary_subsequence(T))
    for d in secondary_subsequence(T):
        doms = [e for e in T.dots if e[0] > d[0] and e[1] > d[1] and (e[0], d[1]) in Y]
        assert doms and set(doms) <= primary


def test_empty_diagram_has_one_empty_transversal():
    assert count_avoiders(EMPTY, (1,)) == 1


def test_staircase_counts_match_filter():
    for n in range(3, 7):
        rows = staircase(3, n).rows
        for tau in S3:
            assert count_avoiders(YoungDiagram(rows), tau) == oracle.count(rows, [tau])
