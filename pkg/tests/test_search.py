from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from etaq import linalg
from etaq.core import divisors
from etaq.matrices import inverse_A
from etaq.search import (
    Congruence,
    LatticeProblem,
    count_weighted_solutions,
    default_bound,
    integrality_congruences,
    solve_parallel,
)


def integral_preimage(N, y):
    return all(x.denominator == 1 for x in linalg.matvec(inverse_A(N).rows, [Fraction(v) for v in y]))


@pytest.mark.parametrize("N", [1, 2, 4, 6, 8, 9, 12, 16, 18, 25, 27, 30])
@pytest.mark.parametrize("method", ["rational", "smith"])
def test_congruences_characterise_integrality(N, method):
    cong = integrality_congruences(N, method)
    n = len(divisors(N))
    side = 3 if n > 5 else 5
    for y in product(range(side), repeat=n):
        assert all(c.holds(y) for c in cong) == integral_preimage(N, y)


congruences = st.lists(
    st.builds(lambda cs, m: Congruence(tuple(cs), m), st.lists(st.integers(0, 6), min_size=3, max_size=3), st.integers(2, 5)),
    max_size=2,
)


@given(congruences, st.lists(st.integers(0, 5), min_size=3, max_size=3), st.permutations(range(3)))
def test_box_solutions_match_brute_force(cong, upper, order):
    prob = LatticeProblem(size=3, congruences=tuple(cong), upper=tuple(upper), order=tuple(order))
    got = list(prob.solutions())
    want = [y for y in product(*(range(u + 1) for u in upper)) if all(c.holds(y) for c in cong)]
    assert sorted(got) == want
    assert got == sorted(got, key=lambda y: tuple(y[i] for i in order))
    assert len(set(got)) == len(got)


@given(
    congruences,
    st.lists(st.integers(1, 3), min_size=3, max_size=3),
    st.integers(0, 12),
)
def test_hyperplane_solutions_match_brute_force(cong, weights, total):
    prob = LatticeProblem(size=3, congruences=tuple(cong), weights=tuple(weights), total=total)
    got = sorted(prob.solutions())
    want = [
        y
        for y in product(range(total + 1), repeat=3)
        if sum(w * v for w, v in zip(weights, y)) == total and all(c.holds(y) for c in cong)
    ]
    assert got == want
    if not cong:
        assert count_weighted_solutions(weights, total) == len(want)


def test_parallel_is_deterministic():
    prob = LatticeProblem(
        size=5, congruences=integrality_congruences(16), weights=(1, 1, 2, 1, 1), total=4 * 24
    )
    serial = sorted(prob.solutions())
    assert solve_parallel(prob, 1) == serial
    assert solve_parallel(prob, 3) == serial
    assert solve_parallel(prob, 3, split_depth=1) == serial


def test_problem_validation():
    with pytest.raises(ValueError):
        LatticeProblem(size=2)
    with pytest.raises(ValueError):
        LatticeProblem(size=2, weights=(1, 1))
    with pytest.raises(ValueError):
        LatticeProblem(size=2, weights=(0, 1), total=3)
    with pytest.raises(ValueError):
        integrality_congruences(4, "fast")


def test_default_bound_env(monkeypatch):
    monkeypatch.delenv("ETAQ_MAX_BOX", raising=False)
    assert default_bound() == 10**8
    monkeypatch.setenv("ETAQ_MAX_BOX", "1234")
    assert default_bound() == 1234
