from fractions import Fraction
from math import lcm

import numpy as np
import pytest

from etaq import linalg
from etaq.analytics import enumerate_holomorphic, is_holomorphic, order_map
from etaq.core import BoundExceeded, EtaQuotient, divisors, parse_eta_quotient, weight_numerator
from etaq.family import build_F, build_f
from etaq.matrices import build_A, inverse_A
from etaq.simplicity import (
    CERTIFIED,
    DECOMPOSED,
    INAPPLICABLE,
    conjecture_scan,
    coset_certificate,
    extremes_lemma_by_search,
    factor_box_size,
    find_factorizations,
    is_primitive,
    is_quasi_irreducible,
    is_simple,
    smith_bijection,
)


def numpy_admissible(X, N):
    """All integral-preimage points of the order box, by full enumeration."""
    Y = order_map(X, N).values
    inv = inverse_A(N).rows
    den = lcm(*(x.denominator for row in inv for x in row))
    M = np.array([[int(x * den) for x in row] for row in inv], dtype=np.int64)
    tail = np.indices(tuple(y + 1 for y in Y[2:])).reshape(len(Y) - 2, -1)
    out = []
    for a in range(Y[0] + 1):
        for b in range(Y[1] + 1):
            pts = np.vstack([np.full(tail.shape[1], a), np.full(tail.shape[1], b), tail])
            ok = np.all((M @ pts) % den == 0, axis=0)
            out.extend(tuple(int(v) for v in col) for col in pts[:, ok].T)
    return Y, sorted(out)


def expected_pairs(Y, admissible):
    pairs = set()
    for Yp in admissible:
        rest = tuple(a - b for a, b in zip(Y, Yp))
        if any(Yp) and any(rest):
            pairs.add(min(Yp, rest))
    return pairs


def found_pairs(found, N):
    return {min(order_map(f.g, N).values, order_map(f.h, N).values) for f in found}


def check_sound(X, N, found):
    for f in found:
        assert not f.g.is_zero() and not f.h.is_zero()
        assert is_holomorphic(f.g, N) and is_holomorphic(f.h, N)
        assert (f.g + f.h).as_dict() == X.as_dict()
        assert weight_numerator(f.g) > 0 and weight_numerator(f.h) > 0
        assert f.g.vector(N) <= f.h.vector(N)


def test_f_2_4_full_box():
    X = build_f(2, 4).exponents
    assert factor_box_size(X) == 2 * 14 * 11 * 14 * 2 == 8624
    Y, adm = numpy_admissible(X, 16)
    assert expected_pairs(Y, adm) == set()
    assert find_factorizations(X, 16) == []
    assert find_factorizations(X, 16, method="smith") == []
    # only 0 and Y itself survive
    assert adm == [(0,) * 5, Y]


@pytest.mark.slow
def test_f_3_4_full_box():
    X = build_f(3, 4).exponents
    assert factor_box_size(X) == 2 * 146 * 66 * 146 * 2
    Y, adm = numpy_admissible(X, 81)
    assert adm == [(0,) * 5, Y]
    assert find_factorizations(X, 81) == []


@pytest.mark.parametrize(
    "text",
    ["1^1 2^1 4^1", "2^2 4^1 8^2 @16", "1^-1 2^3 4^-1 8^2 @16", "1^2 2^-1 4^2 8^1 @16", "1^1 3^1 9^1", "1^2 2^1 3^1 6^2"],
)
def test_factorizations_match_numpy(text):
    X = parse_eta_quotient(text)
    N = X.level
    assert is_holomorphic(X)
    Y, adm = numpy_admissible(X, N)
    found = find_factorizations(X)
    check_sound(X, N, found)
    assert found_pairs(found, N) == expected_pairs(Y, adm)
    assert len(found) == len(expected_pairs(Y, adm))
    assert find_factorizations(X, method="smith") == found
    assert find_factorizations(X, workers=2) == found


def test_F16_factorizations():
    F = build_F(16)
    Y, adm = numpy_admissible(F, 16)
    found = find_factorizations(F)
    check_sound(F, 16, found)
    assert found_pairs(found, 16) == expected_pairs(Y, adm)


def exponent_space_factors(X, N, cap=300_000):
    """Factors found by walking exponent space directly, or None when the
    box is too large to walk."""
    A = np.array(build_A(N).rows, dtype=np.int64)
    inv = inverse_A(N).rows
    Y = order_map(X, N).values
    # X' = A^{-1} Y' with 0 <= Y' <= Y bounds each coordinate
    lo = [sum(min(0, x) * y for x, y in zip(row, Y)) for row in inv]
    hi = [sum(max(0, x) * y for x, y in zip(row, Y)) for row in inv]
    lo = [int(np.floor(float(v))) for v in lo]
    hi = [int(np.ceil(float(v))) for v in hi]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > cap:
        return None
    grid = np.indices(tuple(b - a + 1 for a, b in zip(lo, hi))).reshape(len(lo), -1) + np.array(lo)[:, None]
    Xv = np.array(X.vector(N))[:, None]
    ok = np.all(A @ grid >= 0, axis=0) & np.all(A @ (Xv - grid) >= 0, axis=0)
    pairs = set()
    for col in grid[:, ok].T:
        g = tuple(int(v) for v in col)
        h = tuple(int(a - b) for a, b in zip(X.vector(N), g))
        if any(g) and any(h):
            pairs.add(min(g, h))
    return pairs


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8, 9, 10, 12, 14, 15, 16, 18, 20, 21, 25, 27, 32])
def test_order_and_exponent_space_agree(N):
    checked = 0
    for k in (1, 2, 3):
        try:
            quotients = enumerate_holomorphic(N, k)
        except BoundExceeded:
            break
        for X in quotients[:: max(1, len(quotients) // 5)]:
            pairs = exponent_space_factors(X, N)
            if pairs is None:
                continue
            found = find_factorizations(X, N)
            check_sound(X, N, found)
            assert {f.g.vector(N) for f in found} == pairs
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("p", [2, 3])
def test_extremes_lemma(p):
    X = build_f(p, 4).exponents
    assert extremes_lemma_by_search(X)
    if p == 2:
        Y, adm = numpy_admissible(X, 16)
        assert [y for y in adm if y[0] == 0 and y[-1] == 0] == [(0,) * 5]


def test_primitive_and_simple_examples():
    f = build_f(2, 4).exponents
    assert is_primitive(f) and is_simple(f)
    assert not is_primitive(parse_eta_quotient("2^3 @4"))
    assert not is_simple(parse_eta_quotient("2^3 @4"))
    assert not is_simple(parse_eta_quotient("1^1 2^1 4^1"))
    assert not is_primitive(parse_eta_quotient("1^1 2^1 @4"))
    assert not is_quasi_irreducible(parse_eta_quotient("1^2"))
    assert is_quasi_irreducible(parse_eta_quotient("1^1"))


def test_factor_errors():
    with pytest.raises(ValueError):
        find_factorizations(parse_eta_quotient("1^-1"))
    with pytest.raises(BoundExceeded):
        find_factorizations(build_f(2, 4).exponents, bound=100)
    assert len(find_factorizations(parse_eta_quotient("1^1 2^1 4^1"))) == 9
    assert len(find_factorizations(parse_eta_quotient("1^1 2^1 4^1"), limit=2)) == 2


@pytest.mark.parametrize("p, n", [(2, 4), (3, 4), (2, 6), (5, 4), (3, 6)])
def test_certificates(p, n):
    c = coset_certificate(p, n)
    assert c.status == CERTIFIED
    X = build_f(p, n).exponents
    if factor_box_size(X) <= 10**7:
        assert find_factorizations(X) == []


def test_certificate_inapplicable():
    assert coset_certificate(3, 5).status == INAPPLICABLE
    assert coset_certificate(2, 4, parse_eta_quotient("1^1 @16")).status == INAPPLICABLE
    assert coset_certificate(4, 4).status == INAPPLICABLE
    assert coset_certificate(2, 4, parse_eta_quotient("1^-1 @16")).status == INAPPLICABLE


@pytest.mark.parametrize("p, n", [(2, 4), (3, 4)])
def test_certificate_agrees_with_search(p, n):
    N = p**n
    seen = set()
    for X in enumerate_holomorphic(N, 2 if p == 2 else 1) + (enumerate_holomorphic(N, 3) if p == 2 else []):
        c = coset_certificate(p, n, X)
        seen.add(c.status)
        if c.status == CERTIFIED:
            assert find_factorizations(X, N) == []
        elif c.status == DECOMPOSED:
            check_sound(X, N, [c.witness])
    if p == 2:
        assert CERTIFIED in seen


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 2)])
def test_smith_bijection(p, n):
    assert smith_bijection(p, n)


def test_scan_small():
    assert conjecture_scan(2, 4, 0).simple == []
    r = conjecture_scan(2, 4, 2)
    assert build_f(2, 4).exponents in r.simple
    assert r.complete and r.consistent


def test_scan_incomplete_is_flagged():
    r = conjecture_scan(3, 4, 6)
    assert not r.complete and "bound exceeded" in r.note
    r = conjecture_scan(3, 4, 9, bound=10**10)
    assert not r.complete and r.undecided and "undecided" in r.note


@pytest.mark.slow
def test_scan_level_81():
    r = conjecture_scan(3, 4, 9, bound=10**16)
    assert r.complete and r.consistent
    assert r.family_weight == 9
    assert [X for X in r.simple if weight_numerator(X) == 9] == [build_f(3, 4).exponents]
    assert len(r.simple) == 51
