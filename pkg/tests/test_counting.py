"""Brute-force point counting, elliptic traces, p-adic unit roots."""

import pytest

from wittcoh.corpus import elliptic_corpus
from wittcoh.fields import fq
from wittcoh.pointcount import (BudgetExceeded, VarietySystem, count_from_aq,
                                count_points, elliptic_aq,
                                frobenius_trace_r, unit_root)


def test_projective_space_counts():
    for K in (fq(2, 1), fq(3, 1), fq(2, 2)):
        line = VarietySystem(K, "projective", [], 2)
        plane = VarietySystem(K, "projective", [], 3)
        for r in (1, 2):
            q = K.q ** r
            assert count_points(line, r) == q + 1
            assert count_points(plane, r) == q * q + q + 1


def test_affine_counts():
    K = fq(3, 1)
    # x*y = 1 in A^2 has q - 1 points
    V = VarietySystem(K, "affine", [{(1, 1): 1, (0, 0): -1}], 2)
    assert count_points(V) == 2
    assert count_points(V, 2) == 8


def test_elliptic_trace_recursion():
    # counts over extensions follow from a_q via the Weil relations
    for datum in elliptic_corpus()[:8]:
        q = datum.field.q
        a = elliptic_aq(datum.variety)
        assert a == datum.a_q
        for r in (1, 2, 3):
            want = count_points(datum.variety, r)
            assert count_from_aq(a, q, r) == want
            assert q ** r + 1 - frobenius_trace_r(a, q, r) == want


def test_unit_root_properties():
    for datum in elliptic_corpus():
        if not datum.ordinary:
            continue
        p, q, a = datum.field.p, datum.field.q, datum.a_q
        for n in (1, 2, 3, 4):
            u = unit_root(a, q, n)
            assert u % p != 0
            assert (u * u - a * u + q) % p ** n == 0
            assert (u - a) % p == 0


def test_unit_root_supersingular_is_none():
    assert unit_root(0, 2, 3) is None
    assert unit_root(3, 3, 2) is None


def test_budget():
    K = fq(3, 1)
    plane = VarietySystem(K, "projective", [], 3)
    with pytest.raises(BudgetExceeded):
        count_points(plane, 4, budget=100)
