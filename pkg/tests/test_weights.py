"""Classical-point enumeration, slopes and Nebentypus decomposition."""

from fractions import Fraction

import pytest

from padicfam.errors import EmptyWindow, ZeroAtPrecision
from padicfam.padic import RingParams
from padicfam.weights import classical_points, neben_decompose, slope_from_up_eigenvalue

R = RingParams(3, 1, 8)


def brute_force(p, k0, m, alpha, bound):
    return [k for k in range(1, bound + 1) if (k - k0) % p**m == 0 and k > alpha + 1]


def test_enumeration_examples():
    cps = classical_points(3, 2, 1, 0, 30)
    assert list(cps) == [2, 5, 8, 11, 14, 17, 20, 23, 26, 29]
    assert list(cps) == brute_force(3, 2, 1, 0, 30)
    cps2 = classical_points(3, 2, 2, 0, 30)
    assert list(cps2) == [2, 11, 20, 29]
    assert list(cps2) == brute_force(3, 2, 2, 0, 30)


def test_slope_inequality_drops_small_weights():
    # alpha = k0 forces the first admissible weight above alpha + 1
    cps = classical_points(3, 2, 1, alpha=2, bound=30)
    assert cps.points[0] == 5
    assert all(k > 3 for k in cps)


def test_membership_closure():
    for m in (1, 2):
        cps = classical_points(3, 2, m, 0, 60)
        for k in cps:
            assert cps.member(k)
        for k in range(1, 61):
            assert cps.member(k) == (k in set(cps.points))
    # the set keeps growing with the bound (density realized as infinitude)
    sizes = [len(classical_points(3, 2, 1, 0, b)) for b in (30, 60, 120)]
    assert sizes[0] < sizes[1] < sizes[2]


def test_restriction_compatibility():
    big = set(classical_points(3, 2, 1, 0, 100).points)
    small = set(classical_points(3, 2, 2, 0, 100).points)
    assert small <= big


def test_strict_disk():
    strict = classical_points(3, 2, 1, 0, 30, strict=True)
    assert list(strict) == brute_force(3, 2, 2, 0, 30)


def test_empty_window():
    with pytest.raises(EmptyWindow):
        classical_points(3, 2, 3, alpha=10, bound=11)


def test_validation():
    with pytest.raises(ValueError):
        classical_points(3, 2, 0, 0, 30)
    with pytest.raises(ValueError):
        classical_points(3, 2, 1, -1, 30)


def test_slopes():
    assert slope_from_up_eigenvalue(R.from_int(2)) == 0
    assert slope_from_up_eigenvalue(R.from_int(3)) == 1  # a_3 = 3 at p = 3
    assert slope_from_up_eigenvalue(R.from_int(9 * 2)) == 2
    assert slope_from_up_eigenvalue(3, 3) == 1
    with pytest.raises(ZeroAtPrecision):
        slope_from_up_eigenvalue(R.zero())
    with pytest.raises(ZeroAtPrecision):
        slope_from_up_eigenvalue(0, 3)
    assert slope_from_up_eigenvalue(R.uniformizer()) == Fraction(1)


def test_neben_decompose():
    assert neben_decompose(4, 4, 5).exponent == 0
    assert neben_decompose(2, 0, 3).exponent == 0
    assert neben_decompose(4, 1, 5).exponent == 1
    tagged = neben_decompose(2, 1, 5, tame="eps140")
    assert tagged.tame == "eps140"
    assert str(tagged) == "eps140*omega^3"
    with pytest.raises(ValueError):
        neben_decompose(2, 5, 5)
