import math
from fractions import Fraction

import pytest

from asympt import (
    Direction,
    binomial_exact,
    critical_point,
    log_int,
    nth_root_gap,
    pemantle_estimate,
    tilde_e,
)


def test_tilde_e_values():
    assert tilde_e(Fraction(1, 2)) == pytest.approx(2.0, rel=1e-15)
    assert tilde_e(Fraction(1, 3)) == pytest.approx(3 ** (1 / 3) * 1.5 ** (2 / 3), rel=1e-14)
    assert tilde_e(Fraction(1, 3)) == pytest.approx(1.8899, abs=1e-4)


def test_tilde_e_symmetric_with_max_at_half():
    for a in (0.1, 0.25, 0.4):
        assert tilde_e(a) == pytest.approx(tilde_e(1 - a), rel=1e-14)
        assert tilde_e(a) < 2.0


def test_tilde_e_matches_binomial_root():
    n = 3000
    assert math.exp(log_int(math.comb(n, n // 3)) / n) == pytest.approx(tilde_e(Fraction(1, 3)), abs=5e-3)


@pytest.mark.parametrize("alpha", [0, 1, 0.0, 1.0])
def test_tilde_e_boundary(alpha):
    with pytest.raises(ValueError):
        tilde_e(alpha)


def test_critical_point():
    pt = critical_point(Direction(7, 7))
    assert (pt.x, pt.y) == (0.5, 0.5)
    pt = critical_point(Direction(1, 2))
    assert pt.x == pytest.approx(1 / 3) and pt.y == pytest.approx(2 / 3)
    for direction in (Direction(3, 5), Direction(1, 2), Direction(40, 9)):
        assert all(abs(v) < 1e-14 for v in critical_point(direction).residuals(direction))


def test_direction_requires_positive():
    with pytest.raises(ValueError):
        Direction(0, 3)


def test_binomial_exact():
    assert binomial_exact(0, 9) == 1
    assert binomial_exact(13, 4) == binomial_exact(4, 13)
    # 帕斯卡三角交叉验证
    row = [1]
    for _ in range(100):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
    assert binomial_exact(50, 50) == row[50]
    with pytest.raises(ValueError):
        binomial_exact(-1, 3)


def test_pemantle_accuracy():
    e50 = pemantle_estimate(Direction(50, 50))
    e200 = pemantle_estimate(Direction(200, 200))
    assert e50.rel_error <= 0.02
    assert e200.rel_error <= 0.01
    assert e200.rel_error < e50.rel_error
    assert e50.exact == math.comb(100, 50)
    assert e50.q > 0


@pytest.mark.parametrize("direction", [Direction(1, 1), Direction(1, 2), Direction(3, 5)])
def test_pemantle_error_decreases_along_ray(direction):
    errors = [pemantle_estimate(direction.scaled(k * 10)).rel_error for k in (1, 2, 4)]
    assert errors[0] > errors[1] > errors[2]


def test_nth_root_convergence():
    gaps = [nth_root_gap(Fraction(1, 3), n) for n in (100, 200, 500, 1000)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-2


def test_log_int_large_values():
    big = 3**2000
    assert log_int(big) == pytest.approx(2000 * math.log(3), rel=1e-14)
