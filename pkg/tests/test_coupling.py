import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dipoledyn.coupling import (
    ShiftFormula,
    abs_shift,
    coupling_c,
    decay_rates,
    im_c_small_r,
    k0r_for_shift,
    shift_leading_term,
)
from dipoledyn.errors import DomainError, NoSolutionError


def test_coupling_constant_at_k0r_02():
    c = coupling_c(0.2, math.pi / 2)
    assert c.re == pytest.approx(0.992, abs=1e-3)
    assert c.im == pytest.approx(183.862, abs=1e-3)


def test_small_r_shift_values():
    assert im_c_small_r(0.2) == pytest.approx(-382.4251665, abs=1e-6)
    assert im_c_small_r(0.1) == pytest.approx(-3014.96, abs=0.01)


def test_leading_term_is_375_at_k0r_02():
    assert shift_leading_term(0.2) == pytest.approx(375.0, rel=1e-12)
    assert shift_leading_term(0.2) == pytest.approx(abs(im_c_small_r(0.2)), rel=0.02)
    assert shift_leading_term(0.1) == pytest.approx(3000.0, rel=1e-12)


def test_decay_rates_follow_re_c():
    c = coupling_c(0.2)
    rates = decay_rates(c)
    assert rates.gamma_s == pytest.approx(1.0 + c.re)
    assert rates.gamma_a == pytest.approx(1.0 - c.re)
    assert rates.as_diagonal() == (0.0, rates.gamma_s, rates.gamma_a, 2.0)


@given(st.floats(min_value=0.01, max_value=5.0))
def test_collective_rates_are_physical(k0r):
    rates = decay_rates(coupling_c(k0r))
    assert rates.gamma_a >= -1e-9
    assert rates.gamma_s <= 2.0 + 1e-9
    assert rates.gamma_s + rates.gamma_a == pytest.approx(2.0)


def test_re_c_tends_to_one_at_small_separation():
    assert coupling_c(0.01).re == pytest.approx(1.0, abs=1e-3)


def test_re_c_never_exceeds_one_over_the_geometry_grid():
    for k0r in np.linspace(0.05, 20.0, 100):
        for theta in np.linspace(0.0, math.pi, 50):
            assert coupling_c(k0r, theta).re <= 1.0 + 1e-9


def test_small_r_shift_approaches_the_leading_term():
    x = 0.01
    assert x**3 * abs(im_c_small_r(x)) == pytest.approx(3.0, rel=0.01)


def test_abs_shift_formulas():
    assert abs_shift(0.2, ShiftFormula.SMALL_R) == pytest.approx(382.4251665, abs=1e-6)
    assert abs_shift(0.2, "exact") == pytest.approx(abs(coupling_c(0.2).im))


def test_inverse_shift_round_trip():
    assert k0r_for_shift(abs(im_c_small_r(0.2))) == pytest.approx(0.2, abs=1e-9)
    assert k0r_for_shift(382.425) == pytest.approx(0.2, abs=1e-7)
    x = k0r_for_shift(500.0, ShiftFormula.EXACT)
    assert abs_shift(x, ShiftFormula.EXACT) == pytest.approx(500.0, rel=1e-9)


@pytest.mark.parametrize("target", [1.0, 1e12, math.nan])
def test_inverse_shift_without_root(target):
    with pytest.raises(NoSolutionError):
        k0r_for_shift(target)


@pytest.mark.parametrize("k0r, theta", [(0.0, math.pi / 2), (-0.1, 0.0), (0.2, 4.0), (math.inf, 1.0)])
def test_domain_errors(k0r, theta):
    with pytest.raises(DomainError):
        coupling_c(k0r, theta)


def test_domain_error_is_a_value_error():
    with pytest.raises(ValueError):
        im_c_small_r(0.0)
