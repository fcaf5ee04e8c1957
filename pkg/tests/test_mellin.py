import cmath
import csv
import io
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genli.errors import DomainError, PoleError
from genli.mellin import (
    CSV_COLUMNS,
    TestFunctionSpec,
    compensated_integral_closed_form,
    compensated_integrand,
    envelope_decay_exponent,
    eval_f_tilde,
    eval_g,
    eval_p,
    eval_p_laguerre,
    eval_p_tilde,
    eval_p_tilde_laguerre,
    eval_sum_form_exact,
    forward_mellin,
    leading_defect,
    mellin_closed_form,
    small_x_ratios,
    truncated_mellin,
    truncation_defect,
    truncation_study,
    weil_breakdown,
    zero_sum_defect,
)
from genli.numerics import exp_sinh
from genli.specfun import EULER_GAMMA, LN_PI

# test function

def test_g_examples():
    spec = TestFunctionSpec(2, 2.0)
    assert eval_g(spec, 1.0) == 2 * 3 / 2
    assert eval_g(spec, 2.0) == 0
    assert eval_g(spec, math.exp(-1)) == pytest.approx(-3 / math.e, rel=1e-14)
    # the bracket by hand: j=1 gives C(2,1) 3 = 6, j=2 gives C(2,2) 9 ln x = -9
    assert eval_g(spec, math.exp(-1)) == pytest.approx((6 - 9) * math.exp(-1), rel=1e-14)
    with pytest.raises(DomainError):
        eval_g(spec, 0.0)


def test_truncated_g():
    spec = TestFunctionSpec(1, 2.0, eps=0.25)
    assert eval_g(spec, 0.1) == 0
    assert eval_g(spec, 0.25) == pytest.approx(0.5 * 3 * 0.25)
    assert eval_g(spec, 0.5) == pytest.approx(3 * 0.5)


def test_spec_validation():
    with pytest.raises(DomainError):
        TestFunctionSpec(0, 2.0)
    with pytest.raises(DomainError):
        TestFunctionSpec(1, 2.0, eps=1.0)


def test_p_tilde_is_reflected_g():
    spec = TestFunctionSpec(3, 1.5)
    assert complex(eval_p_tilde(spec, 2.0)) == pytest.approx(0.5 * eval_g(spec, 0.5), rel=1e-14)
    assert eval_f_tilde(spec, 2.0) == pytest.approx(0.5 * eval_g(spec, 0.5), rel=1e-14)


def test_p_tilde_n1():
    for a in (0.8, 2.0, 1.5 + 0.5j):
        spec = TestFunctionSpec(1, a)
        x = 3.7
        assert complex(eval_p_tilde(spec, x)) == pytest.approx((2 * a - 1) * x ** (-a), rel=1e-14)


def test_laguerre_forms_spot_points():
    for n, a in ((1, 2.0), (4, 1.3), (9, 0.75), (15, 2.5)):
        spec = TestFunctionSpec(n, a)
        for x in (0.01, 0.3, 0.9):
            want = eval_sum_form_exact(spec, x)
            assert complex(eval_p_laguerre(spec, x)).real == pytest.approx(want, rel=1e-12)
        for x in (1.5, 4.0, 9.5):
            want = eval_sum_form_exact(spec, x, tilde=True)
            assert complex(eval_p_tilde_laguerre(spec, x)).real == pytest.approx(want, rel=1e-12)


def test_laguerre_against_mpmath():
    spec = TestFunctionSpec(7, 1.8)
    for x in (0.2, 0.6):
        with mp.workdps(30):
            want = mp.mpf(x) ** 0.8 * 2.6 * mp.laguerre(6, 1, -2.6 * mp.log(x))
        assert complex(eval_p_laguerre(spec, x)).real == pytest.approx(float(want), rel=1e-12)


def test_exact_sum_form_needs_real_a():
    with pytest.raises(DomainError):
        eval_sum_form_exact(TestFunctionSpec(2, 1 + 1j), 0.5)


def test_float_sum_form_matches_exact_away_from_roots():
    spec = TestFunctionSpec(5, 2.0)
    for x in (0.9, 0.5):
        assert complex(eval_p(spec, x)).real == pytest.approx(eval_sum_form_exact(spec, x), rel=1e-12)


def test_small_x_admissibility():
    for n, a in ((1, 2.0), (3, 1.5), (6, 3.0)):
        spec = TestFunctionSpec(n, a)
        r = small_x_ratios(spec, (a - 1) / 2)
        # x^((a-1)/2) ln^(n-1) x: the log powers delay the decay but not for long
        assert np.all(np.diff(r[-6:]) < 0) and r[-1] < 0.2 * r.max()


# Mellin pair

def test_closed_form_at_a():
    for n in (1, 4, 10):
        assert mellin_closed_form(n, 1.7, 1.7) == 1.0


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("a", [1.2, 2.0])
@pytest.mark.parametrize("s", [2.0, 3.0, 1 + 2j])
def test_mellin_pair_grid(n, a, s):
    numeric, closed = forward_mellin(TestFunctionSpec(n, a), s)
    assert abs(numeric - closed) <= 1e-8


def test_mellin_pair_example():
    numeric, closed = forward_mellin(TestFunctionSpec(3, 1.2), 2.0)
    assert abs(numeric - closed) <= 1e-8


def test_mellin_pair_pole():
    with pytest.raises(DomainError):
        forward_mellin(TestFunctionSpec(2, 2.0), -1.0)
    with pytest.raises(ZeroDivisionError):
        mellin_closed_form(2, 2.0, -1.0)


def test_mellin_pair_against_mpmath_quad():
    spec = TestFunctionSpec(4, 1.6)
    s = 1.3 + 0.7j
    with mp.workdps(25):
        f = lambda x: complex(eval_p(spec, float(x))) * mp.power(x, s - 1)
        want = complex(mp.quad(f, [0, 0.001, 0.1, 1]))
    assert abs(forward_mellin(spec, s)[0] - want) <= 1e-9


# truncation

def test_truncated_n1_example():
    got = truncated_mellin(TestFunctionSpec(1, 2.0, eps=1e-4), 0.3)
    want = 3 * (1 / 1.3 - (1e-4) ** 1.3 / 1.3)
    assert got == pytest.approx(want, rel=1e-14)
    # per unit of b = 2a - 1
    assert got / 3 == pytest.approx(1 / 1.3 - (1e-4) ** 1.3 / 1.3, rel=1e-14)


def test_truncated_near_eps_one_vanishes():
    assert abs(truncated_mellin(TestFunctionSpec(1, 2.0, eps=1 - 1e-12), 0.5)) < 1e-10


def test_truncated_approaches_untruncated():
    for s in (0.5, 2.0 + 1.0j):
        closed = mellin_closed_form(3, 2.0, s)
        assert abs(truncated_mellin(TestFunctionSpec(3, 2.0, eps=1e-14), s) - closed) < 1e-8


def test_truncated_pole():
    with pytest.raises(PoleError):
        truncated_mellin(TestFunctionSpec(2, 2.0, eps=0.1), -1.0)
    with pytest.raises(DomainError):
        truncated_mellin(TestFunctionSpec(2, 2.0), 0.5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.floats(0.6, 3.0), st.floats(1e-6, 0.5), st.floats(-0.4, 2.0), st.floats(-30, 30))
def test_defect_expansion_matches_difference(n, a, eps, sr, si):
    s = complex(sr, si)
    mu = s + a - 1
    if abs(mu) < 0.3:
        return
    direct = truncated_mellin(TestFunctionSpec(n, a, eps), s) - mellin_closed_form(n, a, s)
    series = complex(truncation_defect(n, a, eps, s)[()])
    assert abs(direct - series) <= 1e-9 * max(1.0, abs(mellin_closed_form(n, a, s)))


@pytest.mark.parametrize("n,a,s", [(1, 2.0, -0.5), (2, 1.5, 0.25 + 3j), (1, 0.75, 1.0)])
def test_defect_halving(n, a, s):
    # Re(s + a - 1) kept small so the defect is well above the rounding of the closed forms
    for eps in (1e-4, 1e-5):
        d1 = mellin_closed_form(n, a, s) - truncated_mellin(TestFunctionSpec(n, a, eps), s)
        d2 = mellin_closed_form(n, a, s) - truncated_mellin(TestFunctionSpec(n, a, eps / 2), s)
        if n == 1:
            assert abs(d2 / d1) == pytest.approx(2.0 ** -(s + a - 1).real, rel=0.05)
        # for n > 1 the leading term carries a polynomial in ln eps
        lead = leading_defect(n, a, eps / 2, s)[()] / leading_defect(n, a, eps, s)[()]
        assert abs(d2 / d1) == pytest.approx(abs(lead), rel=0.05)


def test_leading_defect_dominates():
    n, a, s = 3, 1.5, 1.0
    eps = 1e-8
    defect = mellin_closed_form(n, a, s) - truncated_mellin(TestFunctionSpec(n, a, eps), s)
    lead = leading_defect(n, a, eps, s)[()]
    assert abs(defect / lead - 1) < 0.25


def test_study_top_row_reproduces_truncated():
    spec = TestFunctionSpec(2, 1.5)
    rep = truncation_study(spec, [1.0, 2.0 + 1j], [1e-2, 1e-3])
    eps, s, defect, _ = rep.rows[0]
    assert eps == 1e-2
    assert defect == mellin_closed_form(2, 1.5, s) - truncated_mellin(TestFunctionSpec(2, 1.5, 1e-2), s)
    assert rep.decay_exponent is None


def test_study_csv_columns():
    rep = truncation_study(TestFunctionSpec(1, 2.0), [2.0], [1e-2, 1e-3])
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[0] == ["eps", "s_re", "s_im", "defect_re", "defect_im", "fitted_leading_re", "fitted_leading_im"]
    assert len(rows) == 3 and float(rows[1][0]) == 1e-2


def test_study_schedule_validation():
    with pytest.raises(DomainError):
        truncation_study(TestFunctionSpec(1, 2.0), [2.0], [1e-3, 1e-2])
    with pytest.raises(DomainError):
        truncation_study(TestFunctionSpec(1, 2.0), [2.0], [1.5])


def test_envelope_exponent_on_synthetic_data():
    eps = 10.0 ** -np.linspace(1, 7, 61)
    vals = eps**0.3 * np.cos(25 * np.log(eps))
    assert envelope_decay_exponent(eps, vals) == pytest.approx(0.3, abs=0.03)
    with pytest.raises(DomainError):
        envelope_decay_exponent(np.array([0.5, 0.4]), np.array([1.0, 2.0]))


def test_zero_sum_defect_decay(zeros_1e4):
    eps = 10.0 ** -np.linspace(2.0, 6.0, 41)
    rep = truncation_study(TestFunctionSpec(1, 0.75), [2.0], eps, zeros_1e4)
    assert rep.decay_exponent >= 0.2
    assert np.all(rep.zero_defects.imag == 0)


def test_zero_sum_defect_real(zeros_1e4):
    v, spread = zero_sum_defect(2, 0.9, 1e-3, zeros_1e4)
    assert v.imag == 0.0 and spread >= 0


# explicit formula

def test_archimedean_term_and_closed_forms(table_1e7, zeros_1e4):
    spec = TestFunctionSpec(2, 2.0)
    wb = weil_breakdown(spec, table_1e7, zeros_1e4)
    assert wb.archimedean_f1 == pytest.approx((LN_PI + EULER_GAMMA) * 2 * 3 / 2, rel=1e-15)
    # int_0^1 ln^(j-1)(x) x^(a-1) dx = (-1)^(j-1) (j-1)!/a^j
    f_side = sum(math.comb(2, j) * 3**j * (-1) ** (j - 1) / 2.0**j for j in (1, 2))
    assert wb.integral_0_inf_f == pytest.approx(f_side, rel=1e-12)
    assert wb.integral_0_inf_f == pytest.approx(mellin_closed_form(2, 2.0, 1.0), rel=1e-12)
    assert wb.integral_0_inf_f_tilde == pytest.approx(mellin_closed_form(2, 2.0, 0.0), rel=1e-12)
    assert wb.compensated_integral == pytest.approx(compensated_integral_closed_form(2, 2.0), rel=1e-11)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("a", [2.0, 3.0])
def test_weil_closure(table_1e7, zeros_1e4, n, a):
    wb = weil_breakdown(TestFunctionSpec(n, a), table_1e7, zeros_1e4)
    assert wb.discrepancy <= 1e-4 + wb.total_uncertainty + wb.zero_side_uncertainty
    assert wb.total.imag == 0.0
    assert set(wb.as_dict()) >= {"lambda_sum", "total", "zero_side"}


def test_weil_domain(table_1e6, zeros_1e4):
    with pytest.raises(DomainError):
        weil_breakdown(TestFunctionSpec(1, 0.9), table_1e6, zeros_1e4)
    with pytest.raises(DomainError):
        weil_breakdown(TestFunctionSpec(1, 2.0, eps=0.1), table_1e6, zeros_1e4)


@pytest.mark.parametrize("n,a", [(1, 2.0), (3, 2.5), (5, 1.3 + 0.4j)])
def test_compensated_integral_quadrature(n, a):
    spec = TestFunctionSpec(n, a)
    f = compensated_integrand(spec)
    num, _ = exp_sinh(f, 0.0, rtol=1e-13, atol=1e-15, max_level=12)
    # n = 1, a = 2 gives gamma + psi(1) = 0
    assert cmath.isclose(num, compensated_integral_closed_form(n, a), rel_tol=1e-11, abs_tol=1e-13)
    # the value at t = 0 is the limit from the right
    assert abs(f(np.array([0.0]))[0] - f(np.array([1e-7]))[0]) < 1e-5
