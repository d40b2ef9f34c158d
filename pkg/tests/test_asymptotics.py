import csv
import io
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cwkit import catalog
from cwkit.asymptotics import (AsymptoticModel, emit_csv, exact_lambda_at, leading_approx,
                               residual_report, series_eval, t_grid, tail_bound)
from cwkit.surgery import casson_walker

nz = st.integers(-5, 5).filter(bool)


def test_exact_matches_pipeline_at_integers():
    L = catalog.hopf(2, 3, 2)
    M = AsymptoticModel.from_link(L)
    for t in (1, 2, 3, -4):
        assert exact_lambda_at(M, t) == casson_walker(L.with_framings(3 * t, 2 * t))


def test_cases():
    assert AsymptoticModel(3, 2, 1).case == 1
    assert AsymptoticModel(3, -3, 1).case == 2
    assert AsymptoticModel(3, 0, 1).case == 3
    with pytest.raises(ValueError):
        AsymptoticModel(0, 0, 1).case


def test_hopf_5_m3_2_determinant():
    M = AsymptoticModel(-3, 2, 5)
    for t in (1, 2, 7):
        assert M.D(t) == -6 * t * t - 25 and M.sigma(t) == 0


@given(nz, st.integers(-6, 6).filter(bool), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-10, 10))
def test_case3_exact(a0, n, v1, v2, U):
    M = AsymptoticModel(a0, 0, n, v1, v2, U)
    for t in range(-20, 21):
        if t:
            assert exact_lambda_at(M, t) == leading_approx(M, t)


def test_case3_other_side():
    M = AsymptoticModel(0, 4, 3, 1, -1, 2)
    for t in range(1, 10):
        assert exact_lambda_at(M, t) == leading_approx(M, t)


def test_series_against_symbolic_expansion():
    # independent expansion of 2 mu / D in 1/t with a computer algebra system
    t = sp.symbols("t", positive=True)
    for a0, b0, n, v1, v2, U in [(3, 2, 2, 1, 0, -1), (-2, -5, 3, 0, 1, 4), (4, -1, 1, 2, -1, 0)]:
        M = AsymptoticModel(a0, b0, n, v1, v2, U)
        a, b = a0 * t, b0 * t
        mu = (a * v2 + b * v1 - U + sp.Rational(n ** 3 - n, 12)
              + (a + b) * (2 * n * n - a * b - 2) / 24)
        expr = 2 * mu / (a0 * b0 * t ** 2 - n * n)
        x = sp.symbols("x", positive=True)
        ser = sp.series(expr.subs(t, 1 / x), x, 0, 7).removeO()
        tt = Fraction(53)
        sym = Fraction(str(sp.nsimplify(ser.subs(x, sp.Rational(1, 53))))) + Fraction(M.sigma_inf, 4)
        ours = series_eval(M, tt, 2)  # through t^-6
        assert ours == sym


@given(nz, nz, st.integers(-5, 5), st.integers(-3, 3), st.integers(-3, 3), st.integers(-9, 9))
def test_series_within_tail_bound(a0, b0, n, v1, v2, U):
    M = AsymptoticModel(a0, b0, n, v1, v2, U)
    t = Fraction(37)
    if t * t * abs(a0 * b0) <= n * n:
        return
    for k in (0, 3, 12):
        r = residual_report(M, [t], k)[0]
        assert r.residual <= r.bound


def test_series_rejects_inside_radius():
    M = AsymptoticModel(1, 1, 5)
    with pytest.raises(ValueError, match="radius"):
        series_eval(M, 3, 5)
    with pytest.raises(ValueError):
        tail_bound(AsymptoticModel(2, 0, 1), 10, 5)


def test_residuals_decrease():
    M = AsymptoticModel.from_link(catalog.hopf(2, 3, 2))
    r = [abs(exact_lambda_at(M, t) - leading_approx(M, t)) for t in (10, 10 ** 3, 10 ** 6)]
    assert r[0] > r[1] > r[2]
    K = AsymptoticModel(3, -3, 2, 1, 0, 0)
    r = [t * abs(exact_lambda_at(K, t) - leading_approx(K, t)) for t in (10, 10 ** 3, 10 ** 6)]
    assert r[0] > r[1] > r[2]


def test_t_grid():
    assert t_grid("1", "2", "0.5") == [1, Fraction(3, 2), 2]
    with pytest.raises(ValueError):
        t_grid(1, 2, 0)


def test_csv_output():
    M = AsymptoticModel(1, 1, 2)
    text = emit_csv(M, t_grid(1, 4, "0.5"), 8)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["t", "exact", "leading", "series"]
    # t = 2 is singular (D = 0) and skipped; inside the radius the series cell is blank
    ts = [float(r[0]) for r in rows[1:]]
    assert 2.0 not in ts
    assert rows[1][3] == ""
    for r in rows[1:]:
        float(r[1]), float(r[2])
    exact = list(csv.reader(io.StringIO(emit_csv(M, [3], 8, exact=True))))
    assert Fraction(exact[1][1]) == exact_lambda_at(M, 3)


def test_hopf_232_tail_and_limit():
    M = AsymptoticModel.from_link(catalog.hopf(2, 3, 2))
    r = residual_report(M, [10], 6)[0]
    # the terms are exactly geometric, so the bound is the whole tail
    assert r.residual <= r.bound
    ex = exact_lambda_at(M, 100)
    assert abs(series_eval(M, 100, 7) - ex) < Fraction(1, 10 ** 12)
