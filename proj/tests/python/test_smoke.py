"""Smoke tests for the compiled samcurve module."""

import math
import os

import pytest

import samcurve as sc


def iris_path():
    data = os.environ.get("SAMCURVE_DATA")
    if not data:
        pytest.skip("SAMCURVE_DATA not set")
    return os.path.join(data, "iris.csv")


def test_root_and_derivative():
    p = sc.SCurveParams(a=1.0, m=1.0)
    assert sc.eval_scurve(p, 0.0) == 0.0
    assert sc.eval_scurve(p, 1.0) == pytest.approx(0.6823278038280193, rel=1e-12)
    assert sc.eval_scurve_derivative(p, 0.0) == pytest.approx(1.0)
    # odd symmetry
    assert sc.eval_scurve(p, -1.0) == pytest.approx(-sc.eval_scurve(p, 1.0), rel=1e-12)


def test_uniform_limit():
    p = sc.SCurveParams(a=sc.MIN_PERTURBATION, m=2.0)
    for x in (-3.0, -0.5, 0.25, 4.0):
        assert sc.eval_scurve(p, x) == pytest.approx(2.0 * x, abs=1e-6)


def test_superposition_matches_sum():
    sup = sc.Superposition(1.5, [sc.Component(p=0.5, m=1.0), sc.Component(p=0.25, m=-2.0, x_c=1.0)])
    x = 0.7
    expected = 0.5 * sc.eval_scurve(sc.SCurveParams(a=1.5, m=1.0), x) + 0.25 * sc.eval_scurve(
        sc.SCurveParams(a=1.5, m=-2.0, x_c=1.0), x
    )
    assert sc.eval_superposition(sup, x) == pytest.approx(expected, rel=1e-14)
    assert len(sup) == 2


def test_invalid_perturbation_raises():
    with pytest.raises(ValueError):
        sc.eval_scurve(sc.SCurveParams(a=1e-12, m=1.0), 0.5)


def test_ecdf_and_selection():
    cdf = sc.build_ecdf(sc.SampleColumn([1.0, 2.0, 2.0, 3.0]))
    assert list(cdf.xs) == [1.0, 2.0, 3.0]
    assert list(cdf.fractions) == [0.25, 0.75, 1.0]
    mode = sc.select_inflections_mode(cdf, 1)
    assert mode.points[0] == (2.0, 0.75)


def test_target_generators():
    sig = sc.gen_sigmoid_target(-5.0, 5.0, 101)
    assert sig.ys[50] == pytest.approx(0.5)
    assert sc.standard_normal_cdf(1.0) == pytest.approx(0.8413447460685429, abs=1e-12)


def test_fit_recovers_synthetic_parameters():
    truth = sc.Superposition(2.0, [sc.Component(p=1.0, m=0.5)])
    xs = [(-4.0 + 0.2 * k) for k in range(41)]
    table = sc.CurveTable(xs, [sc.eval_superposition(truth, x) for x in xs])
    config = sc.FitConfig()
    report = sc.fit(table, sc.InflectionSet([(0.0, 0.0)]), config)
    assert report.converged
    assert report.params.a == pytest.approx(2.0, rel=1e-4)
    assert report.params.components[0].m == pytest.approx(0.5, rel=1e-6)
    assert report.sse <= report.initial_sse


def test_iris_end_to_end():
    columns = sc.load_csv(iris_path())
    assert len(columns) == 12
    setosa_sl = columns[0]
    assert (setosa_sl.label, setosa_sl.group) == ("sepal_length", "Iris-setosa")
    cdf = sc.build_ecdf(setosa_sl)
    report = sc.fit(cdf, sc.select_inflections_mode(cdf, 1), sc.FitConfig())
    assert report.params.a == pytest.approx(1.519780, rel=1e-3)
    assert report.params.components[0].m == pytest.approx(1.086830, rel=1e-4)
    hist = sc.auto_histogram(setosa_sl)
    assert sc.normalized_peak(report.params, hist) == pytest.approx(0.193602, rel=1e-2)


def test_measures():
    sup = sc.Superposition(5.0, [sc.Component(p=1.0, m=0.7, x_c=2.0)])
    m_max, argmax = sc.max_slope(sup, -10.0, 10.0)
    assert (m_max, argmax) == (0.7, 2.0)
    assert sc.ratio_measure(1.0, 0.6) == pytest.approx(0.3)
    assert sc.nonlinearity_percent(sup, 0.7) == 0.0
    with pytest.raises(ValueError):
        sc.nonlinearity_percent(sup, 0.0)
