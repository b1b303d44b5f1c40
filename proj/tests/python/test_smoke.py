"""Smoke tests for the Python bindings: construct, certify, integrate."""

import json
import math

import pytest

import jetgeo


def test_harmonic_certificate_closed_forms():
    f = jetgeo.Polynomial([0.0, 1.0])
    intervals = jetgeo.hill_intervals(f)
    assert len(intervals) == 1
    h = intervals[0]
    assert h.geo_class == jetgeo.GeoClass.XPeriodic
    assert h.lo == pytest.approx(-1.0, abs=1e-12)
    assert h.hi == pytest.approx(1.0, abs=1e-12)

    report = jetgeo.certify_interval(h, jetgeo.QuadratureSpec())
    assert report.period == pytest.approx(2.0 * math.pi, rel=1e-9)
    assert report.action == pytest.approx(math.pi, rel=1e-9)
    assert report.lambda_min == pytest.approx(math.pi / 2.0, rel=1e-9)
    assert report.delta_theta[0] == pytest.approx(0.0, abs=1e-10)
    assert report.delta_theta[1] == pytest.approx(math.pi, rel=1e-9)
    assert report.verdict == jetgeo.Verdict.NoPeriodicGeodesics


def test_no_hill_interval_raises_typed_error():
    with pytest.raises(jetgeo.NoHillIntervalError):
        jetgeo.hill_intervals(jetgeo.Polynomial([3.0]))


def test_chambers_refuse_certification():
    chambers = jetgeo.hill_intervals(jetgeo.Polynomial([-1.0, 0.0, 2.0]))
    assert len(chambers) == 2
    assert all(h.geo_class == jetgeo.GeoClass.EndpointCritical for h in chambers)
    with pytest.raises(jetgeo.CriticalEndpointError):
        jetgeo.certify_interval(chambers[0], jetgeo.QuadratureSpec())


def test_geodesic_returns_after_one_period():
    f = jetgeo.Polynomial([0.0, 1.0])
    start = jetgeo.State()
    start.x = -1.0
    start.px = 0.0
    start.thetas = [0.0, 0.0]
    traj = jetgeo.integrate_geodesic(f, start, 2.0 * math.pi, ode_tol=1e-10, sample_count=65)
    last = traj.samples[-1]
    assert last.x == pytest.approx(-1.0, abs=1e-6)
    assert last.px == pytest.approx(0.0, abs=1e-6)
    assert last.thetas[1] == pytest.approx(math.pi, abs=1e-6)
    assert traj.stats.max_energy_drift < 1e-7


def test_report_serialization_round_trip():
    f = jetgeo.Polynomial([0.0, 1.0])
    h = jetgeo.hill_intervals(f)[0]
    report = jetgeo.certify_interval(h, jetgeo.QuadratureSpec())
    text = jetgeo.period_report_json(report)
    parsed = json.loads(text)
    assert parsed["verdict"] == "no-periodic-geodesics"
    assert parsed["period"] == pytest.approx(report.period, rel=1e-15)
    back = jetgeo.parse_period_report(text)
    assert back.period == report.period
    assert back.lambda_min == report.lambda_min


def test_trajectory_csv_header():
    f = jetgeo.Polynomial([0.0, 1.0])
    start = jetgeo.State()
    start.x = -1.0
    start.thetas = [0.0, 0.0]
    traj = jetgeo.integrate_geodesic(f, start, 1.0, ode_tol=1e-10, sample_count=17)
    csv = jetgeo.trajectory_csv(f, traj)
    lines = csv.strip().split("\n")
    assert lines[0] == "t,x,p_x,theta_0,theta_1,energy_drift"
    assert len(lines) == 18
