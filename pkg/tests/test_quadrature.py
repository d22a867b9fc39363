import numpy as np
import pytest

from sievebound import default_params, domain, integrate
from sievebound.buchstab import omega_upper
from sievebound.quadrature import BudgetTooSmall, NonFiniteSample
from sievebound.regions import Clause, RegionSpec


def rect_spec(bounds, clauses=()):
    return RegionSpec(
        name="rect",
        dim=len(bounds),
        bounds=tuple(bounds),
        clauses=tuple(clauses),
        chart=(),
        params=default_params(),
    )


def test_constant_over_full_box():
    spec = rect_spec([(0.0, 0.5), (0.0, 0.25)])
    est = integrate(spec, lambda pts: np.ones(len(pts)), budget=20_000, seed=3)
    assert est.value == pytest.approx(0.125, abs=1e-12)
    assert est.std_err == 0.0
    assert est.samples > 0


def test_empty_member_gives_zero():
    never = Clause("never", lambda cols: np.zeros(cols[0].shape[0], dtype=bool))
    spec = rect_spec([(0.0, 1.0), (0.0, 1.0)], clauses=[never])
    est = integrate(spec, lambda pts: np.ones(len(pts)), budget=20_000, seed=3)
    assert est.value == 0.0
    assert est.std_err == 0.0


def gauss_legendre_oracle():
    """Tensor Gauss-Legendre integral of the two-variable envelope integrand
    over [0.3, 0.4] x [0.1, 0.12]; independent of the sampling engine."""
    x, wx = np.polynomial.legendre.leggauss(40)
    t1 = 0.35 + 0.05 * x
    w1 = 0.05 * wx
    t2 = 0.11 + 0.01 * x
    w2 = 0.01 * wx
    total = 0.0
    for a, wa in zip(t1, w1):
        u = (1.0 - a - t2) / t2
        total += wa * np.sum(w2 * omega_upper(u) / (a * t2**2))
    return total


def two_var_integrand(pts):
    t1, t2 = pts.T
    return omega_upper((1.0 - t1 - t2) / t2) / (t1 * t2**2)


def test_rectangle_matches_gauss_oracle():
    oracle = gauss_legendre_oracle()
    spec = rect_spec([(0.3, 0.4), (0.1, 0.12)])
    est = integrate(spec, two_var_integrand, budget=200_000, seed=11)
    # agreement to three significant digits
    assert est.value == pytest.approx(oracle, rel=5e-4)
    assert abs(est.value - oracle) < 3 * max(est.std_err, 1e-7) + 1e-3 * abs(oracle)


def test_linearity_same_seed():
    spec = rect_spec([(0.3, 0.4), (0.1, 0.12)])
    f = two_var_integrand

    def g(pts):
        return np.ones(len(pts))

    a, b = 2.5, -0.75
    est_f = integrate(spec, f, budget=40_000, seed=5)
    est_g = integrate(spec, g, budget=40_000, seed=5)
    est_mix = integrate(
        spec, lambda pts: a * f(pts) + b * g(pts), budget=40_000, seed=5
    )
    assert est_mix.value == pytest.approx(a * est_f.value + b * est_g.value, rel=1e-12)


def test_seed_determinism_bitexact():
    spec = rect_spec([(0.3, 0.4), (0.1, 0.12)])
    e1 = integrate(spec, two_var_integrand, budget=50_000, seed=42)
    e2 = integrate(spec, two_var_integrand, budget=50_000, seed=42)
    assert e1 == e2
    e3 = integrate(spec, two_var_integrand, budget=50_000, seed=43)
    assert e3.value != e1.value


def test_worker_count_does_not_change_result():
    spec = rect_spec([(0.3, 0.4), (0.1, 0.12)])
    e1 = integrate(spec, two_var_integrand, budget=50_000, seed=9, workers=1)
    e2 = integrate(spec, two_var_integrand, budget=50_000, seed=9, workers=4)
    assert e1 == e2


def test_budget_too_small():
    spec = rect_spec([(0.0, 1.0)])
    with pytest.raises(BudgetTooSmall):
        integrate(spec, lambda pts: np.ones(len(pts)), budget=5_000, seed=0)


def test_non_finite_sample_reports_point():
    spec = rect_spec([(0.0, 1.0), (0.0, 1.0)])

    def bad(pts):
        with np.errstate(divide="ignore", invalid="ignore"):
            return 1.0 / (pts[:, 0] - pts[:, 0])  # all-NaN

    with pytest.raises(NonFiniteSample) as exc:
        integrate(spec, bad, budget=10_000, seed=0)
    assert len(exc.value.point) == 2


def test_chart_and_box_agree_on_sc(params):
    spec = domain(params, "SC")
    f = two_var_integrand  # same shape as the SC integrand with the envelope
    chart = integrate(spec, f, budget=400_000, seed=2, use_chart=True)
    box = integrate(spec, f, budget=400_000, seed=2, use_chart=False)
    tol = 3 * np.hypot(chart.std_err, box.std_err)
    assert abs(chart.value - box.value) < max(tol, 2e-3)


def test_indicator_volume_sanity(params, rng):
    # volume of SC via the engine vs a plain Monte Carlo indicator oracle
    spec = domain(params, "SC")
    est = integrate(spec, lambda pts: np.ones(len(pts)), budget=500_000, seed=4)
    lo = np.array([b[0] for b in spec.bounds])
    hi = np.array([b[1] for b in spec.bounds])
    n = 2_000_000
    pts = lo + rng.random((n, 2)) * (hi - lo)
    hits = spec.mask(pts)
    box_vol = float(np.prod(hi - lo))
    mc = box_vol * hits.mean()
    mc_err = box_vol * hits.std() / np.sqrt(n)
    assert abs(est.value - mc) < 3 * np.hypot(est.std_err, mc_err) + 1e-4


def test_stratified_mode_agrees(params):
    spec = domain(params, "SC")
    f = two_var_integrand
    plain = integrate(spec, f, budget=300_000, seed=6, mode="plain_qmc")
    strat = integrate(spec, f, budget=300_000, seed=6, mode="stratified")
    assert strat.mode == "stratified"
    tol = 4 * np.hypot(plain.std_err, strat.std_err)
    assert abs(plain.value - strat.value) < max(tol, 2e-3)
    again = integrate(spec, f, budget=300_000, seed=6, mode="stratified")
    assert again == strat
