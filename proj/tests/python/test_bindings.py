# SPDX-License-Identifier: Apache-2.0
import math

import mpmath
import pytest
from scipy import stats

import fsorf


def test_version():
    assert fsorf.__version__ == "0.1.0"


@pytest.mark.parametrize("x", [0.1, 0.95, 2.1, 54.6])
def test_ln_gamma_matches_math(x):
    value, sign = fsorf.ln_gamma(x)
    assert sign == 1
    assert value == pytest.approx(math.lgamma(x), rel=1e-14, abs=1e-15)


def test_ln_gamma_pole():
    with pytest.raises(ArithmeticError):
        fsorf.ln_gamma(-2.0)


@pytest.mark.parametrize("z", [0.01, 1.0, 100.0])
def test_meijer_g_identities(z):
    assert fsorf.meijer_g(1, 0, [], [0.0], z) == pytest.approx(math.exp(-z), rel=1e-12)
    assert fsorf.meijer_g(1, 1, [0.0], [0.0], z) == pytest.approx(1.0 / (1.0 + z), rel=1e-12)


@pytest.mark.parametrize("z", [0.1, 2.0, 10.0])
def test_fso_kernel_against_mpmath(z):
    mpmath.mp.dps = 30
    xi2 = 10.45**2
    a = [1.0, 1.0 + xi2]
    b = [xi2, 4.0, 1.9, 0.0]
    expected = float(mpmath.meijerg([[1.0], [1.0 + xi2]], [[xi2, 4.0, 1.9], [0.0]], z))
    assert fsorf.meijer_g(3, 1, a, b, z) == pytest.approx(expected, rel=1e-9)
    assert fsorf.meijer_g_oracle(3, 1, a, b, z) == pytest.approx(expected, rel=1e-8)


def test_meijer_g_rejects_bad_arguments():
    with pytest.raises(ValueError):
        fsorf.meijer_g(1, 0, [], [0.0], -1.0)
    with pytest.raises(ValueError):
        fsorf.meijer_g(3, 0, [], [0.0], 1.0)


@pytest.mark.parametrize("gamma", [0.5, 3.0, 12.0])
def test_rf_cdfs_against_scipy(gamma):
    gbar = 3.0
    assert fsorf.cdf_rf(gamma, gbar, "alamouti") == pytest.approx(
        stats.gamma.cdf(gamma, a=2, scale=gbar), rel=1e-12
    )
    assert fsorf.cdf_rf(gamma, gbar, "as") == pytest.approx(
        stats.expon.cdf(gamma, scale=gbar) ** 2, rel=1e-12
    )


def test_fso_cdf_is_a_cdf():
    values = [fsorf.cdf_fso(g, 10.0) for g in (1e-3, 0.1, 1.0, 10.0, 100.0, 1e4)]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert values == sorted(values)
    assert values[-1] > 0.99


@pytest.mark.parametrize("scheme", ["alamouti", "as"])
@pytest.mark.parametrize("regime", ["moderate", "strong"])
def test_ber_closed_form_matches_quadrature(scheme, regime):
    for db in (0.0, 15.0, 30.0):
        closed = fsorf.ber(scheme, db, regime=regime)
        quad = fsorf.ber_quadrature(scheme, db, regime=regime)
        assert closed == pytest.approx(quad, rel=1e-6)


def test_outage_within_monte_carlo_interval():
    analytic = fsorf.outage("as", 20.0, regime="strong")
    mc = fsorf.simulate("as", 20.0, regime="strong", n_samples=200_000, seed=5)
    assert abs(mc["outage"]["estimate"] - analytic) <= 3 * mc["outage"]["ci95_half_width"]
    assert mc["outage"]["n_samples"] == 200_000


def test_simulate_is_reproducible_and_thread_invariant():
    a = fsorf.simulate("alamouti", 10.0, n_samples=50_000, seed=3)
    b = fsorf.simulate("alamouti", 10.0, n_samples=50_000, seed=3, n_workers=4)
    assert a == b


def test_bad_scheme_is_a_value_error():
    with pytest.raises(ValueError):
        fsorf.outage("mrc", 10.0)


def test_sweep_rows_and_csv():
    spec = fsorf.SweepSpec()
    spec.set_snr_db("0:30:5")
    spec.outputs = "analytic"
    rows = fsorf.run_sweep(spec)
    assert len(rows) == 14
    assert rows[0]["pout_mc"] is None
    assert rows[0]["ber_analytic"] > rows[6]["ber_analytic"]
    csv_text = fsorf.sweep_csv(spec)
    lines = csv_text.splitlines()
    assert lines[0].startswith("# fsorf 0.1.0 cmd=sweep")
    assert len(lines) == 2 + 14


def test_sweep_config_text():
    spec = fsorf.SweepSpec()
    spec.apply_config('{"scheme": "as", "snr_db": "10:20:5", "seed": 11}')
    assert spec.scheme == "as"
    assert spec.grid() == [10.0, 15.0, 20.0]
    assert spec.seed == 11
    with pytest.raises(ValueError):
        spec.apply_config("unknown_key=1")


def test_validate_suite():
    ok, report = fsorf.validate("special")
    assert ok
    assert "section special: PASS" in report
