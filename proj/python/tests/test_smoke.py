import math

import numpy as np
import pytest

import bbmlab


def test_symbols():
    assert bbmlab.symbol(0.1, 2.0) == pytest.approx(8.0 / 1.04, rel=1e-15)
    assert bbmlab.symbol(None, 2.0) == 8.0
    zeros2, zeros3 = bbmlab.inflection_points(0.5)
    assert sorted(zeros2) == pytest.approx([-2 * math.sqrt(3), 2 * math.sqrt(3)])
    assert len(zeros3) == 4
    with pytest.raises(ValueError):
        bbmlab.symbol(2.0, 1.0)


def test_identity_check():
    report = bbmlab.identity_check(seed=1, samples=500)
    assert set(report) == {"z_prime_factored", "resonance_gap", "s2_zeros", "s3_zeros"}
    assert all(entry["pass"] for entry in report.values())
    assert report == bbmlab.identity_check(seed=1, samples=500)


def test_soliton_evolution():
    n, length = 1024, 80.0
    u0 = bbmlab.soliton(n, length)
    run = bbmlab.evolve(u0, length, eps=None, T=1.0, dt=1e-3, record_every=100)
    assert run["fields"].shape == (11, n)
    assert run["times"][-1] == pytest.approx(1.0)
    exact = bbmlab.soliton(n, length, t=1.0)
    err = math.sqrt(np.sum((run["fields"][-1] - exact) ** 2) * length / n)
    assert err < 1e-6
    assert max(run["drift"]) < 1e-8


def test_pair_and_fit():
    times, errors = bbmlab.run_pair(0.1, T=0.2, n=512, dt=2e-3)
    assert times[0] == 0.0 and errors[0] == 0.0
    assert max(errors) > 0.0
    fit = bbmlab.fit_power_law([(0.2, 0.04), (0.1, 0.01), (0.05, 0.0025)])
    assert fit["slope"] == pytest.approx(2.0, abs=1e-12)


def test_scaling_round_trip():
    length = 40.0
    x = np.asarray(bbmlab.grid_points(256, length))
    fields = np.stack([np.exp(-((x - t) ** 2)) for t in (0.0, 0.1, 0.2)])
    times = [0.0, 0.1, 0.2]
    t_phys, u, phys_length = bbmlab.rescale_to_physical(times, fields, length, 0.25)
    assert phys_length == pytest.approx(80.0)
    norm_w = math.sqrt(np.sum(fields[0] ** 2) * length / 256)
    norm_u = math.sqrt(np.sum(u[0] ** 2) * phys_length / 256)
    assert norm_u == pytest.approx(0.25**0.75 * norm_w, rel=1e-10)
    t_back, w, back_length = bbmlab.unscale_to_rescaled(t_phys, u, phys_length, 0.5)
    assert back_length == pytest.approx(length)
    assert np.max(np.abs(w - fields)) < 1e-10


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        bbmlab.grid_points(100, 1.0)
    with pytest.raises(ValueError):
        bbmlab.strichartz_ratio(0.1, q=10.0, r=3.0, ensemble_size=2)
    assert issubclass(bbmlab.InputError, bbmlab.Error)
