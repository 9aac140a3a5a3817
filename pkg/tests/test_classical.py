import numpy as np
import pandas as pd
import pytest

from kapitza.classical import DeflectionHistogram
from kapitza.classical import EnsembleConfig
from kapitza.classical import TrajectoryConfig
from kapitza.classical import channelling_check
from kapitza.classical import ensemble_histogram
from kapitza.classical import figure8_run
from kapitza.classical import figure8_setup
from kapitza.classical import focusing_check
from kapitza.classical import integrate_trajectory
from kapitza.classical import oscillation_frequency
from kapitza.classical import quantum_classical_correspondence
from kapitza.classical import rainbow_angle
from kapitza.classical import well_deviation
from kapitza.common import RegimeWarning
from kapitza.common import ValidationError
from kapitza.const import ELECTRON_MASS
from kapitza.const import HBAR
from kapitza.kinematics import to_angular
from kapitza.kinematics import wavenumber
from kapitza.potentials import PotentialSpec

K = wavenumber(1064e-9)
VELOCITY = 1e6


def _electron(depth, omega_dt, envelope="rectangular"):
    """Electron crossing a potential whose w_osc dt equals omega_dt."""
    omega = K * np.sqrt(2 * depth / ELECTRON_MASS)
    potential = PotentialSpec(depth, K, envelope=envelope, dt=omega_dt / omega)
    return TrajectoryConfig(potential, ELECTRON_MASS, VELOCITY)


def _crossings(times, values):
    """Linearly interpolated zero crossings."""
    index = np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:]))
    t0, t1 = times[index], times[index + 1]
    v0, v1 = values[index], values[index + 1]
    return t0 - v0 * (t1 - t0) / (v1 - v0)


def test_no_potential_no_deflection():
    cfg = _electron(1e-23, 0.5)
    quiet = TrajectoryConfig(cfg.potential.replace(depth=0.0), ELECTRON_MASS, VELOCITY, x0=1e-7)
    result = integrate_trajectory(quiet)
    assert result["final_vx"] == 0.0
    assert result["angle"] == 0.0


def test_extrema_are_not_deflected():
    cfg = _electron(1e-23, 0.3)
    period = cfg.potential.period
    for x0 in (0.0, 0.5 * period):
        start = TrajectoryConfig(cfg.potential, ELECTRON_MASS, VELOCITY, x0=x0)
        assert abs(integrate_trajectory(start)["angle"]) < 1e-12 * rainbow_angle(cfg)


def test_small_oscillation_frequency():
    cfg = _electron(1e-23, 20 * np.pi)
    period = cfg.potential.period
    start = TrajectoryConfig(cfg.potential, ELECTRON_MASS, VELOCITY, x0=0.51 * period)
    path = integrate_trajectory(start, n_samples=4001)["path"]
    crossings = _crossings(path.t.values, well_deviation(cfg.potential, path.x.values))
    assert len(crossings) == 20
    measured = 2 * np.pi * (len(crossings) - 1) / (2 * (crossings[-1] - crossings[0]))
    assert measured == pytest.approx(oscillation_frequency(cfg.potential, ELECTRON_MASS), rel=0.01)


def test_symplectic_energy_drift():
    cfg = _electron(1e-23, 20 * np.pi)
    start = TrajectoryConfig(cfg.potential, ELECTRON_MASS, VELOCITY, x0=0.3 * cfg.potential.period)
    assert integrate_trajectory(start)["energy_drift"] <= 1e-8


@pytest.mark.parametrize("envelope", ["rectangular", "gaussian"])
def test_impulse_deflection_at_inflection(envelope):
    cfg = _electron(1e-23, 0.05, envelope)
    start = TrajectoryConfig(cfg.potential, ELECTRON_MASS, VELOCITY, x0=0.25 * cfg.potential.period)
    result = integrate_trajectory(start)
    assert result["angle"] == pytest.approx(rainbow_angle(cfg), rel=0.01)
    assert isinstance(result["path"], pd.DataFrame)


def test_rainbow_angle_scaling_and_warning():
    cfg = _electron(1e-23, 0.3)
    longer = TrajectoryConfig(cfg.potential.replace(dt=2 * cfg.potential.dt), ELECTRON_MASS, VELOCITY)
    assert rainbow_angle(longer) == pytest.approx(2 * rainbow_angle(cfg))
    with pytest.warns(RegimeWarning):
        rainbow_angle(_electron(1e-23, 2.0))


def test_rainbow_histogram():
    cfg, histogram = figure8_run(trajectories=100000)
    theta = rainbow_angle(cfg)
    left, right = histogram.outer_peaks()
    assert abs(right - theta) <= histogram.bin_width
    assert abs(left + theta) <= histogram.bin_width
    assert histogram.total == 100000
    assert histogram.max_energy_drift <= 1e-8


def test_histogram_symmetry():
    cfg = figure8_setup()
    histogram = ensemble_histogram(EnsembleConfig(20000, seed=7), cfg)
    counts = histogram.counts
    mirrored = counts[::-1]
    assert np.all(np.abs(counts - mirrored) <= 5 * np.sqrt(counts + mirrored) + 1)
    half = len(counts) // 2
    left, right = counts[:half].sum(), counts[half + 1 :].sum()
    assert abs(left - right) <= 4 * np.sqrt(left + right)


def test_histogram_is_deterministic_and_periodic():
    cfg = figure8_setup()
    first = ensemble_histogram(EnsembleConfig(5000, seed=3), cfg)
    second = ensemble_histogram(EnsembleConfig(5000, seed=3), cfg)
    assert np.array_equal(first.counts, second.counts)
    positions = EnsembleConfig(500, seed=5).initial_positions(cfg.potential.period)
    period = cfg.potential.period
    here = ensemble_histogram(EnsembleConfig(sampling="explicit", positions=positions), cfg)
    shifted = ensemble_histogram(EnsembleConfig(sampling="explicit", positions=positions + period), cfg)
    assert np.array_equal(here.counts, shifted.counts)


def test_quiet_ensemble_stays_centred():
    cfg = _electron(1e-23, 0.3)
    quiet = TrajectoryConfig(cfg.potential.replace(depth=0.0), ELECTRON_MASS, VELOCITY)
    histogram = ensemble_histogram(EnsembleConfig(1000), quiet)
    assert histogram.counts[len(histogram.counts) // 2] == 1000


def test_histogram_validation():
    with pytest.raises(ValidationError):
        DeflectionHistogram([0.0, 0.0, 1.0], [1, 2])
    with pytest.raises(ValidationError):
        EnsembleConfig(sampling="explicit")
    a = DeflectionHistogram([-1.0, 0.0, 1.0], [1, 2], 1e-12)
    b = DeflectionHistogram([-1.0, 0.0, 1.0], [3, 4], 1e-10)
    total = a + b
    assert list(total.counts) == [4, 6]
    assert total.max_energy_drift == 1e-10
    assert list(total.to_frame().columns) == ["bin_center_rad", "count"]


def _table1_point_f():
    """Cs at Table 1 point F, with the mass set by the quoted recoil."""
    k = wavenumber(852e-9)
    epsilon = to_angular(12e3)
    mass = HBAR * k ** 2 / (2 * epsilon)
    potential = PotentialSpec(HBAR * to_angular(45e6), k, dt=1 / 0.15e6)
    return TrajectoryConfig(potential, mass, 1.0)


def test_channelling_at_point_f():
    report = channelling_check(_table1_point_f(), trajectories=200)
    assert report["periods_completed"] == pytest.approx(9.8, rel=0.01)
    assert report["channelled_fraction"] > 0.9


def test_no_channelling_without_potential():
    cfg = _table1_point_f()
    quiet = TrajectoryConfig(cfg.potential.replace(depth=0.0), cfg.mass, cfg.velocity)
    assert channelling_check(quiet)["channelled_fraction"] == 0.0


def test_quarter_period_focuses():
    report = focusing_check(_electron(1e-23, 0.5 * np.pi), trajectories=2000)
    assert report["focused"]
    assert report["final_spread"] < report["initial_spread"]


def test_quantum_classical_correspondence():
    cfg = _electron(1e-23, 0.3)
    dt = 40 * HBAR / cfg.potential.depth
    strong = TrajectoryConfig(cfg.potential.replace(dt=dt), ELECTRON_MASS, VELOCITY)
    spectrum = pd.DataFrame({"n": [-40, -20, 0, 20, 40], "probability": [0.05, 0.2, 0.5, 0.2, 0.05]})
    report = quantum_classical_correspondence(spectrum, strong)
    assert report["outermost_n"] == 40
    assert report["ratio"] == pytest.approx(1.0)
    assert report["agrees"]
    narrow = spectrum[spectrum.n.abs() <= 20]
    assert not quantum_classical_correspondence(narrow, strong)["agrees"]
    weak = TrajectoryConfig(cfg.potential.replace(dt=dt / 4), ELECTRON_MASS, VELOCITY)
    with pytest.warns(RegimeWarning):
        quantum_classical_correspondence(spectrum, weak)
