"""Classical trajectories through the standing-wave potential"""
# Part of kapitza software
#
# Copyright (C) 2020 kapitza developers
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

import enum
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd
from tqdm.autonotebook import tqdm

from .common import NumericalError
from .common import RegimeWarning
from .common import ValidationError
from .common import log_step
from .common import require_positive
from .const import CLASSICAL_RK4_TOLERANCE
from .const import CLASSICAL_STEP_FACTOR
from .const import DEFAULT_ANGLE_RANGE
from .const import DEFAULT_SEED
from .const import DEFAULT_TRAJECTORIES
from .const import ELECTRON_MASS
from .const import ENSEMBLE_CHUNK
from .const import HBAR
from .const import HISTOGRAM_BINS
from .const import HISTOGRAM_RANGE_FACTOR
from .const import MAX_STEP_HALVINGS
from .const import N_SAMPLES
from .integrate import rk4_integrate
from .integrate import step_grid
from .kinematics import energy_from_ev
from .kinematics import interaction_time
from .kinematics import velocity_from_kinetic_energy
from .kinematics import wavenumber
from .potentials import Envelope
from .potentials import PotentialSpec
from .potentials import potential_gradient
from .presets import FIGURE7_ENERGY_EV
from .presets import FIGURE8_IMPULSE_PARAMETER
from .presets import FIGURE8_WAIST
from .presets import FIGURE8_WAVELENGTH

# fourth-order Yoshida composition of leapfrog steps
_CUBE_ROOT_2 = 2.0 ** (1.0 / 3.0)
_W1 = 1.0 / (2.0 - _CUBE_ROOT_2)
_W0 = -_CUBE_ROOT_2 / (2.0 - _CUBE_ROOT_2)
_DRIFTS = (0.5 * _W1, 0.5 * (_W0 + _W1), 0.5 * (_W0 + _W1), 0.5 * _W1)
_KICKS = (_W1, _W0, _W1)


class Sampling(enum.Enum):
    UNIFORM = "uniform"
    EXPLICIT = "explicit"


@dataclass
class TrajectoryConfig:
    """One particle crossing the standing wave.

    x0 is reduced modulo the potential period pi/k.
    """

    potential: PotentialSpec
    mass: float
    velocity: float
    x0: float = 0.0
    vx0: float = 0.0

    def __post_init__(self):
        require_positive(self.mass, "mass")
        require_positive(self.velocity, "longitudinal velocity")
        self.x0 = float(np.mod(self.x0, self.potential.period))
        self.vx0 = float(self.vx0)

    def to_dict(self):
        return {
            "potential": self.potential.to_dict(),
            "mass_kg": self.mass,
            "velocity_m_s": self.velocity,
            "x0_m": self.x0,
            "vx0_m_s": self.vx0,
        }


@dataclass
class EnsembleConfig:
    """Sampling and binning of a trajectory ensemble.

    angle_range None means HISTOGRAM_RANGE_FACTOR times the rainbow angle.
    """

    trajectories: int = DEFAULT_TRAJECTORIES
    sampling: Sampling = Sampling.UNIFORM
    positions: tuple = None
    seed: int = DEFAULT_SEED
    bins: int = HISTOGRAM_BINS
    angle_range: float = None

    def __post_init__(self):
        self.sampling = Sampling(self.sampling)
        if self.sampling is Sampling.EXPLICIT:
            if self.positions is None or len(self.positions) == 0:
                raise ValidationError("explicit sampling needs a list of positions")
            self.positions = tuple(float(x) for x in self.positions)
            self.trajectories = len(self.positions)
        if self.trajectories < 1:
            raise ValidationError("an ensemble needs at least one trajectory")
        if self.bins < 2:
            raise ValidationError("a histogram needs at least two bins")
        if self.angle_range is not None:
            require_positive(self.angle_range, "angle range")

    def initial_positions(self, period):
        if self.sampling is Sampling.EXPLICIT:
            return np.mod(np.asarray(self.positions), period)
        rng = np.random.default_rng(self.seed)
        return rng.uniform(0.0, period, self.trajectories)

    def to_dict(self):
        return {
            "trajectories": self.trajectories,
            "sampling": self.sampling.value,
            "seed": self.seed,
            "bins": self.bins,
            "angle_range_rad": self.angle_range,
        }


class DeflectionHistogram:
    """Far-field deflection angles binned on strictly increasing edges."""

    def __init__(self, edges, counts, max_energy_drift=None):
        edges = np.asarray(edges, dtype=float)
        counts = np.asarray(counts, dtype=np.int64)
        if len(edges) != len(counts) + 1 or np.any(np.diff(edges) <= 0):
            raise ValidationError("histogram edges must be strictly increasing")
        self.edges = edges
        self.counts = counts
        self.max_energy_drift = max_energy_drift

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def centers(self):
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def bin_width(self):
        return float(self.edges[1] - self.edges[0])

    def outer_peaks(self):
        """Centres of the most populated bin on either side of zero."""
        centers = self.centers
        negative = centers < 0
        positive = centers > 0
        left = centers[negative][np.argmax(self.counts[negative])]
        right = centers[positive][np.argmax(self.counts[positive])]
        return float(left), float(right)

    def to_frame(self):
        return pd.DataFrame({"bin_center_rad": self.centers, "count": self.counts})

    def __add__(self, other):
        if not np.array_equal(self.edges, other.edges):
            raise ValidationError("histograms with different edges cannot be added")
        drifts = [d for d in (self.max_energy_drift, other.max_energy_drift) if d is not None]
        return DeflectionHistogram(
            self.edges, self.counts + other.counts, max(drifts) if drifts else None
        )


def oscillation_frequency(potential, mass):
    """Small-oscillation angular frequency k sqrt(2 V0 / m) at a well bottom."""
    require_positive(mass, "mass")
    return potential.k * np.sqrt(2 * potential.depth / mass)


def well_bottoms_offset(potential):
    """Position of a well bottom inside the first period."""
    return 0.5 * potential.period if potential.sign > 0 else 0.0


def well_deviation(potential, x):
    """Signed distance to the nearest well bottom, in [-period/2, period/2)."""
    period = potential.period
    shifted = np.asarray(x) - well_bottoms_offset(potential) + 0.5 * period
    return np.mod(shifted, period) - 0.5 * period


def transverse_energy(potential, mass, x, v, t=None):
    return 0.5 * mass * np.asarray(v) ** 2 + potential.value(x, t)


def _acceleration(potential, mass, x, t=None):
    return potential_gradient(potential, x, t) / mass


class _Tracker:
    """Largest excursion from the starting well bottom."""

    def __init__(self, potential, x0):
        self.potential = potential
        self.bottom = x0 - well_deviation(potential, x0)
        self.excursion = np.zeros_like(x0)

    def reset(self):
        self.excursion[:] = 0.0

    def update(self, x):
        np.maximum(self.excursion, np.abs(x - self.bottom), out=self.excursion)

    def contained(self):
        return self.excursion <= 0.5 * self.potential.period


def _yoshida(potential, mass, x, v, t_end, h, n_samples, tracker=None):
    """Static-potential run. Returns final x, v, sampled path and energy drift."""
    grid = step_grid(0.0, t_end, h)
    h = grid[1] - grid[0]
    n_steps = len(grid) - 1
    keep = set()
    if n_samples:
        keep = set(np.round(np.linspace(0, n_steps, n_samples)).astype(int).tolist())
    times, xs, vs = [], [], []
    energy0 = transverse_energy(potential, mass, x, v)
    if 0 in keep:
        times.append(0.0)
        xs.append(x.copy())
        vs.append(v.copy())
    for step in range(1, n_steps + 1):
        for c, d in zip(_DRIFTS, _KICKS):
            x = x + c * h * v
            v = v + d * h * _acceleration(potential, mass, x)
        x = x + _DRIFTS[-1] * h * v
        if tracker is not None:
            tracker.update(x)
        if step in keep:
            times.append(grid[step])
            xs.append(x.copy())
            vs.append(v.copy())
    energy1 = transverse_energy(potential, mass, x, v)
    drift = np.abs(energy1 - energy0) / np.maximum(np.abs(energy0), potential.depth)
    return x, v, (np.array(times), np.array(xs), np.array(vs)), drift


def _rk4(potential, mass, x, v, t_end, h, n_samples, tracker=None):
    """Time-dependent run with step halving until final velocities agree."""
    y0 = np.stack([x, v])

    def rhs(t, y):
        return np.stack([y[1], _acceleration(potential, mass, y[0], t)])

    callback = None if tracker is None else (lambda t, y: tracker.update(y[0]))
    scale = max(
        potential.depth * potential.k * potential.effective_duration / mass,
        float(np.max(np.abs(v))),
    )
    previous = None
    for halving in range(MAX_STEP_HALVINGS + 1):
        if tracker is not None:
            tracker.reset()
        times, states, y = rk4_integrate(
            rhs, y0, step_grid(0.0, t_end, h), n_samples or 2, callback
        )
        converged = previous is not None and (
            np.max(np.abs(y[1] - previous[1])) <= CLASSICAL_RK4_TOLERANCE * scale
        )
        if converged:
            break
        previous = y
        h = h / 2
    else:
        raise NumericalError(
            "step-size underflow: trajectory did not converge after {} halvings".format(
                MAX_STEP_HALVINGS
            )
        )
    energy0 = transverse_energy(potential, mass, x, v, 0.0)
    energy1 = transverse_energy(potential, mass, y[0], y[1], t_end)
    drift = np.abs(energy1 - energy0) / np.maximum(np.abs(energy0), potential.depth)
    return y[0], y[1], (times, states[:, 0], states[:, 1]), drift


def _propagate(potential, mass, x0, vx0, n_samples=None, tracker=None):
    x = np.asarray(x0, dtype=float)
    v = np.broadcast_to(np.asarray(vx0, dtype=float), x.shape).copy()
    t_end = potential.duration
    omega = oscillation_frequency(potential, mass)
    if t_end == 0 or omega == 0:
        x_end = x + v * t_end
        times = np.linspace(0.0, t_end, max(n_samples or 2, 2))
        path = (times, x + np.outer(times, v), np.tile(v, (len(times), 1)))
        if tracker is not None:
            tracker.update(x_end)
        return x_end, v, path, np.zeros_like(x)
    h = CLASSICAL_STEP_FACTOR / omega
    if potential.envelope is Envelope.RECTANGULAR:
        return _yoshida(potential, mass, x, v, t_end, h, n_samples, tracker)
    return _rk4(potential, mass, x, v, t_end, h, n_samples, tracker)


def integrate_trajectory(cfg, n_samples=N_SAMPLES):
    """Integrate m x'' = sign V0(t) k sin(2kx) over the envelope window.

    A rectangular pulse is a static potential and is stepped with a
    fourth-order symplectic composition; other envelopes use Runge-Kutta
    with step halving.

    Parameters
    ----------
    cfg: TrajectoryConfig
    n_samples: int
               points of the stored path

    Returns
    -------
    result: dict
            final_vx (m/s), angle (rad), energy_drift and the path as a
            DataFrame of t, x, v_x
    """
    x, v, (times, xs, vs), drift = _propagate(
        cfg.potential, cfg.mass, np.array([cfg.x0]), cfg.vx0, n_samples
    )
    path = pd.DataFrame({"t": times, "x": xs[:, 0], "v_x": vs[:, 0]})
    return {
        "final_vx": float(v[0]),
        "angle": float(np.arctan(v[0] / cfg.velocity)),
        "energy_drift": float(drift[0]),
        "path": path,
    }


def rainbow_angle(cfg):
    """Impulse estimate V0 k dt_eff / (m v) of the largest deflection.

    A RegimeWarning is issued when w_osc dt_eff >= 1, where the estimate is
    no longer exact.
    """
    potential = cfg.potential
    dt = potential.effective_duration
    if oscillation_frequency(potential, cfg.mass) * dt >= 1:
        warnings.warn(
            "w_osc dt >= 1: impulse approximation of the rainbow angle is not exact",
            RegimeWarning,
        )
    return potential.depth * potential.k * dt / (cfg.mass * cfg.velocity)


def _histogram_edges(ensemble, cfg):
    angle_range = ensemble.angle_range
    if angle_range is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            angle_range = HISTOGRAM_RANGE_FACTOR * rainbow_angle(cfg)
        if angle_range == 0:
            angle_range = DEFAULT_ANGLE_RANGE
    return np.linspace(-angle_range, angle_range, ensemble.bins + 1)


def ensemble_histogram(ensemble, cfg):
    """Histogram of far-field deflection angles.

    Every trajectory shares the template cfg apart from its starting
    position. Angles beyond the range are counted in the outer bins.

    Parameters
    ----------
    ensemble: EnsembleConfig
    cfg: TrajectoryConfig
         template; its x0 is ignored

    Returns
    -------
    histogram: DeflectionHistogram
    """
    edges = _histogram_edges(ensemble, cfg)
    positions = ensemble.initial_positions(cfg.potential.period)
    counts = np.zeros(len(edges) - 1, dtype=np.int64)
    max_drift = 0.0
    with tqdm(total=len(positions), unit="trajectories", leave=False) as pbar:
        for start in range(0, len(positions), ENSEMBLE_CHUNK):
            chunk = positions[start : start + ENSEMBLE_CHUNK]
            _, v, _, drift = _propagate(cfg.potential, cfg.mass, chunk, cfg.vx0)
            angles = np.clip(np.arctan(v / cfg.velocity), edges[0], edges[-1])
            counts += np.histogram(angles, edges)[0]
            max_drift = max(max_drift, float(np.max(drift)))
            pbar.update(len(chunk))
    return DeflectionHistogram(edges, counts, max_drift)


def channelling_check(cfg, trajectories=1000, seed=DEFAULT_SEED):
    """Fraction of a uniform ensemble trapped in its starting well.

    A trajectory is channelled when it is bound at the peak depth and never
    leaves the well it started in.

    Returns
    -------
    report: dict
            channelled_fraction and periods_completed (w_osc dt / 2pi)
    """
    potential = cfg.potential
    omega = oscillation_frequency(potential, cfg.mass)
    periods = omega * potential.effective_duration / (2 * np.pi)
    if potential.depth == 0:
        return {"channelled_fraction": 0.0, "periods_completed": 0.0}
    x0 = EnsembleConfig(trajectories, seed=seed).initial_positions(potential.period)
    tracker = _Tracker(potential, x0)
    _propagate(potential, cfg.mass, x0, cfg.vx0, tracker=tracker)
    barrier = max(potential.signed_depth, 0.0)
    bound = transverse_energy(potential, cfg.mass, x0, cfg.vx0) < barrier
    fraction = float(np.mean(bound & tracker.contained()))
    return {"channelled_fraction": fraction, "periods_completed": float(periods)}


def focusing_check(cfg, trajectories=1000, seed=DEFAULT_SEED):
    """Spread about the well bottoms before and after the interaction.

    The ensemble starts cold (the template's vx0) and uniform over a period.

    Returns
    -------
    report: dict
            initial_spread, final_spread (m) and focused
    """
    potential = cfg.potential
    x0 = EnsembleConfig(trajectories, seed=seed).initial_positions(potential.period)
    x, _, _, _ = _propagate(potential, cfg.mass, x0, cfg.vx0)
    initial = float(np.std(well_deviation(potential, x0)))
    final = float(np.std(well_deviation(potential, x)))
    return {"initial_spread": initial, "final_spread": final, "focused": final < initial}


def quantum_classical_correspondence(spectrum, cfg, threshold=0.01, tolerance=0.25):
    """Compare the outermost populated quantum order with the rainbow angle.

    Parameters
    ----------
    spectrum: pd.DataFrame
              n and probability columns, as from diffraction_spectrum
    cfg: TrajectoryConfig

    Returns
    -------
    report: dict
            outermost_n, quantum_angle, rainbow_angle, ratio, agrees
    """
    potential = cfg.potential
    if potential.depth * potential.effective_duration / HBAR < 20:
        warnings.warn(
            "V0 dt / hbar < 20: quantum and classical deflections need not agree",
            RegimeWarning,
        )
    populated = spectrum[spectrum.probability > threshold]
    outermost = int(np.max(np.abs(populated.n))) if len(populated) else 0
    quantum_angle = outermost * HBAR * potential.k / (cfg.mass * cfg.velocity)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        theta_r = rainbow_angle(cfg)
    ratio = quantum_angle / theta_r if theta_r > 0 else np.nan
    return {
        "outermost_n": outermost,
        "quantum_angle": quantum_angle,
        "rainbow_angle": theta_r,
        "ratio": ratio,
        "agrees": bool(abs(ratio - 1) <= tolerance),
    }


def figure8_setup(impulse_parameter=FIGURE8_IMPULSE_PARAMETER):
    """10 eV electrons whose rectangular crossing has w_osc dt = impulse_parameter."""
    k = wavenumber(FIGURE8_WAVELENGTH)
    velocity = velocity_from_kinetic_energy(energy_from_ev(FIGURE7_ENERGY_EV), ELECTRON_MASS)
    dt = interaction_time(FIGURE8_WAIST, velocity)
    depth = 0.5 * ELECTRON_MASS * (impulse_parameter / (k * dt)) ** 2
    potential = PotentialSpec(depth, k, "ponderomotive", "rectangular", dt)
    return TrajectoryConfig(potential, ELECTRON_MASS, velocity)


def figure8_run(trajectories=DEFAULT_TRAJECTORIES, seed=DEFAULT_SEED, bins=HISTOGRAM_BINS):
    """Rainbow histogram of the impulse-regime electron ensemble."""
    cfg = figure8_setup()
    log_step("started rainbow ensemble of {} trajectories".format(trajectories))
    histogram = ensemble_histogram(EnsembleConfig(trajectories, seed=seed, bins=bins), cfg)
    log_step("finished rainbow ensemble")
    return cfg, histogram
