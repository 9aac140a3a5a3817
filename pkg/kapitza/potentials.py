"""Standing-wave fields, driven velocities and interaction potentials"""
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
import json

import numpy as np
import pandas as pd
from scipy.special import erf

from .common import ResonanceError
from .common import ValidationError
from .common import require_non_negative
from .common import require_positive
from .const import ELECTRON_MASS
from .const import ELEMENTARY_CHARGE
from .const import FIELD_AMPLITUDE
from .const import FORCE_AVERAGE_PERIODS
from .const import FORCE_SAMPLES_PER_PERIOD
from .const import GAUSSIAN_WINDOW
from .const import RESONANCE_GUARD
from .const import SPEED_OF_LIGHT
from .const import VACUUM_PERMITTIVITY
from .kinematics import wavelength_to_omega
from .kinematics import wavenumber


class PotentialKind(enum.Enum):
    PONDEROMOTIVE = "ponderomotive"
    LIGHTSHIFT = "lightshift"


class Envelope(enum.Enum):
    RECTANGULAR = "rectangular"
    GAUSSIAN = "gaussian"


class LaserBeam:
    """Laser beam forming the standing wave.

    Parameters
    ----------
    wavelength: float
                m
    intensity: float
               W/m^2
    waist: float
           width w along the particle path (m)
    height: float
            extent perpendicular to the path (m)
    """

    def __init__(self, wavelength, intensity, waist, height=1e-3):
        require_positive(wavelength, "wavelength")
        require_non_negative(intensity, "intensity")
        require_positive(waist, "beam waist")
        require_positive(height, "beam height")
        self.wavelength = float(wavelength)
        self.intensity = float(intensity)
        self.waist = float(waist)
        self.height = float(height)

    @property
    def k(self):
        return wavenumber(self.wavelength)

    @property
    def omega(self):
        return wavelength_to_omega(self.wavelength)

    def standing_wave(self):
        return StandingWave(amplitude_from_intensity(self.intensity, self.omega), self.k)

    def to_dict(self):
        return {
            "wavelength_m": self.wavelength,
            "intensity_W_m2": self.intensity,
            "waist_m": self.waist,
            "height_m": self.height,
        }

    def __repr__(self):
        return "LaserBeam(wavelength={:.4e}, intensity={:.4e}, waist={:.4e})".format(
            self.wavelength, self.intensity, self.waist
        )


def beam_from_power(wavelength, power, waist, height):
    """Beam of power P focused to a w x h spot, I = P/(w h)."""
    require_positive(waist, "beam waist")
    require_positive(height, "beam height")
    return LaserBeam(wavelength, power / (waist * height), waist, height)


class StandingWave:
    """Vector-potential amplitude A0, wavenumber k and frequency omega = c k."""

    def __init__(self, A0, k, omega=None):
        require_non_negative(A0, "vector potential amplitude")
        require_positive(k, "wavenumber")
        self.A0 = float(A0)
        self.k = float(k)
        self.omega = float(SPEED_OF_LIGHT * k if omega is None else omega)

    @property
    def wavelength(self):
        return 2 * np.pi / self.k

    def __repr__(self):
        return "StandingWave(A0={:.4e}, k={:.4e}, omega={:.4e})".format(
            self.A0, self.k, self.omega
        )


class PotentialSpec:
    """Potential sign * V0(t) * cos^2(kx).

    Parameters
    ----------
    depth: float
           V0 >= 0 (J), the coefficient of cos^2(kx)
    k: float
       optical wavenumber (rad/m); the potential period is pi/k
    kind: PotentialKind or str
    envelope: Envelope or str
              rectangular occupies [0, dt]; gaussian is
              exp(-2 (t - tc)^2 / dt^2) centred in a window of GAUSSIAN_WINDOW dt
    dt: float
        interaction time w/v (s)
    sign: int
          +1 repulsive from the antinodes, -1 attractive
    """

    def __init__(self, depth, k, kind="ponderomotive", envelope="rectangular", dt=0.0, sign=1):
        require_non_negative(depth, "potential depth")
        require_positive(k, "wavenumber")
        require_non_negative(dt, "interaction time")
        if sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1, got {}".format(sign))
        self.depth = float(depth)
        self.k = float(k)
        self.kind = PotentialKind(kind)
        self.envelope = Envelope(envelope)
        self.dt = float(dt)
        self.sign = int(sign)

    @classmethod
    def from_signed(cls, value, k, kind, envelope, dt):
        """Split a signed depth into magnitude and sign."""
        return cls(abs(value), k, kind, envelope, dt, -1 if value < 0 else 1)

    def replace(self, **kwargs):
        params = dict(
            depth=self.depth,
            k=self.k,
            kind=self.kind,
            envelope=self.envelope,
            dt=self.dt,
            sign=self.sign,
        )
        params.update(kwargs)
        return PotentialSpec(**params)

    @property
    def period(self):
        return np.pi / self.k

    @property
    def signed_depth(self):
        return self.sign * self.depth

    @property
    def duration(self):
        """Length of the time window over which the envelope is applied."""
        if self.envelope is Envelope.GAUSSIAN:
            return GAUSSIAN_WINDOW * self.dt
        return self.dt

    @property
    def center(self):
        return 0.5 * GAUSSIAN_WINDOW * self.dt

    @property
    def effective_duration(self):
        """Time integral of the envelope over its window."""
        return self.envelope_integral(self.duration)

    def envelope_at(self, t):
        """Envelope factor in [0, 1] at time t."""
        t = np.asarray(t, dtype=float)
        if self.envelope is Envelope.GAUSSIAN:
            if self.dt == 0:
                return np.zeros_like(t)
            return np.exp(-2 * ((t - self.center) / self.dt) ** 2)
        return np.where((t >= 0) & (t <= self.dt), 1.0, 0.0)

    def envelope_integral(self, t):
        """Integral of the envelope from 0 to t."""
        t = np.asarray(t, dtype=float)
        if self.envelope is Envelope.GAUSSIAN:
            if self.dt == 0:
                return np.zeros_like(t)
            scale = self.dt * np.sqrt(np.pi / 8)
            root2 = np.sqrt(2) / self.dt
            return scale * (erf(root2 * (t - self.center)) + erf(root2 * self.center))
        return np.clip(t, 0.0, self.dt)

    def depth_at(self, t):
        """Signed depth sign * V0(t) (J)."""
        return self.signed_depth * self.envelope_at(t)

    def pulse_area(self, t):
        """Signed time integral of V0(t) from 0 to t (J s)."""
        return self.signed_depth * self.envelope_integral(t)

    def segments(self, total_time):
        """Split [0, total_time] where the envelope is not smooth.

        Returns
        -------
        segments: list of (start, end, depth)
                  depth is the constant signed depth on the segment, or None
                  when it varies and must be taken from depth_at
        """
        if self.envelope is Envelope.GAUSSIAN:
            return [(0.0, total_time, None)]
        if self.dt >= total_time:
            return [(0.0, total_time, self.signed_depth)]
        segments = [(self.dt, total_time, 0.0)]
        if self.dt > 0:
            segments.insert(0, (0.0, self.dt, self.signed_depth))
        return segments

    def value(self, x, t=None):
        """V(x, t); at the envelope peak when t is None."""
        depth = self.signed_depth if t is None else self.depth_at(t)
        return depth * np.cos(self.k * np.asarray(x)) ** 2

    def to_dict(self):
        return {
            "depth_J": self.depth,
            "k_rad_m": self.k,
            "kind": self.kind.value,
            "envelope": self.envelope.value,
            "dt_s": self.dt,
            "sign": self.sign,
        }

    def __repr__(self):
        return "PotentialSpec({}, V0={:.4e} J, sign={:+d}, {}, dt={:.4e})".format(
            self.kind.value, self.depth, self.sign, self.envelope.value, self.dt
        )


def potential_gradient(spec, x, t=None):
    """Force -dV/dx = sign V0(t) k sin(2kx)."""
    depth = spec.signed_depth if t is None else spec.depth_at(t)
    return depth * spec.k * np.sin(2 * spec.k * np.asarray(x))


def fields_at(sw, x, t):
    """Standing-wave fields.

    Parameters
    ----------
    sw: StandingWave
    x: float or array
       m
    t: float or array
       s

    Returns
    -------
    E_z: array
         A0 omega cos(kx) cos(omega t), V/m
    B_y: array
         A0 k sin(kx) sin(omega t), T
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    E_z = sw.A0 * sw.omega * np.cos(sw.k * x) * np.cos(sw.omega * t)
    B_y = sw.A0 * sw.k * np.sin(sw.k * x) * np.sin(sw.omega * t)
    return E_z, B_y


def amplitude_from_intensity(intensity, omega):
    """Vector-potential amplitude A0 = sqrt(2I / (eps0 c omega^2))."""
    require_non_negative(intensity, "intensity")
    if np.any(np.asarray(omega) <= 0):
        raise ValidationError("angular frequency must be positive")
    return np.sqrt(2 * intensity / (VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * omega ** 2))


def field_amplitude(sw, convention=FIELD_AMPLITUDE):
    """Electric field amplitude E0 entering the lightshift.

    standing: A0 omega, the amplitude of the standing wave.
    travelling: A0 omega / 2, the amplitude of each counter-propagating beam.
    """
    if convention == "standing":
        return sw.A0 * sw.omega
    if convention == "travelling":
        return 0.5 * sw.A0 * sw.omega
    raise ValidationError("unknown field amplitude convention: {}".format(convention))


def check_resonance(omega, omega0, guard=RESONANCE_GUARD):
    """Raise ResonanceError when omega lies inside the guard band of omega0."""
    if omega0 > 0 and abs(omega ** 2 - omega0 ** 2) / omega0 ** 2 < guard:
        raise ResonanceError(
            "on-resonance singular: omega={:.9e} within relative {} of omega0={:.9e}".format(
                omega, guard, omega0
            )
        )


def free_electron_velocity(sw, x, t, q=ELEMENTARY_CHARGE, m=ELECTRON_MASS):
    """Quiver velocity v_z = (q A0 / m) cos(kx) sin(omega t)."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return q * sw.A0 / m * np.cos(sw.k * x) * np.sin(sw.omega * t)


def bound_charge_velocity(sw, omega0, q, m, x, t, guard=RESONANCE_GUARD):
    """Velocity of a charge on a spring driven from rest.

    v_z = (q E0 / m) (omega sin(omega t) - omega0 sin(omega0 t))
          / (omega^2 - omega0^2) cos(kx),   E0 = A0 omega
    """
    check_resonance(sw.omega, omega0, guard)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    drive = q * sw.A0 * sw.omega / m
    response = (
        sw.omega * np.sin(sw.omega * t) - omega0 * np.sin(omega0 * t)
    ) / (sw.omega ** 2 - omega0 ** 2)
    return drive * response * np.cos(sw.k * x)


def lorentz_force(sw, v_z, x, t, q=ELEMENTARY_CHARGE):
    """Force along the standing-wave axis, q v_z B_y."""
    _, B_y = fields_at(sw, x, t)
    return q * v_z * B_y


def time_averaged_force(
    sw,
    x,
    q=ELEMENTARY_CHARGE,
    m=ELECTRON_MASS,
    omega0=None,
    n_periods=FORCE_AVERAGE_PERIODS,
    samples_per_period=FORCE_SAMPLES_PER_PERIOD,
    guard=RESONANCE_GUARD,
):
    """Time average of q v_z B_y at a fixed position.

    The window spans whole optical periods and, for a bound charge, whole
    beat periods 2pi/|omega - omega0| so that the transient term averages out.

    Parameters
    ----------
    sw: StandingWave
    x: float
       m
    omega0: float or None
            resonance of a bound charge; None for a free charge

    Returns
    -------
    force: float
           N
    """
    periods = float(n_periods)
    if omega0:
        check_resonance(sw.omega, omega0, guard)
        beat = sw.omega / abs(sw.omega - omega0)
        periods = np.ceil(periods / beat) * beat
    n_samples = int(np.ceil(periods * samples_per_period))
    t = np.arange(n_samples) * (periods * 2 * np.pi / sw.omega / n_samples)
    if omega0:
        v_z = bound_charge_velocity(sw, omega0, q, m, x, t, guard)
    else:
        v_z = free_electron_velocity(sw, x, t, q, m)
    return float(np.mean(lorentz_force(sw, v_z, x, t, q)))


def ponderomotive_depth(beam, q=ELEMENTARY_CHARGE, m=ELECTRON_MASS):
    """Ponderomotive depth q^2 I / (2 eps0 c m omega^2) = q^2 A0^2 / 4m (J)."""
    require_positive(m, "mass")
    return q ** 2 * beam.intensity / (
        2 * VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * m * beam.omega ** 2
    )


def lightshift_depth(
    beam,
    line,
    q=ELEMENTARY_CHARGE,
    m=ELECTRON_MASS,
    convention=FIELD_AMPLITUDE,
    guard=RESONANCE_GUARD,
):
    """Signed lightshift depth of one resonance line.

    Parameters
    ----------
    beam: LaserBeam
    line: (float, float)
          resonance angular frequency omega0 (rad/s) and weight
    q, m: float
          charge and mass of the bound oscillator

    Returns
    -------
    depth: float
           1/4 (q^2/m) / (omega^2 - omega0^2) E0^2 weight; negative below
           resonance
    """
    omega0, weight = line
    check_resonance(beam.omega, omega0, guard)
    E0 = field_amplitude(beam.standing_wave(), convention)
    return 0.25 * (q ** 2 / m) / (beam.omega ** 2 - omega0 ** 2) * E0 ** 2 * weight


def multiline_lightshift(
    beam, particle, convention=FIELD_AMPLITUDE, guard=RESONANCE_GUARD
):
    """Signed sum of lightshift depths over the particle's lines."""
    if particle.is_free:
        raise ValidationError(
            "{} has no resonance lines; use the ponderomotive depth".format(particle.name)
        )
    return sum(
        lightshift_depth(beam, line, particle.charge, ELECTRON_MASS, convention, guard)
        for line in particle.lines
    )


def combined_depth(beam, particle, convention=FIELD_AMPLITUDE, guard=RESONANCE_GUARD):
    """Signed depth felt by a particle.

    Free charges see the ponderomotive depth. Atoms see the lightshift of
    their lines, and ions additionally the ponderomotive term of their net
    charge.
    """
    if particle.is_free:
        return ponderomotive_depth(beam, particle.charge, particle.mass)
    depth = multiline_lightshift(beam, particle, convention, guard)
    if particle.ionic_charge:
        depth += ponderomotive_depth(beam, particle.ionic_charge, particle.mass)
    return depth


def polarisability(omega, omega0, q=ELEMENTARY_CHARGE, m=ELECTRON_MASS, guard=RESONANCE_GUARD):
    """Classical polarisability (q^2/m) / (omega0^2 - omega^2)."""
    check_resonance(omega, omega0, guard)
    return (q ** 2 / m) / (omega0 ** 2 - omega ** 2)


def potential_for(beam, particle, envelope="rectangular", dt=0.0, convention=FIELD_AMPLITUDE):
    """PotentialSpec for a particle crossing a beam."""
    kind = PotentialKind.PONDEROMOTIVE if particle.is_free else PotentialKind.LIGHTSHIFT
    value = combined_depth(beam, particle, convention)
    return PotentialSpec.from_signed(value, beam.k, kind, envelope, dt)


def read_line_list(path):
    """Read resonance lines from a JSON or whitespace separated text file.

    JSON: a list of {"wavelength_nm": float, "weight": float}
    text: one "wavelength_nm weight" pair per line, '#' starts a comment

    Returns
    -------
    lines: list of (omega0, weight)
    """
    if str(path).endswith(".json"):
        with open(path) as handle:
            try:
                records = json.load(handle)
            except ValueError as error:
                raise ValidationError("malformed line list {}: {}".format(path, error))
        if not isinstance(records, list):
            raise ValidationError("line list {} must be a JSON list".format(path))
        df = pd.DataFrame(records)
    else:
        df = pd.read_csv(
            path,
            sep=r"\s+",
            comment="#",
            header=None,
            names=["wavelength_nm", "weight"],
        )
    if df.empty or set(df.columns) != {"wavelength_nm", "weight"}:
        raise ValidationError(
            "line list {} needs wavelength_nm and weight columns".format(path)
        )
    try:
        df = df.astype(float)
    except ValueError as error:
        raise ValidationError("non-numeric entry in line list {}: {}".format(path, error))
    if (df.wavelength_nm <= 0).any() or (df.weight <= 0).any():
        raise ValidationError("line list {} has non-positive entries".format(path))
    return [
        (wavelength_to_omega(wavelength_nm * 1e-9), weight)
        for wavelength_nm, weight in zip(df.wavelength_nm, df.weight)
    ]
