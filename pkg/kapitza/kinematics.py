"""Particles, unit conventions and kinematics"""
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

import numpy as np

from .common import ValidationError
from .common import require_non_negative
from .common import require_positive
from .const import ATOMIC_MASS_UNIT
from .const import ELECTRON_VOLT
from .const import ELEMENTARY_CHARGE
from .const import HBAR
from .const import PLANCK_H
from .const import SPEED_OF_LIGHT


class FrequencyConvention(enum.Enum):
    """Whether a frequency is quoted in rad/s or in Hz."""

    ANGULAR = "angular"
    CYCLIC = "cyclic"

    @property
    def unit(self):
        return "rad/s" if self is FrequencyConvention.ANGULAR else "Hz"

    def to_angular(self, value):
        """Convert a value quoted in this convention to rad/s."""
        if self is FrequencyConvention.CYCLIC:
            return to_angular(value)
        return value

    def from_angular(self, value):
        """Convert a value in rad/s to this convention."""
        if self is FrequencyConvention.CYCLIC:
            return to_cyclic(value)
        return value


def to_angular(frequency):
    """Hz to rad/s"""
    return 2 * np.pi * frequency


def to_cyclic(omega):
    """rad/s to Hz"""
    return omega / (2 * np.pi)


def energy_from_ev(energy_ev):
    """eV to J"""
    return energy_ev * ELECTRON_VOLT


def mass_from_amu(mass_amu):
    """Atomic mass units to kg"""
    return mass_amu * ATOMIC_MASS_UNIT


def wavenumber(wavelength):
    """Wavenumber k = 2pi/lambda (rad/m)"""
    require_positive(wavelength, "wavelength")
    return 2 * np.pi / wavelength


def wavelength_to_omega(wavelength):
    """Angular frequency of light in vacuum (rad/s)"""
    return SPEED_OF_LIGHT * wavenumber(wavelength)


class Particle:
    """A diffracted particle.

    Parameters
    ----------
    name: str
    mass: float
          kg
    charge: float
            C; the charge that couples to the field (the electron charge
            for a free electron, the bound electron for an atom)
    lines: list of (omega0, weight)
           resonance angular frequencies (rad/s) and their weights.
           An empty list denotes a free charge.
    ionic_charge: float
                  net charge (C) of an ion, which adds a ponderomotive term
    """

    def __init__(self, name, mass, charge=ELEMENTARY_CHARGE, lines=None, ionic_charge=0.0):
        require_positive(mass, "mass of {}".format(name))
        lines = [(float(omega0), float(weight)) for omega0, weight in (lines or [])]
        for omega0, weight in lines:
            if not omega0 > 0:
                raise ValidationError(
                    "resonance frequency of {} must be positive".format(name)
                )
            if not weight > 0:
                raise ValidationError("line weight of {} must be positive".format(name))
        self.name = name
        self.mass = float(mass)
        self.charge = float(charge)
        self.lines = lines
        self.ionic_charge = float(ionic_charge)

    @classmethod
    def from_amu(cls, name, mass_amu, lines_nm=None, ionic_charge_e=0):
        """Build an atom or ion from its mass in u and (wavelength nm, weight) lines."""
        lines = [
            (wavelength_to_omega(wavelength_nm * 1e-9), weight)
            for wavelength_nm, weight in (lines_nm or [])
        ]
        return cls(
            name,
            mass_from_amu(mass_amu),
            ELEMENTARY_CHARGE,
            lines,
            ionic_charge_e * ELEMENTARY_CHARGE,
        )

    @property
    def is_free(self):
        return not self.lines

    def with_lines(self, lines):
        """Copy of this particle with a different line list."""
        return Particle(self.name, self.mass, self.charge, lines, self.ionic_charge)

    def to_dict(self):
        return {
            "name": self.name,
            "mass_kg": self.mass,
            "charge_C": self.charge,
            "ionic_charge_C": self.ionic_charge,
            "lines": [
                {"omega0_rad_s": omega0, "weight": weight}
                for omega0, weight in self.lines
            ],
        }

    def __eq__(self, other):
        return isinstance(other, Particle) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "Particle({}, mass={:.6e} kg, lines={})".format(
            self.name, self.mass, len(self.lines)
        )


def velocity_from_kinetic_energy(energy, mass):
    """Non-relativistic speed sqrt(2E/m).

    Parameters
    ----------
    energy: float
            J
    mass: float
          kg

    Returns
    -------
    velocity: float
              m/s
    """
    require_non_negative(energy, "kinetic energy")
    require_positive(mass, "mass")
    return np.sqrt(2 * energy / mass)


def de_broglie_wavelength(mass, velocity):
    """de Broglie wavelength h/(mv) in m."""
    require_positive(mass, "mass")
    if np.any(np.asarray(velocity) <= 0):
        raise ValidationError("de Broglie wavelength undefined for velocity <= 0")
    return PLANCK_H / (mass * velocity)


def recoil_frequency(mass, wavelength):
    """Recoil frequency eps = hbar k^2 / 2m in rad/s.

    Parameters
    ----------
    mass: float
          kg
    wavelength: float
                optical wavelength in m

    Returns
    -------
    epsilon: float
             rad/s
    """
    require_positive(mass, "mass")
    k = wavenumber(wavelength)
    return HBAR * k ** 2 / (2 * mass)


def interaction_time(waist, velocity):
    """Transit time w/v through a beam of width w."""
    require_non_negative(waist, "beam width")
    require_positive(velocity, "velocity")
    return waist / velocity


def bragg_velocity(mass, k):
    """Transverse velocity 2 hbar k / m at which lambda_dB = lambda_opt / 2."""
    require_positive(mass, "mass")
    return 2 * HBAR * k / mass


def bragg_angle(mass, velocity, wavelength):
    """Small-angle Bragg incidence lambda_dB / lambda_opt (rad)."""
    return de_broglie_wavelength(mass, velocity) / wavelength


def energy_spread(dt):
    """Energy uncertainty hbar / (2 dt) of a passage of duration dt (J)."""
    require_positive(dt, "interaction time")
    return HBAR / (2 * dt)
