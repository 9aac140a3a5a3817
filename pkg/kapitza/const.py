"""Constants used in kapitza"""
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

from dataclasses import dataclass

import numpy as np
from scipy import constants as sp


def _nine_digits(value):
    """Round a constant to 9 significant digits."""
    return float("{:.8e}".format(value))


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA values in SI units, fixed to 9 significant digits."""

    # Planck constant (J s)
    planck_h: float = _nine_digits(sp.h)
    # reduced Planck constant, derived so that hbar = h / 2pi exactly
    hbar: float = _nine_digits(sp.h) / (2 * np.pi)
    # electron mass (kg)
    electron_mass: float = _nine_digits(sp.m_e)
    # elementary charge (C)
    elementary_charge: float = _nine_digits(sp.e)
    # vacuum permittivity (F/m)
    vacuum_permittivity: float = _nine_digits(sp.epsilon_0)
    # speed of light (m/s)
    speed_of_light: float = _nine_digits(sp.c)
    # atomic mass unit (kg)
    atomic_mass_unit: float = _nine_digits(sp.atomic_mass)
    # rotation rate of the earth used for sensitivity normalisation (rad/s)
    earth_rotation: float = 7e-5
    # electron volt (J)
    electron_volt: float = _nine_digits(sp.eV)


CONSTANTS = PhysicalConstants()

PLANCK_H = CONSTANTS.planck_h
HBAR = CONSTANTS.hbar
ELECTRON_MASS = CONSTANTS.electron_mass
ELEMENTARY_CHARGE = CONSTANTS.elementary_charge
VACUUM_PERMITTIVITY = CONSTANTS.vacuum_permittivity
SPEED_OF_LIGHT = CONSTANTS.speed_of_light
ATOMIC_MASS_UNIT = CONSTANTS.atomic_mass_unit
EARTH_ROTATION = CONSTANTS.earth_rotation
ELECTRON_VOLT = CONSTANTS.electron_volt

# relative gap |w^2 - w0^2| / w0^2 below which the undamped oscillator
# is treated as singular
RESONANCE_GUARD = 1e-6

# maximum drift of the total mode population over an evolution
NORM_TOLERANCE = 1e-8
# population above which a boundary mode forces a wider lattice
BOUNDARY_TOLERANCE = 1e-10
# smallest lattice half width |n|
MIN_LATTICE_HALF_WIDTH = 8
# half width grows as this factor times V0 dt / hbar
LATTICE_WIDTH_FACTOR = 4
# modes added on each side when a run is retried
LATTICE_WIDEN_STEP = 8
# retries with a widened lattice before giving up
MAX_LATTICE_RETRIES = 6
# step halvings before the step size is considered to underflow
MAX_STEP_HALVINGS = 8
# largest product of step and coupling rate
COUPLING_STEP_FACTOR = 0.02
# largest product of step and interaction-picture rotation rate
PHASE_STEP_FACTOR = 0.5
# number of time samples stored along an evolution
N_SAMPLES = 201
# width of the gaussian envelope window in units of dt
GAUSSIAN_WINDOW = 6.0

# largest product of leapfrog step and oscillation frequency
CLASSICAL_STEP_FACTOR = 2e-3
# agreement between successive halvings of a time-dependent trajectory run
CLASSICAL_RK4_TOLERANCE = 1e-8
# far-field histogram bins
HISTOGRAM_BINS = 201
# histogram half range in units of the rainbow angle
HISTOGRAM_RANGE_FACTOR = 3.0
# fallback histogram half range (rad) when the rainbow angle vanishes
DEFAULT_ANGLE_RANGE = 1e-6
# trajectories integrated together in one vectorised block
ENSEMBLE_CHUNK = 20000
# default ensemble size
DEFAULT_TRAJECTORIES = 10000
# default random seed
DEFAULT_SEED = 42

# regime thresholds
# negligible if U dt is below this
NEGLIGIBLE_PRODUCT = 0.3
# diffractive if 1/dt exceeds this multiple of sqrt(U eps)
DIFFRACTIVE_FACTOR = 3.0
# channelling requires U dt and U / eps above these
CHANNELLING_PRODUCT = 100.0
CHANNELLING_RATIO = 100.0
# channelling points with w_osc dt / 2pi in this band are lenses
LENS_BAND = (0.15, 0.6)

# optical periods averaged for the time-averaged force
FORCE_AVERAGE_PERIODS = 200
# samples per optical period for the time-averaged force
FORCE_SAMPLES_PER_PERIOD = 64

# longitudinal velocity (m/s) assumed for the ion/atom design table
TABLE2_VELOCITY = 1000.0

# conventions echoed into every output file
FREQUENCY_CONVENTION = "angular"
BESSEL_ARGUMENT = "ode"
FIELD_AMPLITUDE = "standing"

# nine significant digits in scientific notation
CSV_FLOAT_FORMAT = "%.8e"
# environment variable naming the default output directory
OUTPUT_DIR_ENV = "KAPITZA_OUTPUT_DIR"
