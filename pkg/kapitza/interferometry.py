"""Rotation sensing and molecule size limits of grating interferometers"""
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

from .common import ValidationError
from .common import require_positive
from .const import EARTH_ROTATION
from .const import PLANCK_H


@dataclass(frozen=True)
class SagnacConfig:
    """Three-grating interferometer.

    Parameters
    ----------
    k_g: float
         grating vector length (rad/m)
    L: float
       grating separation (m)
    v: float
       particle velocity (m/s)
    contrast: float
              fringe contrast, 0 < C <= 1
    count_rate: float
                detected particles per second
    """

    k_g: float
    L: float
    v: float
    contrast: float
    count_rate: float

    def __post_init__(self):
        require_positive(self.k_g, "grating vector")
        require_positive(self.L, "grating separation")
        require_positive(self.v, "velocity")
        require_positive(self.contrast, "contrast")
        require_positive(self.count_rate, "count rate")
        if np.any(np.asarray(self.contrast) > 1):
            raise ValidationError("contrast cannot exceed 1")

    def to_dict(self):
        return {
            "k_g_rad_m": self.k_g,
            "L_m": self.L,
            "v_m_s": self.v,
            "contrast": self.contrast,
            "count_rate_per_s": self.count_rate,
        }


def sagnac_resolution(cfg):
    """Phase per unit rotation rate R = k_g L^2 / v (s)."""
    return cfg.k_g * cfg.L ** 2 / cfg.v


def sagnac_sensitivity(cfg, earth_rotation=EARTH_ROTATION):
    """Shot-noise limited rotation sensitivity.

    Returns
    -------
    sensitivity: float
                 S = 1 / (R C sqrt(n)) in rad/s per sqrt(Hz)
    normalized: float
                S in units of the earth's rotation rate times s^(1/2)
    """
    sensitivity = 1.0 / (sagnac_resolution(cfg) * cfg.contrast * np.sqrt(cfg.count_rate))
    return sensitivity, sensitivity / earth_rotation


def molecule_transit_bound(density, size):
    """Transit time tau = (rho s^3) s^2 / h between the gratings (s)."""
    require_positive(density, "density")
    require_positive(size, "size")
    return density * size ** 5 / PLANCK_H


def size_for_transit(density, transit_time):
    """Largest molecule size (tau h / rho)^(1/5) for a transit time (m)."""
    require_positive(density, "density")
    require_positive(transit_time, "transit time")
    return (transit_time * PLANCK_H / density) ** 0.2
