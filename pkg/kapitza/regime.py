"""Scattering regimes on the (U/eps, 1/(eps dt)) plane"""
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
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .common import ValidationError
from .common import require_non_negative
from .const import CHANNELLING_PRODUCT
from .const import CHANNELLING_RATIO
from .const import DIFFRACTIVE_FACTOR
from .const import HBAR
from .const import LENS_BAND
from .const import NEGLIGIBLE_PRODUCT
from .kinematics import to_angular
from .presets import TABLE1


class RegimeLabel(enum.Enum):
    NEGLIGIBLE = "negligible"
    DIFFRACTIVE = "diffractive"
    BRAGG = "bragg"
    CHANNELLING = "channelling"
    LENS = "lens"


@dataclass(frozen=True)
class RegimeThresholds:
    """Boundaries between the regimes.

    negligible_product: U dt below which nothing scatters
    diffractive_factor: diffractive when (1/dt) / 2pi > factor sqrt(U eps)
    channelling_product, channelling_ratio: channelling needs U dt and U/eps
        above both
    lens_band: channelling points with w_osc dt / 2pi inside the band focus
    """

    negligible_product: float = NEGLIGIBLE_PRODUCT
    diffractive_factor: float = DIFFRACTIVE_FACTOR
    channelling_product: float = CHANNELLING_PRODUCT
    channelling_ratio: float = CHANNELLING_RATIO
    lens_band: tuple = LENS_BAND


@dataclass(frozen=True)
class RegimePoint:
    """Rates in rad/s: U = V0/hbar, inv_dt = 2pi/dt and the recoil frequency."""

    U: float
    inv_dt: float
    epsilon: float
    label: str = None
    name: str = None

    def __post_init__(self):
        require_non_negative(self.U, "U")
        require_non_negative(self.inv_dt, "1/dt")
        require_non_negative(self.epsilon, "recoil frequency")

    @property
    def dt(self):
        if self.inv_dt == 0:
            raise ValidationError("interaction time undefined for 1/dt = 0")
        return 2 * np.pi / self.inv_dt


def point_from_table(name, U_MHz, inv_dt_MHz, epsilon_kHz, label=None):
    """RegimePoint from cyclic table columns (MHz, MHz, kHz)."""
    return RegimePoint(
        to_angular(U_MHz * 1e6),
        to_angular(inv_dt_MHz * 1e6),
        to_angular(epsilon_kHz * 1e3),
        label,
        name,
    )


def table1_points():
    return [
        point_from_table(point, U, inv_dt, epsilon, label)
        for point, _, U, inv_dt, epsilon, label in TABLE1
    ]


def regime_coordinates(p):
    """Dimensionless coordinates (U/eps, 1/(eps dt)).

    Parameters
    ----------
    p: RegimePoint

    Returns
    -------
    u: float
       U / eps
    tau: float
         inv_dt / eps
    """
    if not p.epsilon > 0:
        raise ValidationError("regime coordinates need a positive recoil frequency")
    if not p.inv_dt > 0:
        raise ValidationError("regime coordinates need a finite interaction time")
    return p.U / p.epsilon, p.inv_dt / p.epsilon


def classify_regime(p, thresholds=RegimeThresholds()):
    """Label a point by its position on the regime plane.

    The label depends only on the dimensionless coordinates, so a common
    rescaling of the three rates leaves it unchanged.

    Parameters
    ----------
    p: RegimePoint
    thresholds: RegimeThresholds

    Returns
    -------
    label: RegimeLabel
    """
    u, tau = regime_coordinates(p)
    # U dt with dt = 2pi / inv_dt
    product = 2 * np.pi * u / tau
    if product < thresholds.negligible_product:
        return RegimeLabel.NEGLIGIBLE
    if tau / (2 * np.pi) > thresholds.diffractive_factor * np.sqrt(u):
        return RegimeLabel.DIFFRACTIVE
    if product > thresholds.channelling_product and u > thresholds.channelling_ratio:
        # w_osc = 2 sqrt(U eps)
        periods = 2 * np.sqrt(u) / tau
        low, high = thresholds.lens_band
        if low <= periods <= high:
            return RegimeLabel.LENS
        return RegimeLabel.CHANNELLING
    return RegimeLabel.BRAGG


def critical_parameter(V0, dt):
    """Coupling strength V0 dt / hbar."""
    require_non_negative(V0, "potential depth")
    require_non_negative(dt, "interaction time")
    return V0 * dt / HBAR


def regime_map(
    u_range=(1e-2, 1e7),
    tau_range=(1e-2, 1e5),
    n_points=41,
    points=None,
    thresholds=RegimeThresholds(),
):
    """Labels over a log-spaced grid plus named points.

    Parameters
    ----------
    u_range, tau_range: (float, float)
                        extent of U/eps and 1/(eps dt)
    n_points: int
              grid points per axis
    points: list of RegimePoint
            marked points; the Table 1 experiments when None

    Returns
    -------
    regime_map: pd.DataFrame
                point, U_over_eps, inv_eps_dt, label, published
    """
    if n_points < 2:
        raise ValidationError("regime map needs at least two points per axis")
    u_grid = np.logspace(np.log10(u_range[0]), np.log10(u_range[1]), n_points)
    tau_grid = np.logspace(np.log10(tau_range[0]), np.log10(tau_range[1]), n_points)
    rows = []
    for tau in tau_grid:
        for u in u_grid:
            label = classify_regime(RegimePoint(u, tau, 1.0), thresholds)
            rows.append(("", u, tau, label.value, ""))
    for p in table1_points() if points is None else points:
        u, tau = regime_coordinates(p)
        label = classify_regime(p, thresholds)
        rows.append((p.name or "", u, tau, label.value, p.label or ""))
    return pd.DataFrame(
        rows, columns=["point", "U_over_eps", "inv_eps_dt", "label", "published"]
    )
