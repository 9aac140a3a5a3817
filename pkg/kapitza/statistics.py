"""Fits used to quantify diffraction patterns"""
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

import warnings

import numpy as np
from scipy import optimize
from scipy import special


def r_squared(observed, predicted):
    """Coefficient of determination of a fit.

    Parameters
    ----------
    observed: array like
    predicted: array like

    Returns
    -------
    r2: float
        1 - SS_res / SS_tot; 1.0 for a perfect fit of a constant signal
    """
    observed = np.asarray(observed, dtype=float)
    predicted = np.asarray(predicted, dtype=float)
    ss_res = np.sum((observed - predicted) ** 2)
    ss_tot = np.sum((observed - observed.mean()) ** 2)
    if ss_tot == 0:
        return 1.0 if ss_res == 0 else 0.0
    return 1.0 - ss_res / ss_tot


def fit_bessel_argument(orders, probabilities, max_argument, n_grid=2001):
    """Best-fit argument phi of the populations J_m(phi)^2.

    A coarse grid locates the global minimum of the squared error, which
    is then refined with a bounded scalar minimisation.

    Parameters
    ----------
    orders: array like
            diffraction orders m = n/2
    probabilities: array like
                   measured populations of those orders
    max_argument: float
                  upper end of the search interval

    Returns
    -------
    phi: float
         best-fit argument
    max_deviation: float
                   max |J_m(phi)^2 - p_m| over the given orders
    """
    orders = np.asarray(orders, dtype=float)
    probabilities = np.asarray(probabilities, dtype=float)

    def loss(phi):
        return np.sum((special.jv(orders, phi) ** 2 - probabilities) ** 2)

    grid = np.linspace(0.0, max_argument, n_grid)
    losses = np.array([loss(phi) for phi in grid])
    best = int(np.argmin(losses))
    step = grid[1] - grid[0]
    lower = max(0.0, grid[best] - step)
    upper = min(max_argument, grid[best] + step)
    phi = grid[best]
    if upper > lower:
        refined = optimize.minimize_scalar(
            loss, bounds=(lower, upper), method="bounded"
        )
        if refined.fun <= losses[best]:
            phi = float(refined.x)
    deviation = np.max(np.abs(special.jv(orders, phi) ** 2 - probabilities))
    return phi, float(deviation)


def fit_pendulation(phase, population):
    """Fit population = cos^2(a * phase) and report the fit quality.

    Parameters
    ----------
    phase: array like
           accumulated coupling phase, V0 t / 4 hbar for a rectangular pulse
    population: array like
                population of the incident Bragg order

    Returns
    -------
    a: float
       fitted rate relative to the two-mode prediction (1 when exact)
    r2: float
        coefficient of determination
    """
    phase = np.asarray(phase, dtype=float)
    population = np.asarray(population, dtype=float)

    def model(p, a):
        return np.cos(a * p) ** 2

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        popt, _ = optimize.curve_fit(model, phase, population, p0=[1.0])
    a = float(popt[0])
    return a, r_squared(population, model(phase, a))
