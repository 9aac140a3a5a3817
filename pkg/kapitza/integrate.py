"""Explicit fourth-order Runge-Kutta stepping"""
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

import numpy as np

from .common import ValidationError


def rk4_step(rhs, t, y, h):
    """Advance y' = rhs(t, y) by one classical Runge-Kutta step.

    Parameters
    ----------
    rhs: callable
         rhs(t, y) -> dy/dt with the shape of y
    t: float
    y: array
       real or complex state
    h: float
       step

    Returns
    -------
    y_next: array
    """
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step_grid(t0, t1, h_max):
    """Equal steps from t0 to t1, none longer than h_max.

    Returns
    -------
    grid: np.ndarray
          strictly increasing, grid[0] = t0, grid[-1] = t1
    """
    if not t1 > t0:
        raise ValidationError("integration interval must have positive length")
    if not h_max > 0:
        raise ValidationError("step must be positive")
    n_steps = max(1, int(np.ceil((t1 - t0) / h_max)))
    return np.linspace(t0, t1, n_steps + 1)


def sample_indices(n_steps, n_samples):
    """Indices of n_samples roughly evenly spaced grid points, ends included."""
    if n_samples is None or n_samples >= n_steps + 1:
        return np.arange(n_steps + 1)
    return np.unique(np.round(np.linspace(0, n_steps, max(n_samples, 2))).astype(int))


def rk4_integrate(rhs, y0, grid, n_samples=None, callback=None):
    """Integrate over a step grid, storing a subset of the states.

    Parameters
    ----------
    rhs: callable
         rhs(t, y) -> dy/dt
    y0: array
        state at grid[0]
    grid: array
          step times from step_grid
    n_samples: int or None
               number of stored states (all when None)
    callback: callable or None
              called as callback(t, y) after every step

    Returns
    -------
    times: np.ndarray
           times of the stored states
    states: np.ndarray
            stored states, shape (len(times),) + y0.shape
    y: np.ndarray
       final state
    """
    y = np.array(y0)
    keep = sample_indices(len(grid) - 1, n_samples)
    states = np.empty((len(keep),) + y.shape, dtype=y.dtype)
    states[0] = y
    slot = 1
    for index in range(1, len(grid)):
        t = grid[index - 1]
        y = rk4_step(rhs, t, y, grid[index] - t)
        if callback is not None:
            callback(grid[index], y)
        if slot < len(keep) and keep[slot] == index:
            states[slot] = y
            slot += 1
    return grid[keep], states, y
