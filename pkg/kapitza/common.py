"""Utilities for common usage"""
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

import datetime
import ntpath
import pathlib

import numpy as np


class KapitzaError(RuntimeError):
    """Base class for kapitza failures."""


class ValidationError(KapitzaError, ValueError):
    """Input violates a precondition."""


class ResonanceError(ValidationError):
    """Driving frequency inside the resonance guard band."""


class NumericalError(KapitzaError):
    """Integration failed to meet its accuracy criteria."""


class RegimeWarning(UserWarning):
    """Result quoted outside the regime where it is exact."""


def log_step(message):
    """Print a timestamped progress message.

    Parameters
    ----------
    message: str
    """
    now = datetime.datetime.now()
    print("{} ... {}".format(now.strftime("%b %d %H:%M:%S"), message))


def mkdir_p(path):
    """Make directory even if it exists.

    Parameters
    ----------
    path: str
    """
    if path:
        pathlib.Path(path).mkdir(parents=True, exist_ok=True)


def parent_dir(path):
    """Get path's parent directory"""
    head, tail = ntpath.split(path)
    return head


def require_positive(value, name):
    """Raise ValidationError unless value > 0."""
    if not np.all(np.asarray(value) > 0):
        raise ValidationError("{} must be positive, got {}".format(name, value))
    return value


def require_non_negative(value, name):
    """Raise ValidationError unless value >= 0."""
    if not np.all(np.asarray(value) >= 0):
        raise ValidationError("{} must be non-negative, got {}".format(name, value))
    return value
