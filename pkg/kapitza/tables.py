"""Computed versus published design tables"""
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
import pandas as pd
from tqdm.autonotebook import tqdm

from .common import RegimeWarning
from .common import ValidationError
from .const import HBAR
from .const import PLANCK_H
from .const import TABLE2_VELOCITY
from .kinematics import interaction_time
from .kinematics import recoil_frequency
from .kinematics import to_cyclic
from .potentials import LaserBeam
from .potentials import combined_depth
from .potentials import ponderomotive_depth
from .presets import BUILTIN_PARTICLES
from .presets import TABLE1
from .presets import TABLE2
from .presets import TABLE3
from .presets import canonical_name
from .presets import get_particle
from .presets import particle_mass
from .regime import classify_regime
from .regime import critical_parameter
from .regime import point_from_table

COLUMNS = [
    "table",
    "row",
    "species",
    "quantity",
    "computed",
    "published",
    "ratio",
    "status",
    "label",
    "published_label",
]

# relative tolerance on the recoil column
TABLE1_TOLERANCE = 0.15
# multiplicative tolerance on the atom, ion and electron design values
TABLE2_FACTOR = 3.0
TABLE3_FACTOR = 3.0
# 1 W focused to 100 um x 1 mm
TABLE2_WAIST = 1e-4
TABLE2_HEIGHT = 1e-3


def _row(
    table,
    row,
    species,
    quantity,
    computed=np.nan,
    published=np.nan,
    status="",
    label="",
    published_label="",
):
    ratio = computed / published if published and not np.isnan(published) else np.nan
    return {
        "table": table,
        "row": row,
        "species": species,
        "quantity": quantity,
        "computed": computed,
        "published": published,
        "ratio": ratio,
        "status": status,
        "label": label,
        "published_label": published_label,
    }


def table1_rows():
    """Recoil frequency and regime of every Table 1 experiment."""
    rows = []
    for point, species, U, inv_dt, epsilon, published_label in TABLE1:
        wavelength = BUILTIN_PARTICLES[canonical_name(species)]["resonance_nm"] * 1e-9
        computed = to_cyclic(recoil_frequency(particle_mass(species), wavelength)) / 1e3
        within = abs(computed / epsilon - 1) <= TABLE1_TOLERANCE
        if not within:
            warnings.warn(
                "Table 1 row {} ({}): recoil {:.3g} kHz disagrees with published {} kHz".format(
                    point, species, computed, epsilon
                ),
                RegimeWarning,
            )
        rows.append(
            _row(
                1,
                point,
                species,
                "epsilon_kHz",
                computed,
                epsilon,
                "ok" if within else "discrepant",
            )
        )
        label = classify_regime(point_from_table(point, U, inv_dt, epsilon, published_label))
        rows.append(
            _row(
                1,
                point,
                species,
                "regime",
                status="ok" if label.value == published_label else "mismatch",
                label=label.value,
                published_label=published_label,
            )
        )
    return rows


def _check_line_lists(line_lists, species=None):
    wanted = [canonical_name(s) for s in (species or [row[0] for row in TABLE2])]
    line_lists = {canonical_name(name): lines for name, lines in (line_lists or {}).items()}
    missing = [name for name in wanted if name not in line_lists]
    if missing:
        raise ValidationError(
            "Table 2 rows need a line list: {}".format(", ".join(missing))
        )
    return wanted, line_lists


def table2_rows(line_lists, species=None, velocity=TABLE2_VELOCITY):
    """U tau of the ion and atom designs.

    Parameters
    ----------
    line_lists: dict
                species -> list of (omega0, weight)
    species: list of str
             rows to compute; all Table 2 species when None
    velocity: float
              beam velocity (m/s) setting tau = w / v

    Returns
    -------
    rows: list of dict
    """
    wanted, line_lists = _check_line_lists(line_lists, species)
    published = {canonical_name(row[0]): row for row in TABLE2}
    tau = interaction_time(TABLE2_WAIST, velocity)
    rows = []
    for name in wanted:
        _, laser_nm, intensity, product = published[name]
        beam = LaserBeam(laser_nm * 1e-9, intensity, TABLE2_WAIST, TABLE2_HEIGHT)
        depth = combined_depth(beam, get_particle(name, line_lists[name]))
        computed = abs(depth) / PLANCK_H * tau
        within = 1 / TABLE2_FACTOR <= computed / product <= TABLE2_FACTOR
        if not within:
            warnings.warn(
                "Table 2 row {}: U tau {:.3g} disagrees with published {}".format(
                    name, computed, product
                ),
                RegimeWarning,
            )
        rows.append(
            _row(2, name, name, "U_tau", computed, product, "ok" if within else "discrepant")
        )
    return rows


def table3_rows():
    """Ponderomotive rate and coupling strength of the electron designs."""
    rows = []
    for regime, laser_nm, intensity, rate, velocity, waist, product in TABLE3:
        beam = LaserBeam(laser_nm * 1e-9, intensity, waist)
        depth = ponderomotive_depth(beam)
        dt = interaction_time(waist, velocity)
        computed = {
            "Vp_over_hbar": (depth / HBAR, rate),
            "Vp_dt_over_hbar": (critical_parameter(depth, dt), product),
        }
        for quantity, (value, expected) in computed.items():
            within = 1 / TABLE3_FACTOR <= value / expected <= TABLE3_FACTOR
            status = "ok" if within else "discrepant"
            rows.append(_row(3, regime, "electron", quantity, value, expected, status))
    return rows


def parse_table_id(table_id):
    """'1', 'table3' or 'table2-Na' -> (table number, species or None)."""
    text = str(table_id)
    if text.startswith("table"):
        text = text[len("table") :]
    number, _, species = text.partition("-")
    if number not in ("1", "2", "3"):
        raise ValidationError("unknown table '{}'; use 1, 2 or 3".format(table_id))
    if species and number != "2":
        raise ValidationError("only Table 2 has per-species rows: {}".format(table_id))
    return int(number), species or None


def reproduce_tables(ids=(), line_lists=None, velocity=TABLE2_VELOCITY):
    """Row-by-row comparison of computed and published table values.

    Parameters
    ----------
    ids: iterable of str
         tables to reproduce, e.g. ["1", "3", "2-Na"]
    line_lists: dict
                species -> lines for the requested Table 2 rows

    Returns
    -------
    report: pd.DataFrame
            one row per compared quantity, empty for an empty request
    """
    requests = [parse_table_id(table_id) for table_id in ids]
    table2_species = []
    for number, species in requests:
        if number == 2:
            chosen = [species] if species else [row[0] for row in TABLE2]
            table2_species.extend(s for s in chosen if s not in table2_species)
    if table2_species:
        _check_line_lists(line_lists, table2_species)
    rows = []
    done = set()
    with tqdm(total=len(requests), unit="tables", leave=False) as pbar:
        for number, _ in requests:
            if number not in done:
                done.add(number)
                if number == 1:
                    rows.extend(table1_rows())
                elif number == 2:
                    rows.extend(table2_rows(line_lists, table2_species, velocity))
                else:
                    rows.extend(table3_rows())
            pbar.update()
    return pd.DataFrame(rows, columns=COLUMNS)
