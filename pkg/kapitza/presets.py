"""Built-in particles and named presets"""
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

import pandas as pd

from .common import ValidationError
from .const import ELECTRON_MASS
from .const import ELEMENTARY_CHARGE
from .kinematics import Particle
from .kinematics import mass_from_amu

# mass in u, principal resonance (nm) and default (wavelength nm, weight) lines
BUILTIN_PARTICLES = {
    "electron": {"mass_amu": None, "resonance_nm": None, "lines": [], "ionic_charge_e": 0},
    "Na": {"mass_amu": 22.98977, "resonance_nm": 589.0, "lines": [(589.0, 1.0)], "ionic_charge_e": 0},
    "Ne*": {"mass_amu": 20.1797, "resonance_nm": 640.0, "lines": [(640.0, 1.0)], "ionic_charge_e": 0},
    "Ar*": {"mass_amu": 39.948, "resonance_nm": 811.0, "lines": [(811.0, 1.0)], "ionic_charge_e": 0},
    "Cs": {"mass_amu": 132.90545, "resonance_nm": 852.0, "lines": [(852.0, 1.0)], "ionic_charge_e": 0},
    "Li": {"mass_amu": 6.941, "resonance_nm": 671.0, "lines": [(671.0, 1.0)], "ionic_charge_e": 0},
    "Cr": {"mass_amu": 51.9961, "resonance_nm": 425.0, "lines": [(425.0, 1.0)], "ionic_charge_e": 0},
    "Rb": {"mass_amu": 85.4678, "resonance_nm": 780.0, "lines": [(780.0, 1.0)], "ionic_charge_e": 0},
    "Ca+": {"mass_amu": 40.078, "resonance_nm": 393.0, "lines": [(393.0, 1.0)], "ionic_charge_e": 1},
    "Li+": {"mass_amu": 6.941, "resonance_nm": 548.5, "lines": [(548.5, 1.0)], "ionic_charge_e": 1},
    "Ba+": {"mass_amu": 137.327, "resonance_nm": 493.0, "lines": [(493.0, 1.0), (455.0, 1.0)], "ionic_charge_e": 1},
}

ALIASES = {"Ne": "Ne*", "Ar": "Ar*", "e": "electron"}

# 10 eV electrons in a 1064 nm standing wave
FIGURE7_ENERGY_EV = 10.0
FIGURE7_WAVELENGTH = 1064e-9
FIGURE7 = {
    "diffractive": {"intensity": 1e13, "waist": 5e-5},
    "bragg": {"intensity": 1e11, "waist": 5e-3},
}

# impulse-regime rainbow ensemble: w_osc dt for the electron preset
FIGURE8_IMPULSE_PARAMETER = 0.3
FIGURE8_WAVELENGTH = 1064e-9
FIGURE8_WAIST = 5e-5

FIGURE_IDS = ("5", "7-left", "7-right", "8")

PRESETS = {
    "5": {"description": "regime map over (U/eps, 1/(eps dt)) with the Table 1 points", "requires_line_list": False},
    "7-left": {"description": "10 eV electrons, w = 0.005 cm, I = 1e13 W/m^2 (diffractive)", "requires_line_list": False},
    "7-right": {"description": "10 eV electrons, w = 0.5 cm, I = 1e11 W/m^2 (Bragg)", "requires_line_list": False},
    "8": {"description": "impulse-regime rainbow scattering histogram", "requires_line_list": False},
    "table1": {"description": "recoil frequencies and regimes of published experiments", "requires_line_list": False},
    "table2": {"description": "high intensity atom and ion design values", "requires_line_list": True},
    "table3": {"description": "electron design values at 1064 nm, v = 2e6 m/s", "requires_line_list": False},
    "table2-Na": {"description": "Na at 488 nm, 7 lines", "requires_line_list": True},
    "table2-Ar*": {"description": "Ar* at 488 nm, 15 lines", "requires_line_list": True},
    "table2-Ca+": {"description": "Ca+ at 488 nm, 393 nm line", "requires_line_list": True},
    "table2-Li+": {"description": "Li+ at 488 nm, 548.5 nm line", "requires_line_list": True},
    "table2-Ba+": {"description": "Ba+ at 488 nm, 493 and 455 nm lines", "requires_line_list": True},
    "table3-bragg": {"description": "I = 1e11 W/m^2, w = 0.5 cm", "requires_line_list": False},
    "table3-diffractive": {"description": "I = 1e13 W/m^2, w = 0.005 cm", "requires_line_list": False},
}


def canonical_name(name):
    """Resolve aliases; raise ValidationError for unknown particles."""
    name = ALIASES.get(name, name)
    if name not in BUILTIN_PARTICLES:
        raise ValidationError(
            "unknown particle '{}'; known: {}".format(name, ", ".join(BUILTIN_PARTICLES))
        )
    return name


def get_particle(name, lines=None):
    """Built-in particle, optionally with a replacement line list (omega0, weight)."""
    name = canonical_name(name)
    record = BUILTIN_PARTICLES[name]
    if record["mass_amu"] is None:
        particle = Particle(name, ELECTRON_MASS, ELEMENTARY_CHARGE, [])
    else:
        particle = Particle.from_amu(
            name, record["mass_amu"], record["lines"], record["ionic_charge_e"]
        )
    if lines is not None:
        particle = particle.with_lines(lines)
    return particle


def particle_mass(name):
    """Mass in kg of a built-in particle."""
    record = BUILTIN_PARTICLES[canonical_name(name)]
    if record["mass_amu"] is None:
        return ELECTRON_MASS
    return mass_from_amu(record["mass_amu"])


def get_preset(preset_id):
    if preset_id not in PRESETS:
        raise ValidationError(
            "unknown preset '{}'; known: {}".format(preset_id, ", ".join(PRESETS))
        )
    return PRESETS[preset_id]


def list_builtins():
    """Catalogue of particles and presets.

    Returns
    -------
    particles: pd.DataFrame
               name, mass_kg, resonance_nm, lines
    presets: pd.DataFrame
             id, description, requires_line_list
    """
    particles = pd.DataFrame(
        [
            {
                "name": name,
                "mass_kg": particle_mass(name),
                "resonance_nm": record["resonance_nm"],
                "lines": len(record["lines"]),
            }
            for name, record in BUILTIN_PARTICLES.items()
        ]
    )
    presets = pd.DataFrame(
        [
            {
                "id": preset_id,
                "description": record["description"],
                "requires_line_list": record["requires_line_list"],
            }
            for preset_id, record in PRESETS.items()
        ]
    )
    return particles, presets


# published Table 1 rows: point, species, U (MHz), 1/dt (MHz), eps (kHz), description
TABLE1 = [
    ("A", "Na", 0.35, 0.15, 24.0, "bragg"),
    ("B", "Ne*", 0.10, 0.1, 24.0, "bragg"),
    ("C", "Ar*", 0.023, 0.02, 7.5, "bragg"),
    ("D", "Na", 18.6, 14.0, 24.0, "diffractive"),
    ("E", "Ar*", 1.65, 10.0, 7.5, "diffractive"),
    ("F", "Cs", 45.0, 0.150, 12.0, "channelling"),
    ("G", "Li", 2188.0, 0.12, 37.0, "channelling"),
    ("H", "Cr", 100.0, 5.0, 20.0, "lens"),
    ("I", "Rb", 1500.0, 0.01, 3.5, "channelling"),
]

# published Table 2 rows: species, laser (nm), intensity (W/m^2), U tau
TABLE2 = [
    ("Na", 488.0, 1e7, 0.4),
    ("Ar*", 488.0, 1e7, 0.4),
    ("Ca+", 488.0, 1e7, 0.1),
    ("Li+", 488.0, 1e7, 0.1),
    ("Ba+", 488.0, 1e7, 2.5),
]

# published Table 3 rows: regime, laser (nm), intensity (W/m^2), V_p/hbar,
# velocity (m/s), width (m), V_p dt / hbar
TABLE3 = [
    ("bragg", 1064.0, 1e11, 1e9, 2e6, 5e-3, 2.0),
    ("diffractive", 1064.0, 1e13, 1e11, 2e6, 5e-5, 2.0),
]
