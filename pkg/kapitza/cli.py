"""Command line interface for kapitza
"""
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

import json
import os
import sys
import warnings

import click
import numpy as np
import pandas as pd

from . import __version__
from .classical import EnsembleConfig
from .classical import TrajectoryConfig
from .classical import channelling_check
from .classical import ensemble_histogram
from .classical import figure8_run
from .classical import integrate_trajectory
from .classical import oscillation_frequency
from .classical import rainbow_angle
from .common import NumericalError
from .common import RegimeWarning
from .common import ValidationError
from .common import log_step
from .config import resolve
from .const import DEFAULT_SEED
from .const import DEFAULT_TRAJECTORIES
from .const import FIELD_AMPLITUDE
from .const import HBAR
from .const import HISTOGRAM_BINS
from .const import N_SAMPLES
from .const import TABLE2_VELOCITY
from .interferometry import SagnacConfig
from .interferometry import molecule_transit_bound
from .interferometry import sagnac_resolution
from .interferometry import sagnac_sensitivity
from .interferometry import size_for_transit
from .kinematics import Particle
from .kinematics import bragg_angle
from .kinematics import energy_from_ev
from .kinematics import energy_spread
from .kinematics import interaction_time
from .kinematics import recoil_frequency
from .kinematics import velocity_from_kinetic_energy
from .output import OutputSet
from .output import output_prefix
from .potentials import LaserBeam
from .potentials import beam_from_power
from .potentials import potential_for
from .potentials import potential_gradient
from .potentials import read_line_list
from .potentials import time_averaged_force
from .presets import FIGURE_IDS
from .presets import get_particle
from .presets import get_preset
from .presets import list_builtins
from .quantum import EvolutionConfig
from .quantum import ModeAmplitudes
from .quantum import ModeLattice
from .quantum import default_lattice
from .quantum import depth_scan
from .quantum import diffraction_spectrum
from .quantum import duration_scan
from .quantum import evolve
from .quantum import figure7_run
from .regime import RegimePoint
from .regime import classify_regime
from .regime import critical_parameter
from .regime import regime_coordinates
from .regime import regime_map
from .regime import table1_points
from .tables import reproduce_tables

from click_help_colors import HelpColorsGroup

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


@click.group(
    cls=HelpColorsGroup, help_headers_color="yellow", help_options_color="green"
)
@click.version_option(version=__version__)
def cli():
    """kapitza: Kapitza-Dirac scattering of electrons, atoms and ions"""
    pass


def _fail(error, exit_code):
    message = {"error": str(error), "type": type(error).__name__, "exit_code": exit_code}
    click.echo(json.dumps(message, sort_keys=True), err=True)
    sys.exit(exit_code)


def _run(params, compute):
    """Resolve the configuration, compute, then write every output at once."""
    ctx = click.get_current_context()
    try:
        run_config = resolve(ctx, params, params.get("config"))
        prefix = output_prefix(run_config["prefix"], ctx.command.name)
        outputs = OutputSet(prefix, run_config)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            compute(run_config, outputs)
        advisories = sorted(
            {str(w.message) for w in caught if issubclass(w.category, RegimeWarning)}
        )
        if advisories:
            outputs.add_results(advisories=advisories)
        for path in outputs.write():
            log_step("wrote {}".format(path))
    except ValidationError as error:
        _fail(error, EXIT_VALIDATION)
    except NumericalError as error:
        _fail(error, EXIT_NUMERICAL)


def _parse_floats(text, name):
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError("'{}' must be a comma separated list of numbers".format(name))
    if not values:
        raise ValidationError("'{}' cannot be empty".format(name))
    return values


def _lines(path):
    if not os.path.isfile(path):
        raise ValidationError("line list not found: {}".format(path))
    return read_line_list(path)


def _particle(cfg):
    lines = _lines(cfg["line_list"]) if cfg["line_list"] else None
    if cfg["mass_amu"] is not None:
        particle = Particle.from_amu(cfg["particle"], cfg["mass_amu"], [], cfg["ionic_charge"])
        return particle.with_lines(lines or [])
    return get_particle(cfg["particle"], lines)


def _beam(cfg):
    wavelength = cfg["wavelength_nm"] * 1e-9
    if cfg["power"] is not None:
        return beam_from_power(wavelength, cfg["power"], cfg["waist"], cfg["height"])
    return LaserBeam(wavelength, cfg["intensity"], cfg["waist"], cfg["height"])


def _velocity(cfg, particle):
    if cfg["velocity"] is not None:
        return cfg["velocity"]
    return velocity_from_kinetic_energy(energy_from_ev(cfg["energy_ev"]), particle.mass)


def _setup(cfg, envelope):
    """Particle, beam, longitudinal velocity and potential of a run."""
    particle = _particle(cfg)
    beam = _beam(cfg)
    velocity = _velocity(cfg, particle)
    dt = interaction_time(beam.waist, velocity)
    potential = potential_for(beam, particle, envelope, dt, cfg["convention"])
    return particle, beam, velocity, potential


def particle_options(f):
    options = [
        click.option(
            "--particle",
            default="electron",
            show_default=True,
            help="Built-in particle name (see list-builtins)",
        ),
        click.option(
            "--mass_amu",
            type=float,
            default=None,
            help="Mass (u) of a custom particle named by --particle",
        ),
        click.option(
            "--ionic_charge",
            type=float,
            default=0.0,
            show_default=True,
            help="Net charge (e) of a custom ion",
        ),
        click.option(
            "--line_list",
            default=None,
            help="Resonance line list (JSON or 'wavelength_nm weight' text)",
        ),
        click.option(
            "--energy_ev",
            type=float,
            default=10.0,
            show_default=True,
            help="Kinetic energy (eV) of the incoming particles",
        ),
        click.option(
            "--velocity",
            type=float,
            default=None,
            help="Longitudinal velocity (m/s); overrides --energy_ev",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def beam_options(f):
    options = [
        click.option(
            "--wavelength_nm", type=float, default=1064.0, show_default=True, help="Laser wavelength (nm)"
        ),
        click.option(
            "--intensity", type=float, default=1e13, show_default=True, help="Intensity (W/m^2)"
        ),
        click.option(
            "--power",
            type=float,
            default=None,
            help="Beam power (W) focused to waist x height; overrides --intensity",
        ),
        click.option(
            "--waist", type=float, default=5e-5, show_default=True, help="Beam width along the path (m)"
        ),
        click.option(
            "--height", type=float, default=1e-3, show_default=True, help="Beam height (m)"
        ),
        click.option(
            "--convention",
            type=click.Choice(["standing", "travelling"]),
            default=FIELD_AMPLITUDE,
            show_default=True,
            help="Field amplitude entering the lightshift",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def output_options(f):
    f = click.option(
        "--config", default=None, help="JSON file whose keys are this command's options"
    )(f)
    return click.option(
        "--prefix",
        default=None,
        help="Prefix to output files (default: $KAPITZA_OUTPUT_DIR/<command>)",
    )(f)


###################### potential function #########################################
def _potential(cfg, outputs):
    particle, beam, velocity, potential = _setup(cfg, "rectangular")
    x = np.linspace(0.0, beam.wavelength, cfg["x_points"])
    profile = pd.DataFrame(
        {
            "x_m": x,
            "potential_J": potential.value(x),
            "force_N": potential_gradient(potential, x),
        }
    )
    if particle.is_free:
        sw = beam.standing_wave()
        profile["averaged_force_N"] = [
            time_averaged_force(sw, xi, particle.charge, particle.mass) for xi in x
        ]
    epsilon = recoil_frequency(particle.mass, beam.wavelength)
    outputs.add_table("potential", profile)
    outputs.add_results(
        particle=particle.to_dict(),
        beam=beam.to_dict(),
        potential=potential.to_dict(),
        V0_over_hbar_rad_s=potential.depth / HBAR,
        epsilon_rad_s=epsilon,
        velocity_m_s=velocity,
        bragg_angle_rad=bragg_angle(particle.mass, velocity, beam.wavelength),
        critical_parameter=critical_parameter(potential.depth, potential.dt),
        energy_spread_J=energy_spread(potential.dt),
    )


@cli.command(
    "potential",
    context_settings=CONTEXT_SETTINGS,
    help="Potential depth and profile of a particle in a standing wave",
)
@particle_options
@beam_options
@click.option(
    "--x_points",
    type=int,
    default=201,
    show_default=True,
    help="Positions sampled over one optical wavelength",
)
@output_options
def potential_cmd(**params):
    _run(params, _potential)


###################### diffract function #########################################
def _diffract(cfg, outputs):
    particle, beam, velocity, potential = _setup(cfg, cfg["envelope"])
    epsilon = recoil_frequency(particle.mass, beam.wavelength)
    initial = ModeAmplitudes.single(cfg["initial_order"])
    if cfg["half_width"] is not None:
        lattice = ModeLattice.symmetric(cfg["half_width"], epsilon, cfg["delta"])
    else:
        lattice = default_lattice(potential, epsilon, cfg["delta"], initial)
    evolution_cfg = EvolutionConfig(
        potential,
        max_step=cfg["max_step"] or np.inf,
        include_diagonal_offset=cfg["diagonal_offset"],
        n_samples=cfg["n_samples"],
    )
    scan = cfg["scan"]
    factors = _parse_floats(cfg["scan_factors"], "scan_factors") if scan != "none" else []
    evolution = evolve(lattice, initial, evolution_cfg)
    outputs.add_table("series", evolution.series())
    outputs.add_table("spectrum", diffraction_spectrum(evolution.final, potential.k))
    if scan == "depth":
        depths = [factor * potential.depth for factor in factors]
        outputs.add_table("scan", depth_scan(lattice, initial, evolution_cfg, depths))
    elif scan == "duration":
        durations = [factor * potential.dt for factor in factors]
        outputs.add_table("scan", duration_scan(lattice, initial, evolution_cfg, durations))
    outputs.add_results(
        particle=particle.to_dict(),
        beam=beam.to_dict(),
        velocity_m_s=velocity,
        critical_parameter=critical_parameter(potential.depth, potential.effective_duration),
        final_norm=evolution.final.norm,
        **evolution.metadata()
    )


@cli.command(
    "diffract",
    context_settings=CONTEXT_SETTINGS,
    help="Evolve diffraction-order amplitudes through the standing wave",
)
@particle_options
@beam_options
@click.option(
    "--envelope",
    type=click.Choice(["rectangular", "gaussian"]),
    default="gaussian",
    show_default=True,
    help="Temporal envelope of the interaction",
)
@click.option(
    "--delta",
    type=float,
    default=0.0,
    show_default=True,
    help="Incident transverse momentum offset (units of hbar k)",
)
@click.option(
    "--initial_order", type=int, default=0, show_default=True, help="Populated order n at t = 0"
)
@click.option(
    "--half_width",
    type=int,
    default=None,
    help="Lattice |n| <= half_width (default from V0 dt / hbar)",
)
@click.option("--max_step", type=float, default=None, help="Upper bound on the step (s)")
@click.option(
    "--n_samples", type=int, default=N_SAMPLES, show_default=True, help="Stored time samples"
)
@click.option(
    "--diagonal_offset/--no_diagonal_offset",
    default=True,
    show_default=True,
    help="Include the uniform V0/2hbar phase",
)
@click.option(
    "--scan",
    type=click.Choice(["none", "depth", "duration"]),
    default="none",
    show_default=True,
    help="Sweep the depth or the interaction time",
)
@click.option(
    "--scan_factors",
    default="0.5,1,1.5,2",
    show_default=True,
    help="Comma separated multiples of the depth or interaction time",
)
@output_options
def diffract_cmd(**params):
    _run(params, _diffract)


###################### trajectories function #########################################
def _trajectories(cfg, outputs):
    particle, beam, velocity, potential = _setup(cfg, cfg["envelope"])
    template = TrajectoryConfig(potential, particle.mass, velocity, vx0=cfg["vx0"])
    ensemble = EnsembleConfig(
        cfg["trajectories"], seed=cfg["seed"], bins=cfg["bins"], angle_range=cfg["angle_range"]
    )
    histogram = ensemble_histogram(ensemble, template)
    outputs.add_table("histogram", histogram.to_frame())
    omega = oscillation_frequency(potential, particle.mass)
    results = {
        "particle": particle.to_dict(),
        "beam": beam.to_dict(),
        "trajectory": template.to_dict(),
        "ensemble": ensemble.to_dict(),
        "rainbow_angle_rad": rainbow_angle(template),
        "omega_osc_rad_s": omega,
        "impulse_parameter": omega * potential.effective_duration,
        "outer_peaks_rad": histogram.outer_peaks(),
        "total": histogram.total,
        "max_energy_drift": histogram.max_energy_drift,
    }
    if cfg["verbose"]:
        x0 = cfg["x0"] if cfg["x0"] is not None else 0.25 * potential.period
        single = TrajectoryConfig(potential, particle.mass, velocity, x0, cfg["vx0"])
        trajectory = integrate_trajectory(single)
        outputs.add_table("path", trajectory["path"])
        results["path_angle_rad"] = trajectory["angle"]
        results["path_energy_drift"] = trajectory["energy_drift"]
    if cfg["channelling"]:
        results["channelling"] = channelling_check(template, seed=cfg["seed"])
    outputs.add_results(**results)


@cli.command(
    "trajectories",
    context_settings=CONTEXT_SETTINGS,
    help="Classical deflection histogram of a particle ensemble",
)
@particle_options
@beam_options
@click.option(
    "--envelope",
    type=click.Choice(["rectangular", "gaussian"]),
    default="rectangular",
    show_default=True,
    help="Temporal envelope of the interaction",
)
@click.option(
    "--trajectories",
    type=int,
    default=DEFAULT_TRAJECTORIES,
    show_default=True,
    help="Number of trajectories",
)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Random seed")
@click.option("--bins", type=int, default=HISTOGRAM_BINS, show_default=True, help="Histogram bins")
@click.option(
    "--angle_range",
    type=float,
    default=None,
    help="Histogram half range (rad); default three rainbow angles",
)
@click.option(
    "--vx0", type=float, default=0.0, show_default=True, help="Initial transverse velocity (m/s)"
)
@click.option("--x0", type=float, default=None, help="Start of the --verbose path (m)")
@click.option("--verbose", is_flag=True, help="Also write one trajectory path (t, x, v_x)")
@click.option("--channelling", is_flag=True, help="Also report the channelled fraction")
@output_options
def trajectories_cmd(**params):
    _run(params, _trajectories)


###################### classify function #########################################
def _classify(cfg, outputs):
    if cfg["map"]:
        outputs.add_table("regime", regime_map(n_points=cfg["n_points"]))
        return
    if cfg["point"] is not None:
        points = {p.name: p for p in table1_points()}
        if cfg["point"] not in points:
            raise ValidationError(
                "unknown Table 1 point '{}'; use one of {}".format(cfg["point"], ", ".join(points))
            )
        point = points[cfg["point"]]
    else:
        rates = [cfg["U"], cfg["inv_dt"], cfg["epsilon"]]
        if any(rate is None for rate in rates):
            raise ValidationError("classify needs --point or all of --U, --inv_dt, --epsilon")
        scale = 2 * np.pi if cfg["frequency_convention"] == "cyclic" else 1.0
        point = RegimePoint(*[scale * rate for rate in rates])
    u, tau = regime_coordinates(point)
    label = classify_regime(point)
    row = pd.DataFrame(
        [
            {
                "point": point.name or "",
                "U_over_eps": u,
                "inv_eps_dt": tau,
                "label": label.value,
                "critical_parameter": point.U * point.dt,
            }
        ]
    )
    outputs.add_table("regime", row)
    outputs.add_results(label=label.value, U_over_eps=u, inv_eps_dt=tau)


@cli.command(
    "classify",
    context_settings=CONTEXT_SETTINGS,
    help="Classify the scattering regime of a parameter point",
)
@click.option("--U", "U", type=float, default=None, help="Depth rate V0/hbar")
@click.option("--inv_dt", type=float, default=None, help="Inverse interaction time 2pi/dt")
@click.option("--epsilon", type=float, default=None, help="Recoil frequency")
@click.option(
    "--frequency_convention",
    type=click.Choice(["angular", "cyclic"]),
    default="angular",
    show_default=True,
    help="Whether the rates are given in rad/s or Hz",
)
@click.option("--point", default=None, help="Table 1 point A-I")
@click.option("--map", "map", is_flag=True, help="Write the regime map instead")
@click.option(
    "--n_points", type=int, default=41, show_default=True, help="Regime map points per axis"
)
@output_options
def classify_cmd(**params):
    _run(params, _classify)


###################### sagnac function #########################################
def _sagnac(cfg, outputs):
    k_g = cfg["k_g"] if cfg["k_g"] is not None else 2 * np.pi / (cfg["grating_period_nm"] * 1e-9)
    sagnac = SagnacConfig(k_g, cfg["length"], cfg["velocity"], cfg["contrast"], cfg["count_rate"])
    sensitivity, normalized = sagnac_sensitivity(sagnac)
    outputs.add_table(
        "sagnac",
        pd.DataFrame(
            [
                {
                    "resolution_s": sagnac_resolution(sagnac),
                    "sensitivity_rad_s": sensitivity,
                    "sensitivity_earth_rate": normalized,
                }
            ]
        ),
    )
    results = {"sagnac": sagnac.to_dict()}
    if cfg["density"] is not None:
        molecule = {"density_kg_m3": cfg["density"]}
        if cfg["transit_time"] is not None:
            molecule["max_size_m"] = size_for_transit(cfg["density"], cfg["transit_time"])
        if cfg["size_nm"] is not None:
            molecule["transit_time_s"] = molecule_transit_bound(cfg["density"], cfg["size_nm"] * 1e-9)
        results["molecule"] = molecule
    outputs.add_results(**results)


@cli.command(
    "sagnac",
    context_settings=CONTEXT_SETTINGS,
    help="Rotation sensitivity of a grating interferometer",
)
@click.option(
    "--grating_period_nm", type=float, default=500.0, show_default=True, help="Grating period (nm)"
)
@click.option("--k_g", type=float, default=None, help="Grating vector (rad/m); overrides the period")
@click.option(
    "--length", type=float, default=0.25, show_default=True, help="Grating separation (m)"
)
@click.option("--velocity", type=float, default=700.0, show_default=True, help="Velocity (m/s)")
@click.option("--contrast", type=float, default=0.2, show_default=True, help="Fringe contrast")
@click.option(
    "--count_rate", type=float, default=1e4, show_default=True, help="Detected particles per second"
)
@click.option("--density", type=float, default=None, help="Molecule density (kg/m^3)")
@click.option("--transit_time", type=float, default=None, help="Transit time between gratings (s)")
@click.option("--size_nm", type=float, default=None, help="Molecule size (nm)")
@output_options
def sagnac_cmd(**params):
    _run(params, _sagnac)


###################### tables function #########################################
def _tables(cfg, outputs):
    line_lists = {}
    for entry in cfg["line_list"]:
        species, sep, path = entry.partition("=")
        if not sep:
            raise ValidationError("--line_list expects SPECIES=PATH, got '{}'".format(entry))
        line_lists[species] = _lines(path)
    report = reproduce_tables(cfg["id"], line_lists, cfg["velocity"])
    outputs.add_table("tables", report)
    outputs.add_results(rows=len(report))


@cli.command(
    "tables",
    context_settings=CONTEXT_SETTINGS,
    help="Compare computed and published table values",
)
@click.option("--id", "id", multiple=True, help="Table to reproduce: 1, 2, 3 or 2-<species>")
@click.option("--line_list", multiple=True, help="SPECIES=PATH line list for Table 2 rows")
@click.option(
    "--velocity",
    type=float,
    default=TABLE2_VELOCITY,
    show_default=True,
    help="Beam velocity (m/s) for Table 2",
)
@output_options
def tables_cmd(**params):
    _run(params, _tables)


###################### figure function #########################################
def _figure(cfg, outputs):
    figure_id = cfg["id"]
    if figure_id is None:
        raise ValidationError(
            "figure needs an id from --id or the config file: {}".format(", ".join(FIGURE_IDS))
        )
    log_step("figure {}: {}".format(figure_id, get_preset(figure_id)["description"]))
    if figure_id == "5":
        outputs.add_table("regime_map", regime_map())
    elif figure_id in ("7-left", "7-right"):
        regime = "diffractive" if figure_id == "7-left" else "bragg"
        result = figure7_run(regime, cfg["n_samples"])
        outputs.add_table("series", result.series)
        outputs.add_table("spectrum", result.spectrum)
        outputs.add_results(
            parameters=result.parameters,
            metrics=result.metrics,
            **result.evolution.metadata()
        )
    else:
        template, histogram = figure8_run(cfg["trajectories"], cfg["seed"])
        outputs.add_table("histogram", histogram.to_frame())
        outputs.add_results(
            trajectory=template.to_dict(),
            rainbow_angle_rad=rainbow_angle(template),
            outer_peaks_rad=histogram.outer_peaks(),
            bin_width_rad=histogram.bin_width,
            max_energy_drift=histogram.max_energy_drift,
        )


@cli.command(
    "figure",
    context_settings=CONTEXT_SETTINGS,
    help="Reproduce a figure preset as plot-ready data",
)
@click.option(
    "--id",
    "id",
    type=click.Choice(FIGURE_IDS),
    default=None,
    help="Figure preset (required, on the command line or in --config)",
)
@click.option(
    "--trajectories",
    type=int,
    default=100000,
    show_default=True,
    help="Ensemble size of figure 8",
)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Random seed")
@click.option(
    "--n_samples", type=int, default=N_SAMPLES, show_default=True, help="Stored time samples"
)
@output_options
def figure_cmd(**params):
    _run(params, _figure)


###################### list-builtins function #########################################
@cli.command(
    "list-builtins",
    context_settings=CONTEXT_SETTINGS,
    help="List built-in particles and presets",
)
@click.option("--id", "preset_id", default=None, help="Describe a single preset")
def list_builtins_cmd(preset_id):
    if preset_id is not None:
        try:
            preset = get_preset(preset_id)
        except ValidationError as error:
            _fail(error, EXIT_VALIDATION)
        click.echo("{}\t{}".format(preset_id, preset["description"]))
        if preset["requires_line_list"]:
            click.echo("requires --line_list")
        return
    particles, presets = list_builtins()
    click.echo(particles.to_string(index=False))
    click.echo("")
    click.echo(presets.to_string(index=False))
