"""JSON run configuration with a strict schema"""
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
from dataclasses import dataclass
from dataclasses import field

import click
from click.core import ParameterSource

from . import __version__
from .common import ValidationError
from .const import BESSEL_ARGUMENT
from .const import FIELD_AMPLITUDE
from .const import FREQUENCY_CONVENTION

# options that only steer where the configuration comes from
NOT_CONFIGURABLE = {"config", "help", "version"}


@dataclass(frozen=True)
class OptionSpec:
    """Expected JSON type of one configuration key."""

    name: str
    kind: str
    choices: tuple = ()
    multiple: bool = False

    def check(self, value):
        """Return value if it has the expected type, else raise ValidationError."""
        if value is None:
            return None
        if self.multiple:
            if not isinstance(value, list):
                raise ValidationError("'{}' must be a list".format(self.name))
            return tuple(OptionSpec(self.name, self.kind, self.choices).check(v) for v in value)
        if self.kind == "bool":
            valid = isinstance(value, bool)
        elif self.kind == "int":
            valid = isinstance(value, int) and not isinstance(value, bool)
        elif self.kind == "float":
            valid = isinstance(value, (int, float)) and not isinstance(value, bool)
        else:
            valid = isinstance(value, str)
        if not valid:
            raise ValidationError(
                "'{}' must be of type {}, got {!r}".format(self.name, self.kind, value)
            )
        if self.choices and value not in self.choices:
            raise ValidationError(
                "'{}' must be one of {}, got {!r}".format(
                    self.name, ", ".join(self.choices), value
                )
            )
        return float(value) if self.kind == "float" else value


def _kind(param):
    if getattr(param, "is_flag", False) or isinstance(param.type, click.types.BoolParamType):
        return "bool"
    if isinstance(param.type, click.types.IntParamType):
        return "int"
    if isinstance(param.type, click.types.FloatParamType):
        return "float"
    return "str"


def schema_from_command(command):
    """Configuration keys accepted by a click command: its option names."""
    schema = {}
    for param in command.params:
        if param.name in NOT_CONFIGURABLE or not isinstance(param, click.Option):
            continue
        choices = tuple(param.type.choices) if isinstance(param.type, click.Choice) else ()
        schema[param.name] = OptionSpec(param.name, _kind(param), choices, param.multiple)
    return schema


def load_config_file(path):
    """Parse a JSON object from path."""
    if not os.path.isfile(path):
        raise ValidationError("config file not found: {}".format(path))
    with open(path) as handle:
        try:
            values = json.load(handle)
        except ValueError as error:
            raise ValidationError("malformed config {}: {}".format(path, error))
    if not isinstance(values, dict):
        raise ValidationError("config {} must hold a JSON object".format(path))
    return values


def check_schema(values, schema):
    """Reject unknown keys and values of the wrong type."""
    unknown = sorted(set(values) - set(schema))
    if unknown:
        raise ValidationError(
            "unknown config keys: {}; allowed: {}".format(
                ", ".join(unknown), ", ".join(sorted(schema))
            )
        )
    return {name: schema[name].check(value) for name, value in values.items()}


@dataclass
class RunConfig:
    """Fully resolved options of one command."""

    command: str
    values: dict
    sources: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.values[name]

    def get(self, name, default=None):
        return self.values.get(name, default)

    def conventions(self):
        return {
            "frequency_convention": FREQUENCY_CONVENTION,
            "bessel_argument": BESSEL_ARGUMENT,
            "field_amplitude": self.values.get("convention") or FIELD_AMPLITUDE,
        }

    def to_dict(self):
        return {
            "command": self.command,
            "options": {
                name: list(value) if isinstance(value, tuple) else value
                for name, value in self.values.items()
            },
            "conventions": self.conventions(),
            "version": __version__,
        }


def resolve(ctx, params, config_path=None):
    """Merge click defaults, the config file and explicit flags, in that order.

    Parameters
    ----------
    ctx: click.Context
    params: dict
            option values as passed to the command
    config_path: str or None

    Returns
    -------
    run_config: RunConfig
    """
    schema = schema_from_command(ctx.command)
    file_values = {}
    if config_path is not None:
        file_values = check_schema(load_config_file(config_path), schema)
    values, sources = {}, {}
    for name in schema:
        explicit = ctx.get_parameter_source(name) in (
            ParameterSource.COMMANDLINE,
            ParameterSource.ENVIRONMENT,
        )
        if name in file_values and not explicit:
            values[name], sources[name] = file_values[name], "config"
        else:
            values[name] = params[name]
            sources[name] = "flag" if explicit else "default"
    return RunConfig(ctx.command.name, values, sources)
