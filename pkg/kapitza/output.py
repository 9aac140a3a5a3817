"""Self-describing CSV and JSON outputs"""
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
import json
import os

import numpy as np

from .common import mkdir_p
from .common import parent_dir
from .const import CSV_FLOAT_FORMAT
from .const import OUTPUT_DIR_ENV


def output_prefix(prefix, command):
    """Explicit prefix, else <$KAPITZA_OUTPUT_DIR or .>/<command>."""
    if prefix:
        return prefix
    return os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), command)


def jsonable(value):
    """Plain JSON types; numpy scalars unwrapped, non-finite floats as null."""
    if isinstance(value, dict):
        return {str(key): jsonable(v) for key, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if np.isfinite(value) else None
    return value


def convention_header(conventions):
    return "# " + " ".join(
        "{}={}".format(key, conventions[key]) for key in sorted(conventions)
    )


def write_csv(df, path, conventions):
    """DataFrame to CSV behind a '# key=value' convention line."""
    with open(path, "w") as handle:
        handle.write(convention_header(conventions) + "\n")
        df.to_csv(handle, index=False, float_format=CSV_FLOAT_FORMAT)


def write_metadata(path, run_config, results):
    metadata = {"config": run_config.to_dict(), "results": results}
    with open(path, "w") as handle:
        json.dump(jsonable(metadata), handle, sort_keys=True, indent=2)
        handle.write("\n")


class OutputSet:
    """Outputs of one command, written together once it has succeeded."""

    def __init__(self, prefix, run_config):
        self.prefix = prefix
        self.run_config = run_config
        self.tables = []
        self.results = {}

    def add_table(self, suffix, df):
        self.tables.append((suffix, df))

    def add_results(self, **results):
        self.results.update(results)

    @property
    def paths(self):
        paths = ["{}_{}.csv".format(self.prefix, suffix) for suffix, _ in self.tables]
        return paths + ["{}_metadata.json".format(self.prefix)]

    def write(self):
        mkdir_p(parent_dir(self.prefix))
        conventions = self.run_config.conventions()
        for suffix, df in self.tables:
            write_csv(df, "{}_{}.csv".format(self.prefix, suffix), conventions)
        write_metadata(
            "{}_metadata.json".format(self.prefix), self.run_config, self.results
        )
        return self.paths
