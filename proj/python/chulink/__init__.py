"""Chu-sphere antenna coupling, link channel and rate models."""

import csv
import io
import json

from ._core import (
    AntennaSpec,
    Band,
    ConfigError,
    GeometryError,
    LinkModel,
    NumericalError,
    RfChain,
    SingularityError,
    chu_self_impedance,
    hertz_mutual_impedance,
    hertz_radiation_resistance,
    orientation,
    rate_opa,
    rate_uniform,
    two_port,
    waterfill,
    wavelength,
    wavenumber,
)
from . import _core


def default_config(experiment):
    """Default configuration of an experiment as a dict."""
    return json.loads(_core.default_config(experiment))


def run_experiment(config):
    """Run an experiment config (dict). Returns (columns, metadata)."""
    text = _core.run_experiment_csv(json.dumps(config))
    meta_lines, body = [], []
    for line in io.StringIO(text):
        (meta_lines if line.startswith("#") else body).append(line)
    metadata = json.loads("".join(l[2:] for l in meta_lines)) if meta_lines else {}
    rows = csv.reader(body)
    header = next(rows)
    columns = {name: [] for name in header}
    for row in rows:
        for name, value in zip(header, row):
            columns[name].append(float(value))
    return columns, metadata


__all__ = [
    "AntennaSpec", "Band", "ConfigError", "GeometryError", "LinkModel", "NumericalError", "RfChain",
    "SingularityError", "chu_self_impedance", "default_config", "hertz_mutual_impedance",
    "hertz_radiation_resistance", "orientation", "rate_opa", "rate_uniform", "run_experiment", "two_port",
    "waterfill", "wavelength", "wavenumber",
]
