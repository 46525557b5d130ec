# Copyright (c) 2026, nearfield-noise contributors
"""CSV and JSON result files.

CSV is the canonical output: floats are written with repr(), which is the
shortest string that round-trips, so reruns with the same inputs produce
byte-identical files.
"""

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from os import makedirs, path

import jsonschema

from nearfield import __version__
from nearfield.errors import OutputError

logger = logging.getLogger(__name__)

SCHEMA_PATH = path.join(path.dirname(path.dirname(path.abspath(__file__))), "data", "results.schema.json")

SPECTRUM_HEADER = ("z_m", "omega_rad_s", "Sxx", "Syy", "Szz", "units", "kind", "path")
ION_RATES_HEADER = ("z_m", "gamma_plus", "gamma_minus", "Gamma_0to1")
SPIN_RATES_HEADER = ("z_m", "larmor_rad_s", "Gamma_flip")
COHERENCE_HEADER = ("t_s", "s_m", "re_gamma", "im_gamma", "stderr")
MOMENTS_HEADER = ("t_s", "dp2", "dr2", "stderr_dp2", "stderr_dr2")


@dataclass
class ResultTable:
    name: str
    header: tuple
    rows: list = field(default_factory=list)

    def append(self, *values) -> None:
        if len(values) != len(self.header):
            raise OutputError(f"Table {self.name}: row has {len(values)} values, header has {len(self.header)}")
        self.rows.append(values)


    def column(self, name: str) -> list:
        index = self.header.index(name)
        return [row[index] for row in self.rows]



def format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, int)) and not isinstance(value, float):
        return str(int(value))
    return repr(float(value))


def write_csv(table: ResultTable, out_dir: str) -> str:
    makedirs(out_dir, exist_ok=True)
    file_path = path.join(out_dir, f"{table.name}.csv")

    with open(file_path, "w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([format_value(value) for value in row])

    logger.debug(f"[Output] {len(table.rows)} rows -> {file_path}")
    return file_path


def _json_value(value):
    if isinstance(value, str):
        return value
    value = float(value)
    return value if math.isfinite(value) else None


def _parameters(config) -> dict:
    parameters = {}
    for key, value in config.as_dict().items():
        if isinstance(value, list):
            value = [_json_value(v) for v in value]
        elif isinstance(value, float):
            value = _json_value(value)
        parameters[key] = value
    return parameters


def load_schema() -> dict:
    with open(SCHEMA_PATH, "r") as file:
        return json.load(file)


def result_document(command: str, config, tables: list[ResultTable]) -> dict:
    return {
        "tool": "nearfield-noise",
        "version": __version__,
        "command": command,
        "parameters": _parameters(config),
        "tables": [{
            "name": table.name,
            "columns": list(table.header),
            "rows": [[_json_value(value) for value in row] for row in table.rows],
        } for table in tables],
    }


def validate_document(document: dict) -> None:
    try:
        jsonschema.validate(document, load_schema())
    except jsonschema.ValidationError as e:
        raise OutputError(f"Result document does not match {SCHEMA_PATH}: {e.message}") from e


def write_json(document: dict, out_dir: str, name: str) -> str:
    validate_document(document)
    makedirs(out_dir, exist_ok=True)
    file_path = path.join(out_dir, f"{name}.json")

    with open(file_path, "w") as file:
        json.dump(document, file, indent=2, sort_keys=True)
        file.write("\n")

    logger.debug(f"[Output] JSON -> {file_path}")
    return file_path


def append_spectrum_row(table: ResultTable, z: float, omega: float, tensor, path_name: str) -> None:
    sxx, syy, szz = tensor.diagonal()
    table.append(z, omega, sxx, syy, szz, tensor.units, tensor.kind, path_name)
