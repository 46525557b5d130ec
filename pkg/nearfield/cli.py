# Copyright (c) 2026, nearfield-noise contributors

import argparse
import logging
import sys

from nearfield import __version__
from nearfield.errors import ConfigError, NearfieldError, QuadratureError
from nearfield.figures import COMMAND_TABLE
from nearfield.run_config import COMMANDS, build_config
from nearfield.sweep import SweepRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_QUADRATURE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser("nearfield-noise",
                                     description="Thermal near-field noise above metal surfaces")
    parser.add_argument("command", choices=COMMANDS, help="Figure or sweep to run")
    parser.add_argument("--out", dest="out_dir", type=str, help="Output directory")
    parser.add_argument("--config", type=str, help="YAML run config, its keys override flags")
    parser.add_argument("--format", dest="formats", type=str, help="Comma separated subset of csv,json,svg")
    parser.add_argument("--material", type=str, help="Material name from the table")
    parser.add_argument("--materials", dest="materials_file", type=str, help="Extra material table")
    parser.add_argument("--temperature", type=float, help="Temperature in K")
    parser.add_argument("--kind", choices=("electric", "magnetic"), help="Field for the spectrum command")
    parser.add_argument("--path", choices=("exact", "asymptotic", "both"), help="Spectrum evaluation path")
    parser.add_argument("--z-grid", dest="z_grid", type=str, help="Heights in m, start:stop:count[:log|lin]")
    parser.add_argument("--frequency-grid", dest="frequency_grid", type=str, help="Frequencies in Hz")
    parser.add_argument("--s-grid", dest="s_grid", type=str, help="Lateral separations in m")
    parser.add_argument("--t-grid", dest="t_grid", type=str, help="Times in s")
    parser.add_argument("--z", dest="z_height", type=float, help="Height for fig5/fig6 in m")
    parser.add_argument("--trap-frequency", dest="trap_frequency", type=float, help="Ion trap frequency in Hz")
    parser.add_argument("--larmor", dest="larmor_frequencies", type=str, help="Larmor frequencies in Hz")
    parser.add_argument("--dim", type=int, choices=(1, 2), help="Waveguide dimension")
    parser.add_argument("--family", choices=("lorentzian", "gaussian"), help="Potential correlation family")
    parser.add_argument("--gamma", type=float, help="Forward scattering rate in 1/s")
    parser.add_argument("--ell", type=float, help="Correlation length in m")
    parser.add_argument("--mass", dest="atom_mass_amu", type=float, help="Atom mass in amu")
    parser.add_argument("--force", type=str, help="External force in N, comma separated components")
    parser.add_argument("--particles", type=int, help="Monte Carlo ensemble size")
    parser.add_argument("--seed", type=int, help="Monte Carlo seed")
    parser.add_argument("--workers", type=int, help="Worker threads (capped by NEARFIELD_THREADS)")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings and errors only")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)


def _progress(done: int, total: int) -> None:
    step = max(1, total // 10)
    if done % step == 0 or done == total:
        logger.info(f"[Sweep] {done}/{total}")


def run(args: argparse.Namespace) -> int:
    try:
        config = build_config(args, args.config)
        runner = SweepRunner(config.workers)
        runner.subscribe("point-done", _progress)

        logger.info(f"[Nearfield] {config.command} on {runner.workers} workers -> {config.out_dir}")
        written = COMMAND_TABLE[config.command](config, runner)

    except ConfigError as e:
        logger.error(f"[Config] {e}")
        return EXIT_CONFIG

    except QuadratureError as e:
        logger.error(f"[Quadrature] {e}")
        return EXIT_QUADRATURE

    except OSError as e:
        logger.error(f"[Output] {e.filename or ''}: {e.strerror or e}")
        return EXIT_IO

    except NearfieldError as e:
        logger.error(f"[Nearfield] {e}")
        return EXIT_CONFIG

    for file_path in written:
        logger.debug(f"[Nearfield] wrote {file_path}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    return run(args)
