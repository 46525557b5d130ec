# Copyright (c) 2026, nearfield-noise contributors
"""Commands: figure reproduction and generic sweeps.

Every command builds ResultTables, then _emit writes CSV (always) plus the
JSON document and SVG plots when asked for. Returns the written paths.
"""

import logging
from os import path

import numpy as np

from nearfield.constants import AMU, BOHR_MAGNETON, ELEMENTARY_CHARGE, TWO_PI
from nearfield.ensemble import gaussian_sampler, simulate_ensemble
from nearfield.errors import ConfigError
from nearfield.halfspace import HalfSpaceGeometry, correlation_curve, lateral_correlation_asymptotic
from nearfield.materials import ThermalEnvironment, get_material, load_material_table
from nearfield.output import (COHERENCE_HEADER, ION_RATES_HEADER, MOMENTS_HEADER, SPECTRUM_HEADER,
                              SPIN_RATES_HEADER, ResultTable, append_spectrum_row, result_document,
                              write_csv, write_json)
from nearfield.plotting import LinePlot, write_svg
from nearfield.providers import asymptotic_provider, blackbody_provider, exact_provider, johnson_provider
from nearfield.rates import IonTrapSpec, SpinTrapSpec, heating_rate_sweep, spin_flip_sweep
from nearfield.run_config import RunConfig, save_config
from nearfield.sweep import SweepRunner
from nearfield.transport import (AnalyticState, CorrelationModel, TransportParams, coherence_function,
                                 gaussian_initial, momentum_variance, position_variance)

logger = logging.getLogger(__name__)

FIG7_EXPOSURES = (0.0, 0.5, 1.0, 2.0, 5.0)
FIG7_SEPARATIONS = np.linspace(0.0, 5.0, 51)
JOHNSON_RESISTANCE = 1.0


def _geometry(config: RunConfig) -> HalfSpaceGeometry:
    table = load_material_table(config.materials_file) if config.materials_file else None
    material = get_material(config.material, table)
    return HalfSpaceGeometry(config.z_height, material, ThermalEnvironment(config.temperature))


def _paths(config: RunConfig) -> tuple[str, ...]:
    return ("exact", "asymptotic") if config.path == "both" else (config.path,)


def _frequency_label(frequency: float) -> str:
    return f"{frequency / 1e6:g}MHz"


def _emit(config: RunConfig, name: str, tables: list[ResultTable], plots: list[tuple[str, LinePlot]]) -> list[str]:
    written = [write_csv(table, config.out_dir) for table in tables]
    written.append(save_config(config, path.join(config.out_dir, "run_config.yaml")))

    if "json" in config.formats:
        written.append(write_json(result_document(config.command, config, tables), config.out_dir, name))

    if "svg" in config.formats:
        for plot_name, plot in plots:
            written.append(write_svg(plot, path.join(config.out_dir, f"{plot_name}.svg")))

    logger.info(f"[Figures] {config.command}: {len(written)} files in {config.out_dir}")
    return written


def _ion_trap(config: RunConfig) -> IonTrapSpec:
    return IonTrapSpec(config.ion_mass_amu * AMU, config.ion_charge_e * ELEMENTARY_CHARGE,
                       TWO_PI * config.trap_frequency, _geometry(config))


def _ion_table(name: str, z_values, rates) -> ResultTable:
    table = ResultTable(name, ION_RATES_HEADER)
    for z, pair in zip(z_values, rates):
        table.append(z, pair.gamma_plus, pair.gamma_minus, pair.heating_rate)
    return table


def _spin_table(name: str, z_values, larmor: float, rates) -> ResultTable:
    table = ResultTable(name, SPIN_RATES_HEADER)
    for z, rate in zip(z_values, rates):
        table.append(z, larmor, rate)
    return table


def cmd_fig2(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    """Ion heating rate vs height: exact, asymptotic and Johnson (R = 1 Ohm)."""
    trap = _ion_trap(config)
    env = trap.geometry.env
    z_values = config.z_grid

    curves = {
        "exact": lambda geom: exact_provider(geom, "electric"),
        "asymptotic": lambda geom: asymptotic_provider(geom, "electric"),
        "johnson": lambda geom: johnson_provider(trap.charge, geom.z, JOHNSON_RESISTANCE, env),
    }

    plot = LinePlot("Ion heating rate", "z (m)", "Gamma_0->1 (1/s)")
    tables = []
    for label, make_provider in curves.items():
        rates = heating_rate_sweep(trap, z_values, make_provider, runner)
        tables.append(_ion_table(f"fig2_{label}", z_values, rates))
        plot.add(label, z_values, [pair.heating_rate for pair in rates], "dots" if label == "exact" else "line")

    return _emit(config, "fig2", tables, [("fig2", plot)])


def cmd_fig4(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    """Spin-flip rate vs height for each Larmor frequency, plus blackbody."""
    geometry = _geometry(config)
    z_values = config.z_grid
    mu = config.mu_bohr * BOHR_MAGNETON

    plot = LinePlot("Spin flip rate", "z (m)", "Gamma_flip (1/s)")
    tables = []
    for frequency in config.larmor_frequencies:
        spec = SpinTrapSpec(mu, TWO_PI * frequency, geometry)
        for path_name in _paths(config):
            if path_name == "exact":
                make_provider = lambda geom: exact_provider(geom, "magnetic")
            else:
                make_provider = lambda geom: asymptotic_provider(geom, "magnetic")

            rates = spin_flip_sweep(spec, z_values, make_provider, runner)
            label = f"{path_name}_{_frequency_label(frequency)}"
            tables.append(_spin_table(f"fig4_{label}", z_values, spec.larmor, rates))
            plot.add(label, z_values, rates, "dots" if path_name == "exact" else "line")

    spec = SpinTrapSpec(mu, TWO_PI * config.larmor_frequencies[0], geometry)
    blackbody = blackbody_provider(geometry.env, "magnetic")
    rates = spin_flip_sweep(spec, z_values, lambda geom: blackbody, runner)
    tables.append(_spin_table("fig4_blackbody", z_values, spec.larmor, rates))
    plot.add("blackbody", z_values, rates)

    return _emit(config, "fig4", tables, [("fig4", plot)])


def _fig5_tables(config: RunConfig, runner: SweepRunner | None) -> tuple[list, list]:
    geometry = _geometry(config)
    omegas = config.omega_grid
    points = [(omega, path_name) for path_name in _paths(config) for omega in omegas]

    def evaluate(point):
        omega, path_name = point
        if path_name == "exact":
            return exact_provider(geometry, "magnetic")(omega)
        return asymptotic_provider(geometry, "magnetic")(omega)

    tensors = (runner or SweepRunner(1)).run(evaluate, points)

    table = ResultTable("fig5_spectrum", SPECTRUM_HEADER)
    plot = LinePlot(f"Magnetic spectrum at z = {geometry.z:g} m", "omega/2pi (Hz)", "S_B^zz (T^2 s)")
    for path_name in _paths(config):
        values = []
        for (omega, point_path), tensor in zip(points, tensors):
            if point_path == path_name:
                append_spectrum_row(table, geometry.z, omega, tensor, path_name)
                values.append(tensor.components[2, 2])
        plot.add(path_name, config.frequency_grid, values, "dots" if path_name == "exact" else "line")

    return [table], [("fig5", plot)]


def _fig6_tables(config: RunConfig) -> tuple[list, list]:
    geometry = _geometry(config)
    omega = TWO_PI * config.correlation_frequency
    s_values = np.asarray(config.s_grid)

    table = ResultTable("fig6_correlation", ("s_m", "Cxx", "Cyy", "Czz", "path"))
    plot = LinePlot(f"Lateral correlation at {_frequency_label(config.correlation_frequency)}",
                    "s (m)", "C(s)", x_log=False, y_log=False)

    if "exact" in _paths(config):
        curve = correlation_curve(geometry, omega, "magnetic", s_values)
        for s, row in zip(curve.s_values, curve.c_values):
            table.append(s, *row, "exact")
        for name in ("xx", "zz"):
            plot.add(f"exact {name}", s_values, curve.component(name), "dots")

    if "asymptotic" in _paths(config):
        rows = np.array([lateral_correlation_asymptotic(geometry.z, s, "magnetic") for s in s_values])
        for s, row in zip(s_values, rows):
            table.append(s, *row, "asymptotic")
        plot.add("asymptotic xx", s_values, rows[:, 0])
        plot.add("asymptotic zz", s_values, rows[:, 2])

    return [table], [("fig6", plot)]


def cmd_fig5(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    tables, plots = _fig5_tables(config, runner)
    return _emit(config, "fig5", tables, plots)


def cmd_fig6(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    tables, plots = _fig6_tables(config)
    return _emit(config, "fig6", tables, plots)


def cmd_fig5_fig6(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    spectrum_tables, spectrum_plots = _fig5_tables(config, runner)
    correlation_tables, correlation_plots = _fig6_tables(config)
    return _emit(config, "fig5_fig6", spectrum_tables + correlation_tables, spectrum_plots + correlation_plots)


def _transport_setup(config: RunConfig) -> tuple[CorrelationModel, TransportParams]:
    model = CorrelationModel(config.gamma, config.ell, config.family, config.dim)
    params = TransportParams(config.atom_mass_amu * AMU, config.force, config.dim)
    return model, params


def _coherence_rows(table: ResultTable, t_values, s_values, values, stderr) -> None:
    for i, t in enumerate(t_values):
        for j, s in enumerate(s_values):
            table.append(t, s, values[i][j].real, values[i][j].imag, stderr[i][j])


def cmd_fig7(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    """Coherence Gamma(s, t) / Gamma_0(s) of a Lorentzian waveguide at fixed gamma t."""
    if not config.gamma > 0:
        raise ConfigError("fig7 needs a scattering rate gamma > 0")

    model, params = _transport_setup(config.replace(family="lorentzian"))
    t_values = np.array(FIG7_EXPOSURES) / model.gamma
    s_values = FIG7_SEPARATIONS * model.ell

    state = AnalyticState(gaussian_initial(0.0, 0.0, dim=params.dim), model, params)
    analytic = [[coherence_function(state, s, t) for s in s_values] for t in t_values]
    analytic_table = ResultTable("fig7_analytic", COHERENCE_HEADER)
    _coherence_rows(analytic_table, t_values, s_values, analytic, np.zeros((len(t_values), len(s_values))))

    run = simulate_ensemble(model, params, config.particles, config.seed, t_values,
                            s_values=s_values, runner=runner)
    estimates = run.estimates
    mc_table = ResultTable("fig7_montecarlo", COHERENCE_HEADER)
    _coherence_rows(mc_table, t_values, s_values, estimates.coherence, estimates.coherence_stderr)

    plot = LinePlot("Spatial coherence in a waveguide", "s / l", "|Gamma / Gamma_0|", x_log=False, y_log=False)
    for i, exposure in enumerate(FIG7_EXPOSURES):
        plot.add(f"gamma t = {exposure:g}", FIG7_SEPARATIONS, np.abs(analytic[i]))
        plot.add(f"MC {exposure:g}", FIG7_SEPARATIONS, np.abs(estimates.coherence[i]), "dots")

    return _emit(config, "fig7", [analytic_table, mc_table], [("fig7", plot)])


def cmd_spectrum(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    """Spectrum tensor on the z x omega grid, z-major, one row per path."""
    base = _geometry(config)
    points = [(z, omega, path_name) for z in config.z_grid for omega in config.omega_grid
              for path_name in _paths(config)]

    def evaluate(point):
        z, omega, path_name = point
        geom = base.at_height(z)
        if path_name == "exact":
            return exact_provider(geom, config.kind)(omega)
        return asymptotic_provider(geom, config.kind)(omega)

    tensors = (runner or SweepRunner(1)).run(evaluate, points)

    table = ResultTable(f"spectrum_{config.kind}", SPECTRUM_HEADER)
    plot = LinePlot(f"{config.kind} spectrum (zz)", "z (m)", f"S^zz ({tensors[0].units})")
    for (z, omega, path_name), tensor in zip(points, tensors):
        append_spectrum_row(table, z, omega, tensor, path_name)

    omega = config.omega_grid[0]
    for path_name in _paths(config):
        values = [t.components[2, 2] for (z, w, p), t in zip(points, tensors) if p == path_name and w == omega]
        plot.add(f"{path_name} {_frequency_label(omega / TWO_PI)}", config.z_grid, values,
                 "dots" if path_name == "exact" else "line")

    return _emit(config, "spectrum", [table], [(f"spectrum_{config.kind}", plot)])


def cmd_rates(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    """Ion heating and spin-flip rates vs height for the selected paths."""
    trap = _ion_trap(config)
    mu = config.mu_bohr * BOHR_MAGNETON
    z_values = config.z_grid

    tables = []
    ion_plot = LinePlot("Ion heating rate", "z (m)", "Gamma_0->1 (1/s)")
    spin_plot = LinePlot("Spin flip rate", "z (m)", "Gamma_flip (1/s)")
    for path_name in _paths(config):
        if path_name == "exact":
            electric = lambda geom: exact_provider(geom, "electric")
            magnetic = lambda geom: exact_provider(geom, "magnetic")
        else:
            electric = lambda geom: asymptotic_provider(geom, "electric")
            magnetic = lambda geom: asymptotic_provider(geom, "magnetic")

        rates = heating_rate_sweep(trap, z_values, electric, runner)
        tables.append(_ion_table(f"rates_ion_{path_name}", z_values, rates))
        ion_plot.add(path_name, z_values, [pair.heating_rate for pair in rates])

        for frequency in config.larmor_frequencies:
            spec = SpinTrapSpec(mu, TWO_PI * frequency, trap.geometry)
            flips = spin_flip_sweep(spec, z_values, magnetic, runner)
            label = f"{path_name}_{_frequency_label(frequency)}"
            tables.append(_spin_table(f"rates_spin_{label}", z_values, spec.larmor, flips))
            spin_plot.add(label, z_values, flips)

    return _emit(config, "rates", tables, [("rates_ion", ion_plot), ("rates_spin", spin_plot)])


def cmd_transport(config: RunConfig, runner: SweepRunner | None = None) -> list[str]:
    """Monte Carlo ensemble against the analytic coherence and moments."""
    model, params = _transport_setup(config)
    t_values = np.asarray(config.t_grid)
    s_values = np.asarray(config.s_grid)

    sampler = gaussian_sampler(config.dr0, config.dp0, dim=params.dim)
    run = simulate_ensemble(model, params, config.particles, config.seed, t_values, sampler,
                            s_values=s_values, runner=runner)
    estimates = run.estimates

    state = AnalyticState(gaussian_initial(0.0, 0.0, dim=params.dim), model, params)
    analytic = [[coherence_function(state, s, t) for s in s_values] for t in t_values]

    analytic_table = ResultTable("transport_coherence_analytic", COHERENCE_HEADER)
    _coherence_rows(analytic_table, t_values, s_values, analytic, np.zeros((len(t_values), len(s_values))))
    mc_table = ResultTable("transport_coherence", COHERENCE_HEADER)
    _coherence_rows(mc_table, t_values, s_values, estimates.coherence, estimates.coherence_stderr)

    moments = ResultTable("transport_moments", MOMENTS_HEADER)
    predicted = ResultTable("transport_moments_analytic", MOMENTS_HEADER)
    for i, t in enumerate(t_values):
        moments.append(t, estimates.dp2[i], estimates.dr2[i], estimates.stderr_dp2[i], estimates.stderr_dr2[i])
        predicted.append(t, momentum_variance(model, params, config.dp0 ** 2, t),
                         position_variance(model, params, config.dr0 ** 2, config.dp0 ** 2, t), 0.0, 0.0)

    plot = LinePlot("Momentum spread", "t (s)", "dp^2 ((kg m/s)^2)", x_log=False, y_log=False)
    plot.add("analytic", t_values, predicted.column("dp2"))
    plot.add("Monte Carlo", t_values, estimates.dp2, "dots")

    tables = [analytic_table, mc_table, moments, predicted]
    return _emit(config, "transport", tables, [("transport_moments", plot)])


COMMAND_TABLE = {
    "fig2": cmd_fig2,
    "fig4": cmd_fig4,
    "fig5": cmd_fig5,
    "fig6": cmd_fig6,
    "fig7": cmd_fig7,
    "spectrum": cmd_spectrum,
    "rates": cmd_rates,
    "transport": cmd_transport,
}
