"""Experiment runner.

Subcommands reproduce the reference figure and table data as CSV files
plus standalone gnuplot scripts:

* ``correlation``: pairwise correlation vs element separation (fig2).
* ``eigen``: eigenvalue decay of the normalized correlation matrix for a
  large aperture at several spacings (fig3).
* ``spectrum``: wavenumber-domain power spectra (fig4, fig5).
* ``gain``: transmit array gain vs azimuth for four beamforming schemes
  (fig7).
* ``mc-eigen``: eigenvalue decay of the effective correlation with
  transmit/receive coupling (fig8, fig9, fig10).
* ``icsi``: coupling/correlation strength tables (table1, table2).
* ``reproduce-all``: all of the above.

Everything is deterministic: re-running a subcommand rewrites the same
bytes.  Exit codes: 0 success, 2 configuration error, 3 numerical error.
"""

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import analysis, correlation, coupling, response, spectrum
from .config import ExperimentConfig
from .errors import ConfigError, HolorisError, NumericalError
from .geometry import ElementKind, make_uniform_grid
from .outputs import (complex_matrix_rows, eigen_rows, impedance_label,
                      spacing_label, write_csv, write_gnuplot)

OUTPUT_DIR_ENV = "HOLORIS_OUT"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _impedance_matrix(cfg: ExperimentConfig, geom):
    if cfg.impedance.model == "dipole":
        return coupling.impedance_matrix_dipoles(geom, cfg.impedance.z_antenna)
    return coupling.impedance_matrix_isotropic(geom, cfg.impedance.r_iso)


def run_correlation(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    s = cfg.sweep
    seps = np.linspace(0.0, s.correlation_max_separation, s.correlation_points)
    rows = []
    for dz in seps:
        for dx in seps:
            rows.append((dx, dz, float(np.sinc(2.0 * math.hypot(dx, dz)))))
    csv = write_csv(
        outdir / "fig2_correlation.csv",
        "fig2 (spatial correlation vs element separation, isotropic scattering)",
        ["dx_wavelengths", "dz_wavelengths", "correlation"],
        rows,
    )
    gp = write_gnuplot(
        outdir / "fig2_correlation.gp",
        "Spatial correlation vs element separation",
        ["set xlabel 'dx (wavelengths)'", "set ylabel 'dz (wavelengths)'",
         "set view map", "set pm3d interpolate 2,2",
         "splot 'fig2_correlation.csv' using 1:2:3 with pm3d notitle"],
    )
    geom = cfg.geometry.build()
    r0 = correlation.correlation_matrix_isotropic(geom)
    matrix = write_csv(
        outdir / "matrix_r0.csv",
        "matrix export (correlation matrix of the configured geometry)",
        ["row", "col", "re", "im"],
        complex_matrix_rows(r0.values.astype(complex)),
        notes=[f"elements: {geom.n}, spacing_x: {geom.dx / geom.wavelength} wavelengths"],
    )
    return [csv, gp, matrix]


def run_eigen(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    s = cfg.sweep
    lam = cfg.geometry.wavelength
    paths = []
    summary = []
    for sp in s.eigen_spacings:
        geom = make_uniform_grid(
            lx=s.eigen_aperture * lam, lz=s.eigen_aperture * lam,
            dx=sp * lam, dz=sp * lam, wavelength=lam,
        )
        r0 = correlation.correlation_matrix_isotropic(geom)
        spec = analysis.eigen_spectrum(r0, normalize_by_n=True, geom=geom)
        label = spacing_label(sp)
        paths.append(write_csv(
            outdir / f"fig3_eigenvalues_dx{label}.csv",
            "fig3 (eigenvalue decay of the normalized correlation matrix)",
            ["index", "eigenvalue", "eigenvalue_db", "cumulative_fraction"],
            eigen_rows(spec.values),
            notes=[f"aperture: {s.eigen_aperture} wavelengths square, spacing: {sp} wavelengths"],
        ))
        summary.append((sp, geom.n, spec.dominant_count,
                        -1 if spec.knee_index is None else spec.knee_index,
                        spec.asymptotic_dof))
    paths.append(write_csv(
        outdir / "fig3_summary.csv",
        "fig3 (per-spacing eigenvalue summary)",
        ["spacing_wavelengths", "n_elements", "dominant_count", "knee_index",
         "asymptotic_dof"],
        summary,
        notes=["knee_index is -1 when no knee is detectable"],
    ))
    plot_lines = ["set logscale y", "set xlabel 'eigenvalue index'",
                  "set ylabel 'eigenvalue'"]
    series = ", ".join(
        f"'fig3_eigenvalues_dx{spacing_label(sp)}.csv' using 1:2 with lines title 'dx={sp:g}'"
        for sp in s.eigen_spacings
    )
    plot_lines.append("plot " + series)
    paths.append(write_gnuplot(outdir / "fig3_eigenvalues.gp",
                               "Eigenvalue decay vs index", plot_lines))
    return paths


def _spectrum_csv(outdir: Path, name: str, target: str, geom, notes) -> tuple[Path, dict]:
    seq = spectrum.generator_sequence(geom)
    spec = spectrum.power_spectrum(seq, geom)
    kappa = spec.wavenumber
    rows = []
    for i, kx in enumerate(spec.kx_grid):
        for j, kz in enumerate(spec.kz_grid):
            tag = "propagating" if spec.propagating[i, j] else "evanescent"
            rows.append((kx / kappa, kz / kappa, float(spec.values[i, j]), tag))
    path = write_csv(outdir / name, target,
                     ["kx_over_kappa", "kz_over_kappa", "g", "tag"], rows,
                     notes=notes)
    stats = {
        "sum_g": spec.total,
        "propagating_count": spec.propagating_count,
        "evanescent_fraction": 1.0 - spec.propagating_count / spec.values.size,
    }
    return path, stats


def run_spectrum(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    s = cfg.sweep
    lam = cfg.geometry.wavelength
    paths = []
    for sp in s.eigen_spacings:
        geom = make_uniform_grid(s.eigen_aperture * lam, s.eigen_aperture * lam,
                                 sp * lam, sp * lam, lam)
        path, _ = _spectrum_csv(
            outdir, f"fig4_spectrum_dx{spacing_label(sp)}.csv",
            "fig4 (wavenumber-domain power spectrum, large aperture)",
            geom,
            [f"aperture: {s.eigen_aperture} wavelengths, spacing: {sp} wavelengths"],
        )
        paths.append(path)
    checks = []
    for sp in s.spacings:
        geom = make_uniform_grid(cfg.geometry.aperture_x * lam,
                                 cfg.geometry.aperture_x * lam,
                                 sp * lam, sp * lam, lam)
        path, stats = _spectrum_csv(
            outdir, f"fig5_spectrum_dx{spacing_label(sp)}.csv",
            "fig5 (wavenumber-domain power spectrum, overview and zoom source)",
            geom,
            [f"aperture: {cfg.geometry.aperture_x} wavelengths, spacing: {sp} wavelengths"],
        )
        paths.append(path)
        checks.append((sp, geom.n, stats["sum_g"], stats["propagating_count"],
                       stats["evanescent_fraction"]))
    paths.append(write_csv(
        outdir / "fig5_sum_check.csv",
        "fig5 (spectrum sum and propagating-point counts per geometry)",
        ["spacing_wavelengths", "n_elements", "sum_g", "propagating_count",
         "evanescent_fraction"],
        checks,
    ))
    for sp in s.spacings:
        label = spacing_label(sp)
        paths.append(write_gnuplot(
            outdir / f"fig5_spectrum_dx{label}.gp",
            f"Wavenumber spectrum, dx = {sp:g} wavelengths",
            ["set xlabel 'kx / kappa'", "set ylabel 'kz / kappa'",
             "set view map",
             f"splot 'fig5_spectrum_dx{label}.csv' using 1:2:3 with points pt 5 ps 0.6 palette notitle"],
        ))
    return paths


_SCHEMES = (
    response.BeamformingScheme.PROPOSED_MC_AWARE,
    response.BeamformingScheme.CONJUGATE_MC_UNAWARE,
    response.BeamformingScheme.DIRECTIVITY_MAX,
    response.BeamformingScheme.NO_MC_REFERENCE,
)


def run_gain(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    s = cfg.sweep
    theta = math.radians(s.zenith_deg)
    phis = np.linspace(0.0, math.pi, s.azimuth_points)
    paths = []
    summary = []
    peak = {}
    for sp in s.gain_spacings:
        geom = cfg.geometry.build(spacing_x=sp)
        z = _impedance_matrix(cfg, geom)
        ct = coupling.coupling_tx(z, cfg.impedance.z_source)
        for scheme in _SCHEMES:
            sweep_vals = response.gain_sweep(geom, ct, scheme, theta, phis)
            rows = [(math.degrees(phi), g, 10.0 * math.log10(g) if g > 0 else float("-inf"))
                    for phi, g in sweep_vals]
            label = spacing_label(sp)
            paths.append(write_csv(
                outdir / f"fig7_gain_dx{label}_{scheme.value}.csv",
                "fig7 (transmit array gain vs azimuth)",
                ["phi_deg", "gain", "gain_db"],
                rows,
                notes=[f"spacing: {sp} wavelengths, elements: {geom.n}, "
                       f"zenith: {s.zenith_deg} deg, scheme: {scheme.value}"],
            ))
            gains = np.array([g for _, g in sweep_vals])
            peak[(sp, scheme)] = gains
            summary.append((sp, scheme.value, geom.n, float(gains.max()),
                            float(gains.max()) / geom.n))
    notes = []
    if len(s.gain_spacings) >= 2:
        dense = min(s.gain_spacings)
        coarse = max(s.gain_spacings)
        key = response.BeamformingScheme.PROPOSED_MC_AWARE
        ratio = peak[(dense, key)] / peak[(coarse, key)]
        notes.append(
            f"peak per-azimuth gain ratio dx={dense:g} vs dx={coarse:g} "
            f"(proposed scheme): {float(ratio.max()):.6g}"
        )
    paths.append(write_csv(
        outdir / "fig7_summary.csv",
        "fig7 (per-scheme gain maxima)",
        ["spacing_wavelengths", "scheme", "n_elements", "max_gain", "max_gain_over_n"],
        summary, notes=notes,
    ))
    series = []
    for sp in s.gain_spacings:
        for scheme in _SCHEMES:
            series.append(
                f"'fig7_gain_dx{spacing_label(sp)}_{scheme.value}.csv' "
                f"using 1:2 with lines title 'dx={sp:g} {scheme.value}'"
            )
    paths.append(write_gnuplot(
        outdir / "fig7_gain.gp", "Transmit array gain vs azimuth",
        ["set xlabel 'azimuth (deg)'", "set ylabel 'array gain'",
         "plot " + ", ".join(series)],
    ))
    return paths


def _eigen_csv(outdir: Path, name: str, target: str, corr, note: str) -> Path:
    spec = analysis.eigen_spectrum(corr, normalize_by_n=False)
    return write_csv(outdir / name, target,
                     ["index", "eigenvalue", "eigenvalue_db", "cumulative_fraction"],
                     eigen_rows(spec.values), notes=[note])


def run_mc_eigen(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    s = cfg.sweep
    paths = []
    for sp in s.spacings:
        geom = cfg.geometry.build(spacing_x=sp)
        r0 = correlation.correlation_matrix_isotropic(geom)
        z = _impedance_matrix(cfg, geom)
        label = spacing_label(sp)
        note = f"spacing: {sp} wavelengths, elements: {geom.n}"
        paths.append(_eigen_csv(
            outdir, f"fig8_tx_dx{label}_no_mc.csv",
            "fig8 (transmit effective correlation eigenvalues)", r0,
            note + ", coupling: none"))
        for zs in cfg.impedance.z_source_cases:
            ct = coupling.coupling_tx(z, zs)
            r = analysis.effective_correlation(ct, r0)
            paths.append(_eigen_csv(
                outdir, f"fig8_tx_dx{label}_{impedance_label('zs', zs)}.csv",
                "fig8 (transmit effective correlation eigenvalues)", r,
                note + f", z_source: {zs}"))
        paths.append(_eigen_csv(
            outdir, f"fig9_rx_dx{label}_no_mc.csv",
            "fig9 (receive effective correlation eigenvalues)", r0,
            note + ", coupling: none"))
        for zl in cfg.impedance.z_load_cases:
            cr = coupling.coupling_rx(z, zl)
            r = analysis.effective_correlation(cr, r0)
            paths.append(_eigen_csv(
                outdir, f"fig9_rx_dx{label}_{impedance_label('zl', zl)}.csv",
                "fig9 (receive effective correlation eigenvalues)", r,
                note + f", z_load: {zl}"))
        # dipole vs isotropic comparison at matched load
        if geom.element_kind is ElementKind.HALF_WAVE_DIPOLE:
            zd = coupling.impedance_matrix_dipoles(geom, cfg.impedance.z_antenna)
            cr = coupling.coupling_rx(zd, cfg.impedance.z_antenna.conjugate())
            paths.append(_eigen_csv(
                outdir, f"fig10_rx_dx{label}_dipole.csv",
                "fig10 (receive eigenvalues, dipole vs isotropic elements)",
                analysis.effective_correlation(cr, r0), note + ", elements: dipole"))
            zi = coupling.impedance_matrix_isotropic(geom, cfg.impedance.r_iso)
            cri = coupling.coupling_rx(zi, cfg.impedance.r_iso)
            paths.append(_eigen_csv(
                outdir, f"fig10_rx_dx{label}_isotropic.csv",
                "fig10 (receive eigenvalues, dipole vs isotropic elements)",
                analysis.effective_correlation(cri, r0), note + ", elements: isotropic"))
    paths.extend(_matrix_exports(cfg, outdir))
    return paths


def _matrix_exports(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    """Impedance and coupling matrices of the configured geometry as
    (row, col, re, im) CSVs."""
    geom = cfg.geometry.build()
    z = _impedance_matrix(cfg, geom)
    ct = coupling.coupling_tx(z, cfg.impedance.z_source)
    cr = coupling.coupling_rx(z, cfg.impedance.z_load)
    note = f"elements: {geom.n}, spacing_x: {geom.dx / geom.wavelength} wavelengths"
    out = []
    for name, target, values, extra in (
        ("matrix_z.csv", "impedance matrix of the configured geometry",
         z.values, f"z_self: {z.z_self}"),
        ("matrix_ct.csv", "transmit coupling matrix of the configured geometry",
         ct.values, f"z_source: {ct.port_impedance}"),
        ("matrix_cr.csv", "receive coupling matrix of the configured geometry",
         cr.values, f"z_load: {cr.port_impedance}"),
    ):
        out.append(write_csv(
            outdir / name, f"matrix export ({target})",
            ["row", "col", "re", "im"], complex_matrix_rows(values),
            notes=[note, extra],
        ))
    return out


def run_icsi(cfg: ExperimentConfig, outdir: Path) -> list[Path]:
    s = cfg.sweep
    tx_rows = []
    rx_rows = []
    for sp in s.spacings:
        geom = cfg.geometry.build(spacing_x=sp)
        r0 = correlation.correlation_matrix_isotropic(geom)
        z = _impedance_matrix(cfg, geom)
        base = analysis.icsi(r0)
        tx = [sp, base]
        for zs in cfg.impedance.z_source_cases:
            ct = coupling.coupling_tx(z, zs)
            tx.append(analysis.icsi(analysis.effective_correlation(ct, r0)))
        tx_rows.append(tuple(tx))
        rx = [sp, base]
        for zl in cfg.impedance.z_load_cases:
            cr = coupling.coupling_rx(z, zl)
            rx.append(analysis.icsi(analysis.effective_correlation(cr, r0)))
        rx_rows.append(tuple(rx))
    tx_cols = (["spacing_wavelengths", "no_mc"]
               + [impedance_label("zs", zs) for zs in cfg.impedance.z_source_cases])
    rx_cols = (["spacing_wavelengths", "no_mc"]
               + [impedance_label("zl", zl) for zl in cfg.impedance.z_load_cases])
    return [
        write_csv(outdir / "table1_icsi_tx.csv",
                  "table1 (coupling/correlation strength, transmit side)",
                  tx_cols, tx_rows),
        write_csv(outdir / "table2_icsi_rx.csv",
                  "table2 (coupling/correlation strength, receive side)",
                  rx_cols, rx_rows),
    ]


SUBCOMMANDS = {
    "correlation": run_correlation,
    "eigen": run_eigen,
    "spectrum": run_spectrum,
    "gain": run_gain,
    "mc-eigen": run_mc_eigen,
    "icsi": run_icsi,
}


def run(subcommand: str, cfg: ExperimentConfig, outdir: Path,
        jobs: int = 1) -> list[Path]:
    """Run one subcommand (or all of them) and return the written paths."""
    outdir = Path(outdir)
    if subcommand == "reproduce-all":
        results = []
        with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
            futures = [pool.submit(fn, cfg, outdir) for fn in SUBCOMMANDS.values()]
            for fut in futures:
                results.extend(fut.result())
        return results
    try:
        fn = SUBCOMMANDS[subcommand]
    except KeyError:
        raise ConfigError(f"unknown subcommand {subcommand!r}") from None
    return fn(cfg, outdir)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoris",
        description="Reproduce correlation, spectrum, coupling and gain experiments as CSV.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in list(SUBCOMMANDS) + ["reproduce-all"]:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, default=None,
                       help="JSON experiment config (defaults to the packaged setup)")
        p.add_argument("--out", type=Path, default=None,
                       help=f"output directory (default: config value or ${OUTPUT_DIR_ENV})")
        p.add_argument("--format", choices=["csv"], default="csv")
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       help="parallel experiments for reproduce-all")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = (ExperimentConfig.from_file(args.config) if args.config
               else ExperimentConfig.default())
        outdir = args.out or Path(os.environ.get(OUTPUT_DIR_ENV, "")
                                  or cfg.output.directory)
        paths = run(args.subcommand, cfg, outdir, jobs=args.jobs)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except HolorisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
