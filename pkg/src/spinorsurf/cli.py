"""Command-line front end: surface construction, flow evolution, verification.

Relative output paths are resolved against ``SPINORSURF_OUT_DIR`` when that
environment variable is set.  Exit codes: 0 success, 2 usage error (bad or
missing parameters, including the spectral pole), 3 numerical failure.
"""
from __future__ import annotations

import json
import os
import sys

import click
import numpy as np

from . import checks as checks_mod
from . import mkdv
from .errors import BlowUpError, ConfigurationError, IntegrationError, PoleError
from .soliton import SolitonParams, SpectralParam, bargmann_potential, revolve_spinors
from .spinor_core import GridSpec, PotentialField, dirac_residual
from .weierstrass import (
    MeshFormat,
    QuadratureSpec,
    PathSpec,
    build_mesh,
    conformality_defect,
    export_mesh,
    immersion_integrals,
)

_CONFORMALITY_DISPLAY_THRESHOLD = 0.05


def _resolve_out(path: str) -> str:
    base = os.environ.get("SPINORSURF_OUT_DIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _parse_lambda(ctx, param, value):
    if value is None:
        return None
    try:
        parts = [float(p) for p in value.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected 're' or 're,im', got {value!r}")
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise click.BadParameter(f"expected 're' or 're,im', got {value!r}")


_CONFIG_ALIASES = {"format": "fmt", "lambda": "lam"}


def _apply_config(ctx: click.Context, config_path: str, allowed: set) -> None:
    """Fill parameters from a flat JSON object; explicit flags win."""
    with open(config_path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise click.UsageError("--config must contain a flat JSON object")
    for key, value in data.items():
        name = key.replace("-", "_")
        name = _CONFIG_ALIASES.get(name, name)
        if name not in allowed:
            raise click.UsageError(f"unknown config key {key!r}")
        src = ctx.get_parameter_source(name)
        if src is None or src.name == "DEFAULT":
            if name == "lam":
                value = _parse_lambda(ctx, None, str(value))
            ctx.params[name] = value


@click.group()
def main():
    """Spinor-represented surfaces and their integrable deformation."""


@main.command("soliton-surface")
@click.option("--mu", type=float, default=None,
              help="Soliton width/amplitude parameter (> 0); required via flag or config.")
@click.option("--phase", type=float, default=0.0, show_default=True, help="Soliton phase offset.")
@click.option("--sign", type=click.Choice(["1", "-1"]), default="1", show_default=True)
@click.option("--lambda", "lam", callback=_parse_lambda, default="1,0", show_default=True,
              help="Spectral parameter as 're' or 're,im'.")
@click.option("--xmin", type=float, default=-6.0, show_default=True)
@click.option("--xmax", type=float, default=6.0, show_default=True)
@click.option("--ymin", type=float, default=0.0, show_default=True)
@click.option("--ymax", type=float, default=2 * np.pi, show_default=True)
@click.option("--nx", type=int, default=121, show_default=True)
@click.option("--ny", type=int, default=64, show_default=True)
@click.option("--quad-nodes", type=int, default=16, show_default=True)
@click.option("--quad-subdivisions", type=int, default=8, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["obj", "ply", "csv"]), default="obj",
              show_default=True)
@click.option("--out", type=str, default=None, help="Output path (default surface.<format>).")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Flat JSON file of option values; explicit flags override.")
@click.pass_context
def soliton_surface(ctx, mu, phase, sign, lam, xmin, xmax, ymin, ymax, nx, ny,
                    quad_nodes, quad_subdivisions, fmt, out, config_path):
    """Build the immersed soliton surface and write a mesh file."""
    if config_path is not None:
        _apply_config(ctx, config_path, {
            "mu", "phase", "sign", "lam", "xmin", "xmax", "ymin", "ymax",
            "nx", "ny", "quad_nodes", "quad_subdivisions", "fmt", "out",
        })
        p = ctx.params
        mu, phase, sign, lam = p["mu"], p["phase"], p["sign"], p["lam"]
        xmin, xmax, ymin, ymax = p["xmin"], p["xmax"], p["ymin"], p["ymax"]
        nx, ny = p["nx"], p["ny"]
        quad_nodes, quad_subdivisions = p["quad_nodes"], p["quad_subdivisions"]
        fmt, out = p["fmt"], p["out"]
    if mu is None:
        raise click.UsageError("Missing option '--mu'.")
    try:
        params = SolitonParams(mu=mu, phi0=phase, sign=int(sign))
        spectral = SpectralParam(lam)
        spectral.check_against(params)
    except PoleError as exc:
        raise click.UsageError(
            f"--lambda {lam.real:g},{lam.imag:g} sits at the closed-form pole "
            f"(2i*lambda = mu): {exc}"
        )
    except ConfigurationError as exc:
        raise click.UsageError(str(exc))

    try:
        grid = GridSpec(x_min=xmin, x_max=xmax, y_min=ymin, y_max=ymax, nx=nx, ny=ny)
        quad = QuadratureSpec(nodes=quad_nodes, subdivisions=quad_subdivisions)
        field = revolve_spinors(params, lam)
        potential = PotentialField.of_x(lambda x: 0.5 * bargmann_potential(params, x)[0])
        r1, r2 = dirac_residual(field, potential, grid)
        mesh = build_mesh(field, grid, quad)
        defect = conformality_defect(mesh)
        leak = float(np.abs(immersion_integrals(
            field, PathSpec([(xmin, ymin), (xmax, ymin), (xmax, ymax)]), quad).imag).max())
    except (IntegrationError, FloatingPointError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(3)

    if out is None:
        out = f"surface.{fmt}"
    out = _resolve_out(out)
    export_mesh(mesh, out, MeshFormat(fmt))

    click.echo(f"mesh {nx} x {ny} vertices, {(nx - 1) * (ny - 1)} quads")
    click.echo(f"dirac_residual {max(r1, r2):.6e}")
    click.echo(f"imag_leakage {leak:.6e}")
    quality = "fine" if defect < _CONFORMALITY_DISPLAY_THRESHOLD else "coarse"
    click.echo(f"conformality_defect {defect:.6e} ({quality})")
    click.echo(f"wrote {out}")


@main.command("evolve")
@click.option("--init", type=click.Choice(["exact-soliton", "bargmann", "file"]),
              default="exact-soliton", show_default=True)
@click.option("--kappa", type=float, default=1.0, show_default=True,
              help="Soliton parameter for --init exact-soliton.")
@click.option("--mu", type=float, default=1.0, show_default=True,
              help="Potential parameter for --init bargmann.")
@click.option("--sign", type=click.Choice(["1", "-1"]), default="1", show_default=True)
@click.option("--variant", type=click.Choice(["geometric", "standard"]), default="geometric",
              show_default=True)
@click.option("--domain-length", type=float, default=40.0, show_default=True)
@click.option("--n", type=int, default=512, show_default=True)
@click.option("--dt", type=float, default=1e-4, show_default=True)
@click.option("--t-end", type=float, default=1.0, show_default=True)
@click.option("--record-every", type=int, default=0, show_default=True)
@click.option("--init-file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="CSV of initial samples (header 'u'), required for --init file.")
@click.option("--out", type=str, default=None, help="Trajectory CSV output path.")
@click.option("--mesh-out", type=str, default=None,
              help="Prefix for per-snapshot OBJ surfaces (bargmann init only); writes "
                   "<prefix>_<k>.obj from the deformed spinor field at each snapshot time.")
@click.option("--lambda", "lam", callback=_parse_lambda, default="0,1", show_default=True,
              help="Spectral parameter for --mesh-out surfaces.")
def evolve_cmd(init, kappa, mu, sign, variant, domain_length, n, dt, t_end,
               record_every, init_file, out, mesh_out, lam):
    """Evolve an initial profile under the chosen flow normalization."""
    var = mkdv.MkdvVariant.GEOMETRIC if variant == "geometric" else mkdv.MkdvVariant.STANDARD
    if mesh_out is not None and init != "bargmann":
        raise click.UsageError("--mesh-out requires --init bargmann (surfaces come from the "
                               "deformed spinor field)")
    try:
        if init == "exact-soliton":
            u0 = mkdv.Profile1D.from_callable(
                lambda x: mkdv.exact_soliton(var, kappa, x, 0.0), domain_length, n)
        elif init == "bargmann":
            params = SolitonParams(mu=mu, sign=int(sign))
            u0 = mkdv.Profile1D.from_callable(
                lambda x: bargmann_potential(params, x)[0], domain_length, n)
        else:
            if init_file is None:
                raise click.UsageError("--init file requires --init-file")
            vals = _read_profile_csv(init_file)
            u0 = mkdv.Profile1D(values=vals, domain_length=domain_length)
        config = mkdv.EvolutionConfig(dt=dt, t_end=t_end, record_every=record_every)
    except ConfigurationError as exc:
        raise click.UsageError(str(exc))

    try:
        traj = mkdv.evolve(u0, var, config)
    except BlowUpError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(3)

    click.echo(f"evolved to t = {traj.times[-1]:.6g} in {len(traj)} snapshots")
    i0, iT = np.array(traj.invariants[0]), np.array(traj.invariants[-1])
    drift = np.abs(iT - i0) / np.maximum(1.0, np.abs(i0))
    click.echo(f"invariant_drift {drift[0]:.6e} {drift[1]:.6e} {drift[2]:.6e}")
    if init == "exact-soliton":
        exact = mkdv.exact_soliton(var, kappa, u0.grid, traj.times[-1])
        err = float(np.abs(traj.final.values - exact).max())
        click.echo(f"tracking_error {err:.6e}")
    elif init == "bargmann":
        dev = checks_mod.translation_deviation(u0, traj.final)
        click.echo(f"translation_deviation {dev:.6e}")
    if out is not None:
        out = _resolve_out(out)
        mkdv.export_trajectory_csv(traj, out)
        click.echo(f"wrote {out}")
    if mesh_out is not None:
        params = SolitonParams(mu=mu, sign=int(sign))
        try:
            SpectralParam(lam).check_against(params)
        except PoleError as exc:
            raise click.UsageError(f"--lambda: {exc}")
        grid = GridSpec(x_min=-6.0, x_max=6.0, y_min=0.0, y_max=2 * np.pi, nx=49, ny=33)
        for idx, t in enumerate(traj.times):
            field = mkdv.deformed_spinor_field(params, lam, t)
            mesh = build_mesh(field, grid, QuadratureSpec())
            path = _resolve_out(f"{mesh_out}_{idx:03d}.obj")
            export_mesh(mesh, path, MeshFormat.OBJ)
        click.echo(f"wrote {len(traj)} surface snapshots to {mesh_out}_*.obj")


def _read_profile_csv(path: str) -> np.ndarray:
    import csv as _csv

    with open(path, newline="") as fh:
        reader = _csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise click.UsageError(f"{path}: empty profile file")
    start = 1 if rows[0] and not _is_float(rows[0][-1]) else 0
    try:
        return np.array([float(r[-1]) for r in rows[start:] if r])
    except ValueError as exc:
        raise click.UsageError(f"{path}: {exc}")


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


@main.command("verify")
@click.option("--suite", type=click.Choice(list(checks_mod.SUITE_NAMES)), default="all",
              show_default=True)
@click.option("--out", type=str, default=None, help="Also write the report to this path.")
def verify(suite, out):
    """Run a verification suite; non-zero exit if any check fails."""
    results = checks_mod.run_suite(suite)
    report = checks_mod.format_report(results)
    click.echo(report, nl=False)
    if out is not None:
        out = _resolve_out(out)
        with open(out, "w", newline="\n") as fh:
            fh.write(report)
    if not all(r.passed for r in results):
        click.echo("verification failed", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()
