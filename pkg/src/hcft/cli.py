"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage, input or domain error.
Superfunction and distribution arguments are JSON files (``-`` reads standard
input) in the schemas documented in :mod:`hcft.io`.
"""
from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import io
from .convolution import banach_check, convolve, convolve_dist, sobolev_norm
from .errors import HCFTError
from .fourier import component, inverse, paley_wiener_check, transform, transform_dist
from .integral import berezin_integral, pairing
from .spinrep import dpi, represent
from .superalgebra import parse_element
from .superfunction import product
from .verify import SUITES, VerifyConfig, run_suite


class CheckFailed(Exception):
    """Raised by subcommands whose check did not pass (exit code 1)."""


def _zeta_grid(zmin: float, zmax: float, zsteps: int, imag: float) -> np.ndarray:
    if zsteps < 1:
        raise click.BadParameter("--zsteps must be positive")
    return np.linspace(zmin, zmax, zsteps) + 1j * imag


def zeta_options(fn):
    fn = click.option("--imag", type=float, default=0.0, help="Constant imaginary part of every zeta.")(fn)
    fn = click.option("--zsteps", type=int, default=4, show_default=True)(fn)
    fn = click.option("--zmax", type=float, default=2.0, show_default=True)(fn)
    fn = click.option("--zmin", type=float, default=-2.0, show_default=True)(fn)
    return fn


def _parse_grid(text: str | None):
    if text is None:
        return None
    try:
        x0, x1, m = text.split(",")
        return float(x0), float(x1), int(m)
    except ValueError as exc:
        raise click.BadParameter(f"grid must look like 'x0,x1,M', got {text!r}") from exc


def _parse_zeta(text: str) -> complex:
    try:
        parts = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise click.BadParameter(f"zeta must look like 're,im', got {text!r}") from exc
    if len(parts) == 1:
        return complex(parts[0])
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise click.BadParameter(f"zeta must look like 're,im', got {text!r}")


def _emit(ctx: click.Context, obj, text: str | None = None) -> None:
    """Print ``obj`` as JSON, or ``text`` when given and ``--json`` is off."""
    if ctx.obj["quiet"]:
        return
    if text is not None and not ctx.obj["json"]:
        click.echo(text)
    else:
        click.echo(io.dumps(obj))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output for reports.")
@click.option("--quiet", is_flag=True, help="Print nothing; rely on the exit code.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized suites.")
@click.pass_context
def cli(ctx, as_json, quiet, seed):
    """Harmonic analysis on the Heisenberg-Clifford supergroup."""
    ctx.obj = {"json": as_json, "quiet": quiet, "seed": seed}


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--zeta", default="1,0", show_default=True, help="Complex parameter as 're,im'.")
@click.option("--element", default="1", show_default=True, help='PBW element, e.g. "2 z^1 a{1,3} + (0,1) a{2}".')
@click.option("--dpi", "use_dpi", is_flag=True, help="Print dpi_zeta(u) instead of c_zeta(u).")
@click.pass_context
def spinrep(ctx, n, zeta, element, use_dpi):
    """Matrix of a PBW element in the spin representation."""
    u = parse_element(element, n)
    z = _parse_zeta(zeta)
    M = (dpi if use_dpi else represent)(u, z)
    _emit(ctx, io.matrix_to_json(M.entries))


@cli.command("transform")
@click.argument("path")
@zeta_options
@click.option("--component", "comp", default=None, help="Print A(u; zeta) for this PBW element instead.")
@click.pass_context
def transform_cmd(ctx, path, zmin, zmax, zsteps, imag, comp):
    """Fourier transform of a superfunction on a zeta grid."""
    F = io.load_superfunction(path)
    z = _zeta_grid(zmin, zmax, zsteps, imag)
    A = transform(F)
    if comp is not None:
        vals = np.atleast_1d(component(A, parse_element(comp, F.n), z))
        rows = [{"zeta": io.cplx(zz), "value": io.cplx(v)} for zz, v in zip(z, vals)]
        text = "\n".join(f"{zz.real:+.6f}{zz.imag:+.6f}j  {v.real:+.12e}{v.imag:+.12e}j" for zz, v in zip(z, vals))
        _emit(ctx, rows, text)
        return
    mats = A(z)
    _emit(ctx, {"zeta": [io.cplx(v) for v in z], "matrices": [io.matrix_to_json(m) for m in mats]})


@cli.command("inverse")
@click.argument("path")
@click.option("--grid", default=None, help="Output grid 'x0,x1,M' for sampled transforms.")
@click.option("--tol", type=float, default=None, help="Fail (exit 1) if the round trip deviates by more.")
@click.pass_context
def inverse_cmd(ctx, path, grid, tol):
    """Transform a superfunction and invert it again; prints the reconstruction."""
    F = io.load_superfunction(path)
    G = inverse(transform(F), _parse_grid(grid))
    _emit(ctx, io.superfunction_to_json(G))
    if tol is not None:
        err = _round_trip_error(F, G)
        if not err < tol:
            raise CheckFailed(f"round-trip error {err:.3e} exceeds {tol:.1e}")


def _round_trip_error(F, G) -> float:
    if F.backend == "grid":
        err = 0.0
        for m in set(F.comps) | set(G.comps):
            f, g = F.component(m), G.component(m)
            err = max(err, float(np.abs(g(f.x) - f.values).max()))
        return err
    return F.max_abs_diff(G)


@cli.command()
@click.argument("path")
@zeta_options
@click.pass_context
def laplace(ctx, path, zmin, zmax, zsteps, imag):
    """Fourier-Laplace transform of a point-supported distribution."""
    U = io.load_distribution(path)
    z = _zeta_grid(zmin, zmax, zsteps, imag)
    mats = transform_dist(U)(z)
    _emit(ctx, {"zeta": [io.cplx(v) for v in z], "matrices": [io.matrix_to_json(m) for m in mats]})


@cli.command("pw-check")
@click.argument("path")
@click.option("--a", "radius", type=float, required=True, help="Support radius to test.")
@click.option("--N", "n_max", type=int, default=6, show_default=True, help="Largest decay order.")
@click.option("--grid", default=None, help="Resample Gaussian components on 'x0,x1,M' first.")
@click.pass_context
def pw_check(ctx, path, radius, n_max, grid):
    """Paley-Wiener growth diagnostic for the transform of a superfunction."""
    F = io.load_superfunction(path)
    g = _parse_grid(grid)
    if g is not None:
        F = F.to_grid(g)
    rep = paley_wiener_check(transform(F), radius, tuple(range(n_max + 1)))
    lines = [f"N={N}  C_N={rep.constants[N]:.4e}  refined/base={rep.ratios[N]:.3f}" for N in sorted(rep.constants)]
    lines.append(f"a={radius}: {'PASS' if rep.passed else 'FAIL'}")
    _emit(ctx, rep.to_dict(), "\n".join(lines))
    if not rep.passed:
        raise CheckFailed(f"growth estimates unstable for a={radius}")


@cli.command("convolve")
@click.argument("f_path")
@click.argument("g_path")
@click.pass_context
def convolve_cmd(ctx, f_path, g_path):
    """Convolution F * G of two superfunctions."""
    _emit(ctx, io.superfunction_to_json(convolve(io.load_superfunction(f_path), io.load_superfunction(g_path))))


@cli.command("dist-convolve")
@click.argument("u_path")
@click.argument("f_path")
@click.pass_context
def dist_convolve(ctx, u_path, f_path):
    """Convolution U * F of a point-supported distribution with a superfunction."""
    U = io.load_distribution(u_path)
    _emit(ctx, io.superfunction_to_json(convolve_dist(U, io.load_superfunction(f_path))))


@cli.command()
@click.argument("path")
@click.option("--k", type=int, default=None, help="Sobolev order (default: n).")
@click.option("--p", type=float, default=1.0, show_default=True)
@click.pass_context
def norm(ctx, path, k, p):
    """Sobolev norm ||F||_{k,p}."""
    F = io.load_superfunction(path)
    res = sobolev_norm(F, F.n if k is None else k, p)
    _emit(ctx, {"k": res.k, "p": res.p, "value": res.value}, f"{res.value:.15g}")


@cli.command("banach-check")
@click.argument("f_path")
@click.argument("g_path")
@click.option("--slack", type=float, default=1e-8, show_default=True)
@click.pass_context
def banach_cmd(ctx, f_path, g_path, slack):
    """Check ||F*G||_{n,1} <= ||F||_{n,1} ||G||_{n,1}."""
    rep = banach_check(io.load_superfunction(f_path), io.load_superfunction(g_path), slack)
    text = (f"||F*G|| = {rep.lhs:.6e}  ||F|| ||G|| = {rep.rhs:.6e}  ratio {rep.ratio:.4f}  "
            f"{'PASS' if rep.passed else 'FAIL'}")
    _emit(ctx, rep.to_dict(), text)
    if not rep.passed:
        raise CheckFailed("Banach inequality violated")


@cli.command()
@click.option("--suite", type=click.Choice(["all", *SUITES]), default="all", show_default=True)
@click.option("--n", "n_max", type=int, default=None, help="Cap on the ambient dimension.")
@click.option("--tol", type=float, default=None, help="Tolerance floor: no check is held tighter than this.")
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.pass_context
def verify(ctx, suite, n_max, tol, seed):
    """Run the verification suites."""
    cfg = VerifyConfig(n_max=n_max, seed=ctx.obj["seed"] if seed is None else seed, tol_floor=tol)
    names = list(SUITES) if suite == "all" else [suite]
    reports = []
    for name in names:
        rep = run_suite(name, cfg)
        reports.append(rep)
        if not ctx.obj["quiet"] and not ctx.obj["json"]:
            click.echo(rep.table())
            click.echo()
    passed = all(r.passed for r in reports)
    if ctx.obj["json"] and not ctx.obj["quiet"]:
        click.echo(json.dumps({"passed": passed, "suites": [r.to_dict() for r in reports]}))
    if not passed:
        raise CheckFailed("verification failed: " + ", ".join(r.suite for r in reports if not r.passed))


@cli.command("product")
@click.argument("f_path")
@click.argument("g_path")
@click.pass_context
def product_cmd(ctx, f_path, g_path):
    """Pointwise product F . G."""
    _emit(ctx, io.superfunction_to_json(product(io.load_superfunction(f_path), io.load_superfunction(g_path))))


@cli.command()
@click.argument("f_path")
@click.argument("g_path")
@click.pass_context
def pair(ctx, f_path, g_path):
    """Invariant pairing <F, G>."""
    v = pairing(io.load_superfunction(f_path), io.load_superfunction(g_path))
    _emit(ctx, io.cplx(v), f"{v.real:.15g} {v.imag:+.15g}j")


@cli.command()
@click.argument("path")
@click.pass_context
def integral(ctx, path):
    """Berezin integral of a superfunction."""
    v = berezin_integral(io.load_superfunction(path))
    _emit(ctx, io.cplx(v), f"{v.real:.15g} {v.imag:+.15g}j")


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the exit code instead of raising ``SystemExit``."""
    try:
        cli.main(args=argv, prog_name="hcft", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.Abort:
        click.echo("aborted", err=True)
        return 2
    except CheckFailed as exc:
        click.echo(f"check failed: {exc}", err=True)
        return 1
    except (HCFTError, ValueError, KeyError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
