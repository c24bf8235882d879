import os
import typing

import click

from sphericallab import optmanager
from sphericallab import version
from sphericallab.utils import human


def show_version(ctx, param, value):
    if value:
        click.secho(f"version : {version.get_dev_version()}")
        ctx.exit()


def show_options(ctx, param, value):
    if value:
        click.echo(optmanager.dump_defaults(ctx.obj.options), nl=False)
        ctx.exit()


def int_list(ctx, param, value) -> typing.Optional[typing.List[int]]:
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


def float_list(ctx, param, value) -> typing.Optional[typing.List[float]]:
    if value is None:
        return None
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


def count(ctx, param, value) -> typing.Optional[int]:
    if value is None:
        return None
    try:
        return human.parse_count(value)
    except ValueError:
        raise click.BadParameter(f"expected a count like 5000, 300m or 2^28, got {value!r}")


def str_list(ctx, param, value) -> typing.List[str]:
    return [v.strip() for v in (value or "").split(",") if v.strip()]


def exponent_options(func):
    func = click.option("--inv-r", default="1/2", show_default=True, help="1/r as num/den.")(func)
    func = click.option("--inv-p", default="1/2", show_default=True, help="1/p as num/den.")(func)
    return func


@click.group()
@click.option('--version', '-V', is_flag=True, is_eager=True, expose_value=False, callback=show_version,
              help='Show version information.')
@click.option('--options', is_flag=True, is_eager=True, expose_value=False, callback=show_options,
              help='Print every option with its default as annotated YAML.')
@click.option('--threads', type=int, help='Worker threads; 0 uses every core.')
@click.option('--seed', type=int, help='Seed for random families and samples.')
@click.option('--budget', callback=count, metavar='COUNT',
              help='Work-unit budget of a single computation, e.g. 300m or 2^28.')
@click.option('--output', '-o', type=click.Path(dir_okay=False), help='Write records here instead of stdout.')
@click.option('--format', 'fmt', type=click.Choice(["json", "csv", "text"]), help='Record format.')
@click.option('--record-timings', is_flag=True, default=False, help='Add runtime_ms to every record.')
@click.option('--set', 'setoptions', multiple=True, metavar='option=value', help='Set any option.')
@click.option('--quiet', '-q', is_flag=True, default=False, help='Only log errors.')
@click.option('--verbose', '-v', is_flag=True, default=False, help='Log debug messages.')
@click.pass_obj
def cli(lab, threads, seed, budget, output, fmt, record_timings, setoptions, quiet, verbose):
    """
    Exact and numerical checks for discrete spherical averages.
    """
    opts = lab.options
    optmanager.load_paths(
        opts,
        os.path.join(opts.confdir, "config.yaml"),
        os.path.join(opts.confdir, "config.yml"),
    )
    opts.set(*setoptions)
    flags = dict(threads=threads, seed=seed, budget=budget, output=output, format=fmt)
    if record_timings:
        flags["record_timings"] = True
    if quiet:
        flags["termlog_verbosity"] = "error"
    if verbose:
        flags["termlog_verbosity"] = "debug"
    opts.merge(flags)


@cli.command("ramanujan-moment")
@click.option('--k', type=int, default=2, show_default=True)
@click.option('--q-max', type=int, default=1024, show_default=True)
@click.option('--n', type=int, default=0, show_default=True, help='Start of the window.')
@click.option('--delta', type=float, default=None, help='Exponent slack; defaults to delta_fit.')
@click.pass_obj
def ramanujan_moment(lab, k, q_max, n, delta):
    """Moments of Ramanujan block sums over windows of length Q^k."""
    lab.run("ramanujan-moment", dict(k=k, q_max=q_max, n=n, delta=delta))


@cli.command("lcm-sum")
@click.option('--k', type=int, default=2, show_default=True)
@click.option('--q-max', type=int, default=4096, show_default=True)
@click.option('--delta', type=float, default=None)
@click.option('--slack', type=float, default=0.3, show_default=True, help='Largest accepted log-slope.')
@click.pass_obj
def lcm_sum(lab, k, q_max, delta, slack):
    """Reciprocal lcm sums over dyadic boxes of moduli."""
    lab.run("lcm-sum", dict(k=k, q_max=q_max, delta=delta, slack=slack))


@cli.command("kloosterman-scan")
@click.option('--q-max', type=int, default=211, show_default=True)
@click.option('--slack', type=float, default=0.25, show_default=True)
@click.pass_obj
def kloosterman_scan(lab, q_max, slack):
    """Largest restricted Kloosterman sums over prime moduli."""
    lab.run("kloosterman-scan", dict(q_max=q_max, slack=slack))


@cli.command("gauss-scan")
@click.option('--q-max', type=int, default=256, show_default=True)
@click.option('--d-max', type=int, default=5, show_default=True)
@click.pass_obj
def gauss_scan(lab, q_max, d_max):
    """Worst normalized Gauss sums against 2^{d/2}."""
    lab.run("gauss-scan", dict(q_max=q_max, d_max=d_max))


@cli.command("farey-check")
@click.option('--lambda-max', type=int, default=128, show_default=True)
@click.option('--random-taus', type=int, default=1000, show_default=True)
@click.pass_obj
def farey_check(lab, lambda_max, random_taus):
    """Farey dissection, neighbors and inverse-range coverings."""
    lab.run("farey-check", dict(lambda_max=lambda_max, random_taus=random_taus))


@cli.command("rd-table")
@click.option('--d', type=int, default=5, show_default=True)
@click.option('--n-max', type=int, default=200, show_default=True)
@click.pass_obj
def rd_table(lab, d, n_max):
    """Sphere counts r_d(n), cross-checked by enumeration."""
    lab.run("rd-table", dict(d=d, n_max=n_max))


@cli.command("maxop-ratio")
@click.option('--d', type=int, default=5, show_default=True)
@click.option('--level', type=int, default=1, show_default=True)
@click.option('--family', type=click.Choice(["point", "ball", "box", "sphere_shell", "random_density"]),
              default="point", show_default=True)
@click.option('--scale', type=float, default=1.0, show_default=True)
@exponent_options
@click.pass_obj
def maxop_ratio(lab, d, level, family, scale, inv_p, inv_r):
    """Restricted-input norm ratio of the dyadic maximal average."""
    lab.run("maxop-ratio", dict(d=d, level=level, family=family, scale=scale, inv_p=inv_p, inv_r=inv_r))


@cli.command("maxop-scaling")
@click.option('--d', type=int, default=5, show_default=True)
@click.option('--levels', default="1,2,4", show_default=True, callback=int_list)
@click.option('--family', type=click.Choice(["ball", "box", "sphere_shell", "random_density"]),
              default="ball", show_default=True)
@click.option('--scales', default="0.5", show_default=True, callback=float_list)
@click.option('--trials', type=int, default=1, show_default=True)
@click.option('--slack', type=float, default=0.3, show_default=True)
@exponent_options
@click.pass_obj
def maxop_scaling(lab, d, levels, family, scales, trials, slack, inv_p, inv_r):
    """Log-slope of the best family ratio against the improving exponent."""
    lab.run("maxop-scaling", dict(
        d=d, levels=levels, family=family, scales=scales, trials=trials, slack=slack, inv_p=inv_p, inv_r=inv_r,
    ))


@cli.command("symbol-compare")
@click.option('--d', type=int, default=3, show_default=True)
@click.option('--n', type=int, default=5, show_default=True, help='λ².')
@click.option('--level', type=int, default=2, show_default=True)
@click.option('--width', type=int, default=64, show_default=True)
@click.option('--resolution', type=int, default=16, show_default=True)
@click.option('--tol', type=float, default=1e-9, show_default=True)
@click.pass_obj
def symbol_compare(lab, d, n, level, width, resolution, tol):
    """Exact symbol against the FFT of the average and against the main term."""
    lab.run("symbol-compare", dict(d=d, n=n, level=level, width=width, resolution=resolution, tol=tol))


@cli.command("kernel-check")
@click.option('--d', type=int, default=2, show_default=True)
@click.option('--n', type=int, default=25, show_default=True, help='λ².')
@click.option('--level', type=int, default=4, show_default=True)
@click.option('--block', type=int, default=1, show_default=True)
@click.option('--grid', type=int, default=32, show_default=True)
@click.option('--points', type=int, default=8, show_default=True)
@click.option('--tol', type=float, default=1e-6, show_default=True)
@click.option('--m-list', default="64,256,1024,4096", show_default=True, callback=int_list)
@click.pass_obj
def kernel_check(lab, d, n, level, block, grid, points, tol, m_list):
    """Block kernels by quadrature against their spectral form."""
    lab.run("kernel-check", dict(
        d=d, n=n, level=level, block=block, grid=grid, points=points, tol=tol, m_list=m_list,
    ))


@cli.command("regions-emit")
@click.option('--d', type=int, default=6, show_default=True)
@click.option('--regions', default="", callback=str_list, help='Comma-separated names; all by default.')
@click.pass_obj
def regions_emit(lab, d, regions):
    """Vertex tables and containments of the exponent regions."""
    lab.run("regions-emit", dict(d=d, regions=regions))


@cli.command("sparse-verify")
@click.option('--d', type=int, default=5, show_default=True)
@click.option('--box', type=int, default=32, show_default=True)
@click.option('--points', type=int, default=50, show_default=True)
@click.option('--pairs', type=int, default=20, show_default=True)
@click.option('--c0', type=float, default=1.0, show_default=True)
@exponent_options
@click.pass_obj
def sparse_verify(lab, d, box, points, pairs, c0, inv_p, inv_r):
    """Stopping-time trees, sparsity and domination constants for random pairs."""
    lab.run("sparse-verify", dict(d=d, box=box, points=points, pairs=pairs, c0=c0, inv_p=inv_p, inv_r=inv_r))
