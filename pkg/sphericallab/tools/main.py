import typing

import click

from sphericallab import addons
from sphericallab import exceptions
from sphericallab import master
from sphericallab import options
from sphericallab.addons import termlog
from sphericallab.tools import cmdline

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3


def make_lab(opts: typing.Optional[options.Options] = None) -> master.Lab:
    lab = master.Lab(opts or options.Options())
    lab.addons.add(termlog.TermLog(), *addons.default_addons())
    return lab


def _fail(msg: str) -> None:
    click.secho(f"sphericallab: {msg}", fg="red", err=True)


def run(args: typing.Optional[typing.Sequence[str]] = None, lab: typing.Optional[master.Lab] = None) -> int:
    """
        Parse args, run the experiment and map the outcome to an exit code:
        2 for configuration and usage errors, 3 for an exhausted budget and
        1 for failed checks.
    """
    lab = lab or make_lab()
    try:
        rv = cmdline.cli.main(args=list(args) if args is not None else None, obj=lab,
                              prog_name="sphericallab", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_CONFIG
    except click.Abort:
        _fail("aborted")
        return EXIT_CHECK
    except exceptions.BudgetExceeded as e:
        _fail(str(e))
        return EXIT_BUDGET
    except (exceptions.CheckFailed, exceptions.PropositionViolation,
            exceptions.QuadratureNotConverged, exceptions.RecursionBudget) as e:
        _fail(str(e))
        return EXIT_CHECK
    except exceptions.SphericalLabException as e:
        _fail(str(e))
        return EXIT_CONFIG
    if isinstance(rv, int):
        return rv
    return EXIT_OK


def sphericallab(args=None) -> typing.Optional[int]:  # pragma: no cover
    return run(args)
