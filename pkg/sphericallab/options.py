import os
import typing

from sphericallab import optmanager

CONF_DIR = "~/.sphericallab"
CONF_BASENAME = "sphericallab"
THREADS_ENV = "SPHERICAL_LAB_THREADS"


class Options(optmanager.OptManager):

    def __init__(self, **kwargs) -> None:
        super().__init__()
        self.add_option(
            "threads", int, 0,
            """
            Worker threads for parallel sweeps. 0 uses every available core.
            The SPHERICAL_LAB_THREADS environment variable takes precedence
            over the configured value.
            """
        )
        self.add_option(
            "seed", int, 0,
            "Seed for every random family and sampled check."
        )
        self.add_option(
            "budget", int, 2 ** 28,
            """
            Maximum work units (points times samples) a single computation may
            use before BudgetExceeded is raised.
            """
        )
        self.add_option(
            "output", typing.Optional[str], None,
            "Write records to this path instead of stdout."
        )
        self.add_option(
            "format", str, "json",
            "Record format.",
            choices=["json", "csv", "text"]
        )
        self.add_option(
            "record_timings", bool, False,
            """
            Add runtime_ms to every record. Off by default so that artifacts
            are byte-identical across runs.
            """
        )
        self.add_option(
            "confdir", str, CONF_DIR,
            "Location of the default configuration file."
        )
        self.add_option(
            "qmc_samples", int, 2 ** 16,
            "Quasi-Monte Carlo directions per sphere integral."
        )
        self.add_option(
            "qmc_replicates", int, 8,
            "Independent scrambles used to estimate the quadrature standard error."
        )
        self.add_option(
            "qmc_rtol", float, 1e-6,
            "Relative standard-error target for sphere integrals."
        )
        self.add_option(
            "qmc_atol", float, 1e-12,
            "Absolute standard-error floor for sphere integrals."
        )
        self.add_option(
            "bump_table_extent", float, 128.0,
            "Largest argument of the tabulated bump transform."
        )
        self.add_option(
            "bump_table_step", float, 1 / 32,
            "Spacing of the tabulated bump transform."
        )
        self.add_option(
            "delta_fit", float, 0.2,
            "Exponent slack used when reporting measured constants."
        )
        self.add_option(
            "stopping_delta", float, 0.1,
            "Integrability slack carried by stopping-time reports."
        )
        self.add_option(
            "packing_ratio", int, 100,
            "Stopping cubes of a node may cover at most 1/packing_ratio of it."
        )
        self.add_option(
            "recursion_cap", int, 32,
            "Maximum depth of a stopping-time tree."
        )
        self.update(**kwargs)

    def worker_count(self) -> int:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                n = int(env)
            except ValueError:
                n = 0
            if n > 0:
                return n
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1
