import sys
import time
import typing

from sphericallab import addonmanager
from sphericallab import ctx as lab_ctx
from sphericallab import exceptions
from sphericallab import experiment
from sphericallab import io
from sphericallab import log
from sphericallab import options
from sphericallab.utils import human


class Lab:
    """
        The lab owns the options, the log and the addons, and dispatches
        experiments to the addon named after the subcommand.
    """

    def __init__(self, opts: typing.Optional[options.Options] = None):
        self.options: options.Options = opts or options.Options()
        self.addons = addonmanager.AddonManager(self)
        self.log = log.Log(self)

        lab_ctx.master = self
        lab_ctx.log = self.log
        lab_ctx.options = self.options

    def run(self, command: str, params: typing.Dict[str, typing.Any]) -> experiment.ExperimentResult:
        """
            Run one experiment and write its artifact. Raises CheckFailed after
            the artifact is written when a check failed.
        """
        addon = self.addons.get(command)
        if addon is None:
            raise exceptions.OptionsError(f"unknown experiment {command!r}")
        config = experiment.ExperimentConfig.from_options(command, params)
        self.addons.trigger("running")
        self.log.info(f"{command}: start")
        self.log.debug(f"{command}: budget {human.pretty_count(self.options.budget)} work units")
        failures: typing.List[str] = []
        start = time.perf_counter()
        records = addon.run(config, failures)
        elapsed = (time.perf_counter() - start) * 1000
        if self.options.record_timings:
            records = [dict(_state(r), runtime_ms=elapsed) for r in records]
        result = experiment.ExperimentResult(config=config, records=records, failures=failures)
        self.write(result, getattr(addon, "polygons", None))
        self.log.info(
            f"{command}: {len(records)} records, {len(failures)} failed checks "
            f"in {human.pretty_duration(elapsed / 1000)}"
        )
        self.addons.trigger("done")
        if failures:
            raise exceptions.CheckFailed("; ".join(failures))
        return result

    def write(self, result: experiment.ExperimentResult, polygons=None) -> None:
        path = self.options.output
        fo = open(path, "w", newline="") if path else sys.stdout
        try:
            if polygons is not None and result.config.format == "text":
                io.write_polygons(fo, polygons(result.records))
            else:
                io.RecordWriter(fo, result.config.format).write(
                    result.config.command, result.config.get_state(), result.records
                )
        finally:
            if path:
                fo.close()


def _state(record):
    return record.get_state() if hasattr(record, "get_state") else dict(record)
