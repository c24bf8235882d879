import dataclasses
import fractions
import typing

from sphericallab import ctx
from sphericallab import exceptions
from sphericallab.utils import rational

# parameters that stay exact rationals on their way from the command line
RATIONAL_PARAMS = ("inv_p", "inv_r")


@dataclasses.dataclass
class ExperimentConfig:
    command: str
    params: typing.Dict[str, typing.Any]
    seed: int
    budget: int
    output: typing.Optional[str]
    format: str

    def __post_init__(self):
        if self.budget <= 0:
            raise exceptions.OptionsError(f"budget must be positive, got {self.budget}")
        if self.format not in ("json", "csv", "text"):
            raise exceptions.OptionsError(f"unknown format {self.format!r}")
        for name in RATIONAL_PARAMS:
            value = self.params.get(name)
            if value is not None and not isinstance(value, fractions.Fraction):
                try:
                    self.params[name] = rational.parse_rational(value)
                except ValueError as e:
                    raise exceptions.OptionsError(f"--{name.replace('_', '-')}: {e}")

    @classmethod
    def from_options(cls, command: str, params: typing.Dict[str, typing.Any]) -> "ExperimentConfig":
        opts = ctx.options
        return cls(
            command=command,
            params=dict(params),
            seed=opts.seed,
            budget=opts.budget,
            output=opts.output,
            format=opts.format,
        )

    def get_state(self):
        state = dict(self.params)
        state.update(seed=self.seed, budget=self.budget)
        return state


@dataclasses.dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: typing.List[typing.Any]
    failures: typing.List[str]

    @property
    def ok(self) -> bool:
        return not self.failures


class Experiment:
    """
        Base for the experiment addons. The addon name is the subcommand;
        run() returns the records and appends failed checks to failures.
    """
    name = ""

    def run(self, config: ExperimentConfig, failures: typing.List[str]) -> typing.List[typing.Any]:
        raise NotImplementedError()

    def check(self, failures: typing.List[str], ok: bool, what: str) -> bool:
        if not ok:
            failures.append(what)
            ctx.log.alert(f"{self.name}: check failed: {what}")
        return ok
