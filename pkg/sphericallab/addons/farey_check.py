import dataclasses

import numpy as np

from sphericallab import ctx
from sphericallab import experiment
from sphericallab import farey
from sphericallab.utils import parallel


class FareyCheck(experiment.Experiment):
    """Dissection, neighbor and covering checks at every level up to Λ_max."""
    name = "farey-check"

    def run(self, config, failures):
        p = config.params
        levels = list(range(1, p["lambda_max"] + 1))
        seeds = np.random.SeedSequence(config.seed).spawn(len(levels))

        def one(i):
            return farey.check_level(levels[i], p["random_taus"], np.random.default_rng(seeds[i]))

        reports = parallel.pool_map(one, range(len(levels)))
        for r in reports:
            if r.violations:
                ctx.log.warn(f"level {r.level}: {r.violations} covering violations")
            self.check(failures, r.violations == 0, f"{r.violations} violations at level {r.level}")
            self.check(failures, r.partition_ok, f"intervals do not tile the circle at level {r.level}")
            self.check(failures, r.neighbors_ok, f"neighbor denominators disagree at level {r.level}")
            self.check(failures, r.widths_ok, f"interval widths out of range at level {r.level}")
        summary = dict(
            kind="summary",
            lambda_max=p["lambda_max"],
            violations=sum(r.violations for r in reports),
            taus=sum(r.taus for r in reports),
            offset_wraps=sum(r.offset_wraps for r in reports),
        )
        return [dict(kind="level", **dataclasses.asdict(r)) for r in reports] + [summary]
