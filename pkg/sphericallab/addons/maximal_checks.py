from sphericallab import experiment
from sphericallab import maximal
from sphericallab import regions


class MaxopRatio(experiment.Experiment):
    name = "maxop-ratio"

    def run(self, config, failures):
        p = config.params
        point = regions.ExponentPoint(p["inv_p"], p["inv_r"])
        E = maximal.family_set(p["family"], p["level"], p["d"], p["scale"], config.seed)
        est = maximal.restricted_ratio(E, point, p["level"], family=p["family"])
        self.check(failures, est.ratio >= 0, "negative norm ratio")
        return [est]


class MaxopScaling(experiment.Experiment):
    """
        Slope of the family's best ratio in Λ. Points meeting the necessary
        condition are checked against the improving exponent plus slack;
        other points are only reported.
    """
    name = "maxop-scaling"

    def run(self, config, failures):
        p = config.params
        point = regions.ExponentPoint(p["inv_p"], p["inv_r"])
        report, estimates = maximal.scaling_fit(
            p["family"], point, p["d"], p["levels"], scales=p["scales"], trials=p["trials"], seed=config.seed,
        )
        if regions.necessary_condition(point, p["d"]):
            self.check(
                failures, report.excess <= p["slack"],
                f"slope {report.slope:.4f} exceeds exponent {report.theoretical} by more than {p['slack']}",
            )
        return [dict(kind="estimate", **e.get_state()) for e in estimates] + [dict(kind="fit", **report.get_state())]
