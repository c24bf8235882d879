"""
Experiments on the arithmetic averages: Ramanujan moments, lcm sums,
Kloosterman maxima and Gauss-sum constants.
"""
import typing

from sphericallab import arithmetic
from sphericallab import experiment
from sphericallab import moments


def dyadic_range(lo: int, hi: int) -> typing.List[int]:
    out, q = [], lo
    while q <= hi:
        out.append(q)
        q *= 2
    return out


def primes_upto(n: int) -> typing.List[int]:
    return [q for q in range(2, n + 1) if arithmetic.factorize(q) == ((q, 1),)]


class RamanujanMoment(experiment.Experiment):
    name = "ramanujan-moment"

    def run(self, config, failures):
        p = config.params
        fit, reports = moments.moment_slope(p["k"], dyadic_range(2, p["q_max"]), N=p["n"], delta=p["delta"])
        self.check(failures, fit.slope <= 1 + fit.delta, f"moment slope {fit.slope:.4f} above {1 + fit.delta}")
        self.check(failures, fit.r2 >= 0.9, f"moment fit R^2 {fit.r2:.4f} below 0.9")
        return [dict(kind="moment", **r.get_state()) for r in reports] + [dict(kind="fit", **fit.get_state())]


class LcmSum(experiment.Experiment):
    name = "lcm-sum"

    def run(self, config, failures):
        p = config.params
        Qs = dyadic_range(1, p["q_max"])
        sums = [float(moments.lcm_reciprocal_sum(Q, p["k"])) for Q in Qs]
        fit = moments.fit(Qs, sums, delta=p["delta"], exponent=0.0)
        self.check(failures, fit.slope <= p["slack"], f"lcm reciprocal slope {fit.slope:.4f} above {p['slack']}")
        records: typing.List[typing.Any] = [
            dict(kind="reciprocal", Q=Q, k=p["k"], sum=s) for Q, s in zip(Qs, sums)
        ]
        records += [dict(kind="set", **moments.lcm_set_sum(Q, p["k"], p["delta"])) for Q in Qs]
        for r in records[len(Qs):]:
            self.check(failures, r["distinct"] <= r["tuples"], f"more distinct lcms than tuples at Q={r['Q']}")
        return records + [dict(kind="fit", **fit.get_state())]


class KloostermanScan(experiment.Experiment):
    name = "kloosterman-scan"

    def run(self, config, failures):
        p = config.params
        report = moments.kloosterman_scan(primes_upto(p["q_max"]))
        self.check(failures, report["slope"] <= p["slack"], f"Kloosterman slope {report['slope']:.4f} above {p['slack']}")
        return [report]


class GaussScan(experiment.Experiment):
    name = "gauss-scan"

    def run(self, config, failures):
        p = config.params
        report = moments.gauss_scan(p["q_max"], p["d_max"])
        for row in report["rows"]:
            self.check(failures, row["ok"], f"Gauss bound exceeded at d={row['d']}")
        return [report]
