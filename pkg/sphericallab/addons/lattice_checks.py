from sphericallab import arithmetic
from sphericallab import experiment
from sphericallab import lattice


class RdTable(experiment.Experiment):
    """r_d(n) with the enumeration count and, in d = 4, Jacobi's formula."""
    name = "rd-table"

    def run(self, config, failures):
        d, n_max = config.params["d"], config.params["n_max"]
        counts = lattice.sphere_counts(d, n_max)
        records = []
        for n in range(n_max + 1):
            r = int(counts[n])
            enumerated = len(lattice.sphere_points(d, n))
            self.check(failures, r == enumerated, f"r_{d}({n}) = {r} but {enumerated} points enumerated")
            row = dict(n=n, r=r)
            if d == 4 and n % 2:
                row["jacobi"] = 8 * arithmetic.divisor_sum(n)
                self.check(failures, r == row["jacobi"], f"r_4({n}) = {r} differs from 8σ({n})")
            records.append(row)
        return records
