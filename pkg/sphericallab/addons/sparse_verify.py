import numpy as np

from sphericallab import experiment
from sphericallab import regions
from sphericallab import sparse
from sphericallab.utils import parallel


def random_pair(rng: np.random.Generator, d: int, box: int, size: int):
    """Two sets of size distinct points drawn from [0, box)^d."""
    out = []
    for _ in range(2):
        pts = np.unique(rng.integers(0, box, size=(size, d)), axis=0)
        out.append(pts)
    return out


class SparseVerify(experiment.Experiment):
    """
        Stopping-time trees for seeded random pairs: packing at every node,
        sparsity of the converted collections, the measured domination
        constant and its invariance under translation.
    """
    name = "sparse-verify"

    def run(self, config, failures):
        p = config.params
        point = regions.ExponentPoint(p["inv_p"], p["inv_r"])
        seeds = np.random.SeedSequence(config.seed).spawn(p["pairs"])

        def one(i):
            rng = np.random.default_rng(seeds[i])
            e1, e2 = random_pair(rng, p["d"], p["box"], p["points"])
            shift = rng.integers(-p["box"], p["box"] + 1, size=p["d"])
            tree = sparse.stopping_decomposition(e1, e2, point, c0=p["c0"])
            cores, dropped = sparse.to_sparse_collection(tree)
            dilated, _ = sparse.to_sparse_collection(tree, dilated=True)
            dom = sparse.domination_constant(e1, e2, point, c0=p["c0"])
            moved = sparse.domination_constant(e1 + shift, e2 + shift, point, c0=p["c0"])
            return tree, cores, dropped, dilated, dom, moved

        records = []
        for i, (tree, cores, dropped, dilated, dom, moved) in enumerate(parallel.pool_map(one, range(p["pairs"]), threads=1)):
            core_check = sparse.sparsity_check(cores)
            dilated_check = sparse.sparsity_check(dilated)
            self.check(failures, tree.packing_ok(), f"pair {i}: packing fails at some node")
            self.check(failures, core_check.ok, f"pair {i}: core collection is not 1/2-sparse")
            self.check(failures, dilated_check.ok, f"pair {i}: dilated collection is not {dilated.rho}-sparse")
            self.check(failures, dom.ratio == moved.ratio, f"pair {i}: ratio changed under translation")
            self.check(failures, not dropped, f"pair {i}: {len(dropped)} cubes had no room for a half-size witness")
            records.append(dict(
                kind="pair", pair=i, c0=tree.final_c0, depth=tree.max_depth,
                nodes=sum(1 for _ in tree.walk()), dropped=len(dropped),
                levels=tree.stats(), sparse=core_check.get_state(), dilated=dilated_check.get_state(),
                domination=dom.get_state(), translated_ratio=moved.ratio,
            ))
        return records
