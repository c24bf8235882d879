from sphericallab import experiment
from sphericallab import regions

# the containments between the discrete regions, with the smallest d each holds for
CONTAINMENTS = (("Rstar", "R", 6), ("Qstar", "S", 5), ("Sstar", "S", 5))


class RegionsEmit(experiment.Experiment):
    """
        Vertex tables of every region at one d, the exact containments among
        them, the necessary condition at the vertices of Rstar and the area
        of the unresolved gap.
    """
    name = "regions-emit"

    def run(self, config, failures):
        d = config.params["d"]
        names = config.params["regions"] or [
            n for n in regions.REGION_NAMES if d >= 5 or n not in regions.STARRED
        ]
        built = {name: regions.region_vertices(name, d) for name in names}
        records = [
            dict(kind="region", region=name, d=d, vertices=r.table(), area=r.area())
            for name, r in built.items()
        ]
        for big, small, d_min in CONTAINMENTS:
            if d < d_min or big not in built or small not in built:
                continue
            ok = regions.strict_superset(built[big], built[small])
            self.check(failures, ok, f"{big}({d}) does not strictly contain {small}({d})")
            records.append(dict(
                kind="containment", outer=big, inner=small, d=d, strict=ok,
                gap=built[big].area() - built[small].area(),
            ))
        if "Rstar" in built and d >= 3:
            for v in built["Rstar"].vertices:
                ok = regions.necessary_condition(v, d)
                self.check(failures, ok, f"Rstar({d}) vertex {v} fails the necessary condition")
            records.append(dict(kind="gap", d=d, area=regions.gap_area(d)))
        return records

    def polygons(self, records):
        return [r for r in records if r.get("kind") == "region"]
