import fractions
import json

import pytest

from sphericallab import exceptions
from sphericallab import experiment
from sphericallab.addons import lattice_checks
from sphericallab.test import tlab


class Failing(experiment.Experiment):
    name = "failing"

    def run(self, config, failures):
        self.check(failures, True, "never reported")
        self.check(failures, False, "always reported")
        return [dict(value=fractions.Fraction(1, 3))]


class TestExperimentConfig:
    def test_validation(self):
        with tlab.context():
            cfg = experiment.ExperimentConfig("x", dict(inv_p="2/3", inv_r=1), 0, 10, None, "json")
            assert cfg.params["inv_p"] == fractions.Fraction(2, 3)
            assert cfg.params["inv_r"] == 1
            with pytest.raises(exceptions.OptionsError, match="budget"):
                experiment.ExperimentConfig("x", {}, 0, 0, None, "json")
            with pytest.raises(exceptions.OptionsError, match="format"):
                experiment.ExperimentConfig("x", {}, 0, 10, None, "xml")
            with pytest.raises(exceptions.OptionsError, match="--inv-p"):
                experiment.ExperimentConfig("x", dict(inv_p="0.5"), 0, 10, None, "json")

    def test_from_options(self):
        with tlab.context(seed=9, budget=1000, format="csv"):
            cfg = experiment.ExperimentConfig.from_options("rd-table", dict(d=2))
            assert (cfg.seed, cfg.budget, cfg.format) == (9, 1000, "csv")
            assert cfg.get_state() == dict(d=2, seed=9, budget=1000)


class TestLab:
    def test_unknown_command(self):
        with tlab.context() as tctx:
            with pytest.raises(exceptions.OptionsError, match="unknown experiment"):
                tctx.master.run("nonexistent", {})

    def test_run_writes_json(self, tmp_path):
        out = tmp_path / "rd.json"
        with tlab.context(lattice_checks.RdTable(), output=str(out), seed=3) as tctx:
            result = tctx.master.run("rd-table", dict(d=4, n_max=9))
            assert result.ok
            assert tctx.master.has_log("rd-table: 10 records")
        doc = json.loads(out.read_text())
        assert doc["command"] == "rd-table"
        assert doc["config"] == dict(d=4, n_max=9, seed=3, budget=2 ** 28)
        assert [r["r"] for r in doc["records"]] == [1, 8, 24, 32, 24, 48, 96, 64, 24, 104]
        assert doc["records"][9]["jacobi"] == 104
        assert "runtime_ms" not in doc["records"][0]

    def test_artifacts_are_reproducible(self, tmp_path):
        texts = []
        for i in range(2):
            out = tmp_path / f"{i}.csv"
            with tlab.context(lattice_checks.RdTable(), output=str(out), format="csv") as tctx:
                tctx.master.run("rd-table", dict(d=3, n_max=12))
            texts.append(out.read_text())
        assert texts[0] == texts[1]
        assert texts[0].splitlines()[0] == "n,r"

    def test_record_timings(self, tmp_path):
        out = tmp_path / "rd.json"
        with tlab.context(lattice_checks.RdTable(), output=str(out), record_timings=True) as tctx:
            tctx.master.run("rd-table", dict(d=2, n_max=2))
        records = json.loads(out.read_text())["records"]
        assert all(r["runtime_ms"] >= 0 for r in records)

    def test_check_failed_after_writing(self, tmp_path):
        out = tmp_path / "failing.txt"
        with tlab.context(Failing(), output=str(out), format="text") as tctx:
            with pytest.raises(exceptions.CheckFailed, match="always reported"):
                tctx.master.run("failing", {})
            assert tctx.master.has_log("check failed: always reported", "alert")
            assert not tctx.master.has_log("never reported")
        assert out.read_text() == "value=1/3\n"

    def test_stdout(self, capsys):
        with tlab.context(lattice_checks.RdTable()) as tctx:
            tctx.master.run("rd-table", dict(d=2, n_max=1))
        doc = json.loads(capsys.readouterr().out)
        assert doc["records"] == [dict(n=0, r=1), dict(n=1, r=4)]
