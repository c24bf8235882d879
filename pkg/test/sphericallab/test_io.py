import fractions
import io as stdio
import json

import numpy as np
import pytest

from sphericallab import exceptions
from sphericallab import io
from sphericallab import lattice

Fraction = fractions.Fraction


class TestLatticeText:
    def test_exact_roundtrip(self):
        f = lattice.spherical_average(lattice.LatticeFunction.delta(2), 1)
        text = io.dumps_lattice(f)
        assert text.startswith("d=2\n")
        assert "1/4" in text
        g = io.loads_lattice(text)
        assert g.exact
        assert g.to_dict() == f.to_dict()

    def test_float_values(self):
        f = lattice.LatticeFunction.from_dict(3, {(0, 0, 1): 0.5, (1, -2, 0): 2.0})
        g = io.loads_lattice(io.dumps_lattice(f))
        assert not g.exact
        assert g[(1, -2, 0)] == 2.0
        assert g[(0, 0, 1)] == 0.5

    def test_comments_and_blank_lines(self):
        g = io.loads_lattice("# a delta\n\nd=1\n  0 1\n\n")
        assert g.d == 1
        assert g[(0,)] == 1

    @pytest.mark.parametrize("text, msg", [
        ("", "header"),
        ("0 0 1\n", "header"),
        ("d=x\n", "bad header"),
        ("d=2\n0 1\n", "expected 2 coordinates"),
        ("d=2\n0 a 1\n", "integers"),
        ("d=2\n0 0 1\n0 0 2\n", "duplicate"),
        ("d=1\n0 1/0\n", "bad value"),
    ])
    def test_format_errors(self, text, msg):
        with pytest.raises(exceptions.FormatError, match=msg):
            io.loads_lattice(text)


class TestGrid:
    def test_roundtrip(self):
        grid = np.arange(27, dtype=np.float64).reshape(3, 3, 3) / 7
        buf = stdio.BytesIO()
        io.write_grid(buf, grid)
        data = buf.getvalue()
        assert data[:4] == b"SLGR"
        assert len(data) == 16 + 8 * 27
        buf.seek(0)
        assert np.array_equal(io.read_grid(buf), grid)

    def test_not_a_cube(self):
        with pytest.raises(exceptions.FormatError, match="cube"):
            io.write_grid(stdio.BytesIO(), np.zeros((2, 3)))

    def test_bad_magic(self):
        buf = stdio.BytesIO()
        io.write_grid(buf, np.zeros((2, 2)))
        data = b"XXXX" + buf.getvalue()[4:]
        with pytest.raises(exceptions.FormatError, match="magic"):
            io.read_grid(stdio.BytesIO(data))

    def test_truncated(self):
        buf = stdio.BytesIO()
        io.write_grid(buf, np.ones((4, 4)))
        with pytest.raises(exceptions.FormatError, match="expected 16 values"):
            io.read_grid(stdio.BytesIO(buf.getvalue()[:-8]))
        with pytest.raises(exceptions.FormatError, match="header"):
            io.read_grid(stdio.BytesIO(b"SLGR"))


class TestRecords:
    records = [
        dict(q=3, value=Fraction(-1, 2), ok=True),
        dict(q=4, value=Fraction(0), extra=[1, 2]),
    ]

    def test_json(self):
        buf = stdio.StringIO()
        io.RecordWriter(buf, "json").write("lcm-sum", dict(k=2, seed=0), self.records)
        doc = json.loads(buf.getvalue())
        assert doc["command"] == "lcm-sum"
        assert doc["config"] == {"k": 2, "seed": 0}
        assert doc["records"][0] == {"q": 3, "value": "-1/2", "ok": True}
        assert doc["records"][1]["value"] == "0"
        assert "time" not in buf.getvalue()

    def test_json_is_deterministic(self):
        a, b = stdio.StringIO(), stdio.StringIO()
        io.RecordWriter(a).write("x", {}, self.records)
        io.RecordWriter(b).write("x", {}, list(self.records))
        assert a.getvalue() == b.getvalue()

    def test_csv(self):
        buf = stdio.StringIO()
        io.RecordWriter(buf, "csv").write("x", {}, self.records)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "extra,ok,q,value"
        assert lines[1] == ",True,3,-1/2"
        assert lines[2] == '"[1, 2]",,4,0'

    def test_text(self):
        buf = stdio.StringIO()
        io.RecordWriter(buf, "text").write("x", {}, self.records)
        assert buf.getvalue() == "ok=True\nq=3\nvalue=-1/2\n\nextra=[1, 2]\nq=4\nvalue=0\n"

    def test_unknown_format(self):
        with pytest.raises(exceptions.FormatError):
            io.RecordWriter(stdio.StringIO(), "xml")

    def test_polygons(self):
        buf = stdio.StringIO()
        io.write_polygons(buf, [
            dict(region="R", d=6, vertices=[("0", "1"), ("2/3", "1/3")]),
            dict(region="S", d=6, vertices=[("1/3", "2/3")]),
        ])
        assert buf.getvalue() == "# R(6)\n0 1\n2/3 1/3\n\n# S(6)\n1/3 2/3\n"
