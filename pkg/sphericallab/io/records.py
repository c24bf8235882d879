"""
Experiment artifacts. JSON is one sorted, indented document; CSV has one row
per record under the sorted union of keys; text is key=value lines with a
blank line between records. None of them carries a timestamp.
"""
import csv
import json
import typing

from sphericallab import exceptions
from sphericallab import version
from sphericallab.utils import rational


class RecordWriter:
    def __init__(self, fo: typing.TextIO, fmt: str = "json"):
        if fmt not in ("json", "csv", "text"):
            raise exceptions.FormatError(f"unknown record format {fmt!r}")
        self.fo = fo
        self.fmt = fmt

    def write(self, command: str, config: typing.Dict[str, typing.Any], records: typing.Sequence[typing.Any]) -> None:
        rows = [rational.jsonable(r) for r in records]
        if self.fmt == "json":
            doc = {
                "schema": version.RECORD_SCHEMA_VERSION,
                "command": command,
                "config": rational.jsonable(config),
                "records": rows,
            }
            json.dump(doc, self.fo, sort_keys=True, indent=2)
            self.fo.write("\n")
        elif self.fmt == "csv":
            keys = sorted({k for r in rows for k in r})
            w = csv.DictWriter(self.fo, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _cell(r.get(k)) for k in keys})
        else:
            for i, r in enumerate(rows):
                if i:
                    self.fo.write("\n")
                for k in sorted(r):
                    self.fo.write(f"{k}={_cell(r[k])}\n")


def _cell(value: typing.Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def write_polygons(fo: typing.TextIO, polygons: typing.Sequence[typing.Dict[str, typing.Any]]) -> None:
    """One "# name(d)" line per polygon, then one "x y" vertex per line."""
    for i, poly in enumerate(polygons):
        if i:
            fo.write("\n")
        fo.write(f"# {poly['region']}({poly['d']})\n")
        for x, y in poly["vertices"]:
            fo.write(f"{x} {y}\n")
