"""
Plain-text LatticeFunction files:

    d=<d>
    <x_1> ... <x_d> <value>

Exact values are written as "num/den" and read back as Fractions; a file with
any decimal value is read as a float function.
"""
import fractions
import io
import typing

from sphericallab import exceptions
from sphericallab import lattice
from sphericallab.utils import rational


class LatticeWriter:
    def __init__(self, fo: typing.TextIO):
        self.fo = fo

    def add(self, f: lattice.LatticeFunction) -> None:
        self.fo.write(f"d={f.d}\n")
        for row, v in zip(f.coords, f.values):
            value = rational.format_rational(v) if f.exact else repr(float(v))
            self.fo.write(" ".join(str(int(c)) for c in row) + f" {value}\n")


class LatticeReader:
    def __init__(self, fo: typing.TextIO):
        self.fo = fo

    def read(self) -> lattice.LatticeFunction:
        lines = [ln.strip() for ln in self.fo if ln.strip() and not ln.startswith("#")]
        if not lines or not lines[0].startswith("d="):
            raise exceptions.FormatError("missing d=<d> header")
        try:
            d = int(lines[0][2:])
        except ValueError:
            raise exceptions.FormatError(f"bad header {lines[0]!r}")
        raw: typing.Dict[tuple, str] = {}
        for n, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != d + 1:
                raise exceptions.FormatError(f"line {n}: expected {d} coordinates and a value")
            try:
                key = tuple(int(c) for c in parts[:d])
            except ValueError:
                raise exceptions.FormatError(f"line {n}: coordinates must be integers")
            if key in raw:
                raise exceptions.FormatError(f"line {n}: duplicate point {key}")
            raw[key] = parts[d]
        exact = all("." not in v and "e" not in v.lower() and "n" not in v.lower() for v in raw.values())
        try:
            if exact:
                values = {k: fractions.Fraction(v) for k, v in raw.items()}
            else:
                values = {k: float(v) for k, v in raw.items()}
        except (ValueError, ZeroDivisionError) as e:
            raise exceptions.FormatError(f"bad value: {e}")
        return lattice.LatticeFunction.from_dict(d, values, exact=exact)


def dumps_lattice(f: lattice.LatticeFunction) -> str:
    buf = io.StringIO()
    LatticeWriter(buf).add(f)
    return buf.getvalue()


def loads_lattice(text: str) -> lattice.LatticeFunction:
    return LatticeReader(io.StringIO(text)).read()
