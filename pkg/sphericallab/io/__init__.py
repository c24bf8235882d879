from .lattice_text import LatticeReader, LatticeWriter, dumps_lattice, loads_lattice
from .grid import read_grid, write_grid
from .records import RecordWriter, write_polygons

__all__ = [
    "LatticeReader",
    "LatticeWriter",
    "dumps_lattice",
    "loads_lattice",
    "read_grid",
    "write_grid",
    "RecordWriter",
    "write_polygons",
]
