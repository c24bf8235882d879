"""
Binary periodic grids: a 16-byte little-endian header (b"SLGR", uint32 d,
uint64 N) followed by N^d float64 values in row-major order.
"""
import struct
import typing

import numpy as np

from sphericallab import exceptions

MAGIC = b"SLGR"
HEADER = struct.Struct("<4sIQ")


def write_grid(fo: typing.BinaryIO, grid: np.ndarray) -> None:
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim == 0 or len(set(grid.shape)) != 1:
        raise exceptions.FormatError(f"grid must be a cube, got shape {grid.shape}")
    fo.write(HEADER.pack(MAGIC, grid.ndim, grid.shape[0]))
    fo.write(np.ascontiguousarray(grid, dtype="<f8").tobytes(order="C"))


def read_grid(fo: typing.BinaryIO) -> np.ndarray:
    head = fo.read(HEADER.size)
    if len(head) != HEADER.size:
        raise exceptions.FormatError("truncated grid header")
    magic, d, n = HEADER.unpack(head)
    if magic != MAGIC:
        raise exceptions.FormatError(f"not a grid file: magic {magic!r}")
    count = n ** d
    body = fo.read(8 * count)
    if len(body) != 8 * count:
        raise exceptions.FormatError(f"expected {count} values, got {len(body) // 8}")
    return np.frombuffer(body, dtype="<f8").astype(np.float64).reshape((n,) * d)
