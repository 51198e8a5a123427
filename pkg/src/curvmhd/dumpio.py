"""Field dump I/O.

A dump file is one UTF-8 JSON header line terminated by ``\\n`` followed by
the raw arrays as little-endian 64-bit floats, row-major (eta outer, xi
inner), concatenated in the header's declared variable order.  The header
records the schema version, problem identity, time/step, grid shape, the
variable list, and a CRC32 checksum of the coordinate bytes so readers can
match dumps from the same grid.
"""

from __future__ import annotations

import json
import zlib

import numpy as np

SCHEMA_VERSION = 1

VARIABLES = ("x", "y", "rho", "mx", "my", "mz", "energy",
             "b1", "b2", "b3", "A", "p")


def _le(arr):
    return np.ascontiguousarray(arr, dtype="<f8")


def grid_checksum(x, y):
    crc = zlib.crc32(_le(x).tobytes())
    crc = zlib.crc32(_le(y).tobytes(), crc)
    return crc


def write_dump(path, *, problem, time, step, x, y, q, A, p, extra=None):
    """Write one snapshot; arrays are the (ny, nx) interior blocks."""
    ny, nx = np.asarray(x).shape
    header = {
        "schema": SCHEMA_VERSION,
        "problem": problem,
        "time": float(time),
        "step": int(step),
        "nx": int(nx),
        "ny": int(ny),
        "ghost": 0,
        "variables": list(VARIABLES),
        "grid_crc32": grid_checksum(x, y),
    }
    if extra:
        header.update(extra)
    arrays = [x, y] + [q[..., k] for k in range(8)] + [A, p]
    with open(path, "wb") as f:
        f.write(json.dumps(header).encode("utf-8"))
        f.write(b"\n")
        for arr in arrays:
            a = _le(arr)
            if a.shape != (ny, nx):
                raise ValueError("dump array shape mismatch")
            f.write(a.tobytes())


def read_dump(path):
    """Return (header dict, {name: (ny, nx) float64 array})."""
    with open(path, "rb") as f:
        line = f.readline()
        header = json.loads(line.decode("utf-8"))
        if header.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported dump schema {header.get('schema')}")
        nx, ny = header["nx"], header["ny"]
        count = ny * nx
        fields = {}
        for name in header["variables"]:
            buf = f.read(8 * count)
            if len(buf) != 8 * count:
                raise ValueError(f"truncated dump: array {name!r}")
            fields[name] = np.frombuffer(buf, dtype="<f8").reshape(ny, nx)
    return header, fields


def inspect_dump(path):
    """One-paragraph summary of a dump (header + per-variable ranges)."""
    header, fields = read_dump(path)
    lines = [f"{path}: problem={header['problem']} t={header['time']:.6g} "
             f"step={header['step']} grid={header['nx']}x{header['ny']}"]
    for name in header["variables"]:
        a = fields[name]
        lines.append(f"  {name:>7s}  min={a.min():+.6e}  max={a.max():+.6e}")
    return "\n".join(lines)
