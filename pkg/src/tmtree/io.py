"""Raw volume ingestion and the text formats for stores, diagrams and
timing tables.

Raw volumes carry no header: little-endian scalars, x fastest.  Output files
are written to a temporary sibling and renamed, so a failed run leaves no
partial file behind.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import PersistenceDiagram, diagram_to_text
from .core import ContractError, ScalarField, TripletStore
from .graph import GridGraph3

DTYPES = {
    "u8": np.dtype("<u1"),
    "u16": np.dtype("<u2"),
    "f32": np.dtype("<f4"),
    "f64": np.dtype("<f8"),
}

TIMING_HEADER = "lin_size;threads;elapsed_total;elapsed_merge;elapsed_repair"


class VolumeFormatError(ContractError):
    """File size or contents do not match the declared volume."""


class UsageError(ValueError):
    """Bad user-supplied parameter (unknown dtype, zero factor, ...)."""


@dataclass(frozen=True)
class VolumeSpec:
    path: Path
    nx: int
    ny: int
    nz: int
    dtype: str = "f32"

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.nx, self.ny, self.nz

    @property
    def count(self) -> int:
        return self.nx * self.ny * self.nz

    @property
    def itemsize(self) -> int:
        return _dtype(self.dtype).itemsize

    @property
    def nbytes(self) -> int:
        return self.count * self.itemsize


def _dtype(name: str) -> np.dtype:
    try:
        return DTYPES[name]
    except KeyError:
        raise UsageError(f"unknown dtype {name!r}; expected one of {', '.join(DTYPES)}") from None


def load_volume(spec: VolumeSpec, negate: bool = False) -> tuple[ScalarField, GridGraph3]:
    dtype = _dtype(spec.dtype)
    if min(spec.shape) < 0:
        raise UsageError(f"negative extent in {spec.shape}")
    path = Path(spec.path)
    actual = path.stat().st_size
    if actual != spec.nbytes:
        raise VolumeFormatError(
            f"{path}: expected {spec.nbytes} bytes for {spec.nx}x{spec.ny}x{spec.nz} {spec.dtype}, found {actual}"
        )
    raw = np.fromfile(path, dtype=dtype, count=spec.count)
    values = raw.astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise VolumeFormatError(f"{path}: non-finite value at voxel {int(bad[0])}")
    if negate:
        values = -values + 0.0
    return ScalarField(values), GridGraph3(*spec.shape)


def save_volume(path, values, dtype: str = "f64") -> None:
    """Write ``values`` (x-fastest order) as a raw little-endian volume."""
    arr = np.ascontiguousarray(np.asarray(values).reshape(-1), dtype=_dtype(dtype))
    _atomic_write_bytes(Path(path), arr.tobytes())


def downsample_volume(field: ScalarField, g: GridGraph3, factor: int) -> tuple[ScalarField, GridGraph3]:
    """Block-mean downsampling by an integer factor.

    Output extents are ``extent // factor``, trailing voxels are dropped.  An
    axis shorter than the factor is averaged over its full length instead of
    collapsing to zero.
    """
    if factor < 1:
        raise UsageError(f"downsample factor must be >= 1, got {factor}")
    if factor == 1 or g.n == 0:
        return field, g
    ks = [min(factor, e) for e in g.shape]
    out = [e // k for e, k in zip(g.shape, ks)]
    kx, ky, kz = ks
    ox, oy, oz = out
    vol = field.values.reshape(g.nz, g.ny, g.nx)[: oz * kz, : oy * ky, : ox * kx]
    blocks = vol.reshape(oz, kz, oy, ky, ox, kx).mean(axis=(1, 3, 5))
    return ScalarField(blocks.reshape(-1)), GridGraph3(ox, oy, oz)


def _atomic_write_bytes(path: Path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _atomic_write_text(path, text: str) -> None:
    _atomic_write_bytes(Path(path), text.encode("ascii"))


def write_store(path, store: TripletStore) -> None:
    _atomic_write_text(path, store.to_text())


def read_store(path) -> TripletStore:
    return TripletStore.from_text(Path(path).read_text(encoding="ascii"))


def write_diagram(path, diagram: PersistenceDiagram) -> None:
    _atomic_write_text(path, diagram_to_text(diagram))


def timing_row(lin_size: int, threads: int, elapsed_total: float, elapsed_merge: float, elapsed_repair: float) -> str:
    return f"{lin_size};{threads};{elapsed_total:.6f};{elapsed_merge:.6f};{elapsed_repair:.6f}"


def timing_text(rows) -> str:
    """``rows`` are ``(lin_size, threads, total, merge, repair)`` tuples."""
    lines = [TIMING_HEADER] + [timing_row(*r) for r in rows]
    return "\n".join(lines) + "\n"


def write_timing(path, rows) -> None:
    _atomic_write_text(path, timing_text(rows))


def read_timing(path) -> list[dict]:
    lines = Path(path).read_text(encoding="ascii").splitlines()
    header = lines[0].split(";")
    out = []
    for line in lines[1:]:
        cells = line.split(";")
        row = dict(zip(header, cells))
        out.append({k: (int(v) if k in ("lin_size", "threads") else float(v)) for k, v in row.items()})
    return out
