"""Sample CSV loading, grid evaluation, and PGM raster output."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .delaunay import build_delaunay, sibson_interpolate
from .errors import (
    CoincidentQueryError,
    CsvFormatError,
    DegenerateBoundaryError,
    DegenerateInputError,
    OutsideDomainError,
)
from .interpolate import (
    DEFAULT_SNAP_TOLERANCE,
    QueryKind,
    SampleSet,
    WeightFunction,
    classify_query,
    interpolate,
)

_REAL_HEADER = ("x", "y", "z")
_COMPLEX_HEADER = ("x", "y", "z_re", "z_im")

#: Errors a single grid cell may raise; the cell becomes an error marker.
_CELL_ERRORS = (
    OutsideDomainError,
    DegenerateBoundaryError,
    DegenerateInputError,
    CoincidentQueryError,
)


def load_samples_csv(path) -> SampleSet:
    """Read sites and elevations from a CSV with header ``x,y,z`` or
    ``x,y,z_re,z_im``.  Lines starting with ``#`` and blank lines are
    skipped; malformed rows and duplicate sites are reported with their
    line number."""
    sites = []
    elevations = []
    header = None
    seen = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = [f.strip() for f in text.split(",")]
            if header is None:
                header = tuple(f.lower() for f in fields)
                if header not in (_REAL_HEADER, _COMPLEX_HEADER):
                    raise CsvFormatError(
                        "header must be 'x,y,z' or 'x,y,z_re,z_im', got %r" % text,
                        line_number,
                    )
                continue
            if len(fields) != len(header):
                raise CsvFormatError(
                    "expected %d fields, got %d" % (len(header), len(fields)),
                    line_number,
                )
            try:
                values = [float(f) for f in fields]
            except ValueError:
                raise CsvFormatError("non-numeric field in %r" % text, line_number) from None
            if not all(math.isfinite(v) for v in values):
                raise CsvFormatError("non-finite value in %r" % text, line_number)
            key = (values[0], values[1])
            if key in seen:
                raise CsvFormatError(
                    "duplicate site (%g, %g) first seen on line %d"
                    % (values[0], values[1], seen[key]),
                    line_number,
                )
            seen[key] = line_number
            sites.append((values[0], values[1]))
            if header == _REAL_HEADER:
                elevations.append(values[2])
            else:
                elevations.append(complex(values[2], values[3]))
    if header is None:
        raise CsvFormatError("empty file: header row required")
    if len(sites) < 3:
        raise CsvFormatError("need at least three sites, got %d" % len(sites))
    return SampleSet(sites, elevations)


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DegenerateInputError("grid extents must be non-empty")
        if self.nx < 2 or self.ny < 2:
            raise DegenerateInputError("grid needs at least 2x2 nodes")

    def xs(self):
        step = (self.x_max - self.x_min) / (self.nx - 1)
        return [self.x_min + i * step for i in range(self.nx)]

    def ys(self):
        step = (self.y_max - self.y_min) / (self.ny - 1)
        return [self.y_min + i * step for i in range(self.ny)]


def evaluate_grid(
    samples: SampleSet,
    grid: GridSpec,
    method: str = "moebius",
    weight_fn: WeightFunction = WeightFunction.TAN_HALF,
    snap_tolerance: float = DEFAULT_SNAP_TOLERANCE,
):
    """Evaluate the interpolant on the grid nodes.  Rows run from y_max
    down to y_min (raster order); cells that cannot be evaluated under
    the strict policy hold None."""
    if method not in ("moebius", "sibson"):
        raise DegenerateInputError("method must be 'moebius' or 'sibson'")
    tri = build_delaunay(samples) if method == "sibson" else None
    rows = []
    for y in reversed(grid.ys()):
        row = []
        for x in grid.xs():
            try:
                if method == "moebius":
                    value = interpolate(
                        samples, (x, y), weight_fn, snap_tolerance=snap_tolerance
                    )
                else:
                    cls = classify_query(samples, (x, y), snap_tolerance)
                    if cls.kind is QueryKind.COINCIDENT:
                        value = samples.elevations[cls.site_index]
                    elif cls.kind is QueryKind.INTERIOR:
                        value = sibson_interpolate(tri, samples.elevations, (x, y))
                    else:
                        value = None
            except _CELL_ERRORS:
                value = None
            row.append(value)
        rows.append(row)
    return rows


def write_pgm(rows, path):
    """Write grid values as an ASCII PGM (P2, maxval 255).  Values are
    scaled linearly from [min, max] onto [0, 255]; a constant field maps
    to 128 and error cells to 0."""
    height = len(rows)
    width = len(rows[0]) if height else 0
    if height == 0 or width == 0 or any(len(r) != width for r in rows):
        raise DegenerateInputError("grid rows must be non-empty and rectangular")
    if any(isinstance(v, complex) for row in rows for v in row):
        raise DegenerateInputError("complex values cannot be rasterized")
    finite = [v for row in rows for v in row if v is not None]
    if finite:
        lo = min(finite)
        hi = max(finite)
    else:
        lo = hi = 0.0
    span = hi - lo
    lines = ["P2", "%d %d" % (width, height), "255"]
    for row in rows:
        pixels = []
        for v in row:
            if v is None:
                pixels.append(0)
            elif span == 0.0:
                pixels.append(128)
            else:
                pixels.append(int(round(255.0 * (v - lo) / span)))
        lines.append(" ".join(str(p) for p in pixels))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
