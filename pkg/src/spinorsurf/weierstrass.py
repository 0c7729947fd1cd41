"""Surface reconstruction from a Dirac spinor pair by path-integral quadrature.

A Dirac pair (psi, phi) with real potential induces a conformal immersion
X : (x, y) -> R^3 through three closed 1-forms.  With dz = dx + i dy along an
integration path in the parameter plane, the package integrates

    X1 + i X2 = i * Int( psi^2 dz  -  phi^2 dzb ),
    X1 - i X2 = i * Int( conj(phi)^2 dz  -  conj(psi)^2 dzb ),
    X3        =   - Int( psi conj(phi) dz  +  conj(psi) phi dzb ).

The second integrand is the complex conjugate of the first, so X1 and X2 are
real by construction, and X3's integrand is self-conjugate.  For a 1-form
alpha dz + beta dzb the exterior derivative is 2i (d/dz alpha - d/dzb beta)
dx ^ dy with d/dz = (d/dx + i d/dy)/2, and the Dirac equations make all three
forms closed — so the immersion integral is path independent.  The induced
metric is conformal: E = G = rho^2, F = 0 with rho = |psi|^2 + |phi|^2.

Constant spinors give the flat test sheet: psi = 1, phi = 0 immerses (x, y)
to (-y, x, 0).

Integration is composite Gauss-Legendre along straight segments; meshes are
built by integrating along the bottom grid edge first and then up each column,
accumulating increments so shared sub-paths are integrated once.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConfigurationError
from .spinor_core import GridSpec, SpinorField, grid_derivatives

__all__ = [
    "PathSpec",
    "QuadratureSpec",
    "SurfaceMesh",
    "MeshFormat",
    "immersion_integrals",
    "immerse_point",
    "form_closedness_residual",
    "path_independence_check",
    "build_mesh",
    "first_fundamental_form",
    "conformality_defect",
    "export_mesh",
    "import_mesh_csv",
]


@dataclass(frozen=True)
class PathSpec:
    """Piecewise-linear integration path through waypoint tuples (x, y)."""

    waypoints: Tuple[Tuple[float, float], ...]

    def __init__(self, waypoints: Sequence[Sequence[float]]):
        pts = tuple((float(p[0]), float(p[1])) for p in waypoints)
        if len(pts) < 1:
            raise ConfigurationError("a path needs at least one waypoint")
        for a, b in zip(pts[:-1], pts[1:]):
            if a == b:
                raise ConfigurationError(f"consecutive duplicate waypoint {a!r}")
        object.__setattr__(self, "waypoints", pts)

    @property
    def start(self) -> Tuple[float, float]:
        return self.waypoints[0]

    @property
    def end(self) -> Tuple[float, float]:
        return self.waypoints[-1]


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule: ``nodes`` points on each of
    ``subdivisions`` equal pieces of every straight segment."""

    nodes: int = 16
    subdivisions: int = 8

    def __post_init__(self):
        if self.nodes < 1 or self.subdivisions < 1:
            raise ConfigurationError("quadrature needs nodes >= 1 and subdivisions >= 1")


@lru_cache(maxsize=16)
def _composite_rule(nodes: int, subdivisions: int):
    """Offsets in (0, 1) and weights of the composite rule on the unit interval."""
    gx, gw = leggauss(nodes)
    offs, wts = [], []
    for k in range(subdivisions):
        a, b = k / subdivisions, (k + 1) / subdivisions
        offs.append((b - a) / 2 * gx + (b + a) / 2)
        wts.append((b - a) / 2 * gw)
    return np.concatenate(offs), np.concatenate(wts)


def _segment_integrals(field: SpinorField, p0s: np.ndarray, p1s: np.ndarray, quad: QuadratureSpec):
    """Integrals of the three forms over a batch of straight segments.

    ``p0s``, ``p1s`` have shape (m, 2); returns a complex (3, m) array holding
    (X1 + iX2, X1 - iX2, X3) increments per segment.
    """
    offs, wts = _composite_rule(quad.nodes, quad.subdivisions)
    d = p1s - p0s
    xs = p0s[:, 0:1] + offs[None, :] * d[:, 0:1]
    ys = p0s[:, 1:2] + offs[None, :] * d[:, 1:2]
    psi, phi = field.values(xs, ys)
    psi = np.broadcast_to(np.asarray(psi, dtype=complex), xs.shape)
    phi = np.broadcast_to(np.asarray(phi, dtype=complex), xs.shape)
    dz = d[:, 0] + 1j * d[:, 1]
    dzb = d[:, 0] - 1j * d[:, 1]
    cpsi, cphi = np.conj(psi), np.conj(phi)
    w = wts[None, :]
    i_plus = 1j * ((psi**2 * w).sum(1) * dz - (phi**2 * w).sum(1) * dzb)
    i_minus = 1j * ((cphi**2 * w).sum(1) * dz - (cpsi**2 * w).sum(1) * dzb)
    i_third = -((psi * cphi * w).sum(1) * dz + (cpsi * phi * w).sum(1) * dzb)
    return np.stack([i_plus, i_minus, i_third])


def _combine(forms: np.ndarray) -> np.ndarray:
    """(X1+iX2, X1-iX2, X3) -> complex (X1, X2, X3)."""
    i_plus, i_minus, i_third = forms
    return np.stack([(i_plus + i_minus) / 2, (i_plus - i_minus) / 2j, i_third])


def immersion_integrals(
    field: SpinorField, path: PathSpec, quad: QuadratureSpec = QuadratureSpec()
) -> np.ndarray:
    """Complex-valued immersion integral along ``path`` (before realness
    projection); the imaginary parts measure quadrature/conjugacy leakage."""
    total = np.zeros(3, dtype=complex)
    wps = path.waypoints
    for a, b in zip(wps[:-1], wps[1:]):
        total += _segment_integrals(
            field, np.array([a], dtype=float), np.array([b], dtype=float), quad
        )[:, 0]
    return _combine(total.reshape(3, 1))[:, 0]


def immerse_point(
    field: SpinorField,
    path: PathSpec,
    quad: QuadratureSpec = QuadratureSpec(),
    basepoint_value: Sequence[float] = (0.0, 0.0, 0.0),
) -> np.ndarray:
    """R^3 image of the path's endpoint, integrating from the path's start.

    The start point is mapped to ``basepoint_value``; a single-waypoint path
    therefore returns ``basepoint_value`` itself.  Pure function of its inputs.
    """
    z = immersion_integrals(field, path, quad)
    return np.asarray(basepoint_value, dtype=float) + z.real


def form_closedness_residual(field: SpinorField, grid: GridSpec) -> float:
    """Max over the grid and over all three 1-forms of the exterior-derivative
    magnitude |d/dz alpha - d/dzb beta| (for a form alpha dz + beta dzb).

    Vanishes exactly on Dirac pairs; is strictly positive for fields that do
    not solve the system (e.g. psi = x - i*y, phi = 0 has residual 2|x + iy|
    from the first form).
    """
    X, Y = grid.meshgrid()
    psi, phi = field.sample_on(grid)
    if field.derivatives is not None:
        px, py, qx, qy = field.derivatives(X, Y)
    else:
        px, py = grid_derivatives(psi, grid.hx, grid.hy)
        qx, qy = grid_derivatives(phi, grid.hx, grid.hy)
    dz = lambda fx, fy: 0.5 * (fx + 1j * fy)
    dzb = lambda fx, fy: 0.5 * (fx - 1j * fy)
    cpsi, cphi = np.conj(psi), np.conj(phi)
    cpx, cpy, cqx, cqy = np.conj(px), np.conj(py), np.conj(qx), np.conj(qy)
    d1 = np.abs(2 * psi * dz(px, py) + 2 * phi * dzb(qx, qy))
    d2 = np.abs(2 * cphi * dz(cqx, cqy) + 2 * cpsi * dzb(cpx, cpy))
    d3 = np.abs(
        dz(px, py) * cphi + psi * dz(cqx, cqy) - dzb(cpx, cpy) * phi - cpsi * dzb(qx, qy)
    )
    return float(max(d1.max(), d2.max(), d3.max()))


def path_independence_check(
    field: SpinorField,
    path_a: PathSpec,
    path_b: PathSpec,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Max component difference of the two path integrals (complex compared).

    The paths must share start and end points; the returned discrepancy is
    reported, not thresholded — non-solutions of the Dirac system legitimately
    produce order-one values here.
    """
    for pa, pb, which in ((path_a.start, path_b.start, "start"), (path_a.end, path_b.end, "end")):
        if abs(pa[0] - pb[0]) > 1e-12 or abs(pa[1] - pb[1]) > 1e-12:
            raise ConfigurationError(f"paths must share their {which} point: {pa!r} vs {pb!r}")
    za = immersion_integrals(field, path_a, quad)
    zb = immersion_integrals(field, path_b, quad)
    return float(np.abs(za - zb).max())


@dataclass(frozen=True)
class SurfaceMesh:
    """Immersed vertex grid with implicit quad connectivity.

    ``vertices`` has shape (nx, ny, 3), real, finite; vertex ids are row-major
    (``id = i * ny + j``).  ``field`` keeps a reference to the generating
    spinor field so the conformal factor is available to metric checks.
    """

    grid: GridSpec
    vertices: np.ndarray
    basepoint_value: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    field: Optional[SpinorField] = None

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.shape != (self.grid.nx, self.grid.ny, 3):
            raise ConfigurationError(
                f"vertices must have shape {(self.grid.nx, self.grid.ny, 3)}, got {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("mesh vertices must be finite")
        object.__setattr__(self, "vertices", v)
        v.setflags(write=False)

    @property
    def vertex_count(self) -> int:
        return self.grid.nx * self.grid.ny

    def quad_faces(self) -> np.ndarray:
        """(nx-1)(ny-1) x 4 array of vertex ids, one quad per grid cell,
        ordered (i,j), (i,j+1), (i+1,j+1), (i+1,j)."""
        nx, ny = self.grid.nx, self.grid.ny
        ii, jj = np.meshgrid(np.arange(nx - 1), np.arange(ny - 1), indexing="ij")
        base = (ii * ny + jj).reshape(-1)
        return np.stack([base, base + 1, base + ny + 1, base + ny], axis=1)


def build_mesh(
    field: SpinorField,
    grid: GridSpec,
    quad: QuadratureSpec = QuadratureSpec(),
    basepoint_value: Sequence[float] = (0.0, 0.0, 0.0),
) -> SurfaceMesh:
    """Immerse every grid node, anchored at the (x_min, y_min) corner.

    The canonical integration tree runs along the bottom edge and then up each
    column; increments are accumulated so each mesh edge is integrated exactly
    once ((nx - 1) + nx * (ny - 1) segment integrals in total).
    """
    xs, ys = grid.xs(), grid.ys()
    nx, ny = grid.nx, grid.ny
    forms = np.zeros((3, nx, ny), dtype=complex)
    p0 = np.stack([xs[:-1], np.full(nx - 1, ys[0])], axis=1)
    p1 = np.stack([xs[1:], np.full(nx - 1, ys[0])], axis=1)
    seg = _segment_integrals(field, p0, p1, quad)
    forms[:, 1:, 0] = np.cumsum(seg, axis=1)
    for j in range(ny - 1):
        p0 = np.stack([xs, np.full(nx, ys[j])], axis=1)
        p1 = np.stack([xs, np.full(nx, ys[j + 1])], axis=1)
        forms[:, :, j + 1] = forms[:, :, j] + _segment_integrals(field, p0, p1, quad)
    xyz = _combine(forms.reshape(3, -1)).reshape(3, nx, ny)
    vertices = np.asarray(basepoint_value, dtype=float)[None, None, :] + np.moveaxis(
        xyz.real, 0, -1
    )
    return SurfaceMesh(grid=grid, vertices=vertices, basepoint_value=tuple(
        float(c) for c in basepoint_value), field=field)


def first_fundamental_form(mesh: SurfaceMesh):
    """(E, G, F) on interior nodes by central differences of the vertex grid.

    Arrays have shape (nx - 2, ny - 2); needs at least 3 nodes per direction.
    """
    grid = mesh.grid
    if grid.nx < 3 or grid.ny < 3:
        raise ConfigurationError("first fundamental form needs nx, ny >= 3")
    v = mesh.vertices
    xu = (v[2:, 1:-1] - v[:-2, 1:-1]) / (2 * grid.hx)
    xv = (v[1:-1, 2:] - v[1:-1, :-2]) / (2 * grid.hy)
    E = (xu**2).sum(-1)
    G = (xv**2).sum(-1)
    F = (xu * xv).sum(-1)
    return E, G, F


def conformality_defect(mesh: SurfaceMesh) -> float:
    """Relative departure of the discrete metric from rho^2 (dx^2 + dy^2):
    max(|E - rho^2|, |G - rho^2|, |F|) / max(rho^2) over interior nodes."""
    if mesh.field is None:
        raise ConfigurationError("mesh carries no generating field for the conformal factor")
    E, G, F = first_fundamental_form(mesh)
    xs, ys = mesh.grid.xs(), mesh.grid.ys()
    X, Y = np.meshgrid(xs[1:-1], ys[1:-1], indexing="ij")
    psi, phi = mesh.field.values(X, Y)
    rho2 = (np.abs(psi) ** 2 + np.abs(phi) ** 2) ** 2
    rho2 = np.broadcast_to(rho2, E.shape)
    num = max(
        float(np.abs(E - rho2).max()),
        float(np.abs(G - rho2).max()),
        float(np.abs(F).max()),
    )
    return num / float(rho2.max())


class MeshFormat(Enum):
    OBJ = "obj"
    PLY = "ply"
    CSV = "csv"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def export_mesh(mesh: SurfaceMesh, file_path: str, fmt: MeshFormat) -> None:
    """Write the mesh deterministically (LF newlines, full float precision).

    OBJ: ``v x y z`` per vertex in row-major id order, then 1-based quad
    ``f`` lines.  PLY: ascii 1.0 header, float vertex triples, 0-based quad
    list faces.  CSV: header ``i,j,x,y,X1,X2,X3`` then one row per node with
    the grid coordinates and the immersed position; re-importing reproduces
    the vertices bit-identically.
    """
    nx, ny = mesh.grid.nx, mesh.grid.ny
    verts = mesh.vertices.reshape(-1, 3)
    faces = mesh.quad_faces()
    lines = []
    if fmt is MeshFormat.OBJ:
        for p in verts:
            lines.append(f"v {_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}")
        for f in faces:
            lines.append("f " + " ".join(str(i + 1) for i in f))
    elif fmt is MeshFormat.PLY:
        lines += [
            "ply",
            "format ascii 1.0",
            f"element vertex {len(verts)}",
            "property float x",
            "property float y",
            "property float z",
            f"element face {len(faces)}",
            "property list uchar int vertex_indices",
            "end_header",
        ]
        for p in verts:
            lines.append(f"{_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}")
        for f in faces:
            lines.append("4 " + " ".join(str(i) for i in f))
    elif fmt is MeshFormat.CSV:
        xs, ys = mesh.grid.xs(), mesh.grid.ys()
        lines.append("i,j,x,y,X1,X2,X3")
        for i in range(nx):
            for j in range(ny):
                p = mesh.vertices[i, j]
                lines.append(
                    f"{i},{j},{_fmt(xs[i])},{_fmt(ys[j])},{_fmt(p[0])},{_fmt(p[1])},{_fmt(p[2])}"
                )
    else:  # pragma: no cover - enum exhausted
        raise ConfigurationError(f"unknown mesh format {fmt!r}")
    with open(file_path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def import_mesh_csv(file_path: str) -> SurfaceMesh:
    """Rebuild a mesh from the CSV layout written by :func:`export_mesh`.

    The generating field is not serialized, so the result carries none; the
    basepoint value is read back from the (0, 0) vertex.
    """
    with open(file_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["i", "j", "x", "y", "X1", "X2", "X3"]:
            raise ConfigurationError(f"unexpected CSV header {header!r}")
        rows = [(int(r[0]), int(r[1]), *(float(c) for c in r[2:])) for r in reader]
    nx = max(r[0] for r in rows) + 1
    ny = max(r[1] for r in rows) + 1
    if len(rows) != nx * ny:
        raise ConfigurationError(f"expected {nx * ny} rows, got {len(rows)}")
    xs = np.full(nx, np.nan)
    ys = np.full(ny, np.nan)
    vertices = np.full((nx, ny, 3), np.nan)
    for i, j, x, y, a, b, c in rows:
        xs[i] = x
        ys[j] = y
        vertices[i, j] = (a, b, c)
    grid = GridSpec(
        x_min=float(xs[0]), x_max=float(xs[-1]),
        y_min=float(ys[0]), y_max=float(ys[-1]),
        nx=nx, ny=ny,
    )
    return SurfaceMesh(
        grid=grid, vertices=vertices, basepoint_value=tuple(float(c) for c in vertices[0, 0]),
        field=None,
    )
