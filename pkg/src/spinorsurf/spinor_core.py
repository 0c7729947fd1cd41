"""Core domain types for spinor fields over rectangular (x, y) windows.

A spinor field is a pair of complex functions (psi, phi).  Together with a real
potential p it is called a Dirac pair when

    d/dz  psi = p * phi,
    d/dzb phi = -p * psi,

where the complex derivative convention used throughout the package is

    d/dz  = (d/dx + i d/dy) / 2,      d/dzb = (d/dx - i d/dy) / 2.

Under this convention the coordinate function x + i*y is annihilated by d/dz
(the "holomorphic" direction), while x - i*y has unit d/dz-derivative.  The
conformal factor of the induced surface metric is rho = |psi|^2 + |phi|^2 and
the mean curvature relates to the potential by p = rho * H / 2.

Fields come in two representations:

* closed form -- ``values`` (and optionally ``derivatives``) are vectorized
  callables defined on the whole declared rectangle (or the whole plane when
  no grid is attached);
* sampled -- node values on an attached :class:`GridSpec`; evaluation is exact
  on the nodes and derivatives fall back to second-order finite differences.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import (
    ConfigurationError,
    DegenerateMetricError,
    DomainError,
    UndefinedMapError,
)

__all__ = [
    "GridSpec",
    "SpinorField",
    "PotentialField",
    "GaussMapValue",
    "conformal_factor",
    "dirac_residual",
    "mean_curvature",
    "gauss_map",
    "grid_derivatives",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform rectangular node grid ``[x_min, x_max] x [y_min, y_max]``.

    ``nx`` and ``ny`` are node counts (not cell counts), so the spacings are
    ``hx = (x_max - x_min) / (nx - 1)`` and likewise for ``hy``.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x_max > self.x_min):
            raise ConfigurationError("GridSpec requires x_max > x_min")
        if not (self.y_max > self.y_min):
            raise ConfigurationError("GridSpec requires y_max > y_min")
        if self.nx < 2 or self.ny < 2:
            raise ConfigurationError("GridSpec requires nx >= 2 and ny >= 2")

    @property
    def hx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def hy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def meshgrid(self) -> Tuple[np.ndarray, np.ndarray]:
        """Node coordinates as (nx, ny) arrays, x varying along axis 0."""
        return np.meshgrid(self.xs(), self.ys(), indexing="ij")

    def contains(self, x, y, slack: float = 1e-12) -> bool:
        return bool(
            np.all(np.asarray(x) >= self.x_min - slack)
            and np.all(np.asarray(x) <= self.x_max + slack)
            and np.all(np.asarray(y) >= self.y_min - slack)
            and np.all(np.asarray(y) <= self.y_max + slack)
        )


Values = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]
Derivatives = Callable[
    [np.ndarray, np.ndarray],
    Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
]


@dataclass(frozen=True)
class SpinorField:
    """Pair of complex fields (psi, phi) with optional analytic derivatives.

    ``values(x, y) -> (psi, phi)`` must accept numpy arrays and broadcast.
    ``derivatives(x, y) -> (psi_x, psi_y, phi_x, phi_y)`` is optional; when
    absent, consumers differentiate by finite differences on a grid.
    ``closed_form`` distinguishes fields defined on the whole declared window
    from sampled fields that are exact only on the attached grid's nodes.
    """

    values: Values
    derivatives: Optional[Derivatives] = None
    grid: Optional[GridSpec] = None
    closed_form: bool = True

    @classmethod
    def from_samples(cls, grid: GridSpec, psi: np.ndarray, phi: np.ndarray) -> "SpinorField":
        """Wrap nodal arrays of shape (nx, ny) as a sampled field.

        The evaluator maps a query point to its grid node and fails with
        :class:`DomainError` for off-node queries: a sampled representation
        is defined exactly on the nodes, nothing is interpolated.
        """
        psi = np.asarray(psi, dtype=complex)
        phi = np.asarray(phi, dtype=complex)
        if psi.shape != (grid.nx, grid.ny) or phi.shape != (grid.nx, grid.ny):
            raise ConfigurationError(
                f"sample arrays must have shape {(grid.nx, grid.ny)}, "
                f"got {psi.shape} and {phi.shape}"
            )

        def lookup(x, y):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            ix = np.rint((x - grid.x_min) / grid.hx).astype(int)
            iy = np.rint((y - grid.y_min) / grid.hy).astype(int)
            if np.any(ix < 0) or np.any(ix >= grid.nx) or np.any(iy < 0) or np.any(iy >= grid.ny):
                raise DomainError("query outside the sampled grid")
            off_x = np.max(np.abs(x - (grid.x_min + ix * grid.hx)))
            off_y = np.max(np.abs(y - (grid.y_min + iy * grid.hy)))
            if off_x > 1e-9 * max(grid.hx, 1.0) or off_y > 1e-9 * max(grid.hy, 1.0):
                raise DomainError("sampled field queried off its grid nodes")
            return psi[ix, iy], phi[ix, iy]

        return cls(values=lookup, derivatives=None, grid=grid, closed_form=False)

    def sample_on(self, grid: GridSpec) -> Tuple[np.ndarray, np.ndarray]:
        """Evaluate on the nodes of ``grid``, returning (nx, ny) arrays."""
        X, Y = grid.meshgrid()
        psi, phi = self.values(X, Y)
        return (
            np.broadcast_to(np.asarray(psi, dtype=complex), X.shape).copy(),
            np.broadcast_to(np.asarray(phi, dtype=complex), X.shape).copy(),
        )

    def _check_domain(self, x, y):
        if self.grid is not None and not self.grid.contains(x, y):
            raise DomainError("evaluation outside the field's declared rectangle")


@dataclass(frozen=True)
class PotentialField:
    """Real potential p(x, y), stored as a vectorized evaluator."""

    values: Callable[[np.ndarray, np.ndarray], np.ndarray]

    @classmethod
    def constant(cls, c: float) -> "PotentialField":
        return cls(values=lambda x, y: np.full_like(np.asarray(x, dtype=float), float(c)))

    @classmethod
    def of_x(cls, f: Callable[[np.ndarray], np.ndarray]) -> "PotentialField":
        """Lift a function of x alone to the (x, y) plane."""
        return cls(values=lambda x, y: np.broadcast_to(
            np.asarray(f(np.asarray(x, dtype=float))), np.broadcast(x, y).shape).copy())


def grid_derivatives(values: np.ndarray, hx: float, hy: float):
    """Second-order partial derivatives of a nodal array.

    Central differences in the interior; three-point one-sided stencils of the
    same order on the boundary rows and columns.  Requires at least 3 nodes in
    each direction.
    """
    v = np.asarray(values)
    if v.shape[0] < 3 or v.shape[1] < 3:
        raise ConfigurationError("finite differences need at least 3 nodes per direction")
    dx = np.empty_like(v)
    dy = np.empty_like(v)
    dx[1:-1, :] = (v[2:, :] - v[:-2, :]) / (2 * hx)
    dx[0, :] = (-3 * v[0, :] + 4 * v[1, :] - v[2, :]) / (2 * hx)
    dx[-1, :] = (3 * v[-1, :] - 4 * v[-2, :] + v[-3, :]) / (2 * hx)
    dy[:, 1:-1] = (v[:, 2:] - v[:, :-2]) / (2 * hy)
    dy[:, 0] = (-3 * v[:, 0] + 4 * v[:, 1] - v[:, 2]) / (2 * hy)
    dy[:, -1] = (3 * v[:, -1] - 4 * v[:, -2] + v[:, -3]) / (2 * hy)
    return dx, dy


def conformal_factor(field: SpinorField, x, y):
    """rho = |psi|^2 + |phi|^2 at (x, y); vectorized; >= 0."""
    field._check_domain(x, y)
    psi, phi = field.values(x, y)
    return np.abs(psi) ** 2 + np.abs(phi) ** 2


def dirac_residual(field: SpinorField, p: PotentialField, grid: GridSpec):
    """Max-norm residuals of the Dirac pair equations on a grid.

    Returns ``(r1_max, r2_max)`` with

        r1 = |d/dz psi - p phi|,      r2 = |d/dzb phi + p psi|.

    Closed-form fields (with derivative closures) are differentiated
    analytically and the maxima run over every node.  Otherwise derivatives
    are finite differences (second order; one-sided at the boundary) and the
    maxima run over interior nodes only, where the stencils are centered.
    """
    X, Y = grid.meshgrid()
    psi, phi = field.sample_on(grid)
    pv = np.broadcast_to(np.asarray(p.values(X, Y), dtype=float), X.shape)
    if field.derivatives is not None:
        px, py, qx, qy = field.derivatives(X, Y)
        interior = np.s_[:, :]
    else:
        if grid.nx < 3 or grid.ny < 3:
            raise ConfigurationError("dirac_residual needs nx, ny >= 3 for finite differences")
        px, py = grid_derivatives(psi, grid.hx, grid.hy)
        qx, qy = grid_derivatives(phi, grid.hx, grid.hy)
        interior = np.s_[1:-1, 1:-1]
    r1 = np.abs(0.5 * (px + 1j * py) - pv * phi)
    r2 = np.abs(0.5 * (qx - 1j * qy) + pv * psi)
    return float(r1[interior].max()), float(r2[interior].max())


def mean_curvature(p: float, rho: float, tol: float = 1e-12) -> float:
    """H = 2 p / rho; fails for degenerate conformal factor rho <= tol."""
    if rho <= tol:
        raise DegenerateMetricError(f"conformal factor {rho!r} below tolerance {tol!r}")
    return 2.0 * p / rho


@dataclass(frozen=True)
class GaussMapValue:
    """Value of the Gauss map: slope s = phi/psi plus the weight mu = psi^2.

    ``at_infinity`` marks the projective point psi = 0 (with phi != 0); in
    that case ``s`` holds ``complex(inf, 0)`` as a plain marker.
    """

    s: complex
    mu: complex
    at_infinity: bool = False


def gauss_map(field: SpinorField, x: float, y: float) -> GaussMapValue:
    """Projective Gauss-map data (s, mu) = (phi/psi, psi^2) at a point."""
    field._check_domain(x, y)
    psi, phi = field.values(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    psi = complex(psi)
    phi = complex(phi)
    if psi == 0 and phi == 0:
        raise UndefinedMapError(f"both spinor components vanish at ({x}, {y})")
    if psi == 0:
        return GaussMapValue(s=complex(np.inf, 0.0), mu=0j, at_infinity=True)
    return GaussMapValue(s=phi / psi, mu=psi * psi, at_infinity=False)
