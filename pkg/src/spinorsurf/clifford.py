"""2x2 complex-matrix realization of the rank-3 Clifford algebra layer.

Generators are represented by sigma1 = ((0,1),(-1,0)) and sigma2 = ((0,i),(i,0)),
so e12 = sigma1 @ sigma2 = diag(i, -i) and the half-spinor projectors are
(1 +/- i e12)/2 = diag(0,1) and diag(1,0).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError
from .spinor_core import GridSpec, SpinorField, grid_derivatives

__all__ = [
    "Matrix2C",
    "WeylProjectors",
    "SIGMA0",
    "SIGMA1",
    "SIGMA2",
    "SIGMA12",
    "quaternion_embed",
    "quaternion_product",
    "weyl_projectors",
    "weyl_split",
    "rh_number",
    "idempotent_count",
    "PairConvention",
    "dirac_pair_residual",
]


@dataclass(frozen=True)
class Matrix2C:
    """2x2 complex matrix with entrywise approximate equality."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def from_array(cls, a) -> "Matrix2C":
        a = np.asarray(a, dtype=complex)
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1])

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    def __matmul__(self, other: "Matrix2C") -> "Matrix2C":
        return Matrix2C.from_array(self.array @ other.array)

    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def approx_eq(self, other: "Matrix2C", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.array - other.array)) <= tol)


SIGMA0 = Matrix2C(1, 0, 0, 1)
SIGMA1 = Matrix2C(0, 1, -1, 0)
SIGMA2 = Matrix2C(0, 1j, 1j, 0)
SIGMA12 = SIGMA1 @ SIGMA2  # diag(i, -i)


def quaternion_embed(a0: float, a1: float, a2: float, a12: float) -> Matrix2C:
    """a0*I + a1*sigma1 + a2*sigma2 + a12*sigma12; the result has the block
    form ((A, B), (-conj(B), conj(A))) with A = a0 + i*a12, B = a1 + i*a2."""
    return Matrix2C.from_array(
        a0 * SIGMA0.array + a1 * SIGMA1.array + a2 * SIGMA2.array + a12 * SIGMA12.array
    )


def quaternion_product(a, b):
    """Structure constants of the quaternion product in the (1, s1, s2, s12) basis."""
    a0, a1, a2, a12 = a
    b0, b1, b2, b12 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a12 * b12,
        a0 * b1 + a1 * b0 + a2 * b12 - a12 * b2,
        a0 * b2 + a2 * b0 - a1 * b12 + a12 * b1,
        a0 * b12 + a12 * b0 + a1 * b2 - a2 * b1,
    )


@dataclass(frozen=True)
class WeylProjectors:
    p_plus: Matrix2C
    p_minus: Matrix2C


def weyl_projectors() -> WeylProjectors:
    """P+/- = (I +/- i e12)/2 in the fixed representation: diag(0,1), diag(1,0)."""
    i_e12 = Matrix2C.from_array(1j * SIGMA12.array)
    p_plus = Matrix2C.from_array(0.5 * (SIGMA0.array + i_e12.array))
    p_minus = Matrix2C.from_array(0.5 * (SIGMA0.array - i_e12.array))
    return WeylProjectors(p_plus=p_plus, p_minus=p_minus)


def weyl_split(spinor):
    """Split a C^2 spinor into its half-spinor parts (plus, minus)."""
    v = np.asarray(spinor, dtype=complex).reshape(2)
    pr = weyl_projectors()
    return pr.p_plus.array @ v, pr.p_minus.array @ v


_RH_TABLE = (0, 1, 2, 2, 3, 3, 3, 3)


def rh_number(i: int) -> int:
    """Radon-Hurwitz number r_i, extended both directions by r_{i+8} = r_i + 4."""
    return _RH_TABLE[i % 8] + 4 * (i // 8)


def idempotent_count(p: int, q: int) -> int:
    """Number k = q - r_{q-p} classifying primitive idempotents for signature (p, q)."""
    if p < 0 or q < 0:
        raise ConfigurationError("signature indices must be non-negative")
    return q - rh_number(q - p)


class PairConvention(Enum):
    """Derivative convention for the half-spinor pair residual.

    DZ applies the mixed (d/dz, d/dzb) pairing with coupling p = H*rho/2 — the
    convention under which a Dirac pair with matching potential has vanishing
    residual.  DBAR applies D = (d/dx + i d/dy)/2 to both components with
    coupling i*H, which is the literal one-operator reading; for fields that
    solve the mixed system it generally does not vanish.
    """

    DZ = "dz"
    DBAR = "dbar"


def dirac_pair_residual(
    field: SpinorField,
    H,
    grid: GridSpec,
    convention: PairConvention = PairConvention.DZ,
):
    """Max residuals of the half-spinor pair equations for (phi_plus, phi_minus)
    = (psi, phi) of ``field`` against the curvature field ``H(x, y)``.

    Returns (r1_max, r2_max).  DZ:  r1 = |d/dz phi+ - (H rho/2) phi-|,
    r2 = |d/dzb phi- + (H rho/2) phi+|.  DBAR:  r1 = |D phi- - i H phi+|,
    r2 = |D phi+ + i H phi-| with D = (d/dx + i d/dy)/2.
    """
    X, Y = grid.meshgrid()
    psi, phi = field.sample_on(grid)
    Hv = np.broadcast_to(np.asarray(H(X, Y), dtype=float), X.shape)
    if field.derivatives is not None:
        px, py, qx, qy = field.derivatives(X, Y)
        interior = np.s_[:, :]
    else:
        if grid.nx < 3 or grid.ny < 3:
            raise ConfigurationError("dirac_pair_residual needs nx, ny >= 3 for stencils")
        px, py = grid_derivatives(psi, grid.hx, grid.hy)
        qx, qy = grid_derivatives(phi, grid.hx, grid.hy)
        interior = np.s_[1:-1, 1:-1]
    if convention is PairConvention.DZ:
        rho = np.abs(psi) ** 2 + np.abs(phi) ** 2
        coupling = Hv * rho / 2.0
        r1 = np.abs(0.5 * (px + 1j * py) - coupling * phi)
        r2 = np.abs(0.5 * (qx - 1j * qy) + coupling * psi)
    else:
        r1 = np.abs(0.5 * (qx + 1j * qy) - 1j * Hv * psi)
        r2 = np.abs(0.5 * (px + 1j * py) + 1j * Hv * phi)
    return float(r1[interior].max()), float(r2[interior].max())
