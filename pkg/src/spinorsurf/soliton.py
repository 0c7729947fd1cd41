"""One-soliton potentials, their closed-form eigenfunctions, and revolved fields.

The separable ansatz psi = r(x) e^{lam y}, phi = s(x) e^{lam y} reduces the
Dirac pair to the Zakharov-Shabat system in x,

    r_x + i lam r =  u s,
    s_x - i lam s = -u r,        u = 2 p,

whose reflectionless one-soliton potential is u(x) = sign * mu * sech(theta),
theta = mu x - phi0.  The decaying fundamental pair normalized to a free
exponential as x -> -inf is

    r(x) = e^{-i lam x} (2 i lam + mu tanh(theta)) / (2 i lam - mu),
    s(x) = sign * mu e^{-i lam x} sech(theta) / (2 i lam - mu),

with a pole of the normalization at lam = -i mu / 2.  The auxiliary chain
behind the potential is a(x) = 2 mu tanh(theta), b(x) = 2 u(x), satisfying
a_x = u b, b_x = -u a, a^2 + b^2 = 4 mu^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ConfigurationError, IntegrationError, PoleError
from .spinor_core import SpinorField

__all__ = [
    "SolitonParams",
    "SpectralParam",
    "JostPair",
    "bargmann_potential",
    "jost_pair",
    "jost_solution",
    "zs_residual",
    "zs_integrate",
    "revolve_spinors",
]

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class SolitonParams:
    """Scale mu > 0, phase offset phi0, and sign branch of the potential."""

    mu: float
    phi0: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if not (self.mu > 0):
            raise ConfigurationError(f"mu must be positive, got {self.mu!r}")
        if self.sign not in (-1, 1):
            raise ConfigurationError(f"sign must be +1 or -1, got {self.sign!r}")


@dataclass(frozen=True)
class SpectralParam:
    """Complex spectral parameter of the linear system."""

    lam: complex

    def check_against(self, params: SolitonParams) -> None:
        if abs(2j * complex(self.lam) - params.mu) < _POLE_TOL:
            raise PoleError(
                f"lambda = {self.lam!r} sits on the pole 2i*lambda = mu = {params.mu!r}"
            )


def _as_lambda(lam) -> complex:
    return complex(lam.lam) if isinstance(lam, SpectralParam) else complex(lam)


def _check_pole(params: SolitonParams, lam: complex) -> None:
    SpectralParam(lam).check_against(params)


def bargmann_potential(params: SolitonParams, x):
    """Potential u and auxiliary pair (a, b) at x; vectorized.

    Returns ``(u, a, b)`` with u = sign*mu*sech(theta), a = 2*mu*tanh(theta),
    b = 2*u.  The coefficient of a is fixed by the identities a_x = u*b and
    a^2 + b^2 = 4 mu^2, which hold exactly for the closed forms returned here.
    """
    # dtype-preserving so complex-step differentiation of `a` stays possible
    th = params.mu * np.asarray(x) - params.phi0
    u = params.sign * params.mu / np.cosh(th)
    a = 2.0 * params.mu * np.tanh(th)
    return u, a, 2.0 * u


@dataclass(frozen=True)
class JostPair:
    """Closed-form fundamental pair with analytic x-derivative closures."""

    phi1: Callable[[np.ndarray], np.ndarray]
    phi2: Callable[[np.ndarray], np.ndarray]
    phi1_x: Callable[[np.ndarray], np.ndarray]
    phi2_x: Callable[[np.ndarray], np.ndarray]


def jost_pair(params: SolitonParams, lam, phase_shift: float = 0.0) -> JostPair:
    """Closed-form decaying pair for the soliton potential, as callables.

    ``phase_shift`` is added to phi0, giving the effective phase of a deformed
    potential while keeping the same algebraic identity in x.
    """
    lam = _as_lambda(lam)
    _check_pole(params, lam)
    mu, sign = params.mu, params.sign
    phase = params.phi0 + phase_shift
    den = 2j * lam - mu

    def phi1(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-1j * lam * x) * (2j * lam + mu * np.tanh(mu * x - phase)) / den

    def phi2(x):
        x = np.asarray(x, dtype=float)
        return sign * mu * np.exp(-1j * lam * x) / np.cosh(mu * x - phase) / den

    def phi1_x(x):
        x = np.asarray(x, dtype=float)
        th = mu * x - phase
        sech = 1.0 / np.cosh(th)
        return (
            np.exp(-1j * lam * x)
            * (-1j * lam * (2j * lam + mu * np.tanh(th)) + mu**2 * sech**2)
            / den
        )

    def phi2_x(x):
        x = np.asarray(x, dtype=float)
        th = mu * x - phase
        sech = 1.0 / np.cosh(th)
        return sign * mu * np.exp(-1j * lam * x) * sech * (-1j * lam - mu * np.tanh(th)) / den

    return JostPair(phi1=phi1, phi2=phi2, phi1_x=phi1_x, phi2_x=phi2_x)


def jost_solution(params: SolitonParams, lam, x, phase_shift: float = 0.0):
    """Values (phi1, phi2) of the closed-form pair at x."""
    pair = jost_pair(params, lam, phase_shift)
    return pair.phi1(x), pair.phi2(x)


def zs_residual(
    r: Callable,
    s: Callable,
    u: Callable,
    lam,
    xs,
    r_x: Optional[Callable] = None,
    s_x: Optional[Callable] = None,
) -> Tuple[float, float]:
    """Max scaled residuals of the first-order system at the sample points.

    Residuals |r_x + i lam r - u s| and |s_x - i lam s + u r| are divided
    pointwise by max(1, |r|, |s|): solutions with non-real spectral parameter
    carry free exponential factors whose float cancellation would otherwise
    swamp an identically-satisfied identity, while order-one solutions are
    scored by the plain absolute residual.

    Derivatives come from ``r_x``/``s_x`` when given, else from second-order
    central differences over ``xs`` (one-sided at the ends; needs >= 3 points).
    """
    xs = np.asarray(xs, dtype=float)
    lam = _as_lambda(lam)
    rv = np.asarray(r(xs), dtype=complex)
    sv = np.asarray(s(xs), dtype=complex)
    uv = np.asarray(u(xs), dtype=float)
    if r_x is not None and s_x is not None:
        rd = np.asarray(r_x(xs), dtype=complex)
        sd = np.asarray(s_x(xs), dtype=complex)
    else:
        if xs.size < 3:
            raise ConfigurationError("finite-difference residual needs at least 3 sample points")
        rd = np.gradient(rv, xs, edge_order=2)
        sd = np.gradient(sv, xs, edge_order=2)
    scale = np.maximum(1.0, np.maximum(np.abs(rv), np.abs(sv)))
    res1 = np.abs(rd + 1j * lam * rv - uv * sv) / scale
    res2 = np.abs(sd - 1j * lam * sv + uv * rv) / scale
    return float(res1.max()), float(res2.max())


def zs_integrate(
    u: Callable,
    lam,
    x_from: float,
    x_to: float,
    step: float,
    init: Tuple[complex, complex],
):
    """Classical fixed-step RK4 march of the linear system; independent oracle.

    Returns ``(xs, values)`` with values of shape (n+1, 2).  The step count is
    ``round((x_to - x_from) / step)`` and the actual step is adjusted to land
    exactly on ``x_to``, keeping the march deterministic for given inputs.
    """
    if not (step > 0):
        raise ConfigurationError("step must be positive")
    lam = _as_lambda(lam)
    span = x_to - x_from
    n = max(1, int(round(abs(span) / step)))
    h = span / n
    xs = x_from + h * np.arange(n + 1)
    out = np.empty((n + 1, 2), dtype=complex)
    y = np.array(init, dtype=complex)
    out[0] = y

    def rhs(uval, yv):
        return np.array(
            [-1j * lam * yv[0] + uval * yv[1], -uval * yv[0] + 1j * lam * yv[1]]
        )

    for i in range(n):
        x = xs[i]
        uvals = np.asarray(u(np.array([x, x + h / 2, x + h])), dtype=float)
        if not np.all(np.isfinite(uvals)):
            raise IntegrationError(
                f"potential non-finite near x = {x + h / 2}", location=float(x + h / 2)
            )
        k1 = rhs(uvals[0], y)
        k2 = rhs(uvals[1], y + (h / 2) * k1)
        k3 = rhs(uvals[1], y + (h / 2) * k2)
        k4 = rhs(uvals[2], y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return xs, out


def revolve_spinors(params: SolitonParams, lam, phase_shift: float = 0.0) -> SpinorField:
    """Closed-form spinor field (psi, phi) = (r(x), s(x)) * e^{lam y}.

    At y = 0 the field coincides with the closed-form pair; it is a Dirac pair
    for the potential p = u/2 on the whole plane, with analytic derivatives.
    """
    lam = _as_lambda(lam)
    pair = jost_pair(params, lam, phase_shift)

    def values(x, y):
        g = np.exp(lam * np.asarray(y, dtype=float))
        return pair.phi1(x) * g, pair.phi2(x) * g

    def derivatives(x, y):
        g = np.exp(lam * np.asarray(y, dtype=float))
        f1, f2 = pair.phi1(x), pair.phi2(x)
        return pair.phi1_x(x) * g, lam * f1 * g, pair.phi2_x(x) * g, lam * f2 * g

    return SpinorField(values=values, derivatives=derivatives, grid=None, closed_form=True)
