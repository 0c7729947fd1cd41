"""Periodic mKdV flow driving the soliton potential, plus formula audits.

Two sign/scale conventions of the same flow are supported:

* GEOMETRIC:  u_t = u_xxx + (3/2) u^2 u_x   (exact soliton 2k sech(kx + k^3 t))
* STANDARD:   v_t = v_xxx + 6 v^2 v_x       (exact soliton  k sech(kx + k^3 t))

v = u/2 maps GEOMETRIC solutions to STANDARD ones.  Both solitons travel left
with phase speed k^2 (peak at x = -k^2 t).  Time stepping is integrating-factor
RK4 in rfft space with 2/3-rule dealiasing.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import BlowUpError, ConfigurationError
from .soliton import SolitonParams, SpectralParam, revolve_spinors
from .spinor_core import SpinorField

__all__ = [
    "Profile1D",
    "MkdvVariant",
    "EvolutionConfig",
    "Trajectory",
    "mkdv_rhs",
    "exact_soliton",
    "SolitonAuditReport",
    "soliton_formula_audit",
    "evolve",
    "conserved_quantities",
    "deformed_spinor_field",
    "export_trajectory_csv",
]


@dataclass(frozen=True)
class Profile1D:
    """Real samples on the uniform periodic grid x_j = -L/2 + j L/n."""

    values: np.ndarray
    domain_length: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ConfigurationError("profile values must be one-dimensional")
        n = v.size
        if n < 16 or (n & (n - 1)) != 0:
            raise ConfigurationError(f"grid size must be a power of two >= 16, got {n}")
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("profile values must be finite")
        if not (self.domain_length > 0):
            raise ConfigurationError(f"domain_length must be positive, got {self.domain_length}")
        object.__setattr__(self, "values", v)
        v.setflags(write=False)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def dx(self) -> float:
        return self.domain_length / self.n

    @property
    def grid(self) -> np.ndarray:
        return self.domain_length * (np.arange(self.n) / self.n - 0.5)

    @classmethod
    def from_callable(cls, f: Callable[[np.ndarray], np.ndarray], domain_length: float, n: int) -> "Profile1D":
        x = domain_length * (np.arange(n) / n - 0.5)
        return cls(values=np.asarray(f(x), dtype=float), domain_length=domain_length)


class MkdvVariant(Enum):
    """Nonlinearity normalization; value is the coefficient of u^2 u_x."""

    GEOMETRIC = 1.5
    STANDARD = 6.0


@dataclass(frozen=True)
class EvolutionConfig:
    dt: float
    t_end: float
    record_every: int = 0
    dealias: bool = True

    def __post_init__(self):
        if not (self.dt > 0):
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if self.t_end < 0:
            raise ConfigurationError(f"t_end must be non-negative, got {self.t_end}")
        if self.t_end != 0 and self.dt > self.t_end * (1 + 1e-12):
            raise ConfigurationError("dt must not exceed t_end")
        if self.record_every < 0:
            raise ConfigurationError("record_every must be >= 0")


@dataclass(frozen=True)
class Trajectory:
    """Recorded snapshots (time, profile, conserved triple), times increasing."""

    times: Tuple[float, ...]
    profiles: Tuple[Profile1D, ...]
    invariants: Tuple[Tuple[float, float, float], ...]

    def __post_init__(self):
        if not (len(self.times) == len(self.profiles) == len(self.invariants)):
            raise ConfigurationError("trajectory components disagree in length")
        if any(b <= a for a, b in zip(self.times[:-1], self.times[1:])):
            raise ConfigurationError("snapshot times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> Profile1D:
        return self.profiles[-1]


def _wavenumbers(n: int, L: float) -> np.ndarray:
    return 2 * np.pi / L * np.arange(n // 2 + 1)


def _dealias_mask(n: int) -> np.ndarray:
    mask = np.ones(n // 2 + 1)
    mask[n // 3:] = 0.0
    return mask


def mkdv_rhs(profile: Profile1D, variant: MkdvVariant, dealias: bool = True) -> np.ndarray:
    """Spectral evaluation of u_xxx + coef * u^2 u_x on the profile's grid."""
    u = profile.values
    n = profile.n
    k = _wavenumbers(n, profile.domain_length)
    uh = np.fft.rfft(u)
    ik = 1j * k
    ux = np.fft.irfft(ik * uh, n)
    uxxx = np.fft.irfft(ik**3 * uh, n)
    nl_hat = np.fft.rfft(variant.value * u**2 * ux)
    if dealias:
        nl_hat = nl_hat * _dealias_mask(n)
    nl_hat[0] = 0.0  # u^2 u_x is an exact x-derivative: mean-free analytically
    return uxxx + np.fft.irfft(nl_hat, n)


def exact_soliton(variant: MkdvVariant, kappa: float, x: np.ndarray, t: float) -> np.ndarray:
    """Closed-form left-moving soliton (peak at x = -kappa^2 t).

    Amplitude is 2*kappa for GEOMETRIC, kappa for STANDARD; the two are the
    v = u/2 images of each other.
    """
    if not (kappa > 0):
        raise ConfigurationError(f"kappa must be positive, got {kappa}")
    amp = 2 * kappa if variant is MkdvVariant.GEOMETRIC else kappa
    return amp / np.cosh(kappa * np.asarray(x, dtype=float) + kappa**3 * t)


def _sech_ansatz_residual(amplitude: float, mu: float, time_sign: float, coef: float) -> float:
    """Max flow-equation residual of A*sech(mu x + time_sign mu^3 t) at t = 0,
    evaluated with closed-form derivatives on x in [-10, 10] (4001 points)."""
    x = np.linspace(-10.0, 10.0, 4001)
    theta = mu * x
    S = 1 / np.cosh(theta)
    T = np.tanh(theta)
    dS = -S * T
    d3S = -S * T + 6 * S**3 * T
    u = amplitude * S
    u_t = amplitude * time_sign * mu**3 * dS
    u_x = amplitude * mu * dS
    u_xxx = amplitude * mu**3 * d3S
    return float(np.abs(u_t - u_xxx - coef * u**2 * u_x).max())


@dataclass(frozen=True)
class SolitonAuditReport:
    """Flow-equation residuals of candidate deformed-potential profiles.

    ``unit_amplitude`` entries test sigma * sech(mu x - mu^3 t); the
    ``scaled_amplitude`` entries test sigma * mu * sech(mu x - mu^3 t), which
    restores the stationary potential at t = 0 but still fails the flow at
    order mu^4.  ``standard_halved`` entries push v = u/2 through the
    coefficient-6 normalization (identically half the GEOMETRIC residual).
    ``residual_exact_reference`` is the same oracle applied to the genuine
    2*mu sech(mu x + mu^3 t) solution and sits at roundoff.
    """

    mu: float
    residual_unit_amplitude_geometric: float
    residual_unit_amplitude_standard_halved: float
    residual_scaled_amplitude_geometric: float
    residual_scaled_amplitude_standard_halved: float
    residual_exact_reference: float
    verdict: str


def soliton_formula_audit(mu: float, sign: int = 1) -> SolitonAuditReport:
    """Check whether sech-ansatz deformed potentials satisfy the GEOMETRIC flow.

    The amplitude ``sign`` only flips u and drops out of every residual (the
    flow is odd in u); it is accepted for interface symmetry with the soliton
    parameters.
    """
    if not (mu > 0):
        raise ConfigurationError(f"mu must be positive, got {mu}")
    if sign not in (-1, 1):
        raise ConfigurationError(f"sign must be +1 or -1, got {sign}")
    r_unit = _sech_ansatz_residual(float(sign), mu, time_sign=-1.0, coef=1.5)
    r_scaled = _sech_ansatz_residual(float(sign) * mu, mu, time_sign=-1.0, coef=1.5)
    # v = u/2 halves the residual exactly; compute it directly anyway.
    r_unit_std = _sech_ansatz_residual(float(sign) / 2, mu, time_sign=-1.0, coef=6.0)
    r_scaled_std = _sech_ansatz_residual(float(sign) * mu / 2, mu, time_sign=-1.0, coef=6.0)
    r_exact = _sech_ansatz_residual(2 * mu, mu, time_sign=+1.0, coef=1.5)
    mismatch = r_unit > max(1e6 * r_exact, 1e-8)
    verdict = (
        "MISMATCH_DETECTED: sech ansatz fails the flow; rescaled exact profile passes"
        if mismatch
        else "CONSISTENT"
    )
    return SolitonAuditReport(
        mu=mu,
        residual_unit_amplitude_geometric=r_unit,
        residual_unit_amplitude_standard_halved=r_unit_std,
        residual_scaled_amplitude_geometric=r_scaled,
        residual_scaled_amplitude_standard_halved=r_scaled_std,
        residual_exact_reference=r_exact,
        verdict=verdict,
    )


def conserved_quantities(profile: Profile1D) -> Tuple[float, float, float]:
    """(mass, momentum, energy-like) integrals: Int u, Int u^2, Int (u_x^2 - u^4).

    The derivative in the third integral is spectral.  Mass and momentum are
    conserved by both flow variants; the third integral is the energy of the
    coefficient-6 normalization (the geometric flow conserves
    Int (u_x^2 - u^4/4) instead), so as a health check it is meaningful for
    standard-variant runs and for traveling waves, where every
    translation-invariant integral is constant.
    """
    u = profile.values
    dx = profile.dx
    k = _wavenumbers(profile.n, profile.domain_length)
    ux = np.fft.irfft(1j * k * np.fft.rfft(u), profile.n)
    return (
        float(u.sum() * dx),
        float((u**2).sum() * dx),
        float(((ux**2) - u**4).sum() * dx),
    )


def evolve(u0: Profile1D, variant: MkdvVariant, config: EvolutionConfig) -> Trajectory:
    """Integrate the flow with integrating-factor RK4 in rfft space.

    Snapshots are recorded at t = 0, every ``record_every`` steps when that is
    positive, and at t_end.  A non-finite state aborts with
    :class:`BlowUpError` carrying the last finite time.  A warning is issued
    when dt * k_max^3 (k_max after dealiasing) exceeds the usual stability
    comfort zone for this scheme.
    """
    n, L = u0.n, u0.domain_length
    if config.t_end == 0:
        inv = conserved_quantities(u0)
        return Trajectory(times=(0.0,), profiles=(u0,), invariants=(inv,))
    k = _wavenumbers(n, L)
    ik = 1j * k
    ik3 = ik**3
    mask = _dealias_mask(n) if config.dealias else np.ones(n // 2 + 1)
    k_active = k[mask > 0]
    if config.dt * float(k_active.max()) ** 3 > 5.0:
        warnings.warn(
            "dt * k_max^3 = %.3g exceeds 5; integrating-factor RK4 may be unstable"
            % (config.dt * float(k_active.max()) ** 3),
            RuntimeWarning,
            stacklevel=2,
        )
    coef = variant.value

    def nonlinear(uh: np.ndarray) -> np.ndarray:
        u = np.fft.irfft(uh, n)
        ux = np.fft.irfft(ik * uh, n)
        wh = np.fft.rfft(coef * u**2 * ux) * mask
        wh[0] = 0.0
        return wh

    n_steps = max(1, int(round(config.t_end / config.dt)))
    # Uniform steps covering [0, t_end] exactly; round-off in t_end/dt only
    # rescales dt by < 1e-12 relative.
    dt = config.t_end / n_steps

    e_half = np.exp(ik3 * dt / 2)
    e_full = e_half**2

    times = [0.0]
    profiles = [u0]
    invariants = [conserved_quantities(u0)]

    uh = np.fft.rfft(u0.values)
    t = 0.0
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        for step in range(1, n_steps + 1):
            na = nonlinear(uh)
            nb = nonlinear(e_half * (uh + dt / 2 * na))
            nc = nonlinear(e_half * uh + dt / 2 * nb)
            nd = nonlinear(e_full * uh + dt * e_half * nc)
            uh = e_full * uh + dt / 6 * (e_full * na + 2 * e_half * (nb + nc) + nd)
            if not np.all(np.isfinite(uh.view(float))):
                raise BlowUpError(
                    f"state became non-finite at t = {step * dt:.6g}; "
                    f"last finite time was {t:.6g}",
                    last_good_time=t,
                )
            t = step * dt
            at_end = step == n_steps
            if at_end or (config.record_every > 0 and step % config.record_every == 0):
                prof = Profile1D(values=np.fft.irfft(uh, n), domain_length=L)
                times.append(t)
                profiles.append(prof)
                invariants.append(conserved_quantities(prof))
    return Trajectory(times=tuple(times), profiles=tuple(profiles), invariants=tuple(invariants))


def deformed_spinor_field(
    params: SolitonParams,
    lam,
    t: float,
    phase_law_sign: int = -1,
) -> SpinorField:
    """Closed-form spinor field carried along the flow for time ``t``.

    The soliton phase obeys d(phase)/dt + mu^3 = 0 under the left-moving
    GEOMETRIC soliton, so the default phase shift at time t is -mu^3 t; pass
    ``phase_law_sign=+1`` for the opposite sign law.  The result is an exact
    frozen-time solution of the spectral system for any t and either sign.
    """
    if phase_law_sign not in (-1, 1):
        raise ConfigurationError(f"phase_law_sign must be +1 or -1, got {phase_law_sign}")
    return revolve_spinors(params, lam, phase_shift=phase_law_sign * params.mu**3 * t)


def export_trajectory_csv(traj: Trajectory, file_path: str) -> None:
    """Long-format CSV ``t,x,u`` with one row per (snapshot, node)."""
    fmt = lambda v: format(float(v), ".17g")
    lines = ["t,x,u"]
    for t, prof in zip(traj.times, traj.profiles):
        x = prof.grid
        u = prof.values
        for j in range(prof.n):
            lines.append(f"{fmt(t)},{fmt(x[j])},{fmt(u[j])}")
    with open(file_path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
