"""Deterministic self-verification suites behind the ``verify`` command.

Each suite returns a list of :class:`CheckResult`; the report renderer emits
one tab-separated line per check (name, value, threshold, PASS/FAIL).  Every
check is seeded and grid-fixed, so repeated runs produce byte-identical
reports.  Detection-style checks (a residual that must be *large* because the
probed formula is genuinely not a solution) use a ``>`` threshold.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import clifford as cl
from . import mkdv
from .soliton import (
    SolitonParams,
    bargmann_potential,
    jost_pair,
    revolve_spinors,
    zs_integrate,
    zs_residual,
)
from .weierstrass import (
    PathSpec,
    QuadratureSpec,
    build_mesh,
    conformality_defect,
    immerse_point,
    immersion_integrals,
    path_independence_check,
)
from .spinor_core import GridSpec, SpinorField

__all__ = ["CheckResult", "SUITE_NAMES", "run_suite", "format_report"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: str  # comparator + bound, e.g. "<1.0e-10" or ">1.0e-01"
    passed: bool


def _check(name: str, value: float, threshold: str) -> CheckResult:
    op, bound = threshold[0], float(threshold[1:])
    if op == "<":
        passed = value < bound
    elif op == ">":
        passed = value > bound
    else:
        raise ValueError(f"threshold must start with < or >: {threshold!r}")
    return CheckResult(name=name, value=float(value), threshold=threshold, passed=bool(passed))


# ----------------------------------------------------------------- clifford


def _suite_clifford() -> List[CheckResult]:
    out = []

    p = cl.weyl_projectors()
    ident = cl.SIGMA0
    dev = 0.0
    for proj in (p.p_plus, p.p_minus):
        dev = max(dev, _mat_dev(proj @ proj, proj))
    dev = max(dev, _mat_dev(p.p_plus @ p.p_minus, cl.Matrix2C(0, 0, 0, 0)))
    dev = max(dev, _mat_dev(p.p_minus @ p.p_plus, cl.Matrix2C(0, 0, 0, 0)))
    plus_minus = p.p_plus.array + p.p_minus.array
    dev = max(dev, float(np.abs(plus_minus - ident.array).max()))
    out.append(_check("clifford.projector_idempotency", dev, "<1.0e-14"))

    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(100):
        a = rng.uniform(-1, 1, 4)
        b = rng.uniform(-1, 1, 4)
        lhs = (cl.quaternion_embed(*a) @ cl.quaternion_embed(*b)).array
        rhs = cl.quaternion_embed(*cl.quaternion_product(tuple(a), tuple(b))).array
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    out.append(_check("clifford.embed_homomorphism", worst, "<1.0e-10"))

    table = (0, 1, 2, 2, 3, 3, 3, 3)
    dev = max(abs(cl.rh_number(i) - table[i]) for i in range(8))
    dev = max(dev, max(abs(cl.rh_number(i + 8) - cl.rh_number(i) - 4) for i in range(-16, 17)))
    dev = max(dev, abs(cl.idempotent_count(3, 0) - 1))
    out.append(_check("clifford.rh_table", float(dev), "<1.0e-12"))
    return out


def _mat_dev(m: cl.Matrix2C, target: cl.Matrix2C) -> float:
    return float(np.abs(m.array - target.array).max())


# ----------------------------------------------------------------------- zs


def _suite_zs() -> List[CheckResult]:
    out = []
    xs = np.linspace(-10.0, 10.0, 2001)

    rng = np.random.default_rng(42)
    worst = 0.0
    for idx in range(3):
        params = SolitonParams(
            mu=rng.uniform(0.5, 2.0),
            phi0=rng.uniform(-2.0, 2.0),
            sign=int(rng.choice([-1, 1])),
        )
        mag = rng.uniform(0.5, 2.0)
        lam = 1j * mag if idx % 2 else mag
        pair = jost_pair(params, lam)
        res = zs_residual(
            pair.phi1,
            pair.phi2,
            lambda x: bargmann_potential(params, x)[0],
            lam,
            xs,
            r_x=pair.phi1_x,
            s_x=pair.phi2_x,
        )
        worst = max(worst, *res)
    out.append(_check("zs.jost_residual", worst, "<1.0e-10"))

    h = 1e-7
    worst = 0.0
    for mu in (0.5, 1.0, 2.0):
        params = SolitonParams(mu=mu, phi0=0.7, sign=1)
        u, a, b = bargmann_potential(params, xs)
        a_x = bargmann_potential(params, xs + 1j * h)[1].imag / h
        worst = max(
            worst,
            float(np.abs(a**2 + b**2 - 4 * mu**2).max()),
            float(np.abs(b**2 - 2 * a_x).max()),
            float(np.abs(a_x + a**2 / 2 - 2 * mu**2).max()),
        )
    out.append(_check("zs.bargmann_chain", worst, "<1.0e-10"))

    params = SolitonParams(mu=1.3, phi0=0.3, sign=1)
    lam = 0.8
    pair = jost_pair(params, lam)
    init = (complex(pair.phi1(-10.0)), complex(pair.phi2(-10.0)))
    xs_rk, vals = zs_integrate(
        lambda x: bargmann_potential(params, x)[0], lam, -10.0, 10.0, 2e-3, init
    )
    dev = max(
        float(np.abs(vals[:, 0] - pair.phi1(xs_rk)).max()),
        float(np.abs(vals[:, 1] - pair.phi2(xs_rk)).max()),
    )
    out.append(_check("zs.rk4_crosscheck", dev, "<1.0e-8"))
    return out


# -------------------------------------------------------------- weierstrass


def _plane_field() -> SpinorField:
    return SpinorField(
        values=lambda x, y: (np.ones_like(np.asarray(x, dtype=complex)),
                             np.zeros_like(np.asarray(x, dtype=complex))),
        derivatives=lambda x, y: tuple(np.zeros_like(np.asarray(x, dtype=complex)) for _ in range(4)),
    )


def _suite_weierstrass() -> List[CheckResult]:
    out = []
    quad = QuadratureSpec()

    path = PathSpec([(0.0, 0.0), (0.7, 0.0), (0.7, 0.4)])
    pt = immerse_point(_plane_field(), path, quad)
    dev = float(np.abs(pt - np.array([-0.4, 0.7, 0.0])).max())
    out.append(_check("weier.plane_point", dev, "<1.0e-12"))

    field = revolve_spinors(SolitonParams(mu=1.0), 1.0)
    straight = PathSpec([(0.0, 0.0), (2.0, 1.0)])
    bent = PathSpec([(0.0, 0.0), (2.0, 0.0), (2.0, 1.0)])
    out.append(
        _check(
            "weier.path_independence",
            path_independence_check(field, straight, bent, quad),
            "<1.0e-8",
        )
    )

    leak = float(np.abs(immersion_integrals(field, straight, quad).imag).max())
    out.append(_check("weier.imag_leakage", leak, "<1.0e-10"))

    defects = []
    for nx, ny in ((61, 33), (121, 65)):
        grid = GridSpec(x_min=-3.0, x_max=3.0, y_min=0.0, y_max=1.0, nx=nx, ny=ny)
        defects.append(conformality_defect(build_mesh(field, grid, quad)))
    order = float(np.log2(defects[0] / defects[1]))
    out.append(_check("weier.conformality_order", order, ">1.9"))
    return out


# --------------------------------------------------------------------- mkdv


def _suite_mkdv() -> List[CheckResult]:
    out = []

    n, L = 256, 40.0
    x = L * (np.arange(n) / n - 0.5)
    w = 2 * np.pi / L
    prof = mkdv.Profile1D(values=np.sin(w * x), domain_length=L)
    dev = 0.0
    for variant in (mkdv.MkdvVariant.GEOMETRIC, mkdv.MkdvVariant.STANDARD):
        exact = -(w**3) * np.cos(w * x) + variant.value * w * np.sin(w * x) ** 2 * np.cos(w * x)
        dev = max(dev, float(np.abs(mkdv.mkdv_rhs(prof, variant) - exact).max()))
    out.append(_check("mkdv.rhs_sine", dev, "<1.0e-10"))

    sech = mkdv.Profile1D.from_callable(lambda x: 1 / np.cosh(x), 40.0, 512)
    i2 = mkdv.conserved_quantities(sech)[1]
    out.append(_check("mkdv.i2_sech", abs(i2 - 2.0), "<1.0e-8"))

    u0 = mkdv.Profile1D.from_callable(
        lambda x: mkdv.exact_soliton(mkdv.MkdvVariant.GEOMETRIC, 1.0, x, 0.0), 40.0, 512
    )
    traj = mkdv.evolve(u0, mkdv.MkdvVariant.GEOMETRIC, mkdv.EvolutionConfig(dt=1e-4, t_end=1.0))
    exact = mkdv.exact_soliton(mkdv.MkdvVariant.GEOMETRIC, 1.0, u0.grid, 1.0)
    out.append(
        _check(
            "mkdv.soliton_tracking",
            float(np.abs(traj.final.values - exact).max()),
            "<1.0e-6",
        )
    )

    audit = mkdv.soliton_formula_audit(1.0)
    out.append(
        _check(
            "mkdv.sech_ansatz_residual",
            audit.residual_unit_amplitude_geometric,
            ">1.0e-01",
        )
    )

    bargmann = mkdv.Profile1D.from_callable(
        lambda x: bargmann_potential(SolitonParams(mu=1.0), x)[0], 40.0, 512
    )
    traj = mkdv.evolve(
        bargmann, mkdv.MkdvVariant.GEOMETRIC, mkdv.EvolutionConfig(dt=2e-4, t_end=1.0)
    )
    out.append(
        _check(
            "mkdv.translation_deviation",
            translation_deviation(bargmann, traj.final),
            ">1.0e-02",
        )
    )
    return out


def translation_deviation(reference: mkdv.Profile1D, evolved: mkdv.Profile1D) -> float:
    """Distance of ``evolved`` from the orbit of translates of ``reference``:
    min over spectral shifts s of max_x |evolved(x) - reference(x - s)|.

    Near zero iff the evolution merely translated the profile; order-one for
    profiles that shed radiation or change shape.
    """
    n, L = reference.n, reference.domain_length
    k = 2 * np.pi / L * np.arange(n // 2 + 1)
    ref_hat = np.fft.rfft(reference.values)
    shifts = np.linspace(-L / 4, L / 4, 2001)
    shifted = np.fft.irfft(ref_hat[None, :] * np.exp(-1j * np.outer(shifts, k)), n, axis=1)
    return float(np.abs(shifted - evolved.values[None, :]).max(axis=1).min())


# ------------------------------------------------------------------ driver


_SUITES: Dict[str, Callable[[], List[CheckResult]]] = {
    "clifford": _suite_clifford,
    "zs": _suite_zs,
    "weierstrass": _suite_weierstrass,
    "mkdv": _suite_mkdv,
}

SUITE_NAMES = ("all",) + tuple(_SUITES)


def run_suite(name: str) -> List[CheckResult]:
    """Run one named suite, or every suite in fixed order for ``all``."""
    if name == "all":
        results: List[CheckResult] = []
        for key in _SUITES:
            results.extend(_SUITES[key]())
        return results
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    return _SUITES[name]()


def format_report(results: List[CheckResult]) -> str:
    """One tab-separated line per check; stable across runs."""
    lines = [
        f"{r.name}\t{r.value:.6e}\t{r.threshold}\t{'PASS' if r.passed else 'FAIL'}"
        for r in results
    ]
    return "\n".join(lines) + "\n"
