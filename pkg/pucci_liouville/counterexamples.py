"""Explicit witnesses showing that a Liouville property fails.

Each builder picks a closed-form radial supersolution from a feasibility
interval, certifies an amplitude by a scalar inequality, and then re-verifies
the witness numerically with residual_grid. A witness that does not pass the
numerical check is never returned.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import InvalidInputError, WitnessVerificationError
from .profiles import (
    H1,
    H2,
    H3,
    DriftSpec,
    HamiltonianSpec,
    PowerDecay,
    RadialProfile,
    ResidualReport,
    ScaledRadial,
    SingularPower,
    ZeroOrder,
    grid_for,
    residual_grid,
)
from .pucci import Ellipticity

logger = logging.getLogger(__name__)

# Radii for witnesses singular at the origin
SINGULAR_GRID = (1e-3, 1e6)


@dataclass(frozen=True)
class Infeasible:
    """No witness from the family exists for the given parameters.

    Attributes:
        reason: Why the family does not apply
        feasibility_interval: The (empty) interval of admissible decay rates
    """

    reason: str
    feasibility_interval: tuple[float, float]

    feasible = False

    def to_dict(self) -> dict[str, Any]:
        return {"feasible": False, "reason": self.reason, "feasibility_interval": list(self.feasibility_interval)}


@dataclass(frozen=True, eq=False)
class WitnessReport:
    """A verified explicit supersolution.

    Attributes:
        profile: The witness u(x) = f(|x|)
        hamiltonian: Right-hand side it supersolves
        drift: Velocity field paired with the witness (drift witnesses only)
        feasibility_interval: Open interval of admissible decay rates
        chosen_delta: Decay rate used (interval midpoint, or the forced exponent)
        chosen_amplitude: Certified amplitude
        residual: Residual of M+(D^2 u) - b.Du - H on the verification grid
    """

    profile: RadialProfile
    hamiltonian: HamiltonianSpec
    drift: DriftSpec | None
    feasibility_interval: tuple[float, float]
    chosen_delta: float
    chosen_amplitude: float
    residual: ResidualReport

    feasible = True

    def to_dict(self) -> dict[str, Any]:
        return {
            "feasible": True,
            "profile": self.profile.to_dict(),
            "hamiltonian": self.hamiltonian.to_dict(),
            "drift": self.drift.to_dict() if self.drift is not None else None,
            "feasibility_interval": list(self.feasibility_interval),
            "delta": self.chosen_delta,
            "amplitude": self.chosen_amplitude,
            **self.residual.to_dict(),
        }


WitnessResult = WitnessReport | Infeasible


def _check_exponents(**values: float):
    for name, value in values.items():
        if isinstance(value, bool) or not isinstance(value, int | float) or not math.isfinite(value):
            raise InvalidInputError(f"{name} must be a finite real, got {value!r}")


def zero_order_threshold(beta: float, sigma: float = 0.0) -> float:
    """(beta+sigma)/(beta-2): critical reaction exponent for the weight <x>^sigma, beta > 2."""
    return (beta + sigma) / (beta - 2)


def h1_failure_region(q: float, gamma: float, beta: float, sigma: float = 0.0) -> bool:
    """q > (beta+sigma)/(beta-2) and gamma > beta/(beta-1) with beta > 2."""
    return beta > 2 and q > zero_order_threshold(beta, sigma) and gamma > beta / (beta - 1)


def zero_order_failure_region(q: float, beta: float, sigma: float = 0.0) -> bool:
    """q > (beta+sigma)/(beta-2) with beta > 2."""
    return beta > 2 and q > zero_order_threshold(beta, sigma)


def h2_failure_margin(q: float, gamma: float, beta: float) -> float:
    """(beta-2) q + (beta-1) gamma - beta; the product witness exists iff this is > 0."""
    return (beta - 2) * q + (beta - 1) * gamma - beta


def _halve_amplitude(condition: Callable[[float], bool], config: ToolkitConfig) -> float | None:
    amplitude = 1.0
    for _ in range(config.max_halvings):
        if condition(amplitude):
            return amplitude
        amplitude /= 2.0
    return None


def _verified(
    profile: RadialProfile,
    ham: HamiltonianSpec,
    ell: Ellipticity,
    N: int,
    grid: ArrayLike | None,
    config: ToolkitConfig,
) -> ResidualReport:
    radii = grid_for(profile, config) if grid is None else np.asarray(grid, dtype=float)
    report = residual_grid(profile, ham, ell, N, "plus", radii)
    if not report.passed(config.witness_tolerance):
        raise WitnessVerificationError(
            f"{profile!r} fails {ham!r}: residual min {report.min:.3e} at r={report.argmin:.6g}"
        )
    logger.debug(f"[Witness] verified {profile!r} against {ham!r}, residual min {report.min:.3e}")
    return report


def _check_sigma(sigma: float):
    _check_exponents(sigma=sigma)
    if sigma <= -2:
        raise InvalidInputError(f"reaction weight exponent must be > -2, got {sigma}")


def h1_witness(
    q: float,
    gamma: float,
    ell: Ellipticity,
    N: int,
    *,
    sigma: float = 0.0,
    grid: ArrayLike | None = None,
    config: ToolkitConfig | None = None,
) -> WitnessResult:
    """Decaying supersolution of M+(D^2 u) >= <x>^sigma u^q + |Du|^gamma.

    Uses u = K (1 + r^2)^(-delta/2) with
    max{(2+sigma)/(q-1), (2-gamma)/(gamma-1), 0} < delta < beta - 2 and K halved
    from 1 until lambda delta K (beta-delta-2) >= K^q + (delta K)^gamma. The
    lower end makes <x>^sigma u^q decay at least like (1 + r^2)^(-delta/2-1).

    Args:
        q: Zero-order exponent (> 1 for the family)
        gamma: Gradient exponent (> 1 for the family)
        ell: Ellipticity constants
        N: Space dimension
        sigma: Reaction weight exponent (> -2; 0 is unweighted)
        grid: Verification radii (default grid when None)
        config: Toolkit configuration

    Returns:
        WitnessReport, or Infeasible when the interval is empty
    """
    config = config or DEFAULT_CONFIG
    _check_exponents(q=q, gamma=gamma)
    _check_sigma(sigma)
    if q < 0 or gamma <= 0:
        raise InvalidInputError(f"H1 needs q >= 0 and gamma > 0, got q={q}, gamma={gamma}")
    beta = ell.beta(N)
    high = beta - 2
    if q <= 1 or gamma <= 1:
        return Infeasible("the power-decay family needs q > 1 and gamma > 1", (math.inf, high))

    low = max((2 + sigma) / (q - 1), (2 - gamma) / (gamma - 1), 0.0)
    if not h1_failure_region(q, gamma, beta, sigma) or low >= high:
        return Infeasible("empty decay interval", (low, high))

    delta = (low + high) / 2
    lam = ell.lambda_

    def certified(k: float) -> bool:
        return lam * delta * k * (beta - delta - 2) >= k**q + (delta * k) ** gamma

    amplitude = _halve_amplitude(certified, config)
    if amplitude is None:
        return Infeasible("amplitude search exhausted", (low, high))

    profile = PowerDecay(amplitude, delta)
    ham = H1(q, gamma, sigma)
    report = _verified(profile, ham, ell, N, grid, config)
    logger.info(f"[Witness] H1 q={q} gamma={gamma} sigma={sigma}: delta={delta:.6g}, K={amplitude:.6g}")
    return WitnessReport(profile, ham, None, (low, high), delta, amplitude, report)


def zero_order_witness(
    q: float,
    ell: Ellipticity,
    N: int,
    *,
    sigma: float = 0.0,
    grid: ArrayLike | None = None,
    config: ToolkitConfig | None = None,
) -> WitnessResult:
    """Decaying supersolution of M+(D^2 u) >= <x>^sigma u^q for q > (beta+sigma)/(beta-2).

    delta is the midpoint of ((2+sigma)/(q-1), beta-2); K is halved from 1 until
    lambda delta K (beta-delta-2) >= K^q.
    """
    config = config or DEFAULT_CONFIG
    _check_exponents(q=q)
    _check_sigma(sigma)
    if q < 0:
        raise InvalidInputError(f"zero-order exponent must be >= 0, got {q}")
    beta = ell.beta(N)
    high = beta - 2
    if q <= 1:
        return Infeasible("the power-decay family needs q > 1", (math.inf, high))
    low = (2 + sigma) / (q - 1)
    if not zero_order_failure_region(q, beta, sigma) or low >= high:
        return Infeasible("empty decay interval", (low, high))

    delta = (low + high) / 2
    lam = ell.lambda_
    amplitude = _halve_amplitude(lambda k: lam * delta * k * (beta - delta - 2) >= k**q, config)
    if amplitude is None:
        return Infeasible("amplitude search exhausted", (low, high))

    profile = PowerDecay(amplitude, delta)
    ham = ZeroOrder(q, sigma)
    report = _verified(profile, ham, ell, N, grid, config)
    logger.info(f"[Witness] zero-order q={q} sigma={sigma}: delta={delta:.6g}, K={amplitude:.6g}")
    return WitnessReport(profile, ham, None, (low, high), delta, amplitude, report)


def h2_witness(
    q: float,
    gamma: float,
    ell: Ellipticity,
    N: int,
    *,
    grid: ArrayLike | None = None,
    config: ToolkitConfig | None = None,
) -> WitnessResult:
    """Decaying supersolution of M+(D^2 u) >= u^q |Du|^gamma.

    Feasible iff (beta-2) q + (beta-1) gamma > beta. delta is the midpoint of
    (max{(2-gamma)/(q+gamma-1), 0}, beta-2) and the amplitude is
    C = 1/2 (lambda (beta-delta-2) / delta^(gamma-1))^(1/(q+gamma-1)).
    """
    config = config or DEFAULT_CONFIG
    _check_exponents(q=q, gamma=gamma)
    if q < 0 or gamma <= 0:
        raise InvalidInputError(f"H2 needs q >= 0 and gamma > 0, got q={q}, gamma={gamma}")
    beta = ell.beta(N)
    high = beta - 2
    if gamma <= 1:
        return Infeasible("the power-decay family needs gamma > 1", (math.inf, high))

    low = max((2 - gamma) / (q + gamma - 1), 0.0)
    if h2_failure_margin(q, gamma, beta) <= 0:
        return Infeasible("(beta-2) q + (beta-1) gamma <= beta", (low, high))
    if low >= high:
        return Infeasible("decay interval below floating-point resolution", (low, high))

    delta = (low + high) / 2
    amplitude = 0.5 * (ell.lambda_ * (beta - delta - 2) / delta ** (gamma - 1)) ** (1 / (q + gamma - 1))
    profile = PowerDecay(amplitude, delta)
    ham = H2(q, gamma)
    report = _verified(profile, ham, ell, N, grid, config)
    logger.info(f"[Witness] H2 q={q} gamma={gamma}: delta={delta:.6g}, C={amplitude:.6g}")
    return WitnessReport(profile, ham, None, (low, high), delta, amplitude, report)


def singular_h2_witness(
    gamma: float,
    ell: Ellipticity,
    N: int,
    *,
    grid: ArrayLike | None = None,
    config: ToolkitConfig | None = None,
) -> WitnessResult:
    """Singular solution c r^(-nu), nu = (2-gamma)/(gamma-1), of M+(D^2 v) >= |Dv|^gamma.

    Both sides scale like r^(-nu-2), so the residual is r^(-nu-2) times a
    constant that is positive for the h2_witness amplitude with q = 0.
    """
    config = config or DEFAULT_CONFIG
    _check_exponents(gamma=gamma)
    if gamma <= 0:
        raise InvalidInputError(f"gamma must be > 0, got {gamma}")
    beta = ell.beta(N)
    high = beta - 2
    if not (beta > 2 and beta / (beta - 1) < gamma < 2):
        return Infeasible("needs beta/(beta-1) < gamma < 2", (0.0, high))
    nu = (2 - gamma) / (gamma - 1)
    if nu >= high:
        return Infeasible("exponent at the edge of the admissible range", (0.0, high))

    amplitude = 0.5 * (ell.lambda_ * (beta - nu - 2) / nu ** (gamma - 1)) ** (1 / (gamma - 1))
    profile = SingularPower(amplitude, nu)
    ham = H2(0.0, gamma)
    radii = np.geomspace(*SINGULAR_GRID, config.grid_points) if grid is None else grid
    report = _verified(profile, ham, ell, N, radii, config)
    logger.info(f"[Witness] singular H2 gamma={gamma}: nu={nu:.6g}, Theta={amplitude:.6g}")
    return WitnessReport(profile, ham, None, (0.0, high), nu, amplitude, report)


def drift_witness(
    ell: Ellipticity,
    N: int,
    delta: float,
    *,
    grid: ArrayLike | None = None,
    config: ToolkitConfig | None = None,
) -> WitnessReport:
    """u = (1 + r^2)^(-delta/2) with b(x) = lambda (2-beta+delta) x / (1 + |x|^2).

    M+(D^2 u) - b.Du >= 0 everywhere while limsup b(x).x = lambda (2-beta+delta)
    exceeds the threshold lambda (2-beta) by lambda delta.

    Raises:
        InvalidInputError: If delta is outside (0, beta-2)
        WitnessVerificationError: If the drift does not exceed the threshold in floating point,
            or the residual check fails
    """
    config = config or DEFAULT_CONFIG
    _check_exponents(delta=delta)
    beta = ell.beta(N)
    if not 0 < delta < beta - 2:
        raise InvalidInputError(f"delta must lie in (0, beta-2) = (0, {beta - 2:.6g}), got {delta}")

    drift = ScaledRadial(ell.lambda_ * (2 - beta + delta))
    threshold = ell.lambda_ * (2 - beta)
    if not drift.limsup > threshold:
        raise WitnessVerificationError(
            f"drift witness with delta={delta} has limsup b.x = {drift.limsup:.17g}, not above {threshold:.17g}"
        )
    profile = PowerDecay(1.0, delta)
    ham = H3(2.0, 0.0, drift)
    report = _verified(profile, ham, ell, N, grid, config)
    logger.info(f"[Witness] drift delta={delta}: c={drift.c:.6g} > threshold {threshold:.6g}")
    return WitnessReport(profile, ham, drift, (0.0, beta - 2), delta, 1.0, report)
