"""Diagnostics built on m(R) = min over |x| <= R of u.

Covers monotonicity of m(R) R^exponent, the decay bound m(R) <= C R^(-2/(q-1)),
the power-type comparison function on an annulus, the cubic test function
bound and the logarithmic Lyapunov function for drifts.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import DomainError, InvalidInputError
from .profiles import Asymptotic, CompApprox, Cubic, DriftSpec, RadialProfile, ResidualReport
from .pucci import Ellipticity, Sign, SymMatrix, _check_sign, hessian_at_point, pucci_radial_values, trace_operator

logger = logging.getLogger(__name__)

LYAPUNOV_GRID_MIN = 1e-4
LYAPUNOV_GRID_POINTS = 512
PSI_GRID_POINTS = 512


def _radii(grid: ArrayLike) -> np.ndarray:
    r = np.asarray(grid, dtype=float).ravel()
    if r.size == 0 or np.any(~np.isfinite(r)) or np.any(r <= 0):
        raise InvalidInputError("grid must be a nonempty list of finite positive radii")
    if np.any(np.diff(r) <= 0):
        raise InvalidInputError("grid must be strictly increasing")
    return r


# ---------------------------------------------------------------------------
# m(R) and monotonicity
# ---------------------------------------------------------------------------


def m_profile(profile: RadialProfile, R: float, *, config: ToolkitConfig | None = None) -> float:
    """min over |x| <= R of u.

    f(R) for nonincreasing profiles, otherwise the minimum over
    config.m_profile_samples equally spaced radii in [0, R].

    Raises:
        DomainError: If the profile is not monotone and undefined at the origin
    """
    config = config or DEFAULT_CONFIG
    if not R > 0:
        raise InvalidInputError(f"R must be > 0, got {R}")
    if profile.nonincreasing:
        return float(profile.eval(R))
    if not profile.includes_origin:
        raise DomainError(f"m(R) of {type(profile).__name__} needs the profile on [0, R]")
    return float(np.min(profile.eval(np.linspace(0.0, R, config.m_profile_samples))))


def _m_values(profile: RadialProfile, r: np.ndarray, config: ToolkitConfig) -> np.ndarray:
    if profile.nonincreasing:
        return np.asarray(profile.eval(r), dtype=float)
    return np.array([m_profile(profile, R, config=config) for R in r])


@dataclass(frozen=True, eq=False)
class MonotonicityReport:
    """m(R) R^exponent sampled on a grid.

    Attributes:
        exponent: Power of R
        grid: Radii
        values: m(R) R^exponent per radius
        violations: Adjacent pairs (R_i, R_i+1) where the sequence decreases beyond tolerance
    """

    exponent: float
    grid: np.ndarray
    values: np.ndarray
    violations: list[tuple[float, float]]

    @property
    def nondecreasing(self) -> bool:
        return not self.violations

    def to_dict(self, include_values: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "exponent": self.exponent,
            "grid_points": int(self.grid.size),
            "nondecreasing": self.nondecreasing,
            "violation_count": len(self.violations),
            "first_violation": list(self.violations[0]) if self.violations else None,
        }
        if include_values:
            data["grid"] = self.grid.tolist()
            data["values"] = self.values.tolist()
        return data


def hadamard_check(
    profile: RadialProfile, exponent: float, grid: ArrayLike, *, config: ToolkitConfig | None = None
) -> MonotonicityReport:
    """Check that R -> m(R) R^exponent is nondecreasing on grid.

    A pair is a violation when values[i+1] < values[i] - rtol * max(|values[i]|, |values[i+1]|).
    """
    config = config or DEFAULT_CONFIG
    r = _radii(grid)
    values = _m_values(profile, r, config) * r**exponent
    scale = np.maximum(np.abs(values[:-1]), np.abs(values[1:]))
    bad = np.flatnonzero(values[1:] < values[:-1] - config.monotonicity_rtol * scale)
    violations = [(float(r[i]), float(r[i + 1])) for i in bad]
    if violations:
        logger.debug(f"[Annulus] {len(violations)} monotonicity violations for exponent {exponent}")
    return MonotonicityReport(float(exponent), r, values, violations)


@dataclass(frozen=True)
class DecayBoundReport:
    """Fitted constant of m(R) <= C R^(-2/(q-1)).

    Attributes:
        constant: max over the grid of m(R) R^(2/(q-1))
        argmax: Radius attaining it
        bounded: Finite and attained before the last grid radius
    """

    constant: float
    argmax: float
    bounded: bool

    def to_dict(self) -> dict[str, Any]:
        return {"constant": self.constant, "argmax": self.argmax, "bounded": self.bounded}


def decay_bound_check(
    profile: RadialProfile, q: float, grid: ArrayLike, *, config: ToolkitConfig | None = None
) -> DecayBoundReport:
    """Fit C* = max m(R) R^(2/(q-1)); bounded when C* is finite and not attained at the grid end."""
    config = config or DEFAULT_CONFIG
    if not q > 1:
        raise InvalidInputError(f"decay_bound_check needs q > 1, got {q}")
    r = _radii(grid)
    scaled = _m_values(profile, r, config) * r ** (2 / (q - 1))
    idx = int(np.argmax(scaled))
    constant = float(scaled[idx])
    bounded = bool(np.isfinite(constant) and idx < r.size - 1)
    return DecayBoundReport(constant, float(r[idx]), bounded)


# ---------------------------------------------------------------------------
# Comparison function on an annulus
# ---------------------------------------------------------------------------


def _check_annulus(R1, R, m1, mR, nu, gamma, ell: Ellipticity, N: int) -> float:
    beta = ell.beta(N)
    if not 0 < R1 < R:
        raise InvalidInputError(f"need 0 < R1 < R, got R1={R1}, R={R}")
    if not m1 >= mR >= 0:
        raise InvalidInputError(f"need m1 >= mR >= 0, got m1={m1}, mR={mR}")
    if not 0 < nu < beta - 2:
        raise InvalidInputError(f"need 0 < nu < beta-2 = {beta - 2:.6g}, got {nu}")
    if not 1 < gamma <= beta / (beta - 1):
        raise InvalidInputError(f"need 1 < gamma <= beta/(beta-1) = {beta / (beta - 1):.6g}, got {gamma}")
    return beta


def crucineq(R1: float, R: float, m1: float, mR: float, nu: float, gamma: float, ell: Ellipticity, N: int) -> bool:
    """m1 R1^k >= (1 - (R1/R)^nu) (lambda (beta-nu-2))^(1/(gamma-1)) / nu + mR R1^k, k = (2-gamma)/(gamma-1).

    When it holds (and nu < k) the comparison function of psi_comparison is a
    subsolution of M+(D^2 psi) <= |D psi|^gamma on the whole annulus.
    """
    beta = _check_annulus(R1, R, m1, mR, nu, gamma, ell, N)
    k = (2 - gamma) / (gamma - 1)
    gap = (1 - (R1 / R) ** nu) * (ell.lambda_ * (beta - nu - 2)) ** (1 / (gamma - 1)) / nu
    return bool(m1 * R1**k >= gap + mR * R1**k)


@dataclass(frozen=True, eq=False)
class PsiComparisonReport:
    """Subsolution test of psi = Theta (|x|^-nu - R^-nu) + m(R) on R1 <= |x| <= R.

    Attributes:
        profile: psi as a CompApprox profile
        theta: Theta = (m1 - mR) / (R1^-nu - R^-nu)
        residual: |D psi|^gamma - M+(D^2 psi) on the annulus
        crucineq: Value of the crucial inequality
        applies: nu < (2-gamma)/(gamma-1), the range where crucineq implies a nonnegative residual
        consistent: False only when crucineq applies and holds but the residual is negative
    """

    profile: CompApprox
    theta: float
    residual: ResidualReport
    crucineq: bool
    applies: bool
    consistent: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "profile": self.profile.to_dict(),
            "theta": self.theta,
            "crucineq": self.crucineq,
            "applies": self.applies,
            "consistent": self.consistent,
            **self.residual.to_dict(),
        }


def psi_comparison(
    R1: float, R: float, m1: float, mR: float, nu: float, gamma: float, ell: Ellipticity, N: int
) -> PsiComparisonReport:
    """Build the comparison function through (R1, m1) and (R, mR) and test it on the annulus.

    A failed check is reported, not raised: callers must read ``consistent``,
    which is False when crucineq applies and holds while the residual is
    negative (a warning is logged as well).

    Raises:
        InvalidInputError: If the parameters leave the admissible range
    """
    _check_annulus(R1, R, m1, mR, nu, gamma, ell, N)
    theta = (m1 - mR) / (R1**-nu - R**-nu)
    profile = CompApprox(float(theta), float(nu), float(R), float(mR))

    r = np.geomspace(R1, R, PSI_GRID_POINTS)
    fp = profile.deriv1(r)
    gradient = np.abs(fp) ** gamma
    operator = pucci_radial_values(fp, profile.deriv2(r), r, N, ell, "plus")
    residual = ResidualReport(r, gradient - operator)

    holds = crucineq(R1, R, m1, mR, nu, gamma, ell, N)
    applies = nu < (2 - gamma) / (gamma - 1)
    scale = float(max(np.max(np.abs(gradient)), np.max(np.abs(operator))))
    consistent = not (holds and applies) or residual.min >= -1e-9 * (1 + scale)
    if not consistent:
        logger.warning(f"[Annulus] crucial inequality holds but residual min is {residual.min:.3e}")
    return PsiComparisonReport(profile, float(theta), residual, holds, applies, bool(consistent))


# ---------------------------------------------------------------------------
# Cubic test function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicBoundReport:
    """max of M+(D^2 phi) over (r0, R) against 3 Lambda (N+1) m_r / (R-r0)^2."""

    maximum: float
    bound: float
    holds: bool

    def to_dict(self) -> dict[str, Any]:
        return {"maximum": self.maximum, "bound": self.bound, "holds": self.holds}


def cubic_bound_check(profile: Cubic, ell: Ellipticity, N: int, samples: int = 512) -> CubicBoundReport:
    """Sample M+ of the cubic test function strictly inside (r0, R)."""
    if not isinstance(profile, Cubic):
        raise InvalidInputError("cubic_bound_check needs a Cubic profile")
    if samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {samples}")
    r = np.linspace(profile.r0, profile.R, samples + 2)[1:-1]
    values = pucci_radial_values(profile.deriv1(r), profile.deriv2(r), r, N, ell, "plus")
    maximum = float(np.max(values))
    bound = 3 * ell.Lambda_ * (N + 1) * profile.m_r / (profile.R - profile.r0) ** 2
    return CubicBoundReport(maximum, bound, maximum <= bound + 1e-9)


# ---------------------------------------------------------------------------
# Lyapunov function w = -log|x|
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LyapunovReport:
    """Sign of |x|^2 (M(D^2 w) - b.Dw) for w = -log|x|.

    Attributes:
        admissible: The margin is <= 0 from R0 up to r_max
        R0: Smallest grid radius from which the margin stays <= 0 (None for asymptotic drifts
            or when inadmissible)
        sign: Operator used
        radii: Scan grid (empty for asymptotic drifts)
        margins: Lambda(N-1) - lambda + b.x (plus) or lambda(N-1) - Lambda + b.x (minus)
    """

    admissible: bool
    R0: float | None
    sign: Sign
    radii: np.ndarray
    margins: np.ndarray

    def to_dict(self) -> dict[str, Any]:
        return {
            "admissible": self.admissible,
            "R0": self.R0,
            "sign": self.sign,
            "grid_points": int(self.radii.size),
            "margin_max": float(np.max(self.margins)),
            "margin_at_r_max": float(self.margins[-1]),
        }


def lyapunov_scan(drift: DriftSpec, ell: Ellipticity, N: int, r_max: float, sign: Sign = "plus") -> LyapunovReport:
    """Find where w = -log|x| is a subsolution of M(D^2 w) - b.Dw <= 0.

    |x|^2 (M+(D^2 w) - b.Dw) = Lambda(N-1) - lambda + b(x).x, and with lambda and
    Lambda exchanged for M-.
    """
    _check_sign(sign)
    if not r_max > LYAPUNOV_GRID_MIN:
        raise InvalidInputError(f"r_max must exceed {LYAPUNOV_GRID_MIN}, got {r_max}")
    if sign == "plus":
        base = ell.Lambda_ * (N - 1) - ell.lambda_
    else:
        base = ell.lambda_ * (N - 1) - ell.Lambda_

    if isinstance(drift, Asymptotic) or not drift.pointwise:
        margin = base + drift.limsup
        return LyapunovReport(bool(margin <= 0), None, sign, np.empty(0), np.array([margin]))

    r = np.geomspace(LYAPUNOV_GRID_MIN, r_max, LYAPUNOV_GRID_POINTS)
    margins = base + drift.dot_x(r)
    positive = np.flatnonzero(margins > 0)
    if positive.size == 0:
        return LyapunovReport(True, float(r[0]), sign, r, margins)
    last = int(positive[-1])
    if last == r.size - 1:
        return LyapunovReport(False, None, sign, r, margins)
    return LyapunovReport(True, float(r[last + 1]), sign, r, margins)


def linear_lyapunov_residual(A: SymMatrix | ArrayLike, x: ArrayLike) -> float:
    """-Tr(A D^2 w) at x for w = -log|x|; equals (x^T A x / |x|^2)(Psi_A(x) - 2) / |x|^2."""
    x = np.asarray(x, dtype=float).ravel()
    r = float(np.linalg.norm(x))
    if r == 0:
        raise DomainError("w = -log|x| is singular at the origin")
    return trace_operator(hessian_at_point(x, -1.0 / r, 1.0 / (r * r)), A)
