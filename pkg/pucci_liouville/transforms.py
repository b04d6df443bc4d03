"""Changes of variable used to move between Liouville problems.

- Hopf-Cole: v = lambda (1 - exp(-u/lambda)) turns M(D^2 u) + |Du|^2 into a
  drift-diffusion inequality for v.
- Power substitution u = v^b with its exponent bookkeeping (s, z).
- Mixed quadratic transform v = int_0^u exp(-s^(q+1)/((q+1) lambda)) ds.
- The algebraic monotonicity inequality for t -> |t|^(q-1) t.
- The exponential identity for v = exp(-u) with a Euclidean drift.

The chain checks evaluate both sides of the smooth pointwise computations on
radial profiles and return their difference as a ResidualReport.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate, special

from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import DomainError, InvalidInputError
from .profiles import DriftSpec, RadialProfile, ResidualReport
from .pucci import Ellipticity, Sign, pucci_radial_values

logger = logging.getLogger(__name__)

# Absolute and relative error requested from QUADPACK
QUAD_TOLERANCE = 1e-12

_LAPLACE = Ellipticity(1.0, 1.0)


def _real(name: str, value: float) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float) or not math.isfinite(value):
        raise InvalidInputError(f"{name} must be a finite real, got {value!r}")
    return float(value)


def _positive(name: str, value: float) -> float:
    value = _real(name, value)
    if value <= 0:
        raise InvalidInputError(f"{name} must be > 0, got {value}")
    return value


def _radial_data(profile: RadialProfile, grid: ArrayLike):
    r = np.asarray(grid, dtype=float).ravel()
    return r, profile.eval(r), profile.deriv1(r), profile.deriv2(r)


# ---------------------------------------------------------------------------
# Hopf-Cole
# ---------------------------------------------------------------------------


def hopf_cole(u: ArrayLike, lambda_: float):
    """v = lambda (1 - exp(-u/lambda)), an increasing bijection of R onto (-inf, lambda)."""
    lam = _positive("lambda_", lambda_)
    v = -lam * np.expm1(-np.asarray(u, dtype=float) / lam)
    return float(v) if v.ndim == 0 else v


def hopf_cole_inv(v: ArrayLike, lambda_: float):
    """u = -lambda log(1 - v/lambda).

    Raises:
        DomainError: If v >= lambda anywhere
    """
    lam = _positive("lambda_", lambda_)
    arr = np.asarray(v, dtype=float)
    if np.any(arr >= lam):
        raise DomainError(f"hopf_cole_inv needs v < lambda = {lam}")
    u = -lam * np.log1p(-arr / lam)
    return float(u) if u.ndim == 0 else u


def hopf_cole_chain_check(
    profile: RadialProfile,
    drift: DriftSpec,
    ell: Ellipticity,
    N: int,
    grid: ArrayLike,
    sign: Sign = "plus",
) -> ResidualReport:
    """Residual (M(D^2 v) - b.Dv) - exp(-u/lambda) (M(D^2 u) + |Du|^2 - b.Du) with v = hopf_cole(u).

    D^2 v = g'(u) D^2 u + g''(u) Du (x) Du with g' = exp(-u/lambda), g'' = -g'/lambda.
    The residual is nonnegative for both extremal operators and vanishes when
    lambda = Lambda.
    """
    r, u, fp, fpp = _radial_data(profile, grid)
    lam = ell.lambda_
    g1 = np.exp(-u / lam)
    vp = g1 * fp
    vpp = g1 * (fpp - fp * fp / lam)
    b_r = drift.radial_component(r)

    transformed = pucci_radial_values(vp, vpp, r, N, ell, sign) - b_r * vp
    original = pucci_radial_values(fp, fpp, r, N, ell, sign) + fp * fp - b_r * fp
    return ResidualReport(r, transformed - g1 * original)


# ---------------------------------------------------------------------------
# Power substitution u = v^b
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentTriple:
    """Exponents after substituting u = v^b into M(D^2 u) >= u^q |Du|^gamma.

    Attributes:
        b: Substitution exponent (b (b - 1) > 0)
        s: New zero-order exponent 1 - gamma + b (q + gamma - 1)
        z: Effective gradient exponent (2 s + gamma) / (s + 1)
    """

    b: float
    s: float
    z: float

    def reduced_constant(self, gamma: float, lambda_: float) -> float | None:
        """Constant c with c^((s+1)/s) = lambda b^(1 - gamma/s) (b - 1); None when s <= 0 or b < 1."""
        if self.s <= 0 or self.b <= 1:
            return None
        rhs = lambda_ * self.b ** (1 - gamma / self.s) * (self.b - 1)
        return float(rhs ** (self.s / (self.s + 1)))

    def to_dict(self) -> dict[str, Any]:
        return {"b": self.b, "s": self.s, "z": self.z}


def power_transform(q: float, gamma: float, b: float) -> ExponentTriple:
    """Exponent triple (b, s, z) of the substitution u = v^b.

    Raises:
        InvalidInputError: If b (b - 1) <= 0
        DomainError: If s <= -1 (z undefined)
    """
    q, gamma, b = _real("q", q), _real("gamma", gamma), _real("b", b)
    if b * (b - 1) <= 0:
        raise InvalidInputError(f"substitution exponent needs b (b - 1) > 0, got b={b}")
    s = 1 - gamma + b * (q + gamma - 1)
    if s <= -1:
        raise DomainError(f"s = {s} <= -1, z is undefined")
    return ExponentTriple(b, s, (2 * s + gamma) / (s + 1))


@dataclass(frozen=True)
class TransferResult:
    """Outcome of moving a subcritical (q, gamma) to a pure gradient problem.

    Attributes:
        transferable: Whether some b = 1 + delta works
        delta: The offset found (largest candidate that works)
        triple: Exponents at that offset
        reason: Why the transfer is impossible (empty when transferable)
    """

    transferable: bool
    delta: float | None = None
    triple: ExponentTriple | None = None
    reason: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "transferable": self.transferable,
            "delta": self.delta,
            "triple": self.triple.to_dict() if self.triple is not None else None,
            "reason": self.reason,
        }


def region_transfer_check(
    q: float, gamma: float, ell: Ellipticity, N: int, *, config: ToolkitConfig | None = None
) -> TransferResult:
    """Search b = 1 + delta with s > 0 and z < beta/(beta-1).

    Only attempted in the strict region (beta-2) q + (beta-1) gamma < beta;
    z < beta/(beta-1) is equivalent to (beta-2) s + (beta-1) gamma < beta and s -> q
    as delta -> 0.
    """
    config = config or DEFAULT_CONFIG
    q, gamma = _real("q", q), _real("gamma", gamma)
    if q + gamma - 1 <= 0:
        raise InvalidInputError(f"needs q + gamma - 1 > 0, got {q + gamma - 1}")
    beta = ell.beta(N)
    margin = (beta - 2) * q + (beta - 1) * gamma - beta
    if margin >= 0:
        return TransferResult(False, reason=f"(beta-2) q + (beta-1) gamma - beta = {margin:.6g} is not negative")

    z_max = beta / (beta - 1)
    for delta in config.transfer_deltas:
        triple = power_transform(q, gamma, 1 + delta)
        if triple.s > 0 and triple.z < z_max:
            logger.debug(f"[Transfer] q={q}, gamma={gamma}: delta={delta}, z={triple.z:.6g} < {z_max:.6g}")
            return TransferResult(True, delta, triple)
    return TransferResult(False, reason=f"no candidate offset reached z < {z_max:.6g}")


# ---------------------------------------------------------------------------
# Mixed quadratic transform
# ---------------------------------------------------------------------------


def _mixquad_weight(s: ArrayLike, q: float, lam: float):
    return np.exp(-np.power(s, q + 1) / ((q + 1) * lam))


def mixquad_transform(u: float, q: float, lambda_: float) -> float:
    """v = int_0^u exp(-s^(q+1) / ((q+1) lambda)) ds by adaptive quadrature.

    For q = 0 this is hopf_cole(u, lambda_).
    """
    u = _real("u", u)
    q = _real("q", q)
    lam = _positive("lambda_", lambda_)
    if u < 0:
        raise InvalidInputError(f"mixquad_transform needs u >= 0, got {u}")
    if q < 0:
        raise InvalidInputError(f"mixquad_transform needs q >= 0, got {q}")
    if u == 0:
        return 0.0
    # Past the cut the integrand is below exp(-60); integrate the two pieces separately
    cut = ((q + 1) * lam * 60.0) ** (1 / (q + 1))
    pieces = [(0.0, min(u, cut))] + ([(cut, u)] if u > cut else [])
    total = 0.0
    for a, b in pieces:
        value, _ = integrate.quad(
            _mixquad_weight, a, b, args=(q, lam), epsabs=QUAD_TOLERANCE, epsrel=QUAD_TOLERANCE, limit=200
        )
        total += value
    return float(total)


def mixquad_limit(q: float, lambda_: float) -> float:
    """Supremum of mixquad_transform: ((q+1) lambda)^(1/(q+1)) Gamma(1 + 1/(q+1))."""
    q = _real("q", q)
    lam = _positive("lambda_", lambda_)
    if q < 0:
        raise InvalidInputError(f"mixquad_limit needs q >= 0, got {q}")
    k = q + 1
    return float((k * lam) ** (1 / k) * special.gamma(1 + 1 / k))


def mixquad_chain_check(
    profile: RadialProfile,
    drift: DriftSpec,
    ell: Ellipticity,
    N: int,
    q: float,
    grid: ArrayLike,
    sign: Sign = "plus",
) -> ResidualReport:
    """Residual (M(D^2 v) - b.Dv) - E(u) (M(D^2 u) + u^q |Du|^2 - b.Du) for the mixed transform.

    E(u) = exp(-u^(q+1)/((q+1) lambda)) and D^2 v = E (D^2 u - (u^q/lambda) Du (x) Du).

    Raises:
        DomainError: If u < 0 on the grid
    """
    q = _real("q", q)
    if q < 0:
        raise InvalidInputError(f"mixquad_chain_check needs q >= 0, got {q}")
    r, u, fp, fpp = _radial_data(profile, grid)
    if np.any(u < 0):
        raise DomainError("the mixed transform needs u >= 0 on the grid")
    lam = ell.lambda_
    weight = _mixquad_weight(u, q, lam)
    uq = np.power(u, q)
    vp = weight * fp
    vpp = weight * (fpp - uq * fp * fp / lam)
    b_r = drift.radial_component(r)

    transformed = pucci_radial_values(vp, vpp, r, N, ell, sign) - b_r * vp
    original = pucci_radial_values(fp, fpp, r, N, ell, sign) + uq * fp * fp - b_r * fp
    return ResidualReport(r, transformed - weight * original)


# ---------------------------------------------------------------------------
# Algebraic inequality and exponential identity
# ---------------------------------------------------------------------------


def lcp_inequality_check(u: float, v: float, q: float) -> bool:
    """(|v|^(q-1) v - |u|^(q-1) u)(v - u) >= 2^(1-q) |v - u|^(q+1), up to -1e-12 (1 + |u| + |v|)^(q+1)."""
    u, v, q = _real("u", u), _real("v", v), _real("q", q)
    if q < 1:
        raise InvalidInputError(f"lcp_inequality_check needs q >= 1, got {q}")
    lhs = (math.copysign(abs(v) ** q, v) - math.copysign(abs(u) ** q, u)) * (v - u)
    rhs = 2 ** (1 - q) * abs(v - u) ** (q + 1)
    return lhs - rhs >= -1e-12 * (1 + abs(u) + abs(v)) ** (q + 1)


def _laplacian(fp: np.ndarray, fpp: np.ndarray, r: np.ndarray, N: int) -> np.ndarray:
    # M+ with lambda = Lambda = 1 is -Laplacian, including the limit at r = 0
    return -pucci_radial_values(fp, fpp, r, N, _LAPLACE, "plus")


def euclidean_exp_transform_check(
    profile: RadialProfile,
    drift: DriftSpec,
    f_rhs: Callable[[np.ndarray], ArrayLike] | float,
    N: int,
    grid: ArrayLike,
) -> ResidualReport:
    """Both sides of -Lap v + b.Dv + f v = v [Lap u - |Du|^2 - b.Du + f] with v = exp(-u).

    The identity is exact, so the returned residual (left minus right) should
    vanish up to rounding.

    Args:
        profile: Radial u
        drift: Pointwise drift b
        f_rhs: Zero-order coefficient f(r), or a constant
        N: Space dimension
        grid: Radii
    """
    r, u, fp, fpp = _radial_data(profile, grid)
    f = np.broadcast_to(np.asarray(f_rhs(r) if callable(f_rhs) else f_rhs, dtype=float), r.shape)
    v = np.exp(-u)
    vp = -v * fp
    vpp = v * (fp * fp - fpp)
    b_r = drift.radial_component(r)

    lhs = -_laplacian(vp, vpp, r, N) + b_r * vp + f * v
    rhs = v * (_laplacian(fp, fpp, r, N) - fp * fp - b_r * fp + f)
    return ResidualReport(r, lhs - rhs)
