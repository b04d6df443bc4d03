"""Closed-form radial profiles, Hamiltonians, drifts and residual grids.

Every explicit function the toolkit verifies is a RadialProfile u(x) = f(|x|)
carrying exact f, f' and f''. A residual grid evaluates

    M(D^2 u)(r) - b(x).Du - H(u, Du)

on a list of radii, where M is M+ or M- and the drift term is present only for
the drift Hamiltonian H3.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
from typing import Any, ClassVar

import numpy as np
from numpy.typing import ArrayLike

from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import DomainError, InvalidInputError
from .pucci import Ellipticity, Sign, pucci_radial_values


def _require(condition: bool, message: str):
    if not condition:
        raise InvalidInputError(message)


def _finite(*values: float) -> bool:
    return all(isinstance(v, int | float) and not isinstance(v, bool) and math.isfinite(v) for v in values)


def _serialize(value: Any) -> Any:
    return value.to_dict() if hasattr(value, "to_dict") else value


class _Tagged:
    """Tagged-union encoding {"variant": ClassName, field: value, ...}."""

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"variant": type(self).__name__}
        for f in fields(self):  # type: ignore[arg-type]
            data[f.name] = _serialize(getattr(self, f.name))
        return data


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


class RadialProfile(_Tagged, ABC):
    """Radial function with exact first and second derivatives.

    Subclasses implement ``_f``, ``_fp`` and ``_fpp`` on numpy arrays already
    checked against the natural domain (r >= 0 or r > 0).
    """

    includes_origin: ClassVar[bool] = True

    @abstractmethod
    def _f(self, r: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _fp(self, r: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _fpp(self, r: np.ndarray) -> np.ndarray: ...

    @property
    @abstractmethod
    def nonincreasing(self) -> bool:
        """True when f is known to be nonincreasing on its domain."""

    def _radii(self, r: ArrayLike) -> np.ndarray:
        arr = np.asarray(r, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise DomainError(f"{type(self).__name__}: radii must be finite")
        if self.includes_origin:
            if np.any(arr < 0):
                raise DomainError(f"{type(self).__name__} is defined for r >= 0")
        elif np.any(arr <= 0):
            raise DomainError(f"{type(self).__name__} is defined for r > 0")
        return arr

    @staticmethod
    def _out(values: np.ndarray, scalar: bool):
        return float(values) if scalar else values

    def eval(self, r: ArrayLike):
        """f(r) for a scalar or an array of radii."""
        arr = self._radii(r)
        return self._out(np.asarray(self._f(arr), dtype=float), arr.ndim == 0)

    def deriv1(self, r: ArrayLike):
        """f'(r)."""
        arr = self._radii(r)
        return self._out(np.asarray(self._fp(arr), dtype=float), arr.ndim == 0)

    def deriv2(self, r: ArrayLike):
        """f''(r)."""
        arr = self._radii(r)
        return self._out(np.asarray(self._fpp(arr), dtype=float), arr.ndim == 0)


@dataclass(frozen=True)
class PowerDecay(RadialProfile):
    """f(r) = C (1 + r^2)^(-delta/2)."""

    C: float
    delta: float

    def __post_init__(self):
        _require(_finite(self.C, self.delta), "PowerDecay parameters must be finite reals")
        _require(self.C > 0 and self.delta > 0, f"PowerDecay needs C > 0 and delta > 0, got {self.C}, {self.delta}")

    def _f(self, r):
        return self.C * (1.0 + r * r) ** (-self.delta / 2.0)

    def _fp(self, r):
        return -self.C * self.delta * r * (1.0 + r * r) ** (-self.delta / 2.0 - 1.0)

    def _fpp(self, r):
        s = 1.0 + r * r
        return self.C * self.delta * s ** (-self.delta / 2.0 - 2.0) * ((self.delta + 1.0) * r * r - 1.0)

    @property
    def nonincreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class SingularPower(RadialProfile):
    """f(r) = Theta r^(-nu), r > 0."""

    Theta: float
    nu: float

    includes_origin: ClassVar[bool] = False

    def __post_init__(self):
        _require(_finite(self.Theta, self.nu), "SingularPower parameters must be finite reals")
        _require(self.Theta > 0 and self.nu > 0, f"SingularPower needs Theta > 0, nu > 0, got {self.Theta}, {self.nu}")

    def _f(self, r):
        return self.Theta * r ** (-self.nu)

    def _fp(self, r):
        return -self.nu * self.Theta * r ** (-self.nu - 1.0)

    def _fpp(self, r):
        return self.nu * (self.nu + 1.0) * self.Theta * r ** (-self.nu - 2.0)

    @property
    def nonincreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class NegLog(RadialProfile):
    """f(r) = -log r, r > 0."""

    includes_origin: ClassVar[bool] = False

    def _f(self, r):
        return -np.log(r)

    def _fp(self, r):
        return -1.0 / r

    def _fpp(self, r):
        return 1.0 / (r * r)

    @property
    def nonincreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class Cubic(RadialProfile):
    """f(r) = m_r (1 - ((r - r0)+)^3 / (R - r0)^3); C^2 across r0."""

    m_r: float
    r0: float
    R: float

    def __post_init__(self):
        _require(_finite(self.m_r, self.r0, self.R), "Cubic parameters must be finite reals")
        _require(self.m_r > 0 and self.r0 > 0, f"Cubic needs m_r > 0 and r0 > 0, got {self.m_r}, {self.r0}")
        _require(self.R > self.r0, f"Cubic needs R > r0, got R={self.R}, r0={self.r0}")

    @property
    def _scale(self) -> float:
        return self.m_r / (self.R - self.r0) ** 3

    def _f(self, r):
        t = np.maximum(r - self.r0, 0.0)
        return self.m_r - self._scale * t**3

    def _fp(self, r):
        t = np.maximum(r - self.r0, 0.0)
        return -3.0 * self._scale * t**2

    def _fpp(self, r):
        t = np.maximum(r - self.r0, 0.0)
        return -6.0 * self._scale * t

    @property
    def nonincreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class CompApprox(RadialProfile):
    """f(r) = Theta (r^(-nu) - R^(-nu)) + m_R, r > 0; equals m_R at r = R."""

    Theta: float
    nu: float
    R: float
    m_R: float

    includes_origin: ClassVar[bool] = False

    def __post_init__(self):
        _require(_finite(self.Theta, self.nu, self.R, self.m_R), "CompApprox parameters must be finite reals")
        _require(self.nu > 0 and self.R > 0, f"CompApprox needs nu > 0 and R > 0, got {self.nu}, {self.R}")

    def _f(self, r):
        return self.Theta * (r ** (-self.nu) - self.R ** (-self.nu)) + self.m_R

    def _fp(self, r):
        return -self.nu * self.Theta * r ** (-self.nu - 1.0)

    def _fpp(self, r):
        return self.nu * (self.nu + 1.0) * self.Theta * r ** (-self.nu - 2.0)

    @property
    def nonincreasing(self) -> bool:
        return self.Theta >= 0


@dataclass(frozen=True)
class Constant(RadialProfile):
    """f(r) = c."""

    c: float

    def __post_init__(self):
        _require(_finite(self.c), "Constant value must be a finite real")

    def _f(self, r):
        return np.full_like(r, self.c)

    def _fp(self, r):
        return np.zeros_like(r)

    def _fpp(self, r):
        return np.zeros_like(r)

    @property
    def nonincreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class Quadratic(RadialProfile):
    """f(r) = a r^2."""

    a: float

    def __post_init__(self):
        _require(_finite(self.a), "Quadratic coefficient must be a finite real")

    def _f(self, r):
        return self.a * r * r

    def _fp(self, r):
        return 2.0 * self.a * r

    def _fpp(self, r):
        return np.full_like(r, 2.0 * self.a)

    @property
    def nonincreasing(self) -> bool:
        return self.a <= 0


@dataclass(frozen=True)
class Shifted(RadialProfile):
    """f(r) = base(r) + shift."""

    base: RadialProfile
    shift: float

    def __post_init__(self):
        _require(isinstance(self.base, RadialProfile), "Shifted needs a RadialProfile base")
        _require(_finite(self.shift), "shift must be a finite real")

    @property
    def includes_origin(self) -> bool:  # type: ignore[override]
        return self.base.includes_origin

    def _f(self, r):
        return self.base._f(r) + self.shift

    def _fp(self, r):
        return self.base._fp(r)

    def _fpp(self, r):
        return self.base._fpp(r)

    @property
    def nonincreasing(self) -> bool:
        return self.base.nonincreasing


@dataclass(frozen=True)
class Scaled(RadialProfile):
    """f(r) = factor * base(r)."""

    base: RadialProfile
    factor: float

    def __post_init__(self):
        _require(isinstance(self.base, RadialProfile), "Scaled needs a RadialProfile base")
        _require(_finite(self.factor), "factor must be a finite real")

    @property
    def includes_origin(self) -> bool:  # type: ignore[override]
        return self.base.includes_origin

    def _f(self, r):
        return self.factor * self.base._f(r)

    def _fp(self, r):
        return self.factor * self.base._fp(r)

    def _fpp(self, r):
        return self.factor * self.base._fpp(r)

    @property
    def nonincreasing(self) -> bool:
        # a negative factor turns a nonincreasing base into a nondecreasing one
        return self.factor == 0 or (self.factor > 0 and self.base.nonincreasing)


# ---------------------------------------------------------------------------
# Drifts
# ---------------------------------------------------------------------------


class DriftSpec(_Tagged, ABC):
    """Velocity field b(x) entering the inequality as M(D^2 u) - b(x).Du."""

    @property
    @abstractmethod
    def limsup(self) -> float:
        """limsup of b(x).x as |x| -> infinity."""

    def radial_component(self, r: ArrayLike) -> np.ndarray:
        """b(x).x/|x| for |x| = r (pointwise drifts only)."""
        raise DomainError(f"{type(self).__name__} drift cannot be evaluated pointwise")

    def dot_x(self, r: ArrayLike) -> np.ndarray:
        """b(x).x for |x| = r (pointwise drifts only)."""
        return self.radial_component(r) * np.asarray(r, dtype=float)

    @property
    def pointwise(self) -> bool:
        return True


@dataclass(frozen=True)
class Zero(DriftSpec):
    """b = 0."""

    @property
    def limsup(self) -> float:
        return 0.0

    def radial_component(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))


@dataclass(frozen=True)
class ScaledRadial(DriftSpec):
    """b(x) = c x / (1 + |x|^2), so b(x).x = c r^2 / (1 + r^2) -> c."""

    c: float

    def __post_init__(self):
        _require(_finite(self.c), "ScaledRadial constant must be a finite real")

    @property
    def limsup(self) -> float:
        return float(self.c)

    def radial_component(self, r):
        r = np.asarray(r, dtype=float)
        return self.c * r / (1.0 + r * r)


@dataclass(frozen=True)
class Asymptotic(DriftSpec):
    """Only limsup b(x).x is known."""

    limsup_bx: float

    def __post_init__(self):
        _require(_finite(self.limsup_bx), "Asymptotic drift needs a finite limsup of b(x).x")

    @property
    def limsup(self) -> float:
        return float(self.limsup_bx)

    @property
    def pointwise(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# Hamiltonians
# ---------------------------------------------------------------------------


def _u_power(u: np.ndarray, q: float) -> np.ndarray:
    if float(q).is_integer():
        return np.power(u, q)
    if np.any(u < 0):
        raise DomainError(f"u^q with fractional q={q} needs u >= 0 on the grid")
    return np.power(u, q)


def _reaction_weight(r: np.ndarray, sigma: float) -> np.ndarray | float:
    """<x>^sigma = (1 + |x|^2)^(sigma/2); grows like |x|^sigma and stays finite at 0."""
    if sigma == 0:
        return 1.0
    return (1.0 + r * r) ** (sigma / 2)


def _check_sigma(name: str, sigma: float):
    _require(_finite(sigma) and sigma > -2, f"{name} needs a finite reaction weight exponent sigma > -2, got {sigma}")


class HamiltonianSpec(_Tagged, ABC):
    """Right-hand side H of M(D^2 u) - b.Du >= H, evaluated on radial data."""

    @abstractmethod
    def evaluate(self, u: np.ndarray, fp: np.ndarray, r: np.ndarray) -> np.ndarray:
        """H at radius r given u = f(r) and fp = f'(r)."""


@dataclass(frozen=True)
class ZeroOrder(HamiltonianSpec):
    """H = <x>^sigma u^q; sigma = 0 is the unweighted reaction."""

    q: float
    sigma: float = 0.0

    def __post_init__(self):
        _require(_finite(self.q) and self.q >= 0, f"ZeroOrder needs finite q >= 0, got {self.q}")
        _check_sigma("ZeroOrder", self.sigma)

    def evaluate(self, u, fp, r):
        return _reaction_weight(r, self.sigma) * _u_power(u, self.q)


@dataclass(frozen=True)
class H1(HamiltonianSpec):
    """H = <x>^sigma u^q + |Du|^gamma with <x> = (1 + |x|^2)^(1/2)."""

    q: float
    gamma: float
    sigma: float = 0.0

    def __post_init__(self):
        _require(_finite(self.q, self.gamma), "H1 exponents must be finite reals")
        _require(self.q >= 0 and self.gamma > 0, f"H1 needs q >= 0 and gamma > 0, got {self.q}, {self.gamma}")
        _check_sigma("H1", self.sigma)

    def evaluate(self, u, fp, r):
        return _reaction_weight(r, self.sigma) * _u_power(u, self.q) + np.abs(fp) ** self.gamma


@dataclass(frozen=True)
class H2(HamiltonianSpec):
    """H = u^q |Du|^gamma."""

    q: float
    gamma: float

    def __post_init__(self):
        _require(_finite(self.q, self.gamma), "H2 exponents must be finite reals")
        _require(self.q >= 0 and self.gamma > 0, f"H2 needs q >= 0 and gamma > 0, got {self.q}, {self.gamma}")

    def evaluate(self, u, fp, r):
        return _u_power(u, self.q) * np.abs(fp) ** self.gamma


@dataclass(frozen=True)
class H3(HamiltonianSpec):
    """Drift inequality M(D^2 u) - b(x).Du >= A |Du|^gamma."""

    gamma: float
    A: float
    drift: DriftSpec

    def __post_init__(self):
        _require(_finite(self.gamma, self.A), "H3 gamma and A must be finite reals")
        _require(self.gamma > 0, f"H3 needs gamma > 0, got {self.gamma}")
        _require(isinstance(self.drift, DriftSpec), "H3 needs a DriftSpec")

    def evaluate(self, u, fp, r):
        # b(x).Du = (b(x).x/|x|) f'(r); moved to the right-hand side
        return self.A * np.abs(fp) ** self.gamma + self.drift.radial_component(r) * fp


# ---------------------------------------------------------------------------
# Residual grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """Pointwise residual (left minus right side) of an inequality on a grid.

    Attributes:
        radii: Grid radii
        residuals: Residual per radius
    """

    radii: np.ndarray
    residuals: np.ndarray

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        residuals = np.asarray(self.residuals, dtype=float)
        if radii.shape != residuals.shape or radii.ndim != 1 or radii.size == 0:
            raise InvalidInputError("ResidualReport needs matching, nonempty 1-D radii and residuals")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "residuals", residuals)

    @property
    def min(self) -> float:
        return float(np.min(self.residuals))

    @property
    def argmin(self) -> float:
        """Radius where the residual is smallest (first NaN wins)."""
        idx = int(np.argmin(self.residuals))
        return float(self.radii[idx])

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.residuals)))

    def passed(self, tolerance: float) -> bool:
        """min >= -tolerance (False when any residual is NaN)."""
        return bool(self.min >= -tolerance)

    def to_dict(self, include_values: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "grid_points": int(self.radii.size),
            "residual_min": self.min,
            "residual_argmin": self.argmin,
            "residual_max_abs": self.max_abs,
        }
        if include_values:
            data["radii"] = self.radii.tolist()
            data["residuals"] = self.residuals.tolist()
        return data


def default_grid(config: ToolkitConfig | None = None, *, origin: bool | None = None) -> np.ndarray:
    """Log-spaced verification grid, with r = 0 prepended when requested.

    Args:
        config: Grid bounds and size (defaults to DEFAULT_CONFIG)
        origin: Prepend r = 0 (defaults to config.include_origin)
    """
    config = config or DEFAULT_CONFIG
    grid = np.geomspace(config.grid_min, config.grid_max, config.grid_points)
    if config.include_origin if origin is None else origin:
        grid = np.concatenate(([0.0], grid))
    return grid


def grid_for(profile: RadialProfile, config: ToolkitConfig | None = None) -> np.ndarray:
    """Default grid restricted to the natural domain of profile."""
    config = config or DEFAULT_CONFIG
    return default_grid(config, origin=config.include_origin and profile.includes_origin)


def residual_grid(
    profile: RadialProfile,
    ham: HamiltonianSpec,
    ell: Ellipticity,
    N: int,
    sign: Sign,
    grid: ArrayLike,
) -> ResidualReport:
    """Residual M_sign(D^2 u) - b.Du - H(u, Du) of a radial profile on a grid.

    Args:
        profile: The candidate u(x) = f(|x|)
        ham: Right-hand side (H3 carries the drift)
        ell: Ellipticity constants
        N: Space dimension
        sign: "plus" for M+, "minus" for M-
        grid: Radii inside the profile's domain

    Returns:
        ResidualReport with per-radius residuals

    Raises:
        DomainError: If a radius lies outside the domain, u < 0 meets a fractional
            power, or the drift is only known asymptotically
    """
    r = np.asarray(grid, dtype=float).ravel()
    u = profile.eval(r)
    fp = profile.deriv1(r)
    fpp = profile.deriv2(r)
    operator = pucci_radial_values(fp, fpp, r, N, ell, sign)
    return ResidualReport(r, operator - ham.evaluate(u, fp, r))
