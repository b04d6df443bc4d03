"""Pucci extremal operators on symmetric matrices and radial data.

For ellipticity constants 0 < lambda <= Lambda and a symmetric matrix M with
eigenvalues e_k:

    M+(M) = -lambda * sum(e_k > 0) - Lambda * sum(e_k < 0)
    M-(M) = -Lambda * sum(e_k > 0) - lambda * sum(e_k < 0)

A radial function u(x) = f(|x|) has Hessian eigenvalues f''(r) (simple) and
f'(r)/r (multiplicity N-1), so both operators reduce to a weighted sum of two
numbers on radial data.
"""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from .errors import DomainError, InvalidInputError

Sign = Literal["plus", "minus"]

# Eigenvalues below SIGN_TOLERANCE * (1 + ||M||) count as zero
SIGN_TOLERANCE = 1e-12


def _check_dimension(N: int) -> int:
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise InvalidInputError(f"dimension N must be an integer >= 1, got {N!r}")
    return int(N)


def _check_sign(sign: str) -> None:
    if sign not in ("plus", "minus"):
        raise InvalidInputError(f"sign must be 'plus' or 'minus', got {sign!r}")


@dataclass(frozen=True)
class Ellipticity:
    """Ellipticity constants of a uniformly elliptic operator.

    Attributes:
        lambda_: Lower ellipticity bound (> 0)
        Lambda_: Upper ellipticity bound (>= lambda_)
    """

    lambda_: float
    Lambda_: float

    def __post_init__(self):
        if not (math.isfinite(self.lambda_) and math.isfinite(self.Lambda_)):
            raise InvalidInputError(f"ellipticity constants must be finite, got ({self.lambda_}, {self.Lambda_})")
        if not 0 < self.lambda_ <= self.Lambda_:
            raise InvalidInputError(f"need 0 < lambda <= Lambda, got lambda={self.lambda_}, Lambda={self.Lambda_}")

    @classmethod
    def for_p_laplacian(cls, p: float) -> "Ellipticity":
        """Constants of the normalized p-Laplacian: min/max of {1/p, (p-1)/p}."""
        if not math.isfinite(p) or p <= 1:
            raise InvalidInputError(f"p must be a finite real > 1, got {p}")
        a, b = 1.0 / p, (p - 1.0) / p
        return cls(min(a, b), max(a, b))

    @property
    def ratio(self) -> float:
        return self.Lambda_ / self.lambda_

    def beta(self, N: int) -> float:
        """Effective dimension of M+: (Lambda/lambda)(N-1) + 1."""
        return self.ratio * (_check_dimension(N) - 1) + 1.0

    def alpha(self, N: int) -> float:
        """Effective dimension of M-: (lambda/Lambda)(N-1) + 1."""
        return (_check_dimension(N) - 1) / self.ratio + 1.0

    def dimension(self, N: int, sign: Sign) -> float:
        """beta for the maximal operator, alpha for the minimal one."""
        _check_sign(sign)
        return self.beta(N) if sign == "plus" else self.alpha(N)


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense real symmetric matrix, symmetrized on construction.

    Attributes:
        entries: Read-only N x N array with entries[i, j] == entries[j, i] exactly
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InvalidInputError(f"expected a nonempty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("matrix entries must be finite")
        # (a + b) / 2 is commutative in floating point, so the result is exactly symmetric
        arr = (arr + arr.T) / 2.0
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def of(cls, value: "SymMatrix | ArrayLike") -> "SymMatrix":
        return value if isinstance(value, SymMatrix) else cls(np.asarray(value, dtype=float))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues (LAPACK symmetric driver)."""
        return np.linalg.eigvalsh(self.entries)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix(self.entries + other.entries)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix(self.entries - other.entries)

    def __neg__(self) -> "SymMatrix":
        return SymMatrix(-self.entries)

    def __repr__(self) -> str:
        return f"SymMatrix({self.entries.tolist()!r})"


@dataclass(frozen=True)
class RadialEigs:
    """Hessian spectrum of a radial function at radius r.

    Attributes:
        e_radial: The simple eigenvalue f''(r)
        e_tangential: The eigenvalue f'(r)/r
        multiplicity: Multiplicity of e_tangential (N - 1)
    """

    e_radial: float
    e_tangential: float
    multiplicity: int

    @property
    def dimension(self) -> int:
        return self.multiplicity + 1


def _weighted_pucci(positive: ArrayLike, negative: ArrayLike, ell: Ellipticity, sign: Sign):
    if sign == "plus":
        return -ell.lambda_ * positive - ell.Lambda_ * negative
    return -ell.Lambda_ * positive - ell.lambda_ * negative


def pucci(M: SymMatrix | ArrayLike, ell: Ellipticity, sign: Sign) -> float:
    """Evaluate M+ or M- on a symmetric matrix.

    Args:
        M: Symmetric matrix (array-likes are symmetrized)
        ell: Ellipticity constants
        sign: "plus" for M+, "minus" for M-

    Returns:
        The operator value

    Raises:
        InvalidInputError: If M has non-finite entries or is not square
    """
    _check_sign(sign)
    eigs = SymMatrix.of(M).eigenvalues()
    tol = SIGN_TOLERANCE * (1.0 + float(np.max(np.abs(eigs))))
    positive = float(np.sum(eigs[eigs > tol]))
    negative = float(np.sum(eigs[eigs < -tol]))
    return float(_weighted_pucci(positive, negative, ell, sign))


def pucci_plus(M: SymMatrix | ArrayLike, ell: Ellipticity) -> float:
    """M+(M) = -lambda * (sum of positive eigenvalues) - Lambda * (sum of negative eigenvalues)."""
    return pucci(M, ell, "plus")


def pucci_minus(M: SymMatrix | ArrayLike, ell: Ellipticity) -> float:
    """M-(M) = -Lambda * (sum of positive eigenvalues) - lambda * (sum of negative eigenvalues)."""
    return pucci(M, ell, "minus")


def radial_eigs(fp: float, fpp: float, r: float, N: int) -> RadialEigs:
    """Hessian eigenvalues of u(x) = f(|x|) at |x| = r.

    Raises:
        DomainError: If r <= 0 (callers handle the origin by taking limits)
    """
    N = _check_dimension(N)
    if not r > 0:
        raise DomainError(f"radial_eigs needs r > 0, got {r}")
    return RadialEigs(e_radial=float(fpp), e_tangential=float(fp) / r, multiplicity=N - 1)


def pucci_radial(eigs: RadialEigs, ell: Ellipticity, sign: Sign) -> float:
    """Apply M+ or M- to the multiset {e_radial, e_tangential x (N-1)}."""
    _check_sign(sign)
    m = eigs.multiplicity
    positive = max(eigs.e_radial, 0.0) + m * max(eigs.e_tangential, 0.0)
    negative = min(eigs.e_radial, 0.0) + m * min(eigs.e_tangential, 0.0)
    return float(_weighted_pucci(positive, negative, ell, sign))


def pucci_radial_values(
    fp: ArrayLike, fpp: ArrayLike, r: ArrayLike, N: int, ell: Ellipticity, sign: Sign
) -> np.ndarray:
    """Vectorised pucci_radial over a grid of radii.

    At r = 0 the tangential eigenvalue is replaced by its limit f''(0), which is
    valid whenever f'(0) = 0.

    Args:
        fp: First radial derivatives
        fpp: Second radial derivatives
        r: Radii (>= 0)
        N: Space dimension
        ell: Ellipticity constants
        sign: "plus" or "minus"

    Returns:
        Array of operator values, one per radius
    """
    N = _check_dimension(N)
    _check_sign(sign)
    fp, fpp, r = np.broadcast_arrays(np.asarray(fp, float), np.asarray(fpp, float), np.asarray(r, float))
    if np.any(r < 0):
        raise DomainError("radii must be nonnegative")
    safe_r = np.where(r > 0, r, 1.0)
    e_t = np.where(r > 0, fp / safe_r, fpp)
    m = N - 1
    positive = np.maximum(fpp, 0.0) + m * np.maximum(e_t, 0.0)
    negative = np.minimum(fpp, 0.0) + m * np.minimum(e_t, 0.0)
    return _weighted_pucci(positive, negative, ell, sign)


def hessian_at_point(x: ArrayLike, fp: float, fpp: float) -> SymMatrix:
    """Full Hessian of a radial function at x: fpp * P + (fp/|x|) * (I - P), P = x^ x^T.

    Raises:
        DomainError: If x = 0
    """
    x = np.asarray(x, dtype=float).ravel()
    r = float(np.linalg.norm(x))
    if r == 0:
        raise DomainError("hessian_at_point needs x != 0")
    unit = x / r
    projector = np.outer(unit, unit)
    return SymMatrix(fpp * projector + (fp / r) * (np.eye(x.size) - projector))


def effective_dimension_psi(A: SymMatrix | ArrayLike, x: ArrayLike) -> float:
    """Effective dimension Tr(A) / (x^T A x / |x|^2) of the linear operator -Tr(A D^2).

    Raises:
        DomainError: If x = 0 or the quadratic form of A at x is not positive
    """
    A = SymMatrix.of(A)
    x = np.asarray(x, dtype=float).ravel()
    if x.size != A.dimension:
        raise InvalidInputError(f"point of size {x.size} does not match matrix dimension {A.dimension}")
    norm2 = float(x @ x)
    if norm2 == 0:
        raise DomainError("effective_dimension_psi needs x != 0")
    form = float(x @ A.entries @ x) / norm2
    if form <= 0:
        raise DomainError(f"quadratic form of A at x must be positive, got {form}")
    return float(np.trace(A.entries)) / form


def trace_operator(M: SymMatrix | ArrayLike, A: SymMatrix | ArrayLike) -> float:
    """Linear operator -Tr(A M)."""
    return -float(np.trace(SymMatrix.of(A).entries @ SymMatrix.of(M).entries))


def p_laplacian_matrix(grad: ArrayLike, p: float) -> SymMatrix:
    """Coefficient matrix (1/p)(I + (p-2) g g^T / |g|^2) of the normalized p-Laplacian."""
    if not math.isfinite(p) or p <= 1:
        raise InvalidInputError(f"p must be a finite real > 1, got {p}")
    g = np.asarray(grad, dtype=float).ravel()
    norm = float(np.linalg.norm(g))
    if norm == 0:
        raise DomainError("the normalized p-Laplacian is undefined where the gradient vanishes")
    unit = g / norm
    return SymMatrix((np.eye(g.size) + (p - 2.0) * np.outer(unit, unit)) / p)


def normalized_p_laplacian(M: SymMatrix | ArrayLike, grad: ArrayLike, p: float) -> float:
    """-Tr(A(Du) M), squeezed between M- and M+ with Ellipticity.for_p_laplacian(p)."""
    return trace_operator(M, p_laplacian_matrix(grad, p))
