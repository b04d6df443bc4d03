"""JSON schema for profiles, Hamiltonians, drifts and verification problem files.

Objects are encoded as tagged unions: ``{"variant": "PowerDecay", "C": 1.0, "delta": 2.0}``.
"""

import json
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from . import profiles as pr
from .errors import InvalidInputError
from .pucci import Ellipticity


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# Profiles


class PowerDecayModel(_Model):
    variant: Literal["PowerDecay"]
    C: float = Field(gt=0)
    delta: float = Field(gt=0)

    def build(self) -> pr.RadialProfile:
        return pr.PowerDecay(self.C, self.delta)


class SingularPowerModel(_Model):
    variant: Literal["SingularPower"]
    Theta: float = Field(gt=0)
    nu: float = Field(gt=0)

    def build(self) -> pr.RadialProfile:
        return pr.SingularPower(self.Theta, self.nu)


class NegLogModel(_Model):
    variant: Literal["NegLog"]

    def build(self) -> pr.RadialProfile:
        return pr.NegLog()


class CubicModel(_Model):
    variant: Literal["Cubic"]
    m_r: float = Field(gt=0)
    r0: float = Field(gt=0)
    R: float

    def build(self) -> pr.RadialProfile:
        return pr.Cubic(self.m_r, self.r0, self.R)


class CompApproxModel(_Model):
    variant: Literal["CompApprox"]
    Theta: float
    nu: float = Field(gt=0)
    R: float = Field(gt=0)
    m_R: float

    def build(self) -> pr.RadialProfile:
        return pr.CompApprox(self.Theta, self.nu, self.R, self.m_R)


class ConstantModel(_Model):
    variant: Literal["Constant"]
    c: float

    def build(self) -> pr.RadialProfile:
        return pr.Constant(self.c)


class QuadraticModel(_Model):
    variant: Literal["Quadratic"]
    a: float

    def build(self) -> pr.RadialProfile:
        return pr.Quadratic(self.a)


class ShiftedModel(_Model):
    variant: Literal["Shifted"]
    base: "ProfileModel"
    shift: float

    def build(self) -> pr.RadialProfile:
        return pr.Shifted(self.base.build(), self.shift)


class ScaledModel(_Model):
    variant: Literal["Scaled"]
    base: "ProfileModel"
    factor: float

    def build(self) -> pr.RadialProfile:
        return pr.Scaled(self.base.build(), self.factor)


ProfileModel = Annotated[
    PowerDecayModel
    | SingularPowerModel
    | NegLogModel
    | CubicModel
    | CompApproxModel
    | ConstantModel
    | QuadraticModel
    | ShiftedModel
    | ScaledModel,
    Field(discriminator="variant"),
]

ShiftedModel.model_rebuild()
ScaledModel.model_rebuild()


# Drifts


class ZeroDriftModel(_Model):
    variant: Literal["Zero"]

    def build(self) -> pr.DriftSpec:
        return pr.Zero()


class ScaledRadialModel(_Model):
    variant: Literal["ScaledRadial"]
    c: float

    def build(self) -> pr.DriftSpec:
        return pr.ScaledRadial(self.c)


class AsymptoticModel(_Model):
    variant: Literal["Asymptotic"]
    limsup_bx: float

    def build(self) -> pr.DriftSpec:
        return pr.Asymptotic(self.limsup_bx)


DriftModel = Annotated[ZeroDriftModel | ScaledRadialModel | AsymptoticModel, Field(discriminator="variant")]


# Hamiltonians


class ZeroOrderModel(_Model):
    variant: Literal["ZeroOrder"]
    q: float = Field(ge=0)
    sigma: float = Field(default=0.0, gt=-2)

    def build(self) -> pr.HamiltonianSpec:
        return pr.ZeroOrder(self.q, self.sigma)


class H1Model(_Model):
    variant: Literal["H1"]
    q: float = Field(ge=0)
    gamma: float = Field(gt=0)
    sigma: float = Field(default=0.0, gt=-2)

    def build(self) -> pr.HamiltonianSpec:
        return pr.H1(self.q, self.gamma, self.sigma)


class H2Model(_Model):
    variant: Literal["H2"]
    q: float = Field(ge=0)
    gamma: float = Field(gt=0)

    def build(self) -> pr.HamiltonianSpec:
        return pr.H2(self.q, self.gamma)


class H3Model(_Model):
    variant: Literal["H3"]
    gamma: float = Field(gt=0)
    A: float
    drift: DriftModel

    def build(self) -> pr.HamiltonianSpec:
        return pr.H3(self.gamma, self.A, self.drift.build())


HamiltonianModel = Annotated[ZeroOrderModel | H1Model | H2Model | H3Model, Field(discriminator="variant")]


# Problem files


class EllipticityModel(_Model):
    lambda_: float = Field(gt=0, alias="lambda")
    Lambda_: float = Field(gt=0, alias="Lambda")

    def build(self) -> Ellipticity:
        return Ellipticity(self.lambda_, self.Lambda_)


class ProblemFile(_Model):
    """Input of the ``verify`` command.

    Example::

        {
          "profile": {"variant": "PowerDecay", "C": 1.0, "delta": 0.5},
          "hamiltonian": {"variant": "H1", "q": 3.0, "gamma": 1.5},
          "ellipticity": {"lambda": 1.0, "Lambda": 1.0},
          "N": 5,
          "sign": "plus",
          "grid": [0.5, 1.0, 2.0]
        }

    ``grid`` is optional; the default verification grid is used when absent.
    """

    profile: ProfileModel
    hamiltonian: HamiltonianModel
    ellipticity: EllipticityModel
    N: int = Field(ge=1)
    sign: Literal["plus", "minus"] = "plus"
    grid: list[float] | None = Field(default=None, min_length=1)


class _Envelope(_Model):
    profile: ProfileModel


class _DriftEnvelope(_Model):
    drift: DriftModel


class _HamEnvelope(_Model):
    hamiltonian: HamiltonianModel


def profile_from_dict(data: dict[str, Any]) -> pr.RadialProfile:
    """Decode a tagged-union profile (raises pydantic.ValidationError)."""
    return _Envelope.model_validate({"profile": data}).profile.build()


def drift_from_dict(data: dict[str, Any]) -> pr.DriftSpec:
    return _DriftEnvelope.model_validate({"drift": data}).drift.build()


def hamiltonian_from_dict(data: dict[str, Any]) -> pr.HamiltonianSpec:
    return _HamEnvelope.model_validate({"hamiltonian": data}).hamiltonian.build()


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]


def load_problem(path: str | Path) -> ProblemFile:
    """Read and validate a problem file.

    Raises:
        OSError: If the file cannot be read
        InvalidInputError: If the file is not JSON or does not match the schema
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return ProblemFile.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e
    except ValidationError as e:
        raise InvalidInputError(f"{path}: {e.error_count()} schema error(s); first: {_first_error(e)}") from e


def parse_profile_argument(value: str) -> pr.RadialProfile:
    """Decode a profile given inline as JSON or as a path to a JSON file."""
    text = value.strip()
    if not text.startswith("{"):
        text = Path(value).read_text(encoding="utf-8")
    return profile_from_dict(json.loads(text))
