"""Pucci Liouville - verification and exploration of Liouville properties for Pucci operators."""

from importlib.metadata import version

from .classifier import OperatorKind, Outcome, ProblemInstance, ResultRef, Verdict, classify
from .config import DEFAULT_CONFIG, ToolkitConfig
from .counterexamples import Infeasible, WitnessReport, drift_witness, h1_witness, h2_witness, zero_order_witness
from .errors import DomainError, InvalidInputError, WitnessVerificationError
from .profiles import H1, H2, H3, PowerDecay, ResidualReport, ZeroOrder, residual_grid
from .pucci import Ellipticity, pucci, pucci_minus, pucci_plus, pucci_radial

# Heavier helpers stay in their modules:
# - from pucci_liouville.transforms import hopf_cole, mixquad_transform, ...
# - from pucci_liouville.annulus import hadamard_check, psi_comparison, ...
# - from pucci_liouville.audit import Auditor, default_suite

__version__ = version("pucci-liouville")
__all__ = [
    "DEFAULT_CONFIG",
    "H1",
    "H2",
    "H3",
    "DomainError",
    "Ellipticity",
    "Infeasible",
    "InvalidInputError",
    "OperatorKind",
    "Outcome",
    "PowerDecay",
    "ProblemInstance",
    "ResidualReport",
    "ResultRef",
    "ToolkitConfig",
    "Verdict",
    "WitnessReport",
    "WitnessVerificationError",
    "ZeroOrder",
    "classify",
    "drift_witness",
    "h1_witness",
    "h2_witness",
    "pucci",
    "pucci_minus",
    "pucci_plus",
    "pucci_radial",
    "residual_grid",
    "zero_order_witness",
]
