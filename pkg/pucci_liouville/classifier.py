"""Classification of Liouville problems into holds / fails / conjectured / open.

A ProblemInstance fixes the dimension, the operator (M+, M-, a generic
uniformly elliptic F, or the normalized p-Laplacian) and the right-hand side.
Each rule below encodes one known result; a Fails verdict always carries a
numerically verified witness.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

from .counterexamples import (
    WitnessReport,
    drift_witness,
    h1_failure_region,
    h1_witness,
    h2_failure_margin,
    h2_witness,
    zero_order_failure_region,
    zero_order_threshold,
    zero_order_witness,
)
from .errors import InvalidInputError
from .profiles import H1, H2, H3, HamiltonianSpec, ScaledRadial, ZeroOrder
from .pucci import Ellipticity

logger = logging.getLogger(__name__)


class OperatorKind(StrEnum):
    PUCCI_PLUS = "plus"
    PUCCI_MINUS = "minus"
    GENERIC = "generic"
    P_LAPLACIAN = "plap"


class Outcome(StrEnum):
    HOLDS = "holds"
    FAILS = "fails"
    CONJECTURED = "conjectured"
    OPEN = "open"


class ResultRef(StrEnum):
    """Stable keys naming the result that decided a verdict."""

    LOW_DIMENSION = "low-dimension"  # effective dimension <= 2
    ZERO_ORDER_THRESHOLD = "zero-order-threshold"  # q <= (d+sigma)/(d-2)
    H1_GRADIENT_WINDOW = "h1-gradient-window"  # q > (d+sigma)/(d-2), 1 < gamma <= d/(d-1)
    H1_WITNESS = "h1-power-decay-witness"
    ZERO_ORDER_WITNESS = "zero-order-power-decay-witness"
    H2_WITNESS = "h2-product-witness"
    H2_CONJECTURE = "h2-product-conjecture"
    H2_LAPLACIAN_COMPARISON = "h2-laplacian-comparison"
    H2_MINIMAL_LOW_DIMENSION = "h2-minimal-low-dimension"  # N <= Lambda/lambda + 1
    DRIFT_MAXIMAL = "drift-maximal"  # limsup b.x <= lambda - Lambda (N-1)
    DRIFT_MINIMAL = "drift-minimal"  # limsup b.x <= Lambda - lambda (N-1)
    DRIFT_WITNESS = "drift-witness"
    DRIFT_NEGATIVE_COEFFICIENT = "drift-negative-coefficient"  # A < 0 with gamma != 2
    P_LAPLACIAN_GRADIENT = "p-laplacian-gradient-window"
    P_LAPLACIAN_DRIFT = "p-laplacian-drift"
    NONE = "none"


H2_REGION_NOTE = (
    "product counterexamples exist exactly when (beta-2) q + (beta-1) gamma > beta; "
    "the '<=' form of this condition found in some statements is a misprint"
)


@dataclass(frozen=True)
class ProblemInstance:
    """Input to classification.

    Attributes:
        N: Space dimension (>= 1)
        operator: Which operator the inequality is posed for
        ham: Right-hand side
        ell: Ellipticity constants (derived from p for the p-Laplacian)
        p: Exponent of the normalized p-Laplacian (> 1)
    """

    N: int
    operator: OperatorKind
    ham: HamiltonianSpec
    ell: Ellipticity | None = None
    p: float | None = None

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise InvalidInputError(f"N must be an integer >= 1, got {self.N!r}")
        object.__setattr__(self, "operator", OperatorKind(self.operator))
        if not isinstance(self.ham, HamiltonianSpec):
            raise InvalidInputError("ham must be a HamiltonianSpec")
        if self.operator is OperatorKind.P_LAPLACIAN:
            if self.p is None:
                raise InvalidInputError("the normalized p-Laplacian needs p")
            derived = Ellipticity.for_p_laplacian(self.p)
            if self.ell is not None and self.ell != derived:
                raise InvalidInputError(f"ellipticity of the {self.p}-Laplacian is fixed to {derived}, got {self.ell}")
            object.__setattr__(self, "ell", derived)
        elif self.ell is None:
            raise InvalidInputError(f"operator {self.operator.value} needs ellipticity constants")

    @property
    def ellipticity(self) -> Ellipticity:
        assert self.ell is not None
        return self.ell

    @property
    def beta(self) -> float:
        return self.ellipticity.beta(self.N)

    @property
    def alpha(self) -> float:
        return self.ellipticity.alpha(self.N)

    @property
    def effective_dimension(self) -> float:
        """alpha for M-, beta otherwise."""
        return self.alpha if self.operator is OperatorKind.PUCCI_MINUS else self.beta


@dataclass(frozen=True, eq=False)
class Verdict:
    """Classification outcome.

    Attributes:
        outcome: holds, fails, conjectured or open
        theorem_ref: Key of the deciding result
        witness: Verified counterexample (required for fails)
        notes: Free-form remarks
    """

    outcome: Outcome
    theorem_ref: ResultRef
    witness: WitnessReport | None = None
    notes: str = ""

    def __post_init__(self):
        if self.outcome is Outcome.FAILS and self.witness is None:
            raise InvalidInputError("a fails verdict needs a witness")

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "outcome": self.outcome.value,
            "theorem_ref": self.theorem_ref.value,
            "notes": self.notes,
        }
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


def _holds(ref: ResultRef, notes: str = "") -> Verdict:
    return Verdict(Outcome.HOLDS, ref, notes=notes)


def _open(notes: str, ref: ResultRef = ResultRef.NONE) -> Verdict:
    return Verdict(Outcome.OPEN, ref, notes=notes)


def _expect(inst: ProblemInstance, kind: type) -> Any:
    if not isinstance(inst.ham, kind):
        raise InvalidInputError(f"expected a {kind.__name__} right-hand side, got {type(inst.ham).__name__}")
    return inst.ham


def _zero_order_rules(inst: ProblemInstance, q: float, sigma: float) -> Verdict | None:
    """Rules shared by <x>^sigma u^q and <x>^sigma u^q + |Du|^gamma: low dimension and the q threshold."""
    d = inst.effective_dimension
    which = "alpha" if inst.operator is OperatorKind.PUCCI_MINUS else "beta"
    if d <= 2:
        return _holds(ResultRef.LOW_DIMENSION, f"{which} = {d:.6g} <= 2")
    threshold = zero_order_threshold(d, sigma)
    if q <= threshold:
        if sigma == 0:
            return _holds(ResultRef.ZERO_ORDER_THRESHOLD, f"q <= {which}/({which}-2) = {threshold:.6g}")
        notes = f"q <= ({which}+sigma)/({which}-2) = {threshold:.6g} with sigma = {sigma:.6g}"
        return _holds(ResultRef.ZERO_ORDER_THRESHOLD, notes)
    return None


def classify_zero_order(inst: ProblemInstance) -> Verdict:
    """Classify M(D^2 u) >= <x>^sigma u^q.

    Holds verdicts only use the behaviour of the reaction near u = 0, so they
    also cover f(u) in place of u^q whenever liminf_{s->0} f(s)/s^q > 0.
    """
    ham: ZeroOrder = _expect(inst, ZeroOrder)
    decided = _zero_order_rules(inst, ham.q, ham.sigma)
    if decided is not None:
        return decided
    if inst.operator is OperatorKind.PUCCI_PLUS and zero_order_failure_region(ham.q, inst.beta, ham.sigma):
        witness = zero_order_witness(ham.q, inst.ellipticity, inst.N, sigma=ham.sigma)
        if isinstance(witness, WitnessReport):
            return Verdict(Outcome.FAILS, ResultRef.ZERO_ORDER_WITNESS, witness)
    return _open("no counterexample is known for this operator")


def classify_h1(inst: ProblemInstance) -> Verdict:
    """Classify M(D^2 u) >= <x>^sigma u^q + |Du|^gamma (sigma = 0 is unweighted)."""
    ham: H1 = _expect(inst, H1)
    q, gamma, sigma = ham.q, ham.gamma, ham.sigma
    decided = _zero_order_rules(inst, q, sigma)
    if decided is not None:
        return decided

    d = inst.effective_dimension
    if 1 < gamma <= d / (d - 1):
        notes = "alpha in place of beta for the minimal operator" if inst.operator is OperatorKind.PUCCI_MINUS else ""
        return _holds(ResultRef.H1_GRADIENT_WINDOW, notes)

    if h1_failure_region(q, gamma, inst.beta, sigma):
        if inst.operator is OperatorKind.PUCCI_PLUS:
            witness = h1_witness(q, gamma, inst.ellipticity, inst.N, sigma=sigma)
            if isinstance(witness, WitnessReport):
                return Verdict(Outcome.FAILS, ResultRef.H1_WITNESS, witness)
            return _open(f"witness search failed: {witness.reason}")
        if inst.operator is OperatorKind.GENERIC:
            return _open("the M+ counterexample does not transfer to a generic operator")
    if inst.operator is OperatorKind.PUCCI_MINUS and gamma > d / (d - 1):
        return _open("no counterexample is known for the minimal operator")
    return _open("gamma <= 1 is not covered" if gamma <= 1 else "no result applies")


def classify_h2(inst: ProblemInstance) -> Verdict:
    """Classify M(D^2 u) >= u^q |Du|^gamma."""
    ham: H2 = _expect(inst, H2)
    q, gamma = ham.q, ham.gamma
    N = inst.N

    if inst.operator is OperatorKind.PUCCI_MINUS:
        if (N - 2) * q + (N - 1) * gamma <= N:
            return _holds(ResultRef.H2_LAPLACIAN_COMPARISON, "(N-2) q + (N-1) gamma <= N")
        if N <= inst.ellipticity.ratio + 1:
            return _holds(ResultRef.H2_MINIMAL_LOW_DIMENSION, "N <= Lambda/lambda + 1")
        if gamma > 1 and h2_failure_margin(q, gamma, inst.alpha) <= 0:
            return Verdict(Outcome.CONJECTURED, ResultRef.H2_CONJECTURE, notes="(alpha-2) q + (alpha-1) gamma <= alpha")
        return _open("no result applies to the minimal operator here")

    beta = inst.beta
    if beta <= 2:
        return _holds(ResultRef.LOW_DIMENSION, f"beta = {beta:.6g} <= 2")
    if gamma <= 1:
        return _open("gamma <= 1 is not covered")
    if h2_failure_margin(q, gamma, beta) > 0:
        if inst.operator is OperatorKind.PUCCI_PLUS:
            witness = h2_witness(q, gamma, inst.ellipticity, N)
            if isinstance(witness, WitnessReport):
                return Verdict(Outcome.FAILS, ResultRef.H2_WITNESS, witness, H2_REGION_NOTE)
            return _open(f"witness search failed: {witness.reason}")
        return _open("the M+ counterexample does not transfer to a generic operator")
    return Verdict(Outcome.CONJECTURED, ResultRef.H2_CONJECTURE, notes=H2_REGION_NOTE)


def _drift_gated(ham: H3) -> bool:
    # A = 0 is the pure drift inequality
    return (ham.A > 0 and ham.gamma > 0) or ham.gamma == 2 or ham.A == 0


def classify_h3(inst: ProblemInstance) -> Verdict:
    """Classify M(D^2 u) - b(x).Du >= A |Du|^gamma through limsup b(x).x."""
    ham: H3 = _expect(inst, H3)
    ell = inst.ellipticity
    N = inst.N
    limsup = ham.drift.limsup
    gated = _drift_gated(ham)

    if gated:
        if inst.operator in (OperatorKind.PUCCI_PLUS, OperatorKind.GENERIC):
            threshold = ell.lambda_ - ell.Lambda_ * (N - 1)
            if limsup <= threshold:
                return _holds(ResultRef.DRIFT_MAXIMAL, f"limsup b.x = {limsup:.6g} <= {threshold:.6g}")
        elif inst.operator is OperatorKind.PUCCI_MINUS:
            threshold = ell.Lambda_ - ell.lambda_ * (N - 1)
            if limsup <= threshold:
                return _holds(ResultRef.DRIFT_MINIMAL, f"limsup b.x = {limsup:.6g} <= {threshold:.6g}")

    beta = inst.beta
    if inst.operator is OperatorKind.PUCCI_PLUS and ham.A <= 0 and isinstance(ham.drift, ScaledRadial) and beta > 2:
        delta = ham.drift.c / ell.lambda_ - 2 + beta
        if 0 < delta < beta - 2:
            witness = drift_witness(ell, N, delta)
            return Verdict(
                Outcome.FAILS,
                ResultRef.DRIFT_WITNESS,
                witness,
                f"c = lambda (2 - beta + delta) with delta = {delta:.6g}",
            )

    if not gated:
        return _open("negative A with gamma != 2", ResultRef.DRIFT_NEGATIVE_COEFFICIENT)
    return _open("drift condition not met")


def p_laplacian_thresholds(p: float, N: int) -> tuple[float, float]:
    """(gamma_max, q_min) of the gradient window for the normalized p-Laplacian, N >= 2."""
    if p >= 2:
        k = (p - 1) * (N - 1)
        return (k + 1) / k, (k + 1) / (k - 1)
    return (N + p - 2) / (N - 1), (N + p - 2) / (N - p)


def p_laplacian_drift_threshold(p: float, N: int) -> float:
    """Strict upper bound for limsup b.x: 1 - N(p-1)/p for p > 2, 1 - N/p for 1 < p <= 2."""
    return 1 - N * (p - 1) / p if p > 2 else 1 - N / p


def classify_p_laplacian(inst: ProblemInstance) -> Verdict:
    """Classify inequalities for the normalized p-Laplacian via its derived ellipticity."""
    if inst.operator is not OperatorKind.P_LAPLACIAN or inst.p is None:
        raise InvalidInputError("classify_p_laplacian needs a normalized p-Laplacian instance")
    p, N, ham = inst.p, inst.N, inst.ham
    beta = inst.beta

    if isinstance(ham, H3):
        gated = _drift_gated(ham)
        threshold = p_laplacian_drift_threshold(p, N)
        if gated and ham.drift.limsup < threshold:
            return _holds(ResultRef.P_LAPLACIAN_DRIFT, f"limsup b.x < {threshold:.6g}")
        if not gated:
            return _open("negative A with gamma != 2", ResultRef.DRIFT_NEGATIVE_COEFFICIENT)
        return _open("drift condition not met")

    if beta <= 2:
        return _holds(ResultRef.LOW_DIMENSION, f"beta = {beta:.6g} <= 2")

    if isinstance(ham, H2):
        if ham.gamma <= 1:
            return _open("gamma <= 1 is not covered")
        if h2_failure_margin(ham.q, ham.gamma, beta) > 0:
            return _open("no counterexample is known for the p-Laplacian")
        return Verdict(Outcome.CONJECTURED, ResultRef.H2_CONJECTURE, notes=H2_REGION_NOTE)

    if not isinstance(ham, H1 | ZeroOrder):
        raise InvalidInputError(f"unsupported right-hand side {type(ham).__name__}")
    if ham.sigma != 0:
        return _open("weighted reactions are not covered for the p-Laplacian")
    gamma_max, q_min = p_laplacian_thresholds(p, N)
    if ham.q <= q_min:
        return _holds(ResultRef.ZERO_ORDER_THRESHOLD, f"q <= {q_min:.6g}")
    if isinstance(ham, H1) and 1 < ham.gamma <= gamma_max:
        return _holds(ResultRef.P_LAPLACIAN_GRADIENT, f"q > {q_min:.6g}, 1 < gamma <= {gamma_max:.6g}")
    return _open("no counterexample is known for the p-Laplacian")


def classify(inst: ProblemInstance) -> Verdict:
    """Dispatch to the classifier matching the operator and right-hand side."""
    if inst.operator is OperatorKind.P_LAPLACIAN:
        verdict = classify_p_laplacian(inst)
    elif isinstance(inst.ham, ZeroOrder):
        verdict = classify_zero_order(inst)
    elif isinstance(inst.ham, H1):
        verdict = classify_h1(inst)
    elif isinstance(inst.ham, H2):
        verdict = classify_h2(inst)
    elif isinstance(inst.ham, H3):
        verdict = classify_h3(inst)
    else:
        raise InvalidInputError(f"unsupported right-hand side {type(inst.ham).__name__}")
    logger.debug(f"[Classify] {inst!r} -> {verdict.outcome.value} ({verdict.theorem_ref.value})")
    return verdict


def verdict_is_finite(verdict: Verdict) -> bool:
    """True when every number in the witness is finite."""
    if verdict.witness is None:
        return True
    w = verdict.witness
    return all(math.isfinite(v) for v in (w.chosen_delta, w.chosen_amplitude, w.residual.min))
