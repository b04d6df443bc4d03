"""Built-in audit suite.

Each check runs a randomized or lattice version of one toolkit invariant at
desk-scale sizes and reports the violations it finds.
"""

import numpy as np

from ..annulus import cubic_bound_check, psi_comparison
from ..classifier import OperatorKind, Outcome, ProblemInstance, classify
from ..config import ToolkitConfig
from ..counterexamples import WitnessReport, drift_witness, h2_failure_margin, h2_witness
from ..profiles import H1, H2, H3, Asymptotic, Cubic, PowerDecay, ScaledRadial, Zero, grid_for
from ..pucci import (
    Ellipticity,
    SymMatrix,
    hessian_at_point,
    normalized_p_laplacian,
    pucci,
    pucci_minus,
    pucci_plus,
    pucci_radial,
    pucci_radial_values,
    radial_eigs,
)
from ..transforms import hopf_cole_chain_check, lcp_inequality_check
from .audit_case import AuditCase

MAX_REPORTED_ISSUES = 10


def _done(issues: list[str]) -> tuple[bool, list[str]]:
    extra = len(issues) - MAX_REPORTED_ISSUES
    shown = issues[:MAX_REPORTED_ISSUES] + ([f"... and {extra} more"] if extra > 0 else [])
    return not issues, shown


def _random_ellipticity(rng: np.random.Generator) -> Ellipticity:
    lam = float(rng.uniform(0.2, 2.0))
    return Ellipticity(lam, lam * float(rng.uniform(1.0, 4.0)))


def _random_symmetric(rng: np.random.Generator, N: int) -> SymMatrix:
    return SymMatrix(rng.normal(size=(N, N)))


def check_radial_oracle(rng: np.random.Generator, config: ToolkitConfig, draws: int = 200):
    """Radial Pucci formula against eigenvalues of the full Hessian."""
    issues = []
    for _ in range(draws):
        N = int(rng.integers(2, 7))
        ell = _random_ellipticity(rng)
        profile = PowerDecay(float(rng.uniform(0.1, 10.0)), float(rng.uniform(0.1, 5.0)))
        x = rng.normal(size=N)
        x *= rng.uniform(0.01, 10.0) / np.linalg.norm(x)
        r = float(np.linalg.norm(x))
        fp, fpp = profile.deriv1(r), profile.deriv2(r)
        for sign in ("plus", "minus"):
            matrix_path = pucci(hessian_at_point(x, fp, fpp), ell, sign)
            radial_path = pucci_radial(radial_eigs(fp, fpp, r, N), ell, sign)
            if abs(matrix_path - radial_path) > 1e-10:
                issues.append(f"{profile!r}, N={N}, r={r:.4g}, {sign}: {matrix_path!r} vs {radial_path!r}")
    return _done(issues)


def check_power_decay_bound(rng: np.random.Generator, config: ToolkitConfig, draws: int = 50):
    """M+(D^2 u) >= C delta lambda (beta-delta-2) (1+r^2)^(-delta/2-1) for 0 < delta < beta-2."""
    issues = []
    for _ in range(draws):
        N = int(rng.integers(3, 7))
        ell = _random_ellipticity(rng)
        beta = ell.beta(N)
        delta = float(rng.uniform(0.05, 0.95)) * (beta - 2)
        C = float(rng.uniform(0.1, 10.0))
        profile = PowerDecay(C, delta)
        r = grid_for(profile, config)
        value = pucci_radial_values(profile.deriv1(r), profile.deriv2(r), r, N, ell, "plus")
        bound = C * delta * ell.lambda_ * (beta - delta - 2) * (1 + r * r) ** (-delta / 2 - 1)
        margin = float(np.min(value - bound))
        if margin < -config.witness_tolerance:
            issues.append(f"{profile!r}, {ell}, N={N}: margin {margin:.3e}")
    return _done(issues)


def check_operator_identities(rng: np.random.Generator, config: ToolkitConfig, draws: int = 200):
    """Subadditivity, ordering, duality and the p-Laplacian sandwich on random matrices."""
    tol = config.chain_tolerance
    issues = []
    for _ in range(draws):
        N = int(rng.integers(2, 7))
        ell = _random_ellipticity(rng)
        X, Y = _random_symmetric(rng, N), _random_symmetric(rng, N)
        if pucci_plus(X + Y, ell) > pucci_plus(X, ell) + pucci_plus(Y, ell) + tol:
            issues.append(f"M+ not subadditive for N={N}, {ell}")
        if pucci_minus(X + Y, ell) < pucci_minus(X, ell) + pucci_minus(Y, ell) - tol:
            issues.append(f"M- not superadditive for N={N}, {ell}")
        if pucci_minus(X, ell) > pucci_plus(X, ell) + tol:
            issues.append(f"M- > M+ for N={N}, {ell}")
        if abs(pucci_minus(X, ell) + pucci_plus(-X, ell)) > tol:
            issues.append(f"M-(X) != -M+(-X) for N={N}, {ell}")

        p = float(rng.uniform(1.1, 5.0))
        plap_ell = Ellipticity.for_p_laplacian(p)
        value = normalized_p_laplacian(X, rng.normal(size=N), p)
        if not pucci_minus(X, plap_ell) - tol <= value <= pucci_plus(X, plap_ell) + tol:
            issues.append(f"p={p:.4g}-Laplacian outside the Pucci sandwich for N={N}")
    return _done(issues)


def _fails_lattice(instances: list[ProblemInstance], config: ToolkitConfig) -> list[str]:
    issues = []
    for inst in instances:
        verdict = classify(inst)
        if verdict.outcome is not Outcome.FAILS or verdict.witness is None:
            issues.append(f"{inst.ham!r}, N={inst.N}, {inst.ell}: expected fails, got {verdict.outcome.value}")
        elif not verdict.witness.residual.passed(config.witness_tolerance):
            issues.append(f"{inst.ham!r}, N={inst.N}: witness residual {verdict.witness.residual.min:.3e}")
    return issues


def check_witness_soundness(rng: np.random.Generator, config: ToolkitConfig, size: int = 6):
    """Every fails verdict in the H1 and H2 failure regions ships a passing witness."""
    instances = []
    for lam, Lam, N in ((1.0, 1.0, 5), (1.0, 2.0, 3), (1.0, 1.0, 4)):
        ell = Ellipticity(lam, Lam)
        beta = ell.beta(N)
        q_low, g_low = beta / (beta - 2), beta / (beta - 1)
        for q in np.linspace(q_low + 0.1, q_low + 4.0, size):
            for gamma in np.linspace(g_low + 0.05, 3.0, size):
                instances.append(ProblemInstance(N, OperatorKind.PUCCI_PLUS, H1(float(q), float(gamma)), ell))
        for q in np.linspace(0.0, 3.0, size):
            for gamma in np.linspace(1.05, 3.0, size):
                if h2_failure_margin(float(q), float(gamma), beta) > 1e-9:
                    instances.append(ProblemInstance(N, OperatorKind.PUCCI_PLUS, H2(float(q), float(gamma)), ell))
    return _done(_fails_lattice(instances, config))


def check_h2_feasibility_region(rng: np.random.Generator, config: ToolkitConfig, size: int = 15):
    """h2_witness is feasible exactly when (beta-2) q + (beta-1) gamma > beta."""
    ell = Ellipticity(1.0, 1.0)
    N = 4
    beta = ell.beta(N)
    issues = []
    for q in np.linspace(0.0, 3.0, size):
        for gamma in np.linspace(1.05, 3.0, size):
            feasible = isinstance(h2_witness(float(q), float(gamma), ell, N, config=config), WitnessReport)
            if feasible != (h2_failure_margin(float(q), float(gamma), beta) > 0):
                issues.append(f"q={q:.4g}, gamma={gamma:.4g}: feasible={feasible}")
    return _done(issues)


def check_linear_limit(rng: np.random.Generator, config: ToolkitConfig, size: int = 12):
    """With lambda = Lambda the H2 failure boundary is (N-2) q + (N-1) gamma = N."""
    ell = Ellipticity(1.0, 1.0)
    issues = []
    for N in (3, 4, 5):
        for q in np.linspace(0.0, 3.0, size):
            for gamma in np.linspace(1.05, 3.0, size):
                verdict = classify(ProblemInstance(N, OperatorKind.PUCCI_PLUS, H2(float(q), float(gamma)), ell))
                expected = (N - 2) * q + (N - 1) * gamma > N
                if (verdict.outcome is Outcome.FAILS) != expected:
                    issues.append(f"N={N}, q={q:.4g}, gamma={gamma:.4g}: {verdict.outcome.value}")
    return _done(issues)


def check_hopf_cole_chain(rng: np.random.Generator, config: ToolkitConfig, draws: int = 40):
    """The Hopf-Cole chain residual is nonnegative, and zero when lambda = Lambda."""
    tol = config.chain_tolerance
    issues = []
    for i in range(draws):
        N = int(rng.integers(2, 7))
        ell = _random_ellipticity(rng) if i % 4 else Ellipticity(1.0, 1.0)
        profile = PowerDecay(float(rng.uniform(0.1, 3.0)), float(rng.uniform(0.1, 3.0)))
        drift = ScaledRadial(float(rng.uniform(-3.0, 3.0))) if i % 2 else Zero()
        sign = "plus" if rng.random() < 0.5 else "minus"
        report = hopf_cole_chain_check(profile, drift, ell, N, grid_for(profile, config), sign)
        if not report.passed(tol):
            issues.append(f"{profile!r}, {drift!r}, N={N}, {sign}: residual min {report.min:.3e}")
        if ell.lambda_ == ell.Lambda_ and report.max_abs > tol:
            issues.append(f"{profile!r}, {drift!r}, N={N}: equality case off by {report.max_abs:.3e}")
    return _done(issues)


def check_drift_sharpness(rng: np.random.Generator, config: ToolkitConfig):
    """The drift threshold lambda (2 - beta) is attained from both sides."""
    ell, N = Ellipticity(1.0, 1.0), 3
    issues = []
    witness = drift_witness(ell, N, 0.5, config=config)
    if not witness.residual.passed(config.witness_tolerance):
        issues.append(f"drift witness residual {witness.residual.min:.3e}")
    threshold = ell.lambda_ * (2 - ell.beta(N))
    if witness.drift is None or not witness.drift.limsup > threshold:
        issues.append("drift witness limsup does not exceed the threshold")
    at_threshold = ProblemInstance(N, OperatorKind.PUCCI_PLUS, H3(2.0, -1.0, Asymptotic(threshold)), ell)
    if classify(at_threshold).outcome is not Outcome.HOLDS:
        issues.append("limsup b.x at the threshold is not classified holds")
    return _done(issues)


def check_cubic_bound(rng: np.random.Generator, config: ToolkitConfig, draws: int = 50):
    """max of M+ on the cubic test function stays below 3 Lambda (N+1) m_r / (R - r0)^2."""
    issues = []
    for _ in range(draws):
        N = int(rng.integers(2, 7))
        ell = _random_ellipticity(rng)
        R = float(rng.uniform(1.0, 100.0))
        profile = Cubic(float(rng.uniform(0.1, 10.0)), R / 2, R)
        report = cubic_bound_check(profile, ell, N)
        if not report.holds:
            issues.append(f"{profile!r}, N={N}: {report.maximum:.6g} > {report.bound:.6g}")
    return _done(issues)


def check_lcp_inequality(rng: np.random.Generator, config: ToolkitConfig, draws: int = 20000):
    """(|v|^(q-1) v - |u|^(q-1) u)(v - u) >= 2^(1-q) |v - u|^(q+1) for q >= 1."""
    issues = []
    us, vs = rng.normal(scale=10.0, size=draws), rng.normal(scale=10.0, size=draws)
    qs = rng.uniform(1.0, 5.0, size=draws)
    for u, v, q in zip(us, vs, qs, strict=True):
        if not lcp_inequality_check(float(u), float(v), float(q)):
            issues.append(f"u={u!r}, v={v!r}, q={q!r}")
    if not lcp_inequality_check(-1.0, 1.0, 1.0):
        issues.append("equality case u=-1, v=1, q=1 rejected")
    return _done(issues)


def check_psi_comparison(rng: np.random.Generator, config: ToolkitConfig, draws: int = 100):
    """Whenever the crucial inequality holds the comparison function is a subsolution."""
    issues = []
    for _ in range(draws):
        N = int(rng.integers(3, 7))
        ell = _random_ellipticity(rng)
        beta = ell.beta(N)
        gamma = 1 + float(rng.uniform(0.05, 1.0)) * (beta / (beta - 1) - 1)
        nu = float(rng.uniform(0.05, 0.95)) * (beta - 2)
        R1 = float(rng.uniform(1.0, 10.0))
        R = R1 * 10 ** float(rng.uniform(1.0, 4.0))
        mR = float(rng.uniform(0.0, 1.0))
        m1 = mR + float(rng.uniform(0.0, 10.0))
        report = psi_comparison(R1, R, m1, mR, nu, gamma, ell, N)
        if not report.consistent:
            issues.append(f"N={N}, {ell}, nu={nu:.4g}, gamma={gamma:.4g}: residual min {report.residual.min:.3e}")
    return _done(issues)


def default_suite() -> list[AuditCase]:
    """The built-in audit cases, in report order."""
    return [
        AuditCase("radial-oracle", "Radial Pucci formula matches the Hessian eigenvalue path", check_radial_oracle, 1),
        AuditCase(
            "power-decay-bound",
            "Power-decay profiles satisfy the explicit lower bound for M+",
            check_power_decay_bound,
            2,
            notes="Profiles `C (1 + r^2)^(-delta/2)` with `0 < delta < beta - 2`.",
        ),
        AuditCase(
            "operator-identities",
            "Subadditivity, ordering, duality and the p-Laplacian sandwich",
            check_operator_identities,
            3,
        ),
        AuditCase("witness-soundness", "Fails verdicts ship verified witnesses", check_witness_soundness, 4),
        AuditCase(
            "h2-feasibility-region",
            "Product witnesses exist exactly above the H2 line",
            check_h2_feasibility_region,
            5,
            notes="The boundary `(beta-2) q + (beta-1) gamma = beta` itself is **infeasible**.",
        ),
        AuditCase("linear-limit", "H2 boundary matches the Laplacian line when lambda = Lambda", check_linear_limit, 6),
        AuditCase("hopf-cole-chain", "Hopf-Cole chain inequality and its equality case", check_hopf_cole_chain, 7),
        AuditCase("drift-sharpness", "The drift threshold is sharp from both sides", check_drift_sharpness, 8),
        AuditCase("cubic-bound", "Cubic test function bound", check_cubic_bound, 9),
        AuditCase("lcp-inequality", "Monotonicity inequality for |t|^(q-1) t", check_lcp_inequality, 10),
        AuditCase("psi-comparison", "Crucial inequality implies the annulus subsolution", check_psi_comparison, 11),
    ]
