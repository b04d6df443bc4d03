"""Tests for witness synthesis."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pucci_liouville.counterexamples import (
    Infeasible,
    WitnessReport,
    drift_witness,
    h1_failure_region,
    h1_witness,
    h2_failure_margin,
    h2_witness,
    singular_h2_witness,
    zero_order_failure_region,
    zero_order_threshold,
    zero_order_witness,
)
from pucci_liouville.errors import InvalidInputError, WitnessVerificationError
from pucci_liouville.profiles import (
    H1,
    H2,
    H3,
    PowerDecay,
    ResidualReport,
    ScaledRadial,
    SingularPower,
    ZeroOrder,
    residual_grid,
)
from pucci_liouville.pucci import Ellipticity


@pytest.mark.unit
class TestRegions:
    def test_h1_region(self):
        assert h1_failure_region(3.0, 1.5, 5.0)
        assert not h1_failure_region(1.5, 1.5, 5.0)
        assert not h1_failure_region(3.0, 1.2, 5.0)
        assert not h1_failure_region(100.0, 100.0, 2.0)

    def test_zero_order_region(self):
        assert zero_order_failure_region(2.0, 5.0)
        assert not zero_order_failure_region(5 / 3, 5.0)

    def test_h2_margin(self):
        assert h2_failure_margin(0.0, 1.5, 4.0) == pytest.approx(0.5)
        assert h2_failure_margin(0.0, 1.2, 4.0) < 0


@pytest.mark.unit
class TestH1Witness:
    def test_reference_case(self, laplace):
        result = h1_witness(3.0, 1.5, laplace, 5)

        assert isinstance(result, WitnessReport)
        assert result.feasible is True
        assert result.feasibility_interval == (1.0, 3.0)
        assert result.chosen_delta == 2.0
        assert result.profile == PowerDecay(result.chosen_amplitude, 2.0)
        assert result.hamiltonian == H1(3.0, 1.5)
        assert result.residual.min >= -1e-12

    def test_amplitude_certificate(self, laplace):
        result = h1_witness(3.0, 1.5, laplace, 5)
        k, delta = result.chosen_amplitude, result.chosen_delta
        assert delta * k * (5 - delta - 2) >= k**3 + (delta * k) ** 1.5
        # first halving that works
        assert not delta * (2 * k) * (5 - delta - 2) >= (2 * k) ** 3 + (delta * 2 * k) ** 1.5

    def test_outside_region(self, laplace):
        result = h1_witness(1.5, 1.5, laplace, 5)
        assert isinstance(result, Infeasible)
        assert result.feasible is False
        assert result.to_dict()["feasible"] is False

    def test_gamma_at_most_one(self, laplace):
        result = h1_witness(3.0, 1.0, laplace, 5)
        assert isinstance(result, Infeasible)
        assert math.isinf(result.feasibility_interval[0])

    @pytest.mark.parametrize("q, gamma", [(float("nan"), 1.5), (3.0, float("inf")), (-1.0, 1.5), (3.0, 0.0)])
    def test_invalid_exponents(self, laplace, q, gamma):
        with pytest.raises(InvalidInputError):
            h1_witness(q, gamma, laplace, 5)

    def test_custom_grid(self, laplace):
        grid = np.array([0.0, 0.5, 2.0, 100.0])
        result = h1_witness(3.0, 1.5, laplace, 5, grid=grid)
        assert np.array_equal(result.residual.radii, grid)

    @settings(max_examples=25, deadline=None)
    @given(dq=st.floats(0.05, 8.0), dgamma=st.floats(0.05, 3.0), N=st.integers(3, 6))
    def test_failure_region_always_verifies(self, dq, dgamma, N):
        ell = Ellipticity(1.0, 2.0)
        beta = ell.beta(N)
        q, gamma = beta / (beta - 2) + dq, beta / (beta - 1) + dgamma
        result = h1_witness(q, gamma, ell, N)
        assert isinstance(result, WitnessReport)
        assert result.residual.passed(1e-12)


@pytest.mark.unit
class TestZeroOrderWitness:
    def test_reference_case(self, laplace):
        result = zero_order_witness(3.0, laplace, 5)
        assert isinstance(result, WitnessReport)
        assert result.chosen_delta == 2.0
        assert result.residual.passed(1e-12)

    def test_threshold_infeasible(self, laplace):
        assert isinstance(zero_order_witness(5 / 3, laplace, 5), Infeasible)
        assert isinstance(zero_order_witness(0.5, laplace, 5), Infeasible)


@pytest.mark.unit
class TestWeightedReaction:
    """Reaction <x>^sigma u^q: with beta = 3 the critical exponent is 3 + sigma."""

    def test_regions_shift_with_sigma(self):
        assert zero_order_threshold(3.0, 1.0) == 4.0
        assert not h1_failure_region(3.5, 1.8, 3.0, 1.0)
        assert h1_failure_region(3.5, 1.8, 3.0)
        assert h1_failure_region(5.0, 1.8, 3.0, 1.0)
        assert zero_order_failure_region(2.5, 3.0, -1.0)
        assert not zero_order_failure_region(2.5, 3.0)

    def test_zero_order_above_weighted_threshold(self, laplace):
        result = zero_order_witness(5.0, laplace, 3, sigma=1.0)

        assert isinstance(result, WitnessReport)
        assert result.feasibility_interval == (0.75, 1.0)
        assert result.chosen_delta == 0.875
        assert result.hamiltonian == ZeroOrder(5.0, 1.0)
        assert result.residual.passed(1e-12)

    def test_zero_order_below_weighted_threshold(self, laplace):
        assert isinstance(zero_order_witness(3.5, laplace, 3), WitnessReport)
        assert isinstance(zero_order_witness(3.5, laplace, 3, sigma=1.0), Infeasible)

    def test_decaying_weight_lowers_threshold(self, laplace):
        result = zero_order_witness(2.5, laplace, 3, sigma=-1.0)
        assert isinstance(result, WitnessReport)
        assert result.chosen_delta == pytest.approx(5 / 6)
        assert result.residual.passed(1e-12)
        assert isinstance(zero_order_witness(2.5, laplace, 3), Infeasible)

    def test_h1_both_sides(self, laplace):
        result = h1_witness(5.0, 1.8, laplace, 3, sigma=1.0)
        assert isinstance(result, WitnessReport)
        assert result.hamiltonian == H1(5.0, 1.8, 1.0)
        assert result.chosen_delta == 0.875
        k = result.chosen_amplitude
        assert 0.875 * k * 0.125 >= k**5 + (0.875 * k) ** 1.8
        assert result.residual.passed(1e-12)

        assert isinstance(h1_witness(3.5, 1.8, laplace, 3, sigma=1.0), Infeasible)
        assert isinstance(h1_witness(3.5, 1.8, laplace, 3), WitnessReport)

    def test_weight_enters_the_residual(self, laplace):
        """The unweighted witness is checked against the heavier weighted reaction."""
        profile = h1_witness(3.5, 1.8, laplace, 3).profile
        grid = [0.0, 1.0, 10.0]
        plain = residual_grid(profile, H1(3.5, 1.8), laplace, 3, "plus", grid)
        weighted = residual_grid(profile, H1(3.5, 1.8, 1.0), laplace, 3, "plus", grid)
        assert weighted.residuals[0] == plain.residuals[0]
        assert np.all(weighted.residuals[1:] < plain.residuals[1:])

    def test_unweighted_default(self, laplace):
        weighted = zero_order_witness(3.0, laplace, 5, sigma=0.0)
        assert weighted.chosen_delta == zero_order_witness(3.0, laplace, 5).chosen_delta == 2.0
        assert weighted.hamiltonian == ZeroOrder(3.0)

    @pytest.mark.parametrize("sigma", [-2.0, -3.0, float("nan")])
    def test_sigma_range(self, laplace, sigma):
        with pytest.raises(InvalidInputError):
            zero_order_witness(5.0, laplace, 3, sigma=sigma)
        with pytest.raises(InvalidInputError):
            H1(5.0, 1.8, sigma)

    @settings(max_examples=25, deadline=None)
    @given(sigma=st.floats(-1.5, 2.0), dq=st.floats(0.2, 6.0), dgamma=st.floats(0.1, 2.0), N=st.integers(3, 5))
    def test_weighted_region_always_verifies(self, sigma, dq, dgamma, N):
        ell = Ellipticity(1.0, 2.0)
        beta = ell.beta(N)
        q, gamma = zero_order_threshold(beta, sigma) + dq, beta / (beta - 1) + dgamma
        result = h1_witness(q, gamma, ell, N, sigma=sigma)
        assert isinstance(result, WitnessReport)
        assert result.residual.passed(1e-12)


@pytest.mark.unit
class TestH2Witness:
    def test_reference_case(self, laplace):
        result = h2_witness(0.0, 1.5, laplace, 4)

        assert isinstance(result, WitnessReport)
        assert result.feasibility_interval == (1.0, 2.0)
        assert result.chosen_delta == 1.5
        assert result.chosen_amplitude == pytest.approx(0.5 * (0.5 / 1.5**0.5) ** 2)
        assert result.hamiltonian == H2(0.0, 1.5)
        assert result.residual.passed(1e-12)

    def test_below_line_infeasible(self, laplace):
        result = h2_witness(0.0, 1.2, laplace, 4)
        assert isinstance(result, Infeasible)
        assert "beta" in result.reason

    def test_feasibility_matches_region(self, laplace, small_config):
        beta = laplace.beta(4)
        for q in np.linspace(0.0, 3.0, 12):
            for gamma in np.linspace(1.05, 3.0, 12):
                result = h2_witness(float(q), float(gamma), laplace, 4, config=small_config)
                assert result.feasible == (h2_failure_margin(q, gamma, beta) > 0)

    def test_anisotropic(self, anisotropic):
        result = h2_witness(1.0, 1.5, anisotropic, 3)
        assert isinstance(result, WitnessReport)
        assert result.residual.passed(1e-12)


@pytest.mark.unit
class TestSingularWitness:
    def test_reference_case(self, laplace):
        result = singular_h2_witness(1.5, laplace, 5)

        assert isinstance(result, WitnessReport)
        assert isinstance(result.profile, SingularPower)
        assert result.chosen_delta == pytest.approx(1.0)
        assert result.residual.radii[0] > 0
        assert result.residual.passed(1e-12)

    def test_scale_invariance(self, laplace):
        result = singular_h2_witness(1.5, laplace, 5)
        r = np.array([0.01, 1.0, 100.0])
        residual = residual_grid(result.profile, H2(0.0, 1.5), laplace, 5, "plus", r).residuals
        # nu = 1: the residual is a constant times r^-3
        assert np.allclose(residual * r**3, residual[1])

    @pytest.mark.parametrize("gamma", [1.1, 2.0, 2.5])
    def test_outside_window(self, laplace, gamma):
        assert isinstance(singular_h2_witness(gamma, laplace, 5), Infeasible)


@pytest.mark.unit
class TestDriftWitness:
    def test_reference_case(self, laplace):
        result = drift_witness(laplace, 3, 0.5)

        assert result.drift == ScaledRadial(-0.5)
        assert result.drift.limsup > laplace.lambda_ * (2 - laplace.beta(3))
        assert result.profile == PowerDecay(1.0, 0.5)
        assert result.hamiltonian == H3(2.0, 0.0, ScaledRadial(-0.5))
        assert result.residual.passed(1e-12)

    def test_residual_at_one(self, laplace):
        result = drift_witness(laplace, 3, 0.5, grid=[1.0])
        assert result.residual.residuals[0] == pytest.approx(1.5 * 2**-2.25)

    @pytest.mark.parametrize("delta", [0.0, 1.0, -0.5, float("nan")])
    def test_delta_out_of_range(self, laplace, delta):
        with pytest.raises(InvalidInputError):
            drift_witness(laplace, 3, delta)

    def test_threshold_not_exceeded_in_floating_point(self, laplace):
        # -1 + 1e-17 rounds to the threshold -1
        with pytest.raises(WitnessVerificationError, match="not above"):
            drift_witness(laplace, 3, 1e-17)

    def test_to_dict(self, laplace):
        data = drift_witness(laplace, 3, 0.5).to_dict()
        assert data["feasible"] is True
        assert data["drift"] == {"variant": "ScaledRadial", "c": -0.5}
        assert data["delta"] == 0.5
        assert data["residual_min"] >= -1e-12


@pytest.mark.unit
def test_failed_reverification_raises(mocker, laplace):
    """A witness whose numerical check fails is never returned."""
    mocker.patch(
        "pucci_liouville.counterexamples.residual_grid",
        return_value=ResidualReport([1.0, 2.0], [0.0, -1e-6]),
    )
    with pytest.raises(WitnessVerificationError, match="residual min"):
        h1_witness(3.0, 1.5, laplace, 5)
