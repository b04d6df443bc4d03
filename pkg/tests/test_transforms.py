"""Tests for the changes of variable and their chain checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from pucci_liouville.errors import DomainError, InvalidInputError
from pucci_liouville.profiles import Constant, PowerDecay, Quadratic, ScaledRadial, Shifted, Zero
from pucci_liouville.pucci import Ellipticity
from pucci_liouville.transforms import (
    ExponentTriple,
    euclidean_exp_transform_check,
    hopf_cole,
    hopf_cole_chain_check,
    hopf_cole_inv,
    lcp_inequality_check,
    mixquad_chain_check,
    mixquad_limit,
    mixquad_transform,
    power_transform,
    region_transfer_check,
)

GRID = np.concatenate([[0.0], np.geomspace(1e-2, 1e2, 200)])


def _mixquad_closed_form(u, q, lam):
    k = q + 1
    c = k * lam
    return c ** (1 / k) * special.gamma(1 + 1 / k) * special.gammainc(1 / k, u**k / c)


@pytest.mark.unit
class TestHopfCole:
    def test_zero_is_fixed(self):
        assert hopf_cole(0.0, 2.0) == 0.0
        assert hopf_cole_inv(0.0, 2.0) == 0.0

    def test_round_trip_on_array(self):
        u = np.linspace(-5.0, 20.0, 101)
        v = hopf_cole(u, 1.5)
        assert isinstance(v, np.ndarray)
        assert np.all(v < 1.5)
        np.testing.assert_allclose(hopf_cole_inv(v, 1.5), u, rtol=1e-9, atol=1e-12)

    def test_scalar_returns_float(self):
        assert isinstance(hopf_cole(1.0, 1.0), float)
        assert hopf_cole(1.0, 1.0) == pytest.approx(1 - math.exp(-1))

    def test_inverse_outside_range(self):
        with pytest.raises(DomainError):
            hopf_cole_inv(2.0, 2.0)
        with pytest.raises(DomainError):
            hopf_cole_inv(np.array([0.0, 3.0]), 2.0)

    def test_lambda_must_be_positive(self):
        with pytest.raises(InvalidInputError):
            hopf_cole(1.0, 0.0)

    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_chain_inequality(self, anisotropic, sign):
        report = hopf_cole_chain_check(PowerDecay(1.0, 1.0), ScaledRadial(0.3), anisotropic, 3, GRID, sign)
        assert report.min >= -1e-10
        # strict where Du != 0
        assert report.residuals[1:].max() > 0

    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_chain_equality_for_laplacian(self, laplace, sign):
        report = hopf_cole_chain_check(PowerDecay(2.0, 1.5), ScaledRadial(-0.7), laplace, 4, GRID, sign)
        assert report.max_abs <= 1e-10


@pytest.mark.unit
class TestPowerTransform:
    def test_exponents(self):
        triple = power_transform(0.5, 1.5, 1.2)
        assert triple.s == pytest.approx(0.7)
        assert triple.z == pytest.approx(2.9 / 1.7)
        assert triple.to_dict() == {"b": 1.2, "s": triple.s, "z": triple.z}

    def test_z_undefined(self):
        with pytest.raises(DomainError):
            power_transform(0.0, 3.0, -1.0)

    @pytest.mark.parametrize("b", [0.0, 0.5, 1.0])
    def test_b_outside_range(self, b):
        with pytest.raises(InvalidInputError):
            power_transform(0.5, 1.5, b)

    def test_reduced_constant(self):
        triple = power_transform(0.5, 1.5, 1.2)
        c = triple.reduced_constant(1.5, 2.0)
        expected = 2.0 * 1.2 ** (1 - 1.5 / triple.s) * 0.2
        assert c ** ((triple.s + 1) / triple.s) == pytest.approx(expected)

    def test_reduced_constant_undefined(self):
        assert ExponentTriple(2.0, -0.5, 1.0).reduced_constant(1.0, 1.0) is None
        assert ExponentTriple(-1.0, 2.0, 1.0).reduced_constant(1.0, 1.0) is None


@pytest.mark.unit
class TestRegionTransfer:
    def test_transferable(self, laplace):
        result = region_transfer_check(0.2, 1.1, laplace, 4)
        assert result.transferable
        assert result.delta == 0.1
        assert result.triple.s == pytest.approx(0.23)
        assert result.triple.z == pytest.approx(1.56 / 1.23)
        assert result.triple.z < 4 / 3

    def test_outside_region(self, laplace):
        result = region_transfer_check(0.5, 1.1, laplace, 4)
        assert not result.transferable
        assert "not negative" in result.reason
        assert result.to_dict()["triple"] is None

    def test_needs_positive_q_plus_gamma_minus_one(self, laplace):
        with pytest.raises(InvalidInputError):
            region_transfer_check(0.0, 1.0, laplace, 4)

    def test_small_deltas_reach_region_boundary(self, laplace):
        # margin -0.03: delta = 0.1 overshoots beta/(beta-1), delta = 0.01 does not
        result = region_transfer_check(0.335, 1.1, laplace, 4)
        assert result.transferable
        assert result.delta == 0.01


@pytest.mark.unit
class TestMixquad:
    def test_gaussian_value(self):
        expected = math.sqrt(math.pi / 2) * math.erf(1 / math.sqrt(2))
        assert mixquad_transform(1.0, 1.0, 1.0) == pytest.approx(expected, abs=1e-10)
        assert expected == pytest.approx(0.8556244, abs=1e-7)

    @pytest.mark.parametrize("u, q, lam", [(0.3, 0.5, 1.0), (2.0, 2.0, 0.5), (5.0, 1.5, 3.0), (40.0, 3.0, 1.0)])
    def test_incomplete_gamma_closed_form(self, u, q, lam):
        assert mixquad_transform(u, q, lam) == pytest.approx(_mixquad_closed_form(u, q, lam), abs=1e-10)

    def test_reduces_to_hopf_cole(self):
        for u in (0.1, 1.0, 7.5, 100.0):
            assert mixquad_transform(u, 0.0, 2.0) == pytest.approx(hopf_cole(u, 2.0), abs=1e-10)

    def test_limit(self):
        assert mixquad_limit(1.0, 1.0) == pytest.approx(math.sqrt(math.pi / 2))
        assert mixquad_limit(0.0, 2.0) == pytest.approx(2.0)
        assert mixquad_transform(50.0, 1.0, 1.0) == pytest.approx(mixquad_limit(1.0, 1.0), abs=1e-10)

    def test_increasing_and_bounded(self):
        values = [mixquad_transform(u, 1.5, 0.7) for u in np.linspace(0.0, 10.0, 21)]
        assert values[0] == 0.0
        assert all(b > a for a, b in zip(values, values[1:]))
        assert values[-1] <= mixquad_limit(1.5, 0.7) + 1e-10

    @pytest.mark.parametrize("u, q", [(-1.0, 1.0), (1.0, -0.5), (math.nan, 1.0)])
    def test_invalid(self, u, q):
        with pytest.raises(InvalidInputError):
            mixquad_transform(u, q, 1.0)

    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_chain_inequality(self, anisotropic, sign):
        report = mixquad_chain_check(PowerDecay(1.0, 1.0), ScaledRadial(0.3), anisotropic, 3, 2.0, GRID, sign)
        assert report.min >= -1e-10

    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_chain_equality_for_laplacian(self, laplace, sign):
        profile = Shifted(PowerDecay(1.0, 1.0), 0.5)
        report = mixquad_chain_check(profile, Zero(), laplace, 3, 1.0, GRID, sign)
        assert report.max_abs <= 1e-10

    def test_chain_needs_nonnegative_u(self, laplace):
        with pytest.raises(DomainError):
            mixquad_chain_check(Constant(-1.0), Zero(), laplace, 3, 1.0, GRID)


@pytest.mark.unit
class TestLcpInequality:
    @settings(max_examples=200, deadline=None)
    @given(
        u=st.floats(-10.0, 10.0),
        v=st.floats(-10.0, 10.0),
        q=st.floats(1.0, 5.0),
    )
    def test_holds(self, u, v, q):
        assert lcp_inequality_check(u, v, q)

    def test_equality_at_antipodes(self):
        # u = -v with q = 1 gives (2v)(2v) = 4 v^2 on both sides
        assert lcp_inequality_check(-3.0, 3.0, 1.0)

    def test_needs_q_at_least_one(self):
        with pytest.raises(InvalidInputError):
            lcp_inequality_check(1.0, 2.0, 0.5)


@pytest.mark.unit
class TestExponentialIdentity:
    def test_identity_with_drift(self):
        report = euclidean_exp_transform_check(PowerDecay(1.0, 1.0), ScaledRadial(0.5), lambda r: 1 + r, 3, GRID)
        assert report.max_abs <= 1e-9

    def test_constant_coefficient(self):
        report = euclidean_exp_transform_check(Quadratic(-0.1), Zero(), 2.0, 5, np.linspace(0.0, 3.0, 61))
        assert report.max_abs <= 1e-9
        assert len(report.radii) == 61
