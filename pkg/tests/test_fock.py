import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from twinbeam.fock import (
    FockState,
    TruncationError,
    compare_with_gaussian,
    fock_difference_stats,
    fock_loss,
    fock_seed,
    fock_two_mode_squeeze,
    squeeze_unitary,
)
from twinbeam.gaussian import CONJUGATE, PROBE


def check_physical(state: FockState):
    rho = state.rho
    assert np.abs(rho - rho.conj().T).max() <= 1e-10
    assert abs(np.trace(rho).real - 1) <= 1e-6
    assert np.linalg.eigvalsh(rho).min() >= -1e-8


def dense_generator(r, ca, cb):
    a = np.diag(np.sqrt(np.arange(1, ca)), 1)
    b = np.diag(np.sqrt(np.arange(1, cb)), 1)
    ab = np.kron(a, b)
    return r * (ab.T - ab)


class TestSeed:
    def test_vacuum(self):
        s = fock_seed(0.0, 6)
        expected = np.zeros((36, 36))
        expected[0, 0] = 1
        np.testing.assert_array_equal(s.rho, expected)

    def test_mean(self):
        mean_a, mean_b, _ = fock_difference_stats(fock_seed(2.0, 40))
        assert mean_a == pytest.approx(4.0, abs=1e-8)
        assert mean_b == 0

    def test_truncation_tail(self):
        assert fock_seed(2.0, 40).leakage <= 1e-10

    def test_cutoff_too_small(self):
        with pytest.raises(TruncationError):
            fock_seed(2.0, 10)

    def test_asymmetric_cutoffs(self):
        s = fock_seed(1.0, (20, 5))
        assert s.rho.shape == (100, 100)
        check_physical(s)


class TestSqueeze:
    def test_zero_is_identity(self):
        s = fock_seed(1.0, 20)
        np.testing.assert_array_equal(fock_two_mode_squeeze(s, 0.0).rho, s.rho)

    def test_squeezed_vacuum_mean(self):
        mean_a, mean_b, _ = fock_difference_stats(fock_two_mode_squeeze(fock_seed(0.0, 30), 0.2))
        assert mean_a == pytest.approx(np.sinh(0.2) ** 2, abs=1e-7)
        assert mean_b == pytest.approx(np.sinh(0.2) ** 2, abs=1e-7)

    def test_pair_creation_conserves_difference(self):
        _, _, var = fock_difference_stats(fock_two_mode_squeeze(fock_seed(0.0, 30), 0.3))
        assert var == pytest.approx(0.0, abs=1e-14)

    def test_squeezed_vacuum_amplitudes(self):
        s = fock_two_mode_squeeze(fock_seed(0.0, 25), 0.25)
        P = s.number_distribution()
        n = np.arange(10)
        expected = np.tanh(0.25) ** (2 * n) / np.cosh(0.25) ** 2
        np.testing.assert_allclose(np.diag(P)[:10], expected, atol=1e-12)

    @pytest.mark.parametrize("cutoffs", [(6, 6), (7, 4), (3, 8)])
    def test_block_unitary_matches_dense_expm(self, cutoffs):
        U = squeeze_unitary(0.4, cutoffs).toarray()
        np.testing.assert_allclose(U, expm(dense_generator(0.4, *cutoffs)), atol=1e-12)

    def test_leakage_detected(self):
        with pytest.raises(TruncationError):
            fock_two_mode_squeeze(fock_seed(2.0, (30, 4)), 0.5)


class TestLoss:
    def test_unit_transmission(self):
        s = fock_two_mode_squeeze(fock_seed(1.0, 15), 0.2)
        np.testing.assert_array_equal(fock_loss(s, PROBE, 1.0).rho, s.rho)

    @pytest.mark.parametrize("tau", [0.2, 0.5, 0.9])
    def test_coherent_stays_coherent(self, tau):
        out = fock_loss(fock_seed(2.0, 40), PROBE, tau)
        np.testing.assert_allclose(out.rho, fock_seed(2.0 * np.sqrt(tau), 40).rho, atol=1e-9)

    @pytest.mark.parametrize("mode", [PROBE, CONJUGATE])
    def test_full_loss_gives_vacuum(self, mode):
        s = fock_two_mode_squeeze(fock_seed(1.0, 15), 0.2)
        P = fock_loss(s, mode, 0.0).number_distribution()
        marginal = P.sum(axis=1 if mode == PROBE else 0)
        assert marginal[0] == pytest.approx(1.0, abs=1e-12)

    def test_conjugate_loss_scales_mean(self):
        s = fock_two_mode_squeeze(fock_seed(1.5, (25, 12)), 0.2)
        _, mb, _ = fock_difference_stats(s)
        _, mb_out, _ = fock_difference_stats(fock_loss(s, CONJUGATE, 0.3))
        assert mb_out == pytest.approx(0.3 * mb, rel=1e-10)

    @pytest.mark.parametrize("tau", [-0.1, 1.1])
    def test_range(self, tau):
        with pytest.raises(ValueError):
            fock_loss(fock_seed(0.0, 4), PROBE, tau)


class TestDifferenceStats:
    def test_poisson(self):
        mean_a, mean_b, var = fock_difference_stats(fock_seed(2.0, 40))
        assert var == pytest.approx(4.0, abs=1e-8)
        assert var == pytest.approx(mean_a, abs=1e-8)

    def test_seeded_squeezing(self):
        mean_a, mean_b, var = fock_difference_stats(fock_two_mode_squeeze(fock_seed(2.0, 40), 0.2))
        assert var / (mean_a + mean_b) < 1


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 2.5), st.floats(0, 0.3), st.sampled_from([0.3, 0.7, 1.0]), st.sampled_from([PROBE, CONJUGATE]))
def test_channels_keep_state_physical(alpha, r, tau, mode):
    s = fock_seed(alpha, (26, 14))
    check_physical(s)
    s = fock_two_mode_squeeze(s, r)
    check_physical(s)
    check_physical(fock_loss(s, mode, tau))


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 5.0), st.floats(0.0, 0.3), st.sampled_from([0.3, 0.7, 1.0]))
def test_means_match_gaussian_engine(alpha, r, tau):
    rep = compare_with_gaussian(alpha, r, tau)
    assert rep.mean_deviation <= 1e-7


def test_linearisation_error_scales_inverse_with_seed():
    alphas = np.array([1.5, 2.0, 3.0, 4.0])
    dev = np.array([compare_with_gaussian(a, 0.3, 0.7).s_deviation for a in alphas])
    # relative deviation ~ c / alpha^2: fit c and check the power law holds
    c = np.exp(np.mean(np.log(dev * alphas**2)))
    assert c < 10
    slope = np.polyfit(np.log(alphas), np.log(dev), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.3)
