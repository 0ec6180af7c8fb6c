import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohres import (
    AmplitudeTable,
    AngleGrid,
    ChannelBlock,
    ChannelState,
    ControlParams,
    DegenerateChannelError,
    UnknownChannelError,
    XsecMatrix,
    controlled_cross_section,
    cross_section_matrix,
    differential_matrix,
    schwartz_ratio,
)
from conftest import INITIAL, random_table


def table_from_arrays(amps, nodes, weights, label="P"):
    states = tuple(ChannelState(label, 0, j, 0) for j in range(amps.shape[0]))
    grid = AngleGrid(nodes, weights)
    return AmplitudeTable(0.5, INITIAL, grid, (ChannelBlock(label, states, amps),))


def factorized_table(rng, n_states=4, order=12):
    """Columns proportional: f[n, k, i] = a(n, k) * g[i]."""
    a = rng.normal(size=(n_states, order)) + 1j * rng.normal(size=(n_states, order))
    g = rng.normal(size=2) + 1j * rng.normal(size=2)
    amps = a[:, :, None] * g[None, None, :]
    from cohres import gauss_legendre_grid

    grid = gauss_legendre_grid(order)
    states = tuple(ChannelState("P", 0, j, 0) for j in range(n_states))
    return AmplitudeTable(0.5, INITIAL, grid, (ChannelBlock("P", states, amps),))


class TestCrossSectionMatrix:
    def test_single_term_gram(self):
        amps = np.zeros((1, 1, 2), complex)
        amps[0, 0] = [1.0, 1.0j]
        t = table_from_arrays(amps, [1.0], [1.0])
        m = cross_section_matrix(t, "P")
        assert (m.sigma11, m.sigma22, m.sigma12) == (1.0, 1.0, 1.0j)

    def test_hand_summed_two_node_example(self):
        # sigma(ij) = sum_k w_k conj(f_i) f_j summed by hand:
        # s11 = 2*1 + 3*1 = 5, s22 = 2*1 + 3*1 = 5, s12 = 2*1 + 3*(-1) = -1
        amps = np.zeros((1, 2, 2), complex)
        amps[0, :, 0] = [1.0, 1.0]
        amps[0, :, 1] = [1.0, -1.0]
        t = table_from_arrays(amps, [1.0, 2.0], [2.0, 3.0])
        m = cross_section_matrix(t, "P")
        assert (m.sigma11, m.sigma22, m.sigma12) == (5.0, 5.0, -1.0 + 0.0j)

    def test_factorized_table_saturates_schwartz(self, rng):
        m = cross_section_matrix(factorized_table(rng), "P")
        assert abs(m.sigma12) == pytest.approx(
            math.sqrt(m.sigma11 * m.sigma22), rel=1e-12
        )

    def test_unknown_channel(self, rng):
        with pytest.raises(UnknownChannelError):
            cross_section_matrix(random_table(rng), "nope")

    def test_scaling_all_amplitudes(self, rng):
        t = random_table(rng, n_states=3, order=8)
        z = 1.7 - 0.9j
        scaled = AmplitudeTable(
            t.energy,
            t.initial_pair,
            t.grid,
            tuple(
                ChannelBlock(b.arrangement, b.states, z * b.amplitudes)
                for b in t.channels
            ),
        )
        m0 = cross_section_matrix(t, "D+HF")
        m1 = cross_section_matrix(scaled, "D+HF")
        assert m1.sigma11 == pytest.approx(abs(z) ** 2 * m0.sigma11, rel=1e-12)
        assert m1.sigma22 == pytest.approx(abs(z) ** 2 * m0.sigma22, rel=1e-12)
        assert cmath.phase(m1.sigma12) == pytest.approx(cmath.phase(m0.sigma12), abs=1e-12)


class TestDifferentialMatrix:
    def test_single_state_single_node(self):
        amps = np.zeros((1, 1, 2), complex)
        amps[0, 0] = [2.0, 0.0]
        t = table_from_arrays(amps, [0.5], [1.0])
        m = differential_matrix(t, "P", 0)
        assert (m.sigma11, m.sigma22, m.sigma12) == (4.0, 0.0, 0.0j)
        assert m.kind == "differential" and m.node == 0

    def test_weighted_node_sum_reproduces_integral(self, rng):
        t = random_table(rng, n_states=3, order=10)
        total = np.zeros((2, 2), complex)
        for k, w in enumerate(t.grid.weights):
            d = differential_matrix(t, "D+HF", k)
            total += w * d.as_array()
        m = cross_section_matrix(t, "D+HF")
        assert np.allclose(total, m.as_array(), rtol=1e-12, atol=0.0)

    def test_factorized_equality_at_every_node(self, rng):
        t = factorized_table(rng, n_states=3, order=6)
        for k in range(6):
            assert schwartz_ratio(differential_matrix(t, "P", k)) >= 1.0 - 1e-12

    def test_node_out_of_range(self, rng):
        t = random_table(rng, n_states=1, order=4)
        with pytest.raises(IndexError):
            differential_matrix(t, "D+HF", 4)
        with pytest.raises(IndexError):
            differential_matrix(t, "D+HF", -1)


class TestXsecMatrixInvariants:
    def test_tiny_negative_diagonal_clamped(self):
        m = XsecMatrix("X", "integral", -1e-13, 1.0, 0.0)
        assert m.sigma11 == 0.0

    def test_large_negative_diagonal_rejected(self):
        with pytest.raises(ValueError):
            XsecMatrix("X", "integral", -1e-6, 1.0, 0.0)

    def test_schwartz_violation_rejected(self):
        with pytest.raises(ValueError):
            XsecMatrix("X", "integral", 1.0, 1.0, 2.0)

    def test_gram_matrices_are_psd(self, rng):
        # 1000 random tables; the assembled matrix must be PSD
        for _ in range(1000):
            n = int(rng.integers(1, 21))
            order = int(rng.integers(1, 65))
            amps = rng.normal(size=(n, order, 2)) + 1j * rng.normal(size=(n, order, 2))
            nodes = np.linspace(0.1, math.pi - 0.1, order)
            weights = np.full(order, 4.0 * math.pi / order)
            t = table_from_arrays(amps, nodes, weights)
            m = cross_section_matrix(t, "P")
            eig = np.linalg.eigvalsh(m.as_array())
            assert eig.min() >= -1e-10 * m.trace
            assert abs(m.sigma12) <= math.sqrt(m.sigma11 * m.sigma22) + 1e-10 * m.trace


class TestControlledCrossSection:
    def test_endpoints_are_noncoherent(self):
        m = XsecMatrix("X", "integral", 2.0, 0.5, 0.3 + 0.1j)
        for phi in (0.0, 1.0, math.pi):
            assert controlled_cross_section(m, ControlParams(0.0, phi)) == m.sigma11
            assert controlled_cross_section(m, ControlParams(1.0, phi)) == m.sigma22

    def test_constructive_doubling(self):
        m = XsecMatrix("X", "integral", 1.0, 1.0, 1.0)
        assert controlled_cross_section(m, ControlParams(0.5, 0.0)) == pytest.approx(2.0, rel=1e-15)

    def test_complete_destruction(self):
        m = XsecMatrix("X", "integral", 1.0, 1.0, 1.0)
        assert controlled_cross_section(m, ControlParams(0.5, math.pi)) == pytest.approx(
            0.0, abs=1e-15
        )

    @given(
        s=st.floats(0.0, 1.0),
        phi=st.floats(0.0, 2.0 * math.pi, exclude_max=True),
        a=st.floats(0.01, 5.0),
        b=st.floats(0.01, 5.0),
        rho=st.floats(0.0, 1.0),
        arg=st.floats(-math.pi, math.pi),
    )
    @settings(max_examples=200)
    def test_matches_quadratic_form(self, s, phi, a, b, rho, arg):
        s12 = rho * math.sqrt(a * b) * cmath.exp(1j * arg)
        m = XsecMatrix("X", "integral", a, b, s12)
        p = ControlParams(s, phi)
        c1, c2 = p.coefficients()
        c = np.array([c1, c2])
        quad = (c.conj() @ m.as_array() @ c).real
        assert controlled_cross_section(m, p) == pytest.approx(
            quad, rel=1e-12, abs=1e-12 * m.trace
        )


class TestControlParams:
    def test_phase_reduced_mod_two_pi(self):
        assert ControlParams(0.5, -0.3).phi12 == pytest.approx(2 * math.pi - 0.3, rel=1e-15)
        assert ControlParams(0.5, 2 * math.pi).phi12 == 0.0
        assert ControlParams(0.5, 7.0).phi12 == pytest.approx(7.0 - 2 * math.pi, rel=1e-15)

    def test_out_of_range_s(self):
        with pytest.raises(ValueError):
            ControlParams(1.5, 0.0)
        with pytest.raises(ValueError):
            ControlParams(-0.1, 0.0)


class TestSchwartzRatio:
    def test_factorized_is_one(self, rng):
        m = cross_section_matrix(factorized_table(rng), "P")
        assert schwartz_ratio(m) >= 1.0 - 1e-12

    def test_zero_interference(self):
        assert schwartz_ratio(XsecMatrix("X", "integral", 1.0, 2.0, 0.0)) == 0.0

    def test_degenerate_channel(self):
        with pytest.raises(DegenerateChannelError):
            schwartz_ratio(XsecMatrix("X", "integral", 0.0, 1.0, 0.0))
