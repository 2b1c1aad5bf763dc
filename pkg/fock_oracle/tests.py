"""
Тесты оракула в усеченном фоковском пространстве.
"""
from math import sqrt

import numpy as np
import scipy.linalg
from django.test import SimpleTestCase, override_settings

from core.exceptions import DimensionCeilingError, OracleError, TruncationTailError
from homodyne_schemes.builders import build_balanced_homodyne, build_eight_port
from mode_algebra.modes import ModeId
from mode_algebra.polynomials import OperatorPoly
from network_model.elements import BeamSplitter, Detector, Source
from network_model.networks import Network, detector_operator
from state_engine.expectation import expectation
from state_engine.states import ModeState, StateAssignment

from .oracle import (
    minimal_cutoff, network_config, network_unitary, oracle_expectation, oracle_network,
    unitarity_deviation, unitary_logarithm,
)
from .spaces import FockConfig, FockState, coherent_amplitudes, ladder, product_state, squeezed_amplitudes

B = ModeId('b')
L = ModeId('l_i')


def random_coherent(rng, limit):
    """Когерентное состояние с модулем амплитуды не больше limit."""
    return ModeState.coherent(limit * sqrt(rng.uniform()) * np.exp(1j * rng.uniform(0, 2 * np.pi)))


class SpacesTest(SimpleTestCase):
    """
    Тесты приготовления состояний.
    """

    def test_ladder(self):
        a = ladder(3).toarray()
        np.testing.assert_allclose(np.diag(a, 1), [1, sqrt(2), sqrt(3)])
        np.testing.assert_allclose(np.diag(a.T @ a), [0, 1, 2, 3])

    def test_coherent_is_normalized(self):
        vector = coherent_amplitudes(0.8 - 0.3j, 20)
        self.assertAlmostEqual(np.linalg.norm(vector), 1.0, delta=1e-14)

    def test_tail_error(self):
        with self.assertRaises(TruncationTailError):
            coherent_amplitudes(3, 5)

    def test_tail_warning(self):
        with self.assertLogs('fock_oracle.spaces', level='WARNING'):
            coherent_amplitudes(1, 11, tolerance=1e-9)

    def test_mixed_gaussian_rejected(self):
        with self.assertRaises(OracleError):
            squeezed_amplitudes(0, 0.3, 0.1, 20)

    def test_squeezed_moments(self):
        n_ex, phase = 0.2, 0.7
        m_anom = -np.exp(1j * phase) * sqrt(n_ex * (n_ex + 1))
        state = ModeState.gaussian(0.5j, n_ex, m_anom)
        cutoff = minimal_cutoff(StateAssignment({B: state}), (B,)) + 4
        vector = squeezed_amplitudes(0.5j, n_ex, m_anom, cutoff)
        a = ladder(cutoff).toarray()
        mean = np.vdot(vector, a @ vector)
        self.assertAlmostEqual(mean, 0.5j, delta=1e-10)
        delta = a - mean * np.eye(cutoff + 1)
        self.assertAlmostEqual(np.vdot(vector, delta.conj().T @ delta @ vector), n_ex, delta=1e-10)
        self.assertAlmostEqual(np.vdot(vector, delta @ delta @ vector), m_anom, delta=1e-10)

    def test_basis_state(self):
        config = FockConfig(3, (B, L))
        state = FockState.basis(config, {L: 2})
        self.assertEqual(np.flatnonzero(state.amplitudes).tolist(), [2])
        with self.assertRaises(OracleError):
            FockState.basis(config, {B: 4})

    def test_config_checks(self):
        with self.assertRaises(ValueError):
            FockConfig(1, (B,))
        with self.assertRaises(ValueError):
            FockConfig(4, (B, B))
        with self.assertRaises(DimensionCeilingError):
            FockConfig(30, (B, L, 'e_i', 'f_i'), ceiling=1000).check_dimension()

    @override_settings(HOMODYNE={'FOCK_DIMENSION_CEILING': 100})
    def test_ceiling_from_settings(self):
        states = StateAssignment({B: ModeState.coherent(0.5)})
        with self.assertRaises(DimensionCeilingError):
            oracle_expectation(OperatorPoly.number(B), states, FockConfig(10, (B, L)))


class OracleExpectationTest(SimpleTestCase):
    """
    Тесты средних на векторах состояний.
    """

    def test_number_in_coherent_state(self):
        states = StateAssignment({B: ModeState.coherent(1)})
        self.assertAlmostEqual(oracle_expectation(OperatorPoly.number(B), states, FockConfig(20, (B,))), 1.0, delta=1e-10)

    def test_identity_is_normalized(self):
        states = StateAssignment({B: ModeState.coherent(0.3), L: ModeState.coherent(-0.4j)})
        value = oracle_expectation(OperatorPoly.constant(1), states, FockConfig(16, (B, L)))
        self.assertAlmostEqual(value, 1.0, delta=1e-12)

    def test_missing_mode(self):
        with self.assertRaises(OracleError):
            oracle_expectation(OperatorPoly.number(L), StateAssignment(), FockConfig(4, (B,)))

    def test_product_state_order(self):
        config = FockConfig(4, (B, L))
        state = product_state(StateAssignment(), config)
        self.assertEqual(state.amplitudes[0], 1)
        self.assertAlmostEqual(state.norm(), 1.0, delta=1e-14)


class NetworkPropagationTest(SimpleTestCase):
    """
    Тесты прохождения схем.
    """

    def test_single_photon_split(self):
        net = build_balanced_homodyne()
        config = network_config(net, 4)
        counts = oracle_network(net, FockState.basis(config, {B: 1}), config)
        self.assertAlmostEqual(counts['D1'], 0.5, delta=1e-10)
        self.assertAlmostEqual(counts['D2'], 0.5, delta=1e-10)

    def test_balanced_difference(self):
        net = build_balanced_homodyne()
        states = StateAssignment({B: ModeState.coherent(0.5), L: ModeState.coherent(1.0)})
        counts = oracle_network(net, states, network_config(net, 24))
        self.assertAlmostEqual(counts['D1'] - counts['D2'], 1.0, delta=1e-10)

    def test_identity_network(self):
        net = Network(sources=(Source('b'),), detectors=(Detector('D', 'b'),))
        states = StateAssignment({B: ModeState.coherent(0.9)})
        counts = oracle_network(net, states, network_config(net, 20))
        self.assertAlmostEqual(counts['D'], 0.81, delta=1e-12)

    def test_source_mismatch(self):
        net = build_balanced_homodyne()
        with self.assertRaises(OracleError):
            oracle_network(net, StateAssignment(), FockConfig(4, (B,)))

    def test_balanced_agrees_with_symbolic(self):
        rng = np.random.default_rng(2024)
        net = build_balanced_homodyne()
        config = network_config(net, 24)
        operators = {name: detector_operator(net, name) for name in net.detector_names}
        for _ in range(50):
            states = StateAssignment({label: random_coherent(rng, 1.2) for label in ('b', 'l_i')})
            counts = oracle_network(net, states, config)
            for name, operator in operators.items():
                self.assertAlmostEqual(counts[name], expectation(operator, states).real, delta=1e-8)

    def test_eight_port_agrees_with_symbolic(self):
        rng = np.random.default_rng(31)
        net = build_eight_port()
        config = network_config(net, 14)
        operators = {name: detector_operator(net, name) for name in net.detector_names}
        for _ in range(50):
            states = StateAssignment({label: random_coherent(rng, 0.6) for label in net.source_labels})
            counts = oracle_network(net, states, config)
            for name, operator in operators.items():
                self.assertAlmostEqual(counts[name], expectation(operator, states).real, delta=1e-8)


class UnitarityTest(SimpleTestCase):
    """
    Тесты унитарности операторов элементов.
    """

    def test_logarithm_of_element_matrices(self):
        for element in (
            BeamSplitter.balanced('BS', ('x', 'y'), ('u', 'v')),
            BeamSplitter.balanced('BS', ('x', 'y'), ('u', 'v'), flip=True),
            BeamSplitter('BS', 0.6, 0.8, ('x', 'y'), ('u', 'v')),
        ):
            logarithm = unitary_logarithm(element.matrix())
            np.testing.assert_allclose(scipy.linalg.expm(logarithm), element.matrix(), atol=1e-12)
            np.testing.assert_allclose(logarithm, -logarithm.conj().T, atol=1e-12)

    def test_network_unitaries(self):
        fig1 = build_balanced_homodyne()
        fig2 = build_eight_port()
        self.assertLess(unitarity_deviation(network_unitary(fig1, network_config(fig1, 4))), 1e-9)
        self.assertLess(unitarity_deviation(network_unitary(fig2, network_config(fig2, 3))), 1e-9)


class MinimalCutoffTest(SimpleTestCase):
    """
    Тесты подбора усечения.
    """

    def test_vacuum(self):
        self.assertEqual(minimal_cutoff(StateAssignment(), (B, L)), 2)

    def test_pooled_is_not_smaller(self):
        states = StateAssignment({B: ModeState.coherent(1), L: ModeState.coherent(1.5)})
        single = minimal_cutoff(states, (B, L))
        pooled = minimal_cutoff(states, (B, L), pooled=True)
        self.assertGreaterEqual(pooled, single)
        coherent_amplitudes(1.5, single)
        with self.assertRaises(TruncationTailError):
            coherent_amplitudes(1.5, single - 1)
