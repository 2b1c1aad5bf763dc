"""
Тесты описания схем, разрешения портов и проверки корректности.
"""
from math import sqrt

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import CyclicWiringError, UnknownPortError
from homodyne_schemes.builders import build_balanced_homodyne, build_eight_port
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly
from state_engine.expectation import expectation
from state_engine.states import ModeState, StateAssignment

from .elements import BeamSplitter, Detector, PhaseRotator, Source
from .networks import Network, detector_operator, resolve, transfer_matrix, validate

H = 1 / sqrt(2)
B, L, E, F = ModeId('b'), ModeId('l_i'), ModeId('e_i'), ModeId('f_i')


def assert_combination(test, actual, expected, tolerance=1e-15):
    for mode in set(actual) | set(expected):
        test.assertAlmostEqual(actual.get(mode, 0j), expected.get(mode, 0j), delta=tolerance)


def identity_network():
    return Network(sources=(Source('b'),), detectors=(Detector('D', 'b'),), name='identity')


class ResolveTest(SimpleTestCase):
    """
    Тесты выражения портов через моды источников.
    """

    def test_balanced_outputs(self):
        net = build_balanced_homodyne()
        assert_combination(self, resolve(net, 'c_o'), {B: H, L: H})
        assert_combination(self, resolve(net, 'd_o'), {B: H, L: -H})

    def test_eight_port_internal_ports(self):
        net = build_eight_port()
        assert_combination(self, resolve(net, 'b_2'), {B: H, E: H})
        assert_combination(self, resolve(net, 'b_1'), {B: H, E: -H})
        assert_combination(self, resolve(net, 'l_14i'), {L: 1j * H, F: 1j * H})
        assert_combination(self, resolve(net, 'c_1o'), {B: 0.5, E: -0.5, L: 0.5, F: -0.5})

    def test_sideband_labels(self):
        net = build_balanced_homodyne()
        combination = resolve(net, 'c_o', Sideband.MINUS)
        self.assertEqual(set(combination), {B.at(Sideband.MINUS), L.at(Sideband.MINUS)})

    def test_unknown_port(self):
        with self.assertRaises(UnknownPortError):
            resolve(build_balanced_homodyne(), 'nowhere')

    def test_cyclic_wiring(self):
        net = Network(
            elements=(BeamSplitter.balanced('BS', ('b', 'x'), ('y', 'z')),),
            sources=(Source('b'),),
            detectors=(Detector('D', 'z'),),
            wires=(('y', 'x'),),
        )
        with self.assertRaises(CyclicWiringError):
            resolve(net, 'z')
        self.assertIn('cyclic wiring', [violation.code for violation in validate(net)])

    def test_resolution_independent_of_element_order(self):
        net = build_eight_port()
        reordered = Network(
            elements=tuple(reversed(net.elements)),
            sources=net.sources,
            detectors=net.detectors,
        )
        np.testing.assert_allclose(transfer_matrix(net), transfer_matrix(reordered), atol=1e-15)

    def test_wire_renames_port(self):
        net = Network(
            elements=(PhaseRotator('PR', np.pi, ('x',), ('y',)),),
            sources=(Source('b'),),
            detectors=(Detector('D', 'y'),),
            wires=(('b', 'x'),),
        )
        assert_combination(self, resolve(net, 'y'), {B: -1})
        self.assertEqual(validate(net), [])


class DetectorOperatorTest(SimpleTestCase):
    """
    Тесты операторов числа фотонов детекторов.
    """

    def test_balanced_detector_d1(self):
        net = build_balanced_homodyne()
        expected = OperatorPoly({
            ((B,), (B,)): 0.5, ((B,), (L,)): 0.5, ((L,), (B,)): 0.5, ((L,), (L,)): 0.5,
        })
        self.assertTrue(detector_operator(net, 'D1').is_close(expected, 1e-15))

    def test_balanced_difference(self):
        net = build_balanced_homodyne()
        difference = detector_operator(net, 'D1') - detector_operator(net, 'D2')
        expected = OperatorPoly({((L,), (B,)): 1, ((B,), (L,)): 1})
        self.assertTrue(difference.is_close(expected, 1e-15))

    def test_identity_network(self):
        self.assertEqual(detector_operator(identity_network(), 'D'), OperatorPoly.number(B))

    def test_unknown_detector(self):
        with self.assertRaises(UnknownPortError):
            detector_operator(build_balanced_homodyne(), 'D9')


class ValidateTest(SimpleTestCase):
    """
    Тесты проверки корректности схем.
    """

    def test_builtin_networks_are_valid(self):
        self.assertEqual(validate(build_balanced_homodyne()), [])
        self.assertEqual(validate(build_eight_port()), [])
        self.assertEqual(validate(identity_network()), [])

    def test_non_unitary_beamsplitter(self):
        net = Network(
            elements=(BeamSplitter('BS', 0.8, 0.8, ('b', 'l_i'), ('c_o', 'd_o')),),
            sources=(Source('b'), Source('l_i')),
            detectors=(Detector('D1', 'c_o'), Detector('D2', 'd_o')),
        )
        self.assertIn('non-unitary element', [violation.code for violation in validate(net)])

    def test_fan_in(self):
        net = Network(
            elements=(BeamSplitter.balanced('BS', ('b', 'l_i'), ('c_o', 'd_o')),),
            sources=(Source('b'), Source('l_i')),
            detectors=(Detector('D1', 'x'),),
            wires=(('c_o', 'x'), ('d_o', 'x')),
        )
        self.assertIn('port fan-in', [violation.code for violation in validate(net)])

    def test_missing_declarations(self):
        codes = [violation.code for violation in validate(Network())]
        self.assertIn('no sources declared', codes)
        self.assertIn('no detectors declared', codes)

    def test_port_arity(self):
        net = Network(
            elements=(BeamSplitter.balanced('BS', ('b',), ('c_o', 'd_o')),),
            sources=(Source('b'),),
            detectors=(Detector('D1', 'c_o'), Detector('D2', 'd_o')),
        )
        self.assertIn('port arity', [violation.code for violation in validate(net)])

    def test_dangling_and_unreachable_ports(self):
        net = Network(
            elements=(BeamSplitter.balanced('BS', ('b', 'l_i'), ('c_o', 'd_o')),),
            sources=(Source('b'), Source('l_i')),
            detectors=(Detector('D1', 'c_o'), Detector('D2', 'q')),
        )
        codes = [violation.code for violation in validate(net)]
        self.assertIn('dangling port', codes)
        self.assertIn('unreachable port', codes)


class IsometryTest(SimpleTestCase):
    """
    Отображение источники -> детекторы изометрично и сохраняет число фотонов.
    """

    def test_transfer_matrices_are_unitary(self):
        for net in (build_balanced_homodyne(), build_eight_port(), build_eight_port(0.3)):
            matrix = transfer_matrix(net)
            np.testing.assert_allclose(matrix.conj().T @ matrix, np.eye(matrix.shape[1]), atol=1e-12)

    def test_photon_number_conservation(self):
        rng = np.random.default_rng(11)
        for net in (build_balanced_homodyne(), build_eight_port()):
            for _ in range(10):
                states = StateAssignment({
                    ModeId(label): ModeState.gaussian(
                        complex(*rng.normal(size=2)), 0.3, 0.2 * np.exp(1j * rng.uniform(0, 2 * np.pi)),
                    )
                    for label in net.source_labels
                })
                detected = sum(expectation(detector_operator(net, name), states) for name in net.detector_names)
                emitted = sum(state.mean_photon_number for state in states.states.values())
                self.assertAlmostEqual(detected.real, emitted, delta=1e-10)
                self.assertAlmostEqual(detected.imag, 0.0, delta=1e-10)
