"""
Тесты встроенных схем, наблюдаемых с постобработкой и двухфотонного слоя.
"""
from math import pi, sqrt

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import DegenerateLocalOscillatorError, PhaseMismatchError, TopologyError
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly, adjoint
from network_model.networks import detector_operator, validate
from state_engine.expectation import expectation
from state_engine.states import ModeState

from .builders import (
    build_balanced_homodyne, build_eight_port, builtin_network, eight_port_states, scheme_kind,
    two_photon_states,
)
from .observables import (
    HomodyneConfig, PostProcessedObservable, balanced_sideband_observables, observable_s,
    observable_sD1D2, observable_sD3D4, observable_t_theta, recover_b,
)
from .quadratures import (
    check_quadrature_accessibility, commutation_table, evaluate_sideband_combination,
    sideband_combination, sideband_quadratures,
)

B, E, L, F = ModeId('b'), ModeId('e_i'), ModeId('l_i'), ModeId('f_i')
NONE = Sideband.NONE


def hermitian_pair(x, y):
    """x†y + y†x для одиночных мод."""
    return OperatorPoly({((x,), (y,)): 1, ((y,), (x,)): 1})


def random_gaussian(rng, scale=1.5):
    n_ex = rng.uniform(0, 1)
    m_anom = rng.uniform(0, sqrt(n_ex * (n_ex + 1))) * np.exp(1j * rng.uniform(0, 2 * pi))
    return ModeState.gaussian(complex(*(scale * rng.normal(size=2))), n_ex, m_anom)


def random_gamma(rng):
    return complex(*rng.normal(size=2)) + 0.1


class BuildersTest(SimpleTestCase):
    """
    Тесты встроенных схем.
    """

    def test_builtin_networks_validate(self):
        self.assertEqual(validate(builtin_network('fig1')), [])
        self.assertEqual(validate(builtin_network('fig2')), [])

    def test_unknown_builtin(self):
        with self.assertRaises(ValueError):
            builtin_network('fig3')

    def test_scheme_kind(self):
        self.assertEqual(scheme_kind(build_balanced_homodyne()), 'fig1')
        self.assertEqual(scheme_kind(build_eight_port()), 'fig2')

    def test_eight_port_states(self):
        states = eight_port_states(HomodyneConfig.single(2j), ModeState.coherent(0.5))
        self.assertEqual(states.state(L).mean, 2j)
        self.assertEqual(states.state(B).mean, 0.5)
        self.assertEqual(states.state(E), ModeState.vacuum())


class BalancedHomodyneTest(SimpleTestCase):
    """
    Наблюдаемая s балансного гомодина.
    """

    def setUp(self):
        self.net = build_balanced_homodyne()
        self.s = observable_s(self.net)

    def test_symbolic_form(self):
        self.assertTrue(self.s.operator.is_close(hermitian_pair(L, B), 1e-15))

    def test_coherent_expectation(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            gamma, beta = random_gamma(rng), complex(*rng.normal(size=2))
            states = eight_port_states(HomodyneConfig.single(gamma), ModeState.coherent(beta))
            expected = gamma.conjugate() * beta + gamma * beta.conjugate()
            self.assertAlmostEqual(self.s.evaluate(states), expected, delta=1e-10)

    def test_vacuum_signal(self):
        states = eight_port_states(HomodyneConfig.single(3), ModeState.vacuum())
        self.assertEqual(self.s.evaluate(states), 0)

    def test_combine_counts(self):
        counts = {('D1', NONE): 3.5, ('D2', NONE): 1.0}
        self.assertEqual(self.s.combine(counts), 2.5)

    def test_wrong_topology(self):
        with self.assertRaises(TopologyError):
            observable_s(build_eight_port())
        with self.assertRaises(TopologyError):
            observable_sD1D2(self.net)


class EightPortTest(SimpleTestCase):
    """
    Наблюдаемые восьмипортовой схемы и восстановление ⟨b⟩, ⟨b†⟩.
    """

    def setUp(self):
        self.net = build_eight_port()

    def test_s_d1d2_symbolic_form(self):
        expected = (
            hermitian_pair(B, L) - hermitian_pair(B, F) - hermitian_pair(E, L) + hermitian_pair(E, F)
        )
        s12 = observable_sD1D2(self.net).operator
        self.assertTrue(s12.is_close(expected, 1e-14))
        self.assertEqual(len(s12.terms), 8)
        self.assertTrue(s12.is_self_adjoint())

    def test_s_d3d4_is_anti_self_adjoint(self):
        s34 = observable_sD3D4(self.net).operator
        self.assertTrue(adjoint(s34).is_close(-s34, 1e-14))

    def test_detector_differences(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            gamma, beta = random_gamma(rng), complex(*rng.normal(size=2))
            states = eight_port_states(HomodyneConfig.single(gamma), ModeState.coherent(beta))
            s12 = observable_sD1D2(self.net).evaluate(states)
            s34 = observable_sD3D4(self.net).evaluate(states)
            self.assertAlmostEqual(s12, gamma.conjugate() * beta + gamma * beta.conjugate(), delta=1e-10)
            self.assertAlmostEqual(s34, gamma.conjugate() * beta - gamma * beta.conjugate(), delta=1e-10)

    def test_recovery_example(self):
        config = HomodyneConfig.single(3)
        t_plus, t_minus = recover_b(self.net, config)
        states = eight_port_states(config, ModeState.coherent(0.7 - 0.2j))
        self.assertAlmostEqual(t_plus.evaluate(states), 0.7 - 0.2j, delta=1e-12)
        self.assertAlmostEqual(t_minus.evaluate(states), 0.7 + 0.2j, delta=1e-12)

    def test_recovery_of_vacuum(self):
        config = HomodyneConfig.single(1j)
        t_plus, _ = recover_b(self.net, config)
        self.assertEqual(t_plus.evaluate(eight_port_states(config, ModeState.vacuum())), 0)

    def test_recovery_on_random_gaussian_states(self):
        rng = np.random.default_rng(100)
        for _ in range(100):
            gamma = rng.uniform(0.5, 10) * np.exp(1j * rng.uniform(0, 2 * pi))
            config = HomodyneConfig.single(complex(gamma))
            signal = random_gaussian(rng)
            states = eight_port_states(config, signal)
            t_plus, t_minus = recover_b(self.net, config)
            value = t_plus.evaluate(states)
            self.assertAlmostEqual(value, signal.mean, delta=1e-10)
            self.assertAlmostEqual(t_minus.evaluate(states), value.conjugate(), delta=1e-10)

    def test_t_minus_is_adjoint_of_t_plus(self):
        t_plus, t_minus = recover_b(self.net, HomodyneConfig.single(0.4 + 1.3j))
        self.assertTrue(adjoint(t_plus.operator).is_close(t_minus.operator, 1e-12))

    def test_degenerate_local_oscillator(self):
        with self.assertRaises(DegenerateLocalOscillatorError):
            recover_b(self.net, HomodyneConfig.single(0))

    def test_phase_of_rotator_matters(self):
        # при φ = 0 пара D3-D4 повторяет D1-D2 и ⟨b⟩ не восстанавливается
        net = build_eight_port(0.0)
        config = HomodyneConfig.single(1)
        t_plus, _ = recover_b(net, config)
        states = eight_port_states(config, ModeState.coherent(1j))
        self.assertNotAlmostEqual(t_plus.evaluate(states), 1j, delta=1e-3)


class PostProcessedObservableTest(SimpleTestCase):
    """
    Арифметика наблюдаемых с постобработкой.
    """

    def test_terms_merge(self):
        net = build_balanced_homodyne()
        s = observable_s(net)
        doubled = s + s
        self.assertEqual(doubled.coefficients(), {('D1', NONE): 2, ('D2', NONE): -2})
        self.assertEqual((s - s).terms, ())

    def test_scale_and_divide(self):
        s = observable_s(build_balanced_homodyne())
        self.assertEqual((s * 2j / 2).coefficients(), {('D1', NONE): 1j, ('D2', NONE): -1j})

    def test_networks_must_match(self):
        with self.assertRaises(TopologyError):
            observable_s(build_balanced_homodyne()) + observable_sD1D2(build_eight_port())

    def test_operator_matches_combination(self):
        net = build_eight_port()
        observable = PostProcessedObservable.difference(net, 'D1', 'D3', 0.5)
        config = HomodyneConfig.single(1.5)
        states = eight_port_states(config, ModeState.coherent(0.3 + 0.8j))
        counts = {
            (name, NONE): expectation(detector_operator(net, name), states) for name in net.detector_names
        }
        self.assertAlmostEqual(observable.combine(counts), observable.evaluate(states), delta=1e-12)
        self.assertIn('D3', repr(observable))


class TwoPhotonTest(SimpleTestCase):
    """
    Квадратуры боковых частот и наблюдаемая t_θ.
    """

    def setUp(self):
        self.net = build_eight_port()

    def test_quadrature_expansion(self):
        quadratures = sideband_quadratures(HomodyneConfig(theta=0))
        b_plus, b_minus = ModeId('b', Sideband.PLUS), ModeId('b', Sideband.MINUS)
        self.assertAlmostEqual(quadratures.b1.coefficient((), (b_plus,)), 1 / sqrt(2), delta=1e-15)
        self.assertAlmostEqual(quadratures.b1.coefficient((b_minus,), ()), 1 / sqrt(2), delta=1e-15)
        self.assertTrue(quadratures.b_theta.is_close(quadratures.b1, 1e-15))

    def test_quadrature_at_right_angle(self):
        quadratures = sideband_quadratures(HomodyneConfig(theta=pi / 2))
        self.assertTrue(quadratures.b_theta.is_close(quadratures.b2, 1e-15))

    def test_t_theta_example(self):
        config = HomodyneConfig.from_theta(2, 0)
        states = two_photon_states(config, ModeState.coherent(0.3 + 0.1j), ModeState.coherent(-0.5j))
        expected = ((0.3 + 0.1j) + (0.5j)) / sqrt(2)
        self.assertAlmostEqual(observable_t_theta(self.net, config).evaluate(states), expected, delta=1e-12)

    def test_t_theta_vacuum(self):
        config = HomodyneConfig.from_theta(1, 0.4)
        states = two_photon_states(config, ModeState.vacuum(), ModeState.vacuum())
        self.assertAlmostEqual(observable_t_theta(self.net, config).evaluate(states), 0, delta=1e-15)

    def test_t_theta_tracks_quadrature(self):
        rng = np.random.default_rng(64)
        for theta in np.linspace(0, 2 * pi, 64, endpoint=False):
            config = HomodyneConfig.from_theta(rng.uniform(0.5, 3), theta)
            states = two_photon_states(config, random_gaussian(rng), random_gaussian(rng))
            value = observable_t_theta(self.net, config).evaluate(states)
            quadrature = expectation(sideband_quadratures(config).b_theta, states)
            self.assertAlmostEqual(value, quadrature, delta=1e-9)

    def test_t_theta_with_unequal_amplitudes(self):
        config = HomodyneConfig(0.5 * np.exp(0.3j), 2 * np.exp(0.3j), 0.3)
        states = two_photon_states(config, ModeState.coherent(1), ModeState.coherent(1j))
        quadrature = expectation(sideband_quadratures(config).b_theta, states)
        self.assertAlmostEqual(observable_t_theta(self.net, config).evaluate(states), quadrature, delta=1e-12)

    def test_phase_mismatch(self):
        with self.assertRaises(PhaseMismatchError):
            observable_t_theta(self.net, HomodyneConfig(1, 1j, 0))

    def test_zero_sideband_amplitude(self):
        with self.assertRaises(DegenerateLocalOscillatorError):
            observable_t_theta(self.net, HomodyneConfig(1, 0, 0))


class AccessibilityTest(SimpleTestCase):
    """
    Недоступность квадратур для обычного балансного гомодина.
    """

    def test_equal_amplitudes(self):
        decision = check_quadrature_accessibility(1, 1)
        self.assertFalse(decision.accessible)
        self.assertEqual(decision.label, 'inaccessible')
        self.assertAlmostEqual(decision.determinant, 2, delta=1e-15)

    def test_complex_amplitudes(self):
        gamma_plus, gamma_minus = 1j, 2 * np.exp(1j * pi / 3)
        decision = check_quadrature_accessibility(gamma_plus, gamma_minus)
        self.assertFalse(decision.accessible)
        self.assertAlmostEqual(decision.determinant, 2 * gamma_plus * np.conj(gamma_minus), delta=1e-12)

    def test_random_amplitudes_never_accessible(self):
        rng = np.random.default_rng(1000)
        for _ in range(1000):
            gamma_plus, gamma_minus = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
            decision = check_quadrature_accessibility(gamma_plus, gamma_minus)
            self.assertFalse(decision.accessible)
            self.assertAlmostEqual(
                decision.determinant, 2 * gamma_plus * gamma_minus.conjugate(),
                delta=1e-12 * (1 + abs(gamma_plus) * abs(gamma_minus)),
            )

    def test_zero_amplitude(self):
        with self.assertRaises(DegenerateLocalOscillatorError):
            check_quadrature_accessibility(0, 1)


class SidebandCombinationTest(SimpleTestCase):
    """
    Разложение α s₊ + β s₋ по квадратурам.
    """

    def test_expansion_matches_direct_evaluation(self):
        rng = np.random.default_rng(12)
        net = build_balanced_homodyne()
        for _ in range(30):
            config = HomodyneConfig(random_gamma(rng), random_gamma(rng), 0)
            s_plus, s_minus = balanced_sideband_observables(net, config)
            states = two_photon_states(config, random_gaussian(rng), random_gaussian(rng))
            alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
            direct, via_quadratures = evaluate_sideband_combination(alpha, beta, s_plus, s_minus, config, states)
            self.assertAlmostEqual(direct, via_quadratures, delta=1e-9)

    def test_coefficients(self):
        combination = sideband_combination(1, 1, 1, 1)
        self.assertEqual(combination.b1, 2)
        self.assertEqual(combination.b2, 0)
        self.assertEqual(combination.b1_dagger, 2)
        self.assertEqual(combination.b2_dagger, 0)


class CommutationTest(SimpleTestCase):
    """
    Моды источников независимы.
    """

    def test_eight_port_sources(self):
        table = commutation_table(build_eight_port())
        self.assertEqual(len(table), 8 * 7)
        self.assertEqual(table[('b', 'b†')], OperatorPoly.constant(1))
        self.assertEqual(table[('b†', 'b')], OperatorPoly.constant(-1))
        for (x, y), value in table.items():
            if x.rstrip('†') != y.rstrip('†'):
                self.assertTrue(value.is_zero(), f"[{x}, {y}] = {value}")
