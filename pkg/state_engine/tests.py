"""
Тесты средних нормально упорядоченных полиномов в гауссовых состояниях.
"""
from math import sqrt

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import MixedSidebandError, UnassignedModeError, UnphysicalStateError
from fock_oracle.oracle import minimal_cutoff, oracle_expectation
from fock_oracle.spaces import FockConfig
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly, adjoint

from .expectation import central_moment, expectation, mean_amplitude, mode_moment
from .states import ModeState, StateAssignment

B = ModeId('b')
L = ModeId('l_i')

CROSS = OperatorPoly({((L,), (B,)): 1, ((B,), (L,)): 1})


def pure_gaussian(rng, mean_scale=0.6, max_n_ex=0.25):
    """Случайное чистое сжатое смещенное состояние."""
    n_ex = rng.uniform(0, max_n_ex)
    phase = rng.uniform(0, 2 * np.pi)
    mean = complex(*(mean_scale * rng.normal(size=2)))
    return ModeState.gaussian(mean, n_ex, -np.exp(1j * phase) * sqrt(n_ex * (n_ex + 1)))


class ExpectationTest(SimpleTestCase):
    """
    Тесты точных средних.
    """

    def test_cross_term_for_coherent_states(self):
        states = StateAssignment({B: ModeState.coherent(1 + 1j), L: ModeState.coherent(2)})
        value = expectation(CROSS, states)
        self.assertAlmostEqual(value, 4.0, delta=1e-12)

    def test_vacuum_kills_normal_ordered_monomials(self):
        p = OperatorPoly({((B,), (L,)): 3, ((), (B, B)): 1j, ((B, L), (L,)): 2})
        states = StateAssignment({L: ModeState.coherent(1.5)})
        self.assertEqual(expectation(p, states), 0)

    def test_number_operator_in_gaussian_state(self):
        state = ModeState.gaussian(0.3 - 1.2j, 0.4, 0.1j)
        value = expectation(OperatorPoly.number(B), StateAssignment({B: state}))
        self.assertAlmostEqual(value, abs(0.3 - 1.2j) ** 2 + 0.4, delta=1e-12)

    def test_constant(self):
        self.assertEqual(expectation(OperatorPoly.constant(2.5), StateAssignment()), 2.5)

    def test_anomalous_moment(self):
        state = ModeState.gaussian(0, 0.5, 0.3 + 0.2j)
        squared = OperatorPoly({((), (B, B)): 1})
        self.assertAlmostEqual(expectation(squared, StateAssignment({B: state})), 0.3 + 0.2j, delta=1e-12)

    def test_wick_fourth_moment(self):
        # ⟨Δb†Δb†ΔbΔb⟩ = |m|² + 2n²
        self.assertAlmostEqual(central_moment(2, 2, 0.5, 0.3 + 0.4j), 0.25 + 0.5, delta=1e-12)
        self.assertEqual(central_moment(1, 2, 0.5, 0.3j), 0)

    def test_coherent_moment(self):
        self.assertAlmostEqual(mode_moment(ModeState.coherent(2j), 2, 1), (-2j) ** 2 * 2j, delta=1e-12)


class ExpectationPropertiesTest(SimpleTestCase):
    """
    Линейность, сопряжение и положительность на случайных состояниях.
    """

    def setUp(self):
        self.rng = np.random.default_rng(42)

    def random_assignment(self):
        return StateAssignment({
            B: ModeState.gaussian(complex(*self.rng.normal(size=2)), 0.3, 0.2 * np.exp(1j * self.rng.uniform(0, 6))),
            L: ModeState.coherent(complex(*self.rng.normal(size=2))),
        })

    def test_linearity(self):
        p = OperatorPoly.number(B) + CROSS * 1j
        q = OperatorPoly({((B, L), (B,)): 0.5, ((), ()): 1})
        for _ in range(20):
            states = self.random_assignment()
            alpha, beta = complex(*self.rng.normal(size=2)), complex(*self.rng.normal(size=2))
            left = expectation(alpha * p + beta * q, states)
            right = alpha * expectation(p, states) + beta * expectation(q, states)
            self.assertAlmostEqual(left, right, delta=1e-10)

    def test_adjoint_gives_conjugate(self):
        p = OperatorPoly({((B,), (L, L)): 1 + 2j, ((), (B,)): -0.5, ((B, B), ()): 3j})
        for _ in range(20):
            states = self.random_assignment()
            self.assertAlmostEqual(expectation(adjoint(p), states), expectation(p, states).conjugate(), delta=1e-10)

    def test_positivity_of_p_dagger_p(self):
        p = OperatorPoly({((), (B,)): 1, ((), (L,)): 2j, ((), ()): -0.3})
        for _ in range(20):
            value = expectation(adjoint(p) * p, self.random_assignment())
            self.assertGreaterEqual(value.real, -1e-12)
            self.assertAlmostEqual(value.imag, 0, delta=1e-12)


class OracleAgreementTest(SimpleTestCase):
    """
    Совпадение с прямым расчетом в усеченном фоковском базисе
    для чистых гауссовых состояний.
    """

    def test_single_mode_moments(self):
        rng = np.random.default_rng(5)
        monomials = [((B,), (B,)), ((), (B, B)), ((B, B), (B,)), ((B, B), (B, B)), ((B,), (B, B, B))]
        for _ in range(10):
            states = StateAssignment({B: pure_gaussian(rng)})
            config = FockConfig(minimal_cutoff(states, (B,)) + 6, (B,))
            for signature in monomials:
                p = OperatorPoly({signature: 1})
                self.assertAlmostEqual(
                    expectation(p, states), oracle_expectation(p, states, config), delta=1e-8,
                )

    def test_two_mode_polynomial(self):
        rng = np.random.default_rng(9)
        p = CROSS + OperatorPoly({((B, L), (B, L)): 0.5, ((L,), (B, B)): 1j})
        for _ in range(5):
            states = StateAssignment({B: pure_gaussian(rng, 0.4, 0.1), L: ModeState.coherent(complex(*rng.normal(size=2)) * 0.3)})
            config = FockConfig(minimal_cutoff(states, (B, L)) + 4, (B, L))
            self.assertAlmostEqual(expectation(p, states), oracle_expectation(p, states, config), delta=1e-8)

    def test_cross_term_example(self):
        states = StateAssignment({B: ModeState.coherent(1 + 1j), L: ModeState.coherent(2)})
        value = oracle_expectation(CROSS, states, FockConfig(30, (B, L)))
        self.assertAlmostEqual(value, 4.0, delta=1e-9)


class StateErrorsTest(SimpleTestCase):
    """
    Тесты ошибок задания состояний.
    """

    def test_unassigned_mode_in_strict_assignment(self):
        states = StateAssignment({B: ModeState.coherent(1)}, default=None)
        with self.assertRaises(UnassignedModeError):
            expectation(CROSS, states)

    def test_unphysical_gaussian(self):
        states = StateAssignment({B: ModeState.gaussian(0, 0.1, 0.5)})
        with self.assertRaises(UnphysicalStateError):
            expectation(OperatorPoly.number(B), states)

    def test_negative_n_ex(self):
        with self.assertRaises(UnphysicalStateError):
            ModeState.gaussian(0, -0.1).validate()

    def test_mixed_sideband_regimes(self):
        with self.assertRaises(MixedSidebandError):
            StateAssignment({B: ModeState.coherent(1), B.at(Sideband.PLUS): ModeState.vacuum()})
        two_photon = StateAssignment({B.at(Sideband.PLUS): ModeState.vacuum(), L.at(Sideband.MINUS): ModeState.coherent(1)})
        with self.assertRaises(MixedSidebandError):
            two_photon.with_states({L: ModeState.coherent(1)})

    def test_mean_amplitude(self):
        states = StateAssignment({B: ModeState.coherent(0.5j), L: ModeState.gaussian(1 - 1j, 0.2)})
        self.assertEqual(mean_amplitude(states, B), 0.5j)
        self.assertEqual(mean_amplitude(states, L), 1 - 1j)
        self.assertEqual(mean_amplitude(states, 'e_i'), 0)
