"""
Тесты спектральных плотностей шума, пересчета к сигналу и
моделирования счета фотонов.
"""
import os
import tempfile
from math import pi, sqrt

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import (
    AmplitudeMismatchError, MonteCarloError, NonZeroMeanError, PreconditionError, ResponseNullError,
)
from homodyne_schemes.builders import build_balanced_homodyne, build_eight_port, eight_port_states, two_photon_states
from homodyne_schemes.observables import HomodyneConfig, observable_s
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly
from state_engine.states import ModeState, StateAssignment

from .monte_carlo import mc_counts, output_amplitudes
from .referral import ResponseModel, referred_sweep, signal_referred
from .spectra import NoiseOperator, SpectralDensityResult, eight_port_noise, spectral_density, t_theta_noise

B = ModeId('b')
L = ModeId('l_i')


def random_gaussian(rng):
    n_ex = rng.uniform(0, 2)
    m_anom = rng.uniform(0, sqrt(n_ex * (n_ex + 1))) * np.exp(1j * rng.uniform(0, 2 * pi))
    return ModeState.gaussian(complex(*rng.normal(size=2)), n_ex, m_anom)


class SpectralDensityTest(SimpleTestCase):
    """
    Тесты симметризованного второго момента.
    """

    def test_vacuum_mode(self):
        self.assertAlmostEqual(spectral_density(OperatorPoly.annihilator(B), StateAssignment()), 1.0, delta=1e-15)

    def test_thermal_like_gaussian(self):
        states = StateAssignment({B: ModeState.gaussian(0, 0.3)})
        self.assertAlmostEqual(spectral_density(OperatorPoly.annihilator(B), states), 1.6, delta=1e-12)

    def test_zero_operator(self):
        self.assertEqual(spectral_density(OperatorPoly(), StateAssignment()), 0)

    def test_nonzero_mean_rejected(self):
        states = StateAssignment({B: ModeState.coherent(1)})
        with self.assertRaises(NonZeroMeanError):
            spectral_density(OperatorPoly.annihilator(B), states)

    def test_noise_operator_removes_mean(self):
        states = StateAssignment({B: ModeState.gaussian(2 - 1j, 0.5, 0.2j)})
        noise = NoiseOperator.from_operator(OperatorPoly.annihilator(B), states)
        self.assertAlmostEqual(noise.mean, 2 - 1j, delta=1e-15)
        self.assertEqual(noise.name, 'Q')
        self.assertAlmostEqual(spectral_density(noise, states), 2.0, delta=1e-12)


class EightPortNoiseTest(SimpleTestCase):
    """
    S_t = S_b + 2⟨n_b⟩/|γ|² + 1 для восстановленной амплитуды.
    """

    def setUp(self):
        self.net = build_eight_port()

    def test_vacuum_signal(self):
        config = HomodyneConfig.single(2.5)
        result = eight_port_noise(self.net, config, eight_port_states(config, ModeState.vacuum()))
        self.assertAlmostEqual(result.intrinsic, 1.0, delta=1e-12)
        self.assertAlmostEqual(result.photon_penalty, 0.0, delta=1e-12)
        self.assertEqual(result.vacuum_floor, 1.0)
        self.assertAlmostEqual(result.total, 2.0, delta=1e-12)
        self.assertAlmostEqual(result.direct, 2.0, delta=1e-10)
        self.assertAlmostEqual(result.companion, 2.0, delta=1e-10)

    def test_coherent_signal(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            gamma, beta = rng.uniform(0.5, 3) * np.exp(1j * rng.uniform(0, 2 * pi)), complex(*rng.normal(size=2))
            config = HomodyneConfig.single(gamma)
            result = eight_port_noise(self.net, config, eight_port_states(config, ModeState.coherent(beta)))
            self.assertAlmostEqual(result.total, 2 + 2 * abs(beta) ** 2 / abs(gamma) ** 2, delta=1e-9)

    def test_random_gaussian_states(self):
        rng = np.random.default_rng(200)
        for _ in range(200):
            config = HomodyneConfig.single(rng.uniform(0.5, 3) * np.exp(1j * rng.uniform(0, 2 * pi)))
            signal = random_gaussian(rng)
            result = eight_port_noise(self.net, config, eight_port_states(config, signal))
            self.assertAlmostEqual(result.intrinsic, 2 * signal.n_ex + 1, delta=1e-10)
            self.assertAlmostEqual(result.direct, result.total, delta=1e-10)

    def test_strong_oscillator_suppresses_penalty(self):
        signal = ModeState.coherent(1)
        penalties = [
            eight_port_noise(self.net, config, eight_port_states(config, signal)).photon_penalty
            for config in (HomodyneConfig.single(gamma) for gamma in (1, 10, 1000))
        ]
        self.assertEqual(penalties, sorted(penalties, reverse=True))
        self.assertLess(penalties[-1], 1e-5)

    def test_sideband_analysis(self):
        config = HomodyneConfig.single(1.5)
        states = eight_port_states(config, ModeState.coherent(0.5), sideband=Sideband.PLUS)
        result = eight_port_noise(self.net, config, states, frequency=100.0, sideband=Sideband.PLUS)
        self.assertAlmostEqual(result.total, 2 + 2 * 0.25 / 2.25, delta=1e-10)
        self.assertEqual(result.frequency, 100.0)

    def test_oscillator_must_match_config(self):
        config = HomodyneConfig.single(1)
        states = eight_port_states(config, ModeState.vacuum()).with_states({L: ModeState.coherent(2)})
        with self.assertRaises(PreconditionError):
            eight_port_noise(self.net, config, states)

    def test_vacuum_ports_required(self):
        config = HomodyneConfig.single(1)
        states = eight_port_states(config).with_states({'e_i': ModeState.coherent(0.1)})
        with self.assertRaises(PreconditionError):
            eight_port_noise(self.net, config, states)


class TwoPhotonNoiseTest(SimpleTestCase):
    """
    Шум t_θ: S_{b_θ} + (⟨n₊⟩ + ⟨n₋⟩)/|γ|² + 1.
    """

    def setUp(self):
        self.net = build_eight_port()

    def test_vacuum_sidebands(self):
        for theta in np.linspace(0, 2 * pi, 8):
            config = HomodyneConfig.from_theta(1.3, theta)
            result = t_theta_noise(self.net, config, two_photon_states(config))
            self.assertAlmostEqual(result.total, 2.0, delta=1e-10)

    def test_coherent_sidebands(self):
        config = HomodyneConfig.from_theta(2, 0.7)
        states = two_photon_states(config, ModeState.coherent(1 + 1j), ModeState.coherent(0.5))
        result = t_theta_noise(self.net, config, states)
        self.assertAlmostEqual(result.total, 2 + (2 + 0.25) / 4, delta=1e-10)

    def test_squeezed_sidebands(self):
        rng = np.random.default_rng(33)
        for _ in range(200):
            config = HomodyneConfig.from_theta(rng.uniform(0.5, 3), rng.uniform(0, 2 * pi))
            states = two_photon_states(config, random_gaussian(rng), random_gaussian(rng))
            result = t_theta_noise(self.net, config, states)
            self.assertAlmostEqual(result.direct, result.total, delta=1e-10)

    def test_amplitude_mismatch(self):
        with self.assertRaises(AmplitudeMismatchError):
            t_theta_noise(self.net, HomodyneConfig(1, 2, 0), two_photon_states(HomodyneConfig(1, 2, 0)))


class ReferralTest(SimpleTestCase):
    """
    Пересчет шума к сигналу.
    """

    def test_penalty_divided_by_response(self):
        noise = SpectralDensityResult(intrinsic=1.0, photon_penalty=1.0, vacuum_floor=1.0, direct=3.0)
        referred = signal_referred(noise, ResponseModel.constant(10, s_hn=0.5), 1.0)
        self.assertAlmostEqual(referred.penalty, 0.02, delta=1e-15)
        self.assertAlmostEqual(referred.intrinsic, 0.01, delta=1e-15)
        self.assertAlmostEqual(referred.total, 0.53, delta=1e-15)

    def test_vacuum_with_unit_response(self):
        net = build_eight_port()
        config = HomodyneConfig.from_theta(1, 0)
        noise = t_theta_noise(net, config, two_photon_states(config))
        self.assertAlmostEqual(signal_referred(noise, ResponseModel.constant(1), 0.0).total, 2.0, delta=1e-10)

    def test_large_response_leaves_operator_noise(self):
        noise = SpectralDensityResult(intrinsic=1.0, photon_penalty=0.5, vacuum_floor=1.0, direct=2.5)
        referred = signal_referred(noise, ResponseModel.constant(1e6, s_hn=0.3), 5.0)
        self.assertAlmostEqual(referred.total, 0.3, delta=1e-11)

    def test_response_null(self):
        noise = SpectralDensityResult(1.0, 0.0, 1.0, 2.0)
        with self.assertRaises(ResponseNullError):
            signal_referred(noise, ResponseModel.constant(0), 1.0)

    def test_slope_for_linear_response(self):
        noise = SpectralDensityResult(1.0, 0.0, 1.0, 2.0)
        frequencies = np.logspace(0, 3, 16)
        rows = referred_sweep(noise, ResponseModel(lambda omega: omega), frequencies)
        slope = np.polyfit(np.log(frequencies), np.log([row.total for row in rows]), 1)[0]
        self.assertAlmostEqual(slope, -2.0, delta=1e-9)

    def test_sweep_with_frequency_dependent_noise(self):
        rows = referred_sweep(
            lambda omega: SpectralDensityResult(1.0, 0.0, 1.0, 2.0, frequency=omega),
            ResponseModel.constant(2), [1.0, 2.0],
        )
        self.assertEqual([row.frequency for row in rows], [1.0, 2.0])
        self.assertAlmostEqual(rows[0].total, 0.5, delta=1e-15)

    def test_table_interpolation(self):
        model = ResponseModel.from_table([2.0, 0.0], [4.0, 0.0], [0.0, 2.0], [1.0, 3.0])
        self.assertAlmostEqual(model.R(1.0), 2 + 1j, delta=1e-15)
        self.assertAlmostEqual(model.S_hn(1.0), 2.0, delta=1e-15)
        self.assertAlmostEqual(model.R(5.0), 4.0, delta=1e-15)
        self.assertEqual(model.frequencies, (0.0, 2.0))

    def test_csv_table(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'response.csv')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write("omega,re,im,s_hn\n# калибровка\n1,1,0,0.5\n3,3,0,0.5\n")
            model = ResponseModel.from_csv(path)
        self.assertAlmostEqual(model.R(2.0), 2.0, delta=1e-15)
        self.assertEqual(model.S_hn(2.0), 0.5)

    def test_empty_csv_table(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'empty.csv')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write("omega,re,im,s_hn\n")
            with self.assertRaises(ValueError):
                ResponseModel.from_csv(path)


class MonteCarloTest(SimpleTestCase):
    """
    Моделирование счета фотонов.
    """

    def setUp(self):
        self.net = build_balanced_homodyne()
        self.states = StateAssignment({B: ModeState.coherent(1), L: ModeState.coherent(3)})

    def test_output_amplitudes(self):
        amplitudes = output_amplitudes(self.net, self.states)
        np.testing.assert_allclose(np.abs(amplitudes) ** 2, [8, 2], atol=1e-12)

    def test_balanced_estimate(self):
        result = mc_counts(self.net, self.states, 10 ** 6, seed=2024, observables=[observable_s(self.net)])
        estimate = result.estimate('s')
        self.assertLess(abs(estimate.estimate - 6.0), 5 * estimate.standard_error)
        self.assertAlmostEqual(estimate.standard_error, sqrt(10 / 10 ** 6), delta=1e-4)
        self.assertAlmostEqual(result.detector('D1').expected, 8.0, delta=1e-12)

    def test_random_coherent_configurations(self):
        rng = np.random.default_rng(404)
        observable = observable_s(self.net)
        for index in range(10):
            states = StateAssignment({
                B: ModeState.coherent(complex(*rng.normal(size=2))),
                L: ModeState.coherent(complex(*(2 * rng.normal(size=2)))),
            })
            result = mc_counts(self.net, states, 10 ** 6, seed=index, observables=[observable])
            estimate = result.estimate('s')
            self.assertLess(abs(estimate.estimate - observable.evaluate(states)), 5 * estimate.standard_error)

    def test_error_shrinks_as_inverse_root_of_shots(self):
        observable = observable_s(self.net)
        exact = observable.evaluate(self.states)
        errors = []
        for shots in (10 ** 4, 10 ** 6):
            estimate = mc_counts(self.net, self.states, shots, seed=11, observables=[observable]).estimate('s')
            self.assertLess(abs(estimate.estimate - exact), 5 * estimate.standard_error)
            errors.append(estimate.standard_error)
        self.assertAlmostEqual(errors[0] / errors[1], 10.0, delta=0.5)

    def test_seed_is_recorded(self):
        result = mc_counts(self.net, self.states, 1000)
        self.assertIsInstance(result.seed, int)
        self.assertEqual(mc_counts(self.net, self.states, 1000, seed=result.seed), result)

    def test_zero_shots(self):
        with self.assertRaises(MonteCarloError):
            mc_counts(self.net, self.states, 0, seed=1)

    def test_vacuum_gives_no_counts(self):
        result = mc_counts(self.net, StateAssignment(), 1000, seed=5)
        for statistics in result.detectors:
            self.assertEqual(statistics.mean, 0)
            self.assertEqual(statistics.variance, 0)

    def test_same_seed_same_result(self):
        first = mc_counts(self.net, self.states, 5000, seed=77, batch_size=1000)
        second = mc_counts(self.net, self.states, 5000, seed=77, batch_size=1000)
        other = mc_counts(self.net, self.states, 5000, seed=78, batch_size=1000)
        self.assertEqual(first, second)
        self.assertNotEqual(first, other)

    def test_non_coherent_source(self):
        states = self.states.with_states({B: ModeState.gaussian(0, 0.5)})
        with self.assertRaises(MonteCarloError):
            mc_counts(self.net, states, 10, seed=1)

    def test_unknown_detector(self):
        result = mc_counts(self.net, self.states, 10, seed=1)
        with self.assertRaises(KeyError):
            result.detector('D9')
