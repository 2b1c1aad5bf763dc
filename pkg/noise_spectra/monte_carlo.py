"""
Моделирование счета фотонов для когерентных входов.

Линейная схема переводит произведение когерентных состояний в
произведение когерентных состояний на выходах, поэтому отсчеты
детекторов независимы и распределены по Пуассону со средним |α_d|².
"""
import logging
from dataclasses import dataclass
from math import sqrt

import numpy as np

from core.conf import get_setting
from core.exceptions import MonteCarloError
from mode_algebra.modes import ModeId, Sideband
from network_model.networks import transfer_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DetectorStatistics:
    detector: str
    expected: float
    mean: float
    variance: float


@dataclass(frozen=True)
class ObservableEstimate:
    name: str
    estimate: complex
    standard_error: float


@dataclass(frozen=True)
class MonteCarloResult:
    shots: int
    seed: int
    detectors: tuple
    estimates: tuple = ()

    def detector(self, name):
        for statistics in self.detectors:
            if statistics.detector == name:
                return statistics
        raise KeyError(name)

    def estimate(self, name):
        for estimate in self.estimates:
            if estimate.name == name:
                return estimate
        raise KeyError(name)


def output_amplitudes(net, assignment, sideband=Sideband.NONE):
    """
    Когерентные амплитуды на портах детекторов.

    Raises:
        MonteCarloError: среди источников есть некогерентное состояние
    """
    amplitudes = []
    for label in net.source_labels:
        state = assignment.state(ModeId(label, Sideband(sideband)))
        if not state.is_coherent:
            raise MonteCarloError(f"Источник {label}: моделирование допускает только когерентные состояния")
        amplitudes.append(state.mean)
    return transfer_matrix(net, sideband) @ np.array(amplitudes, dtype=complex)


def _batches(shots, batch_size):
    full, rest = divmod(shots, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def mc_counts(net, assignment, shots, seed=None, observables=(), batch_size=None):
    """
    Выборочные средние и дисперсии отсчетов детекторов и оценки
    наблюдаемых Σ c_d ⟨n_d⟩ со стандартной ошибкой sqrt(Σ|c_d|² var_d / shots).

    Каждому детектору и каждому пакету выстрелов соответствует свой
    поток Philox из SeedSequence(seed), так что результат определяется
    только seed и не зависит от порядка обработки пакетов.
    Без seed берется случайная энтропия; она сохраняется в результате.
    """
    if not isinstance(shots, (int, np.integer)) or shots <= 0:
        raise MonteCarloError(f"Число выстрелов должно быть положительным, получено {shots}")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)
    batch_size = batch_size or get_setting('MC_BATCH_SIZE')
    means = np.abs(output_amplitudes(net, assignment)) ** 2
    sizes = _batches(int(shots), int(batch_size))

    statistics = []
    for detector, lam, stream in zip(net.detectors, means, np.random.SeedSequence(seed).spawn(len(net.detectors))):
        total = 0.0
        total_squares = 0.0
        for size, child in zip(sizes, stream.spawn(len(sizes))):
            counts = np.random.Generator(np.random.Philox(child)).poisson(lam, size=size).astype(float)
            total += counts.sum()
            total_squares += np.square(counts).sum()
        mean = total / shots
        variance = (total_squares - shots * mean ** 2) / (shots - 1) if shots > 1 else 0.0
        statistics.append(DetectorStatistics(detector.name, float(lam), mean, max(variance, 0.0)))

    by_name = {item.detector: item for item in statistics}
    estimates = []
    for observable in observables:
        estimate = 0j
        error = 0.0
        for term in observable.terms:
            item = by_name[term.detector]
            estimate += term.coeff * item.mean
            error += abs(term.coeff) ** 2 * item.variance
        estimates.append(ObservableEstimate(observable.name, estimate, sqrt(error / shots)))

    logger.info(f"Моделирование счета: {shots} выстрелов, {len(sizes)} пакет(ов), seed={seed}")
    return MonteCarloResult(int(shots), seed, tuple(statistics), tuple(estimates))
