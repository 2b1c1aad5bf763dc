"""
Развертки по параметрам.

Функции точек объявлены на уровне модуля, чтобы их можно было
передавать в ProcessPoolExecutor; порядок результатов всегда совпадает
с порядком точек.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from core.conf import get_setting
from homodyne_schemes.builders import build_eight_port, two_photon_states
from homodyne_schemes.observables import HomodyneConfig
from noise_spectra.spectra import t_theta_noise

logger = logging.getLogger(__name__)


def grid(minimum, maximum, steps):
    """
    Равномерная сетка из steps точек от minimum до maximum включительно.
    """
    if steps < 1:
        raise ValueError(f"Число точек должно быть не меньше 1, получено {steps}")
    if minimum > maximum:
        raise ValueError(f"Начало диапазона {minimum} больше конца {maximum}")
    if steps == 1:
        return np.array([float(minimum)])
    return np.linspace(minimum, maximum, steps)


def theta_point(theta, amplitude=1.0, signal_plus=None, signal_minus=None, frequency=0.0):
    """
    Шум t_θ в точке θ при γ± = |γ|e^{iθ}.
    """
    config = HomodyneConfig.from_theta(amplitude, theta)
    assignment = two_photon_states(config, signal_plus, signal_minus)
    return t_theta_noise(build_eight_port(), config, assignment, frequency)


def run_sweep(function, points, workers=None):
    """
    Вычисляет function во всех точках, при workers > 1 - в пуле процессов.
    """
    workers = workers or get_setting('SWEEP_WORKERS')
    points = list(points)
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(function, points))
    else:
        results = [function(point) for point in points]
    logger.info(f"Развертка: {len(points)} точек, процессов {max(1, workers)}")
    return results


def theta_sweep(thetas, amplitude=1.0, signal_plus=None, signal_minus=None, workers=None):
    function = partial(theta_point, amplitude=amplitude, signal_plus=signal_plus, signal_minus=signal_minus)
    return run_sweep(function, thetas, workers)
