"""
Пересчет шума к сигналу: деление на |R(Ω)|² функции отклика детектора.
"""
import csv
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from core.exceptions import ResponseNullError

logger = logging.getLogger(__name__)


def _zero(omega):
    return 0.0


@dataclass(frozen=True)
class ResponseModel:
    """
    Функция отклика R(Ω), спектральная плотность шумового оператора S_hn(Ω)
    и (необязательно) классический сигнал h(Ω).
    """
    response: Callable
    noise: Callable = _zero
    signal: Callable | None = None
    frequencies: tuple = ()

    @classmethod
    def constant(cls, response, s_hn=0.0):
        return cls(lambda omega: complex(response), lambda omega: float(s_hn))

    @classmethod
    def from_table(cls, frequencies, response_re, response_im, s_hn):
        """
        Табличная модель с линейной интерполяцией по Ω (за краями таблицы
        берутся крайние значения).
        """
        frequencies = np.asarray(frequencies, dtype=float)
        order = np.argsort(frequencies)
        frequencies = frequencies[order]
        response_re = np.asarray(response_re, dtype=float)[order]
        response_im = np.asarray(response_im, dtype=float)[order]
        s_hn = np.asarray(s_hn, dtype=float)[order]

        def response(omega):
            return complex(np.interp(omega, frequencies, response_re), np.interp(omega, frequencies, response_im))

        def noise(omega):
            return float(np.interp(omega, frequencies, s_hn))

        return cls(response, noise, frequencies=tuple(frequencies))

    @classmethod
    def from_csv(cls, path):
        """
        CSV со столбцами Ω, Re R, Im R, S_hn; строка заголовка и строки
        с '#' пропускаются.
        """
        rows = []
        with open(path, newline='', encoding='utf-8') as handle:
            for line_number, row in enumerate(csv.reader(handle), start=1):
                if not row or row[0].lstrip().startswith('#'):
                    continue
                try:
                    rows.append([float(value) for value in row[:4]])
                except ValueError:
                    if rows:
                        raise ValueError(f"{path}, строка {line_number}: нечисловое значение") from None
                    continue
                if len(rows[-1]) != 4:
                    raise ValueError(f"{path}, строка {line_number}: ожидается 4 столбца")
        if not rows:
            raise ValueError(f"{path}: таблица отклика пуста")
        table = np.array(rows)
        logger.info(f"Загружена таблица отклика {path}: {len(table)} точек")
        return cls.from_table(table[:, 0], table[:, 1], table[:, 2], table[:, 3])

    def R(self, omega):
        return complex(self.response(omega))

    def S_hn(self, omega):
        return float(self.noise(omega))


@dataclass(frozen=True)
class ReferredNoise:
    """
    S/|R|² = S_hn + intrinsic + penalty.
    """
    frequency: float
    s_hn: float
    intrinsic: float
    penalty: float
    response_modulus: float

    @property
    def total(self):
        return self.s_hn + self.intrinsic + self.penalty


def signal_referred(noise, model, omega):
    """
    Делит спектральную плотность на |R(Ω)|²: собственный шум состояния
    идет в intrinsic, фотонная добавка и вакуумный пол - в penalty.

    Raises:
        ResponseNullError: R(Ω) = 0
    """
    modulus = abs(model.R(omega))
    if modulus == 0:
        raise ResponseNullError(f"Функция отклика обращается в ноль при Ω={omega:g}")
    gain = 1 / modulus ** 2
    return ReferredNoise(
        frequency=float(omega),
        s_hn=model.S_hn(omega),
        intrinsic=noise.intrinsic * gain,
        penalty=(noise.photon_penalty + noise.vacuum_floor) * gain,
        response_modulus=modulus,
    )


def referred_sweep(noise, model, frequencies):
    """
    signal_referred на сетке частот. noise - SpectralDensityResult
    или функция Ω -> SpectralDensityResult.
    """
    rows = []
    for omega in frequencies:
        point = noise(omega) if callable(noise) else noise
        rows.append(signal_referred(point, model, omega))
    logger.info(f"Пересчет к сигналу выполнен для {len(rows)} частот")
    return rows
