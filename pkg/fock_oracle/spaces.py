"""
Усеченное фоковское пространство: конфигурация, лестничные операторы
и приготовление состояний.

Модуль намеренно не использует state_engine: состояния читаются только
через атрибуты kind/mean/n_ex/m_anom.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import asinh, sqrt

import numpy as np
import scipy.linalg
import scipy.sparse

from core.conf import get_setting
from core.exceptions import DimensionCeilingError, OracleError, TruncationTailError
from mode_algebra.modes import ModeId, parse_mode

logger = logging.getLogger(__name__)

# Запас уровней при численной экспоненте сжатия и смещения
PREPARATION_PADDING = 40

PURITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FockConfig:
    """
    cutoff - максимальное число фотонов в моде; modes - порядок
    тензорных сомножителей.
    """
    cutoff: int
    modes: tuple
    ceiling: int | None = None

    def __post_init__(self):
        if int(self.cutoff) < 2:
            raise ValueError(f"Усечение должно быть не меньше 2, получено {self.cutoff}")
        object.__setattr__(self, 'cutoff', int(self.cutoff))
        object.__setattr__(self, 'modes', tuple(
            mode if isinstance(mode, ModeId) else parse_mode(mode) for mode in self.modes
        ))
        if len(set(self.modes)) != len(self.modes):
            raise ValueError("Моды в FockConfig повторяются")

    @property
    def levels(self):
        return self.cutoff + 1

    @property
    def dimension(self):
        return self.levels ** len(self.modes)

    def check_dimension(self):
        ceiling = self.ceiling if self.ceiling is not None else get_setting('FOCK_DIMENSION_CEILING')
        if self.dimension > ceiling:
            raise DimensionCeilingError(
                f"Размерность {self.dimension} = {self.levels}^{len(self.modes)} превышает потолок {ceiling}"
            )
        return self

    def index(self, mode):
        mode = mode if isinstance(mode, ModeId) else parse_mode(mode)
        try:
            return self.modes.index(mode)
        except ValueError:
            raise OracleError(f"Мода {mode} отсутствует в FockConfig") from None


@dataclass(frozen=True, eq=False)
class FockState:
    """
    Вектор амплитуд в произведении фоковских базисов config.modes.
    """
    amplitudes: np.ndarray
    config: FockConfig

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amplitudes.size != self.config.dimension:
            raise OracleError(
                f"Длина вектора {amplitudes.size} не совпадает с размерностью {self.config.dimension}"
            )
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def basis(cls, config, occupations):
        """
        Фоковское состояние |n_1, n_2, ...⟩; occupations - {mode: n}.
        """
        vector = np.zeros(config.dimension, dtype=complex)
        digits = [0] * len(config.modes)
        for mode, count in occupations.items():
            if not 0 <= count <= config.cutoff:
                raise OracleError(f"Число фотонов {count} вне усечения {config.cutoff}")
            digits[config.index(mode)] = count
        vector[np.ravel_multi_index(digits, (config.levels,) * len(config.modes))] = 1
        return cls(vector, config)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


@lru_cache(maxsize=32)
def ladder(cutoff):
    """Оператор уничтожения a|n⟩ = √n|n-1⟩ на уровнях 0..cutoff."""
    return scipy.sparse.diags(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), offsets=1, format='csr')


def _check_tail(vector, label, tolerance):
    tail = max(0.0, 1.0 - float(np.vdot(vector, vector).real))
    if tail >= tolerance:
        raise TruncationTailError(
            f"Мода {label}: вероятность за усечением {tail:.3e} не меньше допуска {tolerance:.1e}"
        )
    if tail > tolerance / 10:
        logger.warning(f"Мода {label}: хвост усечения {tail:.3e} близок к допуску")
    return vector / np.linalg.norm(vector)


def coherent_amplitudes(amplitude, cutoff, tolerance=None):
    """
    Коэффициенты e^{-|α|²/2} αⁿ/√n! когерентного состояния до уровня cutoff.
    """
    if tolerance is None:
        tolerance = get_setting('FOCK_TAIL_TOLERANCE')
    amplitude = complex(amplitude)
    vector = np.empty(cutoff + 1, dtype=complex)
    vector[0] = np.exp(-abs(amplitude) ** 2 / 2)
    for n in range(1, cutoff + 1):
        vector[n] = vector[n - 1] * amplitude / sqrt(n)
    return _check_tail(vector, f"α={amplitude:.4g}", tolerance)


def squeezed_amplitudes(mean, n_ex, m_anom, cutoff, tolerance=None):
    """
    Чистое смещенное сжатое состояние D(β)S(ξ)|0⟩ с n_ex = sinh²r и
    m_anom = -e^{iφ} sinh r cosh r.

    S(ξ) = exp(½(ξ* a² - ξ a†²)) и D(β) экспоненцируются численно на
    расширенном пространстве, затем вектор обрезается до cutoff.
    """
    if tolerance is None:
        tolerance = get_setting('FOCK_TAIL_TOLERANCE')
    if abs(abs(m_anom) ** 2 - n_ex * (n_ex + 1)) > PURITY_TOLERANCE * (1 + n_ex * (n_ex + 1)):
        raise OracleError(
            f"Оракул принимает только чистые гауссовы состояния: |m|²={abs(m_anom) ** 2:.6g}, "
            f"n(n+1)={n_ex * (n_ex + 1):.6g}"
        )
    padded = cutoff + PREPARATION_PADDING
    a = ladder(padded).toarray().astype(complex)
    a_dag = a.conj().T
    xi = asinh(sqrt(n_ex)) * np.exp(1j * np.angle(-m_anom))
    squeeze = scipy.linalg.expm(0.5 * (np.conj(xi) * (a @ a) - xi * (a_dag @ a_dag)))
    displace = scipy.linalg.expm(mean * a_dag - np.conj(mean) * a)
    vacuum = np.zeros(padded + 1, dtype=complex)
    vacuum[0] = 1
    full = displace @ (squeeze @ vacuum)
    return _check_tail(full[:cutoff + 1], f"β={mean:.4g}, n_ex={n_ex:.4g}", tolerance)


def mode_amplitudes(state, cutoff, tolerance=None):
    """
    Вектор одномодового состояния по его виду.
    """
    kind = getattr(state.kind, 'value', state.kind)
    if kind == 'vacuum':
        vector = np.zeros(cutoff + 1, dtype=complex)
        vector[0] = 1
        return vector
    if kind == 'coherent' or (state.n_ex == 0 and state.m_anom == 0):
        return coherent_amplitudes(state.mean, cutoff, tolerance)
    return squeezed_amplitudes(complex(state.mean), float(state.n_ex), complex(state.m_anom), cutoff, tolerance)


def product_state(assignment, config, tolerance=None):
    """
    Произведение одномодовых состояний назначения в порядке config.modes.
    """
    config.check_dimension()
    vector = np.ones(1, dtype=complex)
    for mode in config.modes:
        vector = np.kron(vector, mode_amplitudes(assignment.state(mode), config.cutoff, tolerance))
    return FockState(vector, config)


def as_fock_state(state, config):
    if isinstance(state, FockState):
        if state.config.modes != config.modes or state.config.cutoff != config.cutoff:
            raise OracleError("FockState приготовлен для другой конфигурации")
        return state
    return product_state(state, config)
