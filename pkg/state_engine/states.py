"""
Состояния мод источников.
"""
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType

from core.conf import get_setting
from core.exceptions import MixedSidebandError, UnassignedModeError, UnphysicalStateError
from mode_algebra.modes import ModeId, Sideband, parse_mode


class StateKind(str, Enum):
    """
    Вид состояния моды.
    """
    VACUUM = 'vacuum'
    COHERENT = 'coherent'
    GAUSSIAN = 'gaussian'


@dataclass(frozen=True)
class ModeState:
    """
    Одномодовое гауссово состояние.

    mean = ⟨b⟩, n_ex = ⟨Δb†Δb⟩, m_anom = ⟨ΔbΔb⟩, где Δb = b - mean.
    Когерентное состояние - частный случай с n_ex = m_anom = 0,
    вакуум - когерентное с нулевой амплитудой.
    """
    kind: StateKind
    mean: complex = 0j
    n_ex: float = 0.0
    m_anom: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, 'kind', StateKind(self.kind))
        object.__setattr__(self, 'mean', complex(self.mean))
        object.__setattr__(self, 'n_ex', float(self.n_ex))
        object.__setattr__(self, 'm_anom', complex(self.m_anom))

    @classmethod
    def vacuum(cls):
        return cls(StateKind.VACUUM)

    @classmethod
    def coherent(cls, gamma):
        return cls(StateKind.COHERENT, mean=gamma)

    @classmethod
    def gaussian(cls, mean, n_ex, m_anom=0j):
        return cls(StateKind.GAUSSIAN, mean=mean, n_ex=n_ex, m_anom=m_anom)

    @property
    def is_coherent(self):
        """Вакуум и когерентные состояния (в том числе гауссовы без флуктуаций)."""
        return self.n_ex == 0 and self.m_anom == 0

    @property
    def mean_photon_number(self):
        return abs(self.mean) ** 2 + self.n_ex

    def validate(self):
        """
        Проверка физичности: n_ex ≥ 0 и |m_anom|² ≤ n_ex(n_ex + 1).
        """
        tolerance = get_setting('HEISENBERG_TOLERANCE')
        if self.n_ex < 0:
            raise UnphysicalStateError(f"Отрицательное число избыточных фотонов n_ex={self.n_ex}")
        bound = self.n_ex * (self.n_ex + 1)
        if abs(self.m_anom) ** 2 > bound + tolerance:
            raise UnphysicalStateError(
                f"Нарушено соотношение неопределенностей: |m|²={abs(self.m_anom) ** 2:.6g} > "
                f"n(n+1)={bound:.6g}"
            )
        return self


VACUUM = ModeState.vacuum()


def _as_mode(mode):
    return mode if isinstance(mode, ModeId) else parse_mode(mode)


def check_sideband_regime(modes):
    """
    Одночастотный анализ и анализ боковых частот не смешиваются.
    """
    regimes = {mode.sideband == Sideband.NONE for mode in modes}
    if len(regimes) > 1:
        listed = ", ".join(str(mode) for mode in sorted(modes))
        raise MixedSidebandError(f"Моды без боковой частоты смешаны с модами боковых частот: {listed}")


class StateAssignment:
    """
    Произведение состояний независимых мод.

    Моды, не указанные явно, находятся в состоянии default (по умолчанию
    вакуум). При default=None назначение строгое: обращение к
    неуказанной моде - ошибка.
    """

    def __init__(self, states=None, default=VACUUM):
        self._states = {_as_mode(mode): state for mode, state in (states or {}).items()}
        check_sideband_regime(self._states)
        self.default = default

    @property
    def states(self):
        return MappingProxyType(self._states)

    def state(self, mode):
        mode = _as_mode(mode)
        if mode in self._states:
            return self._states[mode]
        if self.default is None:
            raise UnassignedModeError(f"Для моды {mode} не задано состояние")
        return self.default

    def modes(self):
        return set(self._states)

    def with_states(self, states):
        """Новое назначение с добавленными или замененными состояниями."""
        merged = dict(self._states)
        merged.update({_as_mode(mode): state for mode, state in states.items()})
        return StateAssignment(merged, self.default)

    def validate(self):
        for state in self._states.values():
            state.validate()
        return self

    def __eq__(self, other):
        if not isinstance(other, StateAssignment):
            return NotImplemented
        return self._states == other._states and self.default == other.default

    def __hash__(self):
        return hash((frozenset(self._states.items()), self.default))

    def __repr__(self):
        listed = ", ".join(f"{mode}: {state}" for mode, state in sorted(self._states.items()))
        return f"StateAssignment({{{listed}}})"
