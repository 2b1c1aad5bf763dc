"""
Наблюдаемые с классической постобработкой.

Измеряются только числа фотонов детекторов (самосопряженные операторы);
комплексные множители живут в линейной комбинации отсчетов, и сама
комбинация наблюдаемой не объявляется.
"""
import cmath
import logging
from dataclasses import dataclass
from math import sqrt

from django.utils.functional import cached_property

from core.exceptions import DegenerateLocalOscillatorError, PhaseMismatchError, TopologyError
from mode_algebra.modes import Sideband
from mode_algebra.polynomials import OperatorPoly
from network_model.networks import detector_operator
from state_engine.expectation import expectation

from .builders import (
    BALANCED_DETECTORS, BALANCED_SOURCES, EIGHT_PORT_DETECTORS, EIGHT_PORT_SOURCES,
)

logger = logging.getLogger(__name__)

PHASE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class HomodyneConfig:
    """
    Амплитуды гетеродина на частотах ω₀±Ω и угол гомодинирования.

    В одночастотном анализе используется gamma = gamma_plus.
    """
    gamma_plus: complex = 1 + 0j
    gamma_minus: complex = 1 + 0j
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'gamma_plus', complex(self.gamma_plus))
        object.__setattr__(self, 'gamma_minus', complex(self.gamma_minus))
        object.__setattr__(self, 'theta', float(self.theta))

    @classmethod
    def from_theta(cls, amplitude, theta):
        """γ± = |γ| e^{iθ} на обеих боковых частотах."""
        gamma = abs(amplitude) * cmath.exp(1j * theta)
        return cls(gamma, gamma, theta)

    @classmethod
    def single(cls, gamma):
        gamma = complex(gamma)
        return cls(gamma, gamma, cmath.phase(gamma) if gamma else 0.0)

    @property
    def gamma(self):
        return self.gamma_plus

    @property
    def theta_plus(self):
        return cmath.phase(self.gamma_plus)

    @property
    def theta_minus(self):
        return cmath.phase(self.gamma_minus)

    def gamma_for(self, sideband):
        return self.gamma_minus if Sideband(sideband) == Sideband.MINUS else self.gamma_plus

    def require_nonzero(self, *sidebands):
        for sideband in sidebands or (Sideband.PLUS, Sideband.MINUS):
            if self.gamma_for(sideband) == 0:
                raise DegenerateLocalOscillatorError(
                    f"Нулевая амплитуда гетеродина (боковая '{Sideband(sideband).value}')"
                )
        return self

    def require_phase_choice(self):
        """
        θ₊ = θ₋ = θ (по модулю 2π).
        """
        for label, phase in (('θ₊', self.theta_plus), ('θ₋', self.theta_minus)):
            deviation = abs(cmath.exp(1j * phase) - cmath.exp(1j * self.theta))
            if deviation > PHASE_TOLERANCE:
                raise PhaseMismatchError(
                    f"Фаза {label}={phase:.6g} не совпадает с углом гомодинирования θ={self.theta:.6g}"
                )
        return self


@dataclass(frozen=True)
class ObservableTerm:
    coeff: complex
    detector: str
    sideband: Sideband = Sideband.NONE


class PostProcessedObservable:
    """
    Линейная комбинация Σ c · n_d отсчетов детекторов одной схемы.
    """

    def __init__(self, network, terms, name=''):
        merged = {}
        for term in terms:
            key = (term.detector, Sideband(term.sideband))
            merged[key] = merged.get(key, 0j) + complex(term.coeff)
        self.network = network
        self.terms = tuple(
            ObservableTerm(coeff, detector, sideband)
            for (detector, sideband), coeff in sorted(merged.items())
            if coeff != 0
        )
        self.name = name

    @classmethod
    def difference(cls, network, first, second, factor=1, sideband=Sideband.NONE, name=''):
        """factor · (n_first - n_second)."""
        return cls(network, [
            ObservableTerm(factor, first, sideband),
            ObservableTerm(-factor, second, sideband),
        ], name)

    @cached_property
    def operator(self):
        """Σ c · n_d, выраженная через моды источников."""
        result = OperatorPoly()
        for term in self.terms:
            result = result + detector_operator(self.network, term.detector, term.sideband).scale(term.coeff)
        return result

    def coefficients(self):
        return {(term.detector, term.sideband): term.coeff for term in self.terms}

    def evaluate(self, assignment):
        return expectation(self.operator, assignment)

    def combine(self, counts):
        """
        Классическая постобработка средних отсчетов {(детектор, боковая): ⟨n⟩}.
        """
        return sum(term.coeff * counts[(term.detector, term.sideband)] for term in self.terms)

    def scale(self, factor, name=None):
        factor = complex(factor)
        return PostProcessedObservable(
            self.network,
            [ObservableTerm(term.coeff * factor, term.detector, term.sideband) for term in self.terms],
            self.name if name is None else name,
        )

    def __add__(self, other):
        if self.network != other.network:
            raise TopologyError("Нельзя складывать наблюдаемые разных схем")
        return PostProcessedObservable(self.network, self.terms + other.terms, self.name)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return self.scale(1 / complex(factor))

    def __repr__(self):
        listed = " + ".join(
            f"({term.coeff:.6g})·n[{term.detector}{term.sideband.value}]" for term in self.terms
        )
        return f"PostProcessedObservable({self.name or '?'}: {listed})"


def _require_topology(net, sources, detectors, scheme):
    if set(net.source_labels) != set(sources) or set(net.detector_names) != set(detectors):
        raise TopologyError(
            f"Схема {net.name or '<без имени>'} не подходит для {scheme}: ожидаются источники "
            f"{', '.join(sources)} и детекторы {', '.join(detectors)}"
        )


def observable_s(net, sideband=Sideband.NONE):
    """
    s = n_{c_o} - n_{d_o} балансного гомодина.
    """
    _require_topology(net, BALANCED_SOURCES, BALANCED_DETECTORS, 's')
    return PostProcessedObservable.difference(net, 'D1', 'D2', 1, sideband, name='s')


def observable_sD1D2(net, sideband=Sideband.NONE):
    """
    s_D1D2 = 2(n_D1 - n_D2).
    """
    _require_topology(net, EIGHT_PORT_SOURCES, EIGHT_PORT_DETECTORS, 's_D1D2')
    return PostProcessedObservable.difference(net, 'D1', 'D2', 2, sideband, name='s_D1D2')


def observable_sD3D4(net, sideband=Sideband.NONE):
    """
    s_D3D4 = 2i(n_D4 - n_D3).
    """
    _require_topology(net, EIGHT_PORT_SOURCES, EIGHT_PORT_DETECTORS, 's_D3D4')
    return PostProcessedObservable.difference(net, 'D4', 'D3', 2j, sideband, name='s_D3D4')


def recover_b(net, config, sideband=Sideband.NONE):
    """
    Восстановление ⟨b⟩ и ⟨b†⟩ восьмипортовой схемой.

    Returns:
        tuple: (t_plus, t_minus), t_plus = (s_D1D2 + s_D3D4)/(2γ*),
        t_minus = (s_D1D2 - s_D3D4)/(2γ)
    """
    config.require_nonzero(sideband)
    gamma = config.gamma_for(sideband)
    s12 = observable_sD1D2(net, sideband)
    s34 = observable_sD3D4(net, sideband)
    t_plus = (s12 + s34).scale(1 / (2 * gamma.conjugate()), name='t_plus')
    t_minus = (s12 - s34).scale(1 / (2 * gamma), name='t_minus')
    logger.debug(f"Построены t_plus и t_minus для γ={gamma:.6g}")
    return t_plus, t_minus


def observable_t_theta(net, config):
    """
    t_θ = (t_D1D2+ + t_D3D4−)/2, где
    t_D1D2+ = (s_D1D2(+)/|γ₊| + s_D1D2(−)/|γ₋|)/√2,
    t_D3D4− = (s_D3D4(+)/|γ₊| − s_D3D4(−)/|γ₋|)/√2.

    Требует θ₊ = θ₋ = θ.
    """
    config.require_nonzero()
    config.require_phase_choice()
    plus, minus = abs(config.gamma_plus), abs(config.gamma_minus)
    t12 = (
        observable_sD1D2(net, Sideband.PLUS) / plus + observable_sD1D2(net, Sideband.MINUS) / minus
    ) / sqrt(2)
    t34 = (
        observable_sD3D4(net, Sideband.PLUS) / plus - observable_sD3D4(net, Sideband.MINUS) / minus
    ) / sqrt(2)
    return (t12 + t34).scale(0.5, name='t_theta')


def balanced_sideband_observables(net, config):
    """
    s₊ и s₋ обычного балансного гомодина, проанализированного на каждой
    боковой частоте.
    """
    config.require_nonzero()
    return observable_s(net, Sideband.PLUS), observable_s(net, Sideband.MINUS)
