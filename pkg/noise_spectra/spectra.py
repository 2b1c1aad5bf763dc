"""
Спектральные плотности шума в дискретном соглашении.

Для оператора шума Q с нулевым средним S_Q = ⟨QQ† + Q†Q⟩ на одной
частотной ячейке (множитель 2πδ континуального соглашения опущен).
"""
import logging
from dataclasses import dataclass

from core.conf import get_setting
from core.exceptions import (
    AmplitudeMismatchError, ImaginaryResidueError, NonZeroMeanError,
    NoiseRelationError, PreconditionError,
)
from homodyne_schemes.builders import LOCAL_OSCILLATOR, OSCILLATOR_VACUUM, SIGNAL, SIGNAL_VACUUM
from homodyne_schemes.observables import observable_t_theta, recover_b
from homodyne_schemes.quadratures import sideband_quadratures
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly, adjoint, multiply
from state_engine.expectation import expectation

logger = logging.getLogger(__name__)

AMPLITUDE_TOLERANCE = 1e-9


class NoiseOperator:
    """
    Флуктуационная часть оператора: Q = base - ⟨base⟩ в заданном состоянии.
    """

    def __init__(self, base, assignment):
        self.base = base
        self.assignment = assignment
        operator = getattr(base, 'operator', base)
        self.mean = expectation(operator, assignment)
        self.fluctuation = operator - self.mean

    @classmethod
    def from_operator(cls, operator, assignment):
        return cls(operator, assignment)

    @property
    def name(self):
        return getattr(self.base, 'name', '') or 'Q'


def spectral_density(noise, assignment):
    """
    S_Q = ⟨QQ† + Q†Q⟩.

    Raises:
        NonZeroMeanError: ⟨Q⟩ ≠ 0 в данном состоянии
        ImaginaryResidueError: мнимая часть больше допуска
    """
    if isinstance(noise, NoiseOperator):
        fluctuation, scale = noise.fluctuation, 1 + abs(noise.mean)
    else:
        fluctuation, scale = noise, 1.0
    residual_mean = expectation(fluctuation, assignment)
    if abs(residual_mean) > get_setting('ZERO_MEAN_TOLERANCE') * scale:
        raise NonZeroMeanError(f"Оператор шума имеет ненулевое среднее {residual_mean:.6g}")

    conjugate = adjoint(fluctuation)
    value = expectation(multiply(fluctuation, conjugate) + multiply(conjugate, fluctuation), assignment)
    tolerance = get_setting('IMAGINARY_TOLERANCE') * (1 + abs(value))
    if abs(value.imag) > tolerance:
        raise ImaginaryResidueError(f"Мнимая часть спектральной плотности {value.imag:.3e}")
    if abs(value.imag) > tolerance / 100:
        logger.warning(f"Отброшена мнимая часть спектральной плотности {value.imag:.3e}")
    return value.real


@dataclass(frozen=True)
class SpectralDensityResult:
    """
    total = intrinsic + photon_penalty + vacuum_floor.

    direct - значение, посчитанное прямо по оператору наблюдаемой,
    companion - то же для сопряженной наблюдаемой (если она считалась).
    """
    intrinsic: float
    photon_penalty: float
    vacuum_floor: float
    direct: float
    frequency: float = 0.0
    companion: float | None = None

    @property
    def total(self):
        return self.intrinsic + self.photon_penalty + self.vacuum_floor


def _check_relation(direct, closed_form, label):
    tolerance = get_setting('RELATION_TOLERANCE') * (1 + abs(closed_form))
    if abs(direct - closed_form) > tolerance:
        raise NoiseRelationError(
            f"{label}: прямой расчет {direct:.15g} расходится с формулой {closed_form:.15g}"
        )


def _require_readout_states(assignment, config, sidebands):
    """
    Гетеродин l_i когерентный с амплитудой γ, порты e_i и f_i в вакууме.
    """
    for sideband in sidebands:
        oscillator = assignment.state(ModeId(LOCAL_OSCILLATOR, sideband))
        gamma = config.gamma_for(sideband)
        if not oscillator.is_coherent or abs(oscillator.mean - gamma) > AMPLITUDE_TOLERANCE * (1 + abs(gamma)):
            raise PreconditionError(
                f"Гетеродин {LOCAL_OSCILLATOR}{sideband.value} должен быть когерентным с амплитудой {gamma:.6g}"
            )
        for label in (SIGNAL_VACUUM, OSCILLATOR_VACUUM):
            state = assignment.state(ModeId(label, sideband))
            if not state.is_coherent or state.mean != 0:
                raise PreconditionError(f"Порт {label}{sideband.value} должен быть в вакууме")


def eight_port_noise(net, config, assignment, frequency=0.0, sideband=Sideband.NONE):
    """
    Шум восстановленной амплитуды t_plus восьмипортовой схемы:
    S_t = S_b + 2⟨n_b⟩/|γ|² + 1.

    S_t считается прямо по восьмичленному оператору и сверяется с
    формулой; то же для t_minus.
    """
    sideband = Sideband(sideband)
    t_plus, t_minus = recover_b(net, config, sideband)
    _require_readout_states(assignment, config, (sideband,))
    gamma = config.gamma_for(sideband)

    direct = spectral_density(NoiseOperator(t_plus, assignment), assignment)
    companion = spectral_density(NoiseOperator(t_minus, assignment), assignment)
    _check_relation(companion, direct, "S(t_minus) = S(t_plus)")

    signal = ModeId(SIGNAL, sideband)
    intrinsic = spectral_density(NoiseOperator(OperatorPoly.annihilator(signal), assignment), assignment)
    photons = expectation(OperatorPoly.number(signal), assignment).real
    result = SpectralDensityResult(
        intrinsic=intrinsic,
        photon_penalty=2 * photons / abs(gamma) ** 2,
        vacuum_floor=1.0,
        direct=direct,
        frequency=frequency,
        companion=companion,
    )
    _check_relation(direct, result.total, "S(t_plus)")
    logger.info(f"Шум восьмипортовой схемы: S={result.total:.6g} (ω={frequency:g})")
    return result


def t_theta_noise(net, config, assignment, frequency=0.0):
    """
    Шум двухфотонной наблюдаемой t_θ:
    S_t = S_{b_θ} + ⟨n_{b+} + n_{b-}⟩/|γ|² + 1 при |γ₊| = |γ₋| = |γ| и θ₊ = θ₋ = θ.
    """
    plus, minus = abs(config.gamma_plus), abs(config.gamma_minus)
    if abs(plus - minus) > AMPLITUDE_TOLERANCE * (1 + plus):
        raise AmplitudeMismatchError(f"Модули амплитуд гетеродина различаются: |γ₊|={plus:.6g}, |γ₋|={minus:.6g}")
    observable = observable_t_theta(net, config)
    _require_readout_states(assignment, config, (Sideband.PLUS, Sideband.MINUS))

    direct = spectral_density(NoiseOperator(observable, assignment), assignment)
    quadrature = sideband_quadratures(config).b_theta
    intrinsic = spectral_density(NoiseOperator(quadrature, assignment), assignment)
    photons = sum(
        expectation(OperatorPoly.number(ModeId(SIGNAL, sideband)), assignment).real
        for sideband in (Sideband.PLUS, Sideband.MINUS)
    )
    result = SpectralDensityResult(
        intrinsic=intrinsic,
        photon_penalty=photons / plus ** 2,
        vacuum_floor=1.0,
        direct=direct,
        frequency=frequency,
    )
    _check_relation(direct, result.total, "S(t_theta)")
    logger.info(f"Шум t_θ: θ={config.theta:.6g}, S={result.total:.6g} (Ω={frequency:g})")
    return result
