"""
Двухфотонный формализм: квадратуры боковых частот, комбинации
балансного гомодина и проверка доступности квадратур.
"""
import logging
from dataclasses import dataclass
from math import cos, sin, sqrt

import numpy as np

from core.exceptions import DegenerateLocalOscillatorError
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly, adjoint, commutator
from state_engine.expectation import expectation

from .builders import SIGNAL

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quadratures:
    """
    b₁ = (b₊ + b₋†)/√2, b₂ = (b₊ - b₋†)/(√2 i), b_θ = cosθ·b₁ + sinθ·b₂.
    """
    b1: OperatorPoly
    b2: OperatorPoly
    b_theta: OperatorPoly
    theta: float


def sideband_quadratures(config, label=SIGNAL):
    plus = OperatorPoly.annihilator(ModeId(label, Sideband.PLUS))
    minus_dagger = OperatorPoly.creator(ModeId(label, Sideband.MINUS))
    b1 = (plus + minus_dagger) / sqrt(2)
    b2 = (plus - minus_dagger) / (sqrt(2) * 1j)
    theta = config.theta
    return Quadratures(b1, b2, b1 * cos(theta) + b2 * sin(theta), theta)


@dataclass(frozen=True)
class AccessibilityDecision:
    """
    Решение о доступности квадратуры комбинацией α s₊ + β s₋.

    Квадратура доступна, только если система
    ((γ₊, γ₋*), (-γ₊, γ₋*)) (α, β) = 0 имеет нетривиальное решение.
    """
    accessible: bool
    determinant: complex
    matrix: tuple

    @property
    def label(self):
        return 'accessible' if self.accessible else 'inaccessible'


def check_quadrature_accessibility(gamma_plus, gamma_minus, tolerance=1e-12):
    gamma_plus, gamma_minus = complex(gamma_plus), complex(gamma_minus)
    if gamma_plus == 0 or gamma_minus == 0:
        raise DegenerateLocalOscillatorError(
            f"Амплитуды гетеродина должны быть ненулевыми: γ₊={gamma_plus}, γ₋={gamma_minus}"
        )
    matrix = np.array([
        [gamma_plus, gamma_minus.conjugate()],
        [-gamma_plus, gamma_minus.conjugate()],
    ])
    determinant = complex(np.linalg.det(matrix))
    accessible = abs(determinant) <= tolerance * (1 + abs(gamma_plus) * abs(gamma_minus))
    logger.debug(f"Определитель {determinant:.6g}: квадратура {'доступна' if accessible else 'недоступна'}")
    return AccessibilityDecision(accessible, determinant, tuple(map(tuple, matrix)))


@dataclass(frozen=True)
class SidebandCombination:
    """
    √2(α⟨s₊⟩ + β⟨s₋⟩) = c₁⟨b₁⟩ + c₂⟨b₂⟩ + c₁†⟨b₁†⟩ + c₂†⟨b₂†⟩.
    """
    b1: complex
    b2: complex
    b1_dagger: complex
    b2_dagger: complex


def sideband_combination(alpha, beta, gamma_plus, gamma_minus):
    alpha, beta = complex(alpha), complex(beta)
    gamma_plus, gamma_minus = complex(gamma_plus), complex(gamma_minus)
    return SidebandCombination(
        b1=alpha * gamma_plus.conjugate() + beta * gamma_minus,
        b2=1j * (alpha * gamma_plus.conjugate() - beta * gamma_minus),
        b1_dagger=alpha * gamma_plus + beta * gamma_minus.conjugate(),
        b2_dagger=1j * (-alpha * gamma_plus + beta * gamma_minus.conjugate()),
    )


def evaluate_sideband_combination(alpha, beta, s_plus, s_minus, config, assignment):
    """
    Обе стороны разложения для заданного состояния.

    Returns:
        tuple: (√2(α⟨s₊⟩ + β⟨s₋⟩), то же через средние квадратур)
    """
    alpha, beta = complex(alpha), complex(beta)
    direct = sqrt(2) * (alpha * s_plus.evaluate(assignment) + beta * s_minus.evaluate(assignment))
    coefficients = sideband_combination(alpha, beta, config.gamma_plus, config.gamma_minus)
    quadratures = sideband_quadratures(config)
    b1 = expectation(quadratures.b1, assignment)
    b2 = expectation(quadratures.b2, assignment)
    via_quadratures = (
        coefficients.b1 * b1 + coefficients.b2 * b2
        + coefficients.b1_dagger * b1.conjugate() + coefficients.b2_dagger * b2.conjugate()
    )
    return direct, via_quadratures


def commutation_table(net, sideband=Sideband.NONE):
    """
    Попарные коммутаторы операторов источников и их сопряженных.

    Returns:
        dict: {(x, y): OperatorPoly}, x и y - записи вида 'b', 'e_i†'
    """
    operators = {}
    for label in net.source_labels:
        mode = ModeId(label, Sideband(sideband))
        annihilator = OperatorPoly.annihilator(mode)
        operators[str(mode)] = annihilator
        operators[f"{mode}†"] = adjoint(annihilator)
    return {
        (x, y): commutator(operators[x], operators[y])
        for x in operators for y in operators if x != y
    }
