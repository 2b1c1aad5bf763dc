"""
Оптические элементы схемы.

Каждый элемент задает матрицу, переводящую операторы уничтожения
входных портов в операторы выходных портов: out_k = Σ_j U[k, j] in_j.
"""
import cmath
from dataclasses import dataclass
from enum import Enum
from math import sqrt

import numpy as np

BALANCED = 1 / sqrt(2)


class ElementKind(str, Enum):
    """
    Вид элемента в текстовом описании схемы.
    """
    BEAMSPLITTER = 'beamsplitter'
    PHASE = 'phase'
    SOURCE = 'source'
    DETECTOR = 'detector'


@dataclass(frozen=True)
class BeamSplitter:
    """
    Светоделитель с амплитудами отражения r и пропускания t.

    out1 = t·in1 + r·in2;
    out2 = r·in1 - t·in2, либо -r·in1 + t·in2 при flip=True
    (флаг выбирает, какой вход получает знак минус).
    """
    name: str
    r: float
    t: float
    inputs: tuple
    outputs: tuple
    flip: bool = False

    kind = ElementKind.BEAMSPLITTER
    arity = (2, 2)

    @classmethod
    def balanced(cls, name, inputs, outputs, flip=False):
        """Светоделитель 50:50."""
        return cls(name, BALANCED, BALANCED, tuple(inputs), tuple(outputs), flip)

    def matrix(self):
        if self.flip:
            return np.array([[self.t, self.r], [-self.r, self.t]], dtype=complex)
        return np.array([[self.t, self.r], [self.r, -self.t]], dtype=complex)


@dataclass(frozen=True)
class PhaseRotator:
    """
    Фазовращатель: умножает оператор уничтожения на e^{iφ}
    (одинаково на обеих боковых частотах).
    """
    name: str
    phi: float
    inputs: tuple
    outputs: tuple

    kind = ElementKind.PHASE
    arity = (1, 1)

    def matrix(self):
        return np.array([[cmath.exp(1j * self.phi)]], dtype=complex)


@dataclass(frozen=True)
class Source:
    """
    Входной порт схемы; имя совпадает с меткой моды источника.
    """
    name: str

    kind = ElementKind.SOURCE

    @property
    def port(self):
        return self.name


@dataclass(frozen=True)
class Detector:
    """
    Фотодетектор, измеряющий число фотонов в порту port.
    """
    name: str
    port: str

    kind = ElementKind.DETECTOR


def unitarity_defect(element):
    """
    max |U†U - I| для матрицы элемента.
    """
    matrix = element.matrix()
    size = matrix.shape[1]
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(size))))
