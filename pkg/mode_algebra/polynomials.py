"""
Нормально упорядоченные полиномы от операторов рождения и уничтожения.

Соглашение дискретных мод: [a_i, a_j†] = δ_ij. Моном хранится как
сигнатура (creators, annihilators) - два отсортированных кортежа ModeId,
все операторы рождения стоят левее операторов уничтожения.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import comb, factorial
from types import MappingProxyType

import numpy as np

from core.conf import get_setting
from core.exceptions import NonIsometricMapError

logger = logging.getLogger(__name__)

IDENTITY_SIGNATURE = ((), ())


@dataclass(frozen=True)
class NormalMonomial:
    """
    Моном coeff · (a†...)(a...) в канонической форме.
    """
    coeff: complex
    creators: tuple
    annihilators: tuple

    @property
    def signature(self):
        return (self.creators, self.annihilators)

    @property
    def degree(self):
        return len(self.creators) + len(self.annihilators)

    def __str__(self):
        factors = [f"{mode}†" for mode in self.creators]
        factors += [str(mode) for mode in self.annihilators]
        return f"({self.coeff:.6g})" + (" " + " ".join(factors) if factors else "")


def _canonical_signature(creators, annihilators):
    return (tuple(sorted(creators)), tuple(sorted(annihilators)))


class OperatorPoly:
    """
    Полином от бозонных операторов в канонической нормальной форме.

    Неизменяемый объект: все операции возвращают новый полином.
    Коэффициенты с модулем не больше CANONICAL_ZERO_THRESHOLD отбрасываются.
    """
    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        threshold = get_setting('CANONICAL_ZERO_THRESHOLD')
        merged = {}
        for (creators, annihilators), coeff in (terms or {}).items():
            signature = _canonical_signature(creators, annihilators)
            merged[signature] = merged.get(signature, 0j) + complex(coeff)
        self._terms = {
            signature: coeff
            for signature, coeff in merged.items()
            if abs(coeff) > threshold
        }
        self._hash = None

    # Конструкторы

    @classmethod
    def constant(cls, value):
        return cls({IDENTITY_SIGNATURE: value})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def annihilator(cls, mode, coeff=1.0):
        return cls({((), (mode,)): coeff})

    @classmethod
    def creator(cls, mode, coeff=1.0):
        return cls({((mode,), ()): coeff})

    @classmethod
    def number(cls, mode):
        """Оператор числа фотонов a†a."""
        return cls({((mode,), (mode,)): 1.0})

    @classmethod
    def linear(cls, coefficients):
        """Линейная комбинация операторов уничтожения {mode: coeff}."""
        return cls({((), (mode,)): coeff for mode, coeff in coefficients.items()})

    # Доступ к содержимому

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def signatures(self):
        return frozenset(self._terms)

    def monomials(self):
        for (creators, annihilators), coeff in sorted(self._terms.items(), key=lambda item: item[0]):
            yield NormalMonomial(coeff, creators, annihilators)

    def modes(self):
        found = set()
        for creators, annihilators in self._terms:
            found.update(creators)
            found.update(annihilators)
        return found

    def degree(self):
        return max((len(c) + len(a) for c, a in self._terms), default=0)

    def coefficient(self, creators=(), annihilators=()):
        return self._terms.get(_canonical_signature(creators, annihilators), 0j)

    def is_zero(self):
        return not self._terms

    def is_self_adjoint(self, tolerance=1e-12):
        return adjoint(self).is_close(self, tolerance)

    def is_close(self, other, tolerance=1e-12):
        """
        Совпадение с другим полиномом с точностью до tolerance по коэффициентам.
        """
        for signature in set(self._terms) | set(other._terms):
            if abs(self._terms.get(signature, 0j) - other._terms.get(signature, 0j)) > tolerance:
                return False
        return True

    def pretty(self):
        if not self._terms:
            return "0"
        return " + ".join(str(monomial) for monomial in self.monomials())

    # Арифметика

    def __add__(self, other):
        if not isinstance(other, OperatorPoly):
            other = OperatorPoly.constant(other)
        combined = dict(self._terms)
        for signature, coeff in other._terms.items():
            combined[signature] = combined.get(signature, 0j) + coeff
        return OperatorPoly(combined)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, OperatorPoly):
            other = OperatorPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, OperatorPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(1 / complex(other))

    def scale(self, factor):
        factor = complex(factor)
        return OperatorPoly({sig: coeff * factor for sig, coeff in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"OperatorPoly({self.pretty()})"


def _normal_order_product(left, right):
    """
    Нормальное упорядочение произведения двух мономов.

    Для каждой общей моды a^p (a†)^q = Σ_k k! C(p,k) C(q,k) (a†)^(q-k) a^(p-k),
    что равносильно многократной замене a·a† → a†a + 1.
    """
    left_creators, left_annihilators = left
    right_creators, right_annihilators = right
    inner_annihilators = Counter(left_annihilators)
    inner_creators = Counter(right_creators)
    shared = sorted(set(inner_annihilators) & set(inner_creators))

    ranges = [range(min(inner_annihilators[m], inner_creators[m]) + 1) for m in shared]
    for contractions in product(*ranges):
        weight = 1
        remaining_annihilators = Counter(inner_annihilators)
        remaining_creators = Counter(inner_creators)
        for mode, k in zip(shared, contractions):
            p, q = inner_annihilators[mode], inner_creators[mode]
            weight *= factorial(k) * comb(p, k) * comb(q, k)
            remaining_annihilators[mode] -= k
            remaining_creators[mode] -= k
        creators = left_creators + tuple(remaining_creators.elements())
        annihilators = tuple(remaining_annihilators.elements()) + right_annihilators
        yield (creators, annihilators), weight


def multiply(a, b):
    """
    Нормально упорядоченное произведение a·b.
    """
    result = {}
    for left, left_coeff in a.terms.items():
        for right, right_coeff in b.terms.items():
            for signature, weight in _normal_order_product(left, right):
                result[signature] = result.get(signature, 0j) + left_coeff * right_coeff * weight
    return OperatorPoly(result)


def adjoint(p):
    """
    Эрмитово сопряжение: комплексное сопряжение коэффициентов и обмен
    операторов рождения и уничтожения. Результат остается нормально упорядоченным.
    """
    return OperatorPoly({
        (annihilators, creators): coeff.conjugate()
        for (creators, annihilators), coeff in p.terms.items()
    })


def commutator(a, b):
    """
    Коммутатор [a, b] = ab - ba.
    """
    return multiply(a, b) - multiply(b, a)


def check_isometry(mapping, tolerance=None):
    """
    Проверяет, что образы отображаемых мод ортонормированы (M†M = I).

    Returns:
        float: максимальное отклонение |M†M - I|
    """
    if tolerance is None:
        tolerance = get_setting('UNITARITY_TOLERANCE')
    sources = sorted(mapping)
    targets = sorted({target for image in mapping.values() for target in image})
    matrix = np.zeros((len(targets), len(sources)), dtype=complex)
    index = {mode: row for row, mode in enumerate(targets)}
    for column, mode in enumerate(sources):
        for target, coeff in mapping[mode].items():
            matrix[index[target], column] += coeff
    deviation = float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(len(sources))), initial=0.0))
    if deviation > tolerance:
        raise NonIsometricMapError(
            f"Подстановка не изометрична: отклонение M†M от единицы {deviation:.3e}"
        )
    return deviation


def substitute(p, mapping):
    """
    Подставляет a_m → Σ c a_k для отображаемых мод (a_m† → Σ c* a_k†)
    и возвращает результат в канонической форме.

    Args:
        p: OperatorPoly
        mapping: {ModeId: {ModeId: complex}} - образы операторов уничтожения
    """
    check_isometry(mapping)
    logger.debug(f"Подстановка для {len(mapping)} мод в полином из {len(p.terms)} членов")
    annihilator_images = {
        mode: OperatorPoly.linear(image) for mode, image in mapping.items()
    }
    creator_images = {mode: adjoint(image) for mode, image in annihilator_images.items()}

    result = OperatorPoly()
    for (creators, annihilators), coeff in p.terms.items():
        term = OperatorPoly.constant(coeff)
        for mode in creators:
            term = multiply(term, creator_images[mode] if mode in creator_images else OperatorPoly.creator(mode))
        for mode in annihilators:
            term = multiply(term, annihilator_images[mode] if mode in annihilator_images else OperatorPoly.annihilator(mode))
        result = result + term
    return result
