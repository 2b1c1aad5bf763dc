"""
Точные средние нормально упорядоченных полиномов.

Для независимых мод среднее монома распадается в произведение
одномодовых моментов ⟨(b†)^m b^n⟩. Для гауссова состояния момент
раскладывается по смещению b = β + Δb и вычисляется теоремой Вика:
сумма по всем разбиениям на пары со значениями
⟨Δb†Δb†⟩ = m*, ⟨ΔbΔb⟩ = m, ⟨Δb†Δb⟩ = n_ex.
"""
import logging
from collections import Counter
from functools import lru_cache
from math import comb

from .states import StateKind

logger = logging.getLogger(__name__)


def _pairings(operators):
    """
    Все разбиения последовательности на пары (с сохранением порядка внутри пары).
    """
    if not operators:
        yield ()
        return
    first, rest = operators[0], operators[1:]
    for index in range(len(rest)):
        remaining = rest[:index] + rest[index + 1:]
        for tail in _pairings(remaining):
            yield ((first, rest[index]),) + tail


@lru_cache(maxsize=4096)
def central_moment(creators, annihilators, n_ex, m_anom):
    """
    ⟨(Δb†)^creators (Δb)^annihilators⟩ для гауссова состояния с нулевым средним.
    """
    if (creators + annihilators) % 2:
        return 0j
    pair_values = {
        ('c', 'c'): m_anom.conjugate(),
        ('a', 'a'): m_anom,
        ('c', 'a'): complex(n_ex),
    }
    total = 0j
    for pairing in _pairings(('c',) * creators + ('a',) * annihilators):
        value = 1 + 0j
        for pair in pairing:
            value *= pair_values[pair]
        total += value
    return total


def mode_moment(state, creators, annihilators):
    """
    Нормально упорядоченный момент ⟨(b†)^creators b^annihilators⟩ одной моды.
    """
    if state.kind == StateKind.VACUUM:
        return 1 + 0j if creators == annihilators == 0 else 0j
    mean = state.mean
    if state.is_coherent:
        return mean.conjugate() ** creators * mean ** annihilators
    total = 0j
    for j in range(creators + 1):
        for k in range(annihilators + 1):
            if (j + k) % 2:
                continue
            total += (
                comb(creators, j) * comb(annihilators, k)
                * mean.conjugate() ** (creators - j) * mean ** (annihilators - k)
                * central_moment(j, k, state.n_ex, state.m_anom)
            )
    return total


def expectation(p, assignment):
    """
    Среднее нормально упорядоченного полинома в произведении состояний.

    Raises:
        UnassignedModeError: мода полинома без состояния (строгое назначение)
        UnphysicalStateError: гауссовы моменты нарушают соотношение неопределенностей
    """
    states = {mode: assignment.state(mode).validate() for mode in p.modes()}
    total = 0j
    for (creators, annihilators), coeff in p.terms.items():
        creator_counts = Counter(creators)
        annihilator_counts = Counter(annihilators)
        value = coeff
        for mode in set(creator_counts) | set(annihilator_counts):
            value *= mode_moment(states[mode], creator_counts[mode], annihilator_counts[mode])
            if value == 0:
                break
        total += value
    return total


def mean_amplitude(assignment, mode):
    """
    Среднее поле ⟨b⟩ моды (для вакуума 0).
    """
    return assignment.state(mode).mean
