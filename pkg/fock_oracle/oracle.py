"""
Прямой расчет средних и прохождения схем в усеченном фоковском
пространстве.

Матрица монома строится кронекеровским произведением одномодовых
(a†)^m a^n, элементы схемы применяются как унитарные операторы
exp(Σ L_ij a_i† a_j), где L = log U матрицы элемента.
"""
import logging
from collections import Counter
from functools import lru_cache, reduce
from itertools import zip_longest
from math import sqrt
from types import SimpleNamespace

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from core.conf import get_setting
from core.exceptions import OracleError, TruncationTailError
from mode_algebra.modes import ModeId, Sideband

from .spaces import FockConfig, FockState, as_fock_state, ladder, mode_amplitudes

logger = logging.getLogger(__name__)

MAX_CUTOFF_SEARCH = 200


@lru_cache(maxsize=256)
def _mode_factor(cutoff, creators, annihilators):
    a = ladder(cutoff)
    factor = scipy.sparse.identity(cutoff + 1, dtype=complex, format='csr')
    for _ in range(creators):
        factor = factor @ a.T
    for _ in range(annihilators):
        factor = factor @ a
    return factor.tocsr()


@lru_cache(maxsize=1024)
def _monomial_matrix(signature, cutoff, modes):
    creators, annihilators = signature
    creator_counts = Counter(creators)
    annihilator_counts = Counter(annihilators)
    factors = [
        _mode_factor(cutoff, creator_counts[mode], annihilator_counts[mode])
        for mode in modes
    ]
    return reduce(lambda left, right: scipy.sparse.kron(left, right, format='csr'), factors)


def operator_matrix(p, config):
    """
    Разреженная матрица полинома на пространстве config.
    """
    config.check_dimension()
    missing = p.modes() - set(config.modes)
    if missing:
        raise OracleError(f"Моды {sorted(str(m) for m in missing)} отсутствуют в FockConfig")
    matrix = scipy.sparse.csr_matrix((config.dimension, config.dimension), dtype=complex)
    for signature, coeff in p.terms.items():
        matrix = matrix + coeff * _monomial_matrix(signature, config.cutoff, config.modes)
    return matrix


def oracle_expectation(p, state, config):
    """
    ⟨ψ|P|ψ⟩ для назначения состояний или готового FockState.

    Raises:
        DimensionCeilingError: пространство больше потолка
        TruncationTailError: состояние не помещается в усечение
    """
    psi = as_fock_state(state, config).amplitudes
    return complex(np.vdot(psi, operator_matrix(p, config) @ psi))


def _mode_operator(config, slot):
    """Оператор уничтожения моды slot на всем пространстве."""
    identity = scipy.sparse.identity(config.levels, dtype=complex, format='csr')
    factors = [ladder(config.cutoff) if index == slot else identity for index in range(len(config.modes))]
    return reduce(lambda left, right: scipy.sparse.kron(left, right, format='csr'), factors)


def unitary_logarithm(matrix):
    """
    Антиэрмитов логарифм L унитарной матрицы: U = exp(L).

    Для нормальной матрицы форма Шура диагональна, L = Z diag(i·arg λ) Z†.
    """
    triangular, vectors = scipy.linalg.schur(np.asarray(matrix, dtype=complex), output='complex')
    phases = np.angle(np.diag(triangular))
    return vectors @ np.diag(1j * phases) @ vectors.conj().T


def element_generator(element, config, slots):
    """
    Генератор Σ L_ij a_i† a_j унитарного оператора элемента на слотах slots.
    """
    logarithm = unitary_logarithm(element.matrix())
    operators = [_mode_operator(config, slot) for slot in slots]
    generator = scipy.sparse.csr_matrix((config.dimension, config.dimension), dtype=complex)
    for i, a_i in enumerate(operators):
        for j, a_j in enumerate(operators):
            if logarithm[i, j] != 0:
                generator = generator + logarithm[i, j] * (a_i.conj().T @ a_j)
    return generator.tocsc()


def network_config(net, cutoff, sideband=Sideband.NONE, ceiling=None):
    """
    FockConfig с модами источников схемы в порядке их объявления.
    """
    return FockConfig(cutoff, tuple(ModeId(label, Sideband(sideband)) for label in net.source_labels), ceiling)


def _schedule(net, config):
    """
    Порядок применения элементов и слоты их входов.

    Слот - тензорный сомножитель; по ходу обхода он переименовывается
    в порт, в котором сейчас находится поле.
    """
    if {mode.port_label for mode in config.modes} != set(net.source_labels):
        raise OracleError("Моды FockConfig не совпадают с источниками схемы")
    wires = dict(net.wires)
    ports = {}
    for slot, mode in enumerate(config.modes):
        ports[mode.port_label] = slot

    def follow_wires():
        for output in [port for port in ports if port in wires]:
            ports[wires[output]] = ports.pop(output)

    follow_wires()
    pending = list(net.elements)
    steps = []
    while pending:
        ready = [element for element in pending if all(port in ports for port in element.inputs)]
        if not ready:
            raise OracleError(f"Элементы {[e.name for e in pending]} недостижимы из источников")
        for element in ready:
            if len(element.inputs) != len(element.outputs):
                raise OracleError(f"Элемент {element.name}: число входов и выходов различается")
            slots = [ports.pop(port) for port in element.inputs]
            steps.append((element, tuple(slots)))
            ports.update(zip(element.outputs, slots))
            pending.remove(element)
        follow_wires()
    return steps, ports


def propagate(net, state, config):
    """
    Состояние на выходе схемы и соответствие порт -> слот.
    """
    config.check_dimension()
    psi = as_fock_state(state, config).amplitudes
    steps, ports = _schedule(net, config)
    for element, slots in steps:
        psi = scipy.sparse.linalg.expm_multiply(element_generator(element, config, slots), psi)
    return FockState(psi, config), ports


def oracle_network(net, state, config):
    """
    Средние числа фотонов детекторов после прохождения схемы.

    Returns:
        dict: {имя детектора: ⟨n⟩}
    """
    output, ports = propagate(net, state, config)
    psi = output.amplitudes
    counts = {}
    for detector in net.detectors:
        if detector.port not in ports:
            raise OracleError(f"Порт детектора {detector.name} ({detector.port}) не достигнут")
        a = _mode_operator(config, ports[detector.port])
        counts[detector.name] = float(np.vdot(psi, a.conj().T @ (a @ psi)).real)
    logger.debug(f"Оракул: схема {net.name or '<без имени>'}, размерность {config.dimension}")
    return counts


def network_unitary(net, config):
    """
    Плотная матрица оператора схемы (для проверки унитарности на малых размерностях).
    """
    config.check_dimension()
    steps, _ = _schedule(net, config)
    unitary = np.eye(config.dimension, dtype=complex)
    for element, slots in steps:
        unitary = scipy.linalg.expm(element_generator(element, config, slots).toarray()) @ unitary
    return unitary


def unitarity_deviation(unitary):
    return float(np.max(np.abs(unitary.conj().T @ unitary - np.eye(unitary.shape[0]))))


def minimal_cutoff(assignment, modes, tolerance=None, pooled=False):
    """
    Наименьшее усечение (не меньше 2), при котором хвост каждой моды
    меньше допуска.

    При pooled=True учитывается и когерентное состояние со средним числом
    фотонов, равным сумме по всем модам: светоделители могут собрать
    все фотоны в один выходной порт.
    """
    if tolerance is None:
        tolerance = get_setting('FOCK_TAIL_TOLERANCE')
    states = [assignment.state(mode) for mode in modes]
    if pooled:
        total = sum(abs(state.mean) ** 2 + state.n_ex for state in states)
        states.append(SimpleNamespace(kind='coherent', mean=complex(sqrt(total)), n_ex=0.0, m_anom=0j))
    best = 2
    for mode, state in zip_longest(modes, states, fillvalue='*'):
        for cutoff in range(best, MAX_CUTOFF_SEARCH + 1):
            try:
                mode_amplitudes(state, cutoff, tolerance)
            except TruncationTailError:
                continue
            best = cutoff
            break
        else:
            raise TruncationTailError(f"Мода {mode}: усечение больше {MAX_CUTOFF_SEARCH} уровней")
    return best
