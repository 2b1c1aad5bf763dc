"""
Схема интерферометра, разрешение портов и проверка корректности.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter

import numpy as np

from core.conf import get_setting
from core.exceptions import CyclicWiringError, UnknownPortError
from mode_algebra.modes import ModeId, Sideband
from mode_algebra.polynomials import OperatorPoly, substitute

from .elements import BeamSplitter, unitarity_defect

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """
    Нарушение корректности схемы.
    """
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class Network:
    """
    Направленная схема без обратных связей.

    Порты - строки. Выход элемента или источника с именем p питает все входы
    с тем же именем; wires дополнительно переименовывает выход в вход
    (пары (output, input)).
    """
    elements: tuple = ()
    sources: tuple = ()
    detectors: tuple = ()
    wires: tuple = ()
    name: str = field(default='', compare=False)

    @property
    def source_labels(self):
        return tuple(source.name for source in self.sources)

    @property
    def detector_names(self):
        return tuple(detector.name for detector in self.detectors)

    def detector(self, name):
        for detector in self.detectors:
            if detector.name == name:
                return detector
        raise UnknownPortError(f"Детектор {name} не найден в схеме")

    def produced_ports(self):
        """Порты, которые создают источники и выходы элементов, с кратностью."""
        ports = Counter(source.port for source in self.sources)
        for element in self.elements:
            ports.update(element.outputs)
        return ports

    def consumed_ports(self):
        """Порты, которые читают входы элементов, детекторы и провода, с кратностью."""
        ports = Counter(detector.port for detector in self.detectors)
        for element in self.elements:
            ports.update(element.inputs)
        ports.update(output for output, _ in self.wires)
        return ports

    def feeders(self, port):
        """Порты-источники, из которых приходит поле во вход port."""
        fed = [output for output, target in self.wires if target == port]
        if port in self.produced_ports():
            fed.append(port)
        return fed


def _dependency_graph(net):
    """
    Граф зависимостей портов: порт -> множество портов, от которых он зависит.
    """
    graph = {source.port: set() for source in net.sources}
    for element in net.elements:
        for output in element.outputs:
            graph.setdefault(output, set()).update(element.inputs)
    for output, target in net.wires:
        graph.setdefault(target, set()).add(output)
    return graph


@lru_cache(maxsize=64)
def _resolution_table(net):
    """
    Разрешает все достижимые порты в комбинации меток источников
    в топологическом порядке.
    """
    try:
        order = list(TopologicalSorter(_dependency_graph(net)).static_order())
    except CycleError as e:
        raise CyclicWiringError(f"Циклическое соединение портов: {e.args[1]}") from e

    producers = {}
    for element in net.elements:
        for row, output in enumerate(element.outputs):
            producers[output] = (element, row)
    wired = {target: output for output, target in net.wires}
    source_ports = set(net.source_labels)

    table = {}
    for port in order:
        if port in source_ports:
            table[port] = {port: 1 + 0j}
        elif port in producers:
            element, row = producers[port]
            matrix = element.matrix()
            combination = {}
            for column, input_port in enumerate(element.inputs):
                if input_port not in table:
                    break
                for label, coeff in table[input_port].items():
                    combination[label] = combination.get(label, 0j) + matrix[row, column] * coeff
            else:
                table[port] = combination
        elif port in wired and wired[port] in table:
            table[port] = dict(table[wired[port]])
    return table


def resolve(net, port, sideband=Sideband.NONE):
    """
    Выражает оператор уничтожения порта через моды источников.

    Returns:
        dict: {ModeId: complex}, a_port = Σ c_s a_s
    """
    table = _resolution_table(net)
    if port not in table:
        raise UnknownPortError(f"Порт {port} не существует или недостижим из источников")
    return {
        ModeId(label, Sideband(sideband)): coeff
        for label, coeff in sorted(table[port].items())
    }


def detector_operator(net, detector_name, sideband=Sideband.NONE):
    """
    Оператор числа фотонов детектора, выраженный через моды источников.
    """
    detector = net.detector(detector_name)
    port_mode = ModeId(detector.port, Sideband(sideband))
    return substitute(OperatorPoly.number(port_mode), {port_mode: resolve(net, detector.port, sideband)})


def transfer_matrix(net, sideband=Sideband.NONE):
    """
    Матрица M (детекторы x источники): a_d = Σ_s M[d, s] a_s.
    """
    labels = net.source_labels
    matrix = np.zeros((len(net.detectors), len(labels)), dtype=complex)
    for row, detector in enumerate(net.detectors):
        for mode, coeff in resolve(net, detector.port, sideband).items():
            matrix[row, labels.index(mode.port_label)] = coeff
    return matrix


def validate(net):
    """
    Проверяет схему и возвращает список нарушений (пустой список - схема корректна).

    Никогда не выбрасывает исключений.
    """
    violations = []
    tolerance = get_setting('UNITARITY_TOLERANCE')

    if not net.sources:
        violations.append(Violation('no sources declared', "В схеме нет источников"))
    if not net.detectors:
        violations.append(Violation('no detectors declared', "В схеме нет детекторов"))

    for element in net.elements:
        expected_in, expected_out = element.arity
        if len(element.inputs) != expected_in or len(element.outputs) != expected_out:
            violations.append(Violation(
                'port arity',
                f"Элемент {element.name}: ожидается {expected_in} вход(а) и {expected_out} выход(а), "
                f"получено {len(element.inputs)} и {len(element.outputs)}"
            ))
            continue
        if isinstance(element, BeamSplitter):
            defect = abs(element.r ** 2 + element.t ** 2 - 1)
        else:
            defect = unitarity_defect(element)
        if defect > tolerance:
            violations.append(Violation(
                'non-unitary element',
                f"Элемент {element.name} не унитарен (отклонение {defect:.3e})"
            ))

    produced = net.produced_ports()
    consumed = net.consumed_ports()
    fan_in = Counter(produced)
    for _, target in net.wires:
        fan_in[target] += 1
    for port, count in sorted(fan_in.items()):
        if count > 1:
            violations.append(Violation('port fan-in', f"В порт {port} сходятся {count} выхода"))
    for port, count in sorted(consumed.items()):
        if count > 1:
            violations.append(Violation('port fan-out', f"Порт {port} читается {count} раз(а)"))

    wired_targets = {target for _, target in net.wires}
    needed = [port for element in net.elements for port in element.inputs]
    needed += [detector.port for detector in net.detectors]
    for port in sorted(set(needed)):
        if port not in produced and port not in wired_targets:
            violations.append(Violation('unreachable port', f"Порт {port} не питается ни одним выходом"))
    for port in sorted(produced):
        if port not in consumed:
            violations.append(Violation('dangling port', f"Выход {port} никуда не подключен"))

    try:
        TopologicalSorter(_dependency_graph(net)).prepare()
    except CycleError:
        violations.append(Violation('cyclic wiring', "Схема содержит цикл"))

    if not violations:
        try:
            matrix = transfer_matrix(net)
        except UnknownPortError as e:
            violations.append(Violation('unreachable port', str(e)))
        else:
            deviation = float(np.max(np.abs(
                matrix.conj().T @ matrix - np.eye(matrix.shape[1])
            ), initial=0.0))
            if deviation > tolerance:
                violations.append(Violation(
                    'non-isometric network',
                    f"Отображение источники -> детекторы не изометрично (отклонение {deviation:.3e})"
                ))

    if violations:
        logger.info(f"Схема {net.name or '<без имени>'}: найдено нарушений {len(violations)}")
    return violations
