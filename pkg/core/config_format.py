"""
Текстовый формат описания схемы и состояний источников.

Построчный формат, поля разделены пробелами, '#' начинает комментарий:

    network fig1|fig2
    element <name> beamsplitter R T [flip] in=a,b out=c,d
    element <name> phase PHI in=a out=b
    wire <выход> <вход>
    source <мода>[+|-] vacuum
    source <мода>[+|-] coherent RE IM | RE+IMi
    source <мода>[+|-] gaussian MEAN N_EX M_ANOM
    detector <name> port=<порт>
    param <ключ> <значение>

Комплексные параметры записываются парой 'RE IM' или одним токеном 'RE+IMi'.
"""
import logging
from dataclasses import dataclass, field

from django.core.exceptions import ValidationError

from core.exceptions import HomodyneError
from homodyne_schemes.builders import BUILTIN_NETWORKS, builtin_network
from mode_algebra.modes import parse_mode
from network_model.elements import BeamSplitter, Detector, PhaseRotator, Source
from network_model.networks import Network, validate
from state_engine.states import ModeState, StateAssignment, StateKind, check_sideband_regime

from .utils import format_complex, format_number, parse_complex

logger = logging.getLogger(__name__)

CUSTOM_NETWORK_NAME = 'config'


@dataclass(frozen=True)
class RunSpec:
    """
    Схема, состояния источников и параметры команды.

    builtin - имя встроенной схемы ('fig1', 'fig2') или пустая строка.
    """
    network: Network
    states: StateAssignment = field(default_factory=StateAssignment)
    builtin: str = ''
    params: tuple = ()

    def param(self, name, default=None):
        for key, value in self.params:
            if key == name:
                return value
        return default


def _complex_tokens(tokens, count):
    """
    Разбирает count комплексных чисел из начала tokens.

    Returns:
        tuple: (список чисел, оставшиеся токены)
    """
    values = []
    rest = list(tokens)
    for _ in range(count):
        if not rest:
            raise ValueError("не хватает параметров")
        head = rest.pop(0)
        if head.endswith('i'):
            values.append(parse_complex(head))
        elif rest and not rest[0].endswith('i') and _is_number(rest[0]):
            values.append(complex(float(head), float(rest.pop(0))))
        else:
            values.append(parse_complex(head))
    return values, rest


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def parse_state(tokens):
    """
    Разбирает описание состояния: 'vacuum', 'coherent 0.7 -0.2',
    'gaussian 0.3+0.1i 0.2 0.05+0i'.

    Raises:
        ValueError: некорректная запись
    """
    if isinstance(tokens, str):
        tokens = tokens.split()
    if not tokens:
        raise ValueError("не указан вид состояния")
    kind, params = tokens[0], list(tokens[1:])
    if kind == StateKind.VACUUM:
        if params:
            raise ValueError("вакуум не имеет параметров")
        return ModeState.vacuum()
    if kind == StateKind.COHERENT:
        if len(params) not in (1, 2):
            raise ValueError("когерентное состояние задается одним комплексным числом")
        (mean,), rest = _complex_tokens(params, 1)
        if rest:
            raise ValueError(f"лишние параметры: {' '.join(rest)}")
        return ModeState.coherent(mean)
    if kind == StateKind.GAUSSIAN:
        if len(params) == 5:
            mean = complex(float(params[0]), float(params[1]))
            n_ex = float(params[2])
            m_anom = complex(float(params[3]), float(params[4]))
        elif len(params) == 3:
            mean, n_ex, m_anom = parse_complex(params[0]), float(params[1]), parse_complex(params[2])
        else:
            raise ValueError("гауссово состояние: MEAN N_EX M_ANOM (3 или 5 чисел)")
        return ModeState.gaussian(mean, n_ex, m_anom)
    raise ValueError(f"неизвестный вид состояния: {kind}")


def render_state(state):
    if state.kind == StateKind.VACUUM:
        return 'vacuum'
    if state.kind == StateKind.COHERENT:
        return f"coherent {format_complex(state.mean)}"
    return f"gaussian {format_complex(state.mean)} {format_number(state.n_ex)} {format_complex(state.m_anom)}"


def _ports(tokens, prefix):
    for token in tokens:
        if token.startswith(prefix):
            return tuple(port for port in token[len(prefix):].split(',') if port)
    return ()


def _parse_element(tokens):
    """
    tokens: [name, kind, параметры..., in=..., out=...]
    """
    if len(tokens) < 2:
        raise ValueError("element: ожидается имя и вид элемента")
    name, kind = tokens[0], tokens[1]
    inputs, outputs = _ports(tokens, 'in='), _ports(tokens, 'out=')
    params = [token for token in tokens[2:] if not token.startswith(('in=', 'out='))]
    if kind == 'beamsplitter':
        flip = 'flip' in params
        numbers = [token for token in params if token != 'flip']
        if len(numbers) != 2:
            raise ValueError(f"светоделитель {name}: ожидаются R и T")
        if len(inputs) != 2 or len(outputs) != 2:
            raise ValueError(f"светоделитель {name}: несбалансированные порты (нужно 2 входа и 2 выхода)")
        return BeamSplitter(name, float(numbers[0]), float(numbers[1]), inputs, outputs, flip)
    if kind == 'phase':
        if len(params) != 1:
            raise ValueError(f"фазовращатель {name}: ожидается фаза PHI")
        if len(inputs) != 1 or len(outputs) != 1:
            raise ValueError(f"фазовращатель {name}: несбалансированные порты (нужен 1 вход и 1 выход)")
        return PhaseRotator(name, float(params[0]), inputs, outputs)
    raise ValueError(f"неизвестный вид элемента: {kind}")


def parse_config(text):
    """
    Разбирает текст конфигурации в RunSpec.

    Raises:
        ValidationError: список ошибок с номерами строк
    """
    errors = []
    builtin = ''
    elements, wires, detectors, params = [], [], [], []
    states = {}
    source_labels = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        record, *tokens = line.split()
        try:
            if record == 'network':
                if len(tokens) != 1 or tokens[0] not in BUILTIN_NETWORKS:
                    raise ValueError(f"ожидается одна из схем: {', '.join(BUILTIN_NETWORKS)}")
                if builtin:
                    raise ValueError("схема уже задана")
                builtin = tokens[0]
            elif record == 'element':
                elements.append(_parse_element(tokens))
            elif record == 'wire':
                if len(tokens) != 2:
                    raise ValueError("wire: ожидается '<выход> <вход>'")
                wires.append((tokens[0], tokens[1]))
            elif record == 'source':
                if not tokens:
                    raise ValueError("source: не указана мода")
                mode = parse_mode(tokens[0])
                if mode in states:
                    raise ValueError(f"состояние моды {mode} уже задано")
                check_sideband_regime([*states, mode])
                states[mode] = parse_state(tokens[1:]).validate()
                if mode.port_label not in source_labels:
                    source_labels.append(mode.port_label)
            elif record == 'detector':
                port = _ports(tokens, 'port=')
                if len(tokens) != 2 or len(port) != 1:
                    raise ValueError("detector: ожидается '<name> port=<порт>'")
                detectors.append(Detector(tokens[0], port[0]))
            elif record == 'param':
                if len(tokens) != 2:
                    raise ValueError("param: ожидается '<ключ> <значение>'")
                params.append((tokens[0], tokens[1]))
            else:
                raise ValueError(f"неизвестная запись: {record}")
        except (ValueError, HomodyneError) as e:
            errors.append(f"строка {number}: {e}")

    if builtin:
        if elements or wires or detectors:
            errors.append("встроенная схема не сочетается с записями element, wire и detector")
            network = None
        else:
            network = builtin_network(builtin)
            unknown = sorted({label for label in source_labels if label not in network.source_labels})
            if unknown:
                errors.append(f"источники {', '.join(unknown)} отсутствуют в схеме {builtin}")
    else:
        network = Network(
            elements=tuple(elements),
            sources=tuple(Source(label) for label in source_labels),
            detectors=tuple(detectors),
            wires=tuple(wires),
            name=CUSTOM_NETWORK_NAME,
        )
        if not errors:
            errors.extend(f"{violation.code}: {violation.message}" for violation in validate(network))

    if errors:
        logger.info(f"Конфигурация отклонена: {len(errors)} ошибок")
        raise ValidationError(errors)
    return RunSpec(network, StateAssignment(states), builtin, tuple(params))


def render(spec):
    """
    Текст конфигурации, который разбирается обратно в равный RunSpec.
    """
    lines = []
    if spec.builtin:
        lines.append(f"network {spec.builtin}")
    else:
        for element in spec.network.elements:
            ports = f"in={','.join(element.inputs)} out={','.join(element.outputs)}"
            if isinstance(element, BeamSplitter):
                flip = ' flip' if element.flip else ''
                lines.append(
                    f"element {element.name} beamsplitter {format_number(element.r)} "
                    f"{format_number(element.t)}{flip} {ports}"
                )
            else:
                lines.append(f"element {element.name} phase {format_number(element.phi)} {ports}")
        for output, target in spec.network.wires:
            lines.append(f"wire {output} {target}")

    order = {label: index for index, label in enumerate(spec.network.source_labels)}
    modes = sorted(spec.states.modes(), key=lambda mode: (order.get(mode.port_label, len(order)), mode))
    for mode in modes:
        lines.append(f"source {mode} {render_state(spec.states.state(mode))}")

    if not spec.builtin:
        for detector in spec.network.detectors:
            lines.append(f"detector {detector.name} port={detector.port}")
    for key, value in spec.params:
        lines.append(f"param {key} {value}")
    return "\n".join(lines) + "\n"


def load_config(path):
    with open(path, encoding='utf-8') as handle:
        return parse_config(handle.read())


def builtin_spec(name, states=None):
    return RunSpec(builtin_network(name), states or StateAssignment(), name)
