"""
Встроенные схемы: балансный гомодин и восьмипортовая (двойная
балансная) схема, а также назначения состояний для них.
"""
import logging
from math import pi

from mode_algebra.modes import ModeId, Sideband
from network_model.elements import BeamSplitter, Detector, PhaseRotator, Source
from network_model.networks import Network
from state_engine.states import ModeState, StateAssignment

logger = logging.getLogger(__name__)

SIGNAL = 'b'
LOCAL_OSCILLATOR = 'l_i'
SIGNAL_VACUUM = 'e_i'
OSCILLATOR_VACUUM = 'f_i'

BALANCED_SOURCES = (SIGNAL, LOCAL_OSCILLATOR)
BALANCED_DETECTORS = ('D1', 'D2')
EIGHT_PORT_SOURCES = (SIGNAL, SIGNAL_VACUUM, LOCAL_OSCILLATOR, OSCILLATOR_VACUUM)
EIGHT_PORT_DETECTORS = ('D1', 'D2', 'D3', 'D4')


def build_balanced_homodyne():
    """
    Балансный гомодин: сигнал b и гетеродин l_i на светоделителе 50:50,
    D1 считает фотоны в c_o, D2 - в d_o.
    """
    return Network(
        elements=(
            BeamSplitter.balanced('BS', ('b', 'l_i'), ('c_o', 'd_o')),
        ),
        sources=tuple(Source(label) for label in BALANCED_SOURCES),
        detectors=(Detector('D1', 'c_o'), Detector('D2', 'd_o')),
        name='fig1',
    )


def build_eight_port(phi=pi / 2):
    """
    Восьмипортовая схема: сигнал делится на BS1 с вакуумом e_i, гетеродин
    на BS3 с вакуумом f_i, одна ветвь гетеродина проходит фазовращатель PR,
    BS2 и BS4 смешивают ветви перед детекторами D1-D4.
    """
    return Network(
        elements=(
            BeamSplitter.balanced('BS1', ('b', 'e_i'), ('b_2', 'b_1')),
            BeamSplitter.balanced('BS3', ('l_i', 'f_i'), ('l_1i', 'l_0i')),
            PhaseRotator('PR', phi, ('l_1i',), ('l_14i',)),
            BeamSplitter.balanced('BS2', ('b_1', 'l_0i'), ('c_1o', 'd_1o'), flip=True),
            BeamSplitter.balanced('BS4', ('b_2', 'l_14i'), ('d_2o', 'c_2o'), flip=True),
        ),
        sources=tuple(Source(label) for label in EIGHT_PORT_SOURCES),
        detectors=(
            Detector('D1', 'c_1o'),
            Detector('D2', 'd_1o'),
            Detector('D3', 'c_2o'),
            Detector('D4', 'd_2o'),
        ),
        name='fig2',
    )


BUILTIN_NETWORKS = {
    'fig1': build_balanced_homodyne,
    'fig2': build_eight_port,
}


def builtin_network(name):
    try:
        return BUILTIN_NETWORKS[name]()
    except KeyError:
        raise ValueError(f"Неизвестная встроенная схема: {name}") from None


def eight_port_states(config, signal=None, sideband=Sideband.NONE):
    """
    Назначение для одночастотного анализа: сигнал b, гетеродин l_i в
    когерентном состоянии с амплитудой config.gamma, вакуум в e_i и f_i.
    """
    sideband = Sideband(sideband)
    gamma = config.gamma_for(sideband)
    states = {ModeId(LOCAL_OSCILLATOR, sideband): ModeState.coherent(gamma)}
    if signal is not None:
        states[ModeId(SIGNAL, sideband)] = signal
    return StateAssignment(states)


def two_photon_states(config, signal_plus=None, signal_minus=None):
    """
    Назначение для двухфотонного анализа: моды b± и l_i± на обеих боковых.
    """
    states = {
        ModeId(LOCAL_OSCILLATOR, Sideband.PLUS): ModeState.coherent(config.gamma_plus),
        ModeId(LOCAL_OSCILLATOR, Sideband.MINUS): ModeState.coherent(config.gamma_minus),
    }
    if signal_plus is not None:
        states[ModeId(SIGNAL, Sideband.PLUS)] = signal_plus
    if signal_minus is not None:
        states[ModeId(SIGNAL, Sideband.MINUS)] = signal_minus
    return StateAssignment(states)


def scheme_kind(net):
    """
    'fig1' или 'fig2', если метки источников и детекторов совпадают
    со встроенной схемой, иначе пустая строка.
    """
    labels, detectors = set(net.source_labels), set(net.detector_names)
    if labels == set(BALANCED_SOURCES) and detectors == set(BALANCED_DETECTORS):
        return 'fig1'
    if labels == set(EIGHT_PORT_SOURCES) and detectors == set(EIGHT_PORT_DETECTORS):
        return 'fig2'
    return ''
