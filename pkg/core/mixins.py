"""
Миксины для команд управления.
Общие аргументы, загрузка конфигурации и обработка ошибок расчета.
"""
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from core.config_format import RunSpec, builtin_spec, load_config, parse_state
from core.exceptions import HomodyneError
from core.utils import csv_output, parse_complex, write_rows
from homodyne_schemes.builders import BUILTIN_NETWORKS, LOCAL_OSCILLATOR, eight_port_states
from homodyne_schemes.observables import HomodyneConfig
from mode_algebra.modes import ModeId

logger = logging.getLogger(__name__)


class HomodyneCommandMixin:
    """
    Базовый миксин: --output и перевод ошибок расчета в CommandError.

    Наследник реализует compute(**options) -> (header, rows).
    """

    def add_arguments(self, parser):
        parser.add_argument('--output', help='Файл для CSV (по умолчанию stdout)')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            header, rows = self.compute(**options)
        except ValidationError as e:
            logger.error(f"Команда {self.command_name()}: ошибка конфигурации: {'; '.join(e.messages)}")
            raise CommandError("\n".join(e.messages)) from e
        except (HomodyneError, ValueError, OSError) as e:
            logger.error(f"Команда {self.command_name()}: {e}")
            raise CommandError(str(e)) from e

        with csv_output(self.stdout, options.get('output')) as writer:
            write_rows(writer, header, rows)
        if options.get('output'):
            self.stderr.write(self.style.SUCCESS(f"Записано строк: {len(rows)} в {options['output']}"))

    def command_name(self):
        return self.__class__.__module__.rsplit('.', 1)[-1]

    def compute(self, **options):
        raise NotImplementedError

    @staticmethod
    def complex_option(value, name):
        try:
            return parse_complex(value)
        except ValueError:
            raise CommandError(f"--{name}: некорректное комплексное число {value!r}") from None

    @staticmethod
    def state_option(value, name):
        if value is None:
            return None
        try:
            return parse_state(value).validate()
        except (ValueError, HomodyneError) as e:
            raise CommandError(f"--{name}: {e}") from None


class RunSpecCommandMixin(HomodyneCommandMixin):
    """
    Команды, работающие со схемой: необязательный файл CONFIG и --network.
    """
    default_network = 'fig1'

    def add_arguments(self, parser):
        parser.add_argument('config', nargs='?', help='Файл конфигурации схемы и состояний')
        parser.add_argument(
            '--network', choices=sorted(BUILTIN_NETWORKS), default=None,
            help='Встроенная схема, если файл конфигурации не задан',
        )
        super().add_arguments(parser)

    def load_spec(self, options) -> RunSpec:
        if options.get('config'):
            spec = load_config(options['config'])
            logger.info(f"Загружена конфигурация {options['config']}: схема {spec.builtin or spec.network.name}")
            return spec
        return builtin_spec(options.get('network') or self.default_network)

    @staticmethod
    def spec_option(spec, options, name, convert=int, required=False):
        """
        Значение флага, а если он не задан - записи 'param <name>' конфигурации.
        """
        if options.get(name) is not None:
            return options[name]
        value = spec.param(name)
        if value is None:
            if required:
                raise CommandError(f"Не задан параметр {name}: нужен флаг --{name} или запись 'param {name}'")
            return None
        try:
            return convert(value)
        except ValueError:
            raise CommandError(f"param {name}: некорректное значение {value!r}") from None


class ReadoutCommandMixin(RunSpecCommandMixin):
    """
    Команды одночастотного анализа: --gamma и --signal задают значения
    по умолчанию для встроенной схемы. Если задан CONFIG, амплитуда
    гетеродина берется из состояния l_i, а флаги не используются.
    """

    def add_arguments(self, parser):
        parser.add_argument('--gamma', default='1', help='Амплитуда гетеродина γ (RE+IMi)')
        parser.add_argument('--signal', default='coherent 1+0i', help='Состояние сигнала b')
        super().add_arguments(parser)

    def readout(self, spec, options):
        if options.get('config'):
            gamma = 0j
            if LOCAL_OSCILLATOR in spec.network.source_labels:
                gamma = spec.states.state(ModeId(LOCAL_OSCILLATOR)).mean
            return HomodyneConfig.single(gamma), spec.states
        config = HomodyneConfig.single(self.complex_option(options['gamma'], 'gamma'))
        signal = self.state_option(options['signal'], 'signal')
        return config, eight_port_states(config, signal)


def add_two_photon_arguments(parser):
    parser.add_argument('--gamma', default='1', help='Модуль амплитуды гетеродина |γ|')
    parser.add_argument('--theta', type=float, default=0.0, help='Угол гомодинирования θ, рад')
    parser.add_argument('--signal-plus', default='vacuum', help='Состояние боковой b+')
    parser.add_argument('--signal-minus', default='vacuum', help='Состояние боковой b-')
