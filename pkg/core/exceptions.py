"""
Исключения расчетных модулей проекта.

Все ошибки наследуются от HomodyneError, чтобы команды управления
могли единообразно превращать их в CommandError.
"""


class HomodyneError(Exception):
    """
    Базовая ошибка расчетов.
    """


class NonIsometricMapError(HomodyneError):
    """
    Линейная подстановка мод не является изометрией (нефизичный элемент).
    """


class NetworkError(HomodyneError):
    """
    Ошибка описания или обхода оптической схемы.
    """


class UnknownPortError(NetworkError):
    """
    Порт не существует или недостижим из источников.
    """


class CyclicWiringError(NetworkError):
    """
    В схеме есть цикл (резонаторы не поддерживаются).
    """


class TopologyError(NetworkError):
    """
    Схема не совпадает с той, для которой определена наблюдаемая.
    """


class StateError(HomodyneError):
    """
    Ошибка задания квантового состояния.
    """


class UnassignedModeError(StateError):
    """
    Для моды не задано состояние.
    """


class UnphysicalStateError(StateError):
    """
    Гауссовы моменты нарушают соотношение неопределенностей.
    """


class MixedSidebandError(StateError):
    """
    Одночастотные моды и моды боковых частот в одном назначении.
    """


class SchemeError(HomodyneError):
    """
    Нарушены предпосылки схемы гомодинного детектирования.
    """


class DegenerateLocalOscillatorError(SchemeError):
    """
    Нулевая амплитуда гетеродина.
    """


class PhaseMismatchError(SchemeError):
    """
    Фазы гетеродина на боковых частотах не совпадают с углом гомодинирования.
    """


class AmplitudeMismatchError(SchemeError):
    """
    Модули амплитуд гетеродина на боковых частотах различаются.
    """


class NoiseError(HomodyneError):
    """
    Ошибка расчета спектральной плотности шума.
    """


class NonZeroMeanError(NoiseError):
    """
    Оператор шума имеет ненулевое среднее.
    """


class ImaginaryResidueError(NoiseError):
    """
    Мнимая часть спектральной плотности превышает допуск.
    """


class NoiseRelationError(NoiseError):
    """
    Прямой расчет шума расходится с замкнутой формулой.
    """


class ResponseNullError(NoiseError):
    """
    Функция отклика обращается в ноль.
    """


class PreconditionError(NoiseError):
    """
    Состояние не удовлетворяет предпосылкам формулы шума.
    """


class OracleError(HomodyneError):
    """
    Ошибка оракула в усеченном фоковском пространстве.
    """


class DimensionCeilingError(OracleError):
    """
    Размерность пространства превышает заданный потолок.
    """


class TruncationTailError(OracleError):
    """
    Хвост распределения за пределом усечения слишком велик.
    """


class MonteCarloError(HomodyneError):
    """
    Ошибка моделирования счета фотонов.
    """
