"""
Метки бозонных мод.
"""
from dataclasses import dataclass
from enum import Enum


class Sideband(str, Enum):
    """
    Боковая частота моды: ω₀+Ω, ω₀−Ω или одночастотный анализ.

    Значения совпадают с суффиксами в текстовых описаниях ('b+', 'l_i-').
    """
    NONE = ''
    PLUS = '+'
    MINUS = '-'


@dataclass(frozen=True, order=True)
class ModeId:
    """
    Идентификатор моды: метка порта и боковая частота.

    Порядок лексикографический по (port_label, sideband) и задает
    каноническую сортировку операторов внутри монома.
    """
    port_label: str
    sideband: Sideband = Sideband.NONE

    def __str__(self):
        return f"{self.port_label}{self.sideband.value}"

    def at(self, sideband):
        """Та же метка порта на другой боковой частоте."""
        return ModeId(self.port_label, Sideband(sideband))


def parse_mode(text):
    """
    Разбирает запись вида 'b', 'b+', 'l_i-' в ModeId.
    """
    text = text.strip()
    if not text:
        raise ValueError("Пустое имя моды")
    if text[-1] in '+-' and len(text) > 1:
        return ModeId(text[:-1], Sideband(text[-1]))
    return ModeId(text)
