"""
Вспомогательные функции: запись чисел и вывод CSV.
"""
import csv
import re
from contextlib import contextmanager

COMPLEX_PATTERN = re.compile(
    r'^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)'
    r'(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$'
)


def format_number(value):
    """
    Вещественное число с 17 значащими цифрами (точный обратный разбор).
    """
    return '%.17g' % (float(value) + 0.0)


def format_complex(value):
    """
    Комплексное число в виде RE+IMi.
    """
    value = complex(value)
    imag = format_number(value.imag)
    if not imag.startswith('-'):
        imag = '+' + imag
    return f"{format_number(value.real)}{imag}i"


def parse_complex(text):
    """
    Разбирает 'RE+IMi', 'RE-IMi' или вещественное число.

    Raises:
        ValueError: некорректная запись
    """
    text = text.strip()
    match = COMPLEX_PATTERN.match(text)
    if match:
        return complex(float(match.group('re')), float(match.group('im')))
    if text.endswith('i'):
        raise ValueError(f"Некорректное комплексное число: {text}")
    return complex(float(text))


def format_cell(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, (int, float)) or hasattr(value, '__float__'):
        return format_number(value)
    return str(value)


@contextmanager
def csv_output(stream, path=None):
    """
    csv.writer в файл path или в переданный поток.
    """
    if path:
        with open(path, 'w', newline='', encoding='utf-8') as handle:
            yield csv.writer(handle, lineterminator='\n')
    else:
        yield csv.writer(stream, lineterminator='\n')


def write_rows(writer, header, rows):
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
