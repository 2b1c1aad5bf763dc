# core/management/commands/sweep_omega.py
from django.core.management.base import BaseCommand

from core.sweeps import grid
from noise_spectra.referral import ResponseModel

from .refer import HEADER, ReferralMixin


class Command(ReferralMixin, BaseCommand):
    help = 'Развертка шума, пересчитанного к сигналу, по частоте Ω'

    def add_frequency_arguments(self, parser):
        parser.add_argument('--min', type=float, default=None, help='Начальная частота (по умолчанию из таблицы)')
        parser.add_argument('--max', type=float, default=None, help='Конечная частота (по умолчанию из таблицы)')
        parser.add_argument('--steps', type=int, default=None, help='Число точек (по умолчанию размер таблицы)')

    def compute(self, **options):
        model = ResponseModel.from_csv(options['response'])
        table = model.frequencies
        frequencies = grid(
            table[0] if options['min'] is None else options['min'],
            table[-1] if options['max'] is None else options['max'],
            len(table) if options['steps'] is None else options['steps'],
        )
        rows = [(index, *row) for index, row in enumerate(self.referred_rows(model, frequencies, options))]
        return ('index', *HEADER), rows
