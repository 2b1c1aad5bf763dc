# core/management/commands/nogo.py
from django.core.management.base import BaseCommand

from core.mixins import HomodyneCommandMixin
from homodyne_schemes.quadratures import check_quadrature_accessibility


class Command(HomodyneCommandMixin, BaseCommand):
    help = 'Проверка доступности квадратуры обычным балансным гомодином'

    def add_command_arguments(self, parser):
        parser.add_argument('--gamma-plus', required=True, help='γ₊ (RE+IMi)')
        parser.add_argument('--gamma-minus', required=True, help='γ₋ (RE+IMi)')

    def compute(self, **options):
        decision = check_quadrature_accessibility(
            self.complex_option(options['gamma_plus'], 'gamma-plus'),
            self.complex_option(options['gamma_minus'], 'gamma-minus'),
        )
        return ('decision', 'determinant'), [(decision.label, decision.determinant)]
