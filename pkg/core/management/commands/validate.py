# core/management/commands/validate.py
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand

from core.mixins import RunSpecCommandMixin
from homodyne_schemes.quadratures import commutation_table
from network_model.networks import validate


class Command(RunSpecCommandMixin, BaseCommand):
    help = 'Проверка корректности оптической схемы'

    def compute(self, **options):
        try:
            spec = self.load_spec(options)
        except ValidationError as e:
            return ('status', 'code', 'message'), [('violation', 'config', message) for message in e.messages]
        rows = [('violation', v.code, v.message) for v in validate(spec.network)]

        # Для встроенных схем дополнительно проверяем совместимость входных мод
        if spec.builtin:
            for (x, y), value in sorted(commutation_table(spec.network).items()):
                expected = x.rstrip('†') == y.rstrip('†') and x != y
                if not expected and not value.is_zero():
                    rows.append(('violation', 'non-commuting modes', f"[{x}, {y}] = {value.pretty()}"))

        if not rows:
            rows.append(('ok', '', ''))
        return ('status', 'code', 'message'), rows
