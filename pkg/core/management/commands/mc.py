# core/management/commands/mc.py
from math import sqrt

from django.core.management.base import BaseCommand

from core.mixins import ReadoutCommandMixin
from homodyne_schemes.builders import scheme_kind
from homodyne_schemes.observables import observable_s, observable_sD1D2, observable_sD3D4
from noise_spectra.monte_carlo import mc_counts


class Command(ReadoutCommandMixin, BaseCommand):
    help = 'Моделирование счета фотонов (только когерентные источники)'

    def add_command_arguments(self, parser):
        parser.add_argument('--shots', type=int, default=None, help='Число выстрелов')
        parser.add_argument('--seed', type=int, default=None, help='Начальное значение генератора')

    def compute(self, **options):
        spec = self.load_spec(options)
        net = spec.network
        _, states = self.readout(spec, options)
        kind = scheme_kind(net)
        if kind == 'fig1':
            observables = [observable_s(net)]
        elif kind == 'fig2':
            observables = [observable_sD1D2(net), observable_sD3D4(net)]
        else:
            observables = []

        shots = self.spec_option(spec, options, 'shots', required=True)
        seed = self.spec_option(spec, options, 'seed')
        result = mc_counts(net, states, shots, seed, observables)
        rows = [
            (f"n[{item.detector}]", item.expected, item.mean, item.variance, sqrt(item.variance / result.shots))
            for item in result.detectors
        ]
        for observable, estimate in zip(observables, result.estimates):
            rows.append((estimate.name, observable.evaluate(states), estimate.estimate, '', estimate.standard_error))
        return ('quantity', 'expected', 'estimate', 'variance', 'standard_error'), rows
