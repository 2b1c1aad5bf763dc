# core/management/commands/analyze.py
from django.core.management.base import BaseCommand

from core.mixins import ReadoutCommandMixin
from homodyne_schemes.builders import scheme_kind
from homodyne_schemes.observables import observable_s, observable_sD1D2, observable_sD3D4, recover_b
from network_model.networks import detector_operator
from state_engine.expectation import expectation


class Command(ReadoutCommandMixin, BaseCommand):
    help = 'Средние постобработанных наблюдаемых схемы'

    def compute(self, **options):
        spec = self.load_spec(options)
        net = spec.network
        kind = scheme_kind(net)

        if kind == 'fig1':
            _, states = self.readout(spec, options)
            observables = [observable_s(net)]
        elif kind == 'fig2':
            config, states = self.readout(spec, options)
            observables = [observable_sD1D2(net), observable_sD3D4(net), *recover_b(net, config)]
        else:
            states = spec.states
            rows = []
            for name in net.detector_names:
                value = expectation(detector_operator(net, name), states)
                rows.append((f"n[{name}]", value.real, value.imag))
            return ('observable', 're', 'im'), rows

        rows = []
        for observable in observables:
            value = observable.evaluate(states)
            rows.append((observable.name, value.real, value.imag))
        return ('observable', 're', 'im'), rows
