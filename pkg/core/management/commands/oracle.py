# core/management/commands/oracle.py
from django.core.management.base import BaseCommand

from core.mixins import ReadoutCommandMixin
from fock_oracle.oracle import minimal_cutoff, network_config, oracle_network
from network_model.networks import detector_operator
from state_engine.expectation import expectation


class Command(ReadoutCommandMixin, BaseCommand):
    help = 'Сверка средних детекторов с прямым расчетом в фоковском пространстве'

    def add_command_arguments(self, parser):
        parser.add_argument('--cutoff', type=int, default=None, help='Усечение по числу фотонов в моде')

    def compute(self, **options):
        spec = self.load_spec(options)
        net = spec.network
        _, states = self.readout(spec, options)

        cutoff = self.spec_option(spec, options, 'cutoff')
        if cutoff is None:
            cutoff = minimal_cutoff(states, network_config(net, 2).modes, pooled=True)
        config = network_config(net, cutoff)
        counts = oracle_network(net, states, config)

        rows = []
        for name in net.detector_names:
            symbolic = expectation(detector_operator(net, name), states).real
            rows.append((name, counts[name], symbolic, counts[name] - symbolic))
        return ('detector', 'oracle', 'symbolic', 'difference'), rows
