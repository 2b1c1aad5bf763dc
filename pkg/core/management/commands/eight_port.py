# core/management/commands/eight_port.py
from django.core.management.base import BaseCommand

from core.mixins import ReadoutCommandMixin
from homodyne_schemes.builders import SIGNAL
from homodyne_schemes.observables import recover_b
from mode_algebra.modes import ModeId
from noise_spectra.spectra import eight_port_noise
from state_engine.expectation import mean_amplitude


class Command(ReadoutCommandMixin, BaseCommand):
    help = 'Восстановление ⟨b⟩ восьмипортовой схемой и его шум'
    default_network = 'fig2'

    def compute(self, **options):
        spec = self.load_spec(options)
        config, states = self.readout(spec, options)
        t_plus, t_minus = recover_b(spec.network, config)
        noise = eight_port_noise(spec.network, config, states)
        rows = [
            ('mean_b', mean_amplitude(states, ModeId(SIGNAL))),
            ('t_plus', t_plus.evaluate(states)),
            ('t_minus', t_minus.evaluate(states)),
            ('S_t_plus', noise.direct),
            ('S_t_minus', noise.companion),
            ('intrinsic', noise.intrinsic),
            ('photon_penalty', noise.photon_penalty),
            ('vacuum_floor', noise.vacuum_floor),
            ('S_total', noise.total),
        ]
        return ('quantity', 'value'), rows
