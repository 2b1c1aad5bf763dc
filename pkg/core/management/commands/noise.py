# core/management/commands/noise.py
from django.core.management.base import BaseCommand

from core.mixins import HomodyneCommandMixin
from core.sweeps import theta_point
from homodyne_schemes.builders import build_eight_port, eight_port_states
from homodyne_schemes.observables import HomodyneConfig
from noise_spectra.spectra import eight_port_noise

HEADER = ('quantity', 'S_total', 'intrinsic', 'photon_penalty', 'vacuum_floor', 'direct')


class Command(HomodyneCommandMixin, BaseCommand):
    help = 'Спектральная плотность шума восьмипортовой схемы'

    def add_command_arguments(self, parser):
        parser.add_argument('--two-photon', action='store_true', help='Двухфотонная наблюдаемая t_θ')
        parser.add_argument('--gamma', default='1', help='Амплитуда гетеродина γ (RE+IMi)')
        parser.add_argument('--theta', type=float, default=0.0, help='Угол гомодинирования θ, рад')
        parser.add_argument('--signal', default='vacuum', help='Состояние сигнала b')
        parser.add_argument('--signal-plus', default='vacuum', help='Состояние боковой b+')
        parser.add_argument('--signal-minus', default='vacuum', help='Состояние боковой b-')

    def compute(self, **options):
        gamma = self.complex_option(options['gamma'], 'gamma')
        if options['two_photon']:
            noise = theta_point(
                options['theta'],
                amplitude=abs(gamma),
                signal_plus=self.state_option(options['signal_plus'], 'signal-plus'),
                signal_minus=self.state_option(options['signal_minus'], 'signal-minus'),
            )
            return HEADER, [('t_theta', noise.total, noise.intrinsic, noise.photon_penalty,
                             noise.vacuum_floor, noise.direct)]

        config = HomodyneConfig.single(gamma)
        states = eight_port_states(config, self.state_option(options['signal'], 'signal'))
        noise = eight_port_noise(build_eight_port(), config, states)
        return HEADER, [
            ('t_plus', noise.total, noise.intrinsic, noise.photon_penalty, noise.vacuum_floor, noise.direct),
            ('t_minus', noise.total, noise.intrinsic, noise.photon_penalty, noise.vacuum_floor, noise.companion),
        ]
