# core/management/commands/refer.py
from django.core.management.base import BaseCommand

from core.mixins import HomodyneCommandMixin, add_two_photon_arguments
from core.sweeps import theta_point
from noise_spectra.referral import ResponseModel, referred_sweep

HEADER = ('omega', 'abs_R', 'S_hn', 'intrinsic', 'penalty', 'total')


class ReferralMixin(HomodyneCommandMixin):
    """
    Общие аргументы пересчета шума t_θ к сигналу.
    """

    def add_command_arguments(self, parser):
        parser.add_argument('--response', required=True, help='CSV: Ω, Re R, Im R, S_hn')
        add_two_photon_arguments(parser)
        self.add_frequency_arguments(parser)

    def add_frequency_arguments(self, parser):
        pass

    def referred_rows(self, model, frequencies, options):
        noise = theta_point(
            options['theta'],
            amplitude=abs(self.complex_option(options['gamma'], 'gamma')),
            signal_plus=self.state_option(options['signal_plus'], 'signal-plus'),
            signal_minus=self.state_option(options['signal_minus'], 'signal-minus'),
        )
        return [
            (point.frequency, point.response_modulus, point.s_hn, point.intrinsic, point.penalty, point.total)
            for point in referred_sweep(noise, model, frequencies)
        ]


class Command(ReferralMixin, BaseCommand):
    help = 'Шум t_θ, пересчитанный к сигналу по таблице отклика'

    def add_frequency_arguments(self, parser):
        parser.add_argument(
            '--omega', type=float, nargs='*', default=None,
            help='Частоты Ω (по умолчанию узлы таблицы отклика)',
        )

    def compute(self, **options):
        model = ResponseModel.from_csv(options['response'])
        frequencies = options['omega'] or model.frequencies
        return HEADER, self.referred_rows(model, frequencies, options)
