# core/management/commands/sweep_theta.py
from django.core.management.base import BaseCommand

from core.mixins import HomodyneCommandMixin, add_two_photon_arguments
from core.sweeps import grid, theta_sweep


class Command(HomodyneCommandMixin, BaseCommand):
    help = 'Развертка шума t_θ по углу гомодинирования'

    def add_command_arguments(self, parser):
        parser.add_argument('--min', type=float, required=True, help='Начальный угол, рад')
        parser.add_argument('--max', type=float, required=True, help='Конечный угол, рад')
        parser.add_argument('--steps', type=int, required=True, help='Число точек')
        parser.add_argument('--workers', type=int, default=None, help='Число процессов')
        add_two_photon_arguments(parser)

    def compute(self, **options):
        thetas = grid(options['min'], options['max'], options['steps'])
        results = theta_sweep(
            thetas,
            amplitude=abs(self.complex_option(options['gamma'], 'gamma')),
            signal_plus=self.state_option(options['signal_plus'], 'signal-plus'),
            signal_minus=self.state_option(options['signal_minus'], 'signal-minus'),
            workers=options['workers'],
        )
        rows = [
            (index, theta, noise.total, noise.intrinsic, noise.photon_penalty, noise.vacuum_floor)
            for index, (theta, noise) in enumerate(zip(thetas, results))
        ]
        return ('index', 'theta', 'S_total', 'intrinsic', 'photon_penalty', 'vacuum_floor'), rows
