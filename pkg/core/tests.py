"""
Тесты формата конфигурации, записи чисел и команд управления.
"""
import csv
import os
import tempfile
from io import StringIO

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from mode_algebra.modes import ModeId, Sideband
from network_model.elements import BeamSplitter, PhaseRotator
from state_engine.states import ModeState, StateAssignment

from .config_format import builtin_spec, parse_config, parse_state, render
from .sweeps import grid
from .utils import format_complex, format_number, parse_complex

CUSTOM_CONFIG = """
# светоделитель с фазовращателем в плече гетеродина
element PR phase 0.5 in=l_i out=l_r
element BS beamsplitter 0.6 0.8 flip in=b,l_x out=c,d
wire l_r l_x
source b gaussian 0.3+0.1i 0.2 0.05+0i
source l_i coherent 1 0
detector D1 port=c
detector D2 port=d
param shots 1000
"""


def run_command(name, *args, **options):
    """Выполняет команду и возвращает разобранный CSV."""
    out = StringIO()
    call_command(name, *args, stdout=out, stderr=StringIO(), **options)
    return list(csv.reader(StringIO(out.getvalue())))


class NumberFormatTest(SimpleTestCase):
    """
    Тесты записи и разбора чисел.
    """

    def test_complex_format(self):
        self.assertEqual(format_complex(2), '2+0i')
        self.assertEqual(format_complex(-0.5 - 1j), '-0.5-1i')

    def test_exact_round_trip(self):
        for value in (0.1, 1 / 3, -2.5e-17, 12345.678901234567):
            self.assertEqual(float(format_number(value)), value)
        value = complex(0.1, -1 / 7)
        self.assertEqual(parse_complex(format_complex(value)), value)

    def test_parse_complex(self):
        self.assertEqual(parse_complex('0.7-0.2i'), 0.7 - 0.2j)
        self.assertEqual(parse_complex('1e-3+2E2i'), complex(1e-3, 200))
        self.assertEqual(parse_complex('3'), 3)
        with self.assertRaises(ValueError):
            parse_complex('1+i')

    def test_grid(self):
        self.assertEqual(len(grid(0, 6.283, 64)), 64)
        self.assertEqual(list(grid(1.5, 1.5, 1)), [1.5])
        with self.assertRaises(ValueError):
            grid(2, 1, 10)
        with self.assertRaises(ValueError):
            grid(0, 1, 0)


class ParseStateTest(SimpleTestCase):
    """
    Тесты записи состояний.
    """

    def test_coherent_pair(self):
        self.assertEqual(parse_state('coherent 0.7 -0.2'), ModeState.coherent(0.7 - 0.2j))

    def test_coherent_literal(self):
        self.assertEqual(parse_state(['coherent', '1+2i']), ModeState.coherent(1 + 2j))

    def test_gaussian_forms(self):
        expected = ModeState.gaussian(0.3 + 0.1j, 0.2, 0.05)
        self.assertEqual(parse_state('gaussian 0.3+0.1i 0.2 0.05+0i'), expected)
        self.assertEqual(parse_state('gaussian 0.3 0.1 0.2 0.05 0'), expected)

    def test_errors(self):
        for text in ('', 'vacuum 1', 'coherent', 'gaussian 1 2', 'squeezed 1'):
            with self.assertRaises(ValueError, msg=text):
                parse_state(text)


class ParseConfigTest(SimpleTestCase):
    """
    Тесты разбора конфигурации.
    """

    def test_builtin_with_sources(self):
        spec = parse_config("network fig1\nsource b coherent 0.7 -0.2\nsource l_i coherent 2+0i\n")
        self.assertEqual(spec.builtin, 'fig1')
        self.assertEqual(spec.states.state(ModeId('b')).mean, 0.7 - 0.2j)
        self.assertEqual(spec.network.detector_names, ('D1', 'D2'))

    def test_custom_beamsplitter(self):
        spec = parse_config(
            "element bs1 beamsplitter 0.7071067811865476 0.7071067811865476 in=b,e out=b1,b2\n"
            "source b coherent 1 0\nsource e vacuum\n"
            "detector D1 port=b1\ndetector D2 port=b2\n"
        )
        element = spec.network.elements[0]
        self.assertIsInstance(element, BeamSplitter)
        self.assertEqual((element.r, element.t), (0.7071067811865476, 0.7071067811865476))
        self.assertEqual(element.inputs, ('b', 'e'))
        self.assertEqual(spec.network.source_labels, ('b', 'e'))

    def test_custom_network_elements(self):
        spec = parse_config(CUSTOM_CONFIG)
        self.assertIsInstance(spec.network.elements[0], PhaseRotator)
        self.assertTrue(spec.network.elements[1].flip)
        self.assertEqual(spec.network.wires, (('l_r', 'l_x'),))
        self.assertEqual(spec.states.state(ModeId('b')).n_ex, 0.2)
        self.assertEqual(spec.param('shots'), '1000')
        self.assertIsNone(spec.param('seed'))

    def test_missing_detector(self):
        with self.assertRaises(ValidationError) as raised:
            parse_config("element bs beamsplitter 0.6 0.8 in=b,l_i out=c,d\nsource b vacuum\nsource l_i vacuum\n")
        self.assertTrue(any('no detectors declared' in message for message in raised.exception.messages))

    def test_errors_carry_line_numbers(self):
        with self.assertRaises(ValidationError) as raised:
            parse_config("network fig1\nsource b squeezed 1\nfoo bar\n")
        messages = raised.exception.messages
        self.assertTrue(messages[0].startswith('строка 2:'))
        self.assertTrue(messages[1].startswith('строка 3:'))

    def test_two_photon_sources(self):
        spec = parse_config("network fig2\nsource b+ coherent 1 0\nsource l_i+ coherent 2 0\nsource l_i- coherent 2 0\n")
        self.assertEqual(spec.states.state(ModeId('l_i', Sideband.MINUS)).mean, 2)
        self.assertEqual(spec.states.state(ModeId('b', Sideband.PLUS)).mean, 1)

    def test_mixed_sideband_regimes(self):
        with self.assertRaises(ValidationError) as raised:
            parse_config("network fig2\nsource b coherent 1 0\nsource b+ coherent 0.5 0\nsource l_i- vacuum\n")
        messages = raised.exception.messages
        self.assertEqual(len(messages), 2)
        self.assertTrue(messages[0].startswith('строка 3:'))
        self.assertTrue(messages[1].startswith('строка 4:'))

    def test_unbalanced_ports(self):
        with self.assertRaises(ValidationError):
            parse_config("element bs beamsplitter 0.6 0.8 in=b out=c,d\nsource b vacuum\ndetector D port=c\n")

    def test_malformed_complex(self):
        with self.assertRaises(ValidationError):
            parse_config("network fig1\nsource b coherent 1+i\n")

    def test_builtin_excludes_elements(self):
        with self.assertRaises(ValidationError):
            parse_config("network fig2\ndetector D9 port=x\n")

    def test_unknown_source_for_builtin(self):
        with self.assertRaises(ValidationError):
            parse_config("network fig1\nsource q vacuum\n")

    def test_unphysical_state(self):
        with self.assertRaises(ValidationError):
            parse_config("network fig1\nsource b gaussian 0 0.1 0.5\n")

    def test_non_unitary_element(self):
        with self.assertRaises(ValidationError) as raised:
            parse_config(
                "element bs beamsplitter 0.8 0.8 in=b,l_i out=c,d\nsource b vacuum\nsource l_i vacuum\n"
                "detector D1 port=c\ndetector D2 port=d\n"
            )
        self.assertTrue(any('non-unitary element' in message for message in raised.exception.messages))


class RenderTest(SimpleTestCase):
    """
    Разбор отрисованной конфигурации дает тот же RunSpec.
    """

    def test_custom_round_trip(self):
        spec = parse_config(CUSTOM_CONFIG)
        self.assertEqual(parse_config(render(spec)), spec)

    def test_builtin_round_trip(self):
        states = StateAssignment({
            'b': ModeState.gaussian(1 / 3 - 0.1j, 0.25, 0.1 + 0.2j),
            'l_i': ModeState.coherent(2.5),
            'e_i': ModeState.vacuum(),
        })
        spec = builtin_spec('fig2', states)
        text = render(spec)
        self.assertTrue(text.startswith('network fig2\n'))
        self.assertEqual(parse_config(text), spec)


class CommandsTest(SimpleTestCase):
    """
    Тесты команд управления.
    """

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def write(self, name, text):
        path = os.path.join(self.directory.name, name)
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
        return path

    def test_nogo(self):
        rows = run_command('nogo', gamma_plus='1+0i', gamma_minus='1+0i')
        self.assertEqual(rows, [['decision', 'determinant'], ['inaccessible', '2+0i']])

    def test_nogo_bad_literal(self):
        with self.assertRaises(CommandError):
            run_command('nogo', gamma_plus='1+i', gamma_minus='1')

    def test_nogo_zero_amplitude(self):
        with self.assertRaises(CommandError):
            run_command('nogo', gamma_plus='0', gamma_minus='1')

    def test_analyze_balanced_defaults(self):
        rows = run_command('analyze')
        self.assertEqual(rows[0], ['observable', 're', 'im'])
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[1][0], 's')
        self.assertAlmostEqual(float(rows[1][1]), 2.0, delta=1e-12)
        self.assertAlmostEqual(float(rows[1][2]), 0.0, delta=1e-12)

    def test_analyze_eight_port(self):
        rows = run_command('analyze', network='fig2', gamma='2', signal='coherent 0.7-0.2i')
        values = {row[0]: complex(float(row[1]), float(row[2])) for row in rows[1:]}
        self.assertEqual(set(values), {'s_D1D2', 's_D3D4', 't_plus', 't_minus'})
        self.assertAlmostEqual(values['t_plus'], 0.7 - 0.2j, delta=1e-12)
        self.assertAlmostEqual(values['t_minus'], 0.7 + 0.2j, delta=1e-12)

    def test_analyze_custom_config(self):
        text = CUSTOM_CONFIG.replace('D1', 'X1').replace('D2', 'X2')
        rows = run_command('analyze', self.write('custom.cfg', text))
        self.assertEqual([row[0] for row in rows[1:]], ['n[X1]', 'n[X2]'])

    def test_analyze_bad_signal(self):
        with self.assertRaises(CommandError):
            run_command('analyze', signal='squeezed 1')

    def test_sweep_theta(self):
        rows = run_command('sweep_theta', min=0, max=6.283, steps=64)
        self.assertEqual(rows[0], ['index', 'theta', 'S_total', 'intrinsic', 'photon_penalty', 'vacuum_floor'])
        self.assertEqual(len(rows) - 1, 64)
        self.assertEqual([int(row[0]) for row in rows[1:]], list(range(64)))
        for row in rows[1:]:
            self.assertAlmostEqual(float(row[2]), 2.0, delta=1e-10)

    def test_validate_builtin(self):
        self.assertEqual(run_command('validate', network='fig2'), [['status', 'code', 'message'], ['ok', '', '']])

    def test_validate_broken_config(self):
        path = self.write('broken.cfg', "element bs beamsplitter 0.6 0.8 in=b,l_i out=c,d\nsource b vacuum\n")
        rows = run_command('validate', path)
        self.assertTrue(all(row[0] == 'violation' for row in rows[1:]))
        self.assertTrue(any('no detectors declared' in row[2] for row in rows[1:]))

    def test_eight_port(self):
        rows = dict(run_command('eight_port', gamma='1', signal='coherent 1'))
        self.assertAlmostEqual(float(rows['S_total']), 4.0, delta=1e-10)
        self.assertAlmostEqual(float(rows['S_t_minus']), 4.0, delta=1e-10)
        self.assertAlmostEqual(parse_complex(rows['t_plus']), 1, delta=1e-12)

    def test_noise(self):
        rows = run_command('noise', gamma='2', signal='coherent 1')
        self.assertEqual([row[0] for row in rows[1:]], ['t_plus', 't_minus'])
        self.assertAlmostEqual(float(rows[1][1]), 2.5, delta=1e-10)

    def test_noise_two_photon(self):
        rows = run_command('noise', two_photon=True, theta=0.3)
        self.assertEqual(rows[1][0], 't_theta')
        self.assertAlmostEqual(float(rows[1][1]), 2.0, delta=1e-10)

    def test_refer_and_sweep_omega(self):
        path = self.write('response.csv', "omega,re,im,s_hn\n1,1,0,0\n10,10,0,0\n")
        rows = run_command('refer', response=path)
        self.assertEqual(len(rows), 3)
        self.assertAlmostEqual(float(rows[1][5]), 2.0, delta=1e-10)
        rows = run_command('sweep_omega', response=path, steps=4)
        self.assertEqual(rows[0][0], 'index')
        self.assertEqual(len(rows), 5)

    def test_refer_null_response(self):
        path = self.write('null.csv', "1,0,0,0\n")
        with self.assertRaises(CommandError):
            run_command('refer', response=path, omega=[1.0])

    def test_mc_with_flags(self):
        rows = run_command('mc', shots=2000, seed=3, gamma='3', signal='coherent 1')
        names = [row[0] for row in rows[1:]]
        self.assertEqual(names, ['n[D1]', 'n[D2]', 's'])
        self.assertAlmostEqual(parse_complex(rows[3][1]), 6, delta=1e-12)

    def test_mc_is_deterministic(self):
        self.assertEqual(run_command('mc', shots=500, seed=9), run_command('mc', shots=500, seed=9))

    def test_mc_shots_from_config(self):
        path = self.write('mc.cfg', "network fig1\nsource b coherent 1 0\nsource l_i coherent 3 0\nparam shots 100\n")
        rows = run_command('mc', path, seed=1)
        self.assertEqual(len(rows), 4)

    def test_mc_without_seed(self):
        rows = run_command('mc', shots=100)
        self.assertEqual([row[0] for row in rows[1:]], ['n[D1]', 'n[D2]', 's'])

    def test_mc_requires_shots(self):
        with self.assertRaises(CommandError):
            run_command('mc', seed=1)

    def test_mc_rejects_gaussian_source(self):
        with self.assertRaises(CommandError):
            run_command('mc', shots=10, seed=1, signal='gaussian 0 0.2 0')

    def test_oracle(self):
        rows = run_command('oracle', gamma='1', signal='coherent 0.5')
        self.assertEqual(rows[0], ['detector', 'oracle', 'symbolic', 'difference'])
        for row in rows[1:]:
            self.assertLess(abs(float(row[3])), 1e-8)

    def test_output_file(self):
        path = os.path.join(self.directory.name, 'out.csv')
        run_command('nogo', gamma_plus='1', gamma_minus='2', output=path)
        with open(path, encoding='utf-8') as handle:
            self.assertEqual(handle.read(), 'decision,determinant\ninaccessible,4+0i\n')
