"""
Тесты алгебры нормально упорядоченных полиномов.
"""
from math import sqrt

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import NonIsometricMapError
from fock_oracle.oracle import operator_matrix
from fock_oracle.spaces import FockConfig

from .modes import ModeId, Sideband, parse_mode
from .polynomials import OperatorPoly, adjoint, check_isometry, commutator, multiply, substitute

B = ModeId('b')
L = ModeId('l_i')
C = ModeId('c_o')


def random_poly(rng, modes=(B, L), max_degree=2, terms=4):
    """Случайный полином степени не выше max_degree."""
    result = OperatorPoly()
    for _ in range(terms):
        degree = rng.integers(0, max_degree + 1)
        creators = tuple(modes[i] for i in rng.integers(0, len(modes), size=rng.integers(0, degree + 1)))
        annihilators = tuple(modes[i] for i in rng.integers(0, len(modes), size=degree - len(creators)))
        coeff = complex(rng.normal(), rng.normal())
        result = result + OperatorPoly({(creators, annihilators): coeff})
    return result


class ModeIdTest(SimpleTestCase):
    """
    Тесты меток мод.
    """

    def test_parse_and_render(self):
        self.assertEqual(parse_mode('b+'), ModeId('b', Sideband.PLUS))
        self.assertEqual(parse_mode('l_i-'), ModeId('l_i', Sideband.MINUS))
        self.assertEqual(parse_mode('e_i'), ModeId('e_i'))
        self.assertEqual(str(ModeId('l_i', Sideband.MINUS)), 'l_i-')

    def test_empty_name_rejected(self):
        with self.assertRaises(ValueError):
            parse_mode('  ')

    def test_ordering_is_lexicographic(self):
        self.assertLess(ModeId('b'), ModeId('b', Sideband.PLUS))
        self.assertLess(ModeId('b', Sideband.MINUS), ModeId('e_i'))


class NormalOrderingTest(SimpleTestCase):
    """
    Тесты нормального упорядочения произведений.
    """

    def test_number_operator_squared(self):
        n = OperatorPoly.number(B)
        expected = OperatorPoly({((B, B), (B, B)): 1, ((B,), (B,)): 1})
        self.assertEqual(n * n, expected)

    def test_canonical_commutator(self):
        a = OperatorPoly.annihilator(B)
        self.assertEqual(commutator(a, adjoint(a)), OperatorPoly.constant(1))
        self.assertTrue(commutator(a, OperatorPoly.creator(L)).is_zero())
        self.assertTrue(commutator(a, OperatorPoly.annihilator(L)).is_zero())

    def test_annihilator_power_times_creator_power(self):
        a = OperatorPoly.annihilator(B)
        a_dag = OperatorPoly.creator(B)
        # a²(a†)² = a†²a² + 4a†a + 2
        product = a * a * a_dag * a_dag
        self.assertEqual(product.coefficient((B, B), (B, B)), 1)
        self.assertEqual(product.coefficient((B,), (B,)), 4)
        self.assertEqual(product.coefficient(), 2)

    def test_cancellation_drops_terms(self):
        p = OperatorPoly.number(B) + OperatorPoly.annihilator(L)
        self.assertTrue((p - p).is_zero())
        self.assertEqual((p - p).pretty(), '0')

    def test_tiny_coefficients_dropped(self):
        p = OperatorPoly({((B,), ()): 1e-14})
        self.assertTrue(p.is_zero())

    def test_degree_and_modes(self):
        p = OperatorPoly.number(B) * OperatorPoly.annihilator(L)
        self.assertEqual(p.degree(), 3)
        self.assertEqual(p.modes(), {B, L})


class RingAxiomsTest(SimpleTestCase):
    """
    Свойства кольца на случайных полиномах.
    """

    def setUp(self):
        self.rng = np.random.default_rng(20240611)

    def test_associativity_and_distributivity(self):
        for _ in range(20):
            p, q, r = (random_poly(self.rng) for _ in range(3))
            self.assertTrue(multiply(multiply(p, q), r).is_close(multiply(p, multiply(q, r)), 1e-10))
            self.assertTrue(multiply(p, q + r).is_close(multiply(p, q) + multiply(p, r), 1e-10))

    def test_adjoint_reverses_products(self):
        for _ in range(20):
            p, q = random_poly(self.rng), random_poly(self.rng)
            self.assertTrue(adjoint(p * q).is_close(adjoint(q) * adjoint(p), 1e-10))
            self.assertEqual(adjoint(adjoint(p)), p)

    def test_number_operator_is_self_adjoint(self):
        self.assertTrue(OperatorPoly.number(B).is_self_adjoint())
        self.assertFalse(OperatorPoly.annihilator(B).is_self_adjoint())


class MatrixRepresentationTest(SimpleTestCase):
    """
    Произведение полиномов согласуется с произведением матриц
    в усеченном фоковском базисе на состояниях с малым числом фотонов.
    """

    def test_product_matches_matrix_product(self):
        rng = np.random.default_rng(7)
        config = FockConfig(8, (B, L))
        levels = config.levels
        low = [
            index for index in range(config.dimension)
            if max(np.unravel_index(index, (levels, levels))) <= 4
        ]
        for _ in range(10):
            p, q = random_poly(rng), random_poly(rng)
            left = operator_matrix(p * q, config).toarray()
            right = operator_matrix(p, config).toarray() @ operator_matrix(q, config).toarray()
            np.testing.assert_allclose(left[:, low], right[:, low], atol=1e-9)


class SubstituteTest(SimpleTestCase):
    """
    Тесты подстановки мод.
    """

    def test_balanced_output_port(self):
        image = {C: {B: 1 / sqrt(2), L: 1 / sqrt(2)}}
        result = substitute(OperatorPoly.number(C), image)
        expected = OperatorPoly({
            ((B,), (B,)): 0.5, ((B,), (L,)): 0.5, ((L,), (B,)): 0.5, ((L,), (L,)): 0.5,
        })
        self.assertTrue(result.is_close(expected, 1e-15))

    def test_isometry_deviation(self):
        deviation = check_isometry({C: {B: 1 / sqrt(2), L: 1 / sqrt(2)}, B: {B: 1 / sqrt(2), L: -1 / sqrt(2)}})
        self.assertIsInstance(deviation, float)
        self.assertLess(deviation, 1e-15)
        self.assertEqual(check_isometry({}), 0.0)

    def test_non_isometric_map_rejected(self):
        with self.assertRaises(NonIsometricMapError):
            substitute(OperatorPoly.number(C), {C: {B: 0.8, L: 0.8}})

    def test_unmapped_modes_kept(self):
        p = OperatorPoly.creator(L) * OperatorPoly.annihilator(C)
        result = substitute(p, {C: {B: 1}})
        self.assertEqual(result, OperatorPoly({((L,), (B,)): 1}))
