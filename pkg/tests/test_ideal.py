# -*- coding: utf-8 -*-

import unittest
import warnings

from hypothesis import given, settings, strategies as st

from .context import (
    DimensionDegree,
    Ideal,
    PolynomialRing,
    count_points,
    dimension_and_degree,
    eliminate,
    exceptions,
    hilbert_numerator,
    intersection,
    krull_dimension,
    limits,
    multidegree,
    quotient,
    restrict_to_linear,
    saturation,
    slice_count,
    unit_ideal,
)


TWISTED_CUBIC = ['x0*x2 - x1^2', 'x0*x3 - x1*x2', 'x1*x3 - x2^2']


class IdealTestSuite(unittest.TestCase):

    def setUp(self):
        self.p3 = PolynomialRing(['x0', 'x1', 'x2', 'x3'])
        self.twisted_cubic = Ideal(self.p3, TWISTED_CUBIC)
        self.ring = PolynomialRing(['x', 'y', 'z'])

    def test_reduced_basis(self):
        basis = self.twisted_cubic.canonical()
        self.assertEqual(len(basis), 3)
        for element in basis:
            self.assertEqual(element.leading_coefficient(), 1)
        keys = [basis.order.key(e.leading_monomial()) for e in basis]
        self.assertEqual(keys, sorted(keys))

    @settings(max_examples=20, deadline=None)
    @given(
        st.permutations(range(4)), st.integers(1, 9), st.integers(0, 3),
        st.permutations(range(3)))
    def test_reduced_basis_uniqueness(self, order, scale, variable, pick):
        expected = self.twisted_cubic.canonical()
        gens = [self.p3.parse(g) for g in TWISTED_CUBIC]
        a, b = pick[:2]
        gens.append(
            gens[a].scale(scale) - gens[b] * self.p3.gens()[variable])
        ideal = Ideal(self.p3, [gens[i] for i in order])
        self.assertEqual(ideal.canonical(), expected)
        self.assertEqual(
            [str(e) for e in ideal.canonical()],
            [str(e) for e in expected])

    def test_contains(self):
        self.assertTrue(self.twisted_cubic.contains('x0*x3^2 - x2^3'))
        self.assertFalse(self.twisted_cubic.contains('x0'))
        self.assertTrue(Ideal(self.ring, ['x', 'x - 1']).is_unit())
        self.assertTrue(unit_ideal(self.ring).is_unit())
        self.assertFalse(Ideal(self.ring).is_unit())

    def test_equality(self):
        first = Ideal(self.ring, ['x*y', 'x'])
        second = Ideal(self.ring, ['x'])
        self.assertEqual(first, second)
        self.assertEqual(hash(first), hash(second))
        self.assertNotEqual(first, Ideal(self.ring, ['y']))
        self.assertTrue(Ideal(self.ring, ['x*y']).is_subset(second))
        self.assertFalse(second.is_subset(Ideal(self.ring, ['x*y'])))

    def test_mixed_rings(self):
        with self.assertRaises(exceptions.InputError):
            Ideal(self.ring, ['x']).is_subset(Ideal(self.p3, ['x0']))

    def test_step_limit(self):
        with limits(max_gb_steps=1):
            with self.assertRaises(
                    exceptions.ComputationLimitError) as context:
                Ideal(self.p3, TWISTED_CUBIC).canonical()
        self.assertIn('limit', context.exception.statistics)

    def test_eliminate(self):
        ring = PolynomialRing(['t', 'x', 'y'])
        ideal = Ideal(ring, ['x - t', 'y - t^2'])
        result = eliminate(ideal, ['t'])
        plane = PolynomialRing(['x', 'y'])
        self.assertEqual(result.ring, plane)
        self.assertEqual(result, Ideal(plane, ['y - x^2']))

    def test_intersection_and_quotient(self):
        x = Ideal(self.ring, ['x'])
        y = Ideal(self.ring, ['y'])
        self.assertEqual(intersection(x, y), Ideal(self.ring, ['x*y']))
        self.assertEqual(intersection(x, Ideal(self.ring, ['x', 'y'])), x)
        self.assertEqual(
            quotient(Ideal(self.ring, ['x*y', 'x*z']), y), x)
        self.assertTrue(quotient(x, x).is_unit())

    def test_saturation(self):
        ring = PolynomialRing(['x0', 'x1', 'x2'])
        ideal = Ideal(ring, ['x0*x1', 'x0*x2'])
        irrelevant = Ideal(ring, ['x1', 'x2'])
        expected = Ideal(ring, ['x0'])
        self.assertEqual(saturation(ideal, irrelevant), expected)
        self.assertEqual(
            saturation(ideal, irrelevant, method='quotient'), expected)

        affine = Ideal(self.ring, ['x^2*y', 'x*y^2'])
        by_x = saturation(affine, Ideal(self.ring, ['x']))
        self.assertEqual(by_x, Ideal(self.ring, ['y']))
        self.assertEqual(
            saturation(affine, Ideal(self.ring, ['x']), method='quotient'),
            by_x)

    def test_saturation_idempotent(self):
        cases = [
            (Ideal(self.ring, ['x^3*y', 'x*z^2']), Ideal(self.ring, ['x'])),
            (Ideal(self.ring, ['x*y - z', 'x^2*z']),
             Ideal(self.ring, ['x', 'z'])),
            (self.twisted_cubic * Ideal(self.p3, ['x0', 'x1']),
             Ideal(self.p3, ['x0', 'x1'])),
        ]
        for ideal, other in cases:
            once = saturation(ideal, other)
            self.assertEqual(saturation(once, other), once)
            self.assertEqual(saturation(ideal, other, method='quotient'), once)

    def test_saturation_edge_cases(self):
        ideal = Ideal(self.ring, ['x*y'])
        self.assertTrue(saturation(ideal, Ideal(self.ring)).is_unit())
        self.assertEqual(saturation(ideal, self.ring.one()), ideal)
        self.assertTrue(saturation(ideal, Ideal(self.ring, ['x*y'])).is_unit())
        with self.assertRaises(exceptions.InputError):
            saturation(ideal, ideal, method='other')

    def test_saturation_iteration_limit(self):
        ideal = Ideal(self.ring, ['x^5*y'])
        with limits(max_saturation_iters=2):
            with self.assertRaises(exceptions.ComputationLimitError):
                saturation(ideal, Ideal(self.ring, ['x']), method='quotient')

    def test_hilbert_numerator(self):
        self.assertEqual(hilbert_numerator([], 2), [1])
        self.assertEqual(hilbert_numerator([(1, 0)], 2), [1, -1])
        self.assertEqual(
            hilbert_numerator([(2, 0), (0, 1)], 2), [1, -1, -1, 1])
        # (x^2, x*y) = x * (x, y)
        self.assertEqual(
            hilbert_numerator([(2, 0), (1, 1)], 2), [1, 0, -2, 1])

    def test_dimension_and_degree(self):
        p3 = self.p3
        self.assertEqual(
            dimension_and_degree(Ideal(p3)), DimensionDegree(4, 1))
        self.assertEqual(
            dimension_and_degree(Ideal(p3)).projective_dimension, 3)
        hyperplane = dimension_and_degree(Ideal(p3, ['x0 + x1 - 2*x3']))
        self.assertEqual(hyperplane.projective_dimension, 2)
        self.assertEqual(hyperplane.degree, 1)
        cubic = dimension_and_degree(self.twisted_cubic)
        self.assertEqual(cubic.projective_dimension, 1)
        self.assertEqual(cubic.degree, 3)
        self.assertFalse(cubic.advisory)
        self.assertEqual(
            dimension_and_degree(unit_ideal(p3)).krull_dimension, -1)
        self.assertEqual(krull_dimension(self.twisted_cubic), 2)

    def test_affine_degree_is_advisory(self):
        ideal = Ideal(self.ring, ['x*y - 1', 'z'])
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            dd = dimension_and_degree(ideal)
        self.assertEqual(dd.krull_dimension, 1)
        self.assertEqual(dd.degree, 2)
        self.assertTrue(dd.advisory)
        self.assertEqual(len(caught), 1)
        self.assertTrue(
            issubclass(caught[0].category, exceptions.TrimccWarning))

    def test_restrict_to_linear(self):
        ideal = Ideal(self.ring, ['x*y - 1', 'z - x'])
        restricted = restrict_to_linear(
            ideal, [self.ring.parse('x - 2')])
        self.assertEqual(restricted.ring.variables, ('y', 'z'))
        self.assertEqual(
            restricted, Ideal(restricted.ring, ['y - 1/2', 'z - 2']))
        inconsistent = restrict_to_linear(
            ideal, [self.ring.parse('x'), self.ring.parse('x - 1')])
        self.assertTrue(inconsistent.is_unit())
        with self.assertRaises(exceptions.InputError):
            restrict_to_linear(ideal, [self.ring.parse('x^2')])

    def test_count_points(self):
        ring = PolynomialRing(['x', 'y'])
        count = count_points(Ideal(ring, ['x^2 - 1', 'y - x']))
        self.assertEqual(
            (count.distinct, count.with_multiplicity), (2, 2))
        count = count_points(Ideal(ring, ['x^2', 'y']))
        self.assertEqual(
            (count.distinct, count.with_multiplicity), (1, 2))
        count = count_points(Ideal(ring, ['x^3 - x', 'y^2']))
        self.assertEqual(
            (count.distinct, count.with_multiplicity), (3, 6))
        self.assertEqual(count_points(unit_ideal(ring)).distinct, 0)
        with self.assertRaises(exceptions.InputError):
            count_points(Ideal(ring, ['x']))

    def test_multidegree(self):
        # the diagonal of P^1 x P^1 has bidegree (1, 1)
        ring = PolynomialRing(
            ['x0', 'x1', 'a0', 'a1'],
            {'primal': ['x0', 'x1'], 'dual': ['a0', 'a1']})
        diagonal = Ideal(ring, ['x0*a1 - x1*a0'])
        self.assertEqual(multidegree(diagonal, ('primal', 'dual')), [1, 1])
        self.assertEqual(
            multidegree(diagonal, ('primal', 'dual'), seed=5), [1, 1])
        with self.assertRaises(exceptions.InputError):
            multidegree(Ideal(ring, ['x0 - a0^2']), ('primal', 'dual'))

    def test_slice_count(self):
        ring = PolynomialRing(['x0', 'x1', 'x2'])
        conic = Ideal(ring, ['x0*x2 - x1^2'])
        count = slice_count(
            conic, charts=[ring.gens()], cuts=[(ring.gens(), 1)], seed=3)
        self.assertEqual(count, 2)
