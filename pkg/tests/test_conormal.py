# -*- coding: utf-8 -*-

import unittest

from .context import (
    ConormalData,
    Ideal,
    PolynomialRing,
    Project,
    ProjectiveVariety,
    SegreClassVector,
    AffineVariety,
    conormal_fiber_ideal,
    conormal_ideal,
    conormal_ring,
    corpus,
    dual_variety,
    exceptions,
    multidegree,
    segre_class,
    swap_blocks,
)


class ConormalTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.project = Project.load(corpus('curves.json'))
        cls.conormals = {}

    def conormal(self, name):
        if name not in self.conormals:
            self.conormals[name] = conormal_ideal(self.project.variety(name))
        return self.conormals[name]

    def test_conormal_ring(self):
        ring = PolynomialRing(['x0', 'x1', 'x2'])
        conormal = conormal_ring(ring)
        self.assertEqual(conormal.blocks['primal'], ('x0', 'x1', 'x2'))
        self.assertEqual(conormal.blocks['dual'], ('a0', 'a1', 'a2'))
        # names that clash with the primal ones are skipped
        dual = conormal_ring(PolynomialRing(['a0', 'a1', 'a2']))
        self.assertEqual(dual.blocks['dual'], ('x0', 'x1', 'x2'))

    def test_plucker(self):
        expected = {
            'conic': (2, 2),
            'fermat_cubic': (3, 6),
            'nodal_cubic': (3, 4),
            'cuspidal_cubic': (3, 3),
        }
        for name, degrees in expected.items():
            data = self.conormal(name)
            self.assertEqual(data.polar_degrees, degrees, name)
            metadata = self.project.metadata(name)
            # class = d(d - 1) - 2 delta - 3 kappa
            d = degrees[0]
            nodes = 1 if name == 'nodal_cubic' else 0
            cusps = 1 if name == 'cuspidal_cubic' else 0
            self.assertEqual(
                degrees[1], d * (d - 1) - 2 * nodes - 3 * cusps, name)
            self.assertIn('chi', metadata)

    def test_conormal_dimension(self):
        data = self.conormal('conic')
        self.assertIsInstance(data, ConormalData)
        self.assertEqual(data.ambient_dimension, 2)
        self.assertTrue(data.ideal.is_homogeneous(
            data.ring.block_indices('primal')))
        self.assertTrue(data.ideal.is_homogeneous(
            data.ring.block_indices('dual')))
        self.assertEqual(data.delta(-1), 0)
        self.assertEqual(data.delta(5), 0)

    def test_line_and_point(self):
        line = self.conormal('line')
        self.assertEqual(line.polar_degrees, (1, 0))
        self.assertEqual(line.polar_variety_degrees(), (1, 0))
        point = self.conormal('point')
        self.assertEqual(point.polar_degrees, (0, 1))
        self.assertEqual(point.polar_variety_degrees(), (1,))

    def test_twisted_cubic(self):
        project = Project.load(corpus('twisted_cubic.json'))
        data = conormal_ideal(project.variety('twisted_cubic'))
        self.assertEqual(data.polar_degrees, (0, 3, 4))
        self.assertEqual(data.polar_variety_degrees(), (3, 4))

    def test_seed_independence(self):
        variety = self.project.variety('nodal_cubic')
        self.assertEqual(
            conormal_ideal(variety, seed=11).polar_degrees,
            self.conormal('nodal_cubic').polar_degrees)

    def test_invalid_input(self):
        with self.assertRaises(exceptions.InputError):
            conormal_ideal(self.project.variety('plane'))
        ring = PolynomialRing(['x0', 'x1', 'x2'])
        empty = ProjectiveVariety(ring, Ideal(ring, ['x0', 'x1', 'x2']))
        with self.assertRaises(exceptions.InputError):
            conormal_ideal(empty)
        affine = AffineVariety(ring, Ideal(ring, ['x0*x2 - x1^2']))
        with self.assertRaises(exceptions.InputError):
            conormal_ideal(affine)

    def test_dual_variety(self):
        dual = dual_variety(self.conormal('conic'))
        self.assertEqual(dual.ring.variables, ('a0', 'a1', 'a2'))
        self.assertEqual(dual.dimension, 1)
        self.assertEqual(dual.degree, 2)
        self.assertEqual(dual_variety(self.conormal('nodal_cubic')).degree, 4)

    def test_biduality(self):
        for name in ('conic', 'nodal_cubic'):
            variety = self.project.variety(name)
            dual = dual_variety(self.conormal(name))
            bidual = dual_variety(dual)
            self.assertEqual(bidual.ring, variety.ring, name)
            self.assertEqual(bidual.ideal, variety.ideal, name)

    def test_swap_blocks(self):
        data = self.conormal('nodal_cubic')
        swapped = swap_blocks(data)
        self.assertEqual(
            multidegree(swapped, ('primal', 'dual')), [4, 3])

    def test_segre_class_of_point(self):
        ring = PolynomialRing(['x0', 'x1', 'x2'])
        plane = ProjectiveVariety(ring, Ideal(ring))
        point = Ideal(ring, ['x0', 'x1'])
        self.assertEqual(segre_class(point, plane), [1])

    def test_segre_class_of_divisor(self):
        ring = PolynomialRing(['x0', 'x1', 'x2'])
        plane = ProjectiveVariety(ring, Ideal(ring))
        conic = Ideal(ring, ['x0*x2 - x1^2'])
        # [D] / (1 + D) = 2[P^1] - 4[P^0]
        self.assertEqual(segre_class(conic, plane), [-4, 2])

    def test_segre_class_of_whole_variety(self):
        conic = self.project.variety('conic')
        segre = segre_class(conic.ideal, conic)
        self.assertEqual(segre, [0, 2])
        self.assertEqual(segre.ambient, 'P^2')

    def test_fiber_segre_class(self):
        data = self.conormal('nodal_cubic')
        smooth = conormal_fiber_ideal(data, [0, 1, 0])
        self.assertEqual(segre_class(smooth, data), [1])
        node = conormal_fiber_ideal(data, [0, 0, 1])
        segre = segre_class(node, data)
        self.assertIsInstance(segre, SegreClassVector)
        self.assertEqual(segre[0], 2)
        self.assertEqual(segre[1], 0)

    def test_fiber_off_variety(self):
        data = self.conormal('conic')
        with self.assertRaises(exceptions.InputError):
            conormal_fiber_ideal(data, [1, 1, 0])
