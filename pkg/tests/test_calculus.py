# -*- coding: utf-8 -*-

import unittest
import warnings

from hypothesis import given, settings, strategies as st

from .context import (
    AffineVariety,
    ChowRingSpec,
    ChowVector,
    ConstructibleFunction,
    CycleKey,
    Ideal,
    LagrangianCycle,
    MorphismSpec,
    PolynomialRing,
    Project,
    cc_inverse,
    cc_transform,
    chern_mather,
    chern_schwartz_macpherson,
    conormal_ideal,
    corpus,
    euler_obstruction,
    euler_obstruction_via_atlas,
    euler_obstruction_via_trim,
    exceptions,
    fiber_euler_characteristic,
    ic_report,
    projective_space_class,
    stringy_class,
    stringy_euler_number,
)


class CalculusTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curves = Project.load(corpus('curves.json'))
        cls.conifold = Project.load(corpus('conifold.json'))
        cls.conormals = {
            name: conormal_ideal(cls.curves.variety(name))
            for name in ('conic', 'nodal_cubic', 'cuspidal_cubic', 'point')
        }

    def key(self, name):
        return CycleKey(self.curves.variety(name))

    def test_projective_space_class(self):
        self.assertEqual(projective_space_class(2), [3, 3, 1])
        self.assertEqual(projective_space_class(3), [4, 6, 4, 1])
        self.assertEqual(
            chern_mather(self.curves.variety('plane')), [3, 3, 1])

    def test_chern_mather_of_curves(self):
        expected = {
            'conic': [2, 2, 0],
            'nodal_cubic': [2, 3, 0],
            'cuspidal_cubic': [3, 3, 0],
            'point': [1, 0, 0],
        }
        for name, gamma in expected.items():
            value = chern_mather(self.conormals[name])
            self.assertIsInstance(value, ChowVector)
            self.assertEqual(value, gamma, name)
            self.assertEqual(value.ambient_dimension, 2)

    def test_chern_mather_smooth_curves(self):
        # smooth curves: gamma_0 = 2 - 2g = chi
        self.assertEqual(
            chern_mather(self.curves.variety('fermat_cubic')), [0, 3, 0])
        self.assertEqual(chern_mather(self.curves.variety('line')), [2, 1, 0])
        twisted = Project.load(corpus('twisted_cubic.json'))
        self.assertEqual(
            chern_mather(twisted.variety('twisted_cubic')), [2, 3, 0, 0])

    def test_chern_mather_of_cone(self):
        value = chern_mather(self.conifold.variety('conifold'))
        self.assertEqual(value, [6, 8, 6, 2, 0])
        self.assertEqual(str(value), '2[P^3] + 6[P^2] + 8[P^1] + 6[P^0]')

    def test_euler_obstruction_of_curves(self):
        for name, data in self.conormals.items():
            probes = self.curves.probes(name)
            singular = self.curves.metadata(name)['singularities']
            for probe, point in probes.items():
                self.assertEqual(
                    euler_obstruction(data, point), singular.get(probe, 1),
                    '{0} at {1}'.format(name, probe))

    def test_euler_obstruction_of_plane(self):
        plane = self.curves.variety('plane')
        self.assertEqual(euler_obstruction(plane, [1, 2, 3]), 1)
        with self.assertRaises(exceptions.InputError):
            euler_obstruction(plane, [0, 0, 0])

    def test_euler_obstruction_off_variety(self):
        with self.assertRaises(exceptions.InputError):
            euler_obstruction(self.conormals['conic'], [1, 1, 0])

    def test_euler_obstruction_of_cone(self):
        conifold = self.conifold.variety('conifold')
        probes = self.conifold.probes('conifold')
        self.assertEqual(euler_obstruction(conifold, probes['vertex']), 2)
        self.assertEqual(euler_obstruction(conifold, probes['smooth']), 1)

    def test_euler_obstruction_via_trim(self):
        atlas = self.conifold.map('resolution')
        vertex = self.conifold.probe('resolution', 'vertex')
        smooth = self.conifold.probe('resolution', 'smooth')
        for chart in atlas.charts:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter('always')
                self.assertEqual(euler_obstruction_via_trim(chart, vertex), 2)
            messages = [str(w.message) for w in caught]
            self.assertTrue(any('user-asserted' in m for m in messages))
            self.assertTrue(any('P^1' in m for m in messages))
            self.assertEqual(euler_obstruction_via_trim(chart, smooth), 1)

    def test_euler_obstruction_via_trim_needs_trim(self):
        blowup = Project.load(corpus('blowup.json')).map('blowup').charts[0]
        with self.assertRaises(exceptions.PreconditionError):
            euler_obstruction_via_trim(blowup, [0, 0])

    def test_euler_obstruction_via_trim_needs_birational_map(self):
        # u -> u^2 on uv = 1 is trim but two-sheeted
        square = Project.load(corpus('double_cover.json')).map('square')
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            with self.assertRaises(exceptions.InputError):
                euler_obstruction_via_trim(square.charts[0], [4])
            with self.assertRaises(exceptions.InputError):
                euler_obstruction_via_atlas(square.charts, [4])

    def test_euler_obstruction_via_atlas(self):
        charts = self.conifold.map('resolution').charts
        vertex = self.conifold.probe('resolution', 'vertex')
        smooth = self.conifold.probe('resolution', 'smooth')
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            self.assertEqual(euler_obstruction_via_atlas(charts, vertex), 2)
            self.assertEqual(euler_obstruction_via_atlas(charts, smooth), 1)
            # only chart1 meets the fiber over (1, 0, 0, 0)
            self.assertEqual(
                euler_obstruction_via_atlas(charts, [1, 0, 0, 0]), 1)
            self.assertEqual(euler_obstruction_via_atlas(charts[1], vertex), 2)
            with self.assertRaises(exceptions.InputError):
                euler_obstruction_via_atlas([], vertex)

    def test_fiber_euler_characteristic(self):
        square = Project.load(corpus('double_cover.json')).map('square')
        chart = square.charts[0]
        self.assertEqual(fiber_euler_characteristic(chart, [4]), 2)
        with self.assertRaises(exceptions.UnsupportedFiberError):
            fiber_euler_characteristic(chart, [0])
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            self.assertEqual(fiber_euler_characteristic(chart, [0], 0), 0)
        self.assertEqual(len(caught), 1)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
    def test_cc_round_trip(self, coefficients):
        # point in conic in plane
        keys = [self.key(name) for name in ('plane', 'conic', 'point')]
        alpha = ConstructibleFunction(dict(zip(keys, coefficients)))
        cycle = cc_transform(alpha)
        self.assertIsInstance(cycle, LagrangianCycle)
        self.assertEqual(cc_inverse(cycle), alpha)
        for key, value in zip(keys, coefficients):
            self.assertEqual(abs(cycle[key]), abs(value))

    def test_cc_signs(self):
        plane, conic, point = (
            self.key('plane'), self.key('conic'), self.key('point'))
        alpha = ConstructibleFunction({plane: 1, conic: 2, point: -3})
        cycle = cc_transform(alpha)
        self.assertEqual(cycle[plane], 1)
        self.assertEqual(cycle[conic], -2)
        self.assertEqual(cycle[point], -3)
        self.assertEqual(cc_transform(ConstructibleFunction()),
                         LagrangianCycle())

    def test_cc_type_errors(self):
        with self.assertRaises(exceptions.InputError):
            cc_transform(LagrangianCycle())
        with self.assertRaises(exceptions.InputError):
            cc_inverse(ConstructibleFunction())

    def test_cycle_keys(self):
        conic = self.key('conic')
        self.assertEqual(conic.dimension, 1)
        self.assertEqual(conic.name, 'conic')
        self.assertTrue(self.key('plane').is_zero_section)
        self.assertEqual(self.key('plane').dimension, 2)
        with self.assertRaises(exceptions.InputError):
            ConstructibleFunction({conic: 1, CycleKey(
                self.conifold.variety('conifold')): 1})

    def test_indicator_of_singular_curves(self):
        node = CycleKey(self.curves.variety('point'))
        for name in ('nodal_cubic', 'cuspidal_cubic'):
            curve = self.key(name)
            indicator = ConstructibleFunction({curve: 1, node: -1})
            conormals = {
                curve: self.conormals[name], node: self.conormals['point']}
            csm = chern_schwartz_macpherson(indicator, conormals=conormals)
            self.assertEqual(
                csm[0], self.curves.metadata(name)['chi'], name)
            probes = self.curves.probes(name)
            for point in probes.values():
                self.assertEqual(indicator.evaluate(point), 1, name)
            self.assertEqual(indicator.evaluate([1, 0, 0]), 0)

    def test_csm_of_plane(self):
        alpha = ConstructibleFunction.basis(self.key('plane'))
        self.assertEqual(chern_schwartz_macpherson(alpha), [3, 3, 1])

    def test_stringy_class(self):
        spec = self.conifold.chow_spec('resolution')
        self.assertIsInstance(spec, ChowRingSpec)
        self.assertEqual(stringy_class(spec), [6, 8, 6, 2, 0])
        self.assertEqual(stringy_euler_number(spec), 6)
        self.assertEqual(
            stringy_class(spec),
            chern_mather(self.conifold.variety('conifold')))

    def test_stringy_class_from_integrals(self):
        # a smooth conic mapped to its image
        spec = ChowRingSpec(
            1, 2, integrals={'1,0': 2, '0,1': 2})
        self.assertEqual(stringy_class(spec), [2, 2, 0])
        self.assertEqual(stringy_euler_number(spec), 2)

    def test_chow_ring_spec_errors(self):
        with self.assertRaises(exceptions.InputError):
            stringy_class(ChowRingSpec(1, 2, integrals={'1,0': 2}))
        with self.assertRaises(exceptions.InputError):
            ChowRingSpec(1, 2, basis={'one': 0, 'pt': 1},
                         chern={'1': {'h': 2}})
        with self.assertRaises(exceptions.InputError):
            ChowRingSpec(1, 2, basis={'one': 0, 'pt': 1},
                         chern={'1': {'one': 2}})
        spec = ChowRingSpec(
            1, 2, basis={'one': 0, 'pt': 1}, chern={'1': {'pt': 2}},
            hyperplane={'1': {'pt': 2}}, pairings={})
        with self.assertRaises(exceptions.InputError):
            stringy_class(spec)

    def test_ic_report(self):
        atlas = self.conifold.map('resolution')
        cone = self.conifold.variety('cone')
        probes = list(self.conifold.probes('resolution').values())
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            report = ic_report(
                cone, atlas.charts, probes,
                self.conifold.assertions('resolution'))
            stratified = ic_report(
                cone, atlas.charts[0], probes, None,
                self.conifold.stratification('cone'))
        self.assertTrue(report.is_irreducible)
        self.assertEqual(report.cc, LagrangianCycle({CycleKey(cone): 1}))
        self.assertEqual([chi for _, chi in report.stalk_chi], [-2, -1])
        self.assertEqual(stratified.cc, report.cc)
        self.assertEqual(stratified.stalk_chi, report.stalk_chi)
        payload = report.to_json()
        self.assertEqual(payload['cc'][0]['key'], 'cone')
        self.assertEqual(payload['stalk_chi'][0]['point'],
                         ['0', '0', '0', '0'])

    def test_ic_report_needs_a_resolution_of_the_variety(self):
        cone = self.conifold.variety('cone')
        ring = PolynomialRing(['p'])
        # a coordinate axis inside the cone
        axis = MorphismSpec(
            AffineVariety(ring, Ideal(ring)), ['p', '0', '0', '0'],
            self.conifold.ring('A4'), label='axis')
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            with self.assertRaises(exceptions.InputError):
                ic_report(cone, axis, [[0, 0, 0, 0]])

            double_cover = Project.load(corpus('double_cover.json'))
            with self.assertRaises(exceptions.InputError):
                ic_report(
                    double_cover.variety('line'),
                    double_cover.map('square').charts, [[4]])
