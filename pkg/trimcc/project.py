from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import OrderedDict
from fractions import Fraction
import io
import json
import logging

from six import integer_types, string_types

from trimcc.calculus import ChowRingSpec
from trimcc.exceptions import InputError, ProjectError
from trimcc.ideal import Ideal
from trimcc.morphism import MorphismSpec, StratificationSpec, Stratum
from trimcc.polynomial import PolynomialRing
from trimcc.varieties import AffineVariety, ProjectiveVariety


logger = logging.getLogger(__name__)

SECTIONS = (
    'rings',
    'ideals',
    'varieties',
    'maps',
    'stratifications',
    'chow_specs',
    'assertions',
)

VARIETY_KINDS = {
    'projective': ProjectiveVariety,
    'affine': AffineVariety,
}


def parse_point(value, location=None):
    """
    Normalize a point to a tuple of Fractions.

    Accepts a list of integers or rational strings, or a comma separated
    string such as "1,0,-1/2".

    """
    if isinstance(value, string_types):
        value = [part.strip() for part in value.split(',')]
    if not isinstance(value, (list, tuple)) or not value:
        raise ProjectError('Invalid point: {0!r}'.format(value), location)
    point = []
    for coordinate in value:
        if isinstance(coordinate, bool) or not isinstance(
                coordinate, integer_types + string_types):
            raise ProjectError(
                'Coordinates must be integers or rationals, got {0!r}'.format(
                    coordinate), location)
        try:
            point.append(Fraction(coordinate))
        except (ValueError, ZeroDivisionError):
            raise ProjectError(
                'Invalid coordinate: {0!r}'.format(coordinate), location)
    return tuple(point)


class MapAtlas(object):

    """A map given on one or more affine charts of its source."""

    def __init__(self, name, charts, target_ring, proper=False):
        self.name = name
        self.charts = list(charts)
        self.target_ring = target_ring
        self.proper = proper

    def __repr__(self):
        return 'MapAtlas({0}, charts={1})'.format(
            self.name, [chart.label for chart in self.charts])

    @property
    def labels(self):
        return [chart.label for chart in self.charts]

    def select(self, label='all'):
        if label in (None, 'all'):
            return list(self.charts)
        for chart in self.charts:
            if chart.label == label:
                return [chart]
        raise ProjectError(
            'Unknown chart {0}; known charts: {1}'.format(
                label, ', '.join(self.labels)),
            'maps.{0}'.format(self.name))


class Project(object):

    """
    A project file: named rings, ideals, varieties, maps, stratifications,
    Chow ring data and user assertions.

    References and polynomial strings are checked when the file is loaded;
    maps and stratifications are built on first use, since both need
    Groebner bases.

    """

    def __init__(self, data, source=None):
        if not isinstance(data, dict):
            raise ProjectError('A project must be a JSON object', source)
        unknown = sorted(set(data) - set(SECTIONS) - {'description'})
        if unknown:
            raise ProjectError(
                'Unknown sections: {0}'.format(', '.join(unknown)), source)

        self.source = source
        self.description = data.get('description')
        self.data = OrderedDict(
            (section, data.get(section) or OrderedDict())
            for section in SECTIONS)
        for section, entries in self.data.items():
            if not isinstance(entries, dict):
                raise ProjectError('Section must be an object', section)

        self._rings = OrderedDict()
        self._ideals = OrderedDict()
        self._varieties = OrderedDict()
        self._maps = {}
        self._stratifications = {}
        self._chow_specs = {}

        for name in self.data['rings']:
            self.ring(name)
        for name in self.data['ideals']:
            self.ideal(name)
        for name in self.data['varieties']:
            self.variety(name)
        for name in self.data['maps']:
            self._check_map(name)
        for name in self.data['stratifications']:
            self._check_stratification(name)
        for name in self.data['assertions']:
            self.assertions(name)
        logger.info(
            'Loaded project %s: %s', source or '<memory>', ', '.join(
                '{0} {1}'.format(len(entries), section)
                for section, entries in self.data.items() if entries))

    @classmethod
    def load(cls, path):
        try:
            with io.open(path, encoding='utf-8') as fp:
                data = json.load(fp, object_pairs_hook=OrderedDict)
        except (IOError, OSError) as e:
            raise ProjectError(
                'Cannot read project file: {0}'.format(e), path)
        except ValueError as e:
            raise ProjectError('Invalid JSON: {0}'.format(e), path)
        return cls(data, source=path)

    def __repr__(self):
        return 'Project({0})'.format(self.source or '<memory>')

    def _entry(self, section, name):
        try:
            entry = self.data[section][name]
        except KeyError:
            raise ProjectError(
                'Unresolved reference {0}'.format(name), section)
        if not isinstance(entry, dict):
            raise ProjectError(
                'Entry must be an object', '{0}.{1}'.format(section, name))
        return entry

    def _field(self, entry, key, location):
        try:
            return entry[key]
        except KeyError:
            raise ProjectError('Missing field {0}'.format(key), location)

    def names(self, section):
        return list(self.data[section])

    def ring(self, name):
        if name in self._rings:
            return self._rings[name]
        location = 'rings.{0}'.format(name)
        entry = self._entry('rings', name)
        variables = self._field(entry, 'variables', location)
        blocks = entry.get('blocks')
        try:
            ring = PolynomialRing(variables, blocks)
        except InputError as e:
            raise ProjectError(str(e), location)
        self._rings[name] = ring
        return ring

    def ideal(self, name):
        if name in self._ideals:
            return self._ideals[name]
        location = 'ideals.{0}'.format(name)
        entry = self._entry('ideals', name)
        ring = self._resolve(
            self.ring, self._field(entry, 'ring', location), location)
        generators = entry.get('generators', [])
        parsed = []
        for i, text in enumerate(generators):
            if not isinstance(text, string_types):
                raise ProjectError(
                    'Generators must be strings',
                    '{0}.generators[{1}]'.format(location, i))
            try:
                parsed.append(ring.parse(text))
            except InputError as e:
                raise ProjectError(
                    str(e), '{0}.generators[{1}]'.format(location, i))
        ideal = Ideal(ring, parsed)
        self._ideals[name] = ideal
        return ideal

    def _resolve(self, getter, reference, location):
        try:
            return getter(reference)
        except ProjectError as e:
            if e.location in SECTIONS:
                raise ProjectError(
                    'Unresolved reference {0} (expected in {1})'.format(
                        reference, e.location), location)
            raise

    def variety(self, name):
        if name in self._varieties:
            return self._varieties[name]
        location = 'varieties.{0}'.format(name)
        entry = self._entry('varieties', name)
        ideal = self._resolve(
            self.ideal, self._field(entry, 'ideal', location), location)
        kind = entry.get('kind', 'projective')
        if kind not in VARIETY_KINDS:
            raise ProjectError(
                'Unknown ambient kind {0}; use projective or affine'.format(
                    kind), location)
        try:
            variety = VARIETY_KINDS[kind](ideal.ring, ideal, name)
        except InputError as e:
            raise ProjectError(str(e), location)
        self._varieties[name] = variety
        return variety

    def metadata(self, name):
        """Free-form metadata of a variety, eg, its Euler characteristic."""
        return self._entry('varieties', name).get('metadata', {})

    def _probe_table(self, name):
        for section in ('varieties', 'maps'):
            if name in self.data[section]:
                entry = self._entry(section, name)
                return '{0}.{1}.probes'.format(section, name), entry.get(
                    'probes', {})
        raise ProjectError(
            'Unresolved reference {0} (expected a variety or a map)'.format(
                name), 'probes')

    def probe(self, name, value):
        """A named probe of a variety or map, or a literal point."""
        location, probes = self._probe_table(name)
        if isinstance(value, string_types) and value in probes:
            return parse_point(
                probes[value], '{0}.{1}'.format(location, value))
        return parse_point(value, location)

    def probes(self, name):
        _, probes = self._probe_table(name)
        return OrderedDict(
            (probe, self.probe(name, probe)) for probe in probes)

    def _charts(self, name):
        entry = self._entry('maps', name)
        if 'charts' in entry:
            return entry['charts']
        return [entry]

    def _check_map(self, name):
        location = 'maps.{0}'.format(name)
        entry = self._entry('maps', name)
        self._resolve(
            self.ring, self._field(entry, 'target', location), location)
        charts = self._charts(name)
        if not charts:
            raise ProjectError('A map needs at least one chart', location)
        for i, chart in enumerate(charts):
            where = '{0}.charts[{1}]'.format(location, i)
            source = self._resolve(
                self.variety, self._field(chart, 'source', where), where)
            if not isinstance(source, AffineVariety):
                raise ProjectError('Chart sources must be affine', where)
            for j, text in enumerate(self._field(chart, 'components', where)):
                try:
                    source.ring.parse(text)
                except InputError as e:
                    raise ProjectError(
                        str(e), '{0}.components[{1}]'.format(where, j))

    def map(self, name):
        if name in self._maps:
            return self._maps[name]
        location = 'maps.{0}'.format(name)
        entry = self._entry('maps', name)
        target = self.ring(entry['target'])
        proper = bool(entry.get('proper', False))
        charts = []
        for i, chart in enumerate(self._charts(name)):
            where = '{0}.charts[{1}]'.format(location, i)
            label = chart.get('label') or (
                name if 'charts' not in entry else '{0}{1}'.format(name, i))
            try:
                charts.append(MorphismSpec(
                    self.variety(chart['source']), chart['components'],
                    target, label=label, proper=proper))
            except InputError as e:
                raise ProjectError(str(e), where)
        atlas = MapAtlas(name, charts, target, proper)
        self._maps[name] = atlas
        return atlas

    def _check_stratification(self, name):
        location = 'stratifications.{0}'.format(name)
        entry = self._entry('stratifications', name)
        ring = self._resolve(
            self.ring, self._field(entry, 'ring', location), location)
        strata = self._field(entry, 'strata', location)
        for i, stratum in enumerate(strata):
            where = '{0}.strata[{1}]'.format(location, i)
            self._field(stratum, 'name', where)
            ideal = self._resolve(
                self.ideal, self._field(stratum, 'ideal', where), where)
            if ideal.ring != ring:
                raise ProjectError(
                    'Stratum ideal is not on ring {0}'.format(
                        entry['ring']), where)

    def stratification(self, name):
        if name in self._stratifications:
            return self._stratifications[name]
        location = 'stratifications.{0}'.format(name)
        entry = self._entry('stratifications', name)
        strata = [
            Stratum(
                s['name'], self.ideal(s['ideal']), s.get('dimension'),
                bool(s.get('dense', False)))
            for s in entry['strata']]
        try:
            stratification = StratificationSpec(
                self.ring(entry['ring']), strata)
        except InputError as e:
            raise ProjectError(str(e), location)
        self._stratifications[name] = stratification
        return stratification

    def chow_spec(self, name):
        if name in self._chow_specs:
            return self._chow_specs[name]
        location = 'chow_specs.{0}'.format(name)
        entry = self._entry('chow_specs', name)
        try:
            spec = ChowRingSpec(
                self._field(entry, 'dimension', location),
                self._field(entry, 'ambient_dimension', location),
                integrals=entry.get('integrals'),
                basis=entry.get('basis'),
                chern=entry.get('chern'),
                hyperplane=entry.get('hyperplane'),
                pairings=entry.get('pairings'))
        except ProjectError:
            raise
        except InputError as e:
            raise ProjectError(str(e), location)
        self._chow_specs[name] = spec
        return spec

    def assertions(self, name):
        """User-asserted fiber Euler characteristics of a map, by point."""
        location = 'assertions.{0}'.format(name)
        entries = self.data['assertions'].get(name, [])
        if name in self.data['assertions'] and name not in self.data['maps']:
            raise ProjectError(
                'Assertions for unknown map {0}'.format(name), location)
        asserted = {}
        for i, entry in enumerate(entries):
            where = '{0}[{1}]'.format(location, i)
            point = parse_point(self._field(entry, 'point', where), where)
            chi = self._field(entry, 'chi', where)
            if isinstance(chi, bool) or not isinstance(chi, integer_types):
                raise ProjectError('chi must be an integer', where)
            asserted[point] = chi
        return asserted
