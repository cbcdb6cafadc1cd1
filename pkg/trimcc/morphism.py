from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import namedtuple, OrderedDict
import logging
import warnings

from six import string_types

from trimcc.exceptions import (
    InputError,
    InternalError,
    PreconditionError,
    TrimccWarning,
    ComputationLimitError,
)
from trimcc.ideal import (
    Ideal,
    count_points,
    dimension_and_degree,
    eliminate,
    random_combination,
    restrict_to_linear,
    saturation,
)
from trimcc.polynomial import (
    Polynomial,
    PolynomialRing,
    jacobian_matrix,
    minors_ideal,
)
from trimcc.settings import current_limits
from trimcc.utils import derive_seed, random_coefficients
from trimcc.varieties import AffineVariety


logger = logging.getLogger(__name__)


def affine_dimension(ideal):
    return dimension_and_degree(ideal, warn=False).krull_dimension


class MorphismSpec(object):

    """
    Polynomial map from a nonsingular affine chart Y to A^N.

    `components` are polynomials on the ambient space of Y; `target_ring`
    carries the coordinates of A^N.

    """

    def __init__(self, source, components, target_ring, label=None,
                 proper=False):
        if not isinstance(source, AffineVariety):
            raise InputError('The source of a map must be an affine chart')
        components = [
            source.ring.parse(c) if isinstance(c, string_types) else c
            for c in components]
        for c in components:
            if not isinstance(c, Polynomial) or c.ring != source.ring:
                raise InputError(
                    'Map component {0} is not on the source ring'.format(c))
        if len(components) != target_ring.ngens:
            raise InputError(
                'Map has {0} components for a target of dimension {1}'.format(
                    len(components), target_ring.ngens))
        if not source.is_nonsingular():
            raise PreconditionError(
                'Source {0!r} is singular'.format(source))

        self.source = source
        self.components = tuple(components)
        self.target_ring = target_ring
        self.label = label
        self.proper = proper
        self._image = None

    def __repr__(self):
        return 'MorphismSpec({0})'.format(self.label or self.source)

    @property
    def ring(self):
        return self.source.ring

    @property
    def dimension(self):
        return self.source.dimension

    @property
    def target_dimension(self):
        return self.target_ring.ngens

    def pullback(self, polynomial):
        images = OrderedDict(zip(self.target_ring.variables, self.components))
        return polynomial.substitute(images, ring=self.ring)

    def pullback_ideal(self, ideal):
        if ideal.ring != self.target_ring:
            raise InputError('Ideal does not live on the target')
        return Ideal(self.ring, [self.pullback(g) for g in ideal.generators])

    def preimage(self, ideal):
        """I(Y) + f^* I."""
        return self.source.ideal + self.pullback_ideal(ideal)

    def augmented_jacobian(self):
        """Jacobian of (I(Y), f) on the source ambient."""
        rows = list(jacobian_matrix(self.source.ideal.generators))
        rows.extend(jacobian_matrix(self.components, self.ring.variables))
        return rows

    def image(self):
        """Closure of f(Y), by elimination from the graph."""
        if self._image is None:
            names = tuple(self.target_ring.variables)
            if set(names) & set(self.ring.variables):
                raise InputError(
                    'Source and target variable names must differ')
            graph_ring = self.ring.extend(names, block='target')
            generators = [
                g.transfer(graph_ring) for g in self.source.ideal.generators]
            generators.extend(
                graph_ring.variable(name) - c.transfer(graph_ring)
                for name, c in zip(names, self.components))
            image = eliminate(
                Ideal(graph_ring, generators), self.ring.variables)
            self._image = image.transfer(self.target_ring)
        return self._image


def rank_locus(f, d):
    """Ideal of {y in Y : rank df_y restricted to T_yY <= d}."""
    matrix = f.augmented_jacobian()
    size = d + f.source.codimension + 1
    if not matrix or size > min(len(matrix), len(matrix[0])):
        return f.source.ideal
    return f.source.ideal + Ideal(f.ring, minors_ideal(matrix, size))


class RankStratum(object):

    def __init__(self, rank, ideal, dimension):
        self.rank = rank
        self.ideal = ideal
        self.dimension = dimension

    def __repr__(self):
        return 'RankStratum(rank={0}, dimension={1})'.format(
            self.rank, self.dimension)


class RankStratification(object):

    """Closures of Y_d for d = 0..dim Y, with their dimensions."""

    def __init__(self, morphism, strata):
        self.morphism = morphism
        self.strata = list(strata)

    def __getitem__(self, d):
        return self.strata[d]

    def __iter__(self):
        return iter(self.strata)

    def dimensions(self):
        return [stratum.dimension for stratum in self.strata]


def rank_strata(f):
    dimension = f.dimension
    loci = [rank_locus(f, d) for d in range(dimension + 1)]
    strata = []
    for d, locus in enumerate(loci):
        closure = locus if d == 0 else saturation(locus, loci[d - 1])
        stratum_dimension = affine_dimension(closure)
        logger.info('%r: dim Y_%d = %d', f, d, stratum_dimension)
        strata.append(RankStratum(d, closure, stratum_dimension))
    return RankStratification(f, strata)


TrimRow = namedtuple('TrimRow', ['d', 'dimension', 'bound', 'passes'])


class TrimReport(object):

    def __init__(self, dimension, rows, label=None, method='rank',
                 extra=None):
        self.dimension = dimension
        self.rows = list(rows)
        self.label = label
        self.method = method
        self.extra = dict(extra or {})

    @property
    def is_trim(self):
        return all(row.passes for row in self.rows)

    def failing(self):
        return [row.d for row in self.rows if not row.passes]

    def to_json(self):
        payload = OrderedDict([
            ('is_trim', self.is_trim),
            ('dimension', self.dimension),
            ('rows', [row._asdict() for row in self.rows]),
        ])
        payload.update(self.extra)
        return payload

    def table(self):
        return (
            ['d', 'dim Y_d', 'bound', 'passes'],
            [list(row) for row in self.rows])


def _trim_rows(dimensions, dimension):
    return [
        TrimRow(d, dimensions[d], d, dimensions[d] < d)
        for d in range(dimension)
    ]


def trim_check(f):
    """dim Y_d < d for every d < dim Y; empty strata pass."""
    strata = rank_strata(f)
    return TrimReport(
        f.dimension, _trim_rows(strata.dimensions(), f.dimension), f.label)


def omega_trim_check(f):
    """
    Trim table read off the linear fiber space of Omega_{Y|S}.

    The fiber space is {(y, v) : y in Y, J(y) v = 0} with J the augmented
    Jacobian, so its fiber over the rank d stratum has dimension dim Y - d.
    Each part over an exact rank stratum is cut out in Y x A^n and its
    dimension is computed there; f is trim exactly when the zero section is
    the only part of dimension dim Y.

    """
    dimension = f.dimension
    names = f.ring.fresh_names(f.ring.ngens, prefix='v')
    ring = f.ring.extend(names, block='fiber')
    vector = [ring.variable(name) for name in names]

    def lift(ideal):
        return [g.transfer(ring) for g in ideal.generators]

    equations = []
    for row in f.augmented_jacobian():
        entry = ring.zero()
        for partial, v in zip(row, vector):
            entry = entry + partial.transfer(ring) * v
        equations.append(entry)

    loci = [rank_locus(f, d) for d in range(dimension + 1)]
    dimensions = [None] * (dimension + 1)
    component_dimensions = OrderedDict()
    for d in reversed(range(dimension + 1)):
        part = Ideal(ring, lift(loci[d]) + equations)
        if d:
            part = saturation(part, Ideal(ring, lift(loci[d - 1])))
        part_dimension = affine_dimension(part)
        e = dimension - d
        dimensions[d] = part_dimension - e if part_dimension >= 0 else -1
        if part_dimension >= 0:
            component_dimensions[str(e)] = part_dimension
        logger.info(
            '%r: fiber space over Y_%d has dimension %d', f, d,
            part_dimension)
    return TrimReport(
        dimension, _trim_rows(dimensions, dimension), f.label,
        method='omega',
        extra={'fiber_space_components': component_dimensions})


def merge_trim_reports(reports):
    """Combine chart reports by taking the largest dimension per row."""
    reports = list(reports)
    if not reports:
        raise InputError('No chart reports to merge')
    dimension = reports[0].dimension
    if any(report.dimension != dimension for report in reports):
        raise InputError('Charts of different dimensions')
    dimensions = [
        max(report.rows[d].dimension for report in reports)
        for d in range(dimension)
    ]
    return TrimReport(
        dimension, _trim_rows(dimensions, dimension),
        label='+'.join(str(r.label) for r in reports),
        method=reports[0].method)


class Stratum(object):

    def __init__(self, name, ideal, dimension=None, dense=False):
        self.name = name
        self.ideal = ideal
        self.dimension = dimension
        self.dense = dense

    def __repr__(self):
        return 'Stratum({0})'.format(self.name)


class StratificationSpec(object):

    """User-supplied strata of the image, exactly one of them dense."""

    def __init__(self, target_ring, strata):
        self.target_ring = target_ring
        self.strata = list(strata)
        dense = [s for s in self.strata if s.dense]
        if len(dense) != 1:
            raise InputError(
                'A stratification needs exactly one dense stratum, '
                'got {0}'.format(len(dense)))
        for stratum in self.strata:
            if stratum.ideal.ring != target_ring:
                raise InputError(
                    'Stratum {0} is not on the target'.format(stratum.name))
            computed = affine_dimension(stratum.ideal)
            if stratum.dimension is None:
                stratum.dimension = computed
            elif stratum.dimension != computed:
                raise InputError(
                    'Stratum {0} has dimension {1}, claimed {2}'.format(
                        stratum.name, computed, stratum.dimension))
        for i, first in enumerate(self.strata):
            for second in self.strata[i + 1:]:
                if first.ideal == second.ideal:
                    raise InputError(
                        'Strata {0} and {1} coincide'.format(
                            first.name, second.name))

    @property
    def dense(self):
        return [s for s in self.strata if s.dense][0]

    def proper(self):
        return sorted(
            (s for s in self.strata if not s.dense), key=lambda s: s.name)

    def boundary(self, stratum):
        """Strata lying in the closure of `stratum` other than itself."""
        return [
            other for other in self.strata
            if other is not stratum and stratum.ideal.is_subset(other.ideal)
        ]

    def check_inside(self, f):
        image = f.image()
        for stratum in self.strata:
            if not image.is_subset(stratum.ideal):
                raise InputError(
                    'Stratum {0} is not contained in the image of '
                    '{1!r}'.format(stratum.name, f))


SmallRow = namedtuple(
    'SmallRow',
    ['stratum', 'preimage_dimension', 'stratum_dimension', 'fiber_dimension',
     'codimension', 'passes'])


def _small_row(stratum, preimage_dimension, image_dimension):
    codimension = image_dimension - stratum.dimension
    if preimage_dimension < 0:
        return SmallRow(
            stratum.name, preimage_dimension, stratum.dimension, None,
            codimension, True)
    fiber = preimage_dimension - stratum.dimension
    return SmallRow(
        stratum.name, preimage_dimension, stratum.dimension, fiber,
        codimension, 2 * fiber < codimension)


class SmallReport(object):

    def __init__(self, rows, image_dimension, label=None):
        self.rows = list(rows)
        self.image_dimension = image_dimension
        self.label = label

    @property
    def is_small(self):
        return all(row.passes for row in self.rows)

    def row(self, name):
        for row in self.rows:
            if row.stratum == name:
                return row
        raise KeyError(name)

    def to_json(self):
        return OrderedDict([
            ('is_small', self.is_small),
            ('image_dimension', self.image_dimension),
            ('rows', [row._asdict() for row in self.rows]),
        ])

    def table(self):
        return (
            ['stratum', 'dim preimage', 'dim Z', 'd(Z)', 'codim', 'passes'],
            [list(row) for row in self.rows])


def small_check(f, stratification):
    """2 d(Z) < codim Z for every proper stratum Z."""
    stratification.check_inside(f)
    image_dimension = affine_dimension(f.image())
    warnings.warn(
        'fiber dimensions over each stratum are assumed equal; '
        'equidimensionality is not verified', TrimccWarning)
    rows = []
    for stratum in stratification.proper():
        preimage = f.preimage(stratum.ideal)
        rows.append(_small_row(
            stratum, affine_dimension(preimage), image_dimension))
    return SmallReport(rows, image_dimension, f.label)


def merge_small_reports(reports, stratification):
    reports = list(reports)
    if not reports:
        raise InputError('No chart reports to merge')
    image_dimension = max(report.image_dimension for report in reports)
    rows = []
    for stratum in stratification.proper():
        preimage_dimension = max(
            report.row(stratum.name).preimage_dimension for report in reports)
        rows.append(_small_row(stratum, preimage_dimension, image_dimension))
    return SmallReport(
        rows, image_dimension, '+'.join(str(r.label) for r in reports))


def _primed_names(ring):
    taken = set(ring.variables)
    names = []
    for name in ring.variables:
        candidate = name + '_'
        while candidate in taken:
            candidate += '_'
        taken.add(candidate)
        names.append(candidate)
    return tuple(names)


FiberProductReport = namedtuple(
    'FiberProductReport',
    ['is_small', 'fiber_product_dimension', 'residual_dimension',
     'source_dimension'])


def fiber_product_smallness(f, seed=0):
    """
    The diagonal must be the only component of Y x_S Y of dimension dim Y.

    """
    degree = generic_degree(f, seed)
    if degree.degree != 1:
        raise PreconditionError(
            '{0!r} is not birational onto its image (degree {1})'.format(
                f, degree.degree))

    ring = f.ring
    primed = _primed_names(ring)
    product = ring.extend(primed, block='copy')
    copy = PolynomialRing(primed)

    def second(polynomial):
        return polynomial.transfer(copy, positional=True).transfer(product)

    generators = [g.transfer(product) for g in f.source.ideal.generators]
    generators.extend(second(g) for g in f.source.ideal.generators)
    generators.extend(
        c.transfer(product) - second(c) for c in f.components)
    fiber_product = Ideal(product, generators)
    diagonal = Ideal(product, [
        product.variable(a) - product.variable(b)
        for a, b in zip(ring.variables, primed)])

    residual = saturation(fiber_product, diagonal)
    fiber_product_dimension = affine_dimension(fiber_product)
    residual_dimension = affine_dimension(residual)
    return FiberProductReport(
        residual_dimension < f.dimension,
        fiber_product_dimension,
        residual_dimension,
        f.dimension)


SmoothRestrictionRow = namedtuple(
    'SmoothRestrictionRow',
    ['stratum', 'preimage_dimension', 'nonsingular', 'rank_condition',
     'passes'])


class SmoothRestrictionReport(object):

    def __init__(self, rows, is_small, label=None):
        self.rows = list(rows)
        self.is_small = is_small
        self.label = label

    @property
    def all_pass(self):
        return all(row.passes for row in self.rows)

    @property
    def implies_trim(self):
        return self.all_pass and self.is_small

    def to_json(self):
        return OrderedDict([
            ('all_pass', self.all_pass),
            ('is_small', self.is_small),
            ('implies_trim', self.implies_trim),
            ('rows', [row._asdict() for row in self.rows]),
        ])

    def table(self):
        return (
            ['stratum', 'dim W', 'nonsingular', 'rank', 'passes'],
            [list(row) for row in self.rows])


def smooth_restriction_check(f, stratification):
    """
    Sufficient check that W = f^{-1}(Z) -> Z is smooth over each open
    stratum: W nonsingular and d(f|W) of rank dim Z away from the boundary.

    """
    small = small_check(f, stratification)
    rows = []
    for stratum in sorted(stratification.strata, key=lambda s: s.name):
        preimage = f.preimage(stratum.ideal)
        w = AffineVariety(f.ring, preimage)
        boundary = [
            f.preimage(other.ideal)
            for other in stratification.boundary(stratum)]

        def away_from_boundary(ideal):
            for removed in boundary:
                ideal = saturation(ideal, removed)
            return ideal

        if away_from_boundary(preimage).is_unit():
            rows.append(SmoothRestrictionRow(
                stratum.name, -1, True, True, True))
            continue

        singular = away_from_boundary(w.singular_locus())
        nonsingular = singular.is_unit()

        matrix = w.jacobian() + [
            list(row) for row in
            f.augmented_jacobian()[len(f.source.ideal.generators):]]
        size = stratum.dimension + w.codimension
        if size <= 0:
            rank_condition = True
        elif size > min(len(matrix), len(matrix[0])):
            rank_condition = False
        else:
            degenerate = preimage + Ideal(f.ring, minors_ideal(matrix, size))
            rank_condition = away_from_boundary(degenerate).is_unit()
        rows.append(SmoothRestrictionRow(
            stratum.name, w.dimension, nonsingular, rank_condition,
            nonsingular and rank_condition))
    return SmoothRestrictionReport(rows, small.is_small, f.label)


GenericDegree = namedtuple(
    'GenericDegree', ['degree', 'points', 'points_with_multiplicity'])


def generic_degree(f, seed=0):
    """
    Number of points in a generic fiber, by slicing source and image with
    the same generic affine subspace of the target.

    """
    image = f.image()
    dimension = f.dimension
    if affine_dimension(image) != dimension:
        raise InputError('{0!r} is not generically finite'.format(f))

    target = f.target_ring
    attempts = current_limits().max_slice_attempts
    for attempt in range(attempts):
        child = derive_seed(seed, 'generic-degree', attempt)
        constants = random_coefficients(child, dimension + 1)
        equations = [
            random_combination(target.gens(), derive_seed(child, k)) -
            constants[k]
            for k in range(dimension)]
        downstairs = restrict_to_linear(image, equations)
        if affine_dimension(downstairs) != 0:
            continue
        below = count_points(downstairs)
        upstairs = f.source.ideal + Ideal(
            f.ring, [f.pullback(e) for e in equations])
        if affine_dimension(upstairs) != 0:
            raise InputError('{0!r} is not generically finite'.format(f))
        above = count_points(upstairs)
        if below.distinct == 0:
            continue
        if above.distinct % below.distinct:
            raise InternalError(
                'Fiber counts {0} over {1} image points do not divide'.format(
                    above.distinct, below.distinct))
        degree = above.distinct // below.distinct
        logger.info('%r has generic degree %d', f, degree)
        return GenericDegree(
            degree, above.distinct, above.with_multiplicity)
    raise ComputationLimitError(
        'Generic slices of the image stayed degenerate',
        {'attempts': attempts, 'limit': attempts})


def require_birational(f, seed=0):
    degree = generic_degree(f, seed).degree
    if degree != 1:
        raise InputError(
            '{0!r} is not birational onto its image: '
            'generic degree {1}'.format(f, degree))
    return degree


def fiber_ideal(f, point):
    """Ideal of f^{-1}(point) in the source ambient."""
    if len(point) != f.target_dimension:
        raise InputError('Point {0} is not in A^{1}'.format(
            point, f.target_dimension))
    return f.source.ideal + Ideal(
        f.ring, [c - value for c, value in zip(f.components, point)])
