from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import OrderedDict
import logging

from sympy import binomial

from trimcc.exceptions import InputError, InternalError
from trimcc.ideal import (
    Ideal,
    dimension_and_degree,
    eliminate,
    krull_dimension,
    multidegree,
    random_combination,
    saturation,
    slice_count,
)
from trimcc.polynomial import PolynomialRing, minors_ideal
from trimcc.utils import derive_seed
from trimcc.varieties import ProjectiveVariety


logger = logging.getLogger(__name__)

PRIMAL = 'primal'
DUAL = 'dual'

# first prefix whose names do not clash with the primal variables
DUAL_PREFIXES = ('a', 'x', 'b', 'y', 'u')


def conormal_ring(ring):
    """Ring of P^n x dual P^n over the variables of `ring`."""
    size = ring.ngens
    for prefix in DUAL_PREFIXES:
        names = tuple('{0}{1}'.format(prefix, i) for i in range(size))
        if not set(names) & set(ring.variables):
            break
    else:
        names = ring.fresh_names(size, prefix='a')
    return PolynomialRing(
        ring.variables + names,
        OrderedDict([(PRIMAL, ring.variables), (DUAL, names)]))


class ConormalData(object):

    """
    Projectivized conormal variety of V in P^n x dual P^n.

    `polar_degrees` is (delta_0, ..., delta_{n-1}) where delta_j counts the
    points cut by n - 1 - j generic primal and j generic dual hyperplanes.

    """

    def __init__(self, base, ring, ideal, polar_degrees, seed=0):
        self.base = base
        self.ring = ring
        self.ideal = ideal
        self.polar_degrees = tuple(polar_degrees)
        self.seed = seed

    def __repr__(self):
        return 'ConormalData({0!r}, polar_degrees={1})'.format(
            self.base, self.polar_degrees)

    @property
    def ambient_dimension(self):
        return self.base.ambient_dimension

    @property
    def primal_names(self):
        return self.ring.blocks[PRIMAL]

    @property
    def dual_names(self):
        return self.ring.blocks[DUAL]

    def primal_gens(self):
        return [self.ring.variable(name) for name in self.primal_names]

    def dual_gens(self):
        return [self.ring.variable(name) for name in self.dual_names]

    def polar_variety_degrees(self):
        """
        Degrees mu_0..mu_m of the polar varieties of V, mu_0 = deg V.

        mu_k = delta_{c - 1 + k} with c the codimension of V.

        """
        c = self.base.codimension
        m = self.base.dimension
        return tuple(self.delta(c - 1 + k) for k in range(m + 1))

    def delta(self, j):
        if 0 <= j < len(self.polar_degrees):
            return self.polar_degrees[j]
        return 0


def _augmented_minors(variety, ring):
    c = variety.codimension
    jacobian = [
        [entry.transfer(ring) for entry in row]
        for row in variety.jacobian()
    ]
    dual_row = [ring.variable(name) for name in ring.blocks[DUAL]]
    return minors_ideal(jacobian + [dual_row], c + 1)


def conormal_ideal(variety, seed=0):
    """
    Conormal data of a projective variety.

    Starts from I(V) plus the (c+1)-minors of the Jacobian augmented with
    the dual row, then saturates by the singular locus and by both
    irrelevant ideals.

    """
    if not isinstance(variety, ProjectiveVariety):
        raise InputError('Conormal varieties need a projective variety')
    if variety.ideal.is_zero():
        raise InputError(
            'The conormal variety of P^n is the zero section')
    if variety.is_empty():
        raise InputError('Variety {0!r} is empty'.format(variety))

    ring = conormal_ring(variety.ring)
    ideal = variety.ideal.transfer(ring) + Ideal(
        ring, _augmented_minors(variety, ring))

    singular = variety.singular_locus()
    if not singular.is_unit():
        logger.info('Saturating conormal of %r by its singular locus', variety)
        ideal = saturation(
            ideal, singular.transfer(ring))
    ideal = saturation(ideal, Ideal(ring, [ring.variable(name)
                                           for name in ring.blocks[PRIMAL]]))
    ideal = saturation(ideal, Ideal(ring, [ring.variable(name)
                                           for name in ring.blocks[DUAL]]))
    ideal = ideal.reduced()

    n = variety.ambient_dimension
    dimension = krull_dimension(ideal) - 2
    if dimension != n - 1:
        raise InternalError(
            'Conormal variety of {0!r} has dimension {1}, expected {2}'.format(
                variety, dimension, n - 1))

    degrees = multidegree(
        ideal, (PRIMAL, DUAL), seed=derive_seed(seed, 'polar'))
    logger.info('Polar degrees of %r: %s', variety, degrees)
    return ConormalData(variety, ring, ideal, degrees, seed)


def dual_variety(variety, seed=0):
    """Projection of the conormal variety to the dual factor."""
    data = variety if isinstance(variety, ConormalData) else conormal_ideal(
        variety, seed)
    image = eliminate(data.ideal, data.primal_names)
    ring = PolynomialRing(data.dual_names)
    name = 'dual({0})'.format(data.base.name) if data.base.name else None
    return ProjectiveVariety(ring, image.transfer(ring), name)


def swap_blocks(data):
    """Conormal ideal of the dual, by exchanging the two factors."""
    ring = data.ring
    swapped = PolynomialRing(
        data.dual_names + data.primal_names,
        OrderedDict([(PRIMAL, data.dual_names), (DUAL, data.primal_names)]))
    return Ideal(swapped, [g.transfer(swapped) for g in data.ideal.generators])


class SegreClassVector(object):

    """
    Segre class components s_0..s_k by dimension, as degrees in an ambient
    projective space.

    """

    def __init__(self, components, ambient):
        components = list(components)
        while components and not components[-1]:
            components.pop()
        self.components = tuple(components)
        self.ambient = ambient

    def __getitem__(self, dimension):
        if 0 <= dimension < len(self.components):
            return self.components[dimension]
        return 0

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if isinstance(other, SegreClassVector):
            return self.components == other.components
        return self.components == tuple(other)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'SegreClassVector({0}, {1})'.format(
            list(self.components), self.ambient)


def _common_degree_generators(ideal, modulo):
    """Generators not in `modulo`, raised to a common degree."""
    ring = ideal.ring
    generators = [g for g in ideal.generators if not modulo.contains(g)]
    if not generators:
        return [], 0
    degree = max(g.total_degree() for g in generators)
    raised = []
    for g in generators:
        gap = degree - g.total_degree()
        if gap == 0:
            raised.append(g)
        else:
            raised.extend(x ** gap * g for x in ring.gens())
    return raised, degree


def segre_class(z_ideal, ambient, seed=0):
    """
    Segre class s(Z, W) pushed to projective space.

    For a projective variety W the projective degrees of W along a system
    of generators of Z of common degree e are read off residual
    intersections; for conormal data the class of Z over a primal point is
    computed on the dual factor.

    """
    if isinstance(ambient, ConormalData):
        return _fiber_segre_class(z_ideal, ambient, seed)
    if z_ideal.ring != ambient.ring:
        raise InputError('Subscheme and variety live in different rings')

    ring = ambient.ring
    w = ambient.dimension
    degree_w = ambient.degree
    z_ideal = z_ideal + ambient.ideal
    generators, e = _common_degree_generators(z_ideal, ambient.ideal)
    if not generators:
        return SegreClassVector(
            [0] * w + [degree_w], 'P^{0}'.format(ambient.ambient_dimension))

    sigma = [0] * (w + 1)
    for k in range(1, w + 1):
        combos = [
            random_combination(generators, derive_seed(seed, 'segre', k, i))
            for i in range(k)]
        residual = saturation(ambient.ideal + Ideal(ring, combos), z_ideal)
        dd = dimension_and_degree(residual, warn=False)
        residual_degree = dd.degree if dd.krull_dimension - 1 == w - k else 0
        if dd.krull_dimension - 1 > w - k:
            raise InternalError(
                'Residual intersection has excess dimension {0}'.format(
                    dd.krull_dimension - 1))
        known = sum(
            int(binomial(k, i)) * e ** i * sigma[w - k + i]
            for i in range(1, k + 1))
        sigma[w - k] = e ** k * degree_w - residual_degree - known
    logger.debug('Segre class of %s in %r: %s', z_ideal, ambient, sigma)
    return SegreClassVector(
        sigma, 'P^{0}'.format(ambient.ambient_dimension))


def _point_forms(z_ideal, data):
    """Linear primal forms cutting the primal point under Z."""
    primal_ring = PolynomialRing(data.primal_names)
    image = eliminate(z_ideal, data.dual_names).transfer(primal_ring)
    image = saturation(image, Ideal(primal_ring, primal_ring.gens()))
    basis = image.canonical()
    forms = [g for g in basis if g.total_degree() == 1]
    if len(forms) != len(basis) or len(forms) != primal_ring.ngens - 1:
        raise InputError(
            'Subscheme is not supported over a rational primal point')
    return [g.transfer(data.ring) for g in forms]


def _fiber_segre_class(z_ideal, data, seed):
    if z_ideal.ring != data.ring:
        raise InputError('Subscheme does not live in the conormal ring')
    z_ideal = z_ideal + data.ideal
    forms = _point_forms(z_ideal, data)
    n = data.ambient_dimension
    if z_ideal.is_subset(data.ideal):
        # V is the point itself: the fiber is the whole conormal variety
        return SegreClassVector(
            [0] * (n - 1) + [data.delta(n - 1)], 'dual P^{0}'.format(n))
    sigma = [0] * n
    for j in range(n - 1):
        residual = slice_count(
            data.ideal,
            charts=[data.primal_gens(), data.dual_gens()],
            cuts=[(forms, n - 1 - j), (data.dual_gens(), j)],
            seed=derive_seed(seed, 'fiber', j),
            saturate_by=z_ideal)
        sigma[j] = data.delta(j) - residual
    return SegreClassVector(sigma, 'dual P^{0}'.format(n))


def fiber_ideal(data, point):
    """Ideal of the conormal fiber over a primal point."""
    point = data.base.check_point(point)
    ring = data.ring
    names = data.primal_names
    pivot = max(i for i, value in enumerate(point) if value)
    forms = []
    for i, name in enumerate(names):
        if i == pivot:
            continue
        forms.append(
            ring.variable(name).scale(point[pivot]) -
            ring.variable(names[pivot]).scale(point[i]))
    return data.ideal + Ideal(ring, forms)
