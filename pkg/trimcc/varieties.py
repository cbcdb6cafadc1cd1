from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from fractions import Fraction
import logging

from trimcc.exceptions import InputError
from trimcc.ideal import (
    Ideal,
    dimension_and_degree,
    saturation,
    unit_ideal,
)
from trimcc.polynomial import jacobian_matrix, minors_ideal
from trimcc.types import AmbientKind


logger = logging.getLogger(__name__)


class Variety(object):

    """
    Closed subvariety of P^n or A^n given by an ideal.

    The ideal is assumed radical; nothing checks it.

    """

    kind = None

    def __init__(self, ring, ideal, name=None):
        if not isinstance(ideal, Ideal):
            ideal = Ideal(ring, ideal)
        if ideal.ring != ring:
            raise InputError('Ideal does not belong to {0!r}'.format(ring))
        self.ring = ring
        self.ideal = ideal
        self.name = name
        self._dimension_degree = None
        self._singular_locus = None

    def __repr__(self):
        return '{0}({1})'.format(
            self.__class__.__name__, self.name or self.ideal)

    @property
    def dimension_degree(self):
        if self._dimension_degree is None:
            self._dimension_degree = dimension_and_degree(
                self.ideal, warn=False)
        return self._dimension_degree

    @property
    def degree(self):
        return self.dimension_degree.degree

    def is_empty(self):
        return self.dimension < 0

    def check_point(self, point):
        """Return the point as Fractions, raising if it is not on V."""
        try:
            point = [Fraction(value) for value in point]
        except (TypeError, ValueError):
            raise InputError('Invalid point: {0!r}'.format(point))
        if len(point) != self.ring.ngens:
            raise InputError(
                'Point {0} does not have {1} coordinates'.format(
                    point, self.ring.ngens))
        if self.kind == AmbientKind.PROJECTIVE and not any(point):
            raise InputError('The zero vector is not a projective point')
        for g in self.ideal.generators:
            if g.evaluate(point):
                raise InputError(
                    'Point {0} is not on {1!r}'.format(
                        ':'.join(str(value) for value in point), self))
        return point

    def contains_point(self, point):
        try:
            self.check_point(point)
        except InputError:
            return False
        return True

    def jacobian(self):
        return jacobian_matrix(self.ideal.generators)

    def singular_locus(self):
        """
        I(V) plus the c x c minors of the Jacobian, c the codimension.

        The returned ideal is saturated by the irrelevant ideal for projective
        varieties.

        """
        if self._singular_locus is None:
            self._singular_locus = self._compute_singular_locus()
        return self._singular_locus

    def _compute_singular_locus(self):
        c = self.codimension
        if self.ideal.is_zero() or c <= 0:
            return unit_ideal(self.ring)
        minors = minors_ideal(self.jacobian(), c)
        locus = self.ideal + Ideal(self.ring, minors)
        locus = self.close(locus)
        logger.debug('Singular locus of %r: %s', self, locus)
        return locus.reduced()

    def close(self, ideal):
        return ideal

    def is_nonsingular(self):
        return self.singular_locus().is_unit()


class ProjectiveVariety(Variety):

    """Subvariety of P^n cut out by a homogeneous ideal."""

    kind = AmbientKind.PROJECTIVE

    def __init__(self, ring, ideal, name=None):
        super(ProjectiveVariety, self).__init__(ring, ideal, name)
        if not self.ideal.is_homogeneous():
            raise InputError(
                'Ideal of a projective variety must be homogeneous: '
                '{0}'.format(self.ideal))

    @property
    def ambient_dimension(self):
        return self.ring.ngens - 1

    @property
    def dimension(self):
        return self.dimension_degree.krull_dimension - 1

    @property
    def codimension(self):
        return self.ambient_dimension - self.dimension

    def irrelevant_ideal(self):
        return Ideal(self.ring, self.ring.gens())

    def close(self, ideal):
        return saturation(ideal, self.irrelevant_ideal())

    def is_empty(self):
        return self.dimension < 0 or self.close(self.ideal).is_unit()


class AffineVariety(Variety):

    """Subvariety of A^n, eg, a chart of a resolution."""

    kind = AmbientKind.AFFINE

    @property
    def ambient_dimension(self):
        return self.ring.ngens

    @property
    def dimension(self):
        return self.dimension_degree.krull_dimension

    @property
    def codimension(self):
        return self.ambient_dimension - self.dimension


def singular_locus(variety):
    return variety.singular_locus()


def is_nonsingular(variety):
    return variety.is_nonsingular()
