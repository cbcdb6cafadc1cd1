from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import namedtuple, OrderedDict
import logging
import warnings

from trimcc.cycles import CycleKey, LagrangianCycle
from trimcc.exceptions import (
    InputError,
    InternalError,
    PreconditionError,
    TrimccWarning,
)
from trimcc.ideal import Ideal, saturation
from trimcc.morphism import (
    affine_dimension,
    generic_degree,
    require_birational,
    trim_check,
)
from trimcc.polynomial import jacobian_matrix, minors_ideal
from trimcc.types import PushforwardMode, Verdict
from trimcc.varieties import AffineVariety


logger = logging.getLogger(__name__)


def _covector_names(f):
    taken = set(f.ring.variables)
    names = []
    for i in range(1, f.target_dimension + 1):
        name = 'xi{0}'.format(i)
        while name in taken:
            name = '_' + name
        names.append(name)
    return tuple(names)


class IncidenceScheme(object):

    """
    Pairs (w, xi) with w over the stratum Z, xi conormal to Z at f(w) and
    xi o df_w vanishing on T_wY.

    """

    def __init__(self, stratum, ring, ideal, dimension, threshold):
        self.stratum = stratum
        self.ring = ring
        self.ideal = ideal
        self.dimension = dimension
        self.threshold = threshold

    @property
    def excluded(self):
        return self.dimension < self.threshold

    @property
    def verdict(self):
        return Verdict.EXCLUDED if self.excluded else Verdict.POSSIBLE

    def __repr__(self):
        return 'IncidenceScheme({0}, dimension={1}, threshold={2})'.format(
            self.stratum.name, self.dimension, self.threshold)


def incidence_scheme(f, stratum, image_dimension=None):
    if image_dimension is None:
        image_dimension = affine_dimension(f.image())
    if stratum.dense or stratum.dimension >= image_dimension:
        raise PreconditionError(
            'Stratum {0} is not a proper stratum'.format(stratum.name))
    if not f.image().is_subset(stratum.ideal):
        raise InputError(
            'Stratum {0} is not contained in the image of {1!r}'.format(
                stratum.name, f))

    names = _covector_names(f)
    ring = f.ring.extend(names, block='covector')
    xi = [ring.variable(name) for name in names]

    def lift(polynomial):
        return polynomial.transfer(ring)

    generators = [lift(g) for g in f.preimage(stratum.ideal).generators]

    # xi annihilates T_{f(w)} Z
    z_jacobian = [
        [lift(f.pullback(entry)) for entry in row]
        for row in jacobian_matrix(stratum.ideal.generators)]
    z_codimension = f.target_dimension - stratum.dimension
    matrix = z_jacobian + [xi]
    size = z_codimension + 1
    if size <= min(len(matrix), len(matrix[0])):
        generators.extend(minors_ideal(matrix, size))

    # xi o df vanishes on T_w Y
    f_jacobian = jacobian_matrix(f.components, f.ring.variables)
    covector_row = []
    for j in range(f.ring.ngens):
        entry = ring.zero()
        for i, row in enumerate(f_jacobian):
            entry = entry + xi[i] * lift(row[j])
        covector_row.append(entry)
    y_jacobian = [
        [lift(entry) for entry in row]
        for row in jacobian_matrix(f.source.ideal.generators)]
    matrix = y_jacobian + [covector_row]
    size = f.source.codimension + 1
    generators.extend(minors_ideal(matrix, size))

    ideal = Ideal(ring, generators)
    singular = AffineVariety(f.target_ring, stratum.ideal).singular_locus()
    if not singular.is_unit():
        pulled = Ideal(ring, [
            lift(f.pullback(g)) for g in singular.generators])
        ideal = saturation(ideal, pulled)

    dimension = affine_dimension(ideal)
    logger.info(
        'Incidence scheme of %r over %s: dimension %d against %d',
        f, stratum.name, dimension, f.target_dimension)
    return IncidenceScheme(
        stratum, ring, ideal, dimension, f.target_dimension)


PushforwardRow = namedtuple(
    'PushforwardRow', ['stratum', 'incidence_dimension', 'threshold',
                       'verdict'])


class PushforwardReport(object):

    def __init__(self, mode, rows, image_key, cycle=None, multiplicity=None):
        self.mode = mode
        self.rows = list(rows)
        self.image_key = image_key
        self.cycle = cycle
        self.multiplicity = multiplicity

    def support(self):
        """Keys and stratum names that can carry the pushforward."""
        support = [self.image_key.name]
        support.extend(
            row.stratum for row in self.rows
            if row.verdict != Verdict.EXCLUDED)
        return support

    def to_json(self):
        payload = OrderedDict([
            ('mode', self.mode.value),
            ('image', self.image_key.name),
            ('support', self.support()),
            ('rows', [
                OrderedDict([
                    ('stratum', row.stratum),
                    ('incidence_dimension', row.incidence_dimension),
                    ('threshold', row.threshold),
                    ('verdict', row.verdict.value),
                ]) for row in self.rows]),
        ])
        if self.cycle is not None:
            payload['cycle'] = self.cycle.to_json()
        return payload

    def table(self):
        return (
            ['stratum', 'dim F', 'dim X', 'verdict'],
            [[row.stratum, row.incidence_dimension, row.threshold,
              row.verdict.value] for row in self.rows])


def image_key(f):
    return CycleKey(AffineVariety(f.target_ring, f.image(), name='f(Y)'))


def _evidence(f, stratification):
    stratification.check_inside(f)
    warnings.warn(
        'pushforward support is relative to the supplied stratification',
        TrimccWarning)
    image_dimension = affine_dimension(f.image())
    rows = []
    for stratum in stratification.proper():
        scheme = incidence_scheme(f, stratum, image_dimension)
        rows.append(PushforwardRow(
            stratum.name, scheme.dimension, scheme.threshold, scheme.verdict))
    return rows


def pushforward_support(f, stratification):
    """Which conormal cycles of strata can occur in f_* T*_Y Y."""
    rows = _evidence(f, stratification)
    return PushforwardReport(
        PushforwardMode.SUPPORT_ONLY, rows, image_key(f))


def _check_rank_condition(f):
    report = trim_check(f)
    if not report.is_trim:
        raise PreconditionError(
            'dim Y_d < d fails for d = {0}'.format(
                ', '.join(str(d) for d in report.failing())))
    warnings.warn(
        'properness of {0!r} is user-asserted'.format(f), TrimccWarning)


def _multiple_of_image(f, stratification, mode, multiplicity):
    rows = _evidence(f, stratification)
    possible = [row.stratum for row in rows if row.verdict != Verdict.EXCLUDED]
    if possible:
        raise InternalError(
            'Incidence dimension bound fails over {0} for a map satisfying '
            'the rank condition'.format(', '.join(possible)))
    key = image_key(f)
    cycle = LagrangianCycle({key: multiplicity})
    return PushforwardReport(mode, rows, key, cycle, multiplicity)


def pushforward_trim(f, stratification, seed=0):
    """f_* T*_Y Y = T*_{f(Y)} X for a trim birational map."""
    _check_rank_condition(f)
    require_birational(f, seed)
    return _multiple_of_image(f, stratification, PushforwardMode.TRIM, 1)


def pushforward_generically_finite(f, stratification, seed=0):
    """f_* T*_Y Y = m T*_{f(Y)} X, m the generic degree."""
    degree = generic_degree(f, seed).degree
    _check_rank_condition(f)
    mode = (PushforwardMode.TRIM if degree == 1
            else PushforwardMode.GENERICALLY_FINITE)
    return _multiple_of_image(f, stratification, mode, degree)
