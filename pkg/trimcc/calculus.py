from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import OrderedDict
from fractions import Fraction
import logging
import warnings

from six import integer_types
from sympy import binomial

from trimcc.conormal import (
    ConormalData,
    conormal_ideal,
    fiber_ideal as conormal_fiber_ideal,
    segre_class,
)
from trimcc.cycles import (
    ChowVector,
    ConstructibleFunction,
    CycleKey,
    LagrangianCycle,
)
from trimcc.exceptions import (
    InputError,
    InternalError,
    PreconditionError,
    TrimccWarning,
    UnsupportedFiberError,
)
from trimcc.ideal import count_points, dimension_and_degree
from trimcc.morphism import (
    MorphismSpec,
    StratificationSpec,
    Stratum,
    fiber_ideal,
    require_birational,
    trim_check,
)
from trimcc.pushforward import image_key, pushforward_trim
from trimcc.utils import derive_seed


logger = logging.getLogger(__name__)


def _sign(dimension):
    return -1 if dimension % 2 else 1


def cc_transform(alpha):
    """Eu_W -> (-1)^dim W T*_W X."""
    if not isinstance(alpha, ConstructibleFunction):
        raise InputError('cc_transform needs a constructible function')
    return LagrangianCycle({
        key: _sign(key.dimension) * value
        for key, value in alpha.terms.items()})


def cc_inverse(cycle):
    if not isinstance(cycle, LagrangianCycle):
        raise InputError('cc_inverse needs a Lagrangian cycle')
    return ConstructibleFunction({
        key: _sign(key.dimension) * value
        for key, value in cycle.terms.items()})


def projective_space_class(n):
    """c(TP^n) cap [P^n]."""
    return ChowVector([int(binomial(n + 1, n - j)) for j in range(n + 1)], n)


def chern_mather(variety, seed=0):
    """
    Chern-Mather class in A_*(P^n) from the polar degrees.

    With mu_k the polar variety degrees of V of dimension m,
    gamma_{m-i} = sum_{k<=i} (-1)^k C(m-k+1, i-k) mu_k.

    """
    if isinstance(variety, ConormalData):
        data, variety = variety, variety.base
    elif variety.ideal.is_zero():
        return projective_space_class(variety.ambient_dimension)
    else:
        data = conormal_ideal(variety, seed)

    m = variety.dimension
    mu = data.polar_variety_degrees()
    gamma = [0] * (m + 1)
    for i in range(m + 1):
        gamma[m - i] = sum(
            _sign(k) * int(binomial(m - k + 1, i - k)) * mu[k]
            for k in range(i + 1))
    logger.info('Chern-Mather class of %r: %s', variety, gamma)
    return ChowVector(gamma, variety.ambient_dimension)


def c_star(cycle, ambient_dimension=None, seed=0, conormals=None):
    """
    T*_W X -> (-1)^dim W c_Ma(W), extended linearly.

    `conormals` maps cycle keys to precomputed conormal data.

    """
    conormals = conormals or {}
    if not cycle.terms:
        return ChowVector.zero(ambient_dimension or 0)
    result = None
    for key, value in cycle.items():
        target = conormals.get(key, key.variety)
        part = chern_mather(target, derive_seed(seed, key.name))
        part = part * (_sign(key.dimension) * value)
        result = part if result is None else result + part
    return result


def chern_schwartz_macpherson(alpha, seed=0, conormals=None):
    """c_*(alpha) = c_star(CC(alpha))."""
    return c_star(cc_transform(alpha), seed=seed, conormals=conormals)


def euler_obstruction(variety, point, seed=0):
    """
    Local Euler obstruction through the Segre class of the conormal fiber.

    Eu_V(p) = (-1)^(c+1) sum_j (-1)^j sigma_j, where sigma_j is the dual
    degree of the j-dimensional part of the Segre class of the fiber over p.

    """
    if isinstance(variety, ConormalData):
        data = variety
        variety = data.base
    else:
        if variety.ideal.is_zero():
            variety.check_point(point)
            return 1
        data = conormal_ideal(variety, seed)

    fiber = conormal_fiber_ideal(data, point)
    sigma = segre_class(fiber, data, derive_seed(seed, 'euler', tuple(
        str(value) for value in point)))
    c = variety.codimension
    total = sum(_sign(j) * sigma[j] for j in range(data.ambient_dimension))
    value = _sign(c + 1) * total
    logger.info(
        'Euler obstruction of %r at %s: %d (Segre class %s)',
        variety, point, value, list(sigma.components))
    return value


def fiber_euler_characteristic(f, point, asserted=None):
    """
    Euler characteristic of a chart fiber: finite fibers count their
    distinct points, linear fibers of dimension k count as P^k.

    """
    ideal = fiber_ideal(f, point)
    if ideal.is_unit():
        if asserted is not None:
            warnings.warn(
                'user-asserted fiber Euler characteristic {0} over {1}'.format(
                    asserted, point), TrimccWarning)
            return asserted
        raise UnsupportedFiberError(
            'Fiber of {0!r} over {1} is empty in this chart'.format(f, point))

    dd = dimension_and_degree(ideal, warn=False)
    if dd.krull_dimension == 0:
        return count_points(ideal).distinct

    basis = ideal.canonical()
    if all(g.total_degree() == 1 for g in basis):
        warnings.warn(
            'linear chart fiber over {0} assumed to close up to '
            'P^{1}'.format(point, dd.krull_dimension), TrimccWarning)
        return dd.krull_dimension + 1

    if asserted is not None:
        warnings.warn(
            'user-asserted fiber Euler characteristic {0} over {1}'.format(
                asserted, point), TrimccWarning)
        return asserted
    raise UnsupportedFiberError(
        'Fiber of {0!r} over {1} is neither finite nor linear'.format(
            f, point))


def _require_trim(f, seed=0):
    report = trim_check(f)
    if not report.is_trim:
        raise PreconditionError(
            '{0!r} is not trim: dim Y_d >= d for d in {1}'.format(
                f, report.failing()))
    require_birational(f, seed)
    warnings.warn(
        'properness of {0!r} is user-asserted'.format(f), TrimccWarning)
    return report


def euler_obstruction_via_trim(f, point, asserted=None, seed=0):
    """Eu_S(s) as the Euler characteristic of the fiber of a trim map."""
    _require_trim(f, seed)
    return fiber_euler_characteristic(f, point, asserted)


def _as_charts(charts):
    if isinstance(charts, MorphismSpec):
        return [charts]
    charts = list(charts)
    if not charts:
        raise InputError('A resolution needs at least one chart')
    return charts


def _atlas_fiber_euler_characteristic(charts, point, asserted=None):
    """
    Fiber Euler characteristic read off every chart meeting the fiber.

    Each chart closes its piece of the fiber up to the whole fiber, so the
    charts must agree.

    """
    values = OrderedDict()
    for chart in charts:
        if fiber_ideal(chart, point).is_unit():
            continue
        values[chart.label] = fiber_euler_characteristic(
            chart, point, asserted)
    if not values:
        return fiber_euler_characteristic(charts[0], point, asserted)
    if len(set(values.values())) > 1:
        raise InternalError(
            'Charts disagree on the fiber over {0}: {1}'.format(
                point, dict(values)))
    return list(values.values())[0]


def euler_obstruction_via_atlas(charts, point, asserted=None, seed=0):
    """Eu_S(s) from a trim resolution given on several charts."""
    charts = _as_charts(charts)
    for chart in charts:
        _require_trim(chart, seed)
    return _atlas_fiber_euler_characteristic(charts, point, asserted)


def evaluate_constructible(alpha, point, seed=0):
    """Sum of m_W Eu_W(p) over the W containing p."""
    total = 0
    for key, value in alpha.items():
        if not key.variety.contains_point(point):
            continue
        total += value * euler_obstruction(
            key.variety, point, derive_seed(seed, key.name))
    return total


class ChowRingSpec(object):

    """
    Intersection data of a nonsingular Y mapping to P^n.

    Either `integrals` gives int c_k(TY) (f*H)^d directly, keyed "k,d", or
    the basis form gives classes with codimensions, expansions of c_k(TY)
    and (f*H)^d, and the pairings of complementary classes, keyed "a*b".

    """

    def __init__(self, dimension, ambient_dimension, integrals=None,
                 basis=None, chern=None, hyperplane=None, pairings=None):
        self.dimension = dimension
        self.ambient_dimension = ambient_dimension
        self.integrals = {}
        for key, value in (integrals or {}).items():
            k, d = _pair(key)
            self.integrals[(k, d)] = value
        self.basis = OrderedDict(basis or {})
        self.chern = {int(k): dict(v) for k, v in (chern or {}).items()}
        self.hyperplane = {
            int(d): dict(v) for d, v in (hyperplane or {}).items()}
        self.pairings = {}
        for key, value in (pairings or {}).items():
            first, second = [name.strip() for name in key.split('*')]
            self.pairings[(first, second)] = value
            self.pairings[(second, first)] = value
        self._validate()

    def _validate(self):
        for k, expansion in self.chern.items():
            self._check_expansion('c_{0}(TY)'.format(k), expansion, k)
        for d, expansion in self.hyperplane.items():
            self._check_expansion('(f*H)^{0}'.format(d), expansion, d)

    def _check_expansion(self, label, expansion, codimension):
        for name, coefficient in expansion.items():
            if name not in self.basis:
                raise InputError(
                    '{0} uses unknown class {1}'.format(label, name))
            if self.basis[name] != codimension:
                raise InputError(
                    '{0} uses {1} of codimension {2}, expected {3}'.format(
                        label, name, self.basis[name], codimension))
            if not isinstance(coefficient, integer_types):
                raise InputError(
                    '{0} has a non-integer coefficient'.format(label))

    def _unit_class(self):
        units = [name for name, c in self.basis.items() if c == 0]
        if len(units) != 1:
            raise InputError(
                'The basis needs exactly one class of codimension 0')
        return {units[0]: 1}

    def integral(self, k, d):
        """int_Y c_k(TY) (f*H)^d with k + d = dim Y."""
        if (k, d) in self.integrals:
            return self.integrals[(k, d)]
        if not self.basis:
            raise InputError(
                'Missing intersection number c_{0}(TY)*(f*H)^{1}'.format(k, d))
        chern = self._unit_class() if k == 0 else self.chern.get(k, {})
        power = self._unit_class() if d == 0 else self.hyperplane.get(d)
        if power is None:
            raise InputError('Missing expansion of (f*H)^{0}'.format(d))
        total = 0
        missing = []
        for a, x in chern.items():
            for b, y in power.items():
                if (a, b) not in self.pairings:
                    missing.append('{0}*{1}'.format(a, b))
                    continue
                total += x * y * self.pairings[(a, b)]
        if missing:
            raise InputError(
                'Missing pairings: {0}'.format(', '.join(sorted(missing))))
        return total


def _pair(key):
    if isinstance(key, tuple):
        return int(key[0]), int(key[1])
    k, d = key.split(',')
    return int(k), int(d)


def stringy_class(spec):
    """gamma_d = int_Y c_{dim Y - d}(TY) (f*H)^d, pushed to A_*(P^n)."""
    dimension = spec.dimension
    gamma = [spec.integral(dimension - d, d) for d in range(dimension + 1)]
    return ChowVector(gamma, spec.ambient_dimension)


def stringy_euler_number(spec):
    return stringy_class(spec)[0]


class ICReport(object):

    def __init__(self, is_irreducible, cc, stalk_chi):
        self.is_irreducible = is_irreducible
        self.cc = cc
        self.stalk_chi = list(stalk_chi)

    def to_json(self):
        return OrderedDict([
            ('is_irreducible', self.is_irreducible),
            ('cc', self.cc.to_json()),
            ('stalk_chi', [
                OrderedDict([
                    ('point', [str(value) for value in point]),
                    ('chi', chi)])
                for point, chi in self.stalk_chi]),
        ])


def ic_report(variety, charts, probes, assertions=None, stratification=None,
              seed=0):
    """
    CC(IC_S) = T*_S X for S resolved by trim charts, with stalk Euler
    characteristics (-1)^dim S chi(f^{-1}(z)) at the given points.

    Without a stratification the pushforward is taken relative to S alone.

    """
    charts = _as_charts(charts)
    assertions = assertions or {}
    key = CycleKey(variety)
    for chart in charts:
        if image_key(chart) != key:
            raise InputError(
                'The image of {0!r} does not close up to {1}'.format(
                    chart, key.name))
    if stratification is None:
        stratification = StratificationSpec(
            charts[0].target_ring,
            [Stratum(variety.name or key.name, variety.ideal, dense=True)])

    pushed = [
        pushforward_trim(chart, stratification, seed).cycle
        for chart in charts]
    if any(cycle != pushed[0] for cycle in pushed):
        raise InternalError('Charts push forward to different cycles')
    cc = LagrangianCycle({key: pushed[0][key]})
    is_irreducible = len(pushed[0]) == 1 and cc[key] == 1

    samples = []
    for point in probes:
        chi = _atlas_fiber_euler_characteristic(
            charts, point,
            assertions.get(tuple(Fraction(v) for v in point)))
        samples.append((tuple(point), _sign(variety.dimension) * chi))
    return ICReport(is_irreducible, cc, samples)
