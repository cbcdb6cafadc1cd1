from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from fractions import Fraction
import heapq
import logging
import threading
import warnings

from six import string_types
from sympy.polys.monomials import (
    monomial_divides,
    monomial_lcm,
    monomial_ldiv,
    monomial_mul,
)
from sympy.polys.polyerrors import ExactQuotientFailed

from trimcc.exceptions import (
    ComputationLimitError,
    InputError,
    InternalError,
    TrimccWarning,
)
from trimcc.polynomial import (
    Polynomial,
    elimination_order,
    grevlex,
)
from trimcc.settings import current_limits
from trimcc.utils import derive_seed, random_coefficients


logger = logging.getLogger(__name__)


# Buchberger kernel on dicts mapping exponent tuples to Fractions

class _Kernel(object):

    """Reduction machinery for one monomial order, with memoized keys."""

    def __init__(self, order):
        self.order = order
        self._keys = {}

    def key(self, exps):
        try:
            return self._keys[exps]
        except KeyError:
            value = self._keys[exps] = self.order.key(exps)
            return value

    def lead(self, p):
        return max(p, key=self.key)

    def subtract(self, p, factor, shift, g):
        """p -= factor * x^shift * g, in place."""
        for exps, c in g.items():
            target = monomial_mul(exps, shift)
            value = p.get(target, 0) - factor * c
            if value:
                p[target] = value
            else:
                p.pop(target, None)

    def normal_form(self, p, basis):
        """Full reduction of `p` by `basis`, a list of (lm, monic dict)."""
        p = dict(p)
        remainder = {}
        while p:
            lm = self.lead(p)
            c = p[lm]
            for glm, g in basis:
                if monomial_divides(glm, lm):
                    self.subtract(p, c, monomial_ldiv(lm, glm), g)
                    break
            else:
                remainder[lm] = c
                del p[lm]
        return remainder

    def monic(self, p):
        lm = self.lead(p)
        c = p[lm]
        if c == 1:
            return lm, p
        return lm, {e: v / c for e, v in p.items()}

    def s_polynomial(self, f, g):
        flm, f = f
        glm, g = g
        lcm = monomial_lcm(flm, glm)
        result = {}
        self.subtract(result, -1, monomial_ldiv(lcm, flm), f)
        self.subtract(result, 1, monomial_ldiv(lcm, glm), g)
        return result


def _is_constant(exps):
    return not any(exps)


def buchberger(polys, order, nvars):
    """
    Reduced Groebner basis of the dicts `polys` as a list of monic dicts.

    Pairs are taken smallest lcm first; the coprime and chain criteria
    discard pairs.

    """
    kernel = _Kernel(order)
    max_steps = current_limits().max_gb_steps
    one = (0,) * nvars
    basis = []
    pending = set()
    heap = []
    steps = 0

    def add(p):
        lm, p = kernel.monic(p)
        index = len(basis)
        basis.append((lm, p))
        for i, (glm, _) in enumerate(basis[:-1]):
            pair = (i, index)
            pending.add(pair)
            heapq.heappush(heap, (kernel.key(monomial_lcm(glm, lm)), i, index))
        return lm

    for p in polys:
        if not p:
            continue
        r = kernel.normal_form(p, basis)
        if r:
            if _is_constant(add(r)):
                return [{one: Fraction(1)}]

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        steps += 1
        if steps > max_steps:
            raise ComputationLimitError(
                'Groebner basis step limit exceeded',
                {
                    'steps': steps - 1,
                    'basis_size': len(basis),
                    'pending_pairs': len(pending) + 1,
                    'limit': max_steps,
                })

        ilm, jlm = basis[i][0], basis[j][0]
        lcm = monomial_lcm(ilm, jlm)
        if all(a + b == c for a, b, c in zip(ilm, jlm, lcm)):
            continue
        chained = False
        for k, (klm, _) in enumerate(basis):
            if k == i or k == j or not monomial_divides(klm, lcm):
                continue
            if (min(i, k), max(i, k)) in pending:
                continue
            if (min(j, k), max(j, k)) in pending:
                continue
            chained = True
            break
        if chained:
            continue

        r = kernel.normal_form(kernel.s_polynomial(basis[i], basis[j]), basis)
        if r and _is_constant(add(r)):
            return [{one: Fraction(1)}]

    logger.debug(
        'Buchberger finished after %d steps with %d elements', steps,
        len(basis))
    return _reduce_basis(kernel, basis)


def _reduce_basis(kernel, basis):
    minimal = []
    for i, (lm, g) in enumerate(basis):
        redundant = False
        for j, (other, _) in enumerate(basis):
            if j == i or not monomial_divides(other, lm):
                continue
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            minimal.append((lm, g))

    reduced = []
    for i, (lm, g) in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(g)
        del tail[lm]
        tail = kernel.normal_form(tail, others)
        tail[lm] = Fraction(1)
        reduced.append((lm, tail))
    reduced.sort(key=lambda item: kernel.key(item[0]))
    return [g for _, g in reduced]


class GroebnerBasis(object):

    """Reduced Groebner basis, monic elements sorted by leading term."""

    def __init__(self, ring, order, elements):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self._kernel = _Kernel(order)
        self._pairs = [
            (e.leading_monomial(), e.as_dict()) for e in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis) and
            self.ring == other.ring and
            self.order == other.order and
            set(self.elements) == set(other.elements)
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'GroebnerBasis([{0}])'.format(
            ', '.join(str(e) for e in self.elements))

    def leading_monomials(self):
        return [lm for lm, _ in self._pairs]

    def is_unit(self):
        return any(_is_constant(lm) for lm, _ in self._pairs)

    def reduce(self, polynomial):
        """Normal form of `polynomial` modulo the ideal."""
        remainder = self._kernel.normal_form(polynomial.as_dict(), self._pairs)
        return Polynomial.from_dict(self.ring, remainder, self.order)

    def contains(self, polynomial):
        return not self.reduce(polynomial)


class Ideal(object):

    """
    Ideal of a polynomial ring given by generators.

    Reduced Groebner bases are cached per monomial order; the cache is
    written once per order under a lock.

    """

    def __init__(self, ring, generators=()):
        self.ring = ring
        polys = []
        for g in generators:
            if isinstance(g, string_types):
                g = ring.parse(g)
            if not isinstance(g, Polynomial):
                raise InputError('Not a polynomial: {0!r}'.format(g))
            if g.ring != ring:
                raise InputError(
                    'Generator {0} is not in {1!r}'.format(g, ring))
            if g:
                polys.append(g)
        self.generators = tuple(polys)
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return 'Ideal({0})'.format(
            ', '.join(str(g) for g in self.generators) or '0')

    def groebner(self, order=None):
        order = order or grevlex(self.ring)
        try:
            return self._cache[order]
        except KeyError:
            pass

        logger.debug(
            'Computing Groebner basis of %d generators in %d variables',
            len(self.generators), self.ring.ngens)
        dicts = buchberger(
            [g.as_dict() for g in self.generators], order, self.ring.ngens)
        basis = GroebnerBasis(
            self.ring,
            order,
            [Polynomial(self.ring, d, order) for d in dicts],
        )
        with self._lock:
            return self._cache.setdefault(order, basis)

    def canonical(self):
        return self.groebner(grevlex(self.ring))

    def is_zero(self):
        return not self.generators

    def is_unit(self):
        return self.canonical().is_unit()

    def is_homogeneous(self, indices=None):
        return all(g.is_homogeneous(indices) for g in self.generators)

    def contains(self, polynomial):
        if isinstance(polynomial, string_types):
            polynomial = self.ring.parse(polynomial)
        return self.canonical().contains(polynomial)

    def is_subset(self, other):
        """True when self is contained in `other`."""
        _check_rings(self, other)
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return (
            self.ring == other.ring and self.canonical() == other.canonical())

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(frozenset(self.canonical().elements))

    def __add__(self, other):
        if not isinstance(other, Ideal):
            other = Ideal(self.ring, other)
        _check_rings(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        _check_rings(self, other)
        return Ideal(
            self.ring,
            [f * g for f in self.generators for g in other.generators])

    def transfer(self, ring, positional=False):
        return Ideal(
            ring, [g.transfer(ring, positional) for g in self.generators])

    def reduced(self):
        """Ideal generated by the canonical reduced Groebner basis."""
        ideal = Ideal(self.ring, self.canonical().elements)
        ideal._cache[self.canonical().order] = self.canonical()
        return ideal


def _check_rings(*ideals):
    rings = {ideal.ring for ideal in ideals}
    if len(rings) > 1:
        raise InputError('Ideals belong to different rings')


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def groebner(ideal, order=None):
    return ideal.groebner(order)


# Elimination, quotients and saturation

def eliminate(ideal, drop):
    """
    Return I intersected with the subring on the variables not in `drop`.

    """
    ring = ideal.ring
    drop = set(drop)
    for name in drop:
        ring.index(name)
    kept = [name for name in ring.variables if name not in drop]
    subring = ring.subring(kept)
    if not drop:
        return Ideal(subring, ideal.canonical().elements)

    basis = ideal.groebner(elimination_order(ring, drop))
    generators = [
        g.transfer(subring) for g in basis
        if not drop.intersection(g.support())
    ]
    logger.debug(
        'Eliminated %s: %d of %d basis elements survive',
        ', '.join(sorted(drop)), len(generators), len(basis))
    return Ideal(subring, generators)


def intersection(first, second):
    """I cap J, eliminating t from t*I + (1 - t)*J."""
    _check_rings(first, second)
    if first.is_subset(second):
        return first
    if second.is_subset(first):
        return second

    ring = first.ring
    t_name, = ring.fresh_names(1)
    extended = ring.extend([t_name])
    t = extended.variable(t_name)
    generators = [t * g.transfer(extended) for g in first.generators]
    generators.extend(
        (1 - t) * g.transfer(extended) for g in second.generators)
    result = eliminate(Ideal(extended, generators), [t_name])
    return result.transfer(ring)


def _divide_exact(h, g):
    """Quotient of h by g, which must divide h."""
    try:
        quotient = h.element.exquo(g.element)
    except ExactQuotientFailed:
        raise InternalError('Inexact polynomial division')
    return Polynomial.from_element(h.ring, quotient)


def quotient(ideal, other):
    """
    Ideal quotient I : J, intersecting I : g over the generators g of J.

    """
    if isinstance(other, Polynomial):
        other = Ideal(ideal.ring, [other])
    _check_rings(ideal, other)

    result = None
    for g in other.generators:
        if ideal.contains(g):
            continue
        principal = Ideal(ideal.ring, [g])
        part = Ideal(
            ideal.ring,
            [_divide_exact(h, g) for h in
             intersection(ideal, principal).generators])
        result = part if result is None else intersection(result, part)
    return result if result is not None else unit_ideal(ideal.ring)


def _saturate_by_variable(ideal, name):
    """Bayer: divide out powers of a variable placed last in grevlex."""
    basis = ideal.groebner(grevlex(ideal.ring, last=name))
    index = ideal.ring.index(name)
    generators = []
    for g in basis:
        power = min(exps[index] for exps in g.as_dict())
        if power:
            exps = [0] * ideal.ring.ngens
            exps[index] = power
            g = _divide_exact(g, Polynomial(ideal.ring, {tuple(exps): 1}))
        generators.append(g)
    return Ideal(ideal.ring, generators)


def _saturate_by_element(ideal, g):
    """I : g^oo."""
    if not g:
        return unit_ideal(ideal.ring)
    if g.is_constant():
        return ideal
    if ideal.contains(g):
        return unit_ideal(ideal.ring)

    if len(g) == 1 and ideal.is_homogeneous():
        exps, _ = g.terms[0]
        result = ideal
        for name, e in zip(ideal.ring.variables, exps):
            if e:
                result = _saturate_by_variable(result, name)
        return result

    ring = ideal.ring
    t_name, = ring.fresh_names(1)
    extended = ring.extend([t_name])
    t = extended.variable(t_name)
    generators = [h.transfer(extended) for h in ideal.generators]
    generators.append(1 - t * g.transfer(extended))
    return eliminate(Ideal(extended, generators), [t_name]).transfer(ring)


def saturation(ideal, other, method='element'):
    """
    Saturation I : J^oo.

    `method='element'` intersects I : g^oo over the generators g of J;
    `method='quotient'` iterates I : J until the reduced bases agree.

    """
    if isinstance(other, Polynomial):
        other = Ideal(ideal.ring, [other])
    _check_rings(ideal, other)
    if other.is_zero():
        return unit_ideal(ideal.ring)

    if method == 'quotient':
        return _saturation_by_quotients(ideal, other)
    if method != 'element':
        raise InputError('Unknown saturation method: {0}'.format(method))

    result = None
    for g in other.generators:
        part = _saturate_by_element(ideal, g)
        if part.is_unit():
            continue
        if result is None:
            result = part
        else:
            result = intersection(result, part)
    if result is None:
        return unit_ideal(ideal.ring)
    logger.debug(
        'Saturated by %d generators: %d basis elements', len(other.generators),
        len(result.canonical()))
    return result


def _saturation_by_quotients(ideal, other):
    max_iterations = current_limits().max_saturation_iters
    current = ideal
    for iteration in range(1, max_iterations + 1):
        following = quotient(current, other)
        if following == current:
            logger.debug('Saturation stabilized after %d quotients', iteration)
            return current
        current = following
    raise ComputationLimitError(
        'Saturation did not stabilize',
        {'iterations': max_iterations, 'limit': max_iterations})


# Dimension and degree

def _independent_dimension(monomials, nvars):
    """Size of a maximal set of variables containing no monomial support."""
    supports = [
        frozenset(i for i, e in enumerate(m) if e) for m in monomials]
    if any(not support for support in supports):
        return -1
    best = [0]

    def search(position, chosen):
        if len(chosen) + (nvars - position) <= best[0]:
            return
        if position == nvars:
            best[0] = len(chosen)
            return
        extended = chosen | {position}
        if not any(support <= extended for support in supports):
            search(position + 1, extended)
        search(position + 1, chosen)

    search(0, frozenset())
    return best[0]


def _poly_mul(a, b):
    result = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[i + j] += x * y
    return result


def _poly_add(a, b):
    result = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        result[i] += x
    for i, y in enumerate(b):
        result[i] += y
    return result


def _minimalize(monomials):
    monomials = sorted(set(monomials), key=sum)
    minimal = []
    for m in monomials:
        if not any(monomial_divides(other, m) for other in minimal):
            minimal.append(m)
    return minimal


def hilbert_numerator(monomials, nvars):
    """
    Numerator N(t) of the Hilbert series N(t)/(1-t)^n of a monomial ideal.

    Returned as a list of integer coefficients, lowest degree first.

    """
    monomials = _minimalize(monomials)
    if not monomials:
        return [1]
    if any(not any(m) for m in monomials):
        return [0]

    counts = [0] * nvars
    for m in monomials:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: (counts[i], -i))
    if counts[pivot] <= 1:
        # pairwise coprime generators
        result = [1]
        for m in monomials:
            factor = [0] * (sum(m) + 1)
            factor[0] = 1
            factor[-1] -= 1
            result = _poly_mul(result, factor)
        return result

    power = min(m[pivot] for m in monomials if m[pivot])
    pivot_monomial = tuple(power if i == pivot else 0 for i in range(nvars))
    added = hilbert_numerator(monomials + [pivot_monomial], nvars)
    divided = hilbert_numerator(
        [tuple(max(e - power, 0) if i == pivot else e
               for i, e in enumerate(m)) for m in monomials],
        nvars)
    return _poly_add(added, [0] * power + divided)


class DimensionDegree(object):

    """
    Krull dimension and degree of ring/I.

    `degree` is None for the unit ideal. For homogeneous input it is the
    degree of the projective scheme; otherwise it is the degree of the
    projective closure and `advisory` is set.

    """

    def __init__(self, krull_dimension, degree, advisory=False):
        self.krull_dimension = krull_dimension
        self.degree = degree
        self.advisory = advisory

    @property
    def projective_dimension(self):
        return self.krull_dimension - 1

    def __eq__(self, other):
        return (
            isinstance(other, DimensionDegree) and
            (self.krull_dimension, self.degree) ==
            (other.krull_dimension, other.degree)
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'DimensionDegree(krull_dimension={0}, degree={1})'.format(
            self.krull_dimension, self.degree)


def krull_dimension(ideal):
    basis = ideal.canonical()
    return _independent_dimension(basis.leading_monomials(), ideal.ring.ngens)


def dimension_and_degree(ideal, warn=True):
    """
    Dimension from independent sets, degree from the Hilbert series.

    The two are computed separately; a pole order of the Hilbert series that
    disagrees with the dimension is reported as an internal error.

    """
    basis = ideal.canonical()
    nvars = ideal.ring.ngens
    monomials = basis.leading_monomials()
    dimension = _independent_dimension(monomials, nvars)
    if dimension < 0:
        return DimensionDegree(-1, None)

    numerator = hilbert_numerator(monomials, nvars)
    for _ in range(nvars - dimension):
        # synthetic division by (1 - t)
        quotient = []
        carry = 0
        for c in numerator[:-1]:
            carry += c
            quotient.append(carry)
        if carry + numerator[-1] != 0:
            raise InternalError(
                'Hilbert series pole order disagrees with dimension '
                '{0}'.format(dimension))
        numerator = quotient or [0]
    degree = sum(numerator)
    if degree <= 0:
        raise InternalError(
            'Hilbert series pole order disagrees with dimension {0}'.format(
                dimension))

    advisory = not ideal.is_homogeneous()
    if advisory and warn:
        warnings.warn(
            'degree of a non-homogeneous ideal is that of its projective '
            'closure and is advisory', TrimccWarning)
    return DimensionDegree(dimension, degree, advisory)


# Linear sections

def restrict_to_linear(ideal, equations):
    """
    Impose affine-linear equations by substitution.

    Returns the ideal in the subring of the variables not solved for, or the
    unit ideal of the full ring when the equations are inconsistent.

    """
    ring = ideal.ring
    solved = {}
    for equation in equations:
        if equation.total_degree() > 1:
            raise InputError('Not a linear equation: {0}'.format(equation))
        if solved:
            equation = equation.substitute(solved)
        if not equation:
            continue
        if equation.is_constant():
            return unit_ideal(ring)
        pivot = max(
            (i for exps in equation.as_dict() for i, e in enumerate(exps)
             if e))
        name = ring.variables[pivot]
        exps = tuple(1 if i == pivot else 0 for i in range(ring.ngens))
        c = equation.coefficient(exps)
        value = (ring.variable(name).scale(c) - equation).scale(1 / c)
        solved = {
            key: image.substitute({name: value})
            for key, image in solved.items()}
        solved[name] = value

    subring = ring.subring(
        [name for name in ring.variables if name not in solved])
    generators = [
        g.substitute(solved).transfer(subring) for g in ideal.generators]
    return Ideal(subring, generators)


def _eliminant(ideal, name):
    """Monic generator of I intersected with Q[name]."""
    others = [v for v in ideal.ring.variables if v != name]
    univariate = eliminate(ideal, others)
    basis = univariate.canonical()
    if len(basis) != 1:
        raise InputError('Ideal is not zero-dimensional')
    return basis.elements[0]


class PointCount(object):

    def __init__(self, distinct, with_multiplicity):
        self.distinct = distinct
        self.with_multiplicity = with_multiplicity

    def __repr__(self):
        return 'PointCount(distinct={0}, with_multiplicity={1})'.format(
            self.distinct, self.with_multiplicity)


def count_points(ideal):
    """
    Count the points of a zero-dimensional affine ideal.

    Distinct points come from the radical obtained by adding the squarefree
    parts of the univariate eliminants.

    """
    if ideal.is_unit():
        return PointCount(0, 0)
    dd = dimension_and_degree(ideal, warn=False)
    if dd.krull_dimension != 0:
        raise InputError(
            'Ideal has dimension {0}, not 0'.format(dd.krull_dimension))
    ring = ideal.ring
    squarefree = []
    for name in ring.variables:
        squarefree.append(
            _eliminant(ideal, name).squarefree_part().transfer(ring))
    radical = ideal + Ideal(ring, squarefree)
    distinct = dimension_and_degree(radical, warn=False).degree
    return PointCount(distinct, dd.degree)


def zero_dimensional_degree(ideal):
    """Length of a zero-dimensional ideal, None if positive dimensional."""
    dd = dimension_and_degree(ideal, warn=False)
    if dd.krull_dimension < 0:
        return 0
    if dd.krull_dimension > 0:
        return None
    return dd.degree


def random_combination(polynomials, seed):
    """Seeded generic combination of `polynomials`."""
    polynomials = list(polynomials)
    coefficients = random_coefficients(seed, len(polynomials))
    result = polynomials[0].ring.zero()
    for c, p in zip(coefficients, polynomials):
        if c:
            result = result + p.scale(c)
    return result


# Multidegree

def is_bihomogeneous(ideal, blocks):
    ring = ideal.ring
    return all(
        ideal.is_homogeneous(ring.block_indices(block)) for block in blocks)


def multidegree(ideal, blocks, seed=0):
    """
    Multidegree (m_0, ..., m_D) of a subvariety of P^n x P^m.

    m_j counts the points cut by D - j generic hyperplanes from the first
    block and j generic hyperplanes from the second, in an affine chart.

    """
    primal, dual = blocks
    ring = ideal.ring
    if not is_bihomogeneous(ideal, blocks):
        raise InputError('Ideal is not bihomogeneous in {0}, {1}'.format(
            primal, dual))
    primal_gens = [ring.variable(name) for name in ring.blocks[primal]]
    dual_gens = [ring.variable(name) for name in ring.blocks[dual]]

    krull = krull_dimension(ideal)
    if krull < 2:
        return []
    dimension = krull - 2
    return [
        slice_count(
            ideal,
            charts=[primal_gens, dual_gens],
            cuts=[(primal_gens, dimension - j), (dual_gens, j)],
            seed=derive_seed(seed, 'multidegree', j))
        for j in range(dimension + 1)
    ]


def slice_count(ideal, charts, cuts, seed, saturate_by=None):
    """
    Count the points of V(I) cut by generic linear sections.

    Each entry of `cuts` is (forms, count): `count` generic combinations of
    the linear `forms` are imposed. Each entry of `charts` adds one generic
    affine chart equation in the given variables. `saturate_by` removes a
    fixed subscheme after slicing. Sections that are not zero-dimensional
    are redrawn.

    """
    attempts = current_limits().max_slice_attempts
    for attempt in range(attempts):
        child = derive_seed(seed, attempt)
        equations = []
        for position, (forms, count) in enumerate(cuts):
            for k in range(count):
                equations.append(random_combination(
                    forms, derive_seed(child, 'cut', position, k)))
        for position, gens in enumerate(charts):
            equations.append(random_combination(
                gens, derive_seed(child, 'chart', position)) - 1)

        section = restrict_to_linear(ideal, equations)
        if saturate_by is not None and not section.is_unit():
            removed = restrict_to_linear(saturate_by, equations)
            if removed.ring == section.ring:
                section = saturation(section, removed)
        count = zero_dimensional_degree(section)
        if count is not None:
            return count
        logger.info(
            'Slice attempt %d is not zero-dimensional, redrawing', attempt + 1)
    raise ComputationLimitError(
        'Generic slices stayed degenerate',
        {'attempts': attempts, 'limit': attempts})
