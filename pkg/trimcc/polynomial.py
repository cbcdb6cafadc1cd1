from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import OrderedDict
from fractions import Fraction
import itertools
import re

import pyparsing
from pyparsing import (
    Forward,
    Regex,
    infixNotation,
    oneOf,
    opAssoc,
)
from six import integer_types, string_types
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from trimcc.exceptions import (
    ComputationLimitError,
    InputError,
    ParseError,
)
from trimcc.settings import MAX_EXPONENT
from trimcc.types import OrderKind
from trimcc.utils import format_parse_error, random_coefficients


VALID_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')

DEFAULT_BLOCK = 'main'


class PolynomialRing(object):

    """
    Polynomial ring over the rationals.

    Variables are partitioned into ordered grading blocks, eg, the primal
    block `x0..xn` and the dual block `a0..an` of `P^n x P^n`.

    """

    def __init__(self, variables, blocks=None):
        variables = tuple(variables)
        for name in variables:
            if (not isinstance(name, string_types) or
                    not VALID_NAME.match(name)):
                raise InputError('Invalid variable name: {0!r}'.format(name))
        if len(set(variables)) != len(variables):
            raise InputError(
                'Variable names must be unique: {0}'.format(
                    ', '.join(variables)))

        if blocks is None:
            blocks = OrderedDict([(DEFAULT_BLOCK, variables)])
        blocks = OrderedDict(
            (name, tuple(members)) for name, members in blocks.items())
        seen = [name for members in blocks.values() for name in members]
        if sorted(seen) != sorted(variables):
            raise InputError(
                'Blocks must partition the variables {0}'.format(
                    ', '.join(variables)))

        self.variables = variables
        self.blocks = blocks
        self._index = {name: i for i, name in enumerate(variables)}
        self._sympy_ring = None

    @property
    def ngens(self):
        return len(self.variables)

    @property
    def sympy_ring(self):
        """The sympy `PolyRing` over QQ backing this ring's arithmetic."""
        if self._sympy_ring is None:
            self._sympy_ring = PolyRing(self.variables, QQ, 'grevlex')
        return self._sympy_ring

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise InputError('Unknown variable: {0}'.format(name))

    def block_indices(self, block):
        if block not in self.blocks:
            raise InputError('Unknown block: {0}'.format(block))
        return tuple(self.index(name) for name in self.blocks[block])

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing) and
            self.variables == other.variables and
            list(self.blocks.items()) == list(other.blocks.items())
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.variables, tuple(self.blocks.items())))

    def __repr__(self):
        return 'PolynomialRing({0})'.format(', '.join(self.variables))

    def extend(self, names, block='aux'):
        """Return a ring with `names` appended as a new block."""
        blocks = OrderedDict(self.blocks)
        while block in blocks:
            block = block + '_'
        blocks[block] = tuple(names)
        return PolynomialRing(self.variables + tuple(names), blocks)

    def subring(self, names):
        """Return the ring on `names`, keeping this ring's variable order."""
        names = set(names)
        variables = tuple(v for v in self.variables if v in names)
        blocks = OrderedDict()
        for block, members in self.blocks.items():
            kept = tuple(v for v in members if v in names)
            if kept:
                blocks[block] = kept
        return PolynomialRing(variables, blocks)

    def fresh_names(self, count, prefix='t'):
        names = []
        i = 0
        while len(names) < count:
            name = '_{0}{1}'.format(prefix, i)
            if name not in self._index:
                names.append(name)
            i += 1
        return tuple(names)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, value):
        return Polynomial(self, {(0,) * self.ngens: Fraction(value)})

    def variable(self, name):
        exps = [0] * self.ngens
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self):
        return [self.variable(name) for name in self.variables]

    def parse(self, text):
        return parse_polynomial(self, text)


class MonomialOrder(object):

    """
    Total multiplicative order on exponent vectors.

    Every kind is described by a sequence of blocks of variable indices:
    `lex` and `grevlex` have a single block (possibly permuted), `block`
    compares blocks left to right, each by grevlex. A block order whose first
    block holds the variables to drop is an elimination order for them.

    """

    def __init__(self, kind, blocks):
        self.kind = kind
        self.blocks = tuple(tuple(block) for block in blocks if block)
        self.key = self._build_key()

    def _build_key(self):
        if self.kind == OrderKind.LEX:
            indices = self.blocks[0] if self.blocks else ()
            return lambda exps: tuple(exps[i] for i in indices)

        def grevlex_key(indices):
            reversed_indices = tuple(reversed(indices))
            return lambda exps: (
                sum(exps[i] for i in indices),
                tuple(-exps[i] for i in reversed_indices),
            )

        keys = [grevlex_key(block) for block in self.blocks]
        if len(keys) == 1:
            return keys[0]
        return lambda exps: tuple(key(exps) for key in keys)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder) and
            self.kind == other.kind and
            self.blocks == other.blocks
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.kind, self.blocks))

    def __repr__(self):
        return 'MonomialOrder({0}, {1})'.format(self.kind.value, self.blocks)


def lex(ring):
    return MonomialOrder(OrderKind.LEX, [range(ring.ngens)])


def grevlex(ring, last=None):
    """Graded reverse lexicographic order, optionally with `last` smallest."""
    indices = list(range(ring.ngens))
    if last is not None:
        position = ring.index(last)
        indices.remove(position)
        indices.append(position)
    return MonomialOrder(OrderKind.GREVLEX, [indices])


def elimination_order(ring, drop):
    """Block order eliminating the variables in `drop`."""
    dropped = [ring.index(name) for name in ring.variables if name in drop]
    kept = [ring.index(name) for name in ring.variables if name not in drop]
    return MonomialOrder(OrderKind.BLOCK, [dropped, kept])


def block_order(ring):
    """Per-block grevlex following the ring's blocks."""
    return MonomialOrder(
        OrderKind.BLOCK,
        [ring.block_indices(block) for block in ring.blocks])


def _check_exponents(exps):
    for e in exps:
        if e > MAX_EXPONENT:
            raise ComputationLimitError(
                'Exponent overflow', {'exponent': e, 'limit': MAX_EXPONENT})


def to_ground(value):
    """Coerce an int, Fraction or QQ element into QQ."""
    if isinstance(value, QQ.dtype):
        return value
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


class Polynomial(object):

    """
    Immutable sparse polynomial with rational coefficients.

    Arithmetic runs on a sympy `PolyElement` over QQ; `terms` lists the
    (exponents, Fraction) pairs strictly descending under `order`.

    """

    __slots__ = ('ring', 'order', '_element', '_terms', '_dict')

    def __init__(self, ring, terms, order=None):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        element = ring.sympy_ring.zero
        nvars = ring.ngens
        for exps, coefficient in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise InputError(
                    'Exponent vector {0} does not match {1!r}'.format(
                        exps, ring))
            if any(e < 0 for e in exps):
                raise InputError('Negative exponent in {0}'.format(exps))
            _check_exponents(exps)
            value = element.get(exps, QQ.zero) + to_ground(coefficient)
            if value:
                element[exps] = value
            else:
                element.pop(exps, None)
        self._setup(ring, element, order)

    def _setup(self, ring, element, order):
        self.ring = ring
        self.order = order or grevlex(ring)
        self._element = element
        self._terms = None
        self._dict = None

    @classmethod
    def from_element(cls, ring, element, order=None):
        """Wrap a `PolyElement` of `ring.sympy_ring`."""
        for exps in element:
            _check_exponents(exps)
        polynomial = cls.__new__(cls)
        polynomial._setup(ring, element, order)
        return polynomial

    @classmethod
    def from_dict(cls, ring, cleaned, order=None):
        """Build from a dict with no zero coefficients, without checks."""
        element = ring.sympy_ring.from_dict(
            {exps: to_ground(c) for exps, c in cleaned.items()})
        polynomial = cls.__new__(cls)
        polynomial._setup(ring, element, order)
        return polynomial

    @property
    def element(self):
        return self._element

    @property
    def terms(self):
        if self._terms is None:
            key = self.order.key
            self._terms = tuple(
                sorted(self._fractions().items(),
                       key=lambda term: key(term[0]), reverse=True))
        return self._terms

    def _fractions(self):
        if self._dict is None:
            self._dict = {
                exps: to_fraction(c) for exps, c in self._element.items()}
        return self._dict

    def as_dict(self):
        return dict(self._fractions())

    def with_order(self, order):
        if order == self.order:
            return self
        return Polynomial.from_element(self.ring, self._element, order)

    def _wrap(self, element):
        return Polynomial.from_element(self.ring, element, self.order)

    def is_zero(self):
        return not self._element

    def __bool__(self):
        return bool(self._element)

    __nonzero__ = __bool__

    def __len__(self):
        return len(self._element)

    def is_constant(self):
        return all(not any(exps) for exps in self._element)

    def leading_monomial(self):
        if not self._element:
            raise InputError('The zero polynomial has no leading monomial')
        return self.terms[0][0]

    def leading_coefficient(self):
        if not self._element:
            return Fraction(0)
        return self.terms[0][1]

    def coefficient(self, exps):
        return to_fraction(self._element.get(tuple(exps), QQ.zero))

    def total_degree(self):
        if not self._element:
            return -1
        return max(sum(exps) for exps in self._element)

    def degree_in(self, indices):
        """Degrees of the terms restricted to the variables in `indices`."""
        return {sum(exps[i] for i in indices) for exps in self._element}

    def is_homogeneous(self, indices=None):
        if indices is None:
            indices = range(self.ring.ngens)
        return len(self.degree_in(indices)) <= 1

    def support(self):
        """Names of the variables that occur."""
        used = set()
        for exps in self._element:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(self.ring.variables[i] for i in sorted(used))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError(
                    'Polynomials from different rings: {0!r} and {1!r}'.format(
                        self.ring, other.ring))
            return other._element
        if isinstance(other, integer_types + (Fraction,)):
            return self.ring.sympy_ring.ground_new(to_ground(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(self._element + other)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self._element)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(self._element - other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(other - self._element)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(self._element * other)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, integer_types) or exponent < 0:
            raise InputError(
                'Exponent must be a non-negative integer: {0!r}'.format(
                    exponent))
        if not exponent:
            return self.ring.one().with_order(self.order)
        _check_exponents(
            [e * exponent for exps in self._element for e in exps])
        return self._wrap(self._element ** exponent)

    def scale(self, factor):
        return self._wrap(self._element.mul_ground(to_ground(factor)))

    def monic(self):
        if not self._element:
            return self
        return self.scale(1 / self.leading_coefficient())

    def primitive(self):
        """Integer coefficients with no common factor and positive lead."""
        if not self._element:
            return self
        _, primitive = self._element.primitive()
        result = self._wrap(primitive)
        if result.leading_coefficient() < 0:
            result = -result
        return result

    def squarefree_part(self):
        """Product of the distinct irreducible factors, made monic."""
        if self.is_constant():
            return self
        return self._wrap(self._element.sqf_part()).monic()

    def derivative(self, name):
        return self._wrap(self._element.diff(self.ring.index(name)))

    def evaluate(self, point):
        """Evaluate at a point given as a sequence or a name -> value map."""
        if isinstance(point, dict):
            values = [to_ground(point[name]) for name in self.ring.variables]
        else:
            values = [to_ground(value) for value in point]
            if len(values) != self.ring.ngens:
                raise InputError(
                    'Point {0} does not match {1!r}'.format(point, self.ring))
        if not values:
            return to_fraction(self._element.get((), QQ.zero))
        return to_fraction(self._element(*values))

    def substitute(self, images, ring=None):
        """
        Substitute polynomials for variables.

        `images` maps variable names of this ring to polynomials of `ring`;
        unmapped variables must exist in `ring` and are kept.

        """
        ring = ring or self.ring
        target = ring.sympy_ring
        values = []
        for name in self.ring.variables:
            if name in images:
                image = images[name]
                if isinstance(image, Polynomial):
                    image = image.transfer(ring)._element
                else:
                    image = target.ground_new(to_ground(image))
            else:
                image = ring.variable(name)._element
            values.append(image)

        cache = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = values[i] ** e
            return cache[(i, e)]

        result = target.zero
        for exps, c in self._element.items():
            term = target.ground_new(c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return Polynomial.from_element(ring, result)

    def transfer(self, ring, positional=False):
        """Move into `ring`, matching variables by name or by position."""
        if ring == self.ring:
            return self
        target = ring.sympy_ring
        if positional:
            if ring.ngens != self.ring.ngens:
                raise InputError(
                    'Cannot transfer {0!r} to {1!r}'.format(self.ring, ring))
            return Polynomial.from_element(
                ring, target.from_dict(dict(self._element)))
        positions = [ring._index.get(name) for name in self.ring.variables]
        result = {}
        for exps, c in self._element.items():
            new = [0] * ring.ngens
            for name, position, e in zip(
                    self.ring.variables, positions, exps):
                if position is None:
                    if e:
                        raise InputError(
                            'Variable {0} does not exist in {1!r}'.format(
                                name, ring))
                    continue
                new[position] = e
            result[tuple(new)] = c
        return Polynomial.from_element(ring, target.from_dict(result))

    def __eq__(self, other):
        if isinstance(other, integer_types + (Fraction,)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring == other.ring and
            dict(self._element) == dict(other._element))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(frozenset(self._fractions().items()))

    def __str__(self):
        if not self._element:
            return '0'
        parts = []
        for exps, c in self.terms:
            monomial = '*'.join(
                name if e == 1 else '{0}^{1}'.format(name, e)
                for name, e in zip(self.ring.variables, exps) if e)
            magnitude = abs(c)
            if not monomial:
                text = str(magnitude)
            elif magnitude == 1:
                text = monomial
            else:
                text = '{0}*{1}'.format(magnitude, monomial)
            parts.append(('-' if c < 0 else '+', text))
        sign, text = parts[0]
        out = ['-' + text if sign == '-' else text]
        for sign, text in parts[1:]:
            out.append('{0} {1}'.format(sign, text))
        return ' '.join(out)

    def __repr__(self):
        return 'Polynomial({0!r})'.format(str(self))


# Polynomial text grammar

class _Node(object):

    __slots__ = ('kind', 'args')

    def __init__(self, kind, args):
        self.kind = kind
        self.args = args


def _number_action(tokens):
    return _Node('number', Fraction(tokens[0]))


def _variable_action(tokens):
    return _Node('variable', tokens[0])


def _power_action(tokens):
    return _Node('power', list(tokens[0][0::2]))


def _sign_action(tokens):
    sign, operand = tokens[0]
    if sign == '-':
        return _Node('negate', operand)
    return operand


def _product_action(tokens):
    return _Node('product', list(tokens[0][0::2]))


def _sum_action(tokens):
    items = tokens[0]
    terms = [('+', items[0])]
    for i in range(1, len(items), 2):
        terms.append((items[i], items[i + 1]))
    return _Node('sum', terms)


def _build_grammar():
    number = Regex(r'\d+(?:/\d+)?').setParseAction(_number_action)
    variable = Regex(r'[A-Za-z_][A-Za-z0-9_]*').setParseAction(
        _variable_action)
    expression = Forward()
    expression <<= infixNotation(
        number | variable,
        [
            ('^', 2, opAssoc.RIGHT, _power_action),
            (oneOf('+ -'), 1, opAssoc.RIGHT, _sign_action),
            ('*', 2, opAssoc.LEFT, _product_action),
            (oneOf('+ -'), 2, opAssoc.LEFT, _sum_action),
        ],
    )
    return expression


GRAMMAR = _build_grammar()


def _evaluate(node, ring):
    if node.kind == 'number':
        return ring.constant(node.args)
    if node.kind == 'variable':
        if node.args not in ring.variables:
            raise ParseError(
                'Unknown variable {0!r}; ring has {1}'.format(
                    node.args, ', '.join(ring.variables)))
        return ring.variable(node.args)
    if node.kind == 'negate':
        return -_evaluate(node.args, ring)
    if node.kind == 'product':
        result = ring.one()
        for child in node.args:
            result = result * _evaluate(child, ring)
        return result
    if node.kind == 'sum':
        result = ring.zero()
        for sign, child in node.args:
            value = _evaluate(child, ring)
            result = result - value if sign == '-' else result + value
        return result
    if node.kind == 'power':
        # right associative: a^b^c = a^(b^c)
        exponent = None
        for child in reversed(node.args):
            value = _evaluate(child, ring)
            if exponent is None:
                exponent = value
                continue
            if not exponent.is_constant():
                raise ParseError('Exponents must be integer constants')
            e = exponent.leading_coefficient() if exponent else Fraction(0)
            if e.denominator != 1 or e < 0:
                raise ParseError(
                    'Exponents must be non-negative integers, got {0}'.format(
                        e))
            exponent = value ** int(e)
        return exponent
    raise ParseError('Unexpected node {0}'.format(node.kind))


def parse_polynomial(ring, text):
    """
    Parse a polynomial in the ring's variables.

        >>> ring = PolynomialRing(['x0', 'x1', 'x2'])
        >>> parse_polynomial(ring, 'x1^2*x2 - x0^2*(x0 + x2)')

    """
    try:
        tree = GRAMMAR.parseString(text, parseAll=True)[0]
    except pyparsing.ParseException as e:
        raise ParseError(format_parse_error(text, e))
    return _evaluate(tree, ring)


# Matrices of polynomials

def _check_same_ring(polynomials):
    rings = {p.ring for p in polynomials}
    if len(rings) > 1:
        raise InputError('Polynomials belong to different rings')
    return rings.pop() if rings else None


def jacobian_matrix(generators, variables=None):
    """
    Return the matrix of partial derivatives d(gens_i)/d(vars_j).

    """
    generators = list(generators)
    ring = _check_same_ring(generators)
    if ring is None:
        return []
    if variables is None:
        variables = ring.variables
    for name in variables:
        ring.index(name)
    return [[g.derivative(name) for name in variables] for g in generators]


def determinant(matrix):
    """Fraction-free determinant over the polynomial ring."""
    size = len(matrix)
    if size == 0:
        raise InputError('Empty matrix')
    ring = _check_same_ring([entry for row in matrix for entry in row])
    rows = [[entry.element for entry in row] for row in matrix]
    value = DomainMatrix(
        rows, (size, len(rows[0])), ring.sympy_ring.to_domain()).det()
    return Polynomial.from_element(ring, value)


def minors_ideal(matrix, k):
    """
    Return all k x k minors, without zeros or repetitions.

    Row subsets and column subsets are enumerated lexicographically, so the
    output order is deterministic.

    """
    rows = len(matrix)
    columns = len(matrix[0]) if rows else 0
    if not isinstance(k, integer_types) or k < 1 or k > min(rows, columns):
        raise InputError(
            'Minor size {0} out of range for a {1}x{2} matrix'.format(
                k, rows, columns))
    _check_same_ring([entry for row in matrix for entry in row])

    seen = set()
    result = []
    for row_subset in itertools.combinations(range(rows), k):
        for column_subset in itertools.combinations(range(columns), k):
            submatrix = [
                [matrix[i][j] for j in column_subset] for i in row_subset]
            value = determinant(submatrix)
            if value and value not in seen:
                seen.add(value)
                result.append(value)
    return result


def random_linear_form(ring, block, seed=0):
    """
    Linear form in the variables of `block` with seeded integer coefficients.

    """
    names = ring.blocks.get(block)
    if names is None:
        raise InputError('Unknown block: {0}'.format(block))
    coefficients = random_coefficients(seed, len(names))
    form = ring.zero()
    for c, name in zip(coefficients, names):
        if c:
            form = form + ring.variable(name).scale(c)
    return form
