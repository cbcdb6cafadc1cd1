from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from six import integer_types

from trimcc.exceptions import InputError
from trimcc.types import AmbientKind
from trimcc.varieties import Variety


class CycleKey(object):

    """
    Canonical key of a subvariety W of P^n or A^n.

    Two keys are equal iff the reduced grevlex bases of the saturated ideals
    agree element by element; affine ideals are taken as they are. The zero
    section (W the whole ambient space) has its own key.

    """

    def __init__(self, variety):
        if not isinstance(variety, Variety):
            raise InputError('Cycle keys need a variety')
        self.variety = variety
        self.ring = variety.ring
        self.is_zero_section = variety.ideal.is_zero()
        if self.is_zero_section:
            self.elements = ()
        else:
            saturated = variety.close(variety.ideal)
            if saturated.is_unit():
                raise InputError('Variety {0!r} is empty'.format(variety))
            self.elements = tuple(
                sorted(str(g) for g in saturated.canonical()))
        self.name = variety.name or (
            '{0}^{1}'.format(self.ambient_letter, self.ambient_dimension)
            if self.is_zero_section
            else 'V({0})'.format(', '.join(self.elements)))

    @property
    def ambient_dimension(self):
        return self.variety.ambient_dimension

    @property
    def ambient_letter(self):
        return 'P' if self.variety.kind == AmbientKind.PROJECTIVE else 'A'

    @property
    def dimension(self):
        if self.is_zero_section:
            return self.ambient_dimension
        return self.variety.dimension

    @property
    def ambient(self):
        return (self.variety.kind, self.ring.variables)

    def __eq__(self, other):
        return (
            isinstance(other, CycleKey) and
            self.ambient == other.ambient and
            self.elements == other.elements
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.ambient, self.elements))

    def __repr__(self):
        return 'CycleKey({0})'.format(self.name)


class _Combination(object):

    """Finite integer combination over cycle keys; zeros are not stored."""

    def __init__(self, terms=None):
        cleaned = {}
        for key, value in (terms or {}).items():
            if not isinstance(key, CycleKey):
                raise InputError('Not a cycle key: {0!r}'.format(key))
            if not isinstance(value, integer_types):
                raise InputError(
                    'Multiplicities must be integers: {0!r}'.format(value))
            value = cleaned.get(key, 0) + value
            if value:
                cleaned[key] = value
            else:
                cleaned.pop(key, None)
        ambients = {key.ambient for key in cleaned}
        if len(ambients) > 1:
            raise InputError('Cycle keys live in different ambient spaces')
        self.terms = cleaned

    @classmethod
    def basis(cls, key):
        return cls({key: 1})

    def items(self):
        return sorted(self.terms.items(), key=lambda item: item[0].name)

    def keys(self):
        return [key for key, _ in self.items()]

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, 0) + value
        return self.__class__(terms)

    def __neg__(self):
        return self.__class__({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, integer_types):
            return NotImplemented
        return self.__class__({k: scalar * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def _check(self, other):
        if type(self) is not type(other):
            raise InputError(
                'Cannot combine {0} with {1}'.format(
                    type(self).__name__, type(other).__name__))

    def __repr__(self):
        return '{0}({1})'.format(
            self.__class__.__name__,
            ', '.join(
                '{0}*{1}'.format(value, key.name)
                for key, value in self.items()))

    def to_json(self):
        return [
            {'key': key.name, 'dimension': key.dimension, 'coefficient': value}
            for key, value in self.items()
        ]


class LagrangianCycle(_Combination):

    """Sum of m_W T*_W X."""


class ConstructibleFunction(_Combination):

    """Sum of m_W Eu_W."""

    def evaluate(self, point, seed=0):
        from trimcc.calculus import evaluate_constructible
        return evaluate_constructible(self, point, seed)


class ChowVector(object):

    """
    Class in A_*(P^n) by its coefficients on [P^0], ..., [P^n].

    """

    def __init__(self, components, ambient_dimension=None):
        components = [int(c) for c in components]
        if ambient_dimension is None:
            ambient_dimension = len(components) - 1
        if len(components) > ambient_dimension + 1:
            if any(components[ambient_dimension + 1:]):
                raise InputError(
                    'Class {0} does not fit in P^{1}'.format(
                        components, ambient_dimension))
            components = components[:ambient_dimension + 1]
        components += [0] * (ambient_dimension + 1 - len(components))
        self.components = tuple(components)
        self.ambient_dimension = ambient_dimension

    @classmethod
    def zero(cls, ambient_dimension):
        return cls([], ambient_dimension)

    def __getitem__(self, dimension):
        return self.components[dimension]

    def __iter__(self):
        return iter(self.components)

    def _check(self, other):
        if self.ambient_dimension != other.ambient_dimension:
            raise InputError(
                'Classes live in P^{0} and P^{1}'.format(
                    self.ambient_dimension, other.ambient_dimension))

    def __add__(self, other):
        self._check(other)
        return ChowVector(
            [a + b for a, b in zip(self, other)], self.ambient_dimension)

    def __neg__(self):
        return ChowVector([-a for a in self], self.ambient_dimension)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return ChowVector([scalar * a for a in self], self.ambient_dimension)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ChowVector):
            return self.components == other.components
        return list(self.components) == list(other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.components)

    def dimension(self):
        """Largest j with a nonzero coefficient, -1 for zero."""
        nonzero = [j for j, c in enumerate(self.components) if c]
        return nonzero[-1] if nonzero else -1

    def __str__(self):
        parts = [
            '{0}[P^{1}]'.format(c, j)
            for j, c in reversed(list(enumerate(self.components))) if c]
        return ' + '.join(parts).replace('+ -', '- ') or '0'

    def __repr__(self):
        return 'ChowVector({0})'.format(list(self.components))
