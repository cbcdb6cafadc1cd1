from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import random

from trimcc.settings import COEFFICIENT_RANGE


def format_parse_error(text, exception):
    """
    Format syntax error when parsing a polynomial.

    """
    line = exception.lineno
    column = exception.col
    detailed_message = str(exception)

    msg = text.split('\n')[:line]
    msg.append('{indent}^'.format(indent=' ' * (column - 1)))
    msg.append(detailed_message)
    return '\n'.join(msg)


def derive_seed(seed, *labels):
    """Derive a reproducible child seed from a seed and some labels."""
    rng = random.Random(repr((seed,) + labels))
    return rng.randint(0, 2 ** 31 - 1)


def random_coefficients(seed, count):
    """
    Draw `count` integers in the generic range, not all zero.

    """
    rng = random.Random(seed)
    while True:
        coefficients = [
            rng.randint(-COEFFICIENT_RANGE, COEFFICIENT_RANGE)
            for _ in range(count)
        ]
        if any(coefficients):
            return coefficients
