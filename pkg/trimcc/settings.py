from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import namedtuple
from contextlib import contextmanager
import threading


Limits = namedtuple(
    'Limits', ['max_gb_steps', 'max_saturation_iters', 'max_slice_attempts'])

DEFAULT_LIMITS = Limits(
    max_gb_steps=100000,
    max_saturation_iters=50,
    max_slice_attempts=8,
)

# coefficients of generic linear forms are drawn from [-COEFFICIENT_RANGE,
# COEFFICIENT_RANGE]
COEFFICIENT_RANGE = 10 ** 4

# exponents are stored as if they were signed 32 bit machine integers
MAX_EXPONENT = 2 ** 31 - 1

_local = threading.local()


def current_limits():
    return getattr(_local, 'limits', DEFAULT_LIMITS)


@contextmanager
def limits(**overrides):
    """
    Install computation limits for the current thread.

        >>> with limits(max_gb_steps=10):
        ...     groebner(ideal)

    """
    previous = current_limits()
    overrides = {
        key: value for key, value in overrides.items() if value is not None}
    _local.limits = previous._replace(**overrides)
    try:
        yield _local.limits
    finally:
        _local.limits = previous
