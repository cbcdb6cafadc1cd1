from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from enum import Enum


class OrderKind(Enum):
    LEX = 'lex'
    GREVLEX = 'grevlex'
    BLOCK = 'block'


class AmbientKind(Enum):
    PROJECTIVE = 'projective'
    AFFINE = 'affine'


class PushforwardMode(Enum):
    TRIM = 'trim'
    GENERICALLY_FINITE = 'generically-finite'
    SUPPORT_ONLY = 'support-only'


class Verdict(Enum):
    EXCLUDED = 'excluded'
    POSSIBLE = 'possible'
