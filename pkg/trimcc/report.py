from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import OrderedDict
from enum import Enum
from fractions import Fraction
import json

from tabulate import tabulate

from trimcc.cycles import ChowVector


SCHEMA_VERSION = 1


def _default(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, ChowVector):
        return list(value.components)
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    if hasattr(value, 'to_json'):
        return value.to_json()
    raise TypeError('{0!r} is not JSON serializable'.format(value))


class Report(object):

    """
    Result of one command: echoed inputs, the result payload, evidence
    tables and the warnings raised while computing it.

    """

    def __init__(self, command, inputs=None, seed=0):
        self.command = command
        self.inputs = OrderedDict(inputs or {})
        self.seed = seed
        self.result = OrderedDict()
        self.tables = []
        self.warnings = []
        self.error = None
        self.timing = None

    def add_table(self, title, headers, rows):
        self.tables.append((title, list(headers), [list(r) for r in rows]))

    def add_warning(self, message):
        message = str(message)
        if message not in self.warnings:
            self.warnings.append(message)

    def to_json(self):
        payload = OrderedDict([
            ('schema_version', SCHEMA_VERSION),
            ('command', self.command),
            ('inputs', self.inputs),
            ('seed', self.seed),
        ])
        if self.error is not None:
            payload['error'] = self.error
        else:
            payload['result'] = self.result
            payload['evidence'] = [
                OrderedDict([
                    ('title', title),
                    ('headers', headers),
                    ('rows', rows),
                ]) for title, headers, rows in self.tables]
        payload['warnings'] = list(self.warnings)
        if self.timing is not None:
            payload['timing'] = round(self.timing, 3)
        return payload

    def render_structured(self):
        return json.dumps(
            self.to_json(), indent=2, default=_default, ensure_ascii=False)

    def render_text(self):
        lines = ['{0} ({1})'.format(
            self.command, ', '.join(
                '{0}={1}'.format(key, _text(value))
                for key, value in self.inputs.items()))]
        if self.error is not None:
            lines.append('error: {0}'.format(self.error['message']))
        for key, value in self.result.items():
            lines.append('{0}: {1}'.format(key, _text(value)))
        for title, headers, rows in self.tables:
            lines.append('')
            lines.append(title)
            lines.append(tabulate(
                [[_text(cell) for cell in row] for row in rows],
                headers=headers))
        for message in self.warnings:
            lines.append('warning: {0}'.format(message))
        if self.timing is not None:
            lines.append('time: {0:.3f}s'.format(self.timing))
        return '\n'.join(lines)

    def render(self, output='text'):
        if output == 'structured':
            return self.render_structured()
        return self.render_text()


def _text(value):
    if value is None:
        return '-'
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return '({0})'.format(', '.join(_text(v) for v in value))
    if isinstance(value, dict):
        return ', '.join(
            '{0}: {1}'.format(k, _text(v)) for k, v in value.items())
    return str(value)
