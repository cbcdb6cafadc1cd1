from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals


class Error(Exception):
    pass


class TrimccWarning(UserWarning):
    pass


class InputError(Error):
    pass


class ParseError(InputError):
    pass


class ProjectError(InputError):

    def __init__(self, message, location=None):
        if location:
            message = '{location}: {message}'.format(
                location=location, message=message)
        super(ProjectError, self).__init__(message)
        self.location = location


class PreconditionError(Error):
    pass


class UnsupportedFiberError(PreconditionError):
    pass


class ComputationLimitError(Error):

    def __init__(self, message, statistics=None):
        super(ComputationLimitError, self).__init__(message)
        self.statistics = dict(statistics or {})


class InternalError(Error):
    pass
