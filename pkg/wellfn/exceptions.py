# Copyright 2024 The wellfn Authors.
import math
import traceback


class WellFunctionError(Exception):
    CODE = 1
    MESSAGE = 'Well Function Error'
    EXIT_STATUS = 1

    def __init__(self, message=None, code=None, data=None):
        super(WellFunctionError, self).__init__(message or getattr(self.__class__, 'MESSAGE'))
        self.message = message or getattr(self.__class__, 'MESSAGE')
        self.code = code or getattr(self.__class__, 'CODE')
        self.data = data

    def to_dict(self):
        exception_dict = {
            'code': self.code,
            'message': self.message,
        }
        if self.data is not None:
            exception_dict['data'] = self.data
        return exception_dict


class UsageError(WellFunctionError):
    CODE = 2
    MESSAGE = 'Usage Error'
    EXIT_STATUS = 2


class DomainError(WellFunctionError):
    CODE = 10
    MESSAGE = 'Argument Outside Domain'

    @classmethod
    def of(cls, name, value, requirement):
        """Build the error for a named parameter that violates ``requirement``."""
        return cls(
            message='{}: {}={!r} (requires {})'.format(cls.MESSAGE, name, value, requirement),
            data={'parameter': name, 'value': _jsonable(value), 'requirement': requirement},
        )


class EvaluationError(WellFunctionError):
    CODE = 11
    MESSAGE = 'Evaluation Failed'

    @classmethod
    def of(cls, exc_info, **where):
        """Wrap the exception in ``exc_info`` and attach the grid location it happened at."""
        exc_type, exc_value, exc_tb = exc_info
        data = {k: _jsonable(v) for k, v in where.items()}
        if isinstance(exc_value, WellFunctionError):
            data['cause'] = exc_value.to_dict()
        else:
            data['traceback'] = traceback.format_tb(exc_tb)
        location = ', '.join('{}={!r}'.format(k, v) for k, v in sorted(where.items()))
        cause = ''.join(traceback.format_exception_only(exc_type, exc_value)).strip()
        return cls(message='{} at {}: {}'.format(cls.MESSAGE, location, cause), data=data)


class FitError(WellFunctionError):
    CODE = 12
    MESSAGE = 'Fit Setup Invalid'


def require_positive(name, value):
    """Raise :class:`DomainError` unless ``value`` is a finite number > 0."""
    if not _is_finite(value) or value <= 0:
        raise DomainError.of(name, value, '{} > 0 and finite'.format(name))
    return float(value)


def require_finite(name, value):
    if not _is_finite(value):
        raise DomainError.of(name, value, '{} finite'.format(name))
    return float(value)


def _is_finite(value):
    try:
        return math.isfinite(value)
    except TypeError:
        return False


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value
