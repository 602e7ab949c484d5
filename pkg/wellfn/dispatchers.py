# Copyright 2024 The wellfn Authors.
import functools
import re

_RE_FIRST_CAP = re.compile('(.)([A-Z][a-z]+)')
_RE_ALL_CAP = re.compile('([a-z0-9])([A-Z])')


class MethodDispatcher(object):
    """Subcommand dispatcher that calls methods on itself.

    Command names are computed by converting camel case to snake case and hyphens to underscores, so ``table1``,
    ``kernel-report`` and ``kernelReport`` resolve to ``m_table1`` and ``m_kernel_report``.
    """

    def __getitem__(self, item):
        method_name = 'm_{}'.format(_command_to_string(item))
        if hasattr(self, method_name):
            method = getattr(self, method_name)

            @functools.wraps(method)
            def handler(params):
                return method(**(params or {}))

            return handler
        raise KeyError(item)

    def __contains__(self, item):
        return hasattr(self, 'm_{}'.format(_command_to_string(item)))

    def commands(self):
        """Names of every subcommand this dispatcher serves, sorted."""
        return sorted(name[2:] for name in dir(self) if name.startswith('m_') and callable(getattr(self, name)))


def _command_to_string(command):
    return _camel_to_underscore(command.replace('-', '_'))


def _camel_to_underscore(string):
    s1 = _RE_FIRST_CAP.sub(r'\1_\2', string)
    return _RE_ALL_CAP.sub(r'\1_\2', s1).lower()
