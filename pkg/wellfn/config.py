# Copyright 2024 The wellfn Authors.
"""Loading an :class:`~wellfn.kernel.AquiferCase` from a plain ``key = value`` file.

Example::

    # stream-aquifer test case
    T = 10000
    S = 0.2
    tau = 1
    radii = 1050, 2100, 3150, 4200
    t_start = 2
    t_end = 18
"""
import configparser
import dataclasses
import logging

from .exceptions import UsageError
from .kernel import AquiferCase

log = logging.getLogger(__name__)

_SECTION = 'case'

# Accepted spellings, mapped to AquiferCase fields.
_KEYS = {
    't': 'transmissivity',
    'transmissivity': 'transmissivity',
    's': 'storativity',
    'storativity': 'storativity',
    'tau': 'tau',
    'radii': 'radii',
    'r': 'radii',
    't_start': 't_start',
    't_end': 't_end',
    't_step': 't_step',
    'q': 'pumping_rate',
    'pumping_rate': 'pumping_rate',
}


def parse_radii(text):
    return tuple(float(r) for r in str(text).replace(';', ',').split(',') if r.strip())


def parse_case_text(text):
    """Parse ``key = value`` lines into AquiferCase keyword arguments."""
    parser = configparser.ConfigParser(inline_comment_prefixes=('#',))
    parser.optionxform = str.lower
    try:
        parser.read_string('[{}]\n{}'.format(_SECTION, text))
    except configparser.Error as e:
        raise UsageError('Malformed case file: {}'.format(e))

    params = {}
    for key, value in parser.items(_SECTION):
        if key not in _KEYS:
            raise UsageError('Unknown case key: {}'.format(key), data={'key': key})
        name = _KEYS[key]
        try:
            params[name] = parse_radii(value) if name == 'radii' else float(value)
        except ValueError:
            raise UsageError('Case key {} is not numeric: {!r}'.format(key, value), data={'key': key})
    return params


def load_case(path=None, **overrides):
    """Build a case from the published defaults, then ``path`` (if given), then non-None ``overrides``."""
    params = dataclasses.asdict(AquiferCase.published())
    if path is not None:
        try:
            with open(path, 'r') as case_file:
                text = case_file.read()
        except OSError as e:
            raise UsageError('Cannot read case file {}: {}'.format(path, e.strerror), data={'path': path})
        params.update(parse_case_text(text))
        log.debug("Loaded case file %s", path)
    params.update({k: v for k, v in overrides.items() if v is not None})
    return AquiferCase(**params)
