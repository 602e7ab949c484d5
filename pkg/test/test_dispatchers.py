# Copyright 2024 The wellfn Authors.
import pytest

from wellfn.dispatchers import MethodDispatcher


class Commands(MethodDispatcher):

    def m_table1(self, points=10):
        return points

    def m_kernel_report(self, **params):
        return params


def test_dispatch_by_name():
    commands = Commands()
    assert commands['table1']({'points': 3}) == 3
    assert commands['table1'](None) == 10
    assert commands['kernel-report']({'r': 1}) == {'r': 1}
    assert commands['kernelReport']({}) == {}


def test_unknown_command():
    with pytest.raises(KeyError):
        Commands()['fit']  # pylint: disable=expression-not-assigned
    assert 'fit' not in Commands()
    assert 'table1' in Commands()


def test_commands_listing():
    assert Commands().commands() == ['kernel_report', 'table1']
