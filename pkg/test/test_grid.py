# Copyright 2024 The wellfn Authors.
import numpy as np
import pytest

from wellfn.exceptions import DomainError
from wellfn.grid import DEFAULT_GRID, LINEAR, GridSpec


def test_default_grid():
    points = DEFAULT_GRID.points()
    assert len(points) == len(DEFAULT_GRID) == 2000
    assert points[0] == 1e-3
    assert points[-1] == 100.0
    assert np.all(np.diff(points) > 0)
    assert 1.0 not in points


def test_log_spacing_is_geometric():
    points = GridSpec(1.0, 1000.0, 4).points()
    assert points == pytest.approx([1.0, 10.0, 100.0, 1000.0], rel=1e-14)


def test_linear_spacing():
    points = GridSpec(1.0, 2.0, 5, spacing=LINEAR).points()
    assert list(points) == [1.0, 1.25, 1.5, 1.75, 2.0]


def test_open_lower_end():
    grid = GridSpec(1.0, 100.0, 500, include_min=False)
    points = grid.points()
    assert len(points) == 500
    assert points[0] > 1.0
    assert points[-1] == 100.0


@pytest.mark.parametrize('args', [
    (0.0, 1.0, 10),
    (2.0, 1.0, 10),
    (1.0, float('inf'), 10),
    (1.0, 2.0, 1),
    (1.0, 2.0, 2.5),
])
def test_invalid_grids(args):
    with pytest.raises(DomainError):
        GridSpec(*args)


def test_invalid_spacing():
    with pytest.raises(DomainError) as exc_info:
        GridSpec(1.0, 2.0, 10, spacing='chebyshev')
    assert exc_info.value.data['parameter'] == 'spacing'
