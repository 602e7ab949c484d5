# Copyright 2024 The wellfn Authors.
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

LOG = 'log'
LINEAR = 'linear'
SPACINGS = (LOG, LINEAR)


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid over ``[u_min, u_max]``.

    With ``include_min=False`` the grid covers ``(u_min, u_max]`` with ``n_points`` points, as the
    coefficient refit uses over ``(1, 100]``.
    """
    u_min: float
    u_max: float
    n_points: int
    spacing: str = LOG
    include_min: bool = True

    def __post_init__(self):
        if self.spacing not in SPACINGS:
            raise DomainError.of('spacing', self.spacing, 'one of {}'.format(', '.join(SPACINGS)))
        if not (0 < self.u_min < self.u_max) or not np.isfinite(self.u_max):
            raise DomainError.of('u_min', self.u_min, '0 < u_min < u_max = {!r}'.format(self.u_max))
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise DomainError.of('n_points', self.n_points, 'integer n_points >= 2')

    def points(self):
        """The grid as an ascending float array; the endpoints are exact."""
        n = self.n_points if self.include_min else self.n_points + 1
        if self.spacing == LOG:
            pts = np.logspace(np.log10(self.u_min), np.log10(self.u_max), n)
        else:
            pts = np.linspace(self.u_min, self.u_max, n)
        pts[0], pts[-1] = self.u_min, self.u_max
        return pts if self.include_min else pts[1:]

    def __len__(self):
        return self.n_points


DEFAULT_GRID = GridSpec(1e-3, 100.0, 2000)
