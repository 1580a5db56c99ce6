from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import GroupKey


@dataclass(frozen=True)
class GroupActorScores:
    """Affinity of one training group for every actor outside it.

    ``actors`` holds global actor indices in ascending order and ``values``
    the matching scores; together they form one row of the group x actor
    score matrix with the group's own members left out.
    """

    group_index: int
    group: GroupKey
    actors: np.ndarray
    values: np.ndarray

    def as_dict(self) -> dict[int, float]:
        return {int(a): float(v) for a, v in zip(self.actors, self.values)}

    def positive(self) -> tuple[np.ndarray, np.ndarray]:
        keep = self.values > 0
        return self.actors[keep], self.values[keep]
