"""Result type shared by every solver."""
from __future__ import annotations

from dataclasses import dataclass, field

from .arrangement import Arrangement


class Infeasible(Exception):
    """No arrangement satisfies the solver's structural requirement."""


@dataclass(frozen=True)
class SolveResult:
    """Value plus witnesses; ``exact`` is False for lower bounds."""

    value: int
    witnesses: tuple[Arrangement, ...]
    method: str
    stats: dict = field(default_factory=dict, compare=False)
    exact: bool = True

    @property
    def witness(self) -> Arrangement:
        return self.witnesses[0]
