"""Operation accounting shared by the stochastic solvers.

An operation is one candidate coalition structure whose value gets
computed: a construction candidate, a neighborhood member, or a
path-relinking probe. Run lengths are measured in these units so they are
comparable across machines.
"""

from __future__ import annotations

__all__ = ["OperationCounter"]


class OperationCounter:
    """Per-run operation counts, split by solver phase."""

    __slots__ = ("construction", "local_search", "relink")

    def __init__(self, construction: int = 0, local_search: int = 0, relink: int = 0):
        self.construction = construction
        self.local_search = local_search
        self.relink = relink

    @property
    def total(self) -> int:
        return self.construction + self.local_search + self.relink

    def copy(self) -> "OperationCounter":
        return OperationCounter(self.construction, self.local_search, self.relink)

    def __repr__(self) -> str:
        return (
            f"OperationCounter(construction={self.construction}, "
            f"local_search={self.local_search}, relink={self.relink})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperationCounter):
            return NotImplemented
        return (
            self.construction == other.construction
            and self.local_search == other.local_search
            and self.relink == other.relink
        )
