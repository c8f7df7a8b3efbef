"""Coalition and coalition-structure encodings, value evaluation, counting.

Agents are numbered 1..n. A coalition is an n-bit integer index: agent i
sits on bit n-i, i.e. agent 1 is the most significant of the n bits, so for
n=4 the coalition {a2, a3} is binary 0110 = index 6. The characteristic
function is a dense table addressed by that index; index 0 (the empty set)
is not a coalition and its value is fixed at 0.

A coalition structure (a partition of the agent set) is kept in canonical
restricted-growth form: a label sequence d1..dn with d1 = 1 and each next
label at most one above the running maximum. Blocks are thereby numbered in
order of their smallest member, and every partition has exactly one
representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "CoalitionStructure",
    "Instance",
    "encode_coalition",
    "decode_coalition",
    "canonicalize",
    "structure_from_masks",
    "cs_value",
    "stirling2",
    "stirling_row",
    "count_structures",
    "normalize_values",
    "iter_structures",
]


def encode_coalition(members: Iterable[int], n: int) -> int:
    """Bit index of a coalition: agent i contributes 2**(n-i)."""
    idx = 0
    count = 0
    for a in members:
        if not 1 <= a <= n:
            raise ValueError(f"agent id {a} out of range 1..{n}")
        idx |= 1 << (n - a)
        count += 1
    if count == 0:
        raise ValueError("a coalition must be non-empty")
    return idx


def decode_coalition(index: int, n: int) -> frozenset[int]:
    """Inverse of :func:`encode_coalition`."""
    if not 0 < index < (1 << n):
        raise ValueError(f"coalition index {index} out of range for n={n}")
    return frozenset(i for i in range(1, n + 1) if index & (1 << (n - i)))


@dataclass(frozen=True)
class CoalitionStructure:
    """A partition of agents 1..n in canonical restricted-growth form."""

    labels: tuple[int, ...]

    def __post_init__(self):
        labels = self.labels
        if not labels:
            raise ValueError("empty label sequence")
        if labels[0] != 1:
            raise ValueError("restricted growth requires d1 = 1")
        top = 1
        for d in labels[1:]:
            if not 1 <= d <= top + 1:
                raise ValueError(f"label sequence {labels} is not in canonical form")
            if d > top:
                top = d

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def block_count(self) -> int:
        return max(self.labels)

    def blocks(self) -> list[frozenset[int]]:
        """Blocks as agent-id sets, ordered by smallest member."""
        out: list[set[int]] = [set() for _ in range(self.block_count)]
        for i, d in enumerate(self.labels, start=1):
            out[d - 1].add(i)
        return [frozenset(b) for b in out]

    def block_masks(self) -> list[int]:
        """Blocks as coalition indices, in label order."""
        n = self.n
        out = [0] * self.block_count
        for i, d in enumerate(self.labels, start=1):
            out[d - 1] |= 1 << (n - i)
        return out

    def block_of(self, agent: int) -> int:
        return self.labels[agent - 1]

    @classmethod
    def singletons(cls, n: int) -> "CoalitionStructure":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def grand(cls, n: int) -> "CoalitionStructure":
        return cls((1,) * n)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "CoalitionStructure":
        """Build from explicit blocks; they must partition 1..n."""
        raw = [0] * n
        seen = 0
        for j, block in enumerate(blocks, start=1):
            for a in block:
                if not 1 <= a <= n:
                    raise ValueError(f"agent id {a} out of range 1..{n}")
                bit = 1 << (n - a)
                if seen & bit:
                    raise ValueError(f"agent {a} appears in two blocks")
                seen |= bit
                raw[a - 1] = j
        if seen != (1 << n) - 1:
            raise ValueError("blocks do not cover all agents")
        return canonicalize(raw)

    @classmethod
    def parse(cls, text: str) -> "CoalitionStructure":
        """Parse the canonical string form ("1123", or dot-separated "1.2.11")."""
        text = text.strip()
        if "." in text:
            parts = text.split(".")
        else:
            parts = list(text)
        try:
            labels = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"cannot parse structure string {text!r}") from None
        return cls(labels)

    def __str__(self) -> str:
        if self.block_count <= 9:
            return "".join(str(d) for d in self.labels)
        return ".".join(str(d) for d in self.labels)

    def blocks_string(self) -> str:
        inner = ",".join(
            "{" + ",".join(str(a) for a in sorted(b)) + "}" for b in self.blocks()
        )
        return "{" + inner + "}"


def canonicalize(labels: Sequence[int]) -> CoalitionStructure:
    """Relabel an arbitrary block-id sequence by order of first appearance.

    Idempotent, and any two labelings of the same partition map to the same
    output.
    """
    if len(labels) == 0:
        raise ValueError("empty label sequence")
    relabel: dict[int, int] = {}
    out = []
    for d in labels:
        j = relabel.get(d)
        if j is None:
            j = len(relabel) + 1
            relabel[d] = j
        out.append(j)
    return CoalitionStructure(tuple(out))


def structure_from_masks(masks: Iterable[int], n: int) -> CoalitionStructure:
    """Canonical structure from disjoint non-empty coalition indices covering 1..n."""
    owner = {}
    seen = 0
    for m in masks:
        if m <= 0:
            raise ValueError("empty block mask")
        if m & seen:
            raise ValueError("overlapping block masks")
        seen |= m
        rest = m
        while rest:
            bit = rest & -rest
            owner[bit] = m
            rest ^= bit
    if seen != (1 << n) - 1:
        raise ValueError("block masks do not cover all agents")
    raw = [owner[1 << (n - i)] for i in range(1, n + 1)]
    return canonicalize(raw)


class Instance:
    """A characteristic-function game: n agents, one value per coalition.

    ``cf`` is a read-only float array of length 2**n with ``cf[c]`` the value
    of the coalition with index ``c`` and ``cf[0] = 0``; the stored table
    proper is the 2**n - 1 entries for the non-empty coalitions. Values may
    be negative on construction (see :func:`normalize_values`); generation
    and file loading enforce non-negativity.
    """

    __slots__ = ("n", "cf", "dist", "seed", "shift")

    def __init__(self, n: int, values, dist: str = "custom", seed=None, shift: float = 0.0):
        if n < 1:
            raise ValueError("need at least one agent")
        table = np.asarray(values, dtype=np.float64)
        if table.shape != ((1 << n) - 1,):
            raise ValueError(
                f"value table for n={n} must have {(1 << n) - 1} entries, got {table.shape}"
            )
        cf = np.zeros(1 << n, dtype=np.float64)
        cf[1:] = table
        cf.setflags(write=False)
        self.n = n
        self.cf = cf
        self.dist = dist
        self.seed = seed
        self.shift = shift

    @property
    def coalition_count(self) -> int:
        return (1 << self.n) - 1

    def values(self) -> np.ndarray:
        """The stored table: values()[c-1] is the value of coalition index c."""
        return self.cf[1:]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.n == other.n
            and self.dist == other.dist
            and self.seed == other.seed
            and self.shift == other.shift
            and bool(np.array_equal(self.cf, other.cf))
        )

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, dist={self.dist!r}, seed={self.seed!r})"


def cs_value(cs: CoalitionStructure, inst: Instance) -> float:
    """Value of a structure: the sum of its blocks' coalition values."""
    if cs.n != inst.n:
        raise ValueError(f"structure has n={cs.n} but instance has n={inst.n}")
    cf = inst.cf
    return float(sum(float(cf[m]) for m in cs.block_masks()))


def stirling_row(n: int) -> list[int]:
    """Row [Z(n,1), ..., Z(n,n)]: counts of structures with i blocks."""
    if n < 1:
        raise ValueError("n must be >= 1")
    row = [1]
    for m in range(2, n + 1):
        prev = row
        row = [1]
        for i in range(2, m):
            row.append(i * prev[i - 1] + prev[i - 2])
        row.append(1)
    return row


def stirling2(n: int, i: int) -> int:
    """Number of coalition structures of n agents with exactly i coalitions."""
    if not 1 <= i <= n:
        raise ValueError(f"i={i} out of range 1..{n}")
    return stirling_row(n)[i - 1]


def count_structures(n: int) -> int:
    """Total number of coalition structures (the Bell number of n)."""
    return sum(stirling_row(n))


def normalize_values(inst: Instance) -> Instance:
    """Shift all values up by -min so the smallest is 0; no-op if already >= 0.

    The applied shift is recorded on the result (cumulatively) so callers
    can recover raw values: a structure with k blocks gains k * shift, so
    the optimum is preserved only across structures of equal block count.
    """
    table = inst.values()
    lo = float(table.min())
    if lo >= 0.0:
        return inst
    shift = -lo
    return Instance(
        inst.n, table + shift, dist=inst.dist, seed=inst.seed, shift=inst.shift + shift
    )


def iter_structures(n: int) -> Iterator[CoalitionStructure]:
    """All coalition structures of n agents, in lexicographic label order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    labels = [0] * n
    labels[0] = 1

    def rec(i: int, top: int) -> Iterator[CoalitionStructure]:
        if i == n:
            yield CoalitionStructure(tuple(labels))
            return
        for j in range(1, top + 2):
            labels[i] = j
            yield from rec(i + 1, top if j <= top else j)

    yield from rec(1, 1)
