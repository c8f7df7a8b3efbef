"""SPLIT / MERGE / SHIFT moves and the two local-search neighborhoods.

SPLIT replaces one block by a bipartition of it, MERGE fuses two blocks,
SHIFT re-homes a single agent into another block or (here) into a fresh
singleton block, deleting the source block if that empties it. The fresh
target is required for the shift neighborhood to reach structures with more
blocks than the current one; without it no sequence of shifts could, for
example, take the grand coalition to the all-singletons partition.

Two neighborhood relations are exposed: "sm" (all split plus merge results)
and "s" (all shift results). Neighborhoods are sets of structures, so
results are deduplicated in canonical form; distinct shift moves can
coincide (two singletons merging into the same pair, or either member of a
two-agent block walking out to a fresh block).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CoalitionStructure, canonicalize

__all__ = ["SPLIT", "MERGE", "SHIFT", "FRESH", "Move", "enumerate_moves", "apply_move", "neighbors"]

SPLIT = "split"
MERGE = "merge"
SHIFT = "shift"

# shift target meaning "open a new singleton block"
FRESH = 0


@dataclass(frozen=True)
class Move:
    """One application of a transformation rule to a specific structure.

    split: ``block`` is the source label, ``parts`` its bipartition.
    merge: ``pair`` holds the two block labels to fuse.
    shift: ``agent`` moves to block label ``target`` (FRESH for a new one).
    """

    kind: str
    block: int | None = None
    parts: tuple[frozenset[int], frozenset[int]] | None = None
    pair: tuple[int, int] | None = None
    agent: int | None = None
    target: int | None = None


def enumerate_moves(cs: CoalitionStructure, kind: str) -> list[Move]:
    """All distinct non-identity moves of one kind, in a fixed order.

    Splits are ordered block by block, bipartitions by ascending subset
    pattern over the block's non-smallest members; merges by label pair;
    shifts agent by agent, existing targets before the fresh one.
    """
    if kind == SPLIT:
        return _split_moves(cs)
    if kind == MERGE:
        return _merge_moves(cs)
    if kind == SHIFT:
        return _shift_moves(cs)
    raise ValueError(f"unknown move kind {kind!r}")


def _split_moves(cs: CoalitionStructure) -> list[Move]:
    moves = []
    for label, block in enumerate(cs.blocks(), start=1):
        members = sorted(block)
        s = len(members)
        if s < 2:
            continue
        anchor, rest = members[0], members[1:]
        # 2**(s-1) - 1 bipartitions; the anchor stays in the first part
        for x in range(1, 1 << (s - 1)):
            part_b = frozenset(a for j, a in enumerate(rest) if x >> j & 1)
            part_a = frozenset(block - part_b)
            moves.append(Move(SPLIT, block=label, parts=(part_a, part_b)))
    return moves


def _merge_moves(cs: CoalitionStructure) -> list[Move]:
    k = cs.block_count
    return [
        Move(MERGE, pair=(i, j)) for i in range(1, k + 1) for j in range(i + 1, k + 1)
    ]


def _shift_moves(cs: CoalitionStructure) -> list[Move]:
    k = cs.block_count
    sizes = [0] * (k + 1)
    for d in cs.labels:
        sizes[d] += 1
    moves = []
    for agent, src in enumerate(cs.labels, start=1):
        for target in range(1, k + 1):
            if target != src:
                moves.append(Move(SHIFT, agent=agent, target=target))
        if sizes[src] >= 2:
            moves.append(Move(SHIFT, agent=agent, target=FRESH))
    return moves


def apply_move(cs: CoalitionStructure, move: Move) -> CoalitionStructure:
    """Apply a move enumerated for (or validated against) this structure."""
    k = cs.block_count
    labels = list(cs.labels)

    if move.kind == SPLIT:
        if move.parts is None or move.block is None or not 1 <= move.block <= k:
            raise ValueError(f"stale or malformed split move {move}")
        part_a, part_b = move.parts
        block = {a for a, d in zip(range(1, cs.n + 1), cs.labels) if d == move.block}
        if not part_a or not part_b or part_a | part_b != block or part_a & part_b:
            raise ValueError(f"split parts do not bipartition block {move.block}")
        for a in part_b:
            labels[a - 1] = k + 1
    elif move.kind == MERGE:
        if move.pair is None:
            raise ValueError(f"malformed merge move {move}")
        i, j = move.pair
        if not (1 <= i <= k and 1 <= j <= k and i != j):
            raise ValueError(f"stale merge move {move}")
        for idx, d in enumerate(labels):
            if d == j:
                labels[idx] = i
    elif move.kind == SHIFT:
        if move.agent is None or move.target is None or not 1 <= move.agent <= cs.n:
            raise ValueError(f"malformed shift move {move}")
        src = cs.labels[move.agent - 1]
        if move.target == FRESH:
            if cs.labels.count(src) < 2:
                raise ValueError("shifting a lone agent to a fresh block is the identity")
            labels[move.agent - 1] = k + 1
        else:
            if not 1 <= move.target <= k or move.target == src:
                raise ValueError(f"stale shift move {move}")
            labels[move.agent - 1] = move.target
    else:
        raise ValueError(f"unknown move kind {move.kind!r}")

    return canonicalize(labels)


def neighbors(cs: CoalitionStructure, op: str) -> list[CoalitionStructure]:
    """The neighborhood of a structure: "sm" or "s", duplicate-free."""
    if op == "sm":
        moves = _split_moves(cs) + _merge_moves(cs)
    elif op == "s":
        moves = _shift_moves(cs)
    else:
        raise ValueError(f"unknown neighborhood operator {op!r}")
    seen = set()
    out = []
    for move in moves:
        result = apply_move(cs, move)
        if result.labels not in seen:
            seen.add(result.labels)
            out.append(result)
    return out
