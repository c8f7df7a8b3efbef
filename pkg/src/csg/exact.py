"""Exact baselines: exhaustive search, DP over all coalitions, and the
improved DP with pruned split sizes, plus the two-level anytime search.

The DP fills, in ascending coalition size, a best-value table t2 and a
best-split table t1 (0 meaning "keep the coalition whole"): for each
coalition it evaluates every unordered bipartition once and keeps the best
of the coalition's own value and the best split sum. The improved variant
skips every bipartition whose larger part exceeds n - s (s the coalition's
size) except on the grand coalition, which provably still yields the
optimum while evaluating far fewer splits. The closed-form split counts in
:func:`splitting_counts` pin both solvers' exact work instrumentation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitops import mask_bits, pattern_popcounts, subset_sums
from .core import CoalitionStructure, Instance, structure_from_masks

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "DP_LIMIT",
    "DpTables",
    "AnytimeResult",
    "brute_force_optimal",
    "dp_tables",
    "dp_optimal",
    "idp_optimal",
    "splitting_counts",
    "sandholm_anytime",
]

BRUTE_FORCE_LIMIT = 13
DP_LIMIT = 26


@dataclass
class DpTables:
    """t1[c]: best split of coalition c as the anchor-free part mask (0 = keep
    whole); t2[c]: best value achievable by partitioning c."""

    t1: np.ndarray
    t2: np.ndarray


@dataclass
class AnytimeResult:
    best: CoalitionStructure
    best_value: float
    bound: float
    nodes_searched: int
    phase: str


def brute_force_optimal(inst: Instance) -> tuple[CoalitionStructure, float]:
    """Enumerate every coalition structure; ties keep the lexicographically
    smallest label sequence."""
    n = inst.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is capped at n={BRUTE_FORCE_LIMIT} (got {n})")
    cf = inst.cf.tolist()
    best_v = -math.inf
    best_labels: tuple[int, ...] = ()
    labels = [0] * n
    blocks: list[int] = []

    def rec(i: int, value: float) -> None:
        nonlocal best_v, best_labels
        if i == n:
            if value > best_v:
                best_v = value
                best_labels = tuple(labels)
            return
        bit = 1 << (n - 1 - i)
        for j in range(len(blocks)):
            old = blocks[j]
            blocks[j] = old | bit
            labels[i] = j + 1
            rec(i + 1, value - cf[old] + cf[old | bit])
            blocks[j] = old
        labels[i] = len(blocks) + 1
        blocks.append(bit)
        rec(i + 1, value + cf[bit])
        blocks.pop()

    rec(0, 0.0)
    return CoalitionStructure(best_labels), best_v


def dp_tables(inst: Instance, idp: bool = False) -> tuple[DpTables, int]:
    """Fill the DP tables; returns them with the exact split-evaluation count.

    Bipartitions of each coalition are enumerated ascending by the index of
    the part not containing the coalition's lowest-order agent bit, and ties
    keep the first maximum, so reconstructions are deterministic.
    """
    n = inst.n
    if n > DP_LIMIT:
        raise ValueError(f"dp tables are capped at n={DP_LIMIT} (got {n})")
    cf = inst.cf
    t2 = cf.copy()
    t1 = np.zeros(1 << n, dtype=np.int64)
    sizes = pattern_popcounts(n)
    splits = 0
    for s in range(2, n + 1):
        prune = idp and s != n
        for c in np.flatnonzero(sizes == s):
            c = int(c)
            anchor = c & -c
            b_parts = subset_sums(mask_bits(c ^ anchor))[1:]
            if prune:
                b_sizes = pattern_popcounts(s - 1)[1:]
                keep = np.maximum(b_sizes, s - b_sizes) <= n - s
                b_parts = b_parts[keep]
                if b_parts.size == 0:
                    continue
            a_parts = c - b_parts
            cand = t2[a_parts] + t2[b_parts]
            splits += int(b_parts.size)
            j = int(np.argmax(cand))
            if cand[j] > t2[c]:
                t2[c] = cand[j]
                t1[c] = b_parts[j]
    return DpTables(t1=t1, t2=t2), splits


def _reconstruct(t1: np.ndarray, full: int) -> list[int]:
    masks = []
    stack = [full]
    while stack:
        c = stack.pop()
        b = int(t1[c])
        if b == 0:
            masks.append(c)
        else:
            stack.append(c ^ b)
            stack.append(b)
    return masks


def _dp_solve(inst: Instance, idp: bool) -> tuple[CoalitionStructure, float, int]:
    tables, splits = dp_tables(inst, idp=idp)
    full = (1 << inst.n) - 1
    cs = structure_from_masks(_reconstruct(tables.t1, full), inst.n)
    return cs, float(tables.t2[full]), splits


def dp_optimal(inst: Instance) -> tuple[CoalitionStructure, float, int]:
    return _dp_solve(inst, idp=False)


def idp_optimal(inst: Instance) -> tuple[CoalitionStructure, float, int]:
    return _dp_solve(inst, idp=True)


def split_pair_count(s1: int, s2: int) -> int:
    """Number of ways to split s1+s2 items into parts of sizes (s1, s2)."""
    c = math.comb(s1 + s2, s2)
    return c // 2 if s1 == s2 else c


def splitting_counts(n: int) -> tuple[int, int]:
    """Closed-form totals of evaluated splits for the plain and improved DP."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s_dp = 0
    s_idp = 0
    for s in range(1, n + 1):
        outer = math.comb(n, s)
        inner_dp = 0
        inner_idp = 0
        for k in range((s + 1) // 2, s):
            cnt = split_pair_count(s - k, k)
            inner_dp += cnt
            if k <= n - s or s == n:
                inner_idp += cnt
        s_dp += outer * inner_dp
        s_idp += outer * inner_idp
    return s_dp, s_idp


def sandholm_anytime(inst: Instance, budget: int | None = None) -> AnytimeResult:
    """Two-phase anytime search over the coalition structure graph.

    Phase 1 visits the grand coalition and every two-block structure
    (2**(n-1) nodes in total), after which the best-seen value is within a
    factor n of the optimum. Phase 2 sweeps the remaining levels
    breadth-first from the top of the graph (all-singletons, n blocks) down
    to the three-block level, within the node budget; when it finishes, the
    whole graph has been seen and the result is exactly optimal.
    """
    n = inst.n
    cap = math.inf if budget is None else int(budget)
    if cap < 1:
        raise ValueError("node budget must be >= 1")
    cf = inst.cf
    full = (1 << n) - 1

    nodes = 1  # the grand coalition
    best_v = float(cf[full])
    best_labels = (1,) * n

    phase1_nodes = 1 << (n - 1)
    if n >= 2 and nodes < cap:
        # two-block structures {A, N\A} with agent 1 pinned into A
        top_bit = 1 << (n - 1)
        take = int(min(phase1_nodes - 1, cap - nodes))
        rest = np.arange(take, dtype=np.int64)
        a_masks = top_bit | rest
        vals = cf[a_masks] + cf[full ^ a_masks]
        if take:
            j = int(np.argmax(vals))
            if float(vals[j]) > best_v:
                best_v = float(vals[j])
                a = int(a_masks[j])
                best_labels = structure_from_masks([a, full ^ a], n).labels
        nodes += take

    done_phase1 = nodes >= phase1_nodes
    bound = float(n) if done_phase1 else math.inf

    complete = done_phase1
    if done_phase1 and n >= 3:
        cf_list = cf.tolist()
        truncated = False
        for k in range(n, 2, -1):
            for labels, value in _iter_level(n, k, cf_list):
                if nodes >= cap:
                    truncated = True
                    break
                nodes += 1
                if value > best_v:
                    best_v = value
                    best_labels = tuple(labels)
            if truncated:
                break
        complete = not truncated

    if complete:
        bound = 1.0
        phase = "complete"
    elif done_phase1:
        phase = "breadth-first"
    else:
        phase = "bottom-levels"

    return AnytimeResult(
        best=CoalitionStructure(best_labels),
        best_value=best_v,
        bound=bound,
        nodes_searched=int(nodes),
        phase=phase,
    )


def _iter_level(n: int, k: int, cf: list[float]):
    """All structures with exactly k blocks, lexicographic label order.

    Yields (labels, value) with a shared labels list; copy before keeping.
    """
    labels = [0] * n
    blocks: list[int] = []

    def rec(i: int, value: float):
        if i == n:
            yield labels, value
            return
        bit = 1 << (n - 1 - i)
        used = len(blocks)
        if used + (n - i - 1) >= k:
            for j in range(used):
                old = blocks[j]
                blocks[j] = old | bit
                labels[i] = j + 1
                yield from rec(i + 1, value - cf[old] + cf[old | bit])
                blocks[j] = old
        if used < k:
            labels[i] = used + 1
            blocks.append(bit)
            yield from rec(i + 1, value + cf[bit])
            blocks.pop()

    yield from rec(0, 0.0)
