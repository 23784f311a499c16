"""Partitioning a set into a fixed number of independent parts.

Implements the augmenting-path algorithm for matroid union with t copies
of one matroid given by an independence oracle.  An item that cannot be
placed by any augmenting sequence of exchanges is reported as unassigned;
by the matroid union theorem the assigned items then form a maximum-size
set that is partitionable into t independent parts.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence

__all__ = ["partition_into_independent"]


def _eviction_candidates(part: Sequence, item, is_independent) -> list:
    # Elements z of the fundamental circuit of item in span(part), i.e.
    # those whose removal makes room: part - z + item independent.
    out = []
    for idx, z in enumerate(part):
        trimmed = tuple(part[:idx] + part[idx + 1:]) + (item,)
        if is_independent(trimmed):
            out.append(z)
    return out


def _augment(x, parts: list, is_independent: Callable[[tuple], bool]) -> bool:
    """Try to place x, cascading exchanges along a shortest path."""
    location = {z: i for i, part in enumerate(parts) for z in part}
    parent: dict = {x: None}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for i, part in enumerate(parts):
            if is_independent(tuple(part) + (y,)):
                # Free slot found: walk the parent chain, moving each item
                # into the slot vacated by its child.
                part.append(y)
                while parent[y] is not None:
                    w, j = parent[y]
                    parts[j].remove(y)
                    parts[j].append(w)
                    y = w
                return True
            for z in _eviction_candidates(part, y, is_independent):
                if z not in parent:
                    parent[z] = (y, i)
                    queue.append(z)
    return False


def partition_into_independent(
    items: Iterable,
    parts_count: int,
    is_independent: Callable[[tuple], bool],
) -> tuple[tuple, tuple]:
    """Greedy insertion with augmenting exchanges.

    Returns (parts, unassigned).  Every returned part is independent; the
    union of the parts has maximum size among subsets of items that admit
    such a partition.
    """
    if parts_count < 1:
        raise ValueError(f"need at least one part, got {parts_count}")
    parts: list = [[] for _ in range(parts_count)]
    unassigned: list = []
    for x in items:
        if not _augment(x, parts, is_independent):
            unassigned.append(x)
    for part in parts:
        if not is_independent(tuple(part)):
            raise RuntimeError("exchange cascade produced a dependent part")
    return tuple(tuple(part) for part in parts), tuple(unassigned)
