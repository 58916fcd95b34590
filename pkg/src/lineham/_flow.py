"""Small integer max-flow used by the cut routines.

The networks here have a few hundred arcs at most and flow values bounded by
a dozen or so, so plain shortest augmenting paths with an early-exit limit is
the right tool.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable


class FlowNetwork:
    """Directed network over nodes ``0..n-1`` with paired residual arcs."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(n)]

    def add_arc(self, u: int, v: int, c: int, back: int = 0) -> None:
        self.out[u].append(len(self.head))
        self.head.append(v)
        self.cap.append(c)
        self.out[v].append(len(self.head))
        self.head.append(u)
        self.cap.append(back)

    def add_edge(self, u: int, v: int, c: int) -> None:
        """Undirected edge of capacity ``c``."""
        self.add_arc(u, v, c, c)

    def max_flow(self, sources: Iterable[int], sinks: Iterable[int], limit: float = float("inf")):
        """Return ``(value, reachable)`` for a multi-source multi-sink flow.

        ``reachable`` is the residual source side when the flow is maximum, or
        ``None`` when the computation stopped early at ``limit``.
        """
        src = set(sources)
        snk = set(sinks)
        if src & snk:
            raise ValueError("source and sink sets overlap")
        cap = list(self.cap)
        head, out = self.head, self.out
        value = 0
        while value < limit:
            parent = {s: -1 for s in src}
            queue = deque(src)
            hit = -1
            while queue and hit < 0:
                u = queue.popleft()
                for a in out[u]:
                    if cap[a] > 0:
                        v = head[a]
                        if v not in parent:
                            parent[v] = a
                            if v in snk:
                                hit = v
                                break
                            queue.append(v)
            if hit < 0:
                return value, set(parent)
            # bottleneck
            push = limit - value
            v = hit
            while parent[v] >= 0:
                a = parent[v]
                push = min(push, cap[a])
                v = head[a ^ 1]
            v = hit
            while parent[v] >= 0:
                a = parent[v]
                cap[a] -= push
                cap[a ^ 1] += push
                v = head[a ^ 1]
            value += push
        return value, None
