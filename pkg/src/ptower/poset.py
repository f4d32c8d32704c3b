"""Finite posets given by their Hasse diagram."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple


class PosetError(ValueError):
    pass


class CycleError(PosetError):
    pass


class RedundantEdgeError(PosetError):
    pass


class UnknownNodeError(PosetError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


@dataclass(frozen=True)
class LinearExtension:
    order: Tuple[str, ...]
    position: Dict[str, int] = field(compare=False)


class Poset:
    """Hasse diagram with precomputed reachability.

    ``reach[i]`` is an int bitset of the node indices ``j`` with ``i <= j``.
    Node declaration order is the tie-break order everywhere downstream.
    """

    def __init__(self, nodes: Sequence[str], edges: Iterable[Tuple[str, str]]):
        self.nodes: Tuple[str, ...] = tuple(nodes)
        self.index: Dict[str, int] = {}
        for i, x in enumerate(self.nodes):
            if x in self.index:
                raise PosetError(f"duplicate node {x!r}")
            self.index[x] = i
        self.hasse_edges: Tuple[Tuple[str, str], ...] = tuple((a, b) for a, b in edges)
        n = len(self.nodes)
        self._pred: List[List[int]] = [[] for _ in range(n)]
        self._succ: List[List[int]] = [[] for _ in range(n)]
        seen = set()
        for a, b in self.hasse_edges:
            ia, ib = self._idx(a), self._idx(b)
            if ia == ib:
                raise CycleError(f"self loop at {a!r}")
            if (ia, ib) in seen:
                raise RedundantEdgeError(f"duplicate edge {a!r} -> {b!r}")
            seen.add((ia, ib))
            self._succ[ia].append(ib)
            self._pred[ib].append(ia)
        for lst in self._pred:
            lst.sort()
        for lst in self._succ:
            lst.sort()
        self._topo = self._kahn()
        self.reach = self._closure()
        self._check_reduced()
        self.linext = LinearExtension(
            tuple(self.nodes[i] for i in self._topo),
            {self.nodes[i]: p for p, i in enumerate(self._topo)},
        )

    def _idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownNodeError(f"unknown node {x!r}") from None

    def _kahn(self) -> List[int]:
        # ready nodes are released in declaration order
        import heapq

        indeg = [len(p) for p in self._pred]
        ready = [i for i, d in enumerate(indeg) if d == 0]
        heapq.heapify(ready)
        out = []
        while ready:
            i = heapq.heappop(ready)
            out.append(i)
            for j in self._succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(ready, j)
        if len(out) != len(self.nodes):
            stuck = [self.nodes[i] for i, d in enumerate(indeg) if d > 0]
            raise CycleError(f"directed cycle through {stuck}")
        return out

    def _closure(self) -> List[int]:
        reach = [0] * len(self.nodes)
        for i in reversed(self._topo):
            r = 1 << i
            for j in self._succ[i]:
                r |= reach[j]
            reach[i] = r
        return reach

    def _check_reduced(self) -> None:
        for ia in range(len(self.nodes)):
            for ib in self._succ[ia]:
                for ic in self._succ[ia]:
                    if ic != ib and (self.reach[ic] >> ib) & 1:
                        raise RedundantEdgeError(
                            f"edge {self.nodes[ia]!r} -> {self.nodes[ib]!r} is implied "
                            f"via {self.nodes[ic]!r}"
                        )

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        return f"Poset(t0={len(self.nodes)}, t1={len(self.hasse_edges)})"

    @property
    def t0(self) -> int:
        return len(self.nodes)

    @property
    def t1(self) -> int:
        return len(self.hasse_edges)

    def leq(self, x: str, y: str) -> bool:
        return bool((self.reach[self._idx(x)] >> self._idx(y)) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def leq_index(self, i: int, j: int) -> bool:
        return bool((self.reach[i] >> j) & 1)

    def predecessors(self, x: str) -> List[str]:
        return [self.nodes[i] for i in self._pred[self._idx(x)]]

    def successors(self, x: str) -> List[str]:
        return [self.nodes[i] for i in self._succ[self._idx(x)]]

    def is_hasse_edge(self, x: str, y: str) -> bool:
        return self._idx(y) in self._succ[self._idx(x)]

    def down_set(self, x: str) -> List[str]:
        """Grades ``y <= x`` in declaration order."""
        j = self._idx(x)
        return [self.nodes[i] for i in range(len(self.nodes)) if (self.reach[i] >> j) & 1]

    def up_set(self, x: str) -> List[str]:
        r = self.reach[self._idx(x)]
        return [self.nodes[i] for i in range(len(self.nodes)) if (r >> i) & 1]

    def linear_extension(self) -> LinearExtension:
        return self.linext


def build_poset(nodes: Sequence[str], edges: Iterable[Tuple[str, str]]) -> Poset:
    return Poset(nodes, edges)


def linear_extension(p: Poset) -> LinearExtension:
    return p.linext


def leq(p: Poset, x: str, y: str) -> bool:
    return p.leq(x, y)


def predecessors(p: Poset, x: str) -> List[str]:
    return p.predecessors(x)
