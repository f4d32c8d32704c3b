"""Linear-time GF(2) solver for coefficient matrices with at most two nonzeros per column.

Two-entry columns are edges of a multigraph on the rows, one-entry columns
are "stubs" attached to a single row.  A spanning forest plus one stub per
component carries the whole image, and each tree is solved by back
substitution along a leaf order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .gf2 import Column, Gf2Matrix, GradedMatrix, to_bits
from .unionfind import UnionFind


class NotATree(ValueError):
    pass


class InconsistentSystem(ValueError):
    pass


@dataclass
class OpCounter:
    count: int = 0


def leaf_order(
    vertices: Sequence[Hashable],
    edges: Sequence[Tuple[Hashable, Hashable]],
    distinguished: Optional[Hashable] = None,
) -> List[Hashable]:
    """Order in which every vertex is a leaf of the tree left after removing its predecessors.

    The distinguished vertex gets its degree bumped by one, so it comes last.
    """
    if len(edges) != len(vertices) - 1:
        raise NotATree(f"{len(vertices)} vertices but {len(edges)} edges")
    adj: Dict[Hashable, List[Hashable]] = {v: [] for v in vertices}
    for u, v in edges:
        if u not in adj or v not in adj:
            raise NotATree(f"edge ({u}, {v}) has an endpoint outside the vertex set")
        adj[u].append(v)
        adj[v].append(u)
    if distinguished is not None and distinguished not in adj:
        raise NotATree(f"distinguished vertex {distinguished} not in tree")
    deg = {v: len(a) for v, a in adj.items()}
    if distinguished is not None:
        deg[distinguished] += 1
    queue = deque(v for v in vertices if deg[v] <= 1)
    queued = set(queue)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for u in adj[v]:
            deg[u] -= 1
            if deg[u] == 1 and u not in queued:
                queued.add(u)
                queue.append(u)
    if len(order) != len(vertices):
        raise NotATree("graph has a cycle or is disconnected")
    return order


def solve_tree(
    vertices: Sequence[int],
    edges: Sequence[Tuple[int, int]],
    b: Iterable[int],
    stub: Optional[int] = None,
    ops: Optional[OpCounter] = None,
) -> Tuple[List[int], bool]:
    """Solve ``T' x = b`` for a tree incidence matrix plus an optional stub at vertex ``stub``.

    Returns (indices of edges set to 1, whether the stub variable is 1).
    """
    order = leaf_order(vertices, edges, stub)
    rhs = {v: 0 for v in vertices}
    for v in b:
        if v not in rhs:
            raise InconsistentSystem(f"right-hand side touches vertex {v} outside the tree")
        rhs[v] ^= 1
    incident: Dict[int, List[int]] = {v: [] for v in vertices}
    for k, (u, v) in enumerate(edges):
        incident[u].append(k)
        incident[v].append(k)
    done_edge = [False] * len(edges)
    chosen: List[int] = []
    stub_on = False
    count = 0
    for v in order:
        open_edges = [k for k in incident[v] if not done_edge[k]]
        count += 1 + len(incident[v])
        if not open_edges:
            if v == stub:
                stub_on = bool(rhs[v])
            elif rhs[v]:
                raise InconsistentSystem(f"equation at vertex {v} cannot be satisfied")
            continue
        (k,) = open_edges
        done_edge[k] = True
        if rhs[v]:
            chosen.append(k)
            u, w = edges[k]
            other = w if u == v else u
            rhs[other] ^= 1
            rhs[v] = 0
    if ops is not None:
        ops.count += count
    return chosen, stub_on


def solve_multigraph(a: Gf2Matrix, b: Iterable[int], ops: Optional[OpCounter] = None) -> Column:
    """Some ``x`` with ``a x = b``; zero on every column dropped by the forest and stub pruning."""
    count = 0
    uf = UnionFind()
    forest: List[int] = []
    stubs: List[int] = []
    for j, c in enumerate(a.cols):
        count += 1
        if len(c) == 2:
            if uf.union(c[0], c[1]):
                forest.append(j)
        elif len(c) == 1:
            stubs.append(j)
        elif len(c) > 2:
            raise ValueError(f"column {j} has {len(c)} nonzeros")
    rhs = sorted(set(b))
    comp_vertices: Dict[int, List[int]] = {}
    for v in range(a.nrows):
        comp_vertices.setdefault(uf.find(v), []).append(v)
        count += 1
    comp_edges: Dict[int, List[int]] = {}
    for j in forest:
        comp_edges.setdefault(uf.find(a.cols[j][0]), []).append(j)
    comp_stub: Dict[int, int] = {}
    for j in stubs:
        comp_stub.setdefault(uf.find(a.cols[j][0]), j)
    comp_rhs: Dict[int, List[int]] = {}
    for v in rhs:
        if v >= a.nrows:
            raise InconsistentSystem(f"right-hand side row {v} out of range")
        comp_rhs.setdefault(uf.find(v), []).append(v)
    local_ops = OpCounter()
    x: List[int] = []
    for root, verts in comp_vertices.items():
        rb = comp_rhs.get(root)
        if not rb:
            continue
        cols = comp_edges.get(root, [])
        s = comp_stub.get(root)
        chosen, stub_on = solve_tree(
            verts, [tuple(a.cols[j]) for j in cols], rb,
            a.cols[s][0] if s is not None else None, local_ops,
        )
        x.extend(cols[k] for k in chosen)
        if stub_on:
            x.append(s)
    if ops is not None:
        ops.count += count + local_ops.count
    return tuple(sorted(x))


def check_solution(a: Gf2Matrix, x: Iterable[int], b: Iterable[int]) -> bool:
    acc = 0
    for j in x:
        acc ^= to_bits(a.cols[j])
    return acc == to_bits(b)


def constrained_lift(a: GradedMatrix, b: GradedMatrix, ops: Optional[OpCounter] = None) -> GradedMatrix:
    """Graded ``X`` with ``a X = b``; variables below a forbidden grade pair are pinned to zero."""
    if a.row_labels != b.row_labels:
        raise ValueError("lift needs matching codomains")
    P = a.poset
    a_grade = [P.index[g] for _, g in a.col_labels]
    cols: List[Column] = []
    for j, (_, g) in enumerate(b.col_labels):
        if not b.entries.cols[j]:
            cols.append(())
            continue
        gj = P.index[g]
        allowed = [k for k, gk in enumerate(a_grade) if P.leq_index(gk, gj)]
        sub = Gf2Matrix(a.entries.nrows, [a.entries.cols[k] for k in allowed])
        try:
            sol = solve_multigraph(sub, b.entries.cols[j], ops)
        except InconsistentSystem as exc:
            raise InconsistentSystem(f"column {b.col_labels[j]}: {exc}") from None
        cols.append(tuple(sorted(allowed[k] for k in sol)))
    return GradedMatrix(P, a.col_labels, b.col_labels, Gf2Matrix(len(a.col_labels), cols))
