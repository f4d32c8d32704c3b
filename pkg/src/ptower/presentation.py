"""Minimal presentations of the chain modules of a poset tower.

One sweep over a linear extension maintains, per degree, the active list
(simplex -> owning generator) and a relation graph on generators plus the
graveyard vertex ``OMEGA``.  Relations that would close a cycle in the graph
are superfluous; cycles inherited from predecessor forests become relations
of relations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .gf2 import GradedMatrix, Label, _reduce_bits, to_bits
from .poset import Poset
from .tower import PosetTower, Simplex, faces, materialize, simplex_name
from .unionfind import UnionFind

OMEGA = -1


class BoundaryFaceMissing(RuntimeError):
    pass


@dataclass
class Relation:
    label: str
    grade: str
    ends: Tuple[int, int]  # generator ids; OMEGA for a killed generator


@dataclass
class DegreePresentation:
    """Per-degree output: rows are generators, p1 columns relations, p2 columns rel-rels."""

    degree: int
    poset: Poset
    gen_ids: List[int] = field(default_factory=list)
    gen_labels: List[Label] = field(default_factory=list)
    gen_simplex: List[Simplex] = field(default_factory=list)
    relations: List[Relation] = field(default_factory=list)
    relrels: List[Tuple[Label, Tuple[int, ...]]] = field(default_factory=list)
    f_cols: List[Tuple[int, ...]] = field(default_factory=list)
    row_of: Dict[int, int] = field(default_factory=dict)
    relrel_computed: bool = False
    reduced: bool = False

    @property
    def rel_labels(self) -> List[Label]:
        return [(r.label, r.grade) for r in self.relations]

    @property
    def rr_labels(self) -> List[Label]:
        return [lab for lab, _ in self.relrels]

    def p1_columns(self) -> List[Tuple[int, ...]]:
        return [tuple(sorted(self.row_of[g] for g in r.ends if g != OMEGA)) for r in self.relations]

    def p1(self) -> GradedMatrix:
        return GradedMatrix.from_columns(self.poset, self.gen_labels, self.rel_labels, self.p1_columns())

    def p2(self) -> GradedMatrix:
        return GradedMatrix.from_columns(
            self.poset, self.rel_labels, self.rr_labels, [c for _, c in self.relrels]
        )

    def f(self, lower: Optional["DegreePresentation"]) -> GradedMatrix:
        rows = lower.gen_labels if lower is not None else []
        return GradedMatrix.from_columns(self.poset, rows, self.gen_labels, self.f_cols)

    def counts(self) -> Tuple[int, int, int]:
        return (len(self.gen_labels), len(self.relations), len(self.relrels))


@dataclass
class ChainPresentation:
    poset: Poset
    degrees: List[DegreePresentation]
    active: Dict[str, List[Dict[Simplex, int]]]
    relrel: bool
    reduce: bool
    seconds: float = 0.0

    @property
    def max_degree(self) -> int:
        return len(self.degrees) - 1

    def degree(self, l: int) -> DegreePresentation:
        if 0 <= l < len(self.degrees):
            return self.degrees[l]
        return DegreePresentation(l, self.poset, relrel_computed=self.relrel, reduced=self.reduce)

    def p1(self, l: int) -> GradedMatrix:
        return self.degree(l).p1()

    def p2(self, l: int) -> GradedMatrix:
        return self.degree(l).p2()

    def f(self, l: int) -> GradedMatrix:
        d = self.degree(l)
        return d.f(self.degree(l - 1) if l > 0 else None)


class _DegreeState:
    def __init__(self, out: DegreePresentation):
        self.out = out
        self.forest: Dict[str, List[int]] = {}  # grade -> relation ids of its spanning forest
        self.rr_counter = 0


def _forest_path(forest_edges: List[int], rels: List[Relation], a: int, b: int) -> List[int]:
    """Relation ids on the forest path between ``a`` and ``b``."""
    adj: Dict[int, List[Tuple[int, int]]] = {}
    for e in forest_edges:
        u, v = rels[e].ends
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    parent: Dict[int, Tuple[int, int]] = {a: (a, -1)}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            break
        for v, e in adj.get(u, ()):
            if v not in parent:
                parent[v] = (u, e)
                stack.append(v)
    if b not in parent:
        raise RuntimeError("forest does not connect the endpoints of a non-forest edge")
    path = []
    u = b
    while u != a:
        u, e = parent[u]
        path.append(e)
    return path


def run_presentation(t: PosetTower, relrel: bool = False, reduce: bool = False) -> ChainPresentation:
    """Minimal presentations p1, boundary lifts f and (optionally) p2 for every degree."""
    start = time.perf_counter()
    reduce = reduce and relrel
    pt = materialize(t)
    P = t.poset
    pos = P.linext.position
    top = t.max_degree
    states = [_DegreeState(DegreePresentation(l, P, relrel_computed=relrel, reduced=reduce)) for l in range(top + 1)]
    gens_at = t.generators_at()
    gen_grade = {g.id: g.grade for g in t.generators}
    active: Dict[str, List[Dict[Simplex, int]]] = {}

    for x in P.linext.order:
        preds = P.predecessors(x)
        cand: List[Dict[Simplex, List[int]]] = [{} for _ in range(top + 1)]
        ufs: List[UnionFind] = []
        graph_edges: List[List[int]] = []

        # collapse: union of predecessor forests, then inherited active entries
        for l, st in enumerate(states):
            uf = UnionFind()
            uf.add(OMEGA)
            edges: List[int] = []
            seen = set()
            for y in preds:
                for e in st.forest[y]:
                    if e not in seen:
                        seen.add(e)
                        edges.append(e)
            ufs.append(uf)
            graph_edges.append(edges)
        # predecessor-forest edges enter the union-find in order; cycle closers are non-forest
        non_forest: List[List[int]] = [[] for _ in states]
        forest_now: List[List[int]] = [[] for _ in states]
        for l, st in enumerate(states):
            rels = st.out.relations
            for e in graph_edges[l]:
                u, v = rels[e].ends
                if ufs[l].union(u, v):
                    forest_now[l].append(e)
                else:
                    non_forest[l].append(e)

        for y in preds:
            m = pt.edge_maps.get((y, x), {})
            for l, lst in enumerate(active[y]):
                st = states[l]
                for s, g in lst.items():
                    image = tuple(sorted({m.get(v, v) for v in s})) if m else s
                    if len(image) == len(s):
                        owners = cand[l].setdefault(image, [])
                        if g not in owners:
                            owners.append(g)
                    elif ufs[l].union(OMEGA, g):
                        e = _add_relation(st, x, (OMEGA, g))
                        graph_edges[l].append(e)
                        forest_now[l].append(e)

        # generator: new simplices, their boundaries, then identification of duplicates
        for g in gens_at[x]:
            l = g.degree
            out = states[l].out
            out.row_of[g.id] = len(out.gen_ids)
            out.gen_ids.append(g.id)
            out.gen_labels.append((g.label, x))
            out.gen_simplex.append(g.simplex)
            cand[l].setdefault(g.simplex, []).append(g.id)
            ufs[l].add(g.id)
        for g in gens_at[x]:
            l = g.degree
            col = []
            if l > 0:
                lower = states[l - 1].out
                for f in faces(g.simplex):
                    owners = cand[l - 1].get(f)
                    if not owners:
                        raise BoundaryFaceMissing(f"face {simplex_name(f)} of {g} has no active generator")
                    h = min(owners, key=lambda k: (pos[gen_grade[k]], k))
                    col.append(lower.row_of[h])
            states[l].out.f_cols.append(tuple(sorted(col)))

        act_x: List[Dict[Simplex, int]] = []
        for l, st in enumerate(states):
            final: Dict[Simplex, int] = {}
            for s in sorted(cand[l]):
                owners = sorted(cand[l][s], key=lambda k: (pos[gen_grade[k]], k))
                for a, b in zip(owners, owners[1:]):
                    if ufs[l].union(a, b):
                        e = _add_relation(st, x, (a, b))
                        graph_edges[l].append(e)
                        forest_now[l].append(e)
                final[s] = owners[0]
            act_x.append(final)
            st.forest[x] = forest_now[l]
            if relrel:
                rels = st.out.relations
                for e in non_forest[l]:
                    u, v = rels[e].ends
                    path = _forest_path(forest_now[l], rels, u, v)
                    support = [e] + path
                    _add_relrel(st, x, support)
                if reduce and non_forest[l]:
                    _reduce(st, P, x)
        active[x] = act_x

    degrees = [st.out for st in states]
    return ChainPresentation(P, degrees, active, relrel, reduce, time.perf_counter() - start)


def _add_relation(st: _DegreeState, x: str, ends: Tuple[int, int]) -> int:
    rels = st.out.relations
    rels.append(Relation(f"r{len(rels)}", x, ends))
    return len(rels) - 1


def _add_relrel(st: _DegreeState, x: str, support: List[int]) -> None:
    label = (f"rr{st.rr_counter}", x)
    st.rr_counter += 1
    st.out.relrels.append((label, tuple(sorted(support))))


def _reduce(st: _DegreeState, P: Poset, x: str) -> None:
    """Drop rel-rel columns of grade ``x`` that are dependent on earlier columns of grade <= x."""
    pos = P.linext.position
    rr = st.out.relrels
    idx = [i for i, ((_, g), _) in enumerate(rr) if P.leq(g, x)]
    idx.sort(key=lambda i: (pos[rr[i][0][1]], i))
    cols, _, _ = _reduce_bits([to_bits(rr[i][1]) for i in idx])
    drop = {idx[k] for k, c in enumerate(cols) if not c and rr[idx[k]][0][1] == x}
    if drop:
        st.out.relrels = [c for i, c in enumerate(rr) if i not in drop]
