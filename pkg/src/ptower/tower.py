"""Compact poset towers (simplex generators + edge events) and their pointwise form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .poset import Poset, UnknownNodeError

Simplex = Tuple[str, ...]


class TowerError(ValueError):
    pass


class FaceClosureError(TowerError):
    pass


class DuplicateEventError(TowerError):
    pass


class InvalidTowerError(TowerError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations[:5]) + (" ..." if len(self.violations) > 5 else ""))


def canonical(vertices: Iterable[str]) -> Simplex:
    """Sorted, de-duplicated vertex tuple (degenerate images lose dimension)."""
    return tuple(sorted(set(vertices)))


def faces(s: Simplex) -> List[Simplex]:
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def simplex_name(s: Simplex) -> str:
    return "-".join(s)


@dataclass(frozen=True)
class SimplexGenerator:
    id: int
    simplex: Simplex
    grade: str

    @property
    def degree(self) -> int:
        return len(self.simplex) - 1

    @property
    def label(self) -> str:
        return "g:" + simplex_name(self.simplex)

    def __str__(self):
        return f"{self.label}@{self.grade}"


@dataclass(frozen=True)
class EdgeEvent:
    from_grade: str
    to_grade: str
    source: str
    target: str


@dataclass
class PosetTower:
    poset: Poset
    generators: List[SimplexGenerator]
    events: List[EdgeEvent] = field(default_factory=list)

    def __post_init__(self):
        for g in self.generators:
            if g.grade not in self.poset:
                raise UnknownNodeError(f"generator {g} at unknown grade {g.grade!r}")
            if len(g.simplex) == 0 or tuple(sorted(set(g.simplex))) != g.simplex:
                raise TowerError(f"generator {g.id}: simplex {g.simplex} must be strictly sorted")
        for e in self.events:
            for x in (e.from_grade, e.to_grade):
                if x not in self.poset:
                    raise UnknownNodeError(f"event on unknown grade {x!r}")

    @property
    def n(self) -> int:
        return len(self.generators) + len(self.events)

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.generators), default=-1)

    def generators_at(self) -> Dict[str, List[SimplexGenerator]]:
        out: Dict[str, List[SimplexGenerator]] = {x: [] for x in self.poset.nodes}
        for g in self.generators:
            out[g.grade].append(g)
        return out

    def events_on(self) -> Dict[Tuple[str, str], Dict[str, str]]:
        """Per Hasse edge, the moved vertices ``v -> w``."""
        out: Dict[Tuple[str, str], Dict[str, str]] = {}
        for e in self.events:
            out.setdefault((e.from_grade, e.to_grade), {})[e.source] = e.target
        return out


@dataclass
class PointwiseTower:
    """``complexes[x]`` is K(x); ``edge_maps[(y, x)]`` holds only the vertices moved by K(y < x)."""

    poset: Poset
    complexes: Dict[str, FrozenSet[Simplex]]
    edge_maps: Dict[Tuple[str, str], Dict[str, str]]
    _composites: Dict[Tuple[str, str], Dict[str, str]] = field(default_factory=dict, repr=False)

    def simplices(self, x: str, degree: int) -> List[Simplex]:
        return sorted(s for s in self.complexes[x] if len(s) == degree + 1)

    def vertex_map(self, y: str, x: str) -> Dict[str, str]:
        """Moved vertices of the composite K(y <= x)."""
        if not self.poset.leq(y, x):
            raise ValueError(f"{y} is not <= {x}")
        if y == x:
            return {}
        if (y, x) not in self._composites:
            self._composites.update(_composites(self)[0])
        return self._composites.get((y, x), {})

    def map_simplex(self, y: str, x: str, s: Simplex) -> Simplex:
        m = self.vertex_map(y, x)
        if not m:
            return s
        return canonical(m.get(v, v) for v in s)

    def __eq__(self, other):
        if not isinstance(other, PointwiseTower):
            return NotImplemented
        return (
            self.poset.nodes == other.poset.nodes
            and set(self.poset.hasse_edges) == set(other.poset.hasse_edges)
            and self.complexes == other.complexes
            and {k: v for k, v in self.edge_maps.items() if v}
            == {k: v for k, v in other.edge_maps.items() if v}
        )


def _composites(pt: PointwiseTower) -> Tuple[Dict[Tuple[str, str], Dict[str, str]], List[str]]:
    """Composite vertex maps for all pairs y <= x, plus path-dependence violations."""
    P = pt.poset
    comp: Dict[Tuple[str, str], Dict[str, str]] = {}
    problems: List[str] = []
    if not any(pt.edge_maps.values()):
        return comp, problems
    verts = {x: {s[0] for s in pt.complexes[x] if len(s) == 1} for x in P.nodes}
    for x in P.linext.order:
        preds = P.predecessors(x)
        for y in P.down_set(x):
            if y == x:
                continue
            result: Optional[Dict[str, str]] = None
            for z in preds:
                if not P.leq(y, z):
                    continue
                c = comp.get((y, z), {}) if y != z else {}
                e = pt.edge_maps.get((z, x), {})
                dom = set(c) | {v for v in e if v in verts[y]}
                cand = {}
                for v in dom:
                    w = c.get(v, v)
                    w = e.get(w, w)
                    if w != v:
                        cand[v] = w
                if result is None:
                    result = cand
                elif cand != result:
                    problems.append(f"maps {y} -> {x} differ between paths (via {z})")
            if result:
                comp[(y, x)] = result
    return comp, problems


def _build(t: PosetTower) -> Tuple[PointwiseTower, List[str]]:
    P = t.poset
    problems: List[str] = []
    events: Dict[Tuple[str, str], Dict[str, str]] = {}
    for e in t.events:
        if not P.is_hasse_edge(e.from_grade, e.to_grade):
            problems.append(f"event {e.source}->{e.target} on non-Hasse edge {e.from_grade}<{e.to_grade}")
            continue
        if e.source == e.target:
            problems.append(f"event {e.source}->{e.target} on {e.from_grade}<{e.to_grade}: source equals target")
            continue
        m = events.setdefault((e.from_grade, e.to_grade), {})
        if e.source in m:
            problems.append(f"duplicate event for {e.source} on {e.from_grade}<{e.to_grade}")
            continue
        m[e.source] = e.target

    gens = t.generators_at()
    complexes: Dict[str, FrozenSet[Simplex]] = {}
    for x in P.linext.order:
        image: Set[Simplex] = set()
        for y in P.predecessors(x):
            m = events.get((y, x), {})
            vy = {s[0] for s in complexes[y] if len(s) == 1}
            for v in m:
                if v not in vy:
                    problems.append(f"event source {v} not a vertex of K({y})")
            for s in complexes[y]:
                image.add(canonical(m.get(v, v) for v in s) if m else s)
        here = set(image)
        seen_here: Set[Simplex] = set()
        for g in gens[x]:
            if g.simplex in seen_here:
                problems.append(f"duplicate generator {g.label}@{x}")
            seen_here.add(g.simplex)
            if g.simplex in image:
                problems.append(f"generator {g.label}@{x} is in the image of a predecessor map")
            here.add(g.simplex)
        for s in here:
            for f in faces(s):
                if f not in here:
                    problems.append(f"face closure: {simplex_name(f)} missing at {x} (face of {simplex_name(s)})")
        complexes[x] = frozenset(here)
    pt = PointwiseTower(P, complexes, {k: dict(v) for k, v in events.items()})
    comp, bad = _composites(pt)
    problems.extend(bad)
    pt._composites = comp
    return pt, problems


@dataclass
class ValidationReport:
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(t: PosetTower) -> ValidationReport:
    _, problems = _build(t)
    return ValidationReport(sorted(set(problems), key=problems.index))


def materialize(t: PosetTower) -> PointwiseTower:
    pt, problems = _build(t)
    if problems:
        first = problems[0]
        if first.startswith("face closure"):
            raise FaceClosureError(first)
        if first.startswith("duplicate event"):
            raise DuplicateEventError(first)
        raise InvalidTowerError(problems)
    return pt


def extract(pt: PointwiseTower) -> Tuple[List[SimplexGenerator], List[EdgeEvent]]:
    """Generators (simplices not hit by any predecessor) and edge events of a pointwise tower."""
    P = pt.poset
    gens: List[SimplexGenerator] = []
    for x in P.linext.order:
        image: Set[Simplex] = set()
        for y in P.predecessors(x):
            m = pt.edge_maps.get((y, x), {})
            for s in pt.complexes[y]:
                image.add(canonical(m.get(v, v) for v in s) if m else s)
        new = sorted((s for s in pt.complexes[x] if s not in image), key=lambda s: (len(s), s))
        for s in new:
            gens.append(SimplexGenerator(len(gens), s, x))
    events: List[EdgeEvent] = []
    for y, x in P.hasse_edges:
        for v, w in sorted(pt.edge_maps.get((y, x), {}).items()):
            events.append(EdgeEvent(y, x, v, w))
    return gens, events


def tower_from_pointwise(pt: PointwiseTower) -> PosetTower:
    gens, events = extract(pt)
    return PosetTower(pt.poset, gens, events)
