"""Seeded generators of valid poset towers."""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .poset import Poset
from .tower import PointwiseTower, PosetTower, Simplex, canonical, tower_from_pointwise, validate


def random_dag(rng: random.Random, nodes: int, edges: int, prefix: str = "x") -> Poset:
    """Random DAG on ``nodes`` vertices, transitively reduced."""
    names = [f"{prefix}{i}" for i in range(nodes)]
    pairs = [(i, j) for i in range(nodes) for j in range(i + 1, nodes)]
    chosen = set(rng.sample(pairs, min(edges, len(pairs))))
    reach = [1 << i for i in range(nodes)]
    for i in reversed(range(nodes)):
        for j in range(i + 1, nodes):
            if (i, j) in chosen:
                reach[i] |= reach[j]
    hasse = []
    for i, j in sorted(chosen):
        if not any(k != j and (i, k) in chosen and (reach[k] >> j) & 1 for k in range(i + 1, j)):
            hasse.append((names[i], names[j]))
    return Poset(names, hasse)


def grid_poset(nx: int, ny: int) -> Poset:
    names = [f"g{i}_{j}" for i in range(nx) for j in range(ny)]
    edges = []
    for i in range(nx):
        for j in range(ny):
            if i + 1 < nx:
                edges.append((f"g{i}_{j}", f"g{i + 1}_{j}"))
            if j + 1 < ny:
                edges.append((f"g{i}_{j}", f"g{i}_{j + 1}"))
    return Poset(names, edges)


def chain_poset(n: int) -> Poset:
    names = [f"c{i}" for i in range(n)]
    return Poset(names, list(zip(names, names[1:])))


def zigzag_poset(n: int) -> Poset:
    """z0 < z1 > z2 < z3 > ... (even nodes minimal)."""
    names = [f"z{i}" for i in range(n)]
    edges = []
    for i in range(n - 1):
        a, b = (names[i], names[i + 1]) if i % 2 == 0 else (names[i + 1], names[i])
        edges.append((a, b))
    return Poset(names, edges)


def _faces(s: Simplex) -> List[Simplex]:
    return [s[:k] + s[k + 1:] for k in range(len(s))] if len(s) > 1 else []


def towers_from_births(
    poset: Poset,
    births: Sequence[Tuple[Simplex, str]],
    parents: Dict[str, Tuple[str, str]],
) -> PosetTower:
    """Tower whose K(x) is the image of all births at grades <= x.

    ``parents[v] = (w, z)`` collapses v onto w at every grade >= z; following
    parents in this way is monotone in x, so the vertex maps compose.
    """
    vertices = sorted({v for s, _ in births for v in s})

    def rep(v: str, x: str) -> str:
        while v in parents and poset.leq(parents[v][1], x):
            v = parents[v][0]
        return v

    reps = {x: {v: rep(v, x) for v in vertices} for x in poset.nodes}
    complexes: Dict[str, frozenset] = {}
    for x in poset.nodes:
        here: Set[Simplex] = set()
        for s, b in births:
            if poset.leq(b, x):
                here.add(canonical(reps[x][v] for v in s))
        complexes[x] = frozenset(here)
    edge_maps = {}
    for y, x in poset.hasse_edges:
        m = {}
        for s in complexes[y]:
            if len(s) == 1:
                w = rep(s[0], x)
                if w != s[0]:
                    m[s[0]] = w
        edge_maps[(y, x)] = m
    return tower_from_pointwise(PointwiseTower(poset, complexes, edge_maps))


def _close_births(poset: Poset, births: List[Tuple[Simplex, str]]) -> List[Tuple[Simplex, str]]:
    """Add face births so that every face is born no later than the simplex."""
    out = list(births)
    k = 0
    while k < len(out):
        s, b = out[k]
        for f in _faces(s):
            if not any(t == f and poset.leq(c, b) for t, c in out):
                out.append((f, b))
        k += 1
    return out


def random_tower(
    poset: Poset,
    rng: random.Random,
    gens: int,
    events: int,
    vertices: Optional[int] = None,
    max_dim: int = 2,
) -> PosetTower:
    nodes = list(poset.nodes)
    vertices = vertices or max(3, gens // 3 + 2)
    names = [f"v{i}" for i in range(vertices)]
    births: List[Tuple[Simplex, str]] = []
    for _ in range(gens):
        d = rng.randint(0, max_dim)
        s = tuple(sorted(rng.sample(names, min(d + 1, len(names)))))
        births.append((s, rng.choice(nodes)))
    births = _close_births(poset, births)
    parents: Dict[str, Tuple[str, str]] = {}
    for _ in range(events):
        v = rng.randrange(1, vertices)
        if names[v] in parents:
            continue
        parents[names[v]] = (names[rng.randrange(0, v)], rng.choice(nodes))
    return towers_from_births(poset, births, parents)


def gen_random(
    seed: int, nodes: int = 8, edges: int = 12, gens: int = 12, events: int = 3,
    max_n: int = 40, max_t0: int = 25, max_t1: int = 40,
) -> PosetTower:
    """Random multi-critical tower with collapses, within the size limits (retrying deterministically)."""
    rng = random.Random(seed)
    for _ in range(100):
        poset = random_dag(rng, min(nodes, max_t0), edges)
        if poset.t1 > max_t1:
            continue
        t = random_tower(poset, rng, gens, events)
        if t.n <= max_n and validate(t).ok:
            return t
        gens = max(1, gens - 1)
    raise RuntimeError("could not generate a tower within the size limits")


def gen_zigzag(seed: int, length: int = 6, gens: int = 10, events: int = 2) -> PosetTower:
    rng = random.Random(seed)
    return random_tower(zigzag_poset(length), rng, gens, events)


def gen_chain(seed: int, length: int = 5, simplices: int = 10) -> PosetTower:
    """One-parameter filtration (inclusions only)."""
    rng = random.Random(seed)
    return random_tower(chain_poset(length), rng, simplices, 0)


def gen_grid(seed: int, nx: int = 4, ny: int = 4, fill: float = 0.5, verts: Optional[int] = None) -> PosetTower:
    """One-critical bifiltration on an nx x ny grid: each simplex is born once, after its faces."""
    rng = random.Random(seed)
    poset = grid_poset(nx, ny)
    verts = verts if verts is not None else nx * ny
    names = [f"v{i}" for i in range(verts)]
    grade: Dict[Simplex, Tuple[int, int]] = {}
    for v in names:
        grade[(v,)] = (rng.randrange(nx), rng.randrange(ny))

    def later(faces: Sequence[Simplex]) -> Tuple[int, int]:
        i = max(grade[f][0] for f in faces)
        j = max(grade[f][1] for f in faces)
        return (min(nx - 1, i + rng.randint(0, 1)), min(ny - 1, j + rng.randint(0, 1)))

    for a, b in itertools.chain(zip(range(verts), range(1, verts)), zip(range(verts), range(2, verts))):
        if rng.random() < fill:
            s = (names[a], names[b]) if names[a] < names[b] else (names[b], names[a])
            grade[s] = later([(names[a],), (names[b],)])
    for a in range(verts - 2):
        s = tuple(sorted(names[a:a + 3]))
        if all(f in grade for f in _faces(s)) and rng.random() < fill:
            grade[s] = later(_faces(s))
    births = [(s, f"g{i}_{j}") for s, (i, j) in grade.items()]
    return towers_from_births(poset, births, {})
