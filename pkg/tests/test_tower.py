import random

import pytest

from ptower.generate import gen_random, gen_zigzag, random_dag, random_tower
from ptower.poset import build_poset
from ptower.tower import (
    EdgeEvent,
    FaceClosureError,
    InvalidTowerError,
    PointwiseTower,
    PosetTower,
    SimplexGenerator,
    canonical,
    extract,
    materialize,
    tower_from_pointwise,
    validate,
)


def test_fig7_collapse_maps(fig7):
    pt = materialize(fig7)
    assert pt.map_simplex("x4", "x5", ("u", "v")) == ("u", "w")
    # vw degenerates to the vertex w and leaves the 1-simplices
    assert pt.map_simplex("x4", "x5", ("v", "w")) == ("w",)
    assert ("v", "w") in pt.complexes["x4"]
    assert ("v", "w") not in pt.complexes["x5"]
    assert ("v",) not in pt.complexes["x5"]
    assert validate(fig7).ok


def test_fig10_generators(fig10):
    gens = [(g.label, g.grade) for g in fig10.generators]
    assert gens == [
        ("g:u", "x0"), ("g:w", "x0"), ("g:u-w", "x0"),
        ("g:v", "x1"), ("g:u-v", "x1"),
        ("g:v", "x2"), ("g:v-w", "x2"),
        ("g:u-v-w", "x6"),
    ]
    assert fig10.events == []
    assert fig10.n == 8


def test_filtration_is_union_of_generators():
    p = build_poset(["x0", "x1", "x2"], [("x0", "x1"), ("x1", "x2")])
    gens = [SimplexGenerator(0, ("a",), "x0"), SimplexGenerator(1, ("b",), "x1"),
            SimplexGenerator(2, ("a", "b"), "x2")]
    pt = materialize(PosetTower(p, gens))
    assert pt.complexes["x0"] == {("a",)}
    assert pt.complexes["x1"] == {("a",), ("b",)}
    assert pt.complexes["x2"] == {("a",), ("b",), ("a", "b")}
    assert pt.vertex_map("x0", "x2") == {}


def test_extract_pointwise_filtration():
    p = build_poset(["x0", "x1"], [("x0", "x1")])
    pt = PointwiseTower(p, {"x0": frozenset({("v",)}),
                            "x1": frozenset({("v",), ("w",), ("v", "w")})}, {})
    gens, events = extract(pt)
    assert [(g.simplex, g.grade) for g in gens] == [(("v",), "x0"), (("w",), "x1"), (("v", "w"), "x1")]
    assert events == []


def test_duplicate_generator_violation(fig7):
    extra = SimplexGenerator(len(fig7.generators), ("v",), "x1")
    bad = PosetTower(fig7.poset, fig7.generators + [extra], fig7.events)
    report = validate(bad)
    assert not report.ok
    assert any("duplicate generator" in v for v in report.violations)
    with pytest.raises(InvalidTowerError):
        materialize(bad)


def test_face_closure_violation():
    p = build_poset(["x0", "x1"], [("x0", "x1")])
    gens = [SimplexGenerator(0, ("v",), "x0"), SimplexGenerator(1, ("u", "v"), "x0"),
            SimplexGenerator(2, ("u",), "x1")]
    t = PosetTower(p, gens)
    assert any(v.startswith("face closure") for v in validate(t).violations)
    with pytest.raises(FaceClosureError):
        materialize(t)


def test_event_violations(fig7):
    same = PosetTower(fig7.poset, fig7.generators, [EdgeEvent("x4", "x5", "v", "v")])
    assert any("source equals target" in v for v in validate(same).violations)
    far = PosetTower(fig7.poset, fig7.generators, [EdgeEvent("x0", "x4", "v", "w")])
    assert any("non-Hasse" in v for v in validate(far).violations)
    twice = PosetTower(fig7.poset, fig7.generators,
                       [EdgeEvent("x4", "x5", "v", "w"), EdgeEvent("x4", "x5", "v", "u")])
    assert any("duplicate event" in v for v in validate(twice).violations)


def test_generator_in_predecessor_image(fig7):
    extra = SimplexGenerator(len(fig7.generators), ("u",), "x1")
    t = PosetTower(fig7.poset, fig7.generators + [extra], fig7.events)
    assert any("image of a predecessor" in v for v in validate(t).violations)


def test_non_functorial_diamond_rejected():
    p = build_poset(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    gens = [SimplexGenerator(0, ("u",), "a"), SimplexGenerator(1, ("v",), "a"),
            SimplexGenerator(2, ("w",), "a")]
    # u goes to v along one side and to w along the other
    t = PosetTower(p, gens, [EdgeEvent("b", "d", "u", "v"), EdgeEvent("c", "d", "u", "w")])
    assert not validate(t).ok


def _brute_force_complexes(t):
    """K(x) as the union of generator images pushed along one chain of Hasse edges."""
    P = t.poset
    moves = {}
    for e in t.events:
        moves.setdefault((e.from_grade, e.to_grade), {})[e.source] = e.target

    def path(y, x):
        if y == x:
            return [y]
        for z in P.successors(y):
            if P.leq(z, x):
                return [y] + path(z, x)
        raise AssertionError

    out = {}
    for x in P.nodes:
        here = set()
        for g in t.generators:
            if not P.leq(g.grade, x):
                continue
            s = g.simplex
            chain = path(g.grade, x)
            for a, b in zip(chain, chain[1:]):
                m = moves.get((a, b), {})
                s = canonical(m.get(v, v) for v in s)
            here.add(s)
        out[x] = frozenset(here)
    return out


@pytest.mark.parametrize("seed", range(100))
def test_round_trip_and_brute_force(seed):
    t = gen_random(seed, nodes=6 + seed % 7, edges=8 + seed % 11, events=seed % 5) if seed % 3 else gen_zigzag(seed)
    pt = materialize(t)
    assert pt.complexes == _brute_force_complexes(t)
    gens, events = extract(pt)
    assert [(g.simplex, g.grade) for g in gens] == [(g.simplex, g.grade) for g in t.generators]
    assert set(events) == set(t.events)
    assert materialize(tower_from_pointwise(pt)) == pt


def test_random_tower_rejects_nothing_valid():
    rng = random.Random(5)
    for _ in range(20):
        p = random_dag(rng, 7, 10)
        assert validate(random_tower(p, rng, 10, 3)).ok
