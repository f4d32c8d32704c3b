import pytest

from fig10_data import F1, F2, G0, P1_0, P2_0, R3, R4, RR5, RR6, UV, UVW, UW, V1, VW, dense
from ptower.generate import gen_chain, gen_random
from ptower.io import parse_tower
from ptower.presentation import OMEGA, run_presentation
from ptower.tower import materialize


def rel_set(m):
    return {(lab, tuple(m.column_support(i))) for i, lab in enumerate(m.col_labels)}


def test_fig7_degree0(fig7):
    cp = run_presentation(fig7)
    p1 = cp.p1(0)
    v1, v2, v3 = ("g:v", "x1"), ("g:v", "x2"), ("g:v", "x3")
    assert rel_set(p1) == {
        (("r0", "x4"), (v1, v2)),
        (("r1", "x4"), (v2, v3)),
        # the collapse v -> w glues the two vertex components
        (("r2", "x5"), (("g:w", "x0"), v1)),
    }


def test_fig7_degree1(fig7):
    cp = run_presentation(fig7)
    assert rel_set(cp.p1(1)) == {
        (("r0", "x5"), (("g:v-w", "x3"),)),
        (("r1", "x5"), (("g:u-v", "x1"), ("g:u-w", "x2"))),
    }
    # the vanishing edge vw attaches to the graveyard vertex
    assert OMEGA in cp.degree(1).relations[0].ends


def test_fig7_active_lists(fig7):
    cp = run_presentation(fig7)
    pt = materialize(fig7)
    for x in fig7.poset.nodes:
        for l, act in enumerate(cp.active[x]):
            assert sorted(act) == pt.simplices(x, l)
    # uv and uw both map to uw at x5 and one copy survives
    assert cp.active["x5"][1][("u", "w")] in {g.id for g in fig7.generators if g.simplex in {("u", "v"), ("u", "w")}}


def test_fig10_presentation(fig10):
    cp = run_presentation(fig10, relrel=True)
    p1, p2 = cp.p1(0), cp.p2(0)
    assert list(p1.row_labels) == G0
    assert list(p1.col_labels) == [R3, R4]
    assert dense(p1) == P1_0
    assert list(p2.col_labels) == [RR5, RR6]
    assert dense(p2) == P2_0
    assert list(cp.f(1).col_labels) == [UW, UV, VW]
    assert dense(cp.f(1)) == F1
    assert list(cp.f(2).col_labels) == [UVW]
    assert dense(cp.f(2)) == F2
    assert cp.f(1).column_support(1) == [("g:u", "x0"), V1]
    assert cp.p1(1).shape == (3, 0)
    assert [d.counts() for d in cp.degrees] == [(4, 2, 2), (3, 0, 0), (1, 0, 0)]


def test_fig10_reduce_keeps_incomparable_columns(fig10):
    # x5 and x6 are incomparable, so neither rr column sees the other
    cp = run_presentation(fig10, relrel=True, reduce=True)
    assert list(cp.p2(0).col_labels) == [RR5, RR6]


def test_reduce_requires_relrel(fig10):
    cp = run_presentation(fig10, relrel=False, reduce=True)
    assert not cp.reduce
    assert cp.p2(0).shape == (2, 0)


TWO_CYCLES = """
poset
node a
node b
node c
node d
node e
node top
edge a c
edge b c
edge a d
edge b d
edge c top
edge d top
tower
gen a v
gen a w
gen b v
gen b w
gen top e
"""


def test_two_relrels_at_one_grade():
    t = parse_tower(TWO_CYCLES)
    cp = run_presentation(t, relrel=True, reduce=True)
    d = cp.degree(0)
    assert [r.grade for r in d.relations] == ["c", "c", "d", "d"]
    assert [lab for lab, _ in d.relrels] == [("rr0", "top"), ("rr1", "top")]
    assert cp.p2(0).entries.to_dense() == [[1, 0], [0, 1], [1, 0], [0, 1]]


def test_chain_filtration_is_free():
    for seed in range(10):
        cp = run_presentation(gen_chain(seed), relrel=True)
        assert all(cp.p1(l).shape[1] == 0 for l in range(cp.max_degree + 1))


@pytest.mark.parametrize("seed", range(30))
def test_structure_on_random_towers(seed):
    t = gen_random(seed, nodes=10, edges=18, events=4)
    cp = run_presentation(t, relrel=True, reduce=True)
    for l in range(cp.max_degree + 1):
        for c in cp.p1(l).cols:
            assert 1 <= len(c) <= 2
        for c in cp.f(l).cols:
            assert len(c) == (l + 1 if l > 0 else 0)
        assert cp.p1(l).shape[0] <= t.n
        # p1 and p2 compose to zero
        assert (cp.p1(l).entries @ cp.p2(l).entries).is_zero()


def test_deterministic(fig7):
    a = run_presentation(fig7, relrel=True, reduce=True)
    b = run_presentation(fig7, relrel=True, reduce=True)
    for l in range(a.max_degree + 1):
        assert a.p1(l) == b.p1(l) and a.p2(l) == b.p2(l) and a.f(l) == b.f(l)


@pytest.mark.parametrize("seed", [11, 131, 189])
def test_reduce_drops_superfluous_relrels(seed):
    from ptower.oracle import verify

    t = gen_random(seed, nodes=20, edges=40, gens=10, events=3)
    full = run_presentation(t, relrel=True)
    red = run_presentation(t, relrel=True, reduce=True)
    assert sum(len(d.relrels) for d in red.degrees) < sum(len(d.relrels) for d in full.degrees)
    report = verify(t, red, quick=True)
    assert report.ok, report.lines()
    assert any(line.startswith("p2_minimality") for line in report.lines())
