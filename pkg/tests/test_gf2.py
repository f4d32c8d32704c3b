import itertools
import random

import pytest

from fig10_data import G0, G1, KERNEL_EXAMPLE, P1_0, P2_0, R3, V1, V2
from ptower.generate import random_dag
from ptower.gf2 import (
    DimensionMismatch,
    Gf2Matrix,
    GradedMatrix,
    GradingError,
    column_reduce,
    graded_identity,
    kernel_basis,
    multiply,
    rank,
    solve,
)
from ptower.oracle import _rank
from ptower.presentation import run_presentation


def random_matrix(rng, nrows, ncols, density=0.4):
    return Gf2Matrix(nrows, [[r for r in range(nrows) if rng.random() < density] for _ in range(ncols)])


def span(vectors):
    out = {0}
    for v in vectors:
        out |= {s ^ v for s in out}
    return out


def test_dense_round_trip():
    m = Gf2Matrix.from_dense(KERNEL_EXAMPLE)
    assert m.shape == (4, 5)
    assert m.to_dense() == KERNEL_EXAMPLE
    assert m.nnz == 10


def test_column_reduce_examples():
    r = column_reduce(Gf2Matrix.from_dense([[1, 1], [1, 1]]))
    assert r.reduced.to_dense() == [[1, 0], [1, 0]]
    assert r.zeroed == [1]
    ident = Gf2Matrix.identity(4)
    assert column_reduce(ident).reduced == ident
    # rr^{x6} against rr^{x5}
    assert column_reduce(Gf2Matrix.from_dense(P2_0)).zeroed == [1]


def test_kernel_example_rank_and_kernel():
    m = Gf2Matrix.from_dense(KERNEL_EXAMPLE)
    assert rank(m) == 3
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert (m @ Gf2Matrix(5, [v])).is_zero()


def test_solve_identity():
    assert solve(Gf2Matrix.identity(5), [0, 3]) == (0, 3)
    assert solve(Gf2Matrix.from_dense([[1, 1]]), []) == ()
    assert solve(Gf2Matrix.zeros(2, 2), [1]) is None


@pytest.mark.parametrize("seed", range(40))
def test_reduction_against_brute_force(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
    m = random_matrix(rng, nrows, ncols)
    bits = m.bitcols()
    r = column_reduce(m)
    red = r.reduced.bitcols()
    # prefix spans are preserved
    for k in range(ncols + 1):
        assert span(red[:k]) == span(bits[:k])
    for j in range(ncols):
        acc = 0
        for i in range(ncols):
            if (r.transform[j] >> i) & 1:
                acc ^= bits[i]
        assert acc == red[j]
    assert rank(m) == _rank(bits)
    assert len(kernel_basis(m)) == ncols - rank(m)
    reachable = span(bits)
    for b in range(1 << nrows):
        x = solve(m, [i for i in range(nrows) if (b >> i) & 1])
        assert (x is not None) == (b in reachable)
        if x is not None:
            acc = 0
            for i in x:
                acc ^= bits[i]
            assert acc == b


def test_product_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Gf2Matrix.zeros(2, 3) @ Gf2Matrix.zeros(2, 3)


def test_grading_enforced(fig10):
    P = fig10.poset
    with pytest.raises(GradingError):
        GradedMatrix.from_columns(P, [V1], [("r", "x0")], [[0]])
    with pytest.raises(ValueError):
        GradedMatrix.from_columns(P, [V1, V1], [], [])
    ok = GradedMatrix.from_columns(P, [V1, V2], [R3], [[0, 1]])
    assert ok.shape == (2, 1)


def test_restrict_at_fig10(fig10):
    cp = run_presentation(fig10)
    p1 = cp.p1(0)
    assert list(p1.row_labels) == G0
    assert p1.entries.to_dense() == P1_0
    sub, rows, cols = p1.restrict_at("x2")
    assert sub.shape == (3, 0)
    sub, rows, cols = p1.restrict_at("x3")
    assert cols == [0]
    assert sub.to_dense() == [[0], [0], [1], [1]]
    sub, rows, cols = p1.restrict_at("x0")
    assert (rows, cols) == ([0, 1], [])


def test_restrict_below_everything():
    from ptower.poset import build_poset

    P = build_poset(["a", "b"], [("a", "b")])
    m = GradedMatrix.from_columns(P, [("g", "b")], [("r", "b")], [[0]])
    assert m.restrict_at("a")[0].shape == (0, 0)


def test_fig10_products(fig10):
    cp = run_presentation(fig10, relrel=True)
    assert multiply(cp.f(1), cp.p1(1)).shape == (4, 0)
    ff = multiply(cp.f(1), cp.f(2))
    assert ff.column_support(0) == [V1, V2]
    ident = graded_identity(fig10.poset, G0)
    assert multiply(ident, cp.f(1)) == cp.f(1)
    assert list(cp.f(1).row_labels) == G0 and list(cp.f(1).col_labels) == G1


@pytest.mark.parametrize("seed", range(15))
def test_restrict_at_functorial(seed):
    rng = random.Random(seed)
    P = random_dag(rng, 7, 10)
    rows = [(f"a{i}", rng.choice(P.nodes)) for i in range(6)]
    cols = [(f"b{i}", rng.choice(P.nodes)) for i in range(6)]
    entries = [[j for j, (_, g) in enumerate(rows) if P.leq(g, c) and rng.random() < 0.6] for _, c in cols]
    m = GradedMatrix.from_columns(P, rows, cols, entries)
    for x, y in itertools.product(P.nodes, repeat=2):
        if not P.leq(x, y):
            continue
        big, br, bc = m.restrict_at(y)
        small, sr, sc = m.restrict_at(x)
        sub = big.submatrix([br.index(r) for r in sr], [bc.index(c) for c in sc])
        assert sub == small
