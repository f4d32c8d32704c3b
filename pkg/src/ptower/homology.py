"""Presentations of the homology ker q0 / im q1 of a segment Q_{-1} <- Q_0 <- Q_1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .gf2 import Gf2Matrix, GradedMatrix, Label, _reduce_bits, from_bits, kernel_basis, solve, to_bits
from .graph_solver import InconsistentSystem
from .pirep import PiRep


@dataclass
class KernelResolution:
    u0: GradedMatrix
    u1: GradedMatrix


@dataclass
class HomologyPresentation:
    degree: int
    kernel: KernelResolution
    s: GradedMatrix
    matrix: GradedMatrix
    minimized: bool = False

    @property
    def generators(self) -> List[Label]:
        return list(self.matrix.row_labels)

    @property
    def relations(self) -> List[Label]:
        return list(self.matrix.col_labels)


def kernel_cover(m: GradedMatrix, prefix: str = "k") -> GradedMatrix:
    """Minimal graded ``u`` with pointwise im u(x) = ker m(x).

    Sweeping the linear extension, the generators born at ``x`` complete a
    basis of the span of earlier generators (the radical) to ker m(x).
    """
    P = m.poset
    col_grade = [P.index[g] for _, g in m.col_labels]
    mine = m.entries.bitcols()
    gens: List[Tuple[str, int]] = []  # (grade, vector over the columns of m)
    for x in P.linext.order:
        xi = P.index[x]
        idx = [k for k, g in enumerate(col_grade) if P.leq_index(g, xi)]
        if not idx:
            continue
        sub = Gf2Matrix.from_bitcols(m.entries.nrows, [mine[k] for k in idx])
        kernel = [sum(1 << idx[k] for k in v) for v in kernel_basis(sub)]
        if not kernel:
            continue
        below = [v for g, v in gens if g != x and P.leq(g, x)]
        cols, _, _ = _reduce_bits(below + kernel)
        for k, c in enumerate(cols[len(below):]):
            if c:
                gens.append((x, kernel[k]))
    labels = [(f"{prefix}{i}", g) for i, (g, _) in enumerate(gens)]
    return GradedMatrix(
        P, m.col_labels, labels, Gf2Matrix.from_bitcols(len(m.col_labels), [v for _, v in gens])
    )


def kernel_resolution(q0: GradedMatrix) -> KernelResolution:
    u0 = kernel_cover(q0, "k")
    u1 = kernel_cover(u0, "kk")
    return KernelResolution(u0, u1)


def lift_s(q1: GradedMatrix, kr: KernelResolution) -> GradedMatrix:
    """Graded ``s`` with u0 . s = q1, by elimination restricted to admissible generators."""
    u0 = kr.u0
    if u0.row_labels != q1.row_labels:
        raise ValueError("q1 must land in the domain of q0")
    P = u0.poset
    gen_grade = [P.index[g] for _, g in u0.col_labels]
    cols = []
    for j, (_, g) in enumerate(q1.col_labels):
        b = q1.entries.cols[j]
        if not b:
            cols.append(())
            continue
        gj = P.index[g]
        allowed = [k for k, gk in enumerate(gen_grade) if P.leq_index(gk, gj)]
        sub = Gf2Matrix(u0.entries.nrows, [u0.entries.cols[k] for k in allowed])
        x = solve(sub, b)
        if x is None:
            raise InconsistentSystem(f"column {q1.col_labels[j]} is not in the kernel image")
        cols.append(tuple(sorted(allowed[k] for k in x)))
    return GradedMatrix(P, u0.col_labels, q1.col_labels, Gf2Matrix(len(u0.col_labels), cols))


def hstack(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    if a.row_labels != b.row_labels:
        raise ValueError("row labels differ")
    return GradedMatrix(
        a.poset, a.row_labels, a.col_labels + b.col_labels,
        Gf2Matrix(a.entries.nrows, a.entries.cols + b.entries.cols),
    )


def minimize_presentation(m: GradedMatrix) -> GradedMatrix:
    """Minimal presentation of coker ``m``.

    Same-grade unit entries are cancelled first (generator and relation leave
    together), then relations that are dependent at their own grade on
    relations of lower or equal grade are dropped.
    """
    P = m.poset
    rows = list(m.row_labels)
    cols: List[Tuple[Label, int]] = [(lab, to_bits(c)) for lab, c in zip(m.col_labels, m.entries.cols)]
    while True:
        hit: Optional[Tuple[int, int]] = None
        for ci, ((_, g), bits) in enumerate(cols):
            for r in from_bits(bits):
                if rows[r][1] == g:
                    hit = (ci, r)
                    break
            if hit:
                break
        if hit is None:
            break
        ci, r = hit
        pivot = cols[ci][1]
        new_cols = []
        for k, (lab, bits) in enumerate(cols):
            if k == ci:
                continue
            if (bits >> r) & 1:
                bits ^= pivot
            new_cols.append((lab, _drop_bit(bits, r)))
        cols = new_cols
        del rows[r]

    pos = P.linext.position
    order = sorted(range(len(cols)), key=lambda k: (pos[cols[k][0][1]], k))
    kept: List[int] = []
    for x in P.linext.order:
        here = [k for k in order if cols[k][0][1] == x]
        if not here:
            continue
        below = [k for k in kept if P.leq(cols[k][0][1], x)]
        reduced, _, _ = _reduce_bits([cols[k][1] for k in below] + [cols[k][1] for k in here])
        kept.extend(k for k, c in zip(here, reduced[len(below):]) if c)
    kept.sort()
    return GradedMatrix(
        P, rows, [cols[k][0] for k in kept],
        Gf2Matrix.from_bitcols(len(rows), [cols[k][1] for k in kept]),
    )


def _drop_bit(bits: int, r: int) -> int:
    low = bits & ((1 << r) - 1)
    return low | ((bits >> (r + 1)) << r)


def presentation_from_segment(q0: GradedMatrix, q1: GradedMatrix, degree: int = 0,
                              minimize: bool = True) -> HomologyPresentation:
    kr = kernel_resolution(q0)
    s = lift_s(q1, kr)
    m = hstack(kr.u1, s)
    if minimize:
        m = minimize_presentation(m)
    return HomologyPresentation(degree, kr, s, m, minimize)


def homology_presentation(pr: PiRep, minimize: bool = True) -> HomologyPresentation:
    return presentation_from_segment(pr.d_l, pr.d_next, pr.degree, minimize)


def coker_dims(m: GradedMatrix) -> Dict[str, int]:
    out = {}
    for x in m.poset.nodes:
        sub, rows, _ = m.restrict_at(x)
        r = len(_reduce_bits(sub.bitcols())[2])
        out[x] = len(rows) - r
    return out
