"""Brute-force pointwise ground truth.

Everything here is evaluated grade by grade with its own small elimination
routine (row vectors as ints, pivots on the lowest set bit); it shares no
reduction code with the engine so that it can serve as an honest check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poset import Poset
from .tower import PointwiseTower, PosetTower, Simplex, materialize


class _Echelon:
    """Incremental basis; ``tag`` records which inputs a reduced vector came from."""

    def __init__(self):
        self.rows: Dict[int, Tuple[int, int]] = {}

    def reduce(self, v: int, tag: int = 0) -> Tuple[int, int]:
        while v:
            low = v & -v
            hit = self.rows.get(low)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.rows[v & -v] = (v, tag)
        return True

    def __len__(self):
        return len(self.rows)


def _rank(vectors: Iterable[int]) -> int:
    e = _Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def _kernel(images: Sequence[int]) -> List[int]:
    """Kernel of the map sending basis vector i to ``images[i]``, as bitsets over i."""
    e = _Echelon()
    out = []
    for i, v in enumerate(images):
        r, tag = e.reduce(v, 1 << i)
        if r:
            e.rows[r & -r] = (r, tag)
        else:
            out.append(tag)
    return out


def _apply(images: Sequence[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= images[i]
        v >>= 1
        i += 1
    return out


def _bits(idx: Iterable[int]) -> int:
    b = 0
    for i in idx:
        b |= 1 << i
    return b


@dataclass
class PointwiseModule:
    """Dimensions per grade and structure maps per Hasse edge (images of basis vectors)."""

    poset: Poset
    dims: Dict[str, int]
    maps: Dict[Tuple[str, str], List[int]]
    labels: Dict[str, List[str]] = field(default_factory=dict)
    _comp: Optional[Dict[Tuple[str, str], List[int]]] = field(default=None, repr=False)

    def composite(self, y: str, x: str) -> List[int]:
        if self._comp is None:
            self._comp = _composites(self)
        return self._comp[(y, x)]


def _composites(M: PointwiseModule) -> Dict[Tuple[str, str], List[int]]:
    P = M.poset
    comp: Dict[Tuple[str, str], List[int]] = {}
    for x in P.linext.order:
        comp[(x, x)] = [1 << i for i in range(M.dims[x])]
        preds = P.predecessors(x)
        for y in P.down_set(x):
            if y == x:
                continue
            z = next(z for z in preds if P.leq(y, z))
            edge = M.maps[(z, x)]
            comp[(y, x)] = [_apply(edge, v) for v in comp[(y, z)]]
    return comp


# ---------------------------------------------------------------- chain data


def chain_basis(pt: PointwiseTower, l: int) -> Dict[str, List[Simplex]]:
    return {x: sorted(s for s in pt.complexes[x] if len(s) == l + 1) for x in pt.poset.nodes}


def _image(pt: PointwiseTower, y: str, x: str, s: Simplex) -> Simplex:
    m = pt.vertex_map(y, x)
    return tuple(sorted({m.get(v, v) for v in s}))


def chain_module(pt: PointwiseTower, l: int) -> PointwiseModule:
    basis = chain_basis(pt, l)
    where = {x: {s: i for i, s in enumerate(b)} for x, b in basis.items()}
    maps = {}
    for y, x in pt.poset.hasse_edges:
        imgs = []
        for s in basis[y]:
            t = _image(pt, y, x, s)
            imgs.append(1 << where[x][t] if len(t) == len(s) else 0)
        maps[(y, x)] = imgs
    return PointwiseModule(
        pt.poset, {x: len(b) for x, b in basis.items()}, maps,
        {x: ["-".join(s) for s in b] for x, b in basis.items()},
    )


def boundary(pt: PointwiseTower, l: int) -> Dict[str, List[int]]:
    """Per grade, images of the l-simplices under the boundary, over the (l-1)-simplex basis."""
    hi = chain_basis(pt, l)
    lo = chain_basis(pt, l - 1) if l > 0 else {x: [] for x in pt.poset.nodes}
    out = {}
    for x in pt.poset.nodes:
        where = {s: i for i, s in enumerate(lo[x])}
        cols = []
        for s in hi[x]:
            v = 0
            if l > 0:
                for k in range(len(s)):
                    v ^= 1 << where[s[:k] + s[k + 1:]]
            cols.append(v)
        out[x] = cols
    return out


def homology_dims(pt: PointwiseTower, l: int) -> Dict[str, int]:
    d_l = boundary(pt, l)
    d_next = boundary(pt, l + 1)
    return {x: len(d_l[x]) - _rank(d_l[x]) - _rank(d_next[x]) for x in pt.poset.nodes}


def homology_module(pt: PointwiseTower, l: int) -> PointwiseModule:
    """H_l with induced maps: complements of im d_{l+1} inside ker d_l."""
    C = chain_module(pt, l)
    d_l = boundary(pt, l)
    d_next = boundary(pt, l + 1)
    quot = {}
    for x in pt.poset.nodes:
        quot[x] = _Quotient(_kernel(d_l[x]), d_next[x])
    maps = {}
    for y, x in pt.poset.hasse_edges:
        edge = C.maps[(y, x)]
        maps[(y, x)] = [quot[x].coords(_apply(edge, v)) for v in quot[y].basis]
    return PointwiseModule(pt.poset, {x: len(q.basis) for x, q in quot.items()}, maps)


class _Quotient:
    """Z / B for subspaces B <= Z of a common ambient space."""

    def __init__(self, z: Sequence[int], b: Sequence[int]):
        # rows are stored as (r, tag) with r = sum of basis[tag] modulo B
        e = _Echelon()
        for v in b:
            e.add(v)
        self.basis: List[int] = []
        for v in z:
            r, tag = e.reduce(v, 1 << len(self.basis))
            if r:
                e.rows[r & -r] = (r, tag)
                self.basis.append(v)
        self.full = e

    def coords(self, v: int) -> int:
        r, tag = self.full.reduce(v)
        if r:
            raise ValueError("vector is not in Z")
        return tag


def module_of_coker(m) -> PointwiseModule:
    """Pointwise cokernel of a graded matrix, with maps induced by the identity on generators."""
    P = m.poset
    rg = [g for _, g in m.row_labels]
    cg = [g for _, g in m.col_labels]
    cols = [_bits(c) for c in m.entries.cols]
    quot = {}
    for x in P.nodes:
        rows_x = [i for i, g in enumerate(rg) if P.leq(g, x)]
        rels = [cols[j] for j, g in enumerate(cg) if P.leq(g, x)]
        quot[x] = _Quotient([1 << i for i in rows_x], rels)
    maps = {}
    for y, x in P.hasse_edges:
        maps[(y, x)] = [quot[x].coords(v) for v in quot[y].basis]
    return PointwiseModule(P, {x: len(q.basis) for x, q in quot.items()}, maps)


# --------------------------------------------------------- radical and Betti


def radical(M: PointwiseModule) -> Dict[str, int]:
    P = M.poset
    return {x: _rank(v for y in P.predecessors(x) for v in M.maps[(y, x)]) for x in P.nodes}


def _cover_of_subspaces(P: Poset, spaces: Dict[str, List[int]]) -> List[Tuple[str, int]]:
    """Minimal generators of a submodule of a constant ambient (structure maps = inclusion)."""
    gens = []
    for x in P.linext.order:
        e = _Echelon()
        for y in P.predecessors(x):
            for v in spaces[y]:
                e.add(v)
        for v in spaces[x]:
            if e.add(v):
                gens.append((x, v))
    return gens


def _kernel_spaces(P: Poset, gens: List[Tuple[str, int]], image_at) -> Dict[str, List[int]]:
    out = {}
    for x in P.nodes:
        idx = [i for i, (g, _) in enumerate(gens) if P.leq(g, x)]
        ker = _kernel([image_at(gens[i], x) for i in idx])
        out[x] = [_apply([1 << i for i in idx], k) for k in ker]
    return out


def minimal_betti(M: PointwiseModule, top: int = 2) -> Dict[str, Tuple[int, ...]]:
    """Per grade (beta_0, ..., beta_top) of a minimal projective resolution."""
    P = M.poset
    gens0 = []
    for x in P.linext.order:
        e = _Echelon()
        for y in P.predecessors(x):
            for v in M.maps[(y, x)]:
                e.add(v)
        for i in range(M.dims[x]):
            if e.add(1 << i):
                gens0.append((x, 1 << i))
    levels = [gens0]
    spaces = _kernel_spaces(P, gens0, lambda g, x: _apply(M.composite(g[0], x), g[1]))
    for _ in range(top):
        gens = _cover_of_subspaces(P, spaces)
        levels.append(gens)
        spaces = _kernel_spaces(P, gens, lambda g, x: g[1])
    out = {}
    for x in P.nodes:
        out[x] = tuple(sum(1 for g, _ in lev if g == x) for lev in levels[: top + 1])
    return out


# ------------------------------------------------------------------ verify


@dataclass
class CheckResult:
    invariant: str
    degree: int
    grade: Optional[str] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.grade is None

    def line(self) -> str:
        status = "PASS" if self.ok else f"FAIL @{self.grade}"
        return f"{self.invariant} degree {self.degree} {status}"


@dataclass
class Report:
    results: List[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> List[str]:
        return [r.line() for r in self.results]

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.ok]

    def __str__(self):
        return "\n".join(self.lines())


def _restrict(poset: Poset, rows, cols, col_vecs, x):
    """Columns of grade <= x, restricted to rows of grade <= x (as bitsets over global row ids)."""
    return [v for (_, g), v in zip(cols, col_vecs) if poset.leq(g, x)]


def _first_bad(P: Poset, pred) -> Optional[str]:
    for x in P.linext.order:
        if not pred(x):
            return x
    return None


def _alpha(pt: PointwiseTower, gens: Sequence[Tuple[str, str]], simplices: Sequence[Simplex],
           basis_x: Dict[Simplex, int], x: str) -> List[Optional[int]]:
    """Images of the generators under alpha at x; None for generators not alive (grade not <= x)."""
    P = pt.poset
    out: List[Optional[int]] = []
    for (_, g), s in zip(gens, simplices):
        if not P.leq(g, x):
            out.append(None)
            continue
        t = _image(pt, g, x, s)
        out.append(1 << basis_x[t] if len(t) == len(s) else 0)
    return out


def verify(tower: PosetTower, cp, pr=None, hp=None, degrees: Optional[Sequence[int]] = None,
           quick: bool = False) -> Report:
    """Run the pointwise invariant suite; one result per (invariant, degree)."""
    pt = materialize(tower)
    results: List[CheckResult] = []
    if degrees is None:
        degrees = range(max(cp.max_degree, 0) + 1)
    prs = pr if isinstance(pr, dict) else ({pr.degree: pr} if pr is not None else {})
    hps = hp if isinstance(hp, dict) else ({hp.degree: hp} if hp is not None else {})
    for l in degrees:
        results.extend(_verify_degree(pt, cp, l, quick))
        if l in prs:
            results.extend(_verify_pirep(pt, prs[l]))
        if l in hps:
            results.extend(_verify_homology(pt, hps[l], quick))
    return Report(results)


def _verify_degree(pt: PointwiseTower, cp, l: int, quick: bool) -> List[CheckResult]:
    P = pt.poset
    d = cp.degree(l)
    lo = cp.degree(l - 1) if l > 0 else None
    gens = list(d.gen_labels)
    simp = list(d.gen_simplex)
    rels = d.rel_labels
    p1 = [_bits(c) for c in d.p1_columns()]
    basis = chain_basis(pt, l)
    where = {x: {s: i for i, s in enumerate(b)} for x, b in basis.items()}
    lo_basis = chain_basis(pt, l - 1) if l > 0 else {x: [] for x in P.nodes}
    lo_where = {x: {s: i for i, s in enumerate(b)} for x, b in lo_basis.items()}
    bd = boundary(pt, l)
    out: List[CheckResult] = []

    def alive_rows(x):
        return [i for i, (_, g) in enumerate(gens) if P.leq(g, x)]

    # exactness at G: alpha p1 = 0, alpha onto, coker p1 has dim |K_l(x)|
    def exact_g(x):
        alpha = _alpha(pt, gens, simp, where[x], x)
        rows = alive_rows(x)
        a_imgs = [alpha[i] for i in rows]
        if _rank(a_imgs) != len(basis[x]):
            return False
        cols = _restrict(P, gens, rels, p1, x)
        full = [a if a is not None else 0 for a in alpha]
        if any(_apply(full, c) for c in cols):
            return False
        return len(rows) - _rank(cols) == len(basis[x])

    out.append(CheckResult("exactness_G", l, _first_bad(P, exact_g)))

    # lift property: alpha_{l-1} f_l = boundary alpha_l
    def lift(x):
        alpha = _alpha(pt, gens, simp, where[x], x)
        lo_alpha = (_alpha(pt, lo.gen_labels, lo.gen_simplex, lo_where[x], x) if lo is not None else [])
        lo_full = [a if a is not None else 0 for a in lo_alpha]
        for i in alive_rows(x):
            lhs = _apply(lo_full, _bits(d.f_cols[i])) if l > 0 else 0
            rhs = _apply(bd[x], alpha[i])
            if lhs != rhs:
                return False
        return True

    out.append(CheckResult("lift", l, _first_bad(P, lift)))

    C = chain_module(pt, l)
    rad = radical(C)
    out.append(CheckResult(
        "generator_minimality", l,
        _first_bad(P, lambda x: sum(1 for _, g in gens if g == x) == C.dims[x] - rad[x]),
    ))

    def rel_min(x):
        below = [v for (_, g), v in zip(rels, p1) if P.lt(g, x)]
        here = [v for (_, g), v in zip(rels, p1) if g == x]
        return _rank(below + here) - _rank(below) == len(here)

    out.append(CheckResult("relation_minimality", l, _first_bad(P, rel_min)))

    omega = 1 << len(gens)
    bar = [v | omega if bin(v).count("1") == 1 else v for v in p1]

    def graph(x):
        if any(bin(v).count("1") != 2 for v in bar):
            return False
        cols = _restrict(P, gens, rels, p1, x)
        bcols = _restrict(P, gens, rels, bar, x)
        return _rank(cols) == _rank(bcols)

    out.append(CheckResult("graph_structure", l, _first_bad(P, graph)))

    if cp.relrel:
        rr = d.rr_labels
        p2 = [_bits(c) for _, c in d.relrels]

        def exact_r(x):
            cols = _restrict(P, gens, rels, p1, x)
            c2 = _restrict(P, rels, rr, p2, x)
            if any(_apply(p1, v) for v in c2):
                return False
            return _rank(c2) == len(cols) - _rank(cols)

        out.append(CheckResult("exactness_R", l, _first_bad(P, exact_r)))
    if cp.reduce:
        rr = d.rr_labels
        p2 = [_bits(c) for _, c in d.relrels]

        def p2_min(x):
            below = [v for (_, g), v in zip(rr, p2) if P.lt(g, x)]
            here = [v for (_, g), v in zip(rr, p2) if g == x]
            return _rank(below + here) - _rank(below) == len(here)

        out.append(CheckResult("p2_minimality", l, _first_bad(P, p2_min)))

    if not quick:
        betti = minimal_betti(C, 2 if cp.reduce else 1)

        def betti_ok(x):
            b = betti[x]
            if sum(1 for _, g in gens if g == x) != b[0] or sum(1 for _, g in rels if g == x) != b[1]:
                return False
            if cp.reduce and sum(1 for (_, g), _ in d.relrels if g == x) != b[2]:
                return False
            return True

        out.append(CheckResult("betti_numbers", l, _first_bad(P, betti_ok)))

    gen_ids = {gid: k for k, gid in enumerate(d.gen_ids)}

    def active(x):
        lst = cp.active[x][l] if l < len(cp.active[x]) else {}
        if set(lst) != set(basis[x]):
            return False
        for s, gid in lst.items():
            k = gen_ids[gid]
            if _image(pt, gens[k][1], x, simp[k]) != s:
                return False
        return True

    out.append(CheckResult("active_bijection", l, _first_bad(P, active)))
    return out


def _pointwise_cols(m, x) -> Tuple[List[int], int]:
    P = m.poset
    rows = [i for i, (_, g) in enumerate(m.row_labels) if P.leq(g, x)]
    cols = [_bits(c) for (_, g), c in zip(m.col_labels, m.entries.cols) if P.leq(g, x)]
    return cols, len(rows)


def _verify_pirep(pt: PointwiseTower, pr) -> List[CheckResult]:
    P = pt.poset
    l = pr.degree
    h = homology_dims(pt, l)
    d1_cols = [_bits(c) for c in pr.d_l.entries.cols]

    def chain(x):
        return not any(_apply(d1_cols, _bits(c)) for c in pr.d_next.entries.cols)

    def dims(x):
        a, _ = _pointwise_cols(pr.d_l, x)
        b, _ = _pointwise_cols(pr.d_next, x)
        return len(a) - _rank(a) - _rank(b) == h[x]

    return [
        CheckResult("pirep_chain", l, _first_bad(P, chain)),
        CheckResult("pirep_homology", l, _first_bad(P, dims)),
    ]


def _verify_homology(pt: PointwiseTower, hp, quick: bool) -> List[CheckResult]:
    P = pt.poset
    l = hp.degree
    h = homology_dims(pt, l)

    def dims(x):
        cols, n = _pointwise_cols(hp.matrix, x)
        return n - _rank(cols) == h[x]

    out = [CheckResult("homology_presentation", l, _first_bad(P, dims))]
    if hp.minimized and not quick:
        betti = minimal_betti(homology_module(pt, l), 1)
        gens = hp.matrix.row_labels
        rels = hp.matrix.col_labels

        def minimal(x):
            return (sum(1 for _, g in gens if g == x), sum(1 for _, g in rels if g == x)) == betti[x][:2]

        out.append(CheckResult("homology_minimality", l, _first_bad(P, minimal)))
    return out
