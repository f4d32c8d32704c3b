"""Sparse GF(2) matrices and graded matrices between projective modules.

Columns are stored as strictly increasing tuples of row indices.  Elimination
converts columns to Python int bitsets, where XOR is column addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poset import Poset

Column = Tuple[int, ...]
Label = Tuple[str, str]  # (label, grade)


class DimensionMismatch(ValueError):
    pass


class GradingError(ValueError):
    pass


def to_bits(col: Iterable[int]) -> int:
    b = 0
    for i in col:
        b ^= 1 << i
    return b


def from_bits(b: int) -> Column:
    out = []
    while b:
        low = b & -b
        out.append(low.bit_length() - 1)
        b ^= low
    return tuple(out)


class Gf2Matrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, cols: Sequence[Iterable[int]]):
        self.nrows = nrows
        self.cols: Tuple[Column, ...] = tuple(tuple(c) for c in cols)
        self.ncols = len(self.cols)
        for j, c in enumerate(self.cols):
            for a, b in zip(c, c[1:]):
                if a >= b:
                    raise ValueError(f"column {j}: row indices not strictly increasing")
            if c and (c[0] < 0 or c[-1] >= nrows):
                raise ValueError(f"column {j}: row index out of range")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, [()] * ncols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, [(i,) for i in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "Gf2Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [tuple(i for i in range(nrows) if rows[i][j] % 2) for j in range(ncols)]
        return cls(nrows, cols)

    @classmethod
    def from_bitcols(cls, nrows: int, bits: Iterable[int]) -> "Gf2Matrix":
        return cls(nrows, [from_bits(b) for b in bits])

    def bitcols(self) -> List[int]:
        return [to_bits(c) for c in self.cols]

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i in c:
                out[i][j] = 1
        return out

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.nrows == other.nrows and self.cols == other.cols

    def __hash__(self):
        return hash((self.nrows, self.cols))

    def __repr__(self):
        return f"Gf2Matrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Gf2Matrix":
        where = {r: k for k, r in enumerate(rows)}
        out = []
        for j in cols:
            out.append(tuple(sorted(where[i] for i in self.cols[j] if i in where)))
        return Gf2Matrix(len(rows), out)

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        mine = self.bitcols()
        out = []
        for c in other.cols:
            b = 0
            for k in c:
                b ^= mine[k]
            out.append(b)
        return Gf2Matrix.from_bitcols(self.nrows, out)

    def is_zero(self) -> bool:
        return not any(self.cols)


@dataclass
class Reduction:
    """Left-to-right column reduction.

    ``reduced[j]`` equals the XOR of the original columns in ``transform[j]``
    (a bitset over column indices with bit ``j`` always set).
    """

    reduced: Gf2Matrix
    transform: List[int]
    pivots: Dict[int, int]  # pivot row -> column
    zeroed: List[int]


def _reduce_bits(cols: Sequence[int]) -> Tuple[List[int], List[int], Dict[int, int]]:
    cols = list(cols)
    transform = [1 << j for j in range(len(cols))]
    pivots: Dict[int, int] = {}
    for j in range(len(cols)):
        c = cols[j]
        t = transform[j]
        while c:
            low = c.bit_length() - 1
            k = pivots.get(low)
            if k is None:
                pivots[low] = j
                break
            c ^= cols[k]
            t ^= transform[k]
        cols[j] = c
        transform[j] = t
    return cols, transform, pivots


def column_reduce(m: Gf2Matrix) -> Reduction:
    cols, transform, pivots = _reduce_bits(m.bitcols())
    zeroed = [j for j, c in enumerate(cols) if not c]
    return Reduction(Gf2Matrix.from_bitcols(m.nrows, cols), transform, pivots, zeroed)


def rank(m: Gf2Matrix) -> int:
    return len(_reduce_bits(m.bitcols())[2])


def kernel_basis(m: Gf2Matrix) -> List[Column]:
    """Basis of the null space, as column-index supports."""
    cols, transform, _ = _reduce_bits(m.bitcols())
    return [from_bits(transform[j]) for j, c in enumerate(cols) if not c]


def solve(m: Gf2Matrix, b: Iterable[int]) -> Optional[Column]:
    """Some ``x`` with ``m x = b`` (as a support tuple), or ``None`` when there is none."""
    cols, transform, pivots = _reduce_bits(m.bitcols())
    rhs = to_bits(b)
    t = 0
    while rhs:
        low = rhs.bit_length() - 1
        k = pivots.get(low)
        if k is None:
            return None
        rhs ^= cols[k]
        t ^= transform[k]
    return from_bits(t)


class GradedMatrix:
    """Morphism between direct sums of elementary projectives.

    Entry ``(j, i)`` may be nonzero only if grade(row j) <= grade(col i).
    """

    def __init__(
        self,
        poset: Poset,
        row_labels: Sequence[Label],
        col_labels: Sequence[Label],
        entries: Gf2Matrix,
        check: bool = True,
    ):
        self.poset = poset
        self.row_labels: Tuple[Label, ...] = tuple(row_labels)
        self.col_labels: Tuple[Label, ...] = tuple(col_labels)
        self.entries = entries
        if entries.nrows != len(self.row_labels) or entries.ncols != len(self.col_labels):
            raise DimensionMismatch(
                f"entries {entries.shape} vs labels {len(self.row_labels)}x{len(self.col_labels)}"
            )
        if check:
            self._check()

    def _check(self) -> None:
        for which, labels in (("row", self.row_labels), ("column", self.col_labels)):
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate {which} labels")
            for _, g in labels:
                if g not in self.poset:
                    raise GradingError(f"unknown grade {g!r} in {which} labels")
        P = self.poset
        rg = [P.index[g] for _, g in self.row_labels]
        for i, c in enumerate(self.entries.cols):
            cg = P.index[self.col_labels[i][1]]
            for j in c:
                if not P.leq_index(rg[j], cg):
                    raise GradingError(
                        f"entry ({self.row_labels[j]}, {self.col_labels[i]}) violates grading"
                    )

    @classmethod
    def from_columns(
        cls, poset: Poset, row_labels: Sequence[Label], col_labels: Sequence[Label],
        cols: Sequence[Iterable[int]], check: bool = True,
    ) -> "GradedMatrix":
        return cls(poset, row_labels, col_labels, Gf2Matrix(len(row_labels), [sorted(c) for c in cols]), check)

    @classmethod
    def empty(cls, poset: Poset, row_labels: Sequence[Label] = (), col_labels: Sequence[Label] = ()) -> "GradedMatrix":
        return cls(poset, row_labels, col_labels, Gf2Matrix.zeros(len(row_labels), len(col_labels)))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def cols(self) -> Tuple[Column, ...]:
        return self.entries.cols

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"GradedMatrix({len(self.row_labels)}x{len(self.col_labels)}, nnz={self.entries.nnz})"

    def column_support(self, i: int) -> List[Label]:
        return [self.row_labels[j] for j in self.entries.cols[i]]

    def grade_key(self, label: Label, insertion: int) -> Tuple[int, int]:
        return (self.poset.linext.position[label[1]], insertion)

    def col_order(self) -> List[int]:
        """Column indices sorted by (linear-extension position of grade, insertion id)."""
        pos = self.poset.linext.position
        return sorted(range(len(self.col_labels)), key=lambda i: (pos[self.col_labels[i][1]], i))

    def row_indices_at(self, x: str) -> List[int]:
        P = self.poset
        j = P.index[x]
        return [k for k, (_, g) in enumerate(self.row_labels) if P.leq_index(P.index[g], j)]

    def col_indices_at(self, x: str) -> List[int]:
        P = self.poset
        j = P.index[x]
        return [k for k, (_, g) in enumerate(self.col_labels) if P.leq_index(P.index[g], j)]

    def restrict_at(self, x: str) -> Tuple[Gf2Matrix, List[int], List[int]]:
        """The linear map M(x): rows and columns whose grade is <= x, in label order."""
        if x not in self.poset:
            from .poset import UnknownNodeError

            raise UnknownNodeError(f"unknown node {x!r}")
        rows = self.row_indices_at(x)
        cols = self.col_indices_at(x)
        return self.entries.submatrix(rows, cols), rows, cols

    def select_columns(self, idx: Sequence[int]) -> "GradedMatrix":
        return GradedMatrix(
            self.poset, self.row_labels, [self.col_labels[i] for i in idx],
            Gf2Matrix(self.entries.nrows, [self.entries.cols[i] for i in idx]), check=False,
        )

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        return multiply(self, other)


def multiply(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    if a.col_labels != b.row_labels:
        raise DimensionMismatch("column labels of the left factor must equal row labels of the right")
    return GradedMatrix(a.poset, a.row_labels, b.col_labels, a.entries @ b.entries)


def graded_identity(poset: Poset, labels: Sequence[Label]) -> GradedMatrix:
    return GradedMatrix(poset, labels, labels, Gf2Matrix.identity(len(labels)))


def block(poset: Poset, row_groups: Sequence[Sequence[Label]], col_groups: Sequence[Sequence[Label]],
          blocks: Sequence[Sequence[Optional[GradedMatrix]]]) -> GradedMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    offsets = [0]
    for g in row_groups:
        offsets.append(offsets[-1] + len(g))
    rows = [l for g in row_groups for l in g]
    cols: List[List[int]] = []
    for bj, cg in enumerate(col_groups):
        for i in range(len(cg)):
            c: List[int] = []
            for bi, rg in enumerate(row_groups):
                m = blocks[bi][bj]
                if m is None:
                    continue
                if m.row_labels != tuple(rg) or m.col_labels != tuple(cg):
                    raise DimensionMismatch(f"block ({bi}, {bj}) labels do not match")
                c.extend(offsets[bi] + r for r in m.entries.cols[i])
            cols.append(c)
    return GradedMatrix.from_columns(poset, rows, [l for g in col_groups for l in g], cols)
