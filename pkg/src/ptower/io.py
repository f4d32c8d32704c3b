"""Tower file parsing and canonical text serialization."""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Tuple, Union

from .gf2 import GradedMatrix
from .poset import Poset
from .tower import EdgeEvent, PosetTower, SimplexGenerator, TowerError, validate


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_tower(text: str, check: bool = True) -> PosetTower:
    """Parse the ``poset`` / ``tower`` text format."""
    section: Optional[str] = None
    nodes: List[str] = []
    edges: List[Tuple[str, str]] = []
    gens: List[Tuple[int, str, Tuple[str, ...]]] = []
    events: List[Tuple[int, EdgeEvent]] = []
    first = True
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head, args = words[0], words[1:]
        if first and head != "poset":
            raise ParseError(no, "file must start with 'poset'")
        first = False
        if head == "poset":
            if section is not None or args:
                raise ParseError(no, "unexpected 'poset'")
            section = "poset"
        elif head == "tower":
            if section != "poset" or args:
                raise ParseError(no, "unexpected 'tower'")
            section = "tower"
        elif head == "node" and section == "poset":
            if len(args) != 1:
                raise ParseError(no, "usage: node <id>")
            nodes.append(args[0])
        elif head == "edge" and section == "poset":
            if len(args) != 2:
                raise ParseError(no, "usage: edge <pred> <succ>")
            edges.append((args[0], args[1]))
        elif head == "gen" and section == "tower":
            if len(args) < 2:
                raise ParseError(no, "usage: gen <grade> <v1> [v2 ...]")
            verts = args[1:]
            if len(set(verts)) != len(verts):
                raise ParseError(no, "repeated vertex in simplex")
            gens.append((no, args[0], tuple(sorted(verts))))
        elif head == "event" and section == "tower":
            if len(args) != 4:
                raise ParseError(no, "usage: event <from> <to> <v> <w>")
            events.append((no, EdgeEvent(*args)))
        else:
            raise ParseError(no, f"unknown directive {head!r}" + (f" in section {section}" if section else ""))
    if first:
        raise ParseError(1, "file must start with 'poset'")
    poset = Poset(nodes, edges)
    for no, x, _ in gens:
        if x not in poset:
            raise ParseError(no, f"unknown grade {x!r}")
    for no, e in events:
        for x in (e.from_grade, e.to_grade):
            if x not in poset:
                raise ParseError(no, f"unknown grade {x!r}")
    tower = PosetTower(
        poset,
        [SimplexGenerator(i, s, x) for i, (_, x, s) in enumerate(gens)],
        [e for _, e in events],
    )
    if check:
        report = validate(tower)
        if not report.ok:
            raise TowerError("invalid tower: " + "; ".join(report.violations))
    return tower


def load_tower(path: Union[str, Path], check: bool = True) -> PosetTower:
    return parse_tower(Path(path).read_text(), check=check)


def dump_tower(t: PosetTower, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append("poset")
    out.extend(f"node {x}" for x in t.poset.nodes)
    out.extend(f"edge {a} {b}" for a, b in t.poset.hasse_edges)
    out.append("tower")
    out.extend(f"gen {g.grade} {' '.join(g.simplex)}" for g in t.generators)
    out.extend(f"event {e.from_grade} {e.to_grade} {e.source} {e.target}" for e in t.events)
    return "\n".join(out) + "\n"


def dump_matrix(name: str, degree: int, m: GradedMatrix) -> str:
    out = [f"matrix {name} degree {degree} rows {len(m.row_labels)} cols {len(m.col_labels)}"]
    out.extend(f"row {i} {lab}@{g}" for i, (lab, g) in enumerate(m.row_labels))
    for j, (lab, g) in enumerate(m.col_labels):
        rows = " ".join(str(i) for i in m.entries.cols[j])
        out.append(f"col {j} {lab}@{g} : {rows}".rstrip())
    return "\n".join(out) + "\n"


def parse_matrices(text: str, poset: Poset) -> List[Tuple[str, int, GradedMatrix]]:
    """Inverse of ``dump_matrix`` for a concatenation of blocks."""
    blocks: List[Tuple[str, int, GradedMatrix]] = []
    lines = [l for l in text.splitlines() if l.strip()]
    i = 0
    while i < len(lines):
        w = lines[i].split()
        if w[0] != "matrix":
            i += 1
            continue
        name, degree, nr, nc = w[1], int(w[3]), int(w[5]), int(w[7])
        rows, cols, col_labels = [], [], []
        for k in range(nr):
            lab = lines[i + 1 + k].split()[2]
            rows.append(tuple(lab.rsplit("@", 1)))
        for k in range(nc):
            head, rest = lines[i + 1 + nr + k].rsplit(" :", 1)
            lab = head.split()[2]
            col_labels.append(tuple(lab.rsplit("@", 1)))
            cols.append([int(v) for v in rest.split()])
        blocks.append((name, degree, GradedMatrix.from_columns(poset, rows, col_labels, cols)))
        i += 1 + nr + nc
    return blocks


def relation_lines(m: GradedMatrix) -> str:
    """Readable column listing such as ``r0@x3: g:v@x1 g:v@x2``."""
    out = []
    for j, (lab, g) in enumerate(m.col_labels):
        sup = " ".join(f"{a}@{b}" for a, b in m.column_support(j))
        out.append(f"{lab}@{g}: {sup}".rstrip())
    return "\n".join(out) + ("\n" if out else "")
