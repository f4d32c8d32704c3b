"""Command-line front end: ``ptower <command> ...``."""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import List, Optional

from .generate import gen_chain, gen_grid, gen_random, gen_zigzag
from .homology import homology_presentation
from .io import dump_matrix, dump_tower, load_tower, relation_lines
from .oracle import verify
from .pirep import assemble_pirep
from .presentation import run_presentation
from .tower import materialize


def _degrees(args, top: int) -> List[int]:
    if getattr(args, "degree", None) is not None:
        return [args.degree]
    return list(range(top + 1))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_presentation(args) -> int:
    t = load_tower(args.file)
    cp = run_presentation(t, relrel=args.relrel or args.reduce, reduce=args.reduce)
    parts = []
    for l in _degrees(args, cp.max_degree):
        p1 = cp.p1(l)
        parts.append(dump_matrix("p1", l, p1))
        if cp.relrel:
            parts.append(dump_matrix("p2", l, cp.p2(l)))
        parts.append(dump_matrix("f", l, cp.f(l)))
        parts.append(f"relations degree {l}\n" + relation_lines(p1))
        if cp.relrel:
            parts.append(f"relrels degree {l}\n" + relation_lines(cp.p2(l)))
        g, r, rr = cp.degree(l).counts()
        print(f"degree {l}: generators {g} relations {r} relrels {rr}", file=sys.stderr)
    print(f"time {cp.seconds:.6f}s n {t.n} t0 {t.poset.t0} t1 {t.poset.t1}", file=sys.stderr)
    _emit("".join(parts), args.out)
    return 0


def cmd_pirep(args) -> int:
    t = load_tower(args.file)
    cp = run_presentation(t, relrel=True, reduce=True)
    pr = assemble_pirep(cp, args.degree)
    text = dump_matrix("d", args.degree, pr.d_l) + dump_matrix("d", args.degree + 1, pr.d_next)
    _emit(text, args.out)
    return 0


def cmd_homology(args) -> int:
    t = load_tower(args.file)
    cp = run_presentation(t, relrel=True, reduce=True)
    hp = homology_presentation(assemble_pirep(cp, args.degree), minimize=args.minimize)
    text = dump_matrix("homology", args.degree, hp.matrix)
    text += f"relations degree {args.degree}\n" + relation_lines(hp.matrix)
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    t = load_tower(args.file)
    start = time.perf_counter()
    cp = run_presentation(t, relrel=True, reduce=True)
    degrees = _degrees(args, cp.max_degree)
    prs = {l: assemble_pirep(cp, l) for l in degrees}
    hps = {l: homology_presentation(p) for l, p in prs.items()}
    report = verify(t, cp, prs, hps, degrees=degrees, quick=args.quick)
    print(report)
    print(f"time {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return 0 if report.ok else 1


def _seed(args) -> int:
    env = os.environ.get("PTOWER_SEED")
    return int(env) if env is not None else args.seed


def cmd_gen(args) -> int:
    seed = _seed(args)
    if args.kind == "grid":
        t = gen_grid(seed, args.nx, args.ny, args.fill, args.verts)
    elif args.kind == "chain":
        t = gen_chain(seed, args.len, args.simplices)
    elif args.kind == "zigzag":
        t = gen_zigzag(seed, args.len, args.gens, args.events)
    else:
        t = gen_random(seed, args.nodes, args.edges, args.gens, args.events)
    _emit(dump_tower(t, f"gen {args.kind} seed {seed}"), args.out)
    return 0


def cmd_stats(args) -> int:
    t = load_tower(args.file)
    pt = materialize(t)
    lines = [f"n {t.n}", f"t0 {t.poset.t0}", f"t1 {t.poset.t1}", f"events {len(t.events)}"]
    for l in range(t.max_degree + 1):
        gens = sum(1 for g in t.generators if g.degree == l)
        widest = max(sum(1 for s in pt.complexes[x] if len(s) == l + 1) for x in t.poset.nodes)
        lines.append(f"degree {l} generators {gens} max_simplices {widest}")
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptower", description="Presentations and PiReps of poset towers over GF(2).")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("presentation", help="minimal presentations p1 (and p2) of the chain modules")
    s.add_argument("file")
    s.add_argument("--degree", type=int)
    s.add_argument("--relrel", action="store_true")
    s.add_argument("--reduce", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_presentation)

    s = sub.add_parser("pirep", help="projective implicit representation of H_L")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_pirep)

    s = sub.add_parser("homology", help="presentation of H_L")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--minimize", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("verify", help="check every invariant against the pointwise oracle")
    s.add_argument("file")
    s.add_argument("--degree", type=int)
    s.add_argument("--quick", action="store_true", help="skip Betti-number checks")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="emit a generated tower file")
    gs = s.add_subparsers(dest="kind", required=True)
    g = gs.add_parser("grid")
    g.add_argument("--nx", type=int, default=4)
    g.add_argument("--ny", type=int, default=4)
    g.add_argument("--fill", type=float, default=0.5)
    g.add_argument("--verts", type=int)
    g = gs.add_parser("chain")
    g.add_argument("--len", type=int, default=5)
    g.add_argument("--simplices", type=int, default=10)
    g = gs.add_parser("random")
    g.add_argument("--nodes", type=int, default=8)
    g.add_argument("--edges", type=int, default=12)
    g.add_argument("--gens", type=int, default=12)
    g.add_argument("--events", type=int, default=3)
    g = gs.add_parser("zigzag")
    g.add_argument("--len", type=int, default=6)
    g.add_argument("--gens", type=int, default=10)
    g.add_argument("--events", type=int, default=2)
    for g in gs.choices.values():
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="sizes of a tower file")
    s.add_argument("file")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"ptower: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
