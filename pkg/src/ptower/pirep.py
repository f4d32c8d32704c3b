"""Projective implicit representation of H_l from the chain-module resolutions.

The middle homology of

    G_{l-1}  <--d_l--  G_l + R_{l-1}  <--d_{l+1}--  G_{l+1} + R_l + RR_{l-1}

is H_l, with d_l = (f_l | p1_{l-1}) and d_{l+1} = [[f_{l+1}, p1_l, 0], [theta, gamma, p2_{l-1}]].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .gf2 import GradedMatrix, Label, block, multiply
from .graph_solver import OpCounter, constrained_lift
from .presentation import ChainPresentation


class MissingRelRel(ValueError):
    pass


class ChainConditionError(AssertionError):
    pass


@dataclass
class PiRep:
    degree: int
    codomain: List[Label]
    middle: List[Label]
    domain: List[Label]
    d_l: GradedMatrix
    d_next: GradedMatrix
    gamma: GradedMatrix
    theta: GradedMatrix

    @property
    def poset(self):
        return self.d_l.poset


def compute_gamma(cp: ChainPresentation, l: int, ops: Optional[OpCounter] = None) -> GradedMatrix:
    """Lift of f_l . p1_l along p1_{l-1}."""
    target = multiply(cp.f(l), cp.p1(l))
    return constrained_lift(cp.p1(l - 1), target, ops)


def compute_theta(cp: ChainPresentation, l: int, ops: Optional[OpCounter] = None) -> GradedMatrix:
    """Lift of f_l . f_{l+1} along p1_{l-1}."""
    target = multiply(cp.f(l), cp.f(l + 1))
    return constrained_lift(cp.p1(l - 1), target, ops)


def assemble_pirep(cp: ChainPresentation, l: int) -> PiRep:
    if not cp.relrel:
        raise MissingRelRel("relations of relations were not computed")
    P = cp.poset
    lo, mid, hi = cp.degree(l - 1), cp.degree(l), cp.degree(l + 1)
    g_lo = lo.gen_labels if l > 0 else []
    r_lo = lo.rel_labels if l > 0 else []
    rr_lo = lo.rr_labels if l > 0 else []
    g_mid, r_mid, g_hi = mid.gen_labels, mid.rel_labels, hi.gen_labels

    gamma = compute_gamma(cp, l)
    theta = compute_theta(cp, l)
    p1_lo = cp.p1(l - 1)
    d_l = block(P, [g_lo], [g_mid, r_lo], [[cp.f(l), p1_lo]])
    d_next = block(
        P,
        [g_mid, r_lo],
        [g_hi, r_mid, rr_lo],
        [[cp.f(l + 1), cp.p1(l), None], [theta, gamma, cp.p2(l - 1)]],
    )
    if not multiply(d_l, d_next).entries.is_zero():
        raise ChainConditionError(f"d_{l} . d_{l + 1} != 0")
    return PiRep(l, list(g_lo), list(g_mid) + list(r_lo), list(g_hi) + list(r_mid) + list(rr_lo),
                 d_l, d_next, gamma, theta)
