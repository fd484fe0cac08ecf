"""Recursive construction trace for elementary parameters.

For an elementary pair (psi, eps) we compute the per-rho cuspidal bounds
and unwind the inductive construction into a symbolic tree whose leaves
are supercuspidal pairs.  Nothing representation-theoretic is claimed:
nodes record the inducing segments and child pairs exactly as the
recursion prescribes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import AmbiguousChoice, DomainError, NotElementary
from .halfint import HalfInt
from .labels import RhoLabel
from .params import (MINUS, PLUS, ArthurParameter, diagonal_restriction,
                     elementary_alpha, elementary_block, elementary_delta,
                     elementary_jord_rho, is_elementary)
from .segments import EpsMap, Segment, supercuspidal_test

INFINITY = None  # sentinel for "no next block"

SUPERCUSPIDAL_BASE = "supercuspidal_base"
CASE2_SHIFT = "case2_shift"
CASE3A = "case3a"
CASE3B = "case3b"
CASE3C_I = "case3c_i"
CASE3C_II = "case3c_ii"


def _check_elementary(psi: ArthurParameter) -> None:
    if not is_elementary(psi):
        raise NotElementary("construction requires an elementary parameter")


def _eps_map(psi: ArthurParameter, eps) -> EpsMap:
    """Characters of elementary parameters keyed by (rho id, alpha)."""
    if isinstance(eps, EpsMap):
        return eps
    values = {}
    for blk, sg in zip(psi.classes(), eps.signs):
        values[(blk.rho.id, elementary_alpha(blk))] = sg
    return EpsMap(values)


def rho_cuspidal_bound(psi: ArthurParameter, eps, rho: RhoLabel
                       ) -> Tuple[int, Optional[int], Optional[int]]:
    """Largest prefix bound b, and the first size a > b with its delta.

    b is the largest element of the rho-sizes (or zero) such that the
    sizes up to b form a gapless alternating chain with the bottom even
    size carrying -1; a is None when no size exceeds b.
    """
    _check_elementary(psi)
    eps = _eps_map(psi, eps)
    jord = elementary_jord_rho(psi, rho)
    sizes = sorted(jord)

    def cuspidal_up_to(b: int) -> bool:
        chain = [al for al in sizes if al <= b]
        for al in chain:
            if al - 2 > 0 and (al - 2) not in chain:
                return False
            if (al - 2) in chain and \
                    eps[(rho.id, al)] * eps[(rho.id, al - 2)] != -1:
                return False
        if 2 in chain and eps[(rho.id, 2)] != -1:
            return False
        return True

    b = 0
    for cand in sizes:
        if cuspidal_up_to(cand):
            b = max(b, cand)
    above = [al for al in sizes if al > b]
    if not above:
        return b, None, None
    a = min(above)
    return b, a, jord[a]


@dataclass(frozen=True)
class ConstructionStep:
    """One node of the construction trace."""

    case_tag: str
    rho_id: Optional[str]
    inducing: Tuple[Segment, ...]
    annotations: Tuple[Tuple[str, str], ...]
    children: Tuple["ConstructionNode", ...]


@dataclass(frozen=True)
class ConstructionNode:
    psi: ArthurParameter
    eps: EpsMap
    step: ConstructionStep

    def leaves(self) -> List["ConstructionNode"]:
        if not self.step.children:
            return [self]
        out = []
        for child in self.step.children:
            out.extend(child.leaves())
        return out

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.step.children)


def _with_sizes(psi: ArthurParameter, rho: RhoLabel,
                changes: Dict[int, Optional[Tuple[int, int]]]
                ) -> ArthurParameter:
    """Rewrite rho-blocks by alpha: alpha -> None removes, (alpha', delta')
    replaces; dimension drops are absorbed into the group rank."""
    blocks = []
    removed_dim = 0
    for blk in psi.blocks:
        if blk.rho.id == rho.id:
            alpha = elementary_alpha(blk)
            if alpha in changes:
                tgt = changes[alpha]
                if tgt is None:
                    removed_dim += blk.dim
                    continue
                alpha2, delta2 = tgt
                nb = elementary_block(blk.rho, alpha2, delta2)
                removed_dim += blk.dim - nb.dim
                blocks.append(nb)
                continue
        blocks.append(blk)
    if removed_dim % 2:
        raise DomainError("odd dimension drop")  # pragma: no cover
    group = type(psi.group)(psi.group.kind, psi.group.n - removed_dim // 2,
                            psi.group.eta)
    return ArthurParameter(group, tuple(blocks))


def _seg(rho: RhoLabel, x_twice: int, y_twice: int) -> Segment:
    return Segment(rho, HalfInt(x_twice), HalfInt(y_twice))


def construction_trace(psi: ArthurParameter, eps,
                       case3ci_branch: Optional[int] = PLUS
                       ) -> ConstructionNode:
    """Unwind the construction of an elementary pair into a tree.

    case3ci_branch fixes the two-element labelling choice that the
    construction leaves open when only two rho-sizes are present; it is
    recorded in the node annotations.  Passing None surfaces the choice
    as an AmbiguousChoice error instead of picking a side.
    """
    _check_elementary(psi)
    eps = _eps_map(psi, eps)
    if set(eps.values) != {(b.rho.id, elementary_alpha(b))
                           for b in psi.blocks} or eps.product() != 1:
        from .errors import NotACharacter
        raise NotACharacter("character must match the blocks with product 1")

    bounds = {}
    for rho in psi.rho_labels():
        b, a, delta = rho_cuspidal_bound(psi, eps, rho)
        if a is not None:
            bounds[rho.id] = (rho, b, a, delta)

    if not bounds:
        phi_cusp = diagonal_restriction(psi)
        if not supercuspidal_test(phi_cusp, EpsMap(dict(eps.values))):
            raise DomainError(
                "fully cuspidal pair fails the supercuspidal conditions"
            )  # pragma: no cover
        step = ConstructionStep(SUPERCUSPIDAL_BASE, None, (), (), ())
        return ConstructionNode(psi, eps, step)

    rho, b, a, delta = bounds[sorted(bounds)[0]]
    jord = elementary_jord_rho(psi, rho)
    sizes = sorted(jord)

    def drop(vals: EpsMap, *keys) -> Dict:
        return {k: v for k, v in vals.values.items() if k not in keys}

    if a > b + 2 or b == 0:
        # lower the first non-cuspidal size by two
        seg = _seg(rho, (a - 1) * delta, (a - 1) * delta)
        if a - 2 >= 1:
            psi2 = _with_sizes(psi, rho, {a: (a - 2, delta)})
            vals = drop(eps, (rho.id, a))
            vals[(rho.id, a - 2)] = eps[(rho.id, a)]
        else:
            psi2 = _with_sizes(psi, rho, {a: None})
            vals = drop(eps, (rho.id, a))
        child = construction_trace(psi2, EpsMap(vals), case3ci_branch)
        step = ConstructionStep(CASE2_SHIFT, rho.id, (seg,), (), (child,))
        return ConstructionNode(psi, eps, step)

    # now a == b + 2; the parities of the rho-sizes decide the sub-case
    parity = a % 2

    if parity == 0 and b != 0:
        # even sizes: flip the cuspidal chain below b and negate its signs
        changes: Dict[int, Optional[Tuple[int, int]]] = {a: None}
        vals = drop(eps, (rho.id, a))
        for al in sizes:
            if al <= b:
                changes[al] = (al, -delta)
                vals[(rho.id, al)] = -eps[(rho.id, al)]
        psi_minus = _with_sizes(psi, rho, changes)
        child_minus = construction_trace(psi_minus, EpsMap(vals),
                                         case3ci_branch)
        psi_prime = _with_sizes(psi, rho, {a: None, b: None})
        vals_p = drop(eps, (rho.id, a), (rho.id, b))
        child_prime = construction_trace(psi_prime, EpsMap(vals_p),
                                         case3ci_branch)
        segs = (_seg(rho, (a - 1) * delta, delta),
                _seg(rho, (a - 1) * delta, -(b - 1) * delta))
        step = ConstructionStep(CASE3A, rho.id, segs, (),
                                (child_minus, child_prime))
        return ConstructionNode(psi, eps, step)

    if parity == 1 and b != 1:
        # odd sizes: two embeddings meet in a common subrepresentation
        changes = {a: None, 1: None}
        vals = drop(eps, (rho.id, a), (rho.id, 1))
        for al in sizes:
            if 1 < al <= b:
                changes[al] = (al, -delta)
                vals[(rho.id, al)] = -eps[(rho.id, al)]
        psi_minus = _with_sizes(psi, rho, changes)
        child_minus = construction_trace(psi_minus, EpsMap(vals),
                                         case3ci_branch)
        psi_prime = _with_sizes(psi, rho, {a: None, b: None})
        vals_p = drop(eps, (rho.id, a), (rho.id, b))
        child_prime = construction_trace(psi_prime, EpsMap(vals_p),
                                         case3ci_branch)
        segs = (_seg(rho, (a - 1) * delta, 0),
                _seg(rho, (a - 1) * delta, -(b - 1) * delta))
        step = ConstructionStep(CASE3B, rho.id, segs, (),
                                (child_minus, child_prime))
        return ConstructionNode(psi, eps, step)

    if (a, b) != (3, 1):
        raise DomainError(f"unexpected case a={a}, b={b}")  # pragma: no cover

    # a = 3 over b = 1: branch choice inside a length-two socle
    psi_prime = _with_sizes(psi, rho, {3: None, 1: None})
    vals_p = drop(eps, (rho.id, 3), (rho.id, 1))
    child = construction_trace(psi_prime, EpsMap(vals_p), case3ci_branch)
    delta3 = jord[3]
    remaining = sorted(al for al in sizes if al > 3)
    if not remaining:
        if case3ci_branch is None:
            raise AmbiguousChoice(
                "two-size case needs an explicit labelling branch")
        zeta = eps[(rho.id, 3)] * delta3 * case3ci_branch
        tag, notes = CASE3C_I, (("choice", "+" if case3ci_branch == PLUS
                                 else "-"),)
    else:
        a_next = remaining[0]
        delta_next = jord[a_next]
        zeta = (eps[(rho.id, a_next)] * delta_next
                * eps[(rho.id, 3)] * delta3)
        tag, notes = CASE3C_II, (("a_next", str(a_next)),)
    segs = (_seg(rho, 2 * delta3, 2 * delta3), _seg(rho, 0, 0))
    step = ConstructionStep(tag, rho.id, segs,
                            notes + (("branch", "+" if zeta == PLUS else "-"),),
                            (child,))
    return ConstructionNode(psi, eps, step)


def aubert_chain(psi: ArthurParameter
                 ) -> List[Tuple[RhoLabel, int, bool]]:
    """Flip instructions whose composition rebuilds psi from its all-plus
    form: for each block with delta -1, first the non-strict then the
    strict flip at its size."""
    _check_elementary(psi)
    out = []
    for blk in sorted(psi.blocks, key=lambda b: (b.rho.id,
                                                 elementary_alpha(b))):
        if elementary_delta(blk) == MINUS:
            alpha = elementary_alpha(blk)
            out.append((blk.rho, alpha, False))
            out.append((blk.rho, alpha, True))
    return out


def all_plus_form(psi: ArthurParameter) -> ArthurParameter:
    """The elementary parameter with every delta raised to +1."""
    _check_elementary(psi)
    blocks = [elementary_block(b.rho, elementary_alpha(b), PLUS)
              for b in psi.blocks]
    return ArthurParameter(psi.group, tuple(blocks))
