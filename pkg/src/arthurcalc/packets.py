"""The two-function parametrization of packet constituents.

Constituents of a packet are labelled by a pair of functions (l, eta) on
the blocks, subject to a per-block range bound.  The attached character,
the two equivalence relations, and the translation between the M- and
W-side labellings all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .charspace import (CLASS, MULT, S_GT_HAT_SIGMA0, SignVector,
                        in_character_space, vector_on_instances)
from .errors import DomainError, NotACharacter, OutOfRange, TooLarge
from .halfint import HalfInt, bracket_sign, hrange, sign_pow
from .params import (SO_EVEN, ArthurParameter, BlockOrder, JordanBlock,
                     classify)
from .signs import eps_m_w

ENUM_BOUND = 14


def l_range_max(blk: JordanBlock) -> int:
    """[(A - B + 1)/2], the inclusive upper bound for l at a block."""
    return (int(blk.A - blk.B) + 1) // 2


@dataclass(frozen=True)
class LEtaPair:
    """Functions l (segment count) and eta (sign) on the block instances."""

    l: Tuple[int, ...]
    eta: Tuple[int, ...]

    def __post_init__(self):
        if len(self.l) != len(self.eta):
            raise DomainError("l and eta must share a domain")
        if any(e not in (1, -1) for e in self.eta):
            raise DomainError("eta values must be +-1")


def check_range(psi: ArthurParameter, pair: LEtaPair) -> None:
    insts = psi.instances()
    if len(pair.l) != len(insts):
        raise DomainError("pair domain does not match the blocks")
    for (blk, _), l in zip(insts, pair.l):
        if not 0 <= l <= l_range_max(blk):
            raise OutOfRange(f"l={l} escapes [0, {l_range_max(blk)}] at {blk}")


def eps_from_l_eta(psi: ArthurParameter, pair: LEtaPair) -> SignVector:
    """The character attached to an (l, eta) pair.

    Per block the value is eta**(A-B+1) * (-1)**([(A-B+1)/2] + l).
    """
    check_range(psi, pair)
    signs = []
    for (blk, _), l, eta in zip(psi.instances(), pair.l, pair.eta):
        signs.append(_block_eps(blk, l, eta))
    return SignVector(MULT, tuple(signs))


def eta_constraint_check(A: HalfInt, B: HalfInt, l: int) -> bool:
    """Equivalence of the recursion constraint with the character formula.

    The constraint fixes eta through
        eta0 = eta**(A-B+1) * prod_{C in [B+l, A-l]} (-1)**[C],
    while the character formula evaluates, with eta' = eta * (-1)**[B+l],
        eta0 = eta'**(A-B+1) * (-1)**([(A-B+1)/2] + l).
    The two agree for every admissible (A, B, l); the check returns that
    agreement for one cell, quantified over both values of eta.
    """
    gap = int(A - B) + 1
    if not 0 <= l <= gap // 2:
        raise OutOfRange(f"l={l} out of range for A={A}, B={B}")
    prod = 1
    for C in hrange(B + l, A - l):
        prod *= bracket_sign(C)
    for eta in (1, -1):
        lhs = (eta if gap % 2 else 1) * prod
        eta_bar = eta * bracket_sign(B + l)
        rhs = (eta_bar if gap % 2 else 1) * sign_pow(gap // 2 + l)
        if lhs != rhs:
            return False
    return True


def enumerate_l_eta(psi: ArthurParameter,
                    filter_eps: Optional[SignVector] = None,
                    bound: int = ENUM_BOUND) -> List[LEtaPair]:
    """All pairs in range, optionally filtered by their character.

    The filter compares pointwise, so single signs outside the character
    space can be requested (useful for per-block censuses).
    """
    insts = psi.instances()
    if len(insts) > bound:
        raise TooLarge(f"{len(insts)} blocks exceeds bound {bound}")
    per_block = []
    for idx, (blk, _) in enumerate(insts):
        opts = []
        for l in range(l_range_max(blk) + 1):
            for eta in (1, -1):
                if filter_eps is not None:
                    single = _block_eps(blk, l, eta)
                    if single != filter_eps.signs[idx]:
                        continue
                opts.append((l, eta))
        per_block.append(opts)
    out = []
    for combo in itertools.product(*per_block):
        out.append(LEtaPair(tuple(c[0] for c in combo),
                            tuple(c[1] for c in combo)))
    return out


def _block_eps(blk: JordanBlock, l: int, eta: int) -> int:
    gap = int(blk.A - blk.B) + 1
    return (eta if gap % 2 else 1) * sign_pow(gap // 2 + l)


def _eta_collapses(blk: JordanBlock, l: int) -> bool:
    """True when both eta values label the same constituent."""
    return 2 * l == int(blk.A - blk.B) + 1


def equiv_sigma0(psi: ArthurParameter, p: LEtaPair, q: LEtaPair) -> bool:
    """Same l everywhere, same eta except where the count is maximal."""
    check_range(psi, p)
    check_range(psi, q)
    if p.l != q.l:
        return False
    for (blk, _), l, ep, eq in zip(psi.instances(), p.l, p.eta, q.eta):
        if ep != eq and not _eta_collapses(blk, l):
            return False
    return True


def eta0(psi: ArthurParameter) -> SignVector:
    """The twisting sign: -1 where d_rho is odd and A is integral, for
    even orthogonal groups; all +1 otherwise."""
    def fn(blk, _):
        if psi.group.kind != SO_EVEN:
            return 1
        return -1 if blk.rho.dim % 2 == 1 and blk.A.is_integer() else 1
    return vector_on_instances(psi, fn)


def equiv(psi: ArthurParameter, p: LEtaPair, q: LEtaPair) -> bool:
    """The coarser relation: equal up to a global twist by eta0."""
    if equiv_sigma0(psi, p, q):
        return True
    tw = eta0(psi)
    q_tw = LEtaPair(q.l, tuple(e * t for e, t in zip(q.eta, tw.signs)))
    return equiv_sigma0(psi, p, q_tw)


GUARANTEED = "guaranteed"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class ConstituentClass:
    representative: LEtaPair
    members: Tuple[LEtaPair, ...]
    status: str


def packet_constituents(psi: ArthurParameter, eps: SignVector,
                        order: Optional[BlockOrder] = None
                        ) -> List[ConstituentClass]:
    """Label classes of packet members with the requested character.

    For parameters with discrete diagonal restriction every class is
    realized; otherwise the census lists labels whose nonvanishing is
    not decided here.
    """
    pairs = enumerate_l_eta(psi, filter_eps=eps)
    status = GUARANTEED if "discrete_diag_restriction" in classify(psi) \
        else UNDECIDED
    classes: List[List[LEtaPair]] = []
    for pair in pairs:
        for cls in classes:
            if equiv_sigma0(psi, cls[0], pair):
                cls.append(pair)
                break
        else:
            classes.append([pair])
    return [ConstituentClass(cls[0], tuple(cls), status) for cls in classes]


def translate_m_w(psi: ArthurParameter, eps: SignVector,
                  order: BlockOrder) -> Optional[SignVector]:
    """Move an M-side character to the W side when possible.

    Returns eps * eps^{M/W} as a class character when the product
    descends to the unshifted space, None otherwise (the M-side member
    vanishes under the W-side labelling).
    """
    if not in_character_space(eps, psi, S_GT_HAT_SIGMA0):
        raise NotACharacter("eps must lie in the shifted character space")
    product = eps.pointwise(eps_m_w(psi, order))
    insts = psi.instances()
    by_class: Dict[tuple, set] = {}
    for (blk, _), sg in zip(insts, product.signs):
        by_class.setdefault(blk.key(), set()).add(sg)
    if any(len(v) > 1 for v in by_class.values()):
        return None
    keys = [blk.key() for blk in psi.classes()]
    return SignVector(CLASS, tuple(by_class[k].copy().pop() for k in keys))
