"""Normalization-comparison sign characters on Jordan blocks.

Implements the pair sets Z_MW/W and Z(psi), the characters eps^{MW/W},
eps^{M/MW} (in its elementary, DDR and general forms) and eps^{M/W},
plus the sign-flip involution on elementary parameters and its
bookkeeping signs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import FrozenSet, List, Optional, Tuple

from .charspace import MULT, SignVector, vector_on_instances
from .errors import (DomainError, MixedParity, NotDDR, NotElementary,
                     UnresolvedZeta)
from .halfint import sign_pow
from .labels import RhoLabel
from .params import (MINUS, PLUS, ArthurParameter, BlockOrder,
                     JordanBlock, check_condition_p, classify,
                     elementary_alpha, elementary_block, elementary_delta,
                     is_elementary)


@dataclass(frozen=True)
class PairSet:
    """Unordered pairs of positions into Jord(psi_p) with multiplicity."""

    size: int
    pairs: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        for i, j in self.pairs:
            if not (0 <= i < j < self.size):
                raise ValueError(f"bad pair ({i},{j}) for size {self.size}")

    def touching(self, i: int) -> int:
        return sum(1 for p in self.pairs if i in p)

    def __len__(self) -> int:
        return len(self.pairs)


def _zeta(blk: JordanBlock) -> int:
    if blk.zeta is None:
        raise UnresolvedZeta(f"{blk} needs zeta resolved for the case tests")
    return blk.zeta


def _pair_in_z_mw_w(x: JordanBlock, y: JordanBlock, x_above_y: bool) -> bool:
    """Case analysis for one unordered pair, x in the even-b role.

    x_above_y means x >_psi y.  There are two parity patterns; within
    each, the (zeta_x, zeta_y) cells are spelled out one by one so that
    every cell of the definition is visibly covered.
    """
    a, b, a2, b2 = x.a, x.b, y.a, y.b
    zx, zy = _zeta(x), _zeta(y)

    if a % 2 == 0 and b % 2 == 0 and a2 % 2 == 1 and b2 % 2 == 1:
        # pattern one: x fully even against y fully odd
        if zx == MINUS and zy == MINUS:
            return x_above_y and a > a2
        if zx == MINUS and zy == PLUS:
            return a > a2
        if zx == PLUS and zy == PLUS:
            return (a2 > a and b > b2) if x_above_y else (a > a2 and b > b2)
        if zx == PLUS and zy == MINUS:
            return False
        raise AssertionError("unreachable zeta cell")  # pragma: no cover

    if a % 2 == 1 and b % 2 == 0 and a2 % 2 == 0 and b2 % 2 == 1:
        # pattern two: x with odd a, even b against y with even a, odd b
        if zx == MINUS and zy == MINUS:
            return x_above_y and a < a2
        if zx == MINUS and zy == PLUS:
            return (a < a2) if x_above_y else (a > a2)
        if zx == PLUS and zy == PLUS:
            return (a < a2 and b > b2) if x_above_y else (a > a2 and b > b2)
        if zx == PLUS and zy == MINUS:
            return False
        raise AssertionError("unreachable zeta cell")  # pragma: no cover

    return False


def _role_split(p: JordanBlock, q: JordanBlock
                ) -> Optional[Tuple[JordanBlock, JordanBlock, bool]]:
    """Orient an unordered pair into (even-b role, odd-b role, swapped)."""
    def first_role(blk):
        return blk.b % 2 == 0
    if first_role(p) and not first_role(q):
        return p, q, False
    if first_role(q) and not first_role(p):
        return q, p, True
    return None


def _check_order_matches(psi: ArthurParameter, order: BlockOrder) -> None:
    if set(order.sequence) != set(psi.instances()):
        raise DomainError("order does not enumerate the parameter's blocks")


def z_mw_w(psi_p: ArthurParameter, order: BlockOrder) -> PairSet:
    """The unordered pair set controlling the two twisted normalizations."""
    from .params import is_parity_pure
    if not is_parity_pure(psi_p):
        raise DomainError("pair sets are computed on the parity part")
    check_condition_p(order)
    _check_order_matches(psi_p, order)
    insts = psi_p.instances()
    pos = {inst: i for i, inst in enumerate(order.sequence)}
    pairs = set()
    for i in range(len(insts)):
        for j in range(i + 1, len(insts)):
            p, q = insts[i][0], insts[j][0]
            if p.rho.id != q.rho.id:
                continue
            if (p.a + p.b) % 2 != (q.a + q.b) % 2:
                # same label forces one parity across the parity part
                raise DomainError(
                    f"blocks {p} and {q} mix parities")  # pragma: no cover
            split = _role_split(p, q)
            if split is None:
                continue
            x, y, swapped = split
            xi, yi = (insts[j], insts[i]) if swapped else (insts[i], insts[j])
            if _pair_in_z_mw_w(x, y, pos[xi] > pos[yi]):
                pairs.add((i, j))
    return PairSet(len(insts), frozenset(pairs))


def eps_mw_w(psi_p: ArthurParameter, order: BlockOrder) -> SignVector:
    """Per-block parity of the pair count; always a character."""
    zs = z_mw_w(psi_p, order)
    return SignVector(MULT, tuple(sign_pow(zs.touching(i))
                                  for i in range(zs.size)))


def theta_ratio_mw_w(psi: ArthurParameter, order: BlockOrder) -> int:
    """(-1)**|Z_MW/W|, the ratio of the two normalized twisted actions.

    For a parameter with a nontrivial non-parity part the set is computed
    on the parity part, on which the order must live.
    """
    from .params import is_parity_pure, split_p_np
    if not is_parity_pure(psi):
        psi = split_p_np(psi)[0]
    return sign_pow(len(z_mw_w(psi, order)))


def z_u(psi_p: ArthurParameter) -> PairSet:
    """Pairs with sup(a,a'), sup(b,b') even and inf(a,a'), inf(b,b') odd."""
    from .params import is_parity_pure
    if not is_parity_pure(psi_p):
        raise DomainError("pair sets are computed on the parity part")
    insts = psi_p.instances()
    pairs = set()
    for i in range(len(insts)):
        for j in range(i + 1, len(insts)):
            p, q = insts[i][0], insts[j][0]
            if p.rho.id != q.rho.id:
                continue
            if (max(p.a, q.a) % 2 == 0 and max(p.b, q.b) % 2 == 0
                    and min(p.a, q.a) % 2 == 1 and min(p.b, q.b) % 2 == 1):
                pairs.add((i, j))
    return PairSet(len(insts), frozenset(pairs))


# -- the Moeglin vs Moeglin-Waldspurger comparison character -----------------

ELEMENTARY = "elementary"
DDR = "ddr"
GENERAL = "general"


def _eps_m_mw_at(blk: JordanBlock, others: List[Tuple[JordanBlock, bool, bool]]
                 ) -> int:
    """Value at one block; others carry (block, above, below) order data."""
    if (blk.a + blk.b) % 2 == 1:
        return 1
    if blk.a % 2 == 0:
        return 1
    # zeta is only demanded where it enters: at the block itself and on
    # the odd blocks strictly above it
    m = sum(1 for o, above, _ in others
            if o.a % 2 == 1 and o.b % 2 == 1 and above
            and _zeta(o) == MINUS)
    n = sum(1 for o, _, below in others
            if o.a % 2 == 1 and o.b % 2 == 1 and below)
    return sign_pow(m) if _zeta(blk) == PLUS else sign_pow(m + n)


def eps_m_mw_general(psi: ArthurParameter, order: BlockOrder) -> SignVector:
    """General form: order-dependent counts on the same-rho odd blocks."""
    from .params import is_parity_pure
    if not is_parity_pure(psi):
        raise DomainError("the comparison character lives on the parity part")
    check_condition_p(order)
    _check_order_matches(psi, order)
    insts = psi.instances()
    pos = {inst: i for i, inst in enumerate(order.sequence)}
    values = []
    for idx, inst in enumerate(insts):
        blk = inst[0]
        others = []
        for jdx, oinst in enumerate(insts):
            if jdx == idx or oinst[0].rho.id != blk.rho.id:
                continue
            above = pos[oinst] > pos[inst]
            others.append((oinst[0], above, not above))
        values.append(_eps_m_mw_at(blk, others))
    return SignVector(MULT, tuple(values))


def eps_m_mw_ddr(psi: ArthurParameter) -> SignVector:
    """DDR form: the order data is replaced by |a - b| comparisons."""
    if "discrete_diag_restriction" not in classify(psi):
        raise NotDDR("the DDR form needs discrete diagonal restriction")
    insts = psi.instances()
    values = []
    for idx, inst in enumerate(insts):
        blk = inst[0]
        gap = abs(blk.a - blk.b)
        others = []
        for jdx, oinst in enumerate(insts):
            if jdx == idx or oinst[0].rho.id != blk.rho.id:
                continue
            ogap = abs(oinst[0].a - oinst[0].b)
            others.append((oinst[0], ogap > gap, ogap < gap))
        values.append(_eps_m_mw_at(blk, others))
    return SignVector(MULT, tuple(values))


def eps_m_mw_elementary(psi: ArthurParameter) -> SignVector:
    """Elementary form in the (rho, alpha, delta) dictionary."""
    if not is_elementary(psi):
        raise NotElementary("elementary form needs an elementary parameter")
    insts = psi.instances()
    values = []
    for blk, _ in insts:
        alpha = elementary_alpha(blk)
        if alpha % 2 == 0:
            values.append(1)
            continue
        same = [o for o, _ in insts
                if o.rho.id == blk.rho.id and o.key() != blk.key()]
        m = sum(1 for o in same
                if elementary_alpha(o) > alpha and elementary_delta(o) == MINUS)
        n = sum(1 for o in same if elementary_alpha(o) < alpha)
        d = elementary_delta(blk)
        values.append(sign_pow(m) if d == PLUS else sign_pow(m + n))
    return SignVector(MULT, tuple(values))


def eps_m_mw(psi: ArthurParameter, order_or_variant=None) -> SignVector:
    """Dispatch on variant: a BlockOrder selects the general form, the
    strings "ddr"/"elementary" the specialized ones."""
    if isinstance(order_or_variant, BlockOrder):
        return eps_m_mw_general(psi, order_or_variant)
    if order_or_variant in (None, DDR):
        return eps_m_mw_ddr(psi)
    if order_or_variant == ELEMENTARY:
        return eps_m_mw_elementary(psi)
    raise DomainError(f"unknown variant {order_or_variant!r}")


def eps_m_w(psi: ArthurParameter, order: BlockOrder) -> SignVector:
    """Pointwise product of the two comparison characters."""
    return eps_m_mw_general(psi, order).pointwise(eps_mw_w(psi, order))


# -- sign-flip involution on elementary parameters ---------------------------

def aubert_flip(psi: ArthurParameter, rho: RhoLabel, x0: int,
                strict: bool = True) -> ArthurParameter:
    """Flip delta on the rho-blocks with alpha < x0 (or <= x0)."""
    if not is_elementary(psi):
        raise NotElementary("the flip is defined on elementary parameters")
    new = []
    for blk in psi.blocks:
        if blk.rho.id == rho.id:
            alpha = elementary_alpha(blk)
            if alpha < x0 or (not strict and alpha == x0):
                d = elementary_delta(blk)
                new.append(elementary_block(blk.rho, alpha, -d))
                continue
        new.append(blk)
    return ArthurParameter(psi.group, tuple(new))


def jord_rho_parity(psi: ArthurParameter, rho: RhoLabel) -> Optional[int]:
    """Common parity of the rho-block sizes alpha (0 even, 1 odd)."""
    alphas = [elementary_alpha(b) for b in psi.blocks if b.rho.id == rho.id]
    if not alphas:
        return None
    parities = {a % 2 for a in alphas}
    if len(parities) > 1:
        raise MixedParity(f"rho {rho.id} mixes odd and even sizes")
    return parities.pop()


def beta_sign(psi: ArthurParameter, rho: RhoLabel, x0: int) -> int:
    """The sign relating the flipped normalized action to its target."""
    if not is_elementary(psi):
        raise NotElementary("beta is defined on elementary parameters")
    parity = jord_rho_parity(psi, rho)
    below = sorted(elementary_alpha(b) for b in psi.blocks
                   if b.rho.id == rho.id and elementary_alpha(b) < x0)
    if parity is None or not below:
        return 1
    if parity == 1:
        k = len(below)
        sign = sign_pow(k * (k - 1) // 2)
        for alpha in below:
            sign *= sign_pow((alpha - 1) // 2)
        return sign
    sign = 1
    for alpha in below:
        sign *= sign_pow(alpha // 2)
    return sign


def s_ratio(psi: ArthurParameter, x0: int,
            rho: Optional[RhoLabel] = None) -> SignVector:
    """The vector s_psi * s_{psi-flipped}: -1 on even alpha below x0.

    With rho given only that label's blocks flip; with rho None the flip
    is applied for every label.
    """
    if not is_elementary(psi):
        raise NotElementary("the ratio is defined on elementary parameters")

    def fn(blk, _):
        if rho is not None and blk.rho.id != rho.id:
            return 1
        alpha = elementary_alpha(blk)
        return -1 if alpha < x0 and alpha % 2 == 0 else 1

    return vector_on_instances(psi, fn)
