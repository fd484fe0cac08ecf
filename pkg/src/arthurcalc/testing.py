"""Seeded generators for randomized verification suites.

Shared between the CLI selftest and the acceptance tests so both draw
from the same structured distributions.
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .charspace import pair, s_psi
from .labels import ORTHOGONAL, SYMPLECTIC, QuadCharacter, RhoLabel
from .params import (MINUS, PLUS, ArthurParameter, BlockOrder, Instance,
                     JordanBlock, make_parameter, satisfies_condition_p)
from .segments import EpsMap
from .signs import eps_m_mw_ddr, eps_mw_w, theta_ratio_mw_w

_RHO_POOL = [
    RhoLabel("r1", 1, ORTHOGONAL, QuadCharacter.of("u1")),
    RhoLabel("r2", 2, SYMPLECTIC),
    RhoLabel("r3", 3, ORTHOGONAL, QuadCharacter.of("u3")),
]


def _block_for(rng: random.Random, rho: RhoLabel, want_orthogonal: bool,
               max_ab: int) -> JordanBlock:
    """A block of the requested parity type for this rho."""
    # type is orthogonal iff (rho orthogonal) == (a+b even)
    want_even_sum = (rho.self_dual_type == ORTHOGONAL) == want_orthogonal
    while True:
        a = rng.randint(1, max_ab)
        b = rng.randint(1, max_ab)
        if ((a + b) % 2 == 0) == want_even_sum:
            zeta = rng.choice((PLUS, MINUS)) if a == b else None
            return JordanBlock(rho, a, b, 1, zeta)


def random_pure_parameter(rng: random.Random, max_blocks: int = 6,
                          max_ab: int = 8, max_rhos: int = 3,
                          orthogonal_side: Optional[bool] = None
                          ) -> ArthurParameter:
    """A random parameter equal to its parity part, zeta resolved."""
    if orthogonal_side is None:
        orthogonal_side = rng.random() < 0.7
    rhos = _RHO_POOL[:max_rhos]
    k = rng.randint(1, max_blocks)
    blocks = [_block_for(rng, rng.choice(rhos), orthogonal_side, max_ab)
              for _ in range(k)]
    if not orthogonal_side:
        # symplectic side: total dimension is automatically even
        return make_parameter(blocks)
    total = sum(b.dim for b in blocks)
    if total % 2 == 0 and rng.random() < 0.5:
        return make_parameter(blocks, eta=QuadCharacter.of("w"))
    return make_parameter(blocks)


def random_p_order(rng: random.Random, psi: ArthurParameter) -> BlockOrder:
    """A random admissible order, built as a random linear extension."""
    remaining = list(psi.instances())
    seq: List[Instance] = []
    from .params import _nested
    while remaining:
        ready = [inst for inst in remaining
                 if not any(_nested(inst[0], other[0])
                            for other in remaining if other != inst)]
        pick = rng.choice(ready)
        seq.append(pick)
        remaining.remove(pick)
    order = BlockOrder(tuple(seq))
    assert satisfies_condition_p(order)
    return order


def random_ddr_parameter(rng: random.Random, max_blocks: int = 5,
                         max_level: int = 8) -> ArthurParameter:
    """A random parameter with discrete diagonal restriction."""
    rhos = _RHO_POOL[:rng.randint(1, 2)]
    orthogonal_side = rng.random() < 0.7
    blocks = []
    for rho in rhos:
        # per rho, stack disjoint [B, A] segments of the right parity
        want_even_sum = (rho.self_dual_type == ORTHOGONAL) == orthogonal_side
        # a+b = 2A+2: even sum always; parity of block type is decided by
        # A-B (integer) versus half-integers: choose grid accordingly
        twice_base = 0 if want_even_sum else 1
        cursor = twice_base + rng.randint(0, 2) * 2
        for _ in range(rng.randint(0, max_blocks)):
            width = rng.randint(0, 2) * 2
            tb, ta = cursor, cursor + width
            if ta > 2 * max_level:
                break
            from .halfint import HalfInt
            from .params import from_AB
            zeta = rng.choice((PLUS, MINUS))
            blocks.append(from_AB(rho, HalfInt(ta), HalfInt(tb), zeta))
            cursor = ta + 2 + rng.randint(0, 2) * 2
    if not blocks:
        rho = rhos[0]
        from .halfint import HalfInt
        from .params import from_AB
        tb = 0 if (rho.self_dual_type == ORTHOGONAL) == orthogonal_side else 1
        blocks = [from_AB(rho, HalfInt(tb), HalfInt(tb),
                          rng.choice((PLUS, MINUS)))]
    kept = [b for b in blocks
            if ((b.a + b.b) % 2 == 0) == (
                (b.rho.self_dual_type == ORTHOGONAL) == orthogonal_side)]
    psi = make_parameter(kept or blocks)
    from .params import classify
    assert "discrete_diag_restriction" in classify(psi)
    return psi


def random_elementary(rng: random.Random, max_blocks: int = 5,
                      max_alpha: int = 9) -> ArthurParameter:
    """A random elementary parameter."""
    rhos = _RHO_POOL[:rng.randint(1, 2)]
    orthogonal_side = rng.random() < 0.7
    blocks = []
    for rho in rhos:
        want_even_sum = (rho.self_dual_type == ORTHOGONAL) == orthogonal_side
        # elementary blocks have a+b = alpha+1
        parity = 1 if want_even_sum else 0  # alpha odd gives a+b even
        alphas = [al for al in range(1, max_alpha + 1) if al % 2 == parity]
        rng.shuffle(alphas)
        take = alphas[:rng.randint(0, min(max_blocks, len(alphas)))]
        from .params import elementary_block
        for al in take:
            blocks.append(elementary_block(rho, al, rng.choice((PLUS, MINUS))))
    if not blocks:
        from .params import elementary_block
        rho = rhos[0]
        parity = 1 if (rho.self_dual_type == ORTHOGONAL) == orthogonal_side \
            else 0
        blocks = [elementary_block(rho, 1 if parity else 2,
                                   rng.choice((PLUS, MINUS)))]
    psi = make_parameter(blocks)
    from .params import classify
    assert "elementary" in classify(psi)
    return psi


def random_discrete_pair(rng: random.Random, max_blocks: int = 5,
                         max_a: int = 9
                         ) -> Tuple[ArthurParameter, EpsMap]:
    """A tempered discrete parameter with an admissible character."""
    rhos = _RHO_POOL[:rng.randint(1, 2)]
    orthogonal_side = rng.random() < 0.7
    blocks = []
    for rho in rhos:
        want_even_sum = (rho.self_dual_type == ORTHOGONAL) == orthogonal_side
        parity = 1 if want_even_sum else 0
        sizes = [a for a in range(1, max_a + 1) if a % 2 == parity]
        rng.shuffle(sizes)
        take = sizes[:rng.randint(0, min(max_blocks, len(sizes)))]
        for a in take:
            blocks.append(JordanBlock(rho, a, 1))
    if not blocks:
        rho = rhos[0]
        parity = 1 if (rho.self_dual_type == ORTHOGONAL) == orthogonal_side \
            else 0
        blocks = [JordanBlock(rho, 1 if parity else 2, 1)]
    phi = make_parameter(blocks)
    signs = [rng.choice((1, -1)) for _ in phi.classes()]
    prod = 1
    for s in signs:
        prod *= s
    if prod != 1:
        signs[0] = -signs[0]
    eps = EpsMap({(b.rho.id, b.a): s for b, s in zip(phi.classes(), signs)})
    return phi, eps


def sign_law_suite(rng: random.Random, rounds: int) -> int:
    """Core sign-character laws on random parameters; returns failures."""
    failures = 0
    for _ in range(rounds):
        psi = random_pure_parameter(rng)
        order = random_p_order(rng, psi)
        vec = eps_mw_w(psi, order)
        if vec.product() != 1:
            failures += 1
        if pair(vec, s_psi(psi)) != theta_ratio_mw_w(psi, order):
            failures += 1
        from .params import classify
        if "discrete_diag_restriction" in classify(psi):
            m = eps_m_mw_ddr(psi)
            if m.product() != 1 or pair(m, s_psi(psi)) != 1:
                failures += 1
    return failures


def compact_selftest(rng: random.Random, rank_bound: int = 4) -> Dict[str, int]:
    """Scaled-down run of every verification family; failure counts."""
    from . import weyl as W
    from .charspace import (MULT, SignVector, enumerate_elements)
    from .endoscopy import sign_transfer_check
    from .formal import endoscopic_sign_bookkeeping
    from .halfint import HalfInt
    from .packets import eta_constraint_check, packet_constituents
    from .params import (classify, dominate, from_AB, min_p_order,
                         max_p_order, natural_order)
    from .segments import cuspidal_support, supercuspidal_test
    from .signs import (aubert_flip, eps_m_mw_ddr, eps_m_mw_elementary,
                        eps_m_mw_general)

    out: Dict[str, int] = {}
    out["sign_laws"] = sign_law_suite(rng, 500)

    fails = 0
    for _ in range(100):
        psi = random_pure_parameter(rng, max_blocks=4, max_ab=6)
        for order in (min_p_order(psi), max_p_order(psi)):
            for s in enumerate_elements(psi):
                if not sign_transfer_check(psi, s, order):
                    fails += 1
    out["transfer_sign"] = fails

    fails = 0
    for _ in range(200):
        psi = random_pure_parameter(rng, max_blocks=4)
        order = random_p_order(rng, psi)
        before = eps_m_mw_general(psi, order)
        gg, order_gg = dominate(psi, order, ensure_ddr=True)
        after = eps_m_mw_general(gg, order_gg)
        for pos in range(len(order.sequence)):
            i = psi.instances().index(order.sequence[pos])
            j = gg.instances().index(order_gg.sequence[pos])
            if before.signs[i] != after.signs[j]:
                fails += 1
    out["dominance"] = fails

    fails = 0
    for ta in range(0, 16):
        for tb in range(ta % 2, ta + 1, 2):
            gap = (ta - tb) // 2 + 1
            for l in range(gap // 2 + 1):
                if not eta_constraint_check(HalfInt(ta), HalfInt(tb), l):
                    fails += 1
    out["eta_constraint"] = fails

    fails = 0
    for gap in range(0, 8):
        blk = from_AB(_RHO_POOL[0], HalfInt(2 * gap), HalfInt(0), PLUS)
        psi = make_parameter([blk])
        total = sum(len(packet_constituents(psi, SignVector(MULT, (sg,))))
                    for sg in (1, -1))
        if total != gap + 2:
            fails += 1
    out["census"] = fails

    fails = 0
    for _ in range(100):
        psi = random_elementary(rng)
        rho = rng.choice(psi.rho_labels())
        x0 = rng.randint(0, 9)
        if aubert_flip(aubert_flip(psi, rho, x0), rho, x0) != psi:
            fails += 1
    out["flip_involution"] = fails

    fails = 0
    for _ in range(200):
        phi, eps = random_discrete_pair(rng)
        cusp, eps_c, trace = cuspidal_support(phi, eps)
        if not supercuspidal_test(cusp, eps_c):
            fails += 1
        if len(trace) > sum(b.a for b in phi.blocks):
            fails += 1
    out["cuspidal_support"] = fails

    fails = 0
    for datum in W.datum_catalog():
        if datum.rank > rank_bound:
            continue
        for data in W.catalog_split_data(datum):
            if not (W.verify_identity_A(data) and W.verify_identity_B(data)
                    and W.verify_alternating_sum(data).all_pass()
                    and W.verify_coset_representatives(data)):
                fails += 1
    out["weyl_catalog"] = fails

    fails = 0
    for _ in range(60):
        psi = random_ddr_parameter(rng, max_blocks=2, max_level=6)
        compounds = [inst for inst in psi.instances()
                     if inst[0].A != inst[0].B]
        if not compounds or len(psi.instances()) > 4:
            continue
        for s in enumerate_elements(psi):
            if not endoscopic_sign_bookkeeping(psi, s, compounds[0]):
                fails += 1
    out["bookkeeping"] = fails

    fails = 0
    for _ in range(100):
        psi = random_elementary(rng)
        order = natural_order(psi)
        if not (eps_m_mw_elementary(psi).signs == eps_m_mw_ddr(psi).signs
                == eps_m_mw_general(psi, order).signs):
            fails += 1
    out["variant_agreement"] = fails
    return out
