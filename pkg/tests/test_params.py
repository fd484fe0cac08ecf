import random

import pytest

from arthurcalc.errors import NotDDR, OddLeftover, OrderViolation
from arthurcalc.halfint import HalfInt
from arthurcalc.labels import (NOT_SELF_DUAL, ORTHOGONAL, SYMPLECTIC,
                               QuadCharacter, RhoLabel)
from arthurcalc.params import (MINUS, PLUS, ArthurParameter, BlockOrder,
                               GroupForm, JordanBlock, block_parity, classify,
                               diagonal_restriction, dominate, from_AB,
                               make_parameter, natural_order, phi_psi,
                               satisfies_condition_p, split_p_np, SP, SO_EVEN,
                               SO_ODD)
from arthurcalc.testing import random_pure_parameter, random_p_order

RHO = RhoLabel("rho", 1, ORTHOGONAL)
RHO2 = RhoLabel("sigma", 2, SYMPLECTIC)


def test_group_dimensions():
    assert GroupForm(SP, 4).N == 9
    assert GroupForm(SO_ODD, 4).N == 8
    assert GroupForm(SO_EVEN, 4).N == 8
    assert GroupForm(SP, 4).dual_parity == ORTHOGONAL
    assert GroupForm(SO_ODD, 4).dual_parity == SYMPLECTIC
    assert GroupForm(SO_EVEN, 4).dual_parity == ORTHOGONAL


def test_block_coordinates():
    blk = JordanBlock(RHO, 4, 2)
    assert blk.A == HalfInt(4)   # (4+2)/2 - 1 = 2
    assert blk.B == HalfInt(2)   # |4-2|/2 = 1
    assert blk.zeta == PLUS
    blk2 = JordanBlock(RHO, 2, 4)
    assert blk2.zeta == MINUS
    assert from_AB(RHO, HalfInt(4), HalfInt(2), PLUS).a == 4
    assert from_AB(RHO, HalfInt(4), HalfInt(2), MINUS).a == 2


def test_block_parity_spec_examples():
    assert block_parity(JordanBlock(RHO, 4, 2)) == ORTHOGONAL
    # a+b even with a symplectic label gives the symplectic type
    assert block_parity(JordanBlock(RHO2, 3, 1)) == SYMPLECTIC
    assert block_parity(JordanBlock(RHO2, 2, 1)) == ORTHOGONAL
    rho_nsd = RhoLabel("tau", 1, NOT_SELF_DUAL)
    assert block_parity(JordanBlock(rho_nsd, 3, 2)) is None


def test_split_p_np_identity():
    psi = make_parameter([JordanBlock(RHO, 2, 2, 1, PLUS),
                          JordanBlock(RHO, 1, 1, 1, PLUS)])
    assert psi.group == GroupForm(SP, 2)
    psi_p, psi_np = split_p_np(psi)
    assert psi_p == psi and psi_np == ()


def test_split_p_np_pairs():
    # a symplectic-parity block on a symplectic dual group must pair off
    bad = JordanBlock(RHO, 2, 1, 2)   # a+b odd, rho orthogonal: symplectic
    good = JordanBlock(RHO, 5, 1)
    psi = ArthurParameter(GroupForm(SP, 4), (bad, good))
    psi_p, psi_np = split_p_np(psi)
    assert [b.a for b in psi_p.blocks] == [5]
    assert len(psi_np) == 1 and psi_np[0].mult == 1

    odd = ArthurParameter(GroupForm(SP, 3), (JordanBlock(RHO, 2, 1, 1),
                                             JordanBlock(RHO, 5, 1)))
    with pytest.raises(OddLeftover):
        split_p_np(odd)


def test_dual_pair_validation():
    tau = RhoLabel("tau", 1, NOT_SELF_DUAL)
    with pytest.raises(OddLeftover):
        ArthurParameter(GroupForm(SP, 1), (JordanBlock(tau, 3, 1),))
    ok = ArthurParameter(GroupForm(SP, 2),
                         (JordanBlock(tau, 2, 1), JordanBlock(tau.dual(), 2, 1),
                          JordanBlock(RHO, 1, 1, 1, PLUS)))
    assert len(ok.blocks) == 3


def test_diagonal_restriction_spec_examples():
    psi = make_parameter([JordanBlock(RHO, 4, 2)])
    out = diagonal_restriction(psi)
    assert sorted((b.a, b.b, b.mult) for b in out.blocks) == [(3, 1, 1),
                                                              (5, 1, 1)]
    psi2 = make_parameter([JordanBlock(RHO, 5, 1)])
    out2 = diagonal_restriction(psi2)
    assert [(b.a, b.b) for b in out2.blocks] == [(5, 1)]

    psi3 = make_parameter([JordanBlock(RHO, 2, 2, 1, PLUS),
                           JordanBlock(RHO, 1, 1, 1, PLUS)])
    out3 = diagonal_restriction(psi3)
    assert sorted((b.a, b.mult) for b in out3.blocks) == [(1, 2), (3, 1)]


def test_dimension_conserved_by_diagonal_restriction():
    rng = random.Random(1)
    for _ in range(50):
        psi = random_pure_parameter(rng)
        out = diagonal_restriction(psi)
        assert sum(b.mult * b.dim for b in out.blocks) == psi.group.N


def test_classify_spec_examples():
    psi = make_parameter([JordanBlock(RHO, 4, 2), JordanBlock(RHO, 1, 1, 1, PLUS)])
    assert psi.group == GroupForm(SP, 4)
    assert classify(psi) == frozenset({"discrete_diag_restriction"})

    psi2 = make_parameter([JordanBlock(RHO, 2, 2, 1, PLUS),
                           JordanBlock(RHO, 1, 1, 1, PLUS)])
    assert "discrete_diag_restriction" not in classify(psi2)

    psi3 = make_parameter([JordanBlock(RHO, 5, 1), JordanBlock(RHO, 1, 3),
                           JordanBlock(RHO, 1, 1, 1, PLUS)])
    assert psi3.group == GroupForm(SP, 4)
    flags = classify(psi3)
    assert "discrete_diag_restriction" in flags and "elementary" in flags

    phi = make_parameter([JordanBlock(RHO, 1, 1, 1, PLUS),
                          JordanBlock(RHO, 3, 1), JordanBlock(RHO, 5, 1)])
    assert "discrete" in classify(phi) and "tempered" in classify(phi)


def test_natural_order():
    psi = make_parameter([JordanBlock(RHO, 5, 1), JordanBlock(RHO, 1, 3),
                          JordanBlock(RHO, 1, 1, 1, PLUS)])
    order = natural_order(psi)
    alphas = [max(b.a, b.b) for b, _ in order.sequence]
    assert alphas == [1, 3, 5]  # ascending in A

    single = make_parameter([JordanBlock(RHO, 3, 1)])
    assert len(natural_order(single).sequence) == 1

    non_ddr = make_parameter([JordanBlock(RHO, 2, 2, 1, PLUS),
                              JordanBlock(RHO, 1, 1, 1, PLUS)])
    with pytest.raises(NotDDR):
        natural_order(non_ddr)


def test_condition_p_validator():
    big = JordanBlock(RHO, 6, 2)    # A=3, B=2
    small = JordanBlock(RHO, 3, 1)  # A=1, B=1
    good = BlockOrder(((small, 0), (big, 0)))
    bad = BlockOrder(((big, 0), (small, 0)))
    assert satisfies_condition_p(good)
    assert not satisfies_condition_p(bad)


def test_dominate_spec_examples():
    blk = from_AB(RHO, HalfInt(4), HalfInt(2), PLUS)  # (a,b) = (4,2)
    psi = make_parameter([blk])
    order = natural_order(psi)
    psi_gg, order_gg = dominate(psi, order, shifts={0: 2})
    shifted = psi_gg.blocks[0]
    # (A, B) moves from (2, 1) to (4, 3), i.e. (a, b) = (8, 2)
    assert (shifted.A.twice, shifted.B.twice) == (8, 6)
    assert (shifted.a, shifted.b) == (8, 2)

    same, _ = dominate(psi, order, shifts={0: 0})
    assert same == psi

    psi2 = make_parameter([JordanBlock(RHO, 2, 2, 1, PLUS),
                           JordanBlock(RHO, 1, 1, 1, PLUS)])
    insts = psi2.instances()
    order2 = BlockOrder((insts[0], insts[1]))  # (1,1) then (2,2)
    gg, order_gg2 = dominate(psi2, order2, ensure_ddr=True)
    assert "discrete_diag_restriction" in classify(gg)
    segs = sorted((b.B.twice, b.A.twice) for b in gg.blocks)
    assert segs[0][1] < segs[1][0]  # strictly separated supports


def test_dominate_order_violation():
    nested_low = from_AB(RHO, HalfInt(4), HalfInt(2), PLUS)
    nested_high = from_AB(RHO, HalfInt(2), HalfInt(0), PLUS)
    psi = make_parameter([nested_low, nested_high])
    insts = psi.instances()
    by_A = sorted(insts, key=lambda i: i[0].A.twice)
    order = BlockOrder(tuple(by_A))
    with pytest.raises(OrderViolation):
        dominate(psi, order, shifts={0: 5})


def test_dominance_translates_segments():
    rng = random.Random(5)
    for _ in range(30):
        psi = random_pure_parameter(rng, max_blocks=4)
        order = random_p_order(rng, psi)
        t = rng.randint(0, 3)
        gg, _ = dominate(psi, order, shifts={i: t for i in
                                             range(len(order.sequence))})
        before = sorted((b.rho.id, b.B.twice, b.A.twice)
                        for b, _ in psi.instances())
        after = sorted((b.rho.id, b.B.twice, b.A.twice)
                       for b, _ in gg.instances())
        assert all(x[1] + 2 * t == y[1] and x[2] + 2 * t == y[2]
                   for x, y in zip(before, after))


def test_ensure_ddr_always_lands_in_ddr():
    rng = random.Random(6)
    for _ in range(60):
        psi = random_pure_parameter(rng, max_blocks=5)
        order = random_p_order(rng, psi)
        gg, order_gg = dominate(psi, order, ensure_ddr=True)
        assert "discrete_diag_restriction" in classify(gg)
        assert satisfies_condition_p(order_gg)


def test_phi_psi_spec_examples():
    assert phi_psi(make_parameter([JordanBlock(RHO, 3, 1)])) == \
        ((RHO, HalfInt(0), 3, 1),)
    out = phi_psi(make_parameter([JordanBlock(RHO, 3, 2)]))
    twists = sorted(t.twice for r, t, a, m in out if a == 3)
    assert twists == [-1, 1]
    out2 = phi_psi(make_parameter([JordanBlock(RHO, 1, 3)]))
    assert sorted(t.twice for _, t, a, m in out2) == [-2, 0, 2]


def test_classify_stable_under_relabeling():
    rng = random.Random(9)
    for _ in range(30):
        psi = random_pure_parameter(rng, max_blocks=4)
        renamed = ArthurParameter(psi.group, tuple(
            JordanBlock(RhoLabel("x" + b.rho.id, b.rho.dim,
                                 b.rho.self_dual_type, b.rho.det_char),
                        b.a, b.b, b.mult, b.zeta) for b in psi.blocks))
        assert classify(psi) == classify(renamed)


def test_split_p_np_reassembly():
    # the two halves and the dual of the second recover the input
    tau = RhoLabel("tau", 1, NOT_SELF_DUAL)
    wrong_parity = JordanBlock(RHO, 2, 1, 2)   # self-dual, symplectic type
    pure = JordanBlock(RHO, 5, 1)
    pair_a = JordanBlock(tau, 2, 1)
    pair_b = JordanBlock(tau.dual(), 2, 1)
    psi = ArthurParameter(GroupForm(SP, 6),
                          (wrong_parity, pure, pair_a, pair_b))
    psi_p, psi_np = split_p_np(psi)
    rebuilt = {}
    for blk in list(psi_p.blocks):
        rebuilt[blk.key()] = rebuilt.get(blk.key(), 0) + blk.mult
    for blk in psi_np:
        for one in (blk, JordanBlock(blk.rho.dual(), blk.a, blk.b)):
            rebuilt[one.key()] = rebuilt.get(one.key(), 0) + blk.mult
    original = {b.key(): b.mult for b in psi.blocks}
    assert rebuilt == original
    total_np = sum(b.mult * b.dim for b in psi_np)
    assert psi_p.group.N + 2 * total_np == psi.group.N
