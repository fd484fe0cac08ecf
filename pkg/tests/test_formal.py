import random

import pytest

from arthurcalc.charspace import (MULT, SignVector, enumerate_characters,
                                  enumerate_elements, eps_zero,
                                  S_GT_HAT_SIGMA0)
from arthurcalc.errors import NoCompoundBlock, NotDDR
from arthurcalc.formal import (BasisTerm, CoreLabel, FormalSum, Induce, Jac,
                               ddr_recursion_expand,
                               endoscopic_sign_bookkeeping,
                               packet_expand_fully, packet_recursion_expand,
                               twist_by_orientation)
from arthurcalc.halfint import HalfInt
from arthurcalc.labels import ORTHOGONAL, QuadCharacter, RhoLabel
from arthurcalc.params import (MINUS, PLUS, JordanBlock, classify, from_AB,
                               make_parameter)
from arthurcalc.testing import random_ddr_parameter

RHO = RhoLabel("rho", 1, ORTHOGONAL)


def _psi_10():
    """Single compound block (A, B) = (1, 0) plus a separated filler."""
    return make_parameter([from_AB(RHO, HalfInt(2), HalfInt(0), PLUS),
                           from_AB(RHO, HalfInt(6), HalfInt(6), PLUS)])


def _compound(psi):
    return next(inst for inst in psi.instances()
                if inst[0].A != inst[0].B)


def test_ddr_expand_suppression():
    psi = _psi_10()
    chosen = _compound(psi)
    idx = psi.instances().index(chosen)

    eps_minus = SignVector(MULT, tuple(
        -1 if i == idx else -1 for i in range(2)))
    # eta0 = -1 at the compound block: only the two split terms remain
    out = ddr_recursion_expand(psi, eps_minus, chosen)
    assert len(out) == 2
    assert all(not t.ops for t in out.terms)

    eps_plus = SignVector(MULT, (1, 1))
    out2 = ddr_recursion_expand(psi, eps_plus, chosen)
    assert len(out2) == 3  # one C-term plus two split terms


def test_ddr_expand_c_term_shape():
    psi = _psi_10()
    chosen = _compound(psi)
    eps = SignVector(MULT, (1, 1))
    out = ddr_recursion_expand(psi, eps, chosen)
    c_terms = [(t, c) for t, c in out.terms.items() if t.ops]
    assert len(c_terms) == 1
    term, coeff = c_terms[0]
    assert coeff == 1  # C = A contributes (+1)
    ind = term.prefix[0]
    assert (ind.x.twice, ind.y.twice) == (0, -2)  # <zeta B, ..., -zeta C>
    assert term.jac_ops == ()  # B + 2 exceeds C = A = B + 1
    # raised-base block is empty: the core keeps only the filler
    assert [b.a for b, _ in term.core.entries] == [7]


def test_ddr_expand_taller_block():
    psi = make_parameter([from_AB(RHO, HalfInt(4), HalfInt(0), PLUS),
                          from_AB(RHO, HalfInt(8), HalfInt(8), PLUS)])
    chosen = _compound(psi)
    eps = SignVector(MULT, (1, 1))
    out = ddr_recursion_expand(psi, eps, chosen)
    # C in {1, 2} plus two split terms
    assert len(out) == 4
    coeffs = sorted(c for t, c in out.terms.items() if t.ops)
    assert coeffs == [-1, 1]  # (-1)^{A-C}
    jacs = [t.jac_ops for t, c in out.terms.items()
            if t.ops and c == 1]
    assert jacs[0][0].exponents == (HalfInt(4),)  # Jac at zeta(B+2) = 2

    split_coeffs = sorted(c for t, c in out.terms.items() if not t.ops)
    # [(A-B+1)/2] = 1, so the split carries (-1) * eta-dependence
    assert split_coeffs == [-1, 1]


def test_ddr_expand_negative_zeta():
    psi = make_parameter([from_AB(RHO, HalfInt(2), HalfInt(0), MINUS),
                          from_AB(RHO, HalfInt(6), HalfInt(6), MINUS)])
    chosen = _compound(psi)
    eps = SignVector(MULT, (1, 1))
    out = ddr_recursion_expand(psi, eps, chosen)
    term = next(t for t in out.terms if t.ops)
    ind = term.prefix[0]
    assert (ind.x.twice, ind.y.twice) == (0, 2)  # <0, ..., +C> for zeta=-1


def test_packet_expand_spec_example():
    psi = _psi_10()
    chosen = _compound(psi)
    out = packet_recursion_expand(psi, chosen)
    assert len(out) == 2
    shapes = sorted(len(t.core.entries) for t in out.terms)
    assert shapes == [1, 3]  # C-term loses the block, split gains one


def test_packet_expand_coefficient_of_top():
    psi = make_parameter([from_AB(RHO, HalfInt(6), HalfInt(2), PLUS),
                          from_AB(RHO, HalfInt(10), HalfInt(10), PLUS)])
    chosen = _compound(psi)
    out = packet_recursion_expand(psi, chosen)
    top = [c for t, c in out.terms.items()
           if t.prefix and t.prefix[0].y.twice == -6]  # C = A term
    assert top == [1]


def test_no_compound_block():
    psi = make_parameter([from_AB(RHO, HalfInt(2), HalfInt(2), PLUS)])
    with pytest.raises(NoCompoundBlock):
        packet_recursion_expand(psi, psi.instances()[0])
    tall = make_parameter([JordanBlock(RHO, 2, 2, 2, PLUS),
                           JordanBlock(RHO, 1, 1, 1, PLUS)])
    with pytest.raises(NotDDR):
        packet_recursion_expand(tall, tall.instances()[0])


def test_formal_sum_group_laws():
    psi = _psi_10()
    t1 = BasisTerm((), CoreLabel.of(psi))
    t2 = BasisTerm((Induce(RHO.id, HalfInt(0), HalfInt(0)),),
                   CoreLabel.of(psi))
    a = FormalSum.single(t1, 2) + FormalSum.single(t2, -1)
    b = FormalSum.single(t2, 1) + FormalSum.single(t1, -2)
    assert (a + b) == FormalSum.zero()
    assert a - a == FormalSum.zero()
    assert a.scale(3).terms[t1] == 6


def test_full_expansion_terminates_elementary_cores():
    rng = random.Random(55)
    for _ in range(40):
        psi = random_ddr_parameter(rng, max_blocks=2, max_level=6)
        out = packet_expand_fully(psi)
        assert len(out) >= 1
        for term in out.terms:
            core = term.core.parameter()
            assert all(b.A == b.B for b in core.blocks)


def test_expand_empty_sum():
    from arthurcalc.params import ArthurParameter, GroupForm, SO_EVEN
    empty = ArthurParameter(GroupForm(SO_EVEN, 0, QuadCharacter.of("e")), ())
    out = packet_expand_fully(empty)
    assert len(out) == 1  # the empty core itself


def test_prune_vanishing():
    psi = _psi_10()
    rho_far = from_AB(RHO, HalfInt(20), HalfInt(20), PLUS)
    core = CoreLabel.of(make_parameter([rho_far]))
    # a marker at an exponent no block can start vanishes
    dead = BasisTerm((Jac(RHO.id, (HalfInt(2), HalfInt(4))),), core)
    alive = BasisTerm((Jac(RHO.id, (HalfInt(20),)),), core)
    s = FormalSum.single(dead) + FormalSum.single(alive)
    pruned = s.prune_vanishing()
    assert dead not in pruned.terms and alive in pruned.terms


def test_endoscopic_bookkeeping_small():
    psi = _psi_10()
    chosen = _compound(psi)
    for s in enumerate_elements(psi):
        assert endoscopic_sign_bookkeeping(psi, s, chosen)


def test_endoscopic_bookkeeping_random():
    rng = random.Random(65)
    rounds = 0
    for _ in range(60):
        psi = random_ddr_parameter(rng, max_blocks=3, max_level=8)
        compounds = [inst for inst in psi.instances()
                     if inst[0].A != inst[0].B]
        if not compounds or len(psi.instances()) > 5:
            continue
        for chosen in compounds:
            for s in enumerate_elements(psi):
                assert endoscopic_sign_bookkeeping(psi, s, chosen)
                rounds += 1
    assert rounds > 50


def test_orientation_twist_property():
    rng = random.Random(75)
    rounds = 0
    for _ in range(200):
        psi = random_ddr_parameter(rng, max_blocks=3, max_level=8)
        if psi.group.kind != "SOeven":
            continue
        compounds = [inst for inst in psi.instances()
                     if inst[0].A != inst[0].B]
        if not compounds:
            continue
        chosen = compounds[0]
        for eps in enumerate_characters(psi, S_GT_HAT_SIGMA0)[:6]:
            twisted_eps = eps.pointwise(eps_zero(psi, MULT))
            lhs = ddr_recursion_expand(psi, twisted_eps, chosen)
            rhs = ddr_recursion_expand(psi, eps, chosen) \
                .map_terms(twist_by_orientation)
            assert lhs == rhs
            rounds += 1
    assert rounds > 30


def _expand_fully_with_characters(psi, eps):
    """Iterate the character-level recursion down to elementary cores."""
    from arthurcalc.formal import BasisTerm, CoreLabel, FormalSum
    work = FormalSum.single(BasisTerm((), CoreLabel.of(psi, eps)))
    done = FormalSum.zero()
    while work.terms:
        term, coeff = next(iter(sorted(work.terms.items(),
                                       key=lambda kv: str(kv[0]))))
        work = work - FormalSum.single(term, coeff)
        core_psi = term.core.parameter()
        signs = SignVector(MULT, tuple(sg for _, sg in term.core.entries))
        compound = [inst for inst in core_psi.instances()
                    if inst[0].A != inst[0].B]
        if not compound:
            done = done + FormalSum.single(term, coeff)
            continue
        inner = ddr_recursion_expand(core_psi, signs, compound[0])
        for t2, c2 in inner.terms.items():
            work = work + FormalSum.single(
                BasisTerm(term.ops + t2.ops, t2.core), coeff * c2)
    return done


def test_full_character_expansion_consistent():
    rng = random.Random(85)
    rounds = 0
    for _ in range(60):
        psi = random_ddr_parameter(rng, max_blocks=2, max_level=6)
        if sum(int(b.A.twice - b.B.twice) for b in psi.blocks) > 8:
            continue
        for eps in enumerate_characters(psi, S_GT_HAT_SIGMA0)[:4]:
            out = _expand_fully_with_characters(psi, eps)
            for term in out.terms:
                core = term.core.parameter()
                assert all(b.A == b.B for b in core.blocks)
                prod = 1
                for _, sg in term.core.entries:
                    prod *= sg
                assert prod == 1  # characters survive the bookkeeping
            rounds += 1
    assert rounds > 20
