"""Integer-linear combinations of symbolic packet terms.

Terms record a path of formal operations (parabolic prefixes and Jacquet
markers) over a core label; sums implement the two block recursions and
a brute-force check of their endoscopic sign bookkeeping.  Jacquet
markers are never evaluated; they can only annihilate a term through a
vanishing certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Tuple

from .charspace import (MULT, SignVector, S_GT_HAT_SIGMA0, eps_zero,
                        in_character_space, pair, s_psi, value_at)
from .errors import DomainError, NoCompoundBlock, NotDDR
from .halfint import HalfInt, hrange, sign_pow
from .params import (MINUS, PLUS, ArthurParameter, Instance, JordanBlock,
                     classify, from_AB)
from .segments import jac_chain_possible


@dataclass(frozen=True)
class Induce:
    """Formal parabolic prefix by the segment <x, ..., y> twisted by rho."""

    rho_id: str
    x: HalfInt
    y: HalfInt

    def __str__(self) -> str:
        return f"<{self.rho_id};{self.x}..{self.y}>"


@dataclass(frozen=True)
class Jac:
    """Formal Jacquet marker at an exponent sequence."""

    rho_id: str
    exponents: Tuple[HalfInt, ...]

    def __str__(self) -> str:
        seq = ",".join(str(x) for x in self.exponents)
        return f"Jac[{self.rho_id};{seq}]"


Op = object  # Induce | Jac


@dataclass(frozen=True)
class CoreLabel:
    """A parameter with an optional character value on every block.

    Blocks are kept as (block, sign) pairs sorted canonically; sign None
    means the core is a stable-packet label without a character.
    """

    group: object
    entries: Tuple[Tuple[JordanBlock, Optional[int]], ...]

    @staticmethod
    def of(psi: ArthurParameter,
           signs: Optional[SignVector] = None) -> "CoreLabel":
        insts = psi.instances()
        if signs is None:
            ent = tuple((blk, None) for blk, _ in insts)
        else:
            ent = tuple((blk, sg) for (blk, _), sg in zip(insts, signs.signs))
        return CoreLabel(psi.group, tuple(sorted(
            ent, key=lambda e: (e[0].key(), e[1] or 0))))

    def parameter(self) -> ArthurParameter:
        counts: Dict[tuple, int] = {}
        blocks: Dict[tuple, JordanBlock] = {}
        for blk, _ in self.entries:
            counts[blk.key()] = counts.get(blk.key(), 0) + 1
            blocks[blk.key()] = blk
        return ArthurParameter(self.group, tuple(
            replace(blocks[k], mult=counts[k]) for k in counts))

    def __str__(self) -> str:
        body = ", ".join(
            f"{blk}:{'' if sg is None else ('+' if sg == 1 else '-')}"
            for blk, sg in self.entries)
        return f"[{body}]"


@dataclass(frozen=True)
class BasisTerm:
    ops: Tuple[Op, ...]
    core: CoreLabel

    @property
    def prefix(self) -> Tuple[Induce, ...]:
        return tuple(op for op in self.ops if isinstance(op, Induce))

    @property
    def jac_ops(self) -> Tuple[Jac, ...]:
        return tuple(op for op in self.ops if isinstance(op, Jac))

    def __str__(self) -> str:
        ops = " ".join(str(op) for op in self.ops)
        return f"{ops} |x {self.core}" if ops else str(self.core)


class FormalSum:
    """A finite integer combination of basis terms."""

    def __init__(self, terms: Optional[Dict[BasisTerm, int]] = None):
        self.terms: Dict[BasisTerm, int] = {}
        if terms:
            for t, c in terms.items():
                if c:
                    self.terms[t] = self.terms.get(t, 0) + c
            self.terms = {t: c for t, c in self.terms.items() if c}

    @staticmethod
    def zero() -> "FormalSum":
        return FormalSum()

    @staticmethod
    def single(term: BasisTerm, coeff: int = 1) -> "FormalSum":
        return FormalSum({term: coeff})

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return FormalSum(out)

    def __neg__(self) -> "FormalSum":
        return FormalSum({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, k: int) -> "FormalSum":
        return FormalSum({t: k * c for t, c in self.terms.items()})

    def map_terms(self, fn) -> "FormalSum":
        out: Dict[BasisTerm, int] = {}
        for t, c in self.terms.items():
            nt = fn(t)
            out[nt] = out.get(nt, 0) + c
        return FormalSum(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for t, c in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            bits.append(f"{'+' if c >= 0 else '-'}{abs(c)} {t}")
        return "  ".join(bits)

    def prune_vanishing(self) -> "FormalSum":
        """Drop terms whose innermost Jacquet marker provably vanishes."""
        out = {}
        for t, c in self.terms.items():
            if not _term_vanishes(t):
                out[t] = c
        return FormalSum(out)


def _term_vanishes(term: BasisTerm) -> bool:
    # only the marker adjacent to the core is certified against it
    if not term.ops or not isinstance(term.ops[-1], Jac):
        return False
    jac = term.ops[-1]
    psi = term.core.parameter()
    if not jac.exponents:
        return False
    exps = jac.exponents
    zeta = PLUS if exps[0].twice >= 0 else MINUS
    x = exps[0] * zeta
    y = exps[-1] * zeta
    rho = next((blk.rho for blk, _ in term.core.entries
                if blk.rho.id == jac.rho_id), None)
    if rho is None:
        return True  # no blocks of this label at all
    if x.twice < 0 or x.twice > y.twice:
        return False  # not a certificate shape we can test
    return not jac_chain_possible(psi, rho, zeta, x, y)


def _find_instance(psi: ArthurParameter, chosen: Instance) -> JordanBlock:
    for blk, k in psi.instances():
        if (blk, k) == chosen:
            return blk
    raise DomainError(f"{chosen} is not a block instance of the parameter")


def _require_compound(blk: JordanBlock) -> Tuple[HalfInt, HalfInt, int]:
    A, B = blk.A, blk.B
    if A == B:
        raise NoCompoundBlock(f"{blk} has A == B")
    return A, B, blk.zeta_resolved() if blk.a == blk.b else blk.zeta


def _core_without(psi: ArthurParameter, chosen: Instance,
                  signs: Optional[SignVector],
                  extra: List[Tuple[JordanBlock, Optional[int]]]
                  ) -> CoreLabel:
    entries = []
    for inst, sg in zip(psi.instances(),
                        signs.signs if signs else
                        [None] * len(psi.instances())):
        if inst == chosen:
            continue
        entries.append((inst[0], sg))
    entries.extend(extra)
    removed = chosen[0].dim
    added = sum(blk.dim for blk, _ in extra)
    group = type(psi.group)(psi.group.kind,
                            psi.group.n - (removed - added) // 2,
                            psi.group.eta)
    return CoreLabel(group, tuple(sorted(
        entries, key=lambda e: (e[0].key(), e[1] or 0))))


def ddr_recursion_expand(psi: ArthurParameter, eps: SignVector,
                         chosen: Instance) -> FormalSum:
    """Expand one compound block of a DDR parameter at the character level.

    The C-indexed terms carry a parabolic prefix and a Jacquet marker over
    a core with the base raised by two; the split terms sum over the sign
    eta with the printed coefficient.  When the raised base would exceed
    the top and the block's character value is -1 the C-terms vanish.
    """
    if "discrete_diag_restriction" not in classify(psi):
        raise NotDDR("the recursion expands DDR parameters")
    if not in_character_space(eps, psi, S_GT_HAT_SIGMA0):
        raise DomainError("eps must satisfy the character product condition")
    blk = _find_instance(psi, chosen)
    A, B, zeta = _require_compound(blk)
    eta0 = value_at(psi, eps, chosen)
    rho = blk.rho
    out = FormalSum.zero()

    gap = int(A - B) + 1  # A - B + 1
    suppressed = (B + 2).twice > A.twice and eta0 == -1
    if not suppressed:
        for C in hrange(B + 1, A):
            coeff = sign_pow(int(A - C))
            extra = []
            if (B + 2).twice <= A.twice:
                extra.append((from_AB(rho, A, B + 2, zeta), eta0))
            ops = [Induce(rho.id, zeta * B, -(zeta * C))]
            jac_seq = tuple(zeta * D for D in hrange(B + 2, C))
            if jac_seq:
                ops.append(Jac(rho.id, jac_seq))
            core = _core_without(psi, chosen, eps, extra)
            out = out + FormalSum.single(BasisTerm(tuple(ops), core), coeff)

    for eta in (1, -1):
        coeff = sign_pow(gap // 2)
        coeff *= eta if gap % 2 else 1
        coeff *= eta0 if (gap - 1) % 2 else 1
        extra = [(from_AB(rho, A, B + 1, zeta), eta),
                 (from_AB(rho, B, B, zeta), eta * eta0)]
        core = _core_without(psi, chosen, eps, extra)
        out = out + FormalSum.single(BasisTerm((), core), coeff)
    return out


def packet_recursion_expand(psi: ArthurParameter,
                            chosen: Instance) -> FormalSum:
    """Expand one compound block at the stable-packet level."""
    if "discrete_diag_restriction" not in classify(psi):
        raise NotDDR("the recursion expands DDR parameters")
    blk = _find_instance(psi, chosen)
    A, B, zeta = _require_compound(blk)
    rho = blk.rho
    out = FormalSum.zero()

    for C in hrange(B + 1, A):
        coeff = sign_pow(int(A - C))
        extra = []
        if (B + 2).twice <= A.twice:
            extra.append((from_AB(rho, A, B + 2, zeta), None))
        ops = [Induce(rho.id, zeta * B, -(zeta * C))]
        jac_seq = tuple(zeta * D for D in hrange(B + 2, C))
        if jac_seq:
            ops.append(Jac(rho.id, jac_seq))
        core = _core_without(psi, chosen, None, extra)
        out = out + FormalSum.single(BasisTerm(tuple(ops), core), coeff)

    gap = int(A - B) + 1
    extra = [(from_AB(rho, A, B + 1, zeta), None),
             (from_AB(rho, B, B, zeta), None)]
    core = _core_without(psi, chosen, None, extra)
    out = out + FormalSum.single(BasisTerm((), core), sign_pow(gap // 2))
    return out


def packet_expand_fully(psi: ArthurParameter, limit: int = 100000
                        ) -> FormalSum:
    """Iterate the stable recursion until every core is elementary."""
    work = FormalSum.single(BasisTerm((), CoreLabel.of(psi)))
    done = FormalSum.zero()
    steps = 0
    while work.terms:
        steps += 1
        if steps > limit:
            raise DomainError("expansion exceeded the step limit")
        term, coeff = next(iter(sorted(work.terms.items(),
                                       key=lambda kv: str(kv[0]))))
        work = work - FormalSum.single(term, coeff)
        core_psi = term.core.parameter()
        compound = [inst for inst in core_psi.instances()
                    if inst[0].A != inst[0].B]
        if not compound:
            done = done + FormalSum.single(term, coeff)
            continue
        inner = packet_recursion_expand(core_psi, compound[0])
        for t2, c2 in inner.terms.items():
            merged = BasisTerm(term.ops + t2.ops, t2.core)
            work = work + FormalSum.single(merged, coeff * c2)
    return done


def endoscopic_sign_bookkeeping(psi: ArthurParameter, s: SignVector,
                                chosen: Instance) -> bool:
    """Brute-force check of the character identities behind the recursion.

    For every admissible eps, and every lift to the two-block split, the
    pairing against s extended across the recursion must reproduce the
    printed coefficients.
    """
    if "discrete_diag_restriction" not in classify(psi):
        raise NotDDR("bookkeeping is checked on DDR parameters")
    blk = _find_instance(psi, chosen)
    A, B, zeta = _require_compound(blk)
    rho = blk.rho
    gap = int(A - B) + 1

    rest = [inst for inst in psi.instances() if inst != chosen]
    s_rest = [value_at(psi, s, inst) for inst in rest]
    s_val = value_at(psi, s, chosen)

    blk1 = from_AB(rho, A, B + 2, zeta) if (B + 2).twice <= A.twice else None
    blk2a = from_AB(rho, A, B + 1, zeta)
    blk2b = from_AB(rho, B, B, zeta)

    def build(extra: List[Tuple[JordanBlock, int]]) -> ArthurParameter:
        blocks = [inst[0] for inst in rest] + [b for b, _ in extra]
        group = type(psi.group)(
            psi.group.kind,
            psi.group.n - (blk.dim - sum(b.dim for b, _ in extra)) // 2,
            psi.group.eta)
        return ArthurParameter(group, tuple(blocks))

    psi2 = build([(blk2a, 0), (blk2b, 0)])

    def vec(param: ArthurParameter,
            values: Dict[tuple, int]) -> SignVector:
        return SignVector(MULT, tuple(values[inst[0].key()]
                                      for inst in param.instances()))

    ok = True
    for eps_signs in itertools.product((1, -1), repeat=len(rest) + 1):
        eps_vals = dict(zip([inst[0].key() for inst in rest], eps_signs))
        eps_vals[blk.key()] = eps_signs[-1]
        if _product(eps_vals.values()) != 1:
            continue
        eps = vec(psi, eps_vals)
        base = pair(eps, s.pointwise(s_psi(psi)))
        eta0 = eps_vals[blk.key()]

        # identification with the raised-base parameter
        if blk1 is not None:
            psi1 = build([(blk1, 0)])
            vals1 = dict(eps_vals)
            del vals1[blk.key()]
            vals1[blk1.key()] = eta0
            s1_vals = dict(zip([inst[0].key() for inst in rest], s_rest))
            s1_vals[blk1.key()] = s_val
            eps1 = vec(psi1, vals1)
            s1 = vec(psi1, s1_vals)
            if pair(eps1, s1.pointwise(s_psi(psi1))) != base:
                ok = False

        # all lifts to the two-block split
        for eta in (1, -1):
            vals2 = dict(eps_vals)
            del vals2[blk.key()]
            vals2[blk2a.key()] = eta
            vals2[blk2b.key()] = eta * eta0
            s2_vals = dict(zip([inst[0].key() for inst in rest], s_rest))
            s2_vals[blk2a.key()] = s_val
            s2_vals[blk2b.key()] = s_val
            eps2 = vec(psi2, vals2)
            s2 = vec(psi2, s2_vals)
            predicted = (eta if gap % 2 else 1) * \
                (eta0 if (gap - 1) % 2 else 1) * base
            if pair(eps2, s2.pointwise(s_psi(psi2))) != predicted:
                ok = False
    return ok


def _product(values: Iterable[int]) -> int:
    p = 1
    for v in values:
        p *= v
    return p


def twist_by_orientation(term: BasisTerm) -> BasisTerm:
    """Multiply a term's character data by the orientation character of
    its own core parameter."""
    psi = term.core.parameter()
    tw = eps_zero(psi, MULT)
    lookup: Dict[tuple, List[int]] = {}
    for (inst, sg) in zip(psi.instances(), tw.signs):
        lookup.setdefault(inst[0].key(), []).append(sg)
    entries = []
    for blk, sg in term.core.entries:
        t = lookup[blk.key()][0]
        entries.append((blk, sg if sg is None else sg * t))
    return BasisTerm(term.ops,
                     CoreLabel(term.core.group, tuple(sorted(
                         entries, key=lambda e: (e[0].key(), e[1] or 0)))))
