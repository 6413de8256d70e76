"""Horizontal linkage of modules and functors, and recognition of Ext^1 functors."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .agj import satellite
from .freyd import (
    FpFunctor,
    IsoDecision,
    Verdict,
    ext1_functor,
    first_disagreement,
    iso_functors,
)
from .modules import (
    FpModule,
    cokernel_mor,
    invariant_factors,
    stable_iso,
    stable_part,
    syzygy,
    transpose,
)
from .ring import RingSpec


def omega_tr(M: FpModule) -> FpModule:
    return syzygy(transpose(M))


STAGES = ("M", "Tr M", "Omega Tr M", "Tr Omega Tr M", "Omega Tr Omega Tr M")


@dataclass(frozen=True)
class LinkageTrace:
    modules: tuple
    factors: tuple
    linked: bool

    @property
    def stably_zero(self) -> bool:
        """M and its double image both have no non-projective part."""
        return not stable_part(self.modules[0]) and not stable_part(self.modules[-1])

    def render(self) -> str:
        return " -> ".join(f.render() for f in self.factors)


def linkage_chain(M: FpModule) -> tuple:
    T1 = transpose(M)
    O1 = syzygy(T1)
    T2 = transpose(O1)
    O2 = syzygy(T2)
    return (M, T1, O1, T2, O2)


def linked_module(M: FpModule) -> tuple[bool, LinkageTrace]:
    """M is horizontally linked when it is stably isomorphic to Omega Tr Omega Tr M."""
    chain = linkage_chain(M)
    linked = stable_iso(M, chain[-1])
    return linked, LinkageTrace(chain, tuple(invariant_factors(N) for N in chain), linked)


def candidate_module(F: FpFunctor) -> FpModule:
    """coker of the presenting arrow; recovers M from the arrow of Ext^1(M, -)."""
    C, _ = cokernel_mor(F.arrow)
    return C


def extension_recognize(F: FpFunctor, budget: int = 2,
                        testbed: Optional[Sequence[FpModule]] = None) -> Optional[FpModule]:
    """M with F iso to Ext^1(M, -), when the candidate module is verified to work."""
    M = candidate_module(F)
    decision = iso_functors(F, ext1_functor(M, F.side), budget, testbed)
    return M if decision.is_yes else None


def linked_functor(F: FpFunctor, budget: int = 2,
                   testbed: Optional[Sequence[FpModule]] = None) -> IsoDecision:
    """Decide F iso S^2 S_2 F.

    Extension functors take the module route (F = Ext^1(M, -) is linked exactly
    when M is); everything else goes through ``iso_functors``.
    """
    M = extension_recognize(F, budget, testbed)
    if M is not None:
        linked, trace = linked_module(M)
        if linked:
            return IsoDecision(Verdict.YES, reason=f"Ext^1 of a linked module ({trace.render()})")
        decision = IsoDecision(Verdict.NO, reason=f"Ext^1 of a non-linked module ({trace.render()})")
        if testbed is not None:
            bad = first_disagreement(F, satellite(satellite(F, -2), 2), testbed)
            if bad is not None:
                A, FA, GA = bad
                decision = IsoDecision(Verdict.NO, certificate=A, values=(FA, GA), reason=decision.reason)
        return decision
    return iso_functors(F, satellite(satellite(F, -2), 2), budget, testbed)


@dataclass(frozen=True)
class LinkageRow:
    d: int
    module: FpModule
    linked: bool
    stably_zero: bool
    trace: LinkageTrace


def linkage_table(ring: RingSpec) -> list[LinkageRow]:
    """Linkage of every cyclic module R/(d), d | n, over Z/n (or GF(p))."""
    if not ring.modulus:
        raise ValueError("linkage tables are indexed by divisors of n; Z has none to enumerate")
    rows = []
    for d in range(1, ring.modulus + 1):
        if ring.modulus % d:
            continue
        M = FpModule.cyclic(ring, d)
        linked, trace = linked_module(M)
        rows.append(LinkageRow(d, M, linked, trace.stably_zero, trace))
    return rows
