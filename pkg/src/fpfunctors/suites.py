"""Property suites shared by the self-test command and the acceptance tests.

Each suite checks one family of identities on seeded random instances and the
test bed, and returns a ``SuiteResult``.  ``Unknown`` isomorphism verdicts are
counted as skips, never as passes or failures.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .agj import dual, defect, g_dim_zero, satellite
from .freyd import (
    FpFunctor,
    Verdict,
    evaluate,
    ext1_functor,
    functor_sum,
    iso_functors,
    nat_hom,
    rep_functor,
    tensor_functor,
    tor_functor,
)
from .linkage import linked_functor, linked_module
from .modules import (
    FpModule,
    ext_value,
    invariant_factors,
    is_projective,
    iso_modules,
    stable_hom,
    syzygy,
    tor_value,
)
from .ring import RingSpec
from .testkit import (
    Testbed,
    check_objectwise,
    default_testbed,
    four_term_exact,
    homology_signature,
    module_signature,
    random_functor,
    random_nat,
)


@dataclass
class SuiteConfig:
    ring: RingSpec
    seed: int = 0
    nats: int = 50
    functors: int = 20
    budget: int = 2
    gdim_depth: int = 3
    testbed: Optional[Testbed] = None

    def bed(self) -> Testbed:
        return self.testbed or default_testbed(self.ring, self.seed)


@dataclass
class SuiteResult:
    name: str
    ring: RingSpec
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        head = f"{status} {self.name} over {self.ring}: {self.checked} checks{extra} in {self.seconds:.1f}s"
        if self.failures:
            head += f"; first failure: {self.failures[0]}"
        return head


def _agree(F: FpFunctor, G: FpFunctor, bed: Testbed) -> bool:
    return check_objectwise(F, G, bed.modules).all_agree


def _functors(cfg: SuiteConfig) -> list[FpFunctor]:
    return [random_functor(cfg.ring, cfg.seed * 1000 + i) for i in range(cfg.functors)]


def exactness(cfg: SuiteConfig, res: SuiteResult) -> None:
    bed = cfg.bed()
    for i in range(cfg.nats):
        alpha = random_nat(cfg.ring, cfg.seed * 1000 + i)
        for A in bed:
            res.check(four_term_exact(alpha, A), f"nat #{i} at {A}")


def duality_involution(cfg: SuiteConfig, res: SuiteResult) -> None:
    bed = cfg.bed()
    for i, F in enumerate(_functors(cfg)):
        DDF = dual(dual(F))
        res.check(_agree(DDF, F, bed), f"random functor #{i}: DDF and F differ objectwise")
        d = iso_functors(DDF, F, cfg.budget, bed.modules)
        if d.verdict is Verdict.UNKNOWN:
            res.skipped += 1
        else:
            res.check(d.is_yes, f"random functor #{i}: DDF not iso to F")
    for M in bed:
        for make in (rep_functor, tensor_functor, ext1_functor):
            F = make(M)
            d = iso_functors(dual(dual(F)), F, cfg.budget, bed.modules)
            res.check(d.is_yes and d.witness is not None, f"{make.__name__}({M}): DD verdict {d.verdict.value}")


def agj_bridges(cfg: SuiteConfig, res: SuiteResult) -> None:
    bed = cfg.bed()
    for M in bed:
        res.check(_agree(dual(rep_functor(M)), tensor_functor(M), bed), f"D rep({M})")
        res.check(_agree(dual(tensor_functor(M)), rep_functor(M), bed), f"D tensor({M})")
        res.check(_agree(dual(ext1_functor(M)), tor_functor(M), bed), f"D ext1({M})")
        res.check(_agree(dual(tor_functor(M)), ext1_functor(M), bed), f"D tor1({M})")


def satellite_identities(cfg: SuiteConfig, res: SuiteResult) -> None:
    bed = cfg.bed()
    for M in bed:
        res.check(_agree(satellite(rep_functor(M), 1), ext1_functor(M), bed), f"S^1 rep({M})")
        res.check(_agree(satellite(tensor_functor(M), -1), tor_functor(M), bed), f"S_1 tensor({M})")
        res.check(_agree(satellite(ext1_functor(M), 1), ext1_functor(syzygy(M)), bed), f"S^1 ext1({M})")


def anticommutation(cfg: SuiteConfig, res: SuiteResult) -> None:
    bed = cfg.bed()
    for i, F in enumerate(_functors(cfg)):
        DF = dual(F)
        res.check(_agree(dual(satellite(F, 1)), satellite(DF, -1), bed), f"#{i}: D S^1 vs S_1 D")
        res.check(_agree(dual(satellite(F, -1)), satellite(DF, 1), bed), f"#{i}: D S_1 vs S^1 D")


def defect_laws(cfg: SuiteConfig, res: SuiteResult) -> None:
    bed = cfg.bed()
    R = FpModule.free(cfg.ring, 1)
    for i, F in enumerate(_functors(cfg)):
        DF = dual(F)
        res.check(iso_modules(defect(F), evaluate(DF, R)), f"#{i}: w(F) vs DF(R)")
        res.check(iso_modules(defect(DF), evaluate(F, R)), f"#{i}: w(DF) vs F(R)")
        for n in (1, 2):
            res.check(iso_modules(defect(satellite(F, -n)), evaluate(satellite(DF, n), R)),
                      f"#{i}: w(S_{n} F) vs S^{n}(DF)(R)")
    for M in bed:
        for n in (1, 2):
            res.check(iso_modules(defect(tor_functor(M, n)), ext_value(n, M, R)), f"w(Tor_{n}(-, {M}))")


def linkage_ground_truth(cfg: SuiteConfig, res: SuiteResult) -> None:
    ring = cfg.ring
    if ring.kind == "Z":
        for M in cfg.bed():
            res.check(linked_module(M)[0] == is_projective(M), f"linked vs projective at {M}")
        return
    # over self-injective Z/n every module is stably linked
    for M in cfg.bed():
        res.check(linked_module(M)[0], f"{M} not linked")
    if ring.kind == "Zmod" and ring.modulus == 8:
        expected = {2: (2, 2, 4, 4, 2), 4: (4, 4, 2, 2, 4)}
        for d, chain in expected.items():
            linked, trace = linked_module(FpModule.cyclic(ring, d))
            got = tuple(f.factors for f in trace.factors)
            res.check(linked and got == tuple((c,) for c in chain), f"trace of Z/{d}: {trace.render()}")


def linkage_coherence(cfg: SuiteConfig, res: SuiteResult) -> None:
    for M in cfg.bed():
        d = linked_functor(ext1_functor(M), cfg.budget, cfg.bed().modules)
        if d.verdict is Verdict.UNKNOWN:
            res.skipped += 1
            res.failures.append(f"ext1({M}): Unknown")
            continue
        res.check(d.is_yes == linked_module(M)[0], f"ext1({M}): {d.verdict.value}")


def gdim_population(cfg: SuiteConfig) -> list[FpFunctor]:
    """Constructor-built functors, their duals and sums, plus random functors."""
    bed = cfg.bed()
    out = []
    for M in bed:
        out += [rep_functor(M), tensor_functor(M), ext1_functor(M), tor_functor(M)]
    cyc = [M for M in bed if M.gens == 1 and M.nrels == 1]
    for A in cyc:
        for B in cyc:
            out.append(functor_sum(ext1_functor(A), tor_functor(B)))
    out += _functors(cfg)
    return out


def gdim_linkage(cfg: SuiteConfig, res: SuiteResult) -> None:
    if not cfg.ring.is_self_injective:
        res.skipped += 1
        return
    bed = cfg.bed()
    for i, F in enumerate(gdim_population(cfg)):
        if not g_dim_zero(F, cfg.gdim_depth).holds:
            continue
        d = linked_functor(F, cfg.budget, bed.modules)
        if d.verdict is Verdict.UNKNOWN:
            res.skipped += 1
        res.check(d.verdict is not Verdict.NO, f"functor #{i}: G-dimension zero but not linked")


def ext_tor_spot(cfg: SuiteConfig, res: SuiteResult) -> None:
    """Cyclic Ext^1/Tor_1 against brute-force enumeration."""
    ring = cfg.ring
    if ring.kind == "Z":
        pairs = [(a, b) for a in range(2, 10) for b in range(2, 10)]
    else:
        divs = [d for d in range(2, ring.modulus + 1) if ring.modulus % d == 0]
        pairs = [(a, b) for a in divs for b in divs]
    n = ring.modulus
    for a, b in pairs:
        A, B = FpModule.cyclic(ring, a), FpModule.cyclic(ring, b)
        # resolution of Z/a: ... -(n/a)-> R -(a)-> R -> Z/a, or 0 -> Z -(a)-> Z over Z
        back = n // a if n else 0
        ext_sig = homology_signature([b], [b], [b], [[a]], [[back]])
        tor_sig = homology_signature([b], [b], [b], [[back]], [[a]])
        res.check(module_signature(ext_value(1, A, B)) == ext_sig, f"Ext^1(Z/{a}, Z/{b})")
        res.check(module_signature(tor_value(1, A, B)) == tor_sig, f"Tor_1(Z/{a}, Z/{b})")
        if ring.kind == "Z":
            res.check(ext_sig == tor_sig == module_signature(FpModule.cyclic(ring, math.gcd(a, b))),
                      f"Z/gcd({a}, {b})")


def hilton_rees(cfg: SuiteConfig, res: SuiteResult) -> None:
    ring = cfg.ring
    ds = (2, 4, 8) if ring.kind == "Z" or (ring.modulus and ring.modulus % 8 == 0) else \
        tuple(d for d in range(2, ring.modulus + 1) if ring.modulus % d == 0)
    mods = [FpModule.cyclic(ring, d) for d in ds]
    for M in mods:
        for N in mods:
            nat = nat_hom(ext1_functor(M), ext1_functor(N)).module
            res.check(iso_modules(nat, stable_hom(N, M)),
                      f"Nat(ext1({M}), ext1({N})) = {invariant_factors(nat)}")


SUITES: dict[str, Callable[[SuiteConfig, SuiteResult], None]] = {
    "exactness": exactness,
    "duality-involution": duality_involution,
    "agj-bridges": agj_bridges,
    "satellites": satellite_identities,
    "anticommutation": anticommutation,
    "defect": defect_laws,
    "linkage-ground-truth": linkage_ground_truth,
    "linkage-coherence": linkage_coherence,
    "gdim-linkage": gdim_linkage,
    "ext-tor-spot": ext_tor_spot,
    "hilton-rees": hilton_rees,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult(name, cfg.ring)
    start = time.perf_counter()
    SUITES[name](cfg, res)
    res.seconds = time.perf_counter() - start
    return res


def run_all(cfg: SuiteConfig, names: Optional[list[str]] = None) -> list[SuiteResult]:
    return [run_suite(n, cfg) for n in (names or list(SUITES))]
