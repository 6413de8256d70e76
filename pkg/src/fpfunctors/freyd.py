"""Totally finitely presented functors as arrows of modules.

A functor is stored as an arrow ``f: X -> Y`` and denotes
``F(A) = Hom(X, A) / {psi o f : psi in Hom(Y, A)}``.  A natural
transformation ``F -> G`` (G given by ``g: X' -> Y'``) is a pair ``u: X' -> X``,
``v: Y' -> Y`` with ``f u = v g``; it acts by precomposition with u.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

from .modules import (
    FpModule,
    HomModule,
    ModMorphism,
    compose,
    cokernel_mor,
    direct_sum_data,
    factor_through,
    hom_module,
    identity,
    iso_modules,
    kernel_mor,
    minimal_presentation,
    morphism,
    morphisms_equal,
    syzygy,
    syzygy_inclusion,
    tidy,
    zero_morphism,
)
from .ring import Mat, RingSpec, Side, solve_linear


@dataclass(frozen=True)
class Provenance:
    kind: str  # "rep" | "tensor" | "ext1" | "tor" | "derived"
    module: Optional[FpModule] = None
    degree: int = 1


DERIVED = Provenance("derived")


@dataclass(frozen=True)
class FpFunctor:
    arrow: ModMorphism
    side: Side = Side.LEFT
    provenance: Provenance = DERIVED
    half_exact: bool = False

    @property
    def X(self) -> FpModule:
        return self.arrow.src

    @property
    def Y(self) -> FpModule:
        return self.arrow.tgt

    @property
    def ring(self) -> RingSpec:
        return self.arrow.src.ring

    def __str__(self) -> str:
        p = self.provenance
        label = p.kind if p.module is None else f"{p.kind}({p.module})"
        return f"F[{label}; X gens={self.X.gens}, Y gens={self.Y.gens}, side={self.side.value}]"


def functor_of(arrow: ModMorphism, side: Side = Side.LEFT) -> FpFunctor:
    return FpFunctor(arrow, side)


def simplify(F: FpFunctor) -> FpFunctor:
    """Same functor with X and Y replaced by minimal presentations."""
    mx = minimal_presentation(F.X)
    my = minimal_presentation(F.Y)
    arrow = tidy(compose(my.to_min, compose(F.arrow, mx.from_min)))
    return replace(F, arrow=arrow)


def rep_functor(X: FpModule, side: Side = Side.LEFT) -> FpFunctor:
    """Hom(X, -)."""
    zero = FpModule.zero(X.ring)
    return FpFunctor(zero_morphism(X, zero), side, Provenance("rep", X), True)


def tensor_functor(M: FpModule, side: Side = Side.LEFT) -> FpFunctor:
    """- (x) M, presented by the transposed relation matrix between free modules."""
    ring = M.ring
    X, Y = FpModule.free(ring, M.gens), FpModule.free(ring, M.nrels)
    arrow = ModMorphism(X, Y, M.rel.T, Mat.zeros(ring, 0, 0))
    return FpFunctor(arrow, side, Provenance("tensor", M), True)


def ext1_functor(M: FpModule, side: Side = Side.LEFT) -> FpFunctor:
    """Ext^1(M, -) as coker((P, -) -> (Omega M, -))."""
    return FpFunctor(syzygy_inclusion(M), side, Provenance("ext1", M), True)


def zero_functor(ring: RingSpec, side: Side = Side.LEFT) -> FpFunctor:
    return rep_functor(FpModule.zero(ring), side)


def tor_functor(M: FpModule, n: int = 1, side: Side = Side.LEFT) -> FpFunctor:
    """Tor_n(-, M) = Tor_1(-, Omega^(n-1) M), the kernel of - (x) Omega -> - (x) P."""
    if n < 1:
        raise ValueError("Tor degree must be at least 1")
    N = M
    for _ in range(n - 1):
        N = syzygy(N)
    K, _ = kernel_nat(induced_nat("tensor", syzygy_inclusion(N)))
    return FpFunctor(K.arrow, side, Provenance("tor", M, n), True)


def ext_functor(M: FpModule, n: int = 1, side: Side = Side.LEFT) -> FpFunctor:
    """Ext^n(M, -) = Ext^1(Omega^(n-1) M, -)."""
    if n < 1:
        raise ValueError("Ext degree must be at least 1")
    N = M
    for _ in range(n - 1):
        N = syzygy(N)
    return FpFunctor(syzygy_inclusion(N), side, Provenance("ext1" if n == 1 else "ext", M, n), True)


def functor_sum(F: FpFunctor, G: FpFunctor) -> FpFunctor:
    """F (+) G, presented by the block-diagonal arrow."""
    F.ring.check(G.ring)
    X, Y = direct_sum_data(F.X, G.X), direct_sum_data(F.Y, G.Y)
    f, g = F.arrow, G.arrow
    arrow = ModMorphism(X.module, Y.module, f.phi.block_diag(g.phi), f.cert.block_diag(g.cert))
    return FpFunctor(arrow, F.side, DERIVED, F.half_exact and G.half_exact)


# --- natural transformations -------------------------------------------------


@dataclass(frozen=True)
class NatMor:
    """F -> G as (u: G.X -> F.X, v: G.Y -> F.Y) with ``F.arrow u = v G.arrow``."""

    src: FpFunctor
    tgt: FpFunctor
    u: ModMorphism
    v: ModMorphism

    def __add__(self, other: "NatMor") -> "NatMor":
        return NatMor(self.src, self.tgt, self.u + other.u, self.v + other.v)

    def __sub__(self, other: "NatMor") -> "NatMor":
        return NatMor(self.src, self.tgt, self.u - other.u, self.v - other.v)

    def scale(self, c: int) -> "NatMor":
        return NatMor(self.src, self.tgt, self.u.scale(c), self.v.scale(c))


def is_valid_nat(alpha: NatMor) -> bool:
    return morphisms_equal(compose(alpha.src.arrow, alpha.u), compose(alpha.v, alpha.tgt.arrow))


def nat_mor(src: FpFunctor, tgt: FpFunctor, u: ModMorphism, v: ModMorphism) -> NatMor:
    alpha = NatMor(src, tgt, u, v)
    if not is_valid_nat(alpha):
        raise ValueError("pair does not commute with the arrows")
    return alpha


def identity_nat(F: FpFunctor) -> NatMor:
    return NatMor(F, F, identity(F.X), identity(F.Y))


def zero_nat(F: FpFunctor, G: FpFunctor) -> NatMor:
    return NatMor(F, G, zero_morphism(G.X, F.X), zero_morphism(G.Y, F.Y))


def compose_nat(beta: NatMor, alpha: NatMor) -> NatMor:
    """beta after alpha."""
    return NatMor(alpha.src, beta.tgt, compose(alpha.u, beta.u), compose(alpha.v, beta.v))


def induced_nat(kind: str, phi: ModMorphism) -> NatMor:
    """Natural transformation induced by a module map phi: M -> N.

    ``rep``: Hom(N, -) -> Hom(M, -); ``tensor``: - (x) M -> - (x) N;
    ``ext1``: Ext^1(N, -) -> Ext^1(M, -).
    """
    M, N = phi.src, phi.tgt
    ring = M.ring
    if kind == "rep":
        F, G = rep_functor(N), rep_functor(M)
        return NatMor(F, G, phi, identity(F.Y))
    if kind == "tensor":
        F, G = tensor_functor(M), tensor_functor(N)
        u = ModMorphism(G.X, F.X, phi.phi.T, Mat.zeros(ring, 0, 0))
        v = ModMorphism(G.Y, F.Y, phi.cert.T, Mat.zeros(ring, 0, 0))
        return NatMor(F, G, u, v)
    if kind == "ext1":
        from .modules import lift_syzygy

        F, G = ext1_functor(N), ext1_functor(M)
        f_p, omega_f = lift_syzygy(phi)
        v = ModMorphism(G.Y, F.Y, f_p, Mat.zeros(ring, 0, 0))
        return NatMor(F, G, omega_f, v)
    raise ValueError(f"unknown kind {kind!r}")


# --- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class FunctorValue:
    """F(A) with the means to move between its elements and maps X -> A."""

    functor: FpFunctor
    at: FpModule
    module: FpModule
    hom_x: HomModule
    to_min: Mat
    from_min: Mat

    def lift(self, e: Sequence[int]) -> Mat:
        h = [sum(row[j] * e[j] for j in range(len(e))) for row in self.from_min.data]
        return self.hom_x.matrix_of(h)

    def coords(self, psi: Mat) -> list[int]:
        h = self.hom_x.coords(psi)
        return [self.at.ring.reduce(sum(row[j] * h[j] for j in range(len(h)))) for row in self.to_min.data]


def evaluate_value(F: FpFunctor, A: FpModule) -> FunctorValue:
    F.ring.check(A.ring)
    HX = hom_module(F.X, A)
    HY = hom_module(F.Y, A)
    cols = [HX.coords(HY.generator(j) @ F.arrow.phi) for j in range(HY.module.gens)]
    restrict = morphism(HY.module, HX.module, Mat.from_cols(A.ring, cols, HX.module.gens))
    C, _ = cokernel_mor(restrict)
    mp = minimal_presentation(C)
    return FunctorValue(F, A, mp.module, HX, mp.to_min.phi, mp.from_min.phi)


def evaluate(F: FpFunctor, A: FpModule) -> FpModule:
    return evaluate_value(F, A).module


def functor_map(FA: FunctorValue, FB: FunctorValue, h: ModMorphism) -> ModMorphism:
    """F(h): F(A) -> F(B) for h: A -> B."""
    cols = [FB.coords(h.phi @ FA.lift(e)) for e in _unit_vectors(FA.module.gens)]
    return morphism(FA.module, FB.module, Mat.from_cols(FA.at.ring, cols, FB.module.gens))


def evaluate_nat(alpha: NatMor, A: FpModule,
                 FA: Optional[FunctorValue] = None, GA: Optional[FunctorValue] = None) -> ModMorphism:
    """alpha_A: F(A) -> G(A)."""
    FA = FA or evaluate_value(alpha.src, A)
    GA = GA or evaluate_value(alpha.tgt, A)
    cols = [GA.coords(FA.lift(e) @ alpha.u.phi) for e in _unit_vectors(FA.module.gens)]
    return morphism(FA.module, GA.module, Mat.from_cols(A.ring, cols, GA.module.gens))


def _unit_vectors(n: int) -> list[list[int]]:
    return [[int(i == j) for i in range(n)] for j in range(n)]


# --- hom groups, zero tests ---------------------------------------------------


@dataclass(frozen=True)
class NatHom:
    """Nat(F, G) as the kernel of G(f): G(X) -> G(Y)."""

    F: FpFunctor
    G: FpFunctor
    module: FpModule
    value: FunctorValue
    embedding: Mat

    @property
    def N(self) -> FpModule:
        return self.module

    def materialize(self, n: Sequence[int]) -> NatMor:
        e = [sum(row[j] * n[j] for j in range(len(n))) for row in self.embedding.data]
        u = morphism(self.G.X, self.F.X, self.value.lift(e))
        v = factor_through(compose(self.F.arrow, u), self.G.arrow)
        if v is None:  # pragma: no cover - kernel elements always factor
            raise AssertionError("kernel element did not produce a natural transformation")
        return NatMor(self.F, self.G, u, v)

    def generator(self, j: int) -> NatMor:
        return self.materialize([int(i == j) for i in range(self.module.gens)])

    def coords(self, alpha: NatMor) -> list[int]:
        e = self.value.coords(alpha.u.phi)
        lhs = self.embedding.hstack(self.value.module.rel)
        target = Mat.from_rows(self.F.ring, [[x] for x in e], ncols=1)
        sol = solve_linear(lhs, target)
        if sol is None:
            raise ValueError("not an element of Nat(F, G)")
        return sol.col(0)[: self.module.gens]


def nat_hom(F: FpFunctor, G: FpFunctor) -> NatHom:
    F.ring.check(G.ring)
    VX = evaluate_value(G, F.X)
    VY = evaluate_value(G, F.Y)
    Gf = functor_map(VX, VY, F.arrow)
    K, incl = kernel_mor(Gf)
    mp = minimal_presentation(K)
    return NatHom(F, G, mp.module, VX, incl.phi @ mp.from_min.phi)


def nat_is_zero(alpha: NatMor) -> bool:
    return factor_through(alpha.u, alpha.tgt.arrow) is not None


def nats_equal(alpha: NatMor, beta: NatMor) -> bool:
    return nat_is_zero(alpha - beta)


def lift_nat(incl: NatMor, beta: NatMor) -> Optional[NatMor]:
    """gamma with ``incl o gamma == beta`` (incl: K -> G, beta: H -> G), if one exists."""
    K, G, H = incl.src, incl.tgt, beta.src
    NHK, NHG = nat_hom(H, K), nat_hom(H, G)
    cols = [NHG.coords(compose_nat(incl, NHK.generator(i))) for i in range(NHK.module.gens)]
    lhs = Mat.from_cols(H.ring, cols, NHG.module.gens).hstack(NHG.module.rel)
    target = Mat.from_rows(H.ring, [[x] for x in NHG.coords(beta)], ncols=1)
    sol = solve_linear(lhs, target)
    if sol is None:
        return None
    return NHK.materialize(sol.col(0)[: NHK.module.gens])


def is_zero_functor(F: FpFunctor) -> bool:
    """F = 0 iff the arrow is a split monomorphism."""
    return factor_through(identity(F.X), F.arrow) is not None


# --- kernels and cokernels ---------------------------------------------------


def cokernel_nat(alpha: NatMor) -> tuple[FpFunctor, NatMor]:
    F, G = alpha.src, alpha.tgt
    ds = direct_sum_data(F.X, G.Y)
    arrow = ModMorphism(G.X, ds.module, alpha.u.phi.vstack(G.arrow.phi), alpha.u.cert.vstack(G.arrow.cert))
    C = FpFunctor(arrow, G.side)
    proj = NatMor(G, C, identity(G.X), ds.projections[1])
    return C, proj


def kernel_nat(alpha: NatMor) -> tuple[FpFunctor, NatMor]:
    F, G = alpha.src, alpha.tgt
    f, g, u = F.arrow, G.arrow, alpha.u
    ds1 = direct_sum_data(F.X, G.Y)
    m1 = ModMorphism(G.X, ds1.module, u.phi.vstack(-g.phi), u.cert.vstack(-g.cert))
    C_raw, p1 = cokernel_mor(m1)
    mp1 = minimal_presentation(C_raw)
    C = mp1.module
    j = tidy(compose(mp1.to_min, compose(p1, ds1.injections[0])))
    ds2 = direct_sum_data(C, F.Y)
    m2 = ModMorphism(F.X, ds2.module, j.phi.vstack(-f.phi), j.cert.vstack(-f.cert))
    C2_raw, p2 = cokernel_mor(m2)
    mp2 = minimal_presentation(C2_raw)
    q2 = compose(mp2.to_min, p2)
    pi = tidy(compose(q2, ds2.injections[0]))
    y_can = tidy(compose(q2, ds2.injections[1]))
    K = FpFunctor(pi, F.side)
    return K, NatMor(K, F, j, y_can)


# --- isomorphism decisions ---------------------------------------------------


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsoDecision:
    verdict: Verdict
    witness: Optional[tuple] = None
    certificate: Optional[FpModule] = None
    values: Optional[tuple] = None
    tried: int = 0
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO


def first_disagreement(F: FpFunctor, G: FpFunctor, modules: Sequence[FpModule]):
    for A in modules:
        FA, GA = evaluate(F, A), evaluate(G, A)
        if not iso_modules(FA, GA):
            return A, FA, GA
    return None


def _coefficient_ranges(ring: RingSpec, module: FpModule, budget: int) -> tuple[list[list[int]], bool]:
    """Candidate coefficients per generator of a minimal module; flag if exhaustive."""
    orders = [0] * module.gens
    for c in range(module.nrels):
        for i in range(module.gens):
            if module.rel[i, c]:
                orders[i] = module.rel[i, c]
    exhaustive = True
    ranges = []
    for d in orders:
        if d == 0 and ring.modulus:
            d = ring.modulus
        if d and d <= 2 * budget + 1:
            lo = -((d - 1) // 2)
            ranges.append(list(range(lo, lo + d)))
        else:
            exhaustive = False
            ranges.append(list(range(-budget, budget + 1)))
    return ranges, exhaustive


def _candidates(ranges: list[list[int]]):
    cands = [c for c in itertools.product(*ranges) if any(c)]
    cands.sort(key=lambda c: (max(abs(x) for x in c), sum(abs(x) for x in c), c))
    return cands


def _combine(ring: RingSpec, vecs: list[list[int]], coeffs: Sequence[int], length: int) -> list[int]:
    out = [0] * length
    for c, v in zip(coeffs, vecs):
        if c:
            for k in range(length):
                out[k] += c * v[k]
    return [ring.reduce(x) for x in out]


def iso_functors(F: FpFunctor, G: FpFunctor, budget: int = 2,
                 testbed: Optional[Sequence[FpModule]] = None) -> IsoDecision:
    """Three-valued isomorphism test.

    No: some test module separates the evaluations (or an exhaustive search of
    a finite Nat(F, G) found no isomorphism).  Yes: an explicit pair a, b with
    b a = 1_F and a b = 1_G.  Unknown otherwise.
    """
    F.ring.check(G.ring)
    ring = F.ring
    if testbed is None:
        from .testkit import default_testbed

        testbed = default_testbed(ring).modules
    bad = first_disagreement(F, G, testbed)
    if bad is not None:
        A, FA, GA = bad
        return IsoDecision(Verdict.NO, certificate=A, values=(FA, GA), reason="evaluations differ")
    if F.arrow == G.arrow:
        return IsoDecision(Verdict.YES, witness=(identity_nat(F), identity_nat(G)), reason="identical arrows")

    NFG, NGF = nat_hom(F, G), nat_hom(G, F)
    zF, zG = is_zero_functor(F), is_zero_functor(G)
    if zF or zG:
        if zF and zG:
            return IsoDecision(Verdict.YES, witness=(zero_nat(F, G), zero_nat(G, F)), reason="both zero")
        return IsoDecision(Verdict.NO, reason="exactly one functor is zero")
    if NFG.module.gens == 0 or NGF.module.gens == 0:
        return IsoDecision(Verdict.NO, reason="Nat group vanishes between nonzero functors")

    NFF, NGG = nat_hom(F, F), nat_hom(G, G)
    a_gens = [NFG.generator(i) for i in range(NFG.module.gens)]
    b_gens = [NGF.generator(j) for j in range(NGF.module.gens)]
    s, t = len(a_gens), len(b_gens)
    nff, ngg = NFF.module.gens, NGG.module.gens
    # bilinear tables of compositions in Nat(F,F) and Nat(G,G)
    ba = [[NFF.coords(compose_nat(b, a)) for b in b_gens] for a in a_gens]
    ab = [[NGG.coords(compose_nat(a, b)) for b in b_gens] for a in a_gens]
    id_f = Mat.from_rows(ring, [[x] for x in NFF.coords(identity_nat(F))], ncols=1)
    id_g = NGG.coords(identity_nat(G))
    rel_ff, rel_gg = NFF.module.rel, NGG.module.rel

    ranges, exhaustive = _coefficient_ranges(ring, NFG.module, budget)
    tried = 0
    for c in _candidates(ranges):
        tried += 1
        cols = [_combine(ring, [ba[i][j] for i in range(s)], c, nff) for j in range(t)]
        lhs = Mat.from_cols(ring, cols, nff).hstack(rel_ff)
        sol = solve_linear(lhs, id_f)
        if sol is None:
            continue
        d = sol.col(0)[:t]
        total = [0] * ngg
        for i in range(s):
            if c[i]:
                for j in range(t):
                    if d[j]:
                        for k in range(ngg):
                            total[k] += c[i] * d[j] * ab[i][j][k]
        diff = Mat.from_rows(ring, [[total[k] - id_g[k]] for k in range(ngg)], ncols=1)
        if solve_linear(rel_gg, diff) is None:
            continue
        a = _nat_combination(NFG, c)
        b = _nat_combination(NGF, d)
        if nats_equal(compose_nat(b, a), identity_nat(F)) and nats_equal(compose_nat(a, b), identity_nat(G)):
            return IsoDecision(Verdict.YES, witness=(a, b), tried=tried, reason="witness found")
    if exhaustive:
        return IsoDecision(Verdict.NO, tried=tried, reason="exhaustive search of Nat(F, G) found no isomorphism")
    return IsoDecision(Verdict.UNKNOWN, tried=tried, reason=f"no witness with coefficients bounded by {budget}")


def _nat_combination(H: NatHom, coeffs: Sequence[int]) -> NatMor:
    return H.materialize([H.F.ring.reduce(x) for x in coeffs])
