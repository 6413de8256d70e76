"""Seeded generators, test beds and brute-force oracles.

Objectwise agreement on a test bed is only ever used as evidence against an
isomorphism (or as a necessary condition); it never proves one.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .freyd import FpFunctor, NatMor, evaluate, functor_of, nat_hom
from .modules import (
    FpModule,
    ModMorphism,
    hom_module,
    invariant_factors,
    is_zero_module,
    iso_modules,
    validate_morphism,
)
from .ring import Mat, RingSpec


@dataclass(frozen=True)
class Testbed:
    ring: RingSpec
    modules: tuple

    def __post_init__(self):
        if not self.modules:
            raise ValueError("a test bed needs at least one module")

    def __iter__(self):
        return iter(self.modules)

    def __len__(self) -> int:
        return len(self.modules)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def random_presentation(ring: RingSpec, rng: random.Random, g: int, r: int, bound: int,
                        nonunit_bias: float = 0.0) -> FpModule:
    """Entries uniform in [-bound, bound]; with probability ``nonunit_bias`` an entry
    is drawn from the non-units of that range instead, so the module keeps torsion."""
    nonunits = [x for x in range(-bound, bound + 1) if not ring.is_unit(x)]

    def entry() -> int:
        if nonunits and rng.random() < nonunit_bias:
            return rng.choice(nonunits)
        return rng.randint(-bound, bound)

    rows = [[entry() for _ in range(r)] for _ in range(g)]
    return FpModule(ring, g, Mat.from_rows(ring, rows, ncols=r))


def default_testbed(ring: RingSpec, seed: int = 0, extra: int = 2) -> Testbed:
    """Free module, the standard cyclic modules, and ``extra`` seeded 2x3 presentations."""
    mods = [FpModule.free(ring, 1)]
    if ring.kind == "Z":
        mods += [FpModule.cyclic(ring, d) for d in (2, 3, 4, 6, 8, 9)]
        mods.append(FpModule(ring, 2, Mat.diag(ring, [2, 3])))
    else:
        mods += [FpModule.cyclic(ring, d) for d in _divisors(ring.modulus) if d not in (1, ring.modulus)]
    rng = random.Random(f"testbed:{ring.descriptor()}:{seed}")
    mods += [random_presentation(ring, rng, 2, 3, 4) for _ in range(extra)]
    return Testbed(ring, tuple(mods))


def random_module(ring: RingSpec, seed: int, max_g: int = 2, max_r: int = 2, bound: int = 4) -> FpModule:
    if min(max_g, max_r, bound) < 0:
        raise ValueError("bounds must be non-negative")
    rng = random.Random(f"module:{ring.descriptor()}:{seed}")
    g = rng.randint(0, max_g) if max_g else 0
    r = rng.randint(0, max_r) if max_r else 0
    return random_presentation(ring, rng, g, r, bound)


def _random_map(ring: RingSpec, rng: random.Random, X: FpModule, Y: FpModule, bound: int,
                tries: int = 8) -> ModMorphism:
    """A sampled matrix if it is well defined, else a random combination of Hom generators."""
    for _ in range(tries):
        phi = Mat.from_rows(ring, [[rng.randint(-bound, bound) for _ in range(X.gens)] for _ in range(Y.gens)],
                            ncols=X.gens)
        f = validate_morphism(X, Y, phi)
        if f is not None:
            return f
    H = hom_module(X, Y)
    coeffs = [rng.randint(-bound, bound) for _ in range(H.module.gens)]
    return H.morphism(coeffs)


def random_functor(ring: RingSpec, seed: int, max_g: int = 2, max_r: int = 2, bound: int = 3) -> FpFunctor:
    rng = random.Random(f"functor:{ring.descriptor()}:{seed}")
    # X = 0 gives the zero functor; keep it possible but uncommon
    gx = rng.randint(1, max_g) if max_g and rng.random() < 0.9 else 0
    X = random_presentation(ring, rng, gx, rng.randint(0, max_r), bound, nonunit_bias=0.85)
    Y = random_presentation(ring, rng, rng.randint(0, max_g), rng.randint(0, max_r), bound, nonunit_bias=0.85)
    return functor_of(_random_map(ring, rng, X, Y, bound))


def random_nat(ring: RingSpec, seed: int, bound: int = 3, tries: int = 6) -> NatMor:
    """A random natural transformation between two random functors.

    Pairs with Nat(F, G) = 0 are resampled up to ``tries`` times so that most
    draws are nonzero; the coefficient vector is never all zero.
    """
    rng = random.Random(f"nat:{ring.descriptor()}:{seed}")
    for attempt in range(tries):
        F = random_functor(ring, rng.randrange(1 << 30))
        G = random_functor(ring, rng.randrange(1 << 30))
        H = nat_hom(F, G)
        if H.module.gens:
            break
    coeffs = [rng.randint(-bound, bound) for _ in range(H.module.gens)]
    if coeffs and not any(coeffs):
        coeffs[0] = 1
    return H.materialize(coeffs)


@dataclass(frozen=True)
class Comparison:
    module: FpModule
    left: FpModule
    right: FpModule
    agree: bool


@dataclass(frozen=True)
class Report:
    comparisons: tuple

    @property
    def all_agree(self) -> bool:
        return all(c.agree for c in self.comparisons)

    @property
    def first_disagreement(self) -> Optional[Comparison]:
        return next((c for c in self.comparisons if not c.agree), None)


def check_objectwise(F: FpFunctor, G: FpFunctor, testbed: Optional[Sequence[FpModule]] = None) -> Report:
    F.ring.check(G.ring)
    mods = default_testbed(F.ring).modules if testbed is None else tuple(testbed)
    out = []
    for A in mods:
        FA, GA = evaluate(F, A), evaluate(G, A)
        out.append(Comparison(A, FA, GA, iso_modules(FA, GA)))
    return Report(tuple(out))


# --- brute-force oracle for finite abelian groups ------------------------------
#
# Groups are products of cyclic groups Z/n_1 x ... x Z/n_k and maps are integer
# matrices; everything is enumerated, so this shares no code with the Smith form.


def _elements(orders: Sequence[int]):
    return itertools.product(*(range(n) for n in orders))


def _apply(mat: Sequence[Sequence[int]], x: Sequence[int], orders: Sequence[int]) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) % n for row, n in zip(mat, orders))


def homology_signature(orders_a: Sequence[int], orders_b: Sequence[int], orders_c: Sequence[int],
                       f: Sequence[Sequence[int]], g: Sequence[Sequence[int]]) -> dict[int, int]:
    """For H = ker g / im f in A -f-> B -g-> C return ``{e: #{h in H : e h = 0}}``.

    These counts, over all e dividing the exponent, determine a finite abelian
    group up to isomorphism.
    """
    image = {_apply(f, x, orders_b) for x in _elements(orders_a)}
    kernel = [y for y in _elements(orders_b) if not any(_apply(g, y, orders_c))]
    size = len(kernel) // len(image)
    sig = {}
    for e in _divisors(size):
        hits = sum(1 for y in kernel if tuple(e * t % n for t, n in zip(y, orders_b)) in image)
        sig[e] = hits // len(image)
    return sig


def module_signature(M: FpModule) -> dict[int, int]:
    """Same counts computed from the invariant factors of a finite Z-module."""
    n = M.ring.modulus
    factors = [d or n for d in invariant_factors(M).factors]
    if any(d == 0 for d in factors):
        raise ValueError("module is infinite")
    size = math.prod(factors)
    return {e: math.prod(math.gcd(e, d) for d in factors) for e in _divisors(size)}


def _blockwise(A: Sequence[Sequence[int]], ncols: int, k: int) -> list[list[int]]:
    """A (x) I_k as nested lists, for a matrix with ``ncols`` columns."""
    return [[A[i][j] if a == b else 0 for j in range(ncols) for b in range(k)]
            for i in range(len(A)) for a in range(k)]


def _resolution_lists(M: FpModule, length: int) -> tuple[list[int], list[list[list[int]]]]:
    from .modules import free_resolution

    ds = free_resolution(M, length)
    return [M.gens] + [d.ncols for d in ds], [d.rows() for d in ds]


def _transpose(d: list[list[int]], nrows: int, ncols: int) -> list[list[int]]:
    return [[d[i][j] for i in range(nrows)] for j in range(ncols)]


def brute_ext(n: int, M: FpModule, orders: Sequence[int]) -> dict[int, int]:
    """Ext^n(M, N) for N = Z/o_1 (+) ... by enumerating Hom(P_*, N) on the syzygy resolution."""
    ranks, ds = _resolution_lists(M, n + 1)
    k, N = len(orders), list(orders)
    # Hom(P_i, N) = N^rank_i, and d_(i+1) induces its transpose (x) I_k
    up = _blockwise(_transpose(ds[n], ranks[n], ranks[n + 1]), ranks[n], k)
    if n == 0:
        src, down = [], [[] for _ in range(ranks[0] * k)]
    else:
        src = N * ranks[n - 1]
        down = _blockwise(_transpose(ds[n - 1], ranks[n - 1], ranks[n]), ranks[n - 1], k)
    return homology_signature(src, N * ranks[n], N * ranks[n + 1], down, up)


def brute_tor(n: int, M: FpModule, orders: Sequence[int]) -> dict[int, int]:
    """Tor_n(M, N) for N = Z/o_1 (+) ... by enumerating P_* (x) N on the syzygy resolution."""
    ranks, ds = _resolution_lists(M, n + 1)
    k, N = len(orders), list(orders)
    into = _blockwise(ds[n], ranks[n + 1], k)
    if n == 0:
        dst, out = [], []
    else:
        dst, out = N * ranks[n - 1], _blockwise(ds[n - 1], ranks[n], k)
    return homology_signature(N * ranks[n + 1], N * ranks[n], dst, into, out)


def brute_ext1_cyclic(a: int, b: int) -> dict[int, int]:
    """Ext^1_Z(Z/a, Z/b) from Hom(Z, Z/b) -(a)-> Hom(Z, Z/b) -> 0."""
    return homology_signature([b], [b], [1], [[a]], [[0]])


def brute_tor1_cyclic(a: int, b: int) -> dict[int, int]:
    """Tor_1^Z(Z/a, Z/b) from 0 -> Z/b -(a)-> Z/b."""
    return homology_signature([1], [b], [b], [[0]], [[a]])


# --- exactness of evaluated sequences -----------------------------------------


def exact_at(f: ModMorphism, g: ModMorphism) -> bool:
    """g f = 0 and ker g = im f."""
    from .modules import compose, homology, is_zero_morphism

    return is_zero_morphism(compose(g, f)) and is_zero_module(homology(f, g))


def four_term_exact(alpha: NatMor, A: FpModule) -> bool:
    """0 -> K(A) -> F(A) -> G(A) -> C(A) -> 0 from kernel_nat/cokernel_nat is exact."""
    from .freyd import cokernel_nat, evaluate_nat, evaluate_value, kernel_nat
    from .modules import zero_morphism

    K, incl = kernel_nat(alpha)
    C, proj = cokernel_nat(alpha)
    KA, FA = evaluate_value(K, A), evaluate_value(alpha.src, A)
    GA, CA = evaluate_value(alpha.tgt, A), evaluate_value(C, A)
    i = evaluate_nat(incl, A, KA, FA)
    a = evaluate_nat(alpha, A, FA, GA)
    p = evaluate_nat(proj, A, GA, CA)
    zero = FpModule.zero(A.ring)
    return (exact_at(zero_morphism(zero, KA.module), i) and exact_at(i, a) and exact_at(a, p)
            and exact_at(p, zero_morphism(CA.module, zero)))
