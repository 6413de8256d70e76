"""Finitely presented modules and their morphisms.

A module is ``R^g / column-span(rel)``.  Everything here works on the stored
presentation; isomorphism questions are answered through invariant factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ring import Mat, RingSpec, UnsupportedRing, kernel_matrix, prime_powers, smith_decomposition, solve_linear


@dataclass(frozen=True)
class FpModule:
    ring: RingSpec
    gens: int
    rel: Mat

    def __post_init__(self):
        if self.rel.nrows != self.gens:
            raise ValueError(f"relation matrix has {self.rel.nrows} rows for {self.gens} generators")
        self.ring.check(self.rel.ring)

    @classmethod
    def presented(cls, rel: Mat) -> "FpModule":
        return cls(rel.ring, rel.nrows, rel)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "FpModule":
        return cls.presented(Mat.from_rows(ring, rows, ncols=ncols))

    @classmethod
    def from_columns(cls, ring: RingSpec, gens: int, columns: Sequence[Sequence[int]]) -> "FpModule":
        return cls.presented(Mat.from_cols(ring, columns, gens))

    @classmethod
    def free(cls, ring: RingSpec, g: int) -> "FpModule":
        return cls(ring, g, Mat.zeros(ring, g, 0))

    @classmethod
    def zero(cls, ring: RingSpec) -> "FpModule":
        return cls.free(ring, 0)

    @classmethod
    def cyclic(cls, ring: RingSpec, d: int) -> "FpModule":
        """R/(d)."""
        return cls(ring, 1, Mat.from_rows(ring, [[d]]))

    @property
    def nrels(self) -> int:
        return self.rel.ncols

    def __str__(self) -> str:
        return f"coker{[list(r) for r in self.rel.data]} over {self.ring}" if self.gens else f"0 over {self.ring}"


@dataclass(frozen=True)
class ModMorphism:
    """Module map given on generators; ``phi @ src.rel == tgt.rel @ cert``."""

    src: FpModule
    tgt: FpModule
    phi: Mat
    cert: Mat

    def __post_init__(self):
        if self.phi.shape != (self.tgt.gens, self.src.gens):
            raise ValueError(f"map matrix shape {self.phi.shape} does not fit {self.tgt.gens}x{self.src.gens}")

    def __matmul__(self, other: "ModMorphism") -> "ModMorphism":
        return compose(self, other)

    def __add__(self, other: "ModMorphism") -> "ModMorphism":
        return ModMorphism(self.src, self.tgt, self.phi + other.phi, self.cert + other.cert)

    def __neg__(self) -> "ModMorphism":
        return ModMorphism(self.src, self.tgt, -self.phi, -self.cert)

    def __sub__(self, other: "ModMorphism") -> "ModMorphism":
        return self + (-other)

    def scale(self, c: int) -> "ModMorphism":
        return ModMorphism(self.src, self.tgt, self.phi.scale(c), self.cert.scale(c))


def _check_pair(M: FpModule, N: FpModule) -> None:
    M.ring.check(N.ring)


def validate_morphism(src: FpModule, tgt: FpModule, phi: Mat) -> Optional[ModMorphism]:
    _check_pair(src, tgt)
    if phi.shape != (tgt.gens, src.gens):
        raise ValueError(f"map matrix shape {phi.shape} does not fit {tgt.gens}x{src.gens}")
    cert = solve_linear(tgt.rel, phi @ src.rel)
    if cert is None:
        return None
    return ModMorphism(src, tgt, phi, cert)


def morphism(src: FpModule, tgt: FpModule, phi: Mat) -> ModMorphism:
    """Like ``validate_morphism`` but raises on an ill-defined map."""
    f = validate_morphism(src, tgt, phi)
    if f is None:
        raise ValueError("matrix does not define a module map")
    return f


def identity(M: FpModule) -> ModMorphism:
    return ModMorphism(M, M, Mat.identity(M.ring, M.gens), Mat.identity(M.ring, M.nrels))


def zero_morphism(M: FpModule, N: FpModule) -> ModMorphism:
    return ModMorphism(M, N, Mat.zeros(M.ring, N.gens, M.gens), Mat.zeros(M.ring, N.nrels, M.nrels))


def compose(g: ModMorphism, f: ModMorphism) -> ModMorphism:
    """g after f."""
    if f.tgt.gens != g.src.gens:
        raise ValueError("morphisms are not composable")
    return ModMorphism(f.src, g.tgt, g.phi @ f.phi, g.cert @ f.cert)


def is_zero_morphism(f: ModMorphism) -> bool:
    return solve_linear(f.tgt.rel, f.phi) is not None


def morphisms_equal(f: ModMorphism, g: ModMorphism) -> bool:
    return solve_linear(f.tgt.rel, f.phi - g.phi) is not None


def element_is_zero(M: FpModule, x: Mat) -> bool:
    return solve_linear(M.rel, x) is not None


# --- sums, kernels, cokernels ------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    module: FpModule
    injections: tuple
    projections: tuple


def direct_sum_data(*mods: FpModule) -> DirectSum:
    ring = mods[0].ring
    for M in mods[1:]:
        _check_pair(mods[0], M)
    rel = Mat.zeros(ring, 0, 0)
    for M in mods:
        rel = rel.block_diag(M.rel)
    S = FpModule(ring, rel.nrows, rel)
    inj, proj = [], []
    g0 = r0 = 0
    G, Rn = S.gens, S.nrels
    for M in mods:
        e = Mat.from_rows(ring, [[int(i == g0 + j) for j in range(M.gens)] for i in range(G)], ncols=M.gens)
        er = Mat.from_rows(ring, [[int(i == r0 + j) for j in range(M.nrels)] for i in range(Rn)], ncols=M.nrels)
        inj.append(ModMorphism(M, S, e, er))
        proj.append(ModMorphism(S, M, e.T, er.T))
        g0 += M.gens
        r0 += M.nrels
    return DirectSum(S, tuple(inj), tuple(proj))


def direct_sum(M: FpModule, N: FpModule) -> FpModule:
    return direct_sum_data(M, N).module


def submodule(M: FpModule, G: Mat) -> tuple[FpModule, ModMorphism]:
    """Presentation of the submodule of M generated by the columns of G."""
    k = G.ncols
    K = kernel_matrix(G.hstack(M.rel))
    S = FpModule(M.ring, k, K.row_slice(0, k))
    incl = ModMorphism(S, M, G, -K.row_slice(k, K.nrows))
    return S, incl


def kernel_mor(f: ModMorphism) -> tuple[FpModule, ModMorphism]:
    src, tgt = f.src, f.tgt
    K = kernel_matrix(f.phi.hstack(tgt.rel))
    G = K.row_slice(0, src.gens)
    return submodule(src, G)


def cokernel_mor(f: ModMorphism) -> tuple[FpModule, ModMorphism]:
    tgt = f.tgt
    C = FpModule(tgt.ring, tgt.gens, tgt.rel.hstack(f.phi))
    proj = ModMorphism(tgt, C, Mat.identity(tgt.ring, tgt.gens),
                       Mat.identity(tgt.ring, tgt.nrels).vstack(Mat.zeros(tgt.ring, f.src.gens, tgt.nrels)))
    return C, proj


def lift_through(incl: ModMorphism, f: ModMorphism) -> Optional[ModMorphism]:
    """g with ``incl @ g == f`` on generators (f and incl share a target), if any."""
    B = incl.tgt
    sol = solve_linear(incl.phi.hstack(B.rel), f.phi)
    if sol is None:
        return None
    phi = sol.row_slice(0, incl.src.gens)
    return validate_morphism(f.src, incl.src, phi)


def homology(f: ModMorphism, g: ModMorphism) -> FpModule:
    """ker g / im f for composable f: A -> B, g: B -> C with g f = 0."""
    K, incl = kernel_mor(g)
    lifted = lift_through(incl, f)
    if lifted is None:
        raise ValueError("image of f is not inside ker g")
    H, _ = cokernel_mor(lifted)
    return minimal_presentation(H).module


# --- minimal presentations and invariants ------------------------------------


@dataclass(frozen=True)
class MinimalPresentation:
    module: FpModule
    to_min: ModMorphism
    from_min: ModMorphism


def minimal_presentation(M: FpModule) -> MinimalPresentation:
    """Isomorphic presentation ``diag(d_i)`` with unit factors removed."""
    ring = M.ring
    sd = smith_decomposition(M.rel)
    diag = sd.diagonal
    keep = []
    nonzero = []
    for i in range(M.gens):
        d = diag[i] if i < len(diag) else 0
        if d != 0 and ring.is_unit(d):
            continue
        keep.append(i)
        if d != 0:
            nonzero.append(i)
    dvals = [diag[i] for i in nonzero]
    k = len(keep)
    rel = Mat.zeros(ring, k, len(nonzero))
    rows = rel.rows()
    for col, i in enumerate(nonzero):
        rows[keep.index(i)][col] = dvals[col]
    Mmin = FpModule(ring, k, Mat.from_rows(ring, rows, ncols=len(nonzero)))
    to_min = ModMorphism(M, Mmin, sd.U.take_rows(keep), sd.Vinv.take_rows(nonzero))
    from_min = ModMorphism(Mmin, M, sd.Uinv.take_cols(keep), sd.V.take_cols(nonzero))
    return MinimalPresentation(Mmin, to_min, from_min)


def minimize(M: FpModule) -> FpModule:
    return minimal_presentation(M).module


@dataclass(frozen=True)
class InvariantFactors:
    """d1 | d2 | ... with units dropped; 0 stands for a free summand."""

    ring: RingSpec
    factors: tuple

    def render(self) -> str:
        return "|".join(str(d) for d in self.factors) if self.factors else "0-module"

    def __str__(self) -> str:
        return self.render()


def invariant_factors(M: FpModule) -> InvariantFactors:
    sd = smith_decomposition(M.rel)
    diag = sd.diagonal
    out = []
    for i in range(M.gens):
        d = diag[i] if i < len(diag) else 0
        if d != 0 and M.ring.is_unit(d):
            continue
        out.append(d)
    torsion = sorted(d for d in out if d != 0)
    free = [0] * sum(1 for d in out if d == 0)
    return InvariantFactors(M.ring, tuple(torsion + free))


def iso_modules(M: FpModule, N: FpModule) -> bool:
    _check_pair(M, N)
    return invariant_factors(M).factors == invariant_factors(N).factors


def is_zero_module(M: FpModule) -> bool:
    return not invariant_factors(M).factors


def elementary_divisors(M: FpModule) -> tuple:
    """Prime-power cyclic summands as sorted ``(p, e)`` pairs; ``(0, 1)`` marks a copy of Z."""
    ring = M.ring
    out = []
    for d in invariant_factors(M).factors:
        if d == 0 and not ring.modulus:
            out.append((0, 1))
            continue
        value = ring.modulus if d == 0 else d
        out.extend(prime_powers(value).items())
    return tuple(sorted(out))


def _projective_divisor(ring: RingSpec, p: int, e: int) -> bool:
    if ring.kind == "Z":
        return p == 0
    if ring.kind == "GFp":
        return True
    return prime_powers(ring.modulus).get(p) == e


def is_projective(M: FpModule) -> bool:
    """Projective iff every cyclic summand is: free over Z, CRT-split over Z/n."""
    return all(_projective_divisor(M.ring, p, e) for p, e in elementary_divisors(M))


def stable_part(M: FpModule) -> tuple:
    """Elementary divisors left after deleting projective cyclic summands."""
    if M.ring.kind not in ("Z", "Zmod", "GFp"):
        raise UnsupportedRing(str(M.ring))
    return tuple(pe for pe in elementary_divisors(M) if not _projective_divisor(M.ring, *pe))


def stable_iso(M: FpModule, N: FpModule) -> bool:
    _check_pair(M, N)
    return stable_part(M) == stable_part(N)


# --- Hom and tensor ----------------------------------------------------------


def _copies(N: FpModule, k: int) -> FpModule:
    """N^k presented blockwise."""
    I = Mat.identity(N.ring, k)
    return FpModule(N.ring, k * N.gens, I.kron(N.rel))


def _kron_map(A: Mat, N: FpModule) -> ModMorphism:
    """The map N^a -> N^b given by a b x a scalar matrix A."""
    ring = N.ring
    src, tgt = _copies(N, A.ncols), _copies(N, A.nrows)
    return ModMorphism(src, tgt, A.kron(Mat.identity(ring, N.gens)), A.kron(Mat.identity(ring, N.nrels)))


@dataclass(frozen=True)
class HomModule:
    """Hom(M, N) with generators embedded as column-major gN x gM matrices."""

    M: FpModule
    N: FpModule
    module: FpModule
    embedding: Mat

    def matrix_of(self, h: Sequence[int]) -> Mat:
        v = [sum(row[j] * h[j] for j in range(len(h))) for row in self.embedding.data]
        return Mat.unvec(self.M.ring, v, self.N.gens, self.M.gens)

    def morphism(self, h: Sequence[int]) -> ModMorphism:
        phi = self.matrix_of(h)
        f = validate_morphism(self.M, self.N, phi)
        if f is None:  # pragma: no cover - embedding columns are homomorphisms
            raise AssertionError("hom generator is not a homomorphism")
        return f

    def generator(self, j: int) -> Mat:
        return self.matrix_of([int(i == j) for i in range(self.module.gens)])

    def _ambient_rel(self) -> Mat:
        return Mat.identity(self.M.ring, self.M.gens).kron(self.N.rel)

    def coords(self, phi: Mat) -> list[int]:
        """Coordinates of a homomorphism (given by its matrix) in ``module``."""
        sol = solve_linear(self.embedding.hstack(self._ambient_rel()), phi.vec())
        if sol is None:
            raise ValueError("matrix is not a homomorphism M -> N")
        return sol.col(0)[: self.module.gens]


def hom_module(M: FpModule, N: FpModule) -> HomModule:
    _check_pair(M, N)
    amb = _copies(N, M.gens)
    restrict = _kron_map(M.rel.T, N)
    restrict = ModMorphism(amb, restrict.tgt, restrict.phi, restrict.cert)
    K, incl = kernel_mor(restrict)
    mp = minimal_presentation(K)
    emb = incl.phi @ mp.from_min.phi
    return HomModule(M, N, mp.module, emb)


def tensor_module(M: FpModule, N: FpModule) -> FpModule:
    _check_pair(M, N)
    ring = M.ring
    rel = M.rel.kron(Mat.identity(ring, N.gens)).hstack(Mat.identity(ring, M.gens).kron(N.rel))
    return FpModule(ring, M.gens * N.gens, rel)


def factor_through(h: ModMorphism, g: ModMorphism) -> Optional[ModMorphism]:
    """A morphism w: g.tgt -> h.tgt with ``w @ g == h``, if one exists."""
    A, B, C = g.src, g.tgt, h.tgt
    H = hom_module(B, C)
    ring = A.ring
    lhs = g.phi.T.kron(Mat.identity(ring, C.gens)) @ H.embedding
    lhs = lhs.hstack(Mat.identity(ring, A.gens).kron(C.rel))
    sol = solve_linear(lhs, h.phi.vec())
    if sol is None:
        return None
    return H.morphism(sol.col(0)[: H.module.gens])


# --- transpose, syzygy, resolutions, Ext, Tor -----------------------------------


def transpose(M: FpModule) -> FpModule:
    """coker of the dual presentation: mod(R; rel^T).  Depends on the presentation."""
    return FpModule.presented(M.rel.T)


def syzygy(M: FpModule) -> FpModule:
    """The submodule of R^g spanned by the relation columns."""
    return FpModule(M.ring, M.nrels, kernel_matrix(M.rel))


def syzygy_inclusion(M: FpModule) -> ModMorphism:
    """Omega M -> R^g, the columns of ``rel``."""
    Om = syzygy(M)
    P = FpModule.free(M.ring, M.gens)
    return ModMorphism(Om, P, M.rel, Mat.zeros(M.ring, 0, Om.nrels))


def free_cover(M: FpModule) -> ModMorphism:
    P = FpModule.free(M.ring, M.gens)
    return ModMorphism(P, M, Mat.identity(M.ring, M.gens), Mat.zeros(M.ring, M.nrels, 0))


def free_resolution(M: FpModule, length: int) -> list[Mat]:
    """Differentials d_1..d_length of the resolution by iterated syzygies."""
    ds = [M.rel]
    while len(ds) < length:
        ds.append(kernel_matrix(ds[-1]))
    return ds[:length]


def ext_value(n: int, M: FpModule, N: FpModule) -> FpModule:
    """Ext^n(M, N) from Hom(P_*, N) on the iterated-syzygy resolution of M."""
    _check_pair(M, N)
    if n < 0:
        return FpModule.zero(M.ring)
    ds = free_resolution(M, n + 1)
    up = _kron_map(ds[n].T, N)
    if n == 0:
        down = zero_morphism(FpModule.zero(M.ring), up.src)
    else:
        down = _kron_map(ds[n - 1].T, N)
    return homology(down, up)


def tor_value(n: int, M: FpModule, N: FpModule) -> FpModule:
    """Tor_n(M, N) from P_* (x) N on the iterated-syzygy resolution of M."""
    _check_pair(M, N)
    if n < 0:
        return FpModule.zero(M.ring)
    ds = free_resolution(M, n + 1)
    into = _kron_map(ds[n], N)
    if n == 0:
        out = zero_morphism(into.tgt, FpModule.zero(M.ring))
    else:
        out = _kron_map(ds[n - 1], N)
    return homology(into, out)


def lift_syzygy(f: ModMorphism) -> tuple[Mat, ModMorphism]:
    """Lift f: M -> N to the free covers and restrict to syzygies.

    Returns ``(f_P, Omega f)``: f_P is the matrix of R^gM -> R^gN and
    ``Omega f`` maps the relation columns of M to those of N via the certificate.
    """
    OM, ON = syzygy(f.src), syzygy(f.tgt)
    return f.phi, morphism(OM, ON, f.cert)


def stable_hom(N: FpModule, M: FpModule) -> FpModule:
    """Hom(N, M) modulo maps factoring through the free cover of M."""
    H = hom_module(N, M)
    P = FpModule.free(M.ring, M.gens)
    HP = hom_module(N, P)
    cover = free_cover(M)
    cols = [H.coords(cover.phi @ HP.generator(j)) for j in range(HP.module.gens)]
    push = morphism(HP.module, H.module, Mat.from_cols(M.ring, cols, H.module.gens))
    C, _ = cokernel_mor(push)
    return minimize(C)


def tidy(f: ModMorphism) -> ModMorphism:
    """Reduce the map matrix modulo a diagonal-type target presentation.

    Applies when every relation column of the target has a single nonzero
    entry (as produced by ``minimal_presentation``); otherwise returns f.
    """
    tgt = f.tgt
    ring = tgt.ring
    pivots = []
    for c in range(tgt.nrels):
        nz = [i for i in range(tgt.gens) if tgt.rel[i, c]]
        if len(nz) != 1:
            return f
        pivots.append((nz[0], c, tgt.rel[nz[0], c]))
    if not pivots:
        return f
    phi = f.phi.rows()
    Q = [[0] * f.src.gens for _ in range(tgt.nrels)]
    changed = False
    for r, c, d in pivots:
        for j in range(f.src.gens):
            x = phi[r][j]
            y = x % d
            if y != x:
                q = (x - y) // d
                Q[c][j] = q
                phi[r][j] = y
                changed = True
    if not changed:
        return f
    Qm = Mat.from_rows(ring, Q, ncols=f.src.gens)
    return ModMorphism(f.src, tgt, Mat.from_rows(ring, phi, ncols=f.src.gens), f.cert - Qm @ f.src.rel)
