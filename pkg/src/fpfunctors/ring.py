"""Exact linear algebra over the integers, Z/n and GF(p).

Every decision procedure in the package reduces to the three solvers here:
``smith_normal_form``, ``solve_linear`` and ``kernel_matrix``.  Matrices over
Z/n are handled by lifting to Z, diagonalising there and reducing the
transforms; the diagonal is then rescaled by units so that every entry is a
divisor of n (with n itself written as 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class RingMismatch(ValueError):
    pass


class UnsupportedRing(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_powers(n: int) -> dict[int, int]:
    """Factor ``n > 0`` by trial division; returns ``{p: k}``."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class RingSpec:
    """A supported commutative principal ideal ring.

    ``kind`` is ``"Z"``, ``"Zmod"`` or ``"GFp"``; ``modulus`` is 0 for Z.
    ``side`` only records whether objects live over R or R^op; since all
    supported rings are commutative it never affects arithmetic.
    """

    kind: str
    modulus: int = 0
    side: Side = Side.LEFT

    def __post_init__(self):
        if self.kind == "Z":
            if self.modulus != 0:
                raise ValueError("Z carries modulus 0")
        elif self.kind == "Zmod":
            if self.modulus < 2:
                raise ValueError("Z/n needs n >= 2")
        elif self.kind == "GFp":
            if not _is_prime(self.modulus):
                raise ValueError(f"GF(p) needs p prime, got {self.modulus}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls("Z")

    @classmethod
    def zmod(cls, n: int) -> "RingSpec":
        return cls("Zmod", n)

    @classmethod
    def gfp(cls, p: int) -> "RingSpec":
        return cls("GFp", p)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse ``Z``, ``Zmod:8`` or ``GFp:5``."""
        head, _, arg = text.strip().partition(":")
        if head == "Z" and not arg:
            return cls.integers()
        if head in ("Zmod", "GFp") and arg:
            return cls(head, int(arg))
        raise ValueError(f"bad ring descriptor {text!r}")

    @classmethod
    def from_json(cls, obj: dict) -> "RingSpec":
        kind = obj.get("kind")
        if kind == "Z":
            return cls.integers()
        if kind == "Zmod":
            return cls.zmod(int(obj["n"]))
        if kind == "GFp":
            return cls.gfp(int(obj["p"]))
        raise ValueError(f"bad ring object {obj!r}")

    def to_json(self) -> dict:
        if self.kind == "Z":
            return {"kind": "Z"}
        if self.kind == "Zmod":
            return {"kind": "Zmod", "n": self.modulus}
        return {"kind": "GFp", "p": self.modulus}

    def descriptor(self) -> str:
        return "Z" if self.kind == "Z" else f"{self.kind}:{self.modulus}"

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Zmod":
            return f"Z/{self.modulus}"
        return f"GF({self.modulus})"

    @property
    def is_field(self) -> bool:
        return self.kind == "GFp"

    @property
    def is_self_injective(self) -> bool:
        return self.kind != "Z"

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus else x

    def is_unit(self, x: int) -> bool:
        if self.modulus == 0:
            return x in (1, -1)
        return math.gcd(x, self.modulus) == 1

    def normalize(self, d: int) -> int:
        """Canonical generator of the ideal (d): |d| over Z, gcd(d, n) mod n otherwise."""
        if self.modulus == 0:
            return abs(d)
        return math.gcd(d, self.modulus) % self.modulus

    def compatible(self, other: "RingSpec") -> bool:
        return self.kind == other.kind and self.modulus == other.modulus

    def opposite(self) -> "RingSpec":
        return RingSpec(self.kind, self.modulus, self.side.opposite())

    def check(self, other: "RingSpec") -> None:
        if not self.compatible(other):
            raise RingMismatch(f"{self} vs {other}")


@dataclass(frozen=True)
class Mat:
    """Immutable matrix over a ring; entries are canonical residues."""

    ring: RingSpec
    nrows: int
    ncols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.nrows or any(len(r) != self.ncols for r in self.data):
            raise ValueError("shape does not match data")

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "Mat":
        rows = [tuple(ring.reduce(int(x)) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("give ncols for a matrix with no rows")
            ncols = len(rows[0])
        return cls(ring, len(rows), ncols, tuple(rows))

    @classmethod
    def from_cols(cls, ring: RingSpec, cols: Iterable[Sequence[int]], nrows: int) -> "Mat":
        cols = [list(c) for c in cols]
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls.from_rows(ring, rows, ncols=len(cols))

    @classmethod
    def zeros(cls, ring: RingSpec, m: int, n: int) -> "Mat":
        return cls(ring, m, n, tuple((0,) * n for _ in range(m)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Mat":
        return cls(ring, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, ring: RingSpec, entries: Sequence[int], m: Optional[int] = None, n: Optional[int] = None) -> "Mat":
        m = len(entries) if m is None else m
        n = len(entries) if n is None else n
        rows = [[0] * n for _ in range(m)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return cls.from_rows(ring, rows, ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def col(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def cols(self) -> list[list[int]]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def _same(self, other: "Mat") -> None:
        self.ring.check(other.ring)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.data)) if other.nrows else [()] * other.ncols
        red = self.ring.reduce
        rows = [
            tuple(red(sum(a * b for a, b in zip(r, c))) for c in ocols)
            for r in self.data
        ]
        return Mat(self.ring, self.nrows, other.ncols, tuple(rows))

    def __add__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        red = self.ring.reduce
        return Mat(self.ring, self.nrows, self.ncols,
                   tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c: int) -> "Mat":
        red = self.ring.reduce
        return Mat(self.ring, self.nrows, self.ncols, tuple(tuple(red(c * a) for a in r) for r in self.data))

    @property
    def T(self) -> "Mat":
        if self.nrows == 0:
            return Mat.zeros(self.ring, self.ncols, 0)
        return Mat(self.ring, self.ncols, self.nrows, tuple(zip(*self.data)))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    def hstack(self, *others: "Mat") -> "Mat":
        out = [list(r) for r in self.data]
        n = self.ncols
        for o in others:
            self._same(o)
            if o.nrows != self.nrows:
                raise ValueError("row mismatch in hstack")
            for r, s in zip(out, o.data):
                r.extend(s)
            n += o.ncols
        return Mat(self.ring, self.nrows, n, tuple(tuple(r) for r in out))

    def vstack(self, *others: "Mat") -> "Mat":
        rows = list(self.data)
        for o in others:
            self._same(o)
            if o.ncols != self.ncols:
                raise ValueError("column mismatch in vstack")
            rows.extend(o.data)
        return Mat(self.ring, len(rows), self.ncols, tuple(rows))

    def block_diag(self, other: "Mat") -> "Mat":
        top = self.hstack(Mat.zeros(self.ring, self.nrows, other.ncols))
        bottom = Mat.zeros(self.ring, other.nrows, self.ncols).hstack(other)
        return top.vstack(bottom)

    def kron(self, other: "Mat") -> "Mat":
        self._same(other)
        red = self.ring.reduce
        rows = []
        for a_row in self.data:
            for b_row in other.data:
                rows.append(tuple(red(a * b) for a in a_row for b in b_row))
        return Mat(self.ring, self.nrows * other.nrows, self.ncols * other.ncols, tuple(rows))

    def take_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.ring, len(idx), self.ncols, tuple(self.data[i] for i in idx))

    def take_cols(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.ring, self.nrows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def row_slice(self, start: int, stop: int) -> "Mat":
        return self.take_rows(range(start, stop))

    def col_slice(self, start: int, stop: int) -> "Mat":
        return self.take_cols(range(start, stop))

    def with_ring(self, ring: RingSpec) -> "Mat":
        return Mat(ring, self.nrows, self.ncols, self.data)

    def vec(self) -> "Mat":
        """Column-major vectorisation as an (m*n) x 1 matrix."""
        entries = [self.data[i][j] for j in range(self.ncols) for i in range(self.nrows)]
        return Mat(self.ring, len(entries), 1, tuple((x,) for x in entries))

    @classmethod
    def unvec(cls, ring: RingSpec, column: Sequence[int], m: int, n: int) -> "Mat":
        return cls.from_rows(ring, [[column[j * m + i] for j in range(n)] for i in range(m)], ncols=n)

    def __repr__(self) -> str:
        return f"Mat<{self.ring}>({[list(r) for r in self.data]}, shape={self.shape})"


def column(ring: RingSpec, entries: Sequence[int]) -> Mat:
    return Mat.from_rows(ring, [[x] for x in entries], ncols=1)


# --- Smith normal form -------------------------------------------------------


def _identity_lists(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _int_smith(S: list[list[int]], m: int, n: int):
    """In-place Smith reduction over Z.

    Returns ``(S, U, Ui, V, Vi)`` with ``U A V = S``, ``Ui = U^-1``,
    ``Vi = V^-1``, S diagonal with non-negative d1 | d2 | ...
    """
    U, Ui = _identity_lists(m), _identity_lists(m)
    V, Vi = _identity_lists(n), _identity_lists(n)

    def row_add(i, j, c):  # row_i += c * row_j
        if not c:
            return
        Si, Sj = S[i], S[j]
        for k in range(n):
            Si[k] += c * Sj[k]
        Ui_, Uj = U[i], U[j]
        for k in range(m):
            Ui_[k] += c * Uj[k]
        for row in Ui:
            row[j] -= c * row[i]

    def col_add(i, j, c):  # col_i += c * col_j
        if not c:
            return
        for row in S:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]
        Vj, Vi_i = Vi[j], Vi[i]
        for k in range(n):
            Vj[k] -= c * Vi_i[k]

    def row_swap(i, j):
        if i == j:
            return
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_neg(i):
        S[i] = [-x for x in S[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    row_add(i, t, -(S[i][t] // p))
                    dirty = dirty or bool(S[i][t])
            for j in range(t + 1, n):
                if S[t][j]:
                    col_add(j, t, -(S[t][j] // p))
                    dirty = dirty or bool(S[t][j])
            if dirty:
                cand = None
                for i in range(t + 1, m):
                    if S[i][t] and (cand is None or abs(S[i][t]) < cand[0]):
                        cand = (abs(S[i][t]), "r", i)
                for j in range(t + 1, n):
                    if S[t][j] and (cand is None or abs(S[t][j]) < cand[0]):
                        cand = (abs(S[t][j]), "c", j)
                if cand[1] == "r":
                    row_swap(t, cand[2])
                else:
                    col_swap(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if S[t][t] < 0:
            row_neg(t)
    return S, U, Ui, V, Vi


@dataclass(frozen=True)
class SmithData:
    """Full Smith decomposition ``U A V = S`` with both inverses."""

    S: Mat
    U: Mat
    Uinv: Mat
    V: Mat
    Vinv: Mat

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.nrows, self.S.ncols))]


def _unit_to_associate(d: int, n: int) -> tuple[int, int]:
    """For d in Z/n return (g, u) with g | n canonical (0 for n), u a unit and d = g*u mod n."""
    d %= n
    g = math.gcd(d, n)
    if g == n:
        return 0, 1
    a, m = d // g, n // g
    for k in range(g):
        c = a + k * m
        if math.gcd(c, n) == 1:
            return g, c % n
    raise AssertionError("no unit lift found")  # unreachable: a is coprime to n/g


def smith_decomposition(A: Mat) -> SmithData:
    ring = A.ring
    m, n = A.shape
    S, U, Ui, V, Vi = _int_smith([list(r) for r in A.data], m, n)
    if ring.modulus:
        N = ring.modulus
        for t in range(min(m, n)):
            g, u = _unit_to_associate(S[t][t], N)
            S[t][t] = g
            if u != 1:
                uinv = pow(u, -1, N)
                U[t] = [x * uinv for x in U[t]]
                for row in Ui:
                    row[t] *= u
    mk = lambda rows, c: Mat.from_rows(ring, rows, ncols=c)
    return SmithData(mk(S, n), mk(U, m), mk(Ui, m), mk(V, n), mk(Vi, n))


def smith_normal_form(A: Mat) -> tuple[Mat, Mat, Mat]:
    """Return ``(S, U, V)`` with ``U @ A @ V == S`` and S in Smith form."""
    sd = smith_decomposition(A)
    return sd.S, sd.U, sd.V


def solve_linear(A: Mat, B: Mat) -> Optional[Mat]:
    """Some X with ``A @ X == B``, or None when no solution exists."""
    A.ring.check(B.ring)
    if A.nrows != B.nrows:
        raise ValueError(f"row mismatch: {A.shape} vs {B.shape}")
    ring = A.ring
    sd = smith_decomposition(A)
    C = sd.U @ B
    m, n = A.shape
    diag = sd.diagonal
    Y = [[0] * B.ncols for _ in range(n)]
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        for k in range(B.ncols):
            c = C[i, k]
            if d == 0:
                if c != 0:
                    return None
            else:
                if c % d:
                    return None
                Y[i][k] = c // d
    return sd.V @ Mat.from_rows(ring, Y, ncols=B.ncols)


def kernel_matrix(A: Mat) -> Mat:
    """Matrix whose columns generate ``{x : A @ x == 0}``."""
    ring = A.ring
    sd = smith_decomposition(A)
    m, n = A.shape
    diag = sd.diagonal
    cols = []
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if i < m and d != 0:
            if not ring.modulus:
                continue
            factor = ring.modulus // d
        else:
            factor = 1
        c = [ring.reduce(factor * x) for x in sd.V.col(i)]
        if any(c):
            cols.append(c)
    return Mat.from_cols(ring, cols, n)
