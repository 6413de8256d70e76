import pytest
from hypothesis import given, strategies as st

from fpfunctors.ring import (
    Mat,
    RingMismatch,
    RingSpec,
    Side,
    kernel_matrix,
    smith_decomposition,
    smith_normal_form,
    solve_linear,
)

from conftest import Z, Z8, mat

RINGS = [Z, Z8, RingSpec.zmod(12), RingSpec.gfp(5)]


def matrices(ring, max_dim=5, bound=9):
    @st.composite
    def build(draw):
        m = draw(st.integers(0, max_dim))
        n = draw(st.integers(0, max_dim))
        rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                             min_size=m, max_size=m))
        return Mat.from_rows(ring, rows, ncols=n)

    return build()


def test_parse_descriptors():
    assert RingSpec.parse("Z") == Z
    assert RingSpec.parse("Zmod:8") == Z8
    assert RingSpec.parse("GFp:5").is_field
    with pytest.raises(ValueError):
        RingSpec.parse("GFp:6")
    with pytest.raises(ValueError):
        RingSpec.zmod(1)


def test_json_roundtrip_and_side():
    for R in RINGS:
        assert RingSpec.from_json(R.to_json()) == R
    op = Z8.opposite()
    assert op.side is Side.RIGHT and op.compatible(Z8) and op.opposite() == Z8


def test_canonical_residues():
    A = mat(Z8, [[-1, 9]])
    assert A.data == ((7, 1),)
    assert mat(Z, [[-3]]).data == ((-3,),)


def test_snf_examples():
    S, U, V = smith_normal_form(mat(Z, [[2, 4], [6, 8]]))
    assert S == Mat.diag(Z, [2, 4])
    S, U, V = smith_normal_form(Mat.identity(Z, 3))
    assert S == U == V == Mat.identity(Z, 3)
    S, _, _ = smith_normal_form(mat(Z, [[0]]))
    assert S == mat(Z, [[0]])


def test_snf_over_field_is_zero_one():
    S, _, _ = smith_normal_form(mat(RingSpec.gfp(5), [[2, 3], [4, 1]]))
    assert set(S.data[0] + S.data[1]) <= {0, 1}


def test_solve_examples():
    assert solve_linear(mat(Z, [[2]]), mat(Z, [[4]])) == mat(Z, [[2]])
    assert solve_linear(mat(Z, [[2]]), mat(Z, [[3]])) is None
    assert solve_linear(mat(Z8, [[2]]), mat(Z8, [[6]])) == mat(Z8, [[3]])


def test_kernel_examples():
    K = kernel_matrix(mat(Z, [[2, 3]]))
    assert K.ncols == 1 and K.col(0) in ([3, -2], [-3, 2])
    assert kernel_matrix(mat(Z8, [[2]])) == mat(Z8, [[4]])
    assert kernel_matrix(Mat.identity(Z, 3)).shape == (3, 0)


def test_mismatched_rings_refuse():
    with pytest.raises(RingMismatch):
        mat(Z, [[1]]) @ mat(Z8, [[1]])
    with pytest.raises(ValueError):
        solve_linear(mat(Z, [[1, 2]]), mat(Z, [[1], [2]]))


def _divides(a, b, ring):
    if ring.modulus:
        a, b = a or ring.modulus, b or ring.modulus
    return b % a == 0 if a else b == 0


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(data=st.data())
def test_snf_properties(ring, data):
    A = data.draw(matrices(ring))
    sd = smith_decomposition(A)
    assert sd.U @ A @ sd.V == sd.S
    assert sd.U @ sd.Uinv == Mat.identity(ring, A.nrows)
    assert sd.V @ sd.Vinv == Mat.identity(ring, A.ncols)
    S = sd.S
    for i in range(S.nrows):
        for j in range(S.ncols):
            if i != j:
                assert S[i, j] == 0
    diag = sd.diagonal
    for a, b in zip(diag, diag[1:]):
        assert _divides(a, b, ring)
    if ring.kind == "Z":
        assert all(d >= 0 for d in diag)
    if ring.modulus:
        assert all(d == 0 or ring.modulus % d == 0 for d in diag)


def _obstructed(A, C) -> bool:
    """Some row of U C is not divisible by the matching Smith diagonal entry."""
    sd = smith_decomposition(A)
    UC = sd.U @ C
    diag = sd.diagonal
    for i in range(C.nrows):
        d = diag[i] if i < len(diag) else 0
        for k in range(C.ncols):
            c = UC[i, k]
            if (d == 0 and c != 0) or (d and c % d):
                return True
    return False


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(data=st.data())
def test_solve_properties(ring, data):
    A = data.draw(matrices(ring, max_dim=4))
    k = data.draw(st.integers(1, 3))
    rows = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=k, max_size=k),
                              min_size=A.ncols, max_size=A.ncols))
    B = A @ Mat.from_rows(ring, rows, ncols=k)
    sol = solve_linear(A, B)
    assert sol is not None and A @ sol == B
    # perturb one entry: either solved exactly or the Smith form shows why not
    if B.nrows:
        bump = Mat.from_rows(ring, [[int(i == 0 and j == 0) for j in range(k)] for i in range(B.nrows)], ncols=k)
        C = B + bump
        sol = solve_linear(A, C)
        if sol is not None:
            assert A @ sol == C
        else:
            assert _obstructed(A, C)


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(data=st.data())
def test_kernel_properties(ring, data):
    A = data.draw(matrices(ring, max_dim=4))
    K = kernel_matrix(A)
    assert K.nrows == A.ncols
    assert (A @ K).is_zero()
    # every solution is a combination of the kernel columns
    x = data.draw(st.lists(st.integers(-9, 9), min_size=K.ncols, max_size=K.ncols))
    v = K @ Mat.from_rows(ring, [[c] for c in x], ncols=1) if K.ncols else Mat.zeros(ring, A.ncols, 1)
    assert solve_linear(K, v) is not None if K.ncols else v.is_zero()


@pytest.mark.parametrize("ring", [Z8, RingSpec.zmod(12), RingSpec.gfp(5)], ids=str)
@given(data=st.data())
def test_kernel_is_complete_by_enumeration(ring, data):
    A = data.draw(matrices(ring, max_dim=2))
    K = kernel_matrix(A)
    n = ring.modulus
    import itertools

    for x in itertools.product(range(n), repeat=A.ncols):
        xv = Mat.from_rows(ring, [[c] for c in x], ncols=1)
        if (A @ xv).is_zero():
            assert solve_linear(K, xv) is not None if K.ncols else not any(x)


def test_vec_unvec_roundtrip():
    A = mat(Z, [[1, 2, 3], [4, 5, 6]])
    assert A.vec().col(0) == [1, 4, 2, 5, 3, 6]
    assert Mat.unvec(Z, A.vec().col(0), 2, 3) == A


def test_kron_mixed_product():
    A, B = mat(Z, [[1, 2], [0, 1]]), mat(Z, [[3], [4]])
    C, D = mat(Z, [[2, 0], [1, 1]]), mat(Z, [[1, -1]])
    assert A.kron(B) @ C.kron(D) == (A @ C).kron(B @ D)
