from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from rankone.orbitcat.snf import elementary_divisors, localize_torsion, matmul, rank, smith


def matrices(max_side=5, bound=6):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                min_size=m, max_size=m,
            )
        )
    )


def sympy_divisors(A):
    return [abs(int(d)) for d in invariant_factors(Matrix(A), domain=ZZ) if d]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_divisors_match_sympy(A):
    assert elementary_divisors(A) == sympy_divisors(A)
    assert rank(A) == Matrix(A).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_transforms(A):
    S = smith(A)
    m, n = S.shape
    D = matmul(matmul(S.U, A), S.V)
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (S.diag[i] if i == j else 0)
    I_m = matmul(S.U, S.Uinv)
    I_n = matmul(S.V, S.Vinv)
    assert all(I_m[i][j] == int(i == j) for i in range(m) for j in range(m))
    assert all(I_n[i][j] == int(i == j) for i in range(n) for j in range(n))
    nz = [d for d in S.diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_empty_shape():
    S = smith([], 0, 3)
    assert S.rank == 0 and S.shape == (0, 3)


def test_localize():
    assert localize_torsion([2, 6, 9, 5], 3) == [3, 9]
    assert localize_torsion([2, 6], None) == [2, 6]
