import random
from fractions import Fraction

import pytest

from hopfact.linalg import (
    DimensionError,
    EchelonSpan,
    Matrix,
    SparseTensor,
    Tensor3,
    column_space_equal,
    contract,
    kron,
    ravel,
    solve_linear,
    unravel,
)
from hopfact.scalars import QQ, cyclotomic_field, prime_field


def M(rows, field=QQ):
    return Matrix.from_rows(field, rows)


def test_ravel_roundtrip():
    dims = (3, 4, 5)
    for flat in range(3 * 4 * 5):
        assert ravel(unravel(flat, dims), dims) == flat
    assert ravel((1, 2), (2, 3)) == 5


def test_solve_identity():
    sol = solve_linear(Matrix.identity(QQ, 2), M([[1], [2]]))
    assert sol is not None
    assert sol.particular.column(0) == [QQ.one, QQ.from_int(2)]
    assert sol.kernel == []


def test_solve_kernel_of_symmetric_rank_one():
    sol = solve_linear(M([[1, 1], [1, 1]]), M([[0], [0]]))
    assert sol is not None
    assert len(sol.kernel) == 1
    v = sol.kernel[0]
    # spans the line through (1, -1)
    assert v[0] == -v[1] and not v[0].is_zero()


def test_solve_inconsistent():
    assert solve_linear(M([[1, 0], [0, 0]]), M([[0], [1]])) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_linear(M([[1, 0]]), M([[1], [2]]))


def test_rank_examples():
    assert Matrix.identity(QQ, 4).rank() == 4
    assert Matrix.zeros(QQ, 3, 5).rank() == 0
    assert M([[1, 2], [2, 4]]).rank() == 1


def test_kron_examples():
    assert kron(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)).is_identity()
    b = M([[1, 2], [3, 4]])
    assert kron(M([[2]]), b) == b.scale(QQ.from_int(2))
    k = kron(Matrix.zeros(QQ, 2, 3), Matrix.zeros(QQ, 4, 5))
    assert (k.nrows, k.ncols) == (8, 15)


def test_kron_row_major_pairing():
    a = M([[0, 1], [0, 0]])
    b = Matrix.identity(QQ, 3)
    k = kron(a, b)
    # entry ((0, i), (1, i)) = a[0,1] * b[i,i]
    for i in range(3):
        assert k[(0 * 3 + i, 1 * 3 + i)].is_one()


def unit_algebra_kdual():
    """Structure tensor of k[t]/(t^2) with basis (1, t)."""
    mu = Tensor3.from_entries(QQ, (2, 2, 2), [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
    unit = [QQ.one, QQ.zero]
    return mu, unit


def test_contract_left_unit_law():
    mu, unit = unit_algebra_kdual()
    left = contract("i,ijk->jk", unit, mu).to_matrix()
    assert left.is_identity()


def test_contract_identity_composition():
    i2 = Matrix.identity(QQ, 2)
    assert contract("ij,jk->ik", i2, i2).to_matrix().is_identity()


def test_contract_associativity_residual_dual_numbers():
    # hand expansion for k[t]/(t^2): both association orders give
    # (1,1,1)->1, (1,1,t)->t, (1,t,1)->t, (t,1,1)->t, everything else 0,
    # so their difference vanishes entry-wise.
    mu, _ = unit_algebra_kdual()
    lhs = contract("ija,akl->ijkl", mu, mu)
    rhs = contract("jka,ial->ijkl", mu, mu)
    assert lhs == rhs
    expect = {
        (0, 0, 0, 0): QQ.one,
        (0, 0, 1, 1): QQ.one,
        (0, 1, 0, 1): QQ.one,
        (1, 0, 0, 1): QQ.one,
    }
    assert lhs.data == expect


def test_contract_order_independence():
    rng = random.Random(7)
    f = prime_field(13)

    def rand_tensor(dims):
        data = {}
        for _ in range(10):
            key = tuple(rng.randrange(d) for d in dims)
            data[key] = f.scalar(rng.randrange(1, 13))
        return SparseTensor(f, dims, data)

    a = rand_tensor((3, 4))
    b = rand_tensor((4, 5))
    c = rand_tensor((5, 2))
    first = contract("ij,jk,kl->il", a, b, c)
    second_inner = contract("jk,kl->jl", b, c)
    second = contract("ij,jl->il", a, second_inner)
    assert first == second


def test_contract_rejects_inconsistent_dims():
    with pytest.raises(DimensionError):
        contract("ij,jk->ik", Matrix.identity(QQ, 2), Matrix.identity(QQ, 3))
    with pytest.raises(ValueError):
        contract("ij,jk->iz", Matrix.identity(QQ, 2), Matrix.identity(QQ, 2))


def test_contract_marginalizes_unmatched_letters():
    m = M([[1, 2], [3, 4]])
    # summing over rows: column sums
    sums = contract("ij->j", m).to_vector()
    assert [s.v for s in sums] == [Fraction(4), Fraction(6)]


def test_random_solvable_systems_exact():
    rng = random.Random(20240818)
    for field in (QQ, prime_field(11), cyclotomic_field(4)):
        for _ in range(25):
            n, m = rng.randint(1, 5), rng.randint(1, 5)

            def rand_scalar():
                return field.from_fraction(Fraction(rng.randint(-4, 4)))

            a = Matrix.from_rows(field, [[rand_scalar() for _ in range(m)] for _ in range(n)])
            x = [rand_scalar() for _ in range(m)]
            b = Matrix.from_cols(field, [a.apply(x)])
            sol = solve_linear(a, b)
            assert sol is not None
            got = a.apply(sol.particular.column(0))
            assert got == b.column(0)
            for v in sol.kernel:
                assert all(s.is_zero() for s in a.apply(v))
            assert a.rank() + len(sol.kernel) == m


def test_rank_nullity():
    rng = random.Random(99)
    for _ in range(30):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = Matrix.from_rows(QQ, [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)])
        sol = solve_linear(a, Matrix.zeros(QQ, n, 1))
        assert a.rank() + len(sol.kernel) == m


def test_inverse():
    a = M([[2, 1], [1, 1]])
    inv = a.inverse()
    assert inv is not None
    assert (a @ inv).is_identity()
    assert M([[1, 1], [1, 1]]).inverse() is None


def test_echelon_span_and_column_space_equal():
    span = EchelonSpan(QQ, 3)
    assert span.add([QQ.one, QQ.zero, QQ.one])
    assert not span.add([QQ.from_int(2), QQ.zero, QQ.from_int(2)])
    assert span.dim == 1
    a = M([[1, 0], [0, 1], [0, 0]])
    b = M([[1, 1], [1, -1], [0, 0]])
    assert column_space_equal(a, b)
    c = M([[1], [0], [0]])
    assert not column_space_equal(a, c)


def test_matrix_trace_and_matmul():
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert (a @ b) == M([[2, 1], [4, 3]])
    assert a.trace().v == Fraction(5)
