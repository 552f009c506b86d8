import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trimatcat.exact_linalg import (
    QQ, DimensionError, FieldMismatchError, FiniteAlgebra, LinearMap, PrimeField,
    UnsupportedFieldError, VectorSpace, cokernel, field_from_spec, image, in_span,
    is_two_sided_ideal, jacobson_radical, kernel, mat, matmul, power_nilpotency_index,
    quotient_algebra, rank, rref, solve_linear, trace_form,
)
from trimatcat.exact_linalg import _rref_field

F5 = PrimeField(5)


def lmap(fld, rows, ncols=None):
    a = mat(fld, rows, ncols)
    return LinearMap(VectorSpace.of_dim(a.shape[1]), VectorSpace.of_dim(a.shape[0]), a, fld)


def matrices(fld=QQ, max_dim=4):
    entries = st.integers(-3, 3)
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(
        lambda s: st.lists(st.lists(entries, min_size=s[1], max_size=s[1]),
                           min_size=s[0], max_size=s[0])).map(lambda rows: lmap(fld, rows))


# --- scalars ---------------------------------------------------------------


def test_scalar_roundtrip_formats():
    assert QQ.format(Fraction(-6, 4)) == "-3/2"
    assert QQ.format(0) == "0/1"
    assert QQ.parse("-3/2") == Fraction(-3, 2)
    assert F5.format(7) == "2"
    assert F5.parse("3") == 3
    with pytest.raises(ValueError):
        F5.parse("13")


def test_field_spec():
    assert field_from_spec("Q") is QQ
    assert field_from_spec("F 7") == PrimeField(7)
    assert field_from_spec("F7") == PrimeField(7)
    with pytest.raises(ValueError):
        PrimeField(6)


def test_prime_field_inverses():
    for a in range(1, 5):
        assert (a * F5.inv(a)) % 5 == 1


def test_mixed_fields_rejected():
    a = LinearMap.identity(VectorSpace.of_dim(2), QQ)
    b = LinearMap.identity(VectorSpace.of_dim(2), F5)
    with pytest.raises(FieldMismatchError):
        a.compose(b)


def test_composition_dimension_check():
    a = lmap(QQ, [[1, 2]])
    with pytest.raises(DimensionError):
        a.compose(a)
    with pytest.raises(DimensionError):
        LinearMap(VectorSpace.of_dim(2), VectorSpace.of_dim(2), QQ.zeros(3, 2))


def test_vector_space_labels_unique():
    assert VectorSpace(()).dim == 0
    with pytest.raises(ValueError):
        VectorSpace(("a", "a"))


# --- solve / kernel / cokernel ---------------------------------------------


def test_solve_identity():
    x = solve_linear(lmap(QQ, [[1, 0], [0, 1]]), [1, 2])
    assert list(x) == [1, 2]


def test_solve_inconsistent():
    assert solve_linear(lmap(QQ, [[0, 0], [0, 0]]), [1, 0]) is None


def test_solve_f5_matches_brute_force():
    A = lmap(F5, [[2]])
    brute = [x for x in range(5) if (2 * x) % 5 == 3]
    assert brute == [4]
    assert list(solve_linear(A, [3])) == brute


def test_solve_rhs_dimension():
    with pytest.raises(DimensionError):
        solve_linear(lmap(QQ, [[1, 0]]), [1, 2])


def test_kernel_examples():
    assert kernel(lmap(QQ, [[1, 0], [0, 1]])) == []
    assert len(kernel(lmap(QQ, [[0, 0, 0]]))) == 3
    (v,) = kernel(lmap(QQ, [[1, 1]]))
    # hand elimination: x + y = 0, free y = 1 gives (-1, 1); echelon scaling gives (1, -1)
    assert list(v) == [1, -1] or list(v) == [-1, 1]
    assert in_span(QQ, np.array([[1, -1]], dtype=object), v)


def test_kernel_is_rref():
    ker = kernel(lmap(QQ, [[1, 2, 3], [2, 4, 6]]))
    lead = [next(i for i, x in enumerate(v) if x != 0) for v in ker]
    assert lead == sorted(lead)
    assert all(v[i] == 1 for v, i in zip(ker, lead))


def test_cokernel_examples():
    q, p = cokernel(lmap(QQ, [[1, 0], [0, 1]]))
    assert q.dim == 0
    zero = LinearMap(VectorSpace(()), VectorSpace.of_dim(2), QQ.zeros(2, 0), QQ)
    q, p = cokernel(zero)
    assert q.dim == 2 and np.array_equal(p.matrix, QQ.eye(2))
    q, p = cokernel(lmap(QQ, [[1], [1]]))
    assert q.dim == 1


@given(matrices())
def test_rank_nullity(A):
    assert len(kernel(A)) + rank(QQ, A.matrix) == A.domain.dim


@given(matrices())
def test_cokernel_projection(A):
    q, p = cokernel(A)
    assert np.all(matmul(QQ, p.matrix, A.matrix) == 0)
    assert rank(QQ, p.matrix) == q.dim
    assert q.dim == A.codomain.dim - len(image(A))


@given(matrices(F5))
def test_rank_nullity_f5(A):
    assert len(kernel(A)) + rank(F5, A.matrix) == A.domain.dim
    for v in kernel(A):
        assert all(x == 0 for x in A(v))


@given(matrices(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_consistent_rhs(A, xs):
    x = QQ.array(xs[:A.domain.dim])
    b = A(x)
    sol = solve_linear(A, b)
    assert sol is not None and np.array_equal(A(sol), b)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@given(st.integers(0, 5).flatmap(lambda m: st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m)
    .map(lambda rows: np.array(rows, dtype=object).reshape(m, n)))))
def test_integer_rref_matches_field_rref(a):
    r1, p1 = rref(QQ, a)
    r2, p2 = _rref_field(QQ, a)
    assert p1 == p2
    assert np.array_equal(r1, r2)


# --- algebras ----------------------------------------------------------------


def lower_triangular():
    """Basis E11, E21, E22 of the 2x2 lower-triangular matrices."""
    slots = [(0, 0), (1, 0), (1, 1)]
    basis = []
    for i, j in slots:
        m = np.zeros((2, 2), dtype=object)
        m[i, j] = 1
        basis.append(m)
    n = len(slots)
    mult = np.empty((n, n, n), dtype=object)
    for a, b in itertools.product(range(n), repeat=2):
        prod = basis[a] @ basis[b]
        mult[a, b] = QQ.array([prod[i, j] for i, j in slots])
    unit = QQ.array([1, 0, 1])
    return FiniteAlgebra(VectorSpace.of_dim(n), mult, unit, QQ)


def truncated_poly(n):
    """K[x]/(x^n) on the monomial basis."""
    mult = np.empty((n, n, n), dtype=object)
    for i, j in itertools.product(range(n), repeat=2):
        mult[i, j] = QQ.unit_vector(n, i + j) if i + j < n else QQ.zero_vector(n)
    return FiniteAlgebra(VectorSpace.of_dim(n), mult, QQ.unit_vector(n, 0), QQ)


def nilpotent_ideals_brute(alg):
    """Every two-sided nilpotent ideal spanned by coordinate vectors."""
    n = alg.dim
    out = []
    for k in range(n + 1):
        for idx in itertools.combinations(range(n), k):
            b = [QQ.unit_vector(n, i) for i in idx]
            if is_two_sided_ideal(alg, b) and power_nilpotency_index(alg, b) is not None:
                out.append(set(idx))
    return out


def test_radical_of_field_is_zero():
    assert jacobson_radical(truncated_poly(1)) == []


def test_radical_truncated_poly():
    (v,) = jacobson_radical(truncated_poly(2))
    assert list(v) == [0, 1]
    assert power_nilpotency_index(truncated_poly(2), [v]) == 2


def test_radical_lower_triangular_against_enumeration():
    alg = lower_triangular()
    assert alg.check_associative() == [] and alg.check_unit() == []
    ideals = nilpotent_ideals_brute(alg)
    largest = max(ideals, key=len)
    assert largest == {1}
    (v,) = jacobson_radical(alg)
    assert list(v) == [0, 1, 0]


def test_trace_form_matches_definition():
    alg = lower_triangular()
    ls = alg.basis_left_matrices()
    gram = np.array([[sum(np.diagonal(x @ y)) for y in ls] for x in ls], dtype=object)
    assert np.array_equal(trace_form(alg), gram)


def test_radical_needs_characteristic_zero():
    mult = np.empty((1, 1, 1), dtype=object)
    mult[0, 0, 0] = 1
    alg = FiniteAlgebra(VectorSpace.of_dim(1), mult, [1], F5)
    with pytest.raises(UnsupportedFieldError):
        jacobson_radical(alg)


@given(st.integers(1, 5))
def test_radical_is_nilpotent_ideal_and_quotient_semisimple(n):
    alg = truncated_poly(n)
    J = jacobson_radical(alg)
    assert len(J) == n - 1
    assert is_two_sided_ideal(alg, J)
    assert power_nilpotency_index(alg, J) <= n
    assert jacobson_radical(quotient_algebra(alg, J)) == []


def test_quotient_lower_triangular_is_semisimple():
    alg = lower_triangular()
    Q = quotient_algebra(alg, jacobson_radical(alg))
    assert Q.dim == 2
    assert jacobson_radical(Q) == []
