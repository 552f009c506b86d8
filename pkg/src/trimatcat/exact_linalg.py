"""Exact scalar fields and dense linear algebra over them.

Matrices are numpy arrays of ``dtype=object``.  Over the rationals the
entries are :class:`fractions.Fraction` (plain ``int`` is accepted on
input); over a prime field they are Python ints reduced into ``[0, p)``.
Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np


class FieldMismatchError(ValueError):
    """Two operands live over different ground fields."""


class UnsupportedFieldError(ValueError):
    """The operation is not available over the given field."""


class InternalConsistencyError(RuntimeError):
    """A computed object failed its own post-condition."""


class DimensionError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


class Field:
    """Base class for the two supported ground fields."""

    characteristic = 0

    def zeros(self, m, n):
        a = np.empty((m, n), dtype=object)
        a.fill(self.zero)
        return a

    def zero_vector(self, n):
        a = np.empty(n, dtype=object)
        a.fill(self.zero)
        return a

    def eye(self, n):
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one
        return a

    def unit_vector(self, n, i):
        v = self.zero_vector(n)
        v[i] = self.one
        return v

    def array(self, data, shape=None):
        a = np.array(data, dtype=object)
        if shape is not None:
            a = a.reshape(shape)
        return self.reduce(self.coerce_array(a))

    def check(self, other):
        if other != self:
            raise FieldMismatchError(f"mixed fields: {self} vs {other}")


@dataclass(frozen=True)
class Rationals(Field):
    characteristic: int = field(default=0, init=False)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def coerce_array(self, a):
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = self.coerce(x)
        return out

    def reduce(self, a):
        return a

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def format(self, x):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, s):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))

    def random(self, rng, lo=-2, hi=2):
        return Fraction(int(rng.integers(lo, hi + 1)))

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = 2
    characteristic: int = field(default=0, init=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "characteristic", self.p)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def coerce_array(self, a):
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = self.coerce(x)
        return out

    def reduce(self, a):
        if isinstance(a, np.ndarray):
            return a % self.p if a.size else a
        return a % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def format(self, x):
        return str(int(x) % self.p)

    def parse(self, s):
        v = int(s.strip())
        if not 0 <= v < self.p:
            raise ValueError(f"{s!r} is not a canonical element of F_{self.p}")
        return v

    def random(self, rng, lo=None, hi=None):
        return int(rng.integers(0, self.p))

    def __str__(self):
        return f"F {self.p}"


QQ = Rationals()


def field_from_spec(spec):
    """``"Q"`` or ``"F 7"`` (also ``"F7"``) → field."""
    s = str(spec).strip()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("F"):
        return PrimeField(int(s[1:].strip()))
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# array-level kernels

def mat(field, rows, ncols=None):
    """Build a 2-D object array from nested rows."""
    rows = list(rows)
    if not rows:
        return field.zeros(0, ncols or 0)
    return field.array([list(r) for r in rows])


def is_zero(a):
    return all(x == 0 for x in np.asarray(a).flat)


def matmul(field, a, b):
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return field.zeros(a.shape[0], b.shape[1])
    return field.reduce(a @ b)


def _rref_rational(a):
    # fraction-free Gauss-Jordan on integer rows, normalized at the end;
    # RREF is unique, so this agrees with the field version
    m, n = a.shape
    rows = []
    for v in a.tolist():
        v = [Fraction(x) if not isinstance(x, (int, Fraction)) else x for x in v]
        den = math.lcm(*(x.denominator for x in v)) if v else 1
        rows.append([x.numerator * (den // x.denominator) for x in v])
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        p = rows[row]
        g = math.gcd(*p)
        if g > 1:
            p = rows[row] = [x // g for x in p]
        a0 = p[col]
        for i in range(m):
            b = rows[i][col]
            if i != row and b:
                new = [a0 * x - b * y for x, y in zip(rows[i], p)]
                g = math.gcd(*new)
                rows[i] = [x // g for x in new] if g > 1 else new
        pivots.append(col)
        row += 1
    zero = Fraction(0)
    out = np.empty((m, n), dtype=object)
    out.fill(zero)
    for i, c in enumerate(pivots):
        pv = rows[i][c]
        if pv == 1:
            out[i] = [Fraction(x) if x else zero for x in rows[i]]
        else:
            out[i] = [Fraction(x, pv) if x else zero for x in rows[i]]
    return out, pivots


def rref(field, a):
    """Reduced row echelon form and pivot columns (canonical)."""
    if field.characteristic == 0:
        return _rref_rational(np.asarray(a, dtype=object))
    return _rref_field(field, a)


def _rref_field(field, a):
    r = np.array(a, dtype=object, copy=True)
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = None
        for i in range(row, m):
            if r[i, col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = field.inv(r[row, col])
        r[row] = field.reduce(r[row] * inv)
        for i in range(m):
            if i != row and r[i, col] != 0:
                r[i] = field.reduce(r[i] - r[i, col] * r[row])
        pivots.append(col)
        row += 1
    return r, pivots


def rank(field, a):
    if a.size == 0:
        return 0
    return len(rref(field, a)[1])


def row_basis(field, vectors, n=None):
    """Canonical echelon basis (RREF rows) of the span of ``vectors``."""
    vs = [np.asarray(v, dtype=object) for v in vectors]
    if not vs:
        return field.zeros(0, n if n is not None else 0)
    a = np.vstack(vs)
    r, piv = rref(field, a)
    return r[: len(piv)]


def nullspace(field, a):
    """Canonical basis of {x : a x = 0}, as rows of an RREF matrix."""
    m, n = a.shape
    if n == 0:
        return field.zeros(0, 0)
    if m == 0:
        return field.eye(n)
    r, piv = rref(field, a)
    free = [c for c in range(n) if c not in set(piv)]
    vecs = []
    for f in free:
        v = field.zero_vector(n)
        v[f] = field.one
        for i, p in enumerate(piv):
            v[p] = field.reduce(-r[i, f])
        vecs.append(v)
    if not vecs:
        return field.zeros(0, n)
    return row_basis(field, vecs)


def solve(field, a, b):
    """Some x with a x = b (free variables 0), or None."""
    m, n = a.shape
    b = np.asarray(b, dtype=object).reshape(m)
    if m == 0:
        return field.zero_vector(n)
    aug = np.hstack([a, b.reshape(m, 1)])
    r, piv = rref(field, aug)
    if n in piv:
        return None
    x = field.zero_vector(n)
    for i, p in enumerate(piv):
        x[p] = r[i, n]
    return x


def solve_matrix(field, a, b):
    """X with a X = b column by column; None if some column is inconsistent."""
    cols = []
    for j in range(b.shape[1]):
        x = solve(field, a, b[:, j])
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return field.zeros(a.shape[1], 0)
    return np.column_stack(cols)


def in_span(field, basis, v):
    """Is ``v`` in the row span of ``basis``?"""
    basis = np.asarray(basis, dtype=object)
    v = np.asarray(v, dtype=object)
    if basis.shape[0] == 0:
        return is_zero(v)
    return solve(field, basis.T, v) is not None


def span_contains(field, big, small):
    return all(in_span(field, big, v) for v in small)


def same_span(field, a, b):
    return span_contains(field, a, b) and span_contains(field, b, a)


def coordinates(field, basis, v):
    """Coordinates of ``v`` in the row basis ``basis`` (error if outside)."""
    basis = np.asarray(basis, dtype=object)
    if basis.shape[0] == 0:
        if not is_zero(v):
            raise ValueError("vector not in span")
        return field.zero_vector(0)
    x = solve(field, basis.T, v)
    if x is None:
        raise ValueError("vector not in span")
    return x


def inverse(field, a):
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("inverse of non-square matrix")
    if n == 0:
        return field.zeros(0, 0)
    r, piv = rref(field, np.hstack([a, field.eye(n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def is_invertible(field, a):
    return a.shape[0] == a.shape[1] and rank(field, a) == a.shape[0]


def complement_coords(field, a):
    """Cokernel data for the column space of ``a`` (m×n).

    Returns ``(keep, proj)`` where ``keep`` lists the codomain coordinates
    spanning a canonical complement of im(a) and ``proj`` is the
    ``len(keep) × m`` matrix of the quotient map.
    """
    m = a.shape[0]
    if a.shape[1] == 0 or m == 0:
        return list(range(m)), field.eye(m)
    r, piv = rref(field, a.T.copy())
    img = r[: len(piv)]
    keep = [j for j in range(m) if j not in set(piv)]
    proj = field.zeros(len(keep), m)
    for col in range(m):
        e = field.unit_vector(m, col)
        resid = e.copy()
        for i, p in enumerate(piv):
            if resid[p] != 0:
                resid = field.reduce(resid - resid[p] * img[i])
        for k, j in enumerate(keep):
            proj[k, col] = resid[j]
    return keep, proj


# ---------------------------------------------------------------------------
# typed wrappers


@dataclass(frozen=True)
class VectorSpace:
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate basis labels in {self.labels}")

    @property
    def dim(self):
        return len(self.labels)

    @classmethod
    def of_dim(cls, n, prefix="e"):
        return cls(tuple(f"{prefix}{i}" for i in range(n)))


class LinearMap:
    """A matrix together with its domain and codomain spaces."""

    def __init__(self, domain, codomain, matrix, field=QQ):
        self.field = field
        self.domain = domain
        self.codomain = codomain
        matrix = np.asarray(matrix, dtype=object)
        if matrix.size == 0:
            matrix = field.zeros(codomain.dim, domain.dim)
        if matrix.shape != (codomain.dim, domain.dim):
            raise DimensionError(
                f"matrix shape {matrix.shape} does not match "
                f"{codomain.dim}x{domain.dim}")
        self.matrix = matrix

    def __call__(self, v):
        return matmul(self.field, self.matrix, np.asarray(v, dtype=object).reshape(-1, 1)).reshape(-1)

    def compose(self, other):
        """``self ∘ other``."""
        self.field.check(other.field)
        if other.codomain.dim != self.domain.dim:
            raise DimensionError("composition dimension mismatch")
        return LinearMap(other.domain, self.codomain,
                         matmul(self.field, self.matrix, other.matrix), self.field)

    def __matmul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and self.field == other.field
                and self.matrix.shape == other.matrix.shape
                and bool(np.all(self.matrix == other.matrix)))

    def __repr__(self):
        return f"LinearMap({self.domain.dim}->{self.codomain.dim}, {self.matrix.tolist()})"

    @classmethod
    def identity(cls, space, field=QQ):
        return cls(space, space, field.eye(space.dim), field)

    @classmethod
    def zero(cls, domain, codomain, field=QQ):
        return cls(domain, codomain, field.zeros(codomain.dim, domain.dim), field)


def solve_linear(A, b):
    """Return x with ``A(x) = b`` or ``None`` when the system is inconsistent."""
    b = np.asarray(b, dtype=object).reshape(-1)
    if b.shape[0] != A.codomain.dim:
        raise DimensionError("right-hand side not in codomain")
    b = A.field.array(list(b)) if b.size else A.field.zero_vector(0)
    return solve(A.field, A.matrix, b)


def kernel(A):
    """Canonical (RREF) basis of ker A, as a list of vectors."""
    ns = nullspace(A.field, A.matrix)
    return [ns[i] for i in range(ns.shape[0])]


def image(A):
    if A.matrix.size == 0:
        return []
    rb = row_basis(A.field, [A.matrix[:, j] for j in range(A.matrix.shape[1])])
    return [rb[i] for i in range(rb.shape[0])]


def cokernel(A):
    """Quotient ``codomain / im A`` with its canonical projection."""
    keep, proj = complement_coords(A.field, A.matrix)
    q = VectorSpace(tuple(A.codomain.labels[j] for j in keep))
    return q, LinearMap(A.codomain, q, proj, A.field)


# ---------------------------------------------------------------------------
# finite-dimensional algebras


class FiniteAlgebra:
    """Structure constants ``mult[i, j] = e_i · e_j`` as an (n, n, n) array."""

    def __init__(self, space, mult, unit, field=QQ):
        self.space = space
        self.field = field
        n = space.dim
        mult = np.asarray(mult, dtype=object)
        if n == 0:
            mult = np.empty((0, 0, 0), dtype=object)
        if mult.shape != (n, n, n):
            raise DimensionError(f"structure constants have shape {mult.shape}")
        self.mult = mult
        self.unit = np.asarray(unit, dtype=object).reshape(n)

    @property
    def dim(self):
        return self.space.dim

    def multiply(self, x, y):
        n = self.dim
        if n == 0:
            return self.field.zero_vector(0)
        out = self.field.zero_vector(n)
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] != 0:
                    out = out + (x[i] * y[j]) * self.mult[i, j]
        return self.field.reduce(out)

    def left_matrix(self, x):
        """Matrix of ``y ↦ x·y``."""
        n = self.dim
        m = self.field.zeros(n, n)
        for j in range(n):
            m[:, j] = self.multiply(x, self.field.unit_vector(n, j))
        return m

    def basis_left_matrices(self):
        n = self.dim
        # L_i[:, j] = mult[i, j]
        return [self.field.reduce(self.mult[i].T.copy()) for i in range(n)]

    def check_associative(self):
        n, f = self.dim, self.field
        bad = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    ei, ej, ek = (f.unit_vector(n, t) for t in (i, j, k))
                    lhs = self.multiply(self.multiply(ei, ej), ek)
                    rhs = self.multiply(ei, self.multiply(ej, ek))
                    if not np.array_equal(lhs, rhs):
                        bad.append((i, j, k))
        return bad

    def check_unit(self):
        n, f = self.dim, self.field
        bad = []
        for i in range(n):
            e = f.unit_vector(n, i)
            if not (np.array_equal(self.multiply(self.unit, e), e)
                    and np.array_equal(self.multiply(e, self.unit), e)):
                bad.append(i)
        return bad


def _integral(a):
    """``a`` times a positive integer so that every entry is an int."""
    a = np.asarray(a, dtype=object)
    flat = list(a.flat)
    den = math.lcm(*{x.denominator for x in flat}) if flat else 1
    return np.array([x.numerator * (den // x.denominator) for x in flat],
                    dtype=object).reshape(a.shape)


def _product_span(alg, left, right, mult=None):
    """Echelon basis of span{a·b}, all products computed in one tensor contraction."""
    f, n = alg.field, alg.dim
    if f.characteristic == 0:
        # positive rescaling leaves spans alone and keeps the arithmetic on ints
        L, R = _integral(left), _integral(right)
        mult = _integral(alg.mult) if mult is None else mult
    else:
        L, R, mult = (np.array(x, dtype=object) for x in (left, right, alg.mult))
    # prods[a, k, b] = sum_ij L[a, i] R[b, j] mult[i, j, k]
    prods = np.tensordot(np.tensordot(L, mult, axes=(1, 0)), R, axes=([1], [1]))
    vecs = f.reduce(prods.transpose(0, 2, 1).reshape(-1, n))
    rb = row_basis(f, [v for v in vecs if not is_zero(v)], n)
    return [rb[i] for i in range(rb.shape[0])]


def power_nilpotency_index(alg, basis, mult=None):
    """Smallest n with (span basis)^n = 0, or None if not reached by dim+1."""
    cur = list(basis)
    if not cur:
        return 0
    if mult is None and alg.field.characteristic == 0:
        mult = _integral(alg.mult)
    # after pass n, cur spans J^(n+1)
    for n in range(1, alg.dim + 2):
        cur = _product_span(alg, cur, basis, mult)
        if not cur:
            return n + 1
    return None


def trace_form(alg, mult=None):
    """Gram matrix ``tr(L_i L_k)``, up to a positive scalar.

    tr(L_i L_k) is the entrywise sum of L_i * L_kᵀ, so the whole matrix is one
    product of the flattened stacks.  Denominators are cleared first so the
    product runs on Python ints.
    """
    n = alg.dim
    mult = _integral(alg.mult) if mult is None else mult
    # L_i[a, b] = mult[i, b, a], so tr(L_i L_k) = sum_ab mult[i, b, a] mult[k, a, b]
    gram = mult.transpose(0, 2, 1).reshape(n, n * n).dot(mult.reshape(n, n * n).T)
    return np.array([Fraction(int(g)) for g in gram.flat], dtype=object).reshape(n, n)


def jacobson_radical(alg):
    """Basis of J(A) via the trace form ``(x, y) ↦ tr(L_x L_y)``.

    Only valid in characteristic 0; the result is checked to be nilpotent.
    """
    f = alg.field
    if f.characteristic != 0:
        raise UnsupportedFieldError(
            f"radical computation needs characteristic 0, got {f}")
    n = alg.dim
    if n == 0:
        return []
    mult = _integral(alg.mult)
    ns = nullspace(f, trace_form(alg, mult))
    basis = [ns[i] for i in range(ns.shape[0])]
    idx = power_nilpotency_index(alg, basis, mult)
    if idx is None or idx > n:
        raise InternalConsistencyError("trace-form radical is not nilpotent")
    return basis


def is_two_sided_ideal(alg, basis):
    f = alg.field
    n = alg.dim
    b = np.array(basis, dtype=object).reshape(len(basis), n) if basis else f.zeros(0, n)
    for v in basis:
        for i in range(n):
            e = f.unit_vector(n, i)
            if not (in_span(f, b, alg.multiply(e, v)) and in_span(f, b, alg.multiply(v, e))):
                return False
    return True


def quotient_algebra(alg, ideal_basis):
    """A / I for a two-sided ideal I, on the canonical complement basis."""
    f = alg.field
    n = alg.dim
    ib = f.zeros(n, 0) if not ideal_basis else np.column_stack(ideal_basis)
    keep, proj = complement_coords(f, ib)
    q = len(keep)
    mult = np.empty((q, q, q), dtype=object)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            mult[a, b] = matmul(f, proj, alg.mult[i, j].reshape(n, 1)).reshape(q)
    unit = matmul(f, proj, alg.unit.reshape(n, 1)).reshape(q)
    space = VectorSpace(tuple(alg.space.labels[i] for i in keep))
    return FiniteAlgebra(space, mult, unit, f)
