"""Exact dense/sparse linear algebra and multi-index tensor contraction.

All entries are Scalar values from one field.  The elimination engine works on
sparse rows (dict column -> Scalar) with deterministic Markowitz-style
pivoting, which keeps the large convolution systems produced by antipode
solves tractable.  Tensor index flattening is row-major everywhere:
(i, j) -> i * dim_j + j, and the same convention nests for higher ranks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import Field, FieldMismatchError, Scalar


class DimensionError(ValueError):
    """Shapes of operands are inconsistent."""


def ravel(idx: Sequence[int], dims: Sequence[int]) -> int:
    out = 0
    for i, d in zip(idx, dims):
        out = out * d + i
    return out


def unravel(flat: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        out.append(flat % d)
        flat //= d
    return tuple(reversed(out))


def _promote(field: Field, value) -> Scalar:
    if isinstance(value, Scalar):
        if not (value.field is field or value.field == field):
            raise FieldMismatchError(f"{value.field} vs {field}")
        return value
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, Fraction):
        return field.from_fraction(value)
    raise TypeError(f"cannot promote {value!r} to {field}")


class Matrix:
    """Dense matrix of Scalars; immutable by convention."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: list[list[Scalar]]):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        data = [[_promote(field, v) for v in row] for row in rows]
        if data and any(len(r) != len(data[0]) for r in data):
            raise DimensionError("ragged rows")
        return cls(field, data)

    @classmethod
    def from_cols(cls, field: Field, cols: Iterable[Iterable]) -> "Matrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls(field, [])
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise DimensionError("ragged columns")
        return cls.from_rows(field, ([c[i] for c in cols] for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    # -- access ------------------------------------------------------------
    def __getitem__(self, key) -> Scalar:
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> list[Scalar]:
        return list(self.rows[i])

    def column(self, j: int) -> list[Scalar]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Scalar]]:
        return [self.column(j) for j in range(self.ncols)]

    # -- arithmetic ----------------------------------------------------------
    def _check_same_shape(self, other: "Matrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionError(f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.field,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def scale(self, s: Scalar) -> "Matrix":
        return Matrix(self.field, [[s * a for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"inner dims {self.ncols} vs {other.nrows}")
        zero = self.field.zero
        ot = other.transpose().rows
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
            row = []
            for c in ot:
                acc = zero
                for k, a in nz:
                    if not c[k].is_zero():
                        acc = acc + a * c[k]
                row.append(acc)
            out.append(row)
        return Matrix(self.field, out)

    def apply(self, vec: Sequence[Scalar]) -> list[Scalar]:
        if len(vec) != self.ncols:
            raise DimensionError("vector length mismatch")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, v in zip(r, vec):
                if not a.is_zero() and not v.is_zero():
                    acc = acc + a * v
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product with row-major pairing (i_A * nrows_B + i_B)."""
        if not (other.field is self.field or other.field == self.field):
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        m = Matrix(self.field, out)
        m.ncols = self.ncols * other.ncols  # preserves shape when either factor is empty
        m.nrows = self.nrows * other.nrows
        return m

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch")
        return Matrix(self.field, [r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if i == j:
                    if not a.is_one():
                        return False
                elif not a.is_zero():
                    return False
        return True

    def trace(self) -> Scalar:
        if self.nrows != self.ncols:
            raise DimensionError("trace of non-square matrix")
        acc = self.field.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def to_sparse_rows(self) -> list[dict[int, Scalar]]:
        return [
            {j: a for j, a in enumerate(r) if not a.is_zero()}
            for r in self.rows
        ]

    def rank(self) -> int:
        return sparse_rank(self.to_sparse_rows(), self.ncols)

    def inverse(self) -> "Matrix | None":
        if self.nrows != self.ncols:
            raise DimensionError("inverse of non-square matrix")
        sol = solve_linear(self, Matrix.identity(self.field, self.nrows))
        if sol is None or sol.kernel:
            return None
        return sol.particular

    def solve(self, rhs: "Matrix") -> "LinearSolution | None":
        return solve_linear(self, rhs)

    def __repr__(self):
        body = "; ".join(" ".join(a.text() for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"


class LinearSolution:
    """Affine solution set of A x = B: one particular solution per rhs column
    plus a basis of the kernel of A."""

    __slots__ = ("particular", "kernel")

    def __init__(self, particular: Matrix, kernel: list[list[Scalar]]):
        self.particular = particular
        self.kernel = kernel


def _sparse_eliminate(rows: list[dict[int, Scalar]], ncols: int):
    """In-place RREF of sparse rows; columns >= ncols are treated as augmented.

    Returns the list of pivots as (row_index, column) pairs.  Pivot choice is
    deterministic: the active row with fewest system entries, then its column
    with fewest active occurrences.
    """
    col_rows: dict[int, set[int]] = {}
    sys_count = []
    for ri, row in enumerate(rows):
        cnt = 0
        for c in row:
            if c < ncols:
                col_rows.setdefault(c, set()).add(ri)
                cnt += 1
        sys_count.append(cnt)

    active = set(range(len(rows)))
    pivots: list[tuple[int, int]] = []

    def axpy(target: int, coef: Scalar, source: dict[int, Scalar]):
        row = rows[target]
        for c, v in source.items():
            cur = row.get(c)
            nv = coef * v if cur is None else cur + coef * v
            if nv.is_zero():
                if cur is not None:
                    del row[c]
                    if c < ncols:
                        col_rows[c].discard(target)
                        sys_count[target] -= 1
            else:
                if cur is None and c < ncols:
                    col_rows.setdefault(c, set()).add(target)
                    sys_count[target] += 1
                row[c] = nv

    while True:
        best = None
        for ri in active:
            if sys_count[ri]:
                key = (sys_count[ri], ri)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        ri = best[1]
        row = rows[ri]
        pc = min(
            (c for c in row if c < ncols),
            key=lambda c: (len(col_rows.get(c, ())), c),
        )
        inv = row[pc].inverse()
        if not inv.is_one():
            for c in list(row):
                nv = inv * row[c]
                row[c] = nv
        rows[ri] = {c: v for c, v in row.items() if not v.is_zero()}
        row = rows[ri]
        for other in list(col_rows.get(pc, ())):
            if other == ri:
                continue
            coef = -rows[other][pc]
            axpy(other, coef, row)
        pivots.append((ri, pc))
        active.discard(ri)

    pivots.sort(key=lambda rc: rc[1])
    return pivots


def sparse_rank(rows: list[dict[int, Scalar]], ncols: int) -> int:
    work = [dict(r) for r in rows]
    return len(_sparse_eliminate(work, ncols))


def sparse_solve(
    rows: list[dict[int, Scalar]],
    ncols: int,
    rhs_cols: list[dict[int, Scalar]],
    field: Field,
) -> tuple[list[list[Scalar]] | None, list[list[Scalar]]]:
    """Solve A x = b for each rhs column; returns (particulars, kernel basis).

    particulars is None when any rhs is inconsistent.  Kernel vectors have a
    one in their free column and are returned ordered by that column.
    """
    work = []
    naug = len(rhs_cols)
    for ri, row in enumerate(rows):
        r = dict(row)
        for j, col in enumerate(rhs_cols):
            v = col.get(ri)
            if v is not None and not v.is_zero():
                r[ncols + j] = v
        work.append(r)
    pivots = _sparse_eliminate(work, ncols)
    pivot_cols = {c for _, c in pivots}

    zero = field.zero
    consistent = True
    for ri, row in enumerate(work):
        if any(c < ncols for c in row):
            continue
        if any(not v.is_zero() for c, v in row.items() if c >= ncols):
            consistent = False
            break

    particulars = None
    if consistent:
        particulars = []
        for j in range(naug):
            x = [zero] * ncols
            for ri, c in pivots:
                v = work[ri].get(ncols + j)
                if v is not None:
                    x[c] = v
            particulars.append(x)

    kernel = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [zero] * ncols
        v[f] = field.one
        for ri, c in pivots:
            coef = work[ri].get(f)
            if coef is not None:
                v[c] = -coef
        kernel.append(v)
    return particulars, kernel


def solve_linear(a: Matrix, b: Matrix) -> LinearSolution | None:
    """Exact affine solution set of A X = B, or None when inconsistent."""
    if a.nrows != b.nrows:
        raise DimensionError(f"A has {a.nrows} rows, B has {b.nrows}")
    rhs_cols = [
        {i: v for i, v in enumerate(b.column(j)) if not v.is_zero()}
        for j in range(b.ncols)
    ]
    particulars, kernel = sparse_solve(a.to_sparse_rows(), a.ncols, rhs_cols, a.field)
    if particulars is None:
        return None
    return LinearSolution(Matrix.from_cols(a.field, particulars) if particulars else Matrix.zeros(a.field, a.ncols, 0), kernel)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def rank(a: Matrix) -> int:
    return a.rank()


class Tensor3:
    """Sparse rank-3 tensor: dict (i, j, k) -> nonzero Scalar."""

    __slots__ = ("field", "dims", "data")

    def __init__(self, field: Field, dims: tuple[int, int, int], data: dict[tuple[int, int, int], Scalar]):
        self.field = field
        self.dims = dims
        self.data = data

    @classmethod
    def from_entries(cls, field: Field, dims, entries) -> "Tensor3":
        dims = tuple(dims)
        data: dict[tuple[int, int, int], Scalar] = {}
        for i, j, k, v in entries:
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise DimensionError(f"index ({i},{j},{k}) out of range {dims}")
            key = (i, j, k)
            if key in data:
                raise ValueError(f"duplicate index triple {key}")
            s = _promote(field, v)
            if not s.is_zero():
                data[key] = s
        return cls(field, dims, data)

    def get(self, i: int, j: int, k: int) -> Scalar:
        return self.data.get((i, j, k), self.field.zero)

    def items(self):
        return self.data.items()

    def nnz(self) -> int:
        return len(self.data)

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and self.data == other.data

    def __hash__(self):
        return hash((self.dims, frozenset(self.data.items())))

    def __repr__(self):
        return f"Tensor3(dims={self.dims}, nnz={self.nnz()})"


class SparseTensor:
    """Sparse tensor of arbitrary rank used as the contraction result type."""

    __slots__ = ("field", "dims", "data")

    def __init__(self, field: Field, dims: tuple[int, ...], data: dict[tuple[int, ...], Scalar]):
        self.field = field
        self.dims = dims
        self.data = data

    def to_matrix(self) -> Matrix:
        if len(self.dims) != 2:
            raise DimensionError(f"rank {len(self.dims)} tensor is not a matrix")
        m = Matrix.zeros(self.field, self.dims[0], self.dims[1])
        for (i, j), v in self.data.items():
            m.rows[i][j] = v
        return m

    def to_tensor3(self) -> Tensor3:
        if len(self.dims) != 3:
            raise DimensionError(f"rank {len(self.dims)} tensor is not rank 3")
        return Tensor3(self.field, self.dims, dict(self.data))

    def to_vector(self) -> list[Scalar]:
        if len(self.dims) != 1:
            raise DimensionError("not a vector")
        out = [self.field.zero] * self.dims[0]
        for (i,), v in self.data.items():
            out[i] = v
        return out

    def to_scalar(self) -> Scalar:
        if self.dims != ():
            raise DimensionError("not a scalar")
        return self.data.get((), self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.dims == other.dims and self.data == other.data

    def __hash__(self):
        return hash((self.dims, frozenset(self.data.items())))

    def first_difference(self, other: "SparseTensor"):
        """Lexicographically smallest index where the tensors differ, or None."""
        keys = set(self.data) | set(other.data)
        zero = self.field.zero
        for key in sorted(keys):
            if self.data.get(key, zero) != other.data.get(key, zero):
                return key
        return None

    def __repr__(self):
        return f"SparseTensor(dims={self.dims}, nnz={len(self.data)})"


def _as_operand(field: Field, op) -> tuple[tuple[int, ...], dict[tuple[int, ...], Scalar]]:
    if isinstance(op, SparseTensor):
        return op.dims, op.data
    if isinstance(op, Tensor3):
        return op.dims, op.data
    if isinstance(op, Matrix):
        data = {}
        for i, r in enumerate(op.rows):
            for j, v in enumerate(r):
                if not v.is_zero():
                    data[(i, j)] = v
        return (op.nrows, op.ncols), data
    if isinstance(op, (list, tuple)):
        data = {}
        vals = [_promote(field, v) for v in op]
        for i, v in enumerate(vals):
            if not v.is_zero():
                data[(i,)] = v
        return (len(vals),), data
    raise TypeError(f"cannot contract operand of type {type(op).__name__}")


def contract(expr: str, *operands, field: Field | None = None) -> SparseTensor:
    """Exact einsum-style contraction, e.g. contract("ijk,k->ij", t, v).

    Every index letter must have a consistent dimension across operands.
    Letters absent from the output are summed; letters shared between
    operands are matched before summation.  The result does not depend on
    operand order beyond the output index order given after "->".
    """
    if "->" not in expr:
        raise ValueError("contraction must name its output indices with '->'")
    lhs, out_subs = expr.split("->")
    subs = [term.strip() for term in lhs.split(",")]
    out_subs = out_subs.strip()
    if len(subs) != len(operands):
        raise ValueError(f"{len(subs)} index groups for {len(operands)} operands")
    if field is None:
        for op in operands:
            if isinstance(op, (SparseTensor, Tensor3, Matrix)):
                field = op.field
                break
    if field is None:
        raise ValueError("field could not be inferred")

    dim_of: dict[str, int] = {}
    converted = []
    for term, op in zip(subs, operands):
        dims, data = _as_operand(field, op)
        if len(term) != len(dims):
            raise DimensionError(f"index group {term!r} vs operand rank {len(dims)}")
        for letter, d in zip(term, dims):
            if dim_of.setdefault(letter, d) != d:
                raise DimensionError(f"index {letter!r} bound to both {dim_of[letter]} and {d}")
        converted.append((term, data))
    for letter in out_subs:
        if letter not in dim_of:
            raise ValueError(f"output index {letter!r} unbound")

    remaining_usage: dict[str, int] = {}
    for term, _ in converted:
        for letter in term:
            remaining_usage[letter] = remaining_usage.get(letter, 0) + 1

    acc_subs, acc = converted[0]
    for letter in acc_subs:
        remaining_usage[letter] -= 1

    for term, data in converted[1:]:
        for letter in term:
            remaining_usage[letter] -= 1
        keep = {
            letter
            for letter in set(acc_subs) | set(term)
            if letter in out_subs or remaining_usage.get(letter, 0) > 0
        }
        acc_subs, acc = _join(acc_subs, acc, term, data, keep, field)

    # marginalize anything not in the output, then reorder
    result: dict[tuple[int, ...], Scalar] = {}
    positions = [acc_subs.index(letter) for letter in out_subs]
    for key, v in acc.items():
        out_key = tuple(key[p] for p in positions)
        cur = result.get(out_key)
        nv = v if cur is None else cur + v
        result[out_key] = nv
    for key in [k for k, v in result.items() if v.is_zero()]:
        del result[key]
    dims = tuple(dim_of[letter] for letter in out_subs)
    return SparseTensor(field, dims, result)


def _join(asubs, adata, bsubs, bdata, keep, field):
    shared = [l for l in asubs if l in bsubs]
    a_pos = {l: i for i, l in enumerate(asubs)}
    b_pos = {l: i for i, l in enumerate(bsubs)}
    a_keep = [l for l in asubs if l in keep]
    b_keep = [l for l in bsubs if l in keep and l not in a_pos]
    out_subs = "".join(a_keep + b_keep)

    sh_a = [a_pos[l] for l in shared]
    sh_b = [b_pos[l] for l in shared]
    ka = [a_pos[l] for l in a_keep]
    kb = [b_pos[l] for l in b_keep]

    index: dict[tuple[int, ...], list[tuple[tuple[int, ...], Scalar]]] = {}
    for key, v in bdata.items():
        sk = tuple(key[p] for p in sh_b)
        index.setdefault(sk, []).append((tuple(key[p] for p in kb), v))

    out: dict[tuple[int, ...], Scalar] = {}
    for key, va in adata.items():
        sk = tuple(key[p] for p in sh_a)
        matches = index.get(sk)
        if not matches:
            continue
        base = tuple(key[p] for p in ka)
        for bk, vb in matches:
            ok = base + bk
            prod = va * vb
            cur = out.get(ok)
            nv = prod if cur is None else cur + prod
            out[ok] = nv
    for key in [k for k, v in out.items() if v.is_zero()]:
        del out[key]
    return out_subs, out


class EchelonSpan:
    """Incrementally maintained echelonized spanning set of column vectors."""

    def __init__(self, field: Field, length: int):
        self.field = field
        self.length = length
        self.pivots: dict[int, list[Scalar]] = {}

    def reduce(self, vec: Sequence[Scalar]) -> list[Scalar]:
        v = list(vec)
        for p in sorted(self.pivots):
            c = v[p]
            if not c.is_zero():
                row = self.pivots[p]
                for i in range(self.length):
                    if not row[i].is_zero():
                        v[i] = v[i] - c * row[i]
        return v

    def add(self, vec: Sequence[Scalar]) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        v = self.reduce(vec)
        pivot = next((i for i, a in enumerate(v) if not a.is_zero()), None)
        if pivot is None:
            return False
        inv = v[pivot].inverse()
        v = [inv * a for a in v]
        for p, row in self.pivots.items():
            c = row[pivot]
            if not c.is_zero():
                self.pivots[p] = [a - c * b for a, b in zip(row, v)]
        self.pivots[pivot] = v
        return True

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return all(a.is_zero() for a in self.reduce(vec))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[list[Scalar]]:
        """Reduced echelon basis, ordered by pivot position."""
        return [list(self.pivots[p]) for p in sorted(self.pivots)]


def column_space_equal(a: Matrix, b: Matrix) -> bool:
    if a.nrows != b.nrows:
        return False
    span = EchelonSpan(a.field, a.nrows)
    for j in range(a.ncols):
        span.add(a.column(j))
    d = span.dim
    for j in range(b.ncols):
        if span.add(b.column(j)):
            return False
    bspan = EchelonSpan(b.field, b.nrows)
    for j in range(b.ncols):
        bspan.add(b.column(j))
    return bspan.dim == d
