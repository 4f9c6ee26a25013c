"""Yetter-Drinfeld data over a finite abelian group.

Objects are graded modules with a homogeneous basis: every basis vector v
carries a group degree deg(v), the coaction is v -> deg(v) (x) v, and the
group acts by matrices that preserve degrees.  The induced braiding is
C(v (x) w) = (deg(v) . w) (x) v.
"""

from __future__ import annotations

import itertools
from math import gcd

from .linalg import Matrix, SparseTensor, Tensor3, contract
from .scalars import Field, Scalar


class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z_{n_1} x ... x Z_{n_r}; elements are exponent tuples."""

    def __init__(self, factors):
        factors = tuple(int(n) for n in factors)
        if any(n < 1 for n in factors):
            raise ValueError("cyclic factors must be positive")
        self.factors = factors
        self.rank = len(factors)

    @property
    def order(self) -> int:
        out = 1
        for n in self.factors:
            out *= n
        return out

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.factors)))

    def generator(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def element_order(self, a) -> int:
        out = 1
        for x, n in zip(a, self.factors):
            d = n // gcd(x, n) if x else 1
            out = out * d // gcd(out, d)
        return out

    def index(self, a) -> int:
        flat = 0
        for x, n in zip(a, self.factors):
            flat = flat * n + (x % n)
        return flat

    def element(self, flat: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.factors):
            out.append(flat % n)
            flat //= n
        return tuple(reversed(out))

    def contains(self, a) -> bool:
        return len(a) == self.rank and all(0 <= x < n for x, n in zip(a, self.factors))

    def name(self, a) -> str:
        return "(" + ",".join(str(x) for x in a) + ")"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "Z" + "x".join(str(n) for n in self.factors) if self.factors else "Z1"


class Character:
    """A character of a finite abelian group with values in a fixed field.

    The value on generator i is a root of unity whose order divides the i-th
    cyclic factor; values extend multiplicatively.
    """

    def __init__(self, group: FiniteAbelianGroup, field: Field, generator_values: list[Scalar]):
        if len(generator_values) != group.rank:
            raise ValueError("one value per generator required")
        for v, n in zip(generator_values, group.factors):
            if not (v ** n).is_one():
                raise ValueError(f"character value {v!r} does not have order dividing {n}")
        self.group = group
        self.field = field
        self.generator_values = tuple(generator_values)

    @classmethod
    def from_exponents(cls, group: FiniteAbelianGroup, field: Field, exponents) -> "Character":
        """chi(gen_i) = zeta_{n_i}^{e_i} using the field's canonical roots."""
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != group.rank:
            raise ValueError("one exponent per generator required")
        values = []
        for e, n in zip(exponents, group.factors):
            e %= n
            if e == 0 or n == 1:
                values.append(field.one)
            else:
                values.append(field.root_of_unity(n) ** e)
        return cls(group, field, values)

    def value(self, a) -> Scalar:
        out = self.field.one
        for v, x in zip(self.generator_values, a):
            if x:
                out = out * v ** x
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and other.group == self.group
            and other.generator_values == self.generator_values
        )

    def __hash__(self):
        return hash((self.group, self.generator_values))


class YDData:
    """Grading plus commuting group action on a basis; the braiding source."""

    def __init__(self, group: FiniteAbelianGroup, field: Field, degrees, action: list[Matrix]):
        self.group = group
        self.field = field
        self.degrees = tuple(tuple(d) for d in degrees)
        if len(action) != group.rank:
            raise ValueError("one action matrix per group generator required")
        self.action = tuple(action)
        self.dim = len(self.degrees)
        for m in action:
            if m.nrows != self.dim or m.ncols != self.dim:
                raise ValueError("action matrix shape mismatch")
        self._action_cache: dict[tuple[int, ...], Matrix] = {}

    @classmethod
    def trivial(cls, field: Field, dim: int) -> "YDData":
        group = FiniteAbelianGroup(())
        return cls(group, field, [()] * dim, [])

    @classmethod
    def diagonal(cls, group, field, degrees, characters_per_basis) -> "YDData":
        """Diagonal action: generator j scales basis vector i by chi_i(gen_j)."""
        dim = len(degrees)
        action = []
        for j in range(group.rank):
            rows = [[field.zero] * dim for _ in range(dim)]
            for i, chi in enumerate(characters_per_basis):
                rows[i][i] = chi.value(group.generator(j))
            action.append(Matrix(field, rows))
        return cls(group, field, degrees, action)

    def action_of(self, element) -> Matrix:
        element = tuple(element)
        cached = self._action_cache.get(element)
        if cached is not None:
            return cached
        out = Matrix.identity(self.field, self.dim)
        for j, e in enumerate(element):
            m = self.action[j]
            for _ in range(e % self.group.factors[j]):
                out = m @ out
        self._action_cache[element] = out
        return out

    def is_trivial(self) -> bool:
        return self.group.order == 1 and all(d == self.group.identity for d in self.degrees)

    def __eq__(self, other):
        return (
            isinstance(other, YDData)
            and other.group == self.group
            and other.degrees == self.degrees
            and all(a == b for a, b in zip(other.action, self.action))
        )


def braiding_tensor(v: YDData, w: YDData) -> SparseTensor:
    """C_{V,W} as a rank-4 tensor: C(e_a (x) e_b) = sum C[a,b,p,q] e_p (x) e_q."""
    if v.group != w.group:
        raise ValueError("objects live over different groups")
    if not (v.field is w.field or v.field == w.field):
        raise ValueError("objects live over different fields")
    data: dict[tuple[int, int, int, int], Scalar] = {}
    for a in range(v.dim):
        act = w.action_of(v.degrees[a])
        for b in range(w.dim):
            for p in range(w.dim):
                c = act[p, b]
                if not c.is_zero():
                    data[(a, b, p, a)] = c
    return SparseTensor(v.field, (v.dim, w.dim, w.dim, v.dim), data)


def braiding(v: YDData, w: YDData) -> Matrix:
    """C_{V,W} as a matrix on the row-major flattened tensor square."""
    c4 = braiding_tensor(v, w)
    n, m = v.dim, w.dim
    out = Matrix.zeros(v.field, n * m, n * m)
    for (a, b, p, q), val in c4.data.items():
        out.rows[p * n + q][a * m + b] = val
    return out


def twist_tensor(field: Field, n: int, m: int) -> SparseTensor:
    """The plain flip v (x) w -> w (x) v as a rank-4 tensor."""
    one = field.one
    data = {(a, b, b, a): one for a in range(n) for b in range(m)}
    return SparseTensor(field, (n, m, m, n), data)


class YDCheck:
    __slots__ = ("name", "ok", "witness")

    def __init__(self, name, ok, witness=None):
        self.name = name
        self.ok = ok
        self.witness = witness

    def __repr__(self):
        status = "ok" if self.ok else f"FAIL at {self.witness}"
        return f"{self.name}: {status}"


class YDReport:
    def __init__(self, checks):
        self.checks = checks

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def __repr__(self):
        return "\n".join(repr(c) for c in self.checks)


def check_yd(data: YDData) -> YDReport:
    """Verify the module/grading axioms and the braid relation."""
    checks = []
    field = data.field
    ident = Matrix.identity(field, data.dim)

    witness = None
    for j, m in enumerate(data.action):
        power = ident
        for _ in range(data.group.factors[j]):
            power = m @ power
        if power != ident:
            witness = f"generator {j}"
            break
    checks.append(YDCheck("action-order", witness is None, witness))

    witness = None
    for i in range(len(data.action)):
        for j in range(i + 1, len(data.action)):
            if data.action[i] @ data.action[j] != data.action[j] @ data.action[i]:
                witness = f"generators {i}, {j}"
                break
        if witness:
            break
    checks.append(YDCheck("action-commutes", witness is None, witness))

    witness = None
    for j, m in enumerate(data.action):
        for c in range(data.dim):
            for b in range(data.dim):
                if not m[c, b].is_zero() and data.degrees[c] != data.degrees[b]:
                    witness = f"generator {j}, entry ({c},{b})"
                    break
            if witness:
                break
        if witness:
            break
    checks.append(YDCheck("degree-preserving", witness is None, witness))

    c4 = braiding_tensor(data, data)
    lhs = contract("abpq,qcuv,purs->abcrsv", c4, c4, c4, field=field)
    rhs = contract("bcpq,apuv,vqrs->abcurs", c4, c4, c4, field=field)
    diff = lhs.first_difference(rhs)
    checks.append(YDCheck("braid-relation", diff is None, diff))

    return YDReport(checks)


def is_braided_commutative(hopf) -> bool:
    """Exact test of m composed with the braiding against m itself."""
    mu = hopf.mult
    c4 = hopf.braiding_c4()
    twisted = contract("ijpq,pqk->ijk", c4, mu, field=hopf.field)
    plain = SparseTensor(hopf.field, mu.dims, dict(mu.data))
    return twisted == plain
