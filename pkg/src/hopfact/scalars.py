"""Exact scalar arithmetic over Q, cyclotomic extensions Q(zeta_n) and prime fields F_p.

Every scalar is an immutable value in canonical form: rationals are reduced
fractions, cyclotomic elements are coefficient vectors of length phi(n) in the
basis 1, zeta, ..., zeta^(phi(n)-1) reduced modulo the n-th cyclotomic
polynomial, and prime-field elements are residues in [0, p).  Equality is
coefficient-wise equality of canonical forms.  No floating point is used
anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache


class FieldMismatchError(ValueError):
    """Raised when combining scalars that live in different fields."""


class FieldParseError(ValueError):
    """Raised on malformed field descriptors or scalar text."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n below 3.3 * 10^24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def _poly_divide_exact(num: list[int], den: tuple[int, ...]) -> tuple[int, ...]:
    # exact division of integer polynomials, constant term first, den monic
    num = list(num)
    qlen = len(num) - len(den) + 1
    q = [0] * qlen
    for i in range(qlen - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        for j, dc in enumerate(den):
            num[i + j] -= c * dc
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first, monic."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    poly: tuple[int, ...] = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(list(poly), cyclotomic_polynomial(d))
    return poly


class Field:
    """A field descriptor plus the arithmetic on its raw value representation."""

    kind: str

    def characteristic(self) -> int:
        raise NotImplementedError

    # raw-value operations, overridden per field --------------------------
    def _add(self, u, v):
        raise NotImplementedError

    def _neg(self, u):
        raise NotImplementedError

    def _mul(self, u, v):
        raise NotImplementedError

    def _inv(self, u):
        raise NotImplementedError

    def _is_zero(self, u) -> bool:
        raise NotImplementedError

    def _from_fraction(self, q: Fraction):
        raise NotImplementedError

    def _fmt(self, u) -> str:
        raise NotImplementedError

    def _parse(self, text: str):
        raise NotImplementedError

    # scalar constructors --------------------------------------------------
    def scalar(self, raw) -> "Scalar":
        return Scalar(self, raw)

    @property
    def zero(self) -> "Scalar":
        z = self.__dict__.get("_zero_scalar")
        if z is None:
            z = self.__dict__["_zero_scalar"] = self.from_int(0)
        return z

    @property
    def one(self) -> "Scalar":
        o = self.__dict__.get("_one_scalar")
        if o is None:
            o = self.__dict__["_one_scalar"] = self.from_int(1)
        return o

    def from_int(self, i: int) -> "Scalar":
        return Scalar(self, self._from_fraction(Fraction(i)))

    def from_fraction(self, q: Fraction) -> "Scalar":
        return Scalar(self, self._from_fraction(q))

    def parse(self, text: str) -> "Scalar":
        return Scalar(self, self._parse(text))

    def contains_root_of_unity(self, n: int) -> bool:
        raise NotImplementedError

    def root_of_unity(self, n: int) -> "Scalar":
        """A primitive n-th root of unity, or FieldParseError if none exists."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return str(self)


class RationalField(Field):
    kind = "rationals"

    def characteristic(self) -> int:
        return 0

    def _add(self, u, v):
        return u + v

    def _neg(self, u):
        return -u

    def _mul(self, u, v):
        return u * v

    def _inv(self, u):
        if u == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / u

    def _is_zero(self, u):
        return u == 0

    def _from_fraction(self, q):
        return q

    def _fmt(self, u):
        return str(u)

    def _parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldParseError(f"bad rational {text!r}: {exc}") from None

    def contains_root_of_unity(self, n):
        return n in (1, 2)

    def root_of_unity(self, n):
        if n == 1:
            return self.one
        if n == 2:
            return self.from_int(-1)
        raise FieldParseError(f"Q contains no primitive {n}-th root of unity")

    def __str__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class CyclotomicField(Field):
    """Q(zeta_n) with elements stored as length-phi(n) coefficient tuples."""

    kind = "cyclotomic"

    def __init__(self, n: int):
        if n < 1:
            raise FieldParseError("cyclotomic order must be >= 1")
        self.n = n
        self.phi = euler_phi(n)
        poly = cyclotomic_polynomial(n)
        # x^phi = -(c0 + c1 x + ... + c_{phi-1} x^{phi-1}); extend table up to x^(2 phi - 2)
        base = tuple(Fraction(-c) for c in poly[:-1])
        table = [base]
        for _ in range(self.phi - 2):
            prev = table[-1]
            shifted = [Fraction(0)] + list(prev[:-1])
            top = prev[-1]
            if top:
                shifted = [shifted[i] + top * base[i] for i in range(self.phi)]
            table.append(tuple(shifted))
        self._red_table = table  # x^(phi+k) mod Phi_n for k = 0 .. phi-2

    def characteristic(self) -> int:
        return 0

    def _add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def _neg(self, u):
        return tuple(-a for a in u)

    def _mul(self, u, v):
        phi = self.phi
        if phi == 1:
            return (u[0] * v[0],)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        conv[i + j] += a * b
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = self._red_table[k - phi]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def _inv(self, u):
        if self._is_zero(u):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x] against Phi_n, which is irreducible over Q
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.n)]

        def pdeg(p):
            d = len(p) - 1
            while d >= 0 and not p[d]:
                d -= 1
            return d

        def pdivmod(num, den):
            num = list(num)
            dd = pdeg(den)
            lead = den[dd]
            q = [Fraction(0)] * max(1, pdeg(num) - dd + 1)
            while pdeg(num) >= dd:
                k = pdeg(num) - dd
                c = num[pdeg(num)] / lead
                q[k] = c
                for i in range(dd + 1):
                    num[k + i] -= c * den[i]
            return q, num

        r0, r1 = modulus, list(u)
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while pdeg(r1) > 0:
            q, rem = pdivmod(r0, r1)
            r0, r1 = r1, rem
            prod = [Fraction(0)] * (len(q) + len(t1))
            for i, qc in enumerate(q):
                if qc:
                    for j, tc in enumerate(t1):
                        if tc:
                            prod[i + j] += qc * tc
            tnew = [Fraction(0)] * max(len(t0), len(prod))
            for i, c in enumerate(t0):
                tnew[i] += c
            for i, c in enumerate(prod):
                tnew[i] -= c
            t0, t1 = t1, tnew
        if pdeg(r1) != 0:
            raise ArithmeticError("gcd with irreducible modulus must be a nonzero constant")
        c = r1[0]
        out = [Fraction(0)] * self.phi
        for i in range(len(t1)):
            if t1[i]:
                out[i] = t1[i] / c
        return tuple(out)

    def _is_zero(self, u):
        return all(a == 0 for a in u)

    def _from_fraction(self, q):
        return (q,) + (Fraction(0),) * (self.phi - 1)

    def _fmt(self, u):
        return "[" + ",".join(str(a) for a in u) + "]"

    def _parse(self, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise FieldParseError(f"cyclotomic scalar must look like [c0,c1,...]: {text!r}")
        body = text[1:-1].strip()
        parts = [p for p in body.split(",")] if body else []
        if len(parts) > self.phi:
            raise FieldParseError(
                f"cyclotomic coefficient vector longer than phi({self.n}) = {self.phi}"
            )
        try:
            coeffs = [Fraction(p.strip()) for p in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldParseError(f"bad coefficient in {text!r}: {exc}") from None
        coeffs += [Fraction(0)] * (self.phi - len(coeffs))
        return tuple(coeffs)

    def generator(self) -> "Scalar":
        """zeta_n itself."""
        if self.phi == 1:
            # Phi_1 = x - 1 or Phi_2 = x + 1
            return self.from_int(1 if self.n == 1 else -1)
        vec = [Fraction(0)] * self.phi
        vec[1] = Fraction(1)
        return Scalar(self, tuple(vec))

    def contains_root_of_unity(self, n):
        if n in (1, 2):
            return True
        m = self.n if self.n % 2 == 0 else 2 * self.n
        return m % n == 0

    def root_of_unity(self, n):
        if n == 1:
            return self.one
        if self.n % n == 0:
            return self.generator() ** (self.n // n)
        if n == 2:
            return self.from_int(-1)
        if self.n % 2 == 1 and n % 2 == 0 and self.n % (n // 2) == 0:
            # n/2 divides the odd order self.n, so -zeta_(n/2) has order exactly n
            return -(self.generator() ** (self.n // (n // 2)))
        raise FieldParseError(f"Q(zeta_{self.n}) contains no primitive {n}-th root of unity")

    def __str__(self):
        return f"Cyclotomic({self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))


class PrimeField(Field):
    kind = "prime_field"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldParseError(f"{p} is not prime")
        self.p = p

    def characteristic(self) -> int:
        return self.p

    def _add(self, u, v):
        return (u + v) % self.p

    def _neg(self, u):
        return (-u) % self.p

    def _mul(self, u, v):
        return (u * v) % self.p

    def _inv(self, u):
        if u == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(u, self.p - 2, self.p)

    def _is_zero(self, u):
        return u == 0

    def _from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return q.numerator % self.p * pow(den, self.p - 2, self.p) % self.p

    def _fmt(self, u):
        return str(u)

    def _parse(self, text):
        try:
            return int(text.strip()) % self.p
        except ValueError as exc:
            raise FieldParseError(f"bad residue {text!r}: {exc}") from None

    def contains_root_of_unity(self, n):
        return (self.p - 1) % n == 0

    def root_of_unity(self, n):
        if n == 1:
            return self.one
        if (self.p - 1) % n != 0:
            raise FieldParseError(f"F_{self.p} contains no primitive {n}-th root of unity")
        qs = prime_factors(n)
        for r in range(2, self.p):
            if pow(r, n, self.p) != 1:
                continue
            if all(pow(r, n // q, self.p) != 1 for q in qs):
                return self.scalar(r)
        raise FieldParseError(f"no primitive {n}-th root found in F_{self.p}")

    def __str__(self):
        return f"Fp({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


_FIELD_RE = re.compile(r"^\s*(Q|Cyclotomic\((\d+)\)|Fp\((\d+)\))\s*$", re.IGNORECASE)


def parse_field(text: str) -> Field:
    """Parse a field descriptor: "Q", "Cyclotomic(n)" or "Fp(p)"."""
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldParseError(f"unknown field descriptor {text!r}")
    if m.group(1).upper() == "Q":
        return QQ
    if m.group(2) is not None:
        n = int(m.group(2))
        if n < 1:
            raise FieldParseError("cyclotomic order must be >= 1")
        return cyclotomic_field(n)
    return prime_field(int(m.group(3)))


class Scalar:
    """An immutable exact field element; all operators are pure."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.v, self.field._neg(o.v)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(o.v, self.field._neg(self.v)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.v, o.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.v, self.field._inv(o.v)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(o.v, self.field._inv(self.v)))

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.v))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = base.inverse()
            k = -k
        acc = self.field.one
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field._inv(self.v))

    def is_zero(self) -> bool:
        return self.field._is_zero(self.v)

    def is_one(self) -> bool:
        return self == self.field.one

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not (other.field is self.field or other.field == self.field):
            return False
        return self.v == other.v

    def __hash__(self):
        return hash((self.field, self.v))

    def text(self) -> str:
        return self.field._fmt(self.v)

    def __repr__(self):
        return self.text()

    def multiplicative_order(self, bound: int = 10000) -> int | None:
        """Exact order of the scalar in the multiplicative group, or None if > bound."""
        if self.is_zero():
            return None
        acc = self
        for k in range(1, bound + 1):
            if acc.is_one():
                return k
            acc = acc * self
        return None


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Named-operation entry point mirroring the operator algebra on Scalar."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def root_of_unity(field: Field, n: int) -> Scalar:
    """A primitive n-th root of unity in the field; raises if none exists."""
    if n < 1:
        raise ValueError("n must be positive")
    return field.root_of_unity(n)
