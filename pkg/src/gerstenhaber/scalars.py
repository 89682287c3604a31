"""Exact scalars: cyclotomic fields Q(w) and prime fields F_p with a chosen root of unity.

Matrices in :mod:`gerstenhaber.exactla` store *raw* field elements and call the
field's arithmetic directly; :class:`Scalar` is the user-facing immutable wrapper.

Raw representations:

* ``Q(w)`` with ``phi(n) == 1``: a ``gmpy2.mpq``.
* ``Q(w)`` otherwise: a tuple of ``phi(n)`` ``mpq`` coefficients of ``1, w, w^2, ...``
  reduced modulo the n-th cyclotomic polynomial.
* ``F_p``: an ``int`` in ``range(p)``.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq


class FieldError(ValueError):
    pass


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise FieldError(f"cyclotomic index must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return poly


def _poly_exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] // lead
        out[k] = q
        for i, c in enumerate(den):
            num[k + i] -= q * c
    assert not any(num), "inexact polynomial division"
    return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FieldSpec:
    """Base class for the two supported field kinds.

    ``n`` is the order of the designated root of unity ``omega``.
    """

    kind: str
    n: int
    characteristic: int

    # raw arithmetic, bound per instance
    add = sub = mul = neg = None

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    def from_fraction(self, q):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse_raw(self, text: str):
        raise NotImplementedError

    # -- shared helpers --------------------------------------------------

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def omega(self):
        return self._omega

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero in " + repr(self))
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self._one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def root(self, order: int):
        """Raw primitive ``order``-th root of unity, as a power of omega."""
        if order < 1 or self.n % order:
            raise FieldError(f"{self!r} has no designated primitive {order}-th root of unity")
        return self.pow(self._omega, self.n // order)

    def coerce(self, value):
        """Raw element from a Scalar, int, Fraction or text."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"field mismatch: {value.field!r} vs {self!r}")
            return value.raw
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction) or type(value).__name__ == "mpq":
            return self.from_fraction(value)
        if isinstance(value, str):
            return self.parse_raw(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def __call__(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def scalar(self, raw) -> "Scalar":
        return Scalar(self, raw)

    def parse(self, text: str) -> "Scalar":
        return Scalar(self, self.parse_raw(text))

    def to_json(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_json(doc: dict) -> "FieldSpec":
        if doc["kind"] == "cyclotomic":
            return cyclotomic(doc["n"])
        return prime_field(doc["p"], doc["n"], doc.get("omega"))


class CyclotomicField(FieldSpec):
    kind = "cyclotomic"
    characteristic = 0

    def __init__(self, n: int):
        if n < 1:
            raise FieldError(f"cyclotomic field needs n >= 1, got {n}")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = d = len(self.modulus) - 1
        # w^k reduced mod Phi_n for k < 2d - 1
        table = []
        for k in range(max(2 * d - 1, 1)):
            vec = [0] * (d + k + 1)
            vec[k] = 1
            for top in range(len(vec) - 1, d - 1, -1):
                c = vec[top]
                if c:
                    for i, m in enumerate(self.modulus):
                        vec[top - d + i] -= c * m
            table.append(tuple(vec[:d]))
        self._reduce = table
        if d == 1:
            self.add, self.sub, self.mul, self.neg = operator.add, operator.sub, operator.mul, operator.neg
            self._zero, self._one = mpq(0), mpq(1)
            self._omega = mpq(1) if n == 1 else mpq(-1)
        else:
            self.add, self.sub, self.mul, self.neg = self._add, self._sub, self._mul, self._neg
            self._zero = tuple(mpq(0) for _ in range(d))
            self._one = (mpq(1),) + self._zero[1:]
            self._omega = (mpq(0), mpq(1)) + self._zero[2:]

    def __repr__(self):
        return f"Q(w{self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyclotomic", self.n))

    def to_json(self):
        return {"kind": "cyclotomic", "n": self.n}

    # tuple arithmetic (degree >= 2)
    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        d = self.degree
        prod = [mpq(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._reduce[k]):
                    if r:
                        out[i] += c * r
        return tuple(out)

    def is_zero(self, a):
        if self.degree == 1:
            return not a
        return not any(a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return 1 / a
        # solve (multiplication by a) * x = 1 over Q
        d = self.degree
        basis = [self._one] + [self.pow_basis(k) for k in range(1, d)]
        cols = [self._mul(a, e) for e in basis]
        rows = [[cols[j][i] for j in range(d)] + [mpq(1 if i == 0 else 0)] for i in range(d)]
        for c in range(d):
            p = next(r for r in range(c, d) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(d):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return tuple(rows[i][d] for i in range(d))

    def pow_basis(self, k):
        vec = [mpq(0)] * self.degree
        vec[k] = mpq(1)
        return tuple(vec)

    def from_int(self, k):
        if self.degree == 1:
            return mpq(k)
        return (mpq(k),) + self._zero[1:]

    def from_fraction(self, q):
        q = mpq(q.numerator, q.denominator)
        if self.degree == 1:
            return q
        return (q,) + self._zero[1:]

    def coefficients(self, a) -> tuple:
        """Coefficients of 1, w, ..., w^(d-1) as Fractions."""
        if self.degree == 1:
            a = (a,)
        return tuple(Fraction(int(c.numerator), int(c.denominator)) for c in a)

    def from_coefficients(self, coeffs):
        """Raw element from coefficients of w^0, w^1, ... (any length; reduced)."""
        acc = self._zero
        power = self._one
        for c in coeffs:
            c = mpq(c.numerator, c.denominator) if not isinstance(c, int) else mpq(c)
            if c:
                acc = self.add(acc, self._scale(power, c))
            power = self.mul(power, self._omega)
        return acc

    def _scale(self, a, c):
        if self.degree == 1:
            return a * c
        return tuple(x * c for x in a)

    def format(self, a):
        terms = []
        for k, c in enumerate(self.coefficients(a)):
            if c == 0:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    _TERM = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*)?)?(w(?:\^(\d+))?)?$")

    def parse_raw(self, text):
        s = text.replace(" ", "")
        if not s:
            raise FieldError("empty scalar text")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"[+-][^+-]+", s)
        if "".join(pieces) != s:
            raise FieldError(f"cannot parse scalar {text!r}")
        coeffs: dict[int, Fraction] = {}
        for piece in pieces:
            sign = -1 if piece[0] == "-" else 1
            m = self._TERM.match(piece[1:])
            if not m or (m.group(1) is None and m.group(2) is None):
                raise FieldError(f"cannot parse term {piece!r} in {text!r}")
            c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            k = 0 if m.group(2) is None else int(m.group(3) or 1)
            coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        top = max(coeffs)
        return self.from_coefficients([coeffs.get(k, Fraction(0)) for k in range(top + 1)])


class PrimeField(FieldSpec):
    kind = "prime"

    def __init__(self, p: int, n: int = 1, omega: int | None = None):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1 or (p - 1) % n:
            raise FieldError(f"F_{p} has no primitive {n}-th root of unity (need n | p-1)")
        self.p = self.characteristic = p
        self.n = n
        if omega is None:
            omega = next(w for w in range(1, p) if _order_mod(w, p) == n)
        omega %= p
        if _order_mod(omega, p) != n:
            raise FieldError(f"{omega} does not have multiplicative order {n} mod {p}")
        self._omega = omega
        self._zero, self._one = 0, 1 % p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.mul = lambda a, b: (a * b) % p
        self.neg = lambda a: (-a) % p

    def __repr__(self):
        return f"F{self.p}(w{self.n}={self._omega})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and (other.p, other.n, other._omega) == (self.p, self.n, self._omega)

    def __hash__(self):
        return hash(("prime", self.p, self.n, self._omega))

    def to_json(self):
        return {"kind": "prime", "p": self.p, "n": self.n, "omega": self._omega}

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, k):
        return k % self.p

    def from_fraction(self, q):
        return (int(q.numerator) * self.inv(int(q.denominator) % self.p)) % self.p

    def format(self, a):
        return f"{self.p}:{a}"

    def parse_raw(self, text):
        s = text.strip()
        if ":" in s:
            p, r = s.split(":", 1)
            if int(p) != self.p:
                raise FieldError(f"scalar {text!r} is not in F_{self.p}")
            s = r
        return int(s) % self.p


def _order_mod(w: int, p: int) -> int:
    w %= p
    if w == 0:
        return 0
    k, x = 1, w
    while x != 1:
        x = (x * w) % p
        k += 1
    return k


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> CyclotomicField:
    return CyclotomicField(n)


@lru_cache(maxsize=None)
def prime_field(p: int, n: int = 1, omega: int | None = None) -> PrimeField:
    return PrimeField(p, n, omega)


class Scalar:
    """Immutable exact field element."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FieldSpec, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other.raw
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.raw))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.raw, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.raw))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.raw, e))

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def __eq__(self, other):
        if isinstance(other, (Scalar, int, Fraction, str)):
            try:
                return self.field.is_zero(self.field.sub(self.raw, self._other(other)))
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __str__(self):
        return self.field.format(self.raw)

    def __repr__(self):
        return f"Scalar({self.field!r}, {self.field.format(self.raw)!r})"


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field!r} vs {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def omega_integer(a: int, spec: FieldSpec, omega=None) -> Scalar:
    """(a)_w = 1 + w + ... + w^(a-1); ``omega`` overrides the designated root (raw)."""
    if a < 0:
        raise ValueError("omega-integers are defined for a >= 0")
    w = spec.omega if omega is None else omega
    acc, power = spec.zero, spec.one
    for _ in range(a):
        acc = spec.add(acc, power)
        power = spec.mul(power, w)
    return Scalar(spec, acc)


def omega_binomial(b: int, c: int, spec: FieldSpec, omega=None) -> Scalar:
    """Gaussian binomial via binom(b,c) = binom(b-1,c-1) + w^c binom(b-1,c).

    The recurrence stays valid when some (k)_w vanishes, unlike the quotient form.
    """
    if b < 0 or c < 0:
        raise ValueError("omega-binomials need b, c >= 0")
    if c > b:
        raise ValueError(f"omega-binomial needs c <= b, got b={b}, c={c}")
    w = spec.omega if omega is None else omega
    return Scalar(spec, _binomial_row(spec, w, b)[c])


@lru_cache(maxsize=256)
def _binomial_row(spec, w, b):
    row = (spec.one,)
    for k in range(1, b + 1):
        new = [spec.one]
        for c in range(1, k):
            new.append(spec.add(row[c - 1], spec.mul(spec.pow(w, c), row[c])))
        new.append(spec.one)
        row = tuple(new)
    return row
