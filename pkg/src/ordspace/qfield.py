"""Exact arithmetic in real quadratic fields Q(sqrt d).

Elements are stored as ``(p + q*sqrt(d)) / den`` with integer ``p, q, den``,
``den > 0`` and ``gcd(p, q, den) == 1``; the public ``a`` and ``b``
attributes expose the two reduced rational coordinates.  No floating point
is used on any comparison path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "QuadExt",
    "FieldMismatchError",
    "NotHyperbolicError",
    "add",
    "mul",
    "neg",
    "inv",
    "sign",
    "squarefree_decomposition",
    "hyperbolic_eigendata",
    "galois_conjugate",
    "parse_rational",
]


class FieldMismatchError(ValueError):
    """Raised when two elements of different fields Q(sqrt d) are combined."""


class NotHyperbolicError(ValueError):
    """Raised for a matrix that is not unimodular with |trace| > 2."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (n >= 1)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


@lru_cache(maxsize=None)
def _check_d(d: int) -> int:
    if not isinstance(d, int) or d <= 1:
        raise ValueError(f"d must be an integer > 1, got {d!r}")
    if squarefree_decomposition(d)[0] != 1:
        raise ValueError(f"d must be square-free, got {d}")
    return d


def _int_sign(p: int, q: int, d: int) -> int:
    # sign of p + q*sqrt(d) for integers p, q
    if p >= 0 and q >= 0:
        return 1 if (p or q) else 0
    if p <= 0 and q <= 0:
        return -1
    lhs, rhs = p * p, q * q * d
    if lhs == rhs:  # impossible for square-free d > 1 unless p == q == 0
        return 0
    if p > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int/Fraction into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


class QuadExt:
    """An element ``a + b*sqrt(d)`` of the real quadratic field Q(sqrt d).

    Instances are immutable and hashable.  Ints and Fractions are accepted as
    the other operand of every arithmetic operation and comparison.

    >>> x = QuadExt(Fraction(3, 2), Fraction(1, 2), 5)
    >>> x * x.inverse() == 1
    True
    """

    __slots__ = ("_p", "_q", "_den", "_d")

    def __init__(self, a=0, b=0, d: int = 5):
        _check_d(d)
        a = parse_rational(a)
        b = parse_rational(b)
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, d)

    def _set(self, p: int, q: int, den: int, d: int) -> None:
        g = gcd(p, q, den)
        if g != 1:
            p //= g
            q //= g
            den //= g
        object.__setattr__(self, "_p", p)
        object.__setattr__(self, "_q", q)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, p: int, q: int, den: int, d: int) -> "QuadExt":
        # den > 0 and d already validated by the caller
        obj = object.__new__(cls)
        obj._set(p, q, den, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def rational(cls, r, d: int) -> "QuadExt":
        r = parse_rational(r)
        _check_d(d)
        return cls._raw(r.numerator, 0, r.denominator, d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadExt":
        _check_d(d)
        return cls._raw(0, 1, 1, d)

    # -- accessors ---------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._den)

    @property
    def d(self) -> int:
        return self._d

    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> "QuadExt":
        """The Galois conjugate ``a - b*sqrt(d)``."""
        return QuadExt._raw(self._p, -self._q, self._den, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._p * self._p - self._q * self._q * self._d, self._den * self._den)

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other._d != self._d:
                raise FieldMismatchError(f"cannot combine Q(sqrt {self._d}) with Q(sqrt {other._d})")
            return other
        if isinstance(other, int):
            return QuadExt._raw(other, 0, 1, self._d)
        if isinstance(other, Rational):
            return QuadExt._raw(other.numerator, 0, other.denominator, self._d)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._den == o._den:
            return QuadExt._raw(self._p + o._p, self._q + o._q, self._den, self._d)
        return QuadExt._raw(
            self._p * o._den + o._p * self._den,
            self._q * o._den + o._q * self._den,
            self._den * o._den,
            self._d,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self._p, -self._q, self._den, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt._raw(
            self._p * o._p + self._q * o._q * self._d,
            self._p * o._q + self._q * o._p,
            self._den * o._den,
            self._d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        """Multiplicative inverse via the conjugate: (a - b sqrt d)/(a^2 - b^2 d)."""
        n = self._p * self._p - self._q * self._q * self._d
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        # (p + q r)/den inverted = den (p - q r) / n
        p, q, den = self._den * self._p, -self._den * self._q, n
        if den < 0:
            p, q, den = -p, -q, -den
        return QuadExt._raw(p, q, den, self._d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt._raw(1, 0, 1, self._d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order -------------------------------------------------------------
    def sign(self) -> int:
        return _int_sign(self._p, self._q, self._d)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self._q == 0 and other._q == 0:
                # rationals embed in every field; keeps == transitive with Fraction
                return (self._p, self._den) == (other._p, other._den)
            return (self._p, self._q, self._den, self._d) == (other._p, other._q, other._den, other._d)
        if isinstance(other, (int, Rational)):
            return self._q == 0 and Fraction(self._p, self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._den))
        return hash((self._p, self._q, self._den, self._d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._p or self._q)

    # -- display / serialization -------------------------------------------
    def __repr__(self):
        return f"QuadExt({str(self.a)!r}, {str(self.b)!r}, {self._d})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        bpart = f"{abs(b)}√{self._d}" if abs(b) != 1 else f"√{self._d}"
        if a == 0:
            return bpart if b > 0 else f"-{bpart}"
        return f"{a} {'+' if b > 0 else '-'} {bpart}"

    def to_decimal(self, digits: int = 30) -> str:
        """Decimal approximation for display only."""
        from decimal import Decimal, localcontext

        with localcontext() as ctx:
            ctx.prec = digits + 10
            value = (Decimal(self._p) + Decimal(self._q) * Decimal(self._d).sqrt()) / Decimal(self._den)
            ctx.prec = digits
            return str(+value)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "d": self._d}

    @classmethod
    def from_json(cls, data: dict) -> "QuadExt":
        return cls(parse_rational(data["a"]), parse_rational(data["b"]), int(data["d"]))


# Functional aliases.

def add(x: QuadExt, y: QuadExt) -> QuadExt:
    return x + y


def mul(x: QuadExt, y: QuadExt) -> QuadExt:
    return x * y


def neg(x: QuadExt) -> QuadExt:
    return -x


def inv(x: QuadExt) -> QuadExt:
    return x.inverse()


def sign(x) -> int:
    """Exact sign of a QuadExt, Fraction or int."""
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def galois_conjugate(x):
    return x.conjugate() if isinstance(x, QuadExt) else x


def _as_matrix(T) -> tuple[tuple[int, int], tuple[int, int]]:
    try:
        (a, b), (c, d) = T
        rows = ((int(a), int(b)), (int(c), int(d)))
    except (TypeError, ValueError) as exc:
        raise NotHyperbolicError(f"expected a 2x2 integer matrix, got {T!r}") from exc
    if any(int(x) != x for x in (a, b, c, d)):
        raise NotHyperbolicError(f"matrix entries must be integers: {T!r}")
    return rows


@lru_cache(maxsize=None)
def _eigendata(T) -> tuple[QuadExt, tuple[QuadExt, QuadExt]]:
    (a, b), (c, dd) = T
    if a * dd - b * c != 1:
        raise NotHyperbolicError(f"det {a * dd - b * c} != 1 for {T}")
    tr = a + dd
    if abs(tr) <= 2:
        raise NotHyperbolicError(f"|trace| = {abs(tr)} <= 2 for {T}: not hyperbolic")
    s, d = squarefree_decomposition(tr * tr - 4)
    lam = QuadExt._raw(tr, s, 2, d)
    # row vector (1, y) with (1, y) T = lam (1, y); c != 0 since T is not triangular
    y = (lam - a) / c
    return lam, (QuadExt._raw(1, 0, 1, d), y)


def hyperbolic_eigendata(T) -> tuple[QuadExt, tuple[QuadExt, QuadExt]]:
    """Eigenvalue ``(tr + sqrt(tr^2 - 4))/2`` of T and its left eigenvector.

    The eigenvector ``u`` satisfies ``u T = lam u`` and has first coordinate 1.
    The other eigenvalue is ``1/lam``; its left eigenvector is the Galois
    conjugate of ``u``.
    """
    return _eigendata(_as_matrix(T))
