"""Exact orientation-preserving affine maps and the SOL affine action.

For SOL = Z^2 x|_T Z the action is ``(v, t^n) . x = s^n x + <v, u>`` where
``u`` is a left eigenvector of T with eigenvalue ``s``.  With
``lambda_choice == "expanding"`` s is the eigenvalue larger than 1 and u its
left eigenvector; ``"contracting"`` uses 1/lambda and the Galois-conjugate
covector.  ``u T = s u`` is exactly what makes the assignment a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qfield import QuadExt, hyperbolic_eigendata

EXPANDING = "expanding"
CONTRACTING = "contracting"
LAMBDA_CHOICES = (EXPANDING, CONTRACTING)


@dataclass(frozen=True)
class AffineMap:
    """``x -> scale * x + offset`` with ``scale > 0``."""

    scale: QuadExt
    offset: QuadExt

    def __post_init__(self):
        if self.scale.sign() <= 0:
            raise ValueError(f"affine scale must be positive, got {self.scale}")

    def __call__(self, x):
        return self.scale * x + self.offset

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other``."""
        return AffineMap(self.scale * other.scale, self.scale * other.offset + self.offset)

    def inverse(self) -> "AffineMap":
        inv = self.scale.inverse()
        return AffineMap(inv, -(inv * self.offset))

    def inverse_apply(self, y):
        return (y - self.offset) / self.scale

    def is_identity(self) -> bool:
        return self.scale == 1 and not self.offset

    def fixed_point(self):
        """Unique fixed point of a non-trivial homothety, None for translations."""
        if self.scale == 1:
            return None
        return self.offset / (1 - self.scale)

    def to_json(self) -> dict:
        return {"scale": self.scale.to_json(), "offset": self.offset.to_json()}


@dataclass(frozen=True)
class SolAffineData:
    T: tuple
    lambda_choice: str
    scale: QuadExt  # s, the eigenvalue used for t
    u: tuple  # (1, y) with u T = s u

    @property
    def d(self) -> int:
        return self.scale.d

    def tau(self, v) -> QuadExt:
        """Translation number ``<v, u>`` of the element (v, 0)."""
        return self.u[0] * v[0] + self.u[1] * v[1]

    def scale_pow(self, n: int) -> QuadExt:
        return _scale_pow(self, n)

    def coordinates(self, x) -> tuple[Fraction, Fraction]:
        """Rational ``(c1, c2)`` with ``x == c1 + c2*y`` (y irrational)."""
        x = as_field(x, self.d)
        y = self.u[1]
        c2 = x.b / y.b
        return (x.a - c2 * y.a, c2)


@lru_cache(maxsize=4096)
def _scale_pow(data: SolAffineData, n: int) -> QuadExt:
    return data.scale ** n


@lru_cache(maxsize=None)
def sol_affine_data(T, lambda_choice: str = EXPANDING) -> SolAffineData:
    if lambda_choice not in LAMBDA_CHOICES:
        raise ValueError(f"lambda_choice must be one of {LAMBDA_CHOICES}, got {lambda_choice!r}")
    lam, u = hyperbolic_eigendata(T)
    if lambda_choice == EXPANDING:
        return SolAffineData(T, lambda_choice, lam, u)
    return SolAffineData(T, lambda_choice, lam.inverse(), (u[0].conjugate(), u[1].conjugate()))


def as_field(x, d: int) -> QuadExt:
    if isinstance(x, QuadExt):
        if x.d != d:
            from .qfield import FieldMismatchError

            raise FieldMismatchError(f"point in Q(sqrt {x.d}) used with Q(sqrt {d})")
        return x
    return QuadExt.rational(x, d)


def sol_affine_map(data: SolAffineData, v, n: int) -> AffineMap:
    return AffineMap(data.scale_pow(n), data.tau(v))


def displacement(data: SolAffineData, v, n: int, x) -> QuadExt:
    """``phi((v, n))(x) - x`` computed exactly."""
    if n == 0:
        return data.tau(v)
    return (data.scale_pow(n) - 1) * x + data.tau(v)
